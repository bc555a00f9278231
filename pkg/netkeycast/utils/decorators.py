import logging
from functools import wraps

log = logging.getLogger(__name__)


def _get_func_fq_name(func):
    return '{}.{}'.format(func.__module__, func.__qualname__)


def verification(func):
    """ Marks a function as a verification check.

    The decorated function must return a CheckResult (or an iterable of them).
    Every outcome is logged at debug level; failures at info level.
    """
    func.__doc__ = """{}
        .. note:: This is a verification check. It never raises because a
         check fails: the outcome is returned as a truthy/falsy
         :class:`~netkeycast.utils.CheckResult`.
    """.format(func.__doc__ if func.__doc__ else '')

    fq_name = _get_func_fq_name(func)

    @wraps(func)
    def inner(*args, **kwargs):
        result = func(*args, **kwargs)
        if hasattr(result, 'passed'):
            outcomes = [result]
        else:
            result = outcomes = list(result)
        for outcome in outcomes:
            if outcome.passed or outcome.skipped:
                log.debug('{} -> {!r}'.format(fq_name, outcome))
            else:
                log.info('{} -> {!r}'.format(fq_name, outcome))
        return result

    return inner
