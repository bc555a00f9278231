import logging
import os
from fractions import Fraction
from enum import Enum

from stringcase import snakecase

log = logging.getLogger(__name__)

MAX_ENUM_ENV_NAME = 'KEYCAST_MAX_ENUM'
MAX_CODEBOOKS_ENV_NAME = 'KEYCAST_MAX_CODEBOOKS'

DEFAULT_MAX_ENUM = 2 ** 20  # source tuples the MI oracle may enumerate
DEFAULT_MAX_CODEBOOKS = 10 ** 7


class CaseEnum(Enum):
    """ A Enum that converts the value to a snake_case casing """

    def __new__(cls, value):
        obj = object.__new__(cls)
        obj._value_ = snakecase(value)  # value will be transformed to snake_case
        return obj

    @classmethod
    def from_value(cls, value):
        """ Gets a member by a snaked-case provided value"""
        if isinstance(value, cls):
            return value
        try:
            return cls(snakecase(value))
        except ValueError:
            return None

    @classmethod
    def get(cls, value):
        """ Same as from_value but raises ValueError if no member matches """
        member = cls.from_value(value)
        if member is None:
            raise ValueError('"{}" is not a valid {}. Use one of: {}'.format(
                value, cls.__name__, ', '.join(m.value for m in cls)))
        return member


class SecrecyMode(CaseEnum):
    NONE = 'none'
    NODE_EAVESDROPPER = 'node_eavesdropper'
    CUSTOM = 'custom'


class Stage(CaseEnum):
    STAGE1 = 'stage1'
    STAGE2 = 'stage2'


class VertexKind(CaseEnum):
    NEWLY_COLORED = 'newly_colored'
    COLOR_PRESERVING = 'color_preserving'

    @property
    def short(self):
        return 'N' if self is VertexKind.NEWLY_COLORED else 'P'


class ConstructionMode(CaseEnum):
    KEYCAST = 'keycast'
    SECURE = 'secure'


class InstanceFamily(CaseEnum):
    FIG3 = 'fig3'
    SECURE_TIGHT = 'secure_tight'
    FIG4 = 'fig4'
    RANDOM = 'random'
    INFEASIBLE = 'infeasible'


class CheckResult:
    """ Outcome of a single verification check """

    def __init__(self, name, passed, *, detail=None, subject=None,
                 skipped=False):
        """ Create a check outcome

        :param str name: name of the check (ex: 'decoding')
        :param bool passed: whether the check passed
        :param str detail: human readable explanation
        :param subject: the offending (or checked) item: an edge id, a node,
         a key pair...
        :param bool skipped: the check could not be run (ex: oracle over cap)
        """
        self.name = name
        self.passed = bool(passed)
        self.detail = detail or ''
        self.subject = subject
        self.skipped = skipped

    def __bool__(self):
        return self.passed

    def __str__(self):
        return self.__repr__()

    def __repr__(self):
        status = 'SKIPPED' if self.skipped else ('PASS' if self.passed else 'FAIL')
        text = '{}: {}'.format(self.name, status)
        if self.subject is not None:
            text = '{} [{}]'.format(text, self.subject)
        if self.detail:
            text = '{} - {}'.format(text, self.detail)
        return text

    def to_dict(self):
        status = 'skipped' if self.skipped else ('pass' if self.passed else 'fail')
        subject = self.subject
        if isinstance(subject, (set, frozenset)):
            subject = sorted(subject, key=str)
        elif isinstance(subject, tuple):
            subject = list(subject)
        return {'name': self.name, 'status': status,
                'subject': subject, 'detail': self.detail}


class Report(dict):
    """ A dict subclass holding a verification or analysis report

    Keys are free form values (rates, bounds, summaries). The checks
    performed are kept apart in ``checks``.
    """

    def __init__(self, *args, title=None, **kwargs):
        super().__init__(*args, **kwargs)
        self.title = title or 'report'
        self.checks = []

    def add(self, check):
        """ Adds a CheckResult (or a list of them) to this report

        :return: the added check(s)
        """
        if isinstance(check, CheckResult):
            self.checks.append(check)
        else:
            self.checks.extend(check)
        return check

    @property
    def is_success(self):
        """ True if every non skipped check passed """
        return all(check.passed for check in self.checks if not check.skipped)

    @property
    def first_failure(self):
        """ The first failing check or None """
        for check in self.checks:
            if not check.skipped and not check.passed:
                return check
        return None

    def to_dict(self):
        data = {key: _jsonable(value) for key, value in self.items()}
        data['title'] = self.title
        data['checks'] = [check.to_dict() for check in self.checks]
        data['success'] = self.is_success
        return data

    def to_text(self):
        lines = ['== {} =='.format(self.title)]
        for key, value in self.items():
            lines.append('{}: {}'.format(key, _jsonable(value)))
        for check in self.checks:
            lines.append('  {!r}'.format(check))
        lines.append('verdict: {}'.format('PASS' if self.is_success else 'FAIL'))
        return '\n'.join(lines)


def _jsonable(value):
    """ Converts report values into json friendly ones.
    Rationals are printed exactly as p/q """
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [_jsonable(v) for v in sorted(value, key=str)]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _int_from_env(env_name, default):
    raw = os.environ.get(env_name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        log.warning('Ignoring {}={!r}: not an integer'.format(env_name, raw))
        return default
    if value < 1:
        log.warning('Ignoring {}={!r}: must be positive'.format(env_name, raw))
        return default
    return value


def get_max_enumeration():
    """ Cap on the number of source tuples the exhaustive oracle enumerates.
    Can be overridden with the KEYCAST_MAX_ENUM environmental variable """
    return _int_from_env(MAX_ENUM_ENV_NAME, DEFAULT_MAX_ENUM)


def get_max_codebooks():
    """ Cap on the number of codebooks verify_plotkin_exhaustive enumerates.
    Can be overridden with the KEYCAST_MAX_CODEBOOKS environmental variable """
    return _int_from_env(MAX_CODEBOOKS_ENV_NAME, DEFAULT_MAX_CODEBOOKS)


def node_key(node):
    """ Sort key for node ids: integers first, then strings """
    if isinstance(node, bool):
        node = int(node)
    if isinstance(node, int):
        return 0, node, ''
    return 1, 0, str(node)
