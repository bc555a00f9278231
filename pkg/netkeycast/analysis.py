"""
Support bounds for binary codebooks and the rate gap reports.

Under source reconstruction, terminals derive their keys from decoded
source bits; two keys that are nearly independent then need a large
union of decoded bits. The support bound below caps that union and yields
an upper bound on the reconstruction rate of the gap instances, compared
here to the rate 1 codes built by the key-cast pipelines.
"""
import itertools
import logging
import math
from collections import defaultdict
from fractions import Fraction

from . import keycast, securecast
from .generators import gen_fig3, gen_fig4
from .lincode import EnumerationCapError
from .utils import CheckResult, Report, get_max_codebooks

log = logging.getLogger(__name__)

SR_BASE_RATE = Fraction(3, 4)


def _fraction(value, name):
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ValueError('{} must be a rational number, got {!r}'.format(name, value)) from None


def _check_bound_params(M, n, w):
    w = _fraction(w, 'w')
    if M < 2:
        raise ValueError('A codebook needs at least 2 words, got M={}'.format(M))
    if n < 1:
        raise ValueError('The blocklength must be positive, got n={}'.format(n))
    if not 0 < w <= 1:
        raise ValueError('The weight fraction must be in (0, 1], got w={}'.format(w))
    return w


def plotkin_bound(M, n, w):
    """ n w (2 - w) (1 + 1/(M - 1)): some pair of any M words of weight at
    most wn has a support union no larger than this

    :rtype: Fraction
    """
    w = _check_bound_params(M, n, w)
    return n * w * (2 - w) * (1 + Fraction(1, M - 1))


def plotkin_bound_sharp(M, n, w):
    """ n - n (1 - w)^2 + n w (1 - w) / (M - 1), the average pair union of a
    codebook with evenly spread ones. Never above plotkin_bound """
    w = _check_bound_params(M, n, w)
    return n - n * (1 - w) ** 2 + n * w * (1 - w) / (M - 1)


def _word(word):
    if isinstance(word, str):
        word = tuple(int(bit) for bit in word)
    word = tuple(word)
    if any(bit not in (0, 1) for bit in word):
        raise ValueError('Words are binary, got {!r}'.format(word))
    return word


def _as_int(word):
    return int(''.join(map(str, word)), 2) if word else 0


def _check_codebook(codebook):
    words = [_word(w) for w in codebook]
    if len(words) < 2:
        raise ValueError('At least two words are needed, got {}'.format(len(words)))
    if len({len(w) for w in words}) != 1:
        raise ValueError('All words must have the same length')
    return words


def min_support_pair(codebook):
    """ The pair of words with the smallest support union.

    Ties go to the first pair (i, j), i < j, in codebook order.

    :param codebook: words as 0/1 tuples or strings
    :return: ((word, word), union size)
    :raises ValueError: on fewer than two words
    """
    words = _check_codebook(codebook)
    masks = [_as_int(w) for w in words]
    best = None
    for i, j in itertools.combinations(range(len(words)), 2):
        size = bin(masks[i] | masks[j]).count('1')
        if best is None or size < best[0]:
            best = (size, i, j)
    size, i, j = best
    return (words[i], words[j]), size


def min_support_pair_pruned(codebook):
    """ Same answer as min_support_pair, scanning words by weight and
    stopping once the lighter weight bound exceeds the best union """
    words = _check_codebook(codebook)
    masks = [_as_int(w) for w in words]
    weights = [bin(m).count('1') for m in masks]
    by_weight = sorted(range(len(words)), key=lambda n: (weights[n], n))
    best = None
    for position, i in enumerate(by_weight):
        if best is not None and weights[i] > best[0]:
            break
        for j in by_weight[position + 1:]:
            if best is not None and weights[j] > best[0]:
                break
            size = bin(masks[i] | masks[j]).count('1')
            candidate = (size, min(i, j), max(i, j))
            if best is None or candidate < best:
                best = candidate
    size, i, j = best
    return (words[i], words[j]), size


def capped_words(n, w):
    """ Every binary word of length n and weight at most w n """
    w = _fraction(w, 'w')
    cap = math.floor(w * n)
    return [word for word in itertools.product((0, 1), repeat=n) if sum(word) <= cap]


def verify_plotkin_exhaustive(n, M, w):
    """ Checks every size M codebook of weight capped words against the bounds

    :rtype: Report
    :raises EnumerationCapError: if there are more codebooks than KEYCAST_MAX_CODEBOOKS
    """
    bound = plotkin_bound(M, n, w)
    sharp = plotkin_bound_sharp(M, n, w)
    words = capped_words(n, w)
    total = math.comb(len(words), M)
    cap = get_max_codebooks()
    if total > cap:
        raise EnumerationCapError('{} codebooks exceed the cap ({}); raise KEYCAST_MAX_CODEBOOKS'.format(
            total, cap))
    log.debug('Enumerating {} codebooks of {} words (n={}, M={}, w={})'.format(total, len(words), n, M, w))

    masks = [_as_int(word) for word in words]
    union = [[bin(a | b).count('1') for b in masks] for a in masks]
    worst, worst_codebook = -1, None
    for codebook in itertools.combinations(range(len(words)), M):
        smallest = min(union[i][j] for i, j in itertools.combinations(codebook, 2))
        if smallest > worst:
            worst, worst_codebook = smallest, codebook

    report = Report(title='plotkin')
    report.update({'n': n, 'M': M, 'w': Fraction(w), 'words': len(words), 'codebooks': total,
                   'bound': bound, 'sharp_bound': sharp, 'worst_min_support': max(worst, 0)})
    if worst_codebook is None:
        report.add(CheckResult('plotkin', True, skipped=True,
                               detail='fewer than {} capped words'.format(M)))
        return report
    subject = [''.join(map(str, words[i])) for i in worst_codebook]
    report.add(CheckResult('plotkin', worst <= bound, subject=subject,
                           detail='worst min support {} vs bound {}'.format(worst, bound)))
    report.add(CheckResult('plotkin_sharp', worst <= sharp, subject=subject,
                           detail='worst min support {} vs sharp bound {}'.format(worst, sharp)))
    return report


def corollary1_bound(n, w, eps):
    """ Support bound for M = 1 + 1/eps words: n (2w - w^2) + eps n.

    When 1/eps is not an integer, M = 1 + ceil(1/eps).

    :return: (M, bound)
    :raises RuntimeError: if plotkin_bound exceeds the returned bound
    """
    w = _fraction(w, 'w')
    eps = _fraction(eps, 'eps')
    if eps <= 0:
        raise ValueError('eps must be positive, got {}'.format(eps))
    M = 1 + math.ceil(1 / eps)
    bound = n * (2 * w - w ** 2) + eps * n
    support = plotkin_bound(M, n, w)
    if support > bound:
        raise RuntimeError('plotkin_bound {} exceeds {} (n={}, w={}, eps={})'.format(support, bound, n, w, eps))
    return M, bound


def characteristic_codebook(subsets, n):
    """ Characteristic words of decoded bit subsets.

    :param subsets: iterables of bit positions in [0, n)
    :param int n: blocklength
    :return: (list of words, weight fraction of the heaviest word)
    """
    words = []
    for subset in subsets:
        positions = set(subset)
        if any(not 0 <= p < n for p in positions):
            raise ValueError('Bit positions must be in [0, {}), got {}'.format(n, sorted(positions)))
        words.append(tuple(1 if p in positions else 0 for p in range(n)))
    w = Fraction(max((sum(word) for word in words), default=0), n)
    return words, w


def weight_bucket(codebook, eps):
    """ Splits words by weight into buckets of width (eps / 9) n and returns
    the fullest one (lowest on ties)

    :return: (lower weight fraction of the bucket, its words)
    """
    words = [_word(w) for w in codebook]
    if not words:
        raise ValueError('An empty codebook has no buckets')
    eps = _fraction(eps, 'eps')
    if eps <= 0:
        raise ValueError('eps must be positive, got {}'.format(eps))
    n = len(words[0])
    width = eps / 9 * n
    buckets = defaultdict(list)
    for word in words:
        buckets[math.floor(sum(word) / width)].append(word)
    index = max(sorted(buckets), key=lambda b: len(buckets[b]))
    return index * eps / 9, buckets[index]


def _gap_report(title, eps, ell, result):
    bound = SR_BASE_RATE + eps
    report = Report(title=title)
    report.update({'eps': eps, 'ell': ell, 'instance': repr(result.instance),
                   'keycast_rate': Fraction(1) if result.verified else Fraction(0),
                   'sr_upper_bound': bound, 'strict_gap': bound < 1})
    if result.code is not None:
        report['field'] = str(result.code.field)
    report.add(CheckResult('code_verified', result.verified,
                           detail='' if result.verified else str(result.reason)))
    return report


def sr_gap_report_nonsecure(eps):
    """ Key-cast rate against the reconstruction bound 3/4 + eps on the star
    with 1 + 1/eps terminals

    :raises ValueError: if 1/eps is not a positive integer
    """
    eps = _fraction(eps, 'eps')
    if eps <= 0 or (1 / eps).denominator != 1:
        raise ValueError('1/eps must be a positive integer, got eps={}'.format(eps))
    ell = 1 + int(1 / eps)
    result = keycast.construct(gen_fig3(ell))
    return _gap_report('sr_gap_nonsecure', eps, ell, result)


def sr_gap_report_secure(eps):
    """ Secure key-cast rate against 3/4 + eps on the tight topology with
    (9/eps)(1 + 9/eps) terminal sets

    :raises ValueError: if 9/eps is not a positive integer
    """
    eps = _fraction(eps, 'eps')
    if eps <= 0 or (9 / eps).denominator != 1:
        raise ValueError('9/eps must be a positive integer, got eps={}'.format(eps))
    ratio = int(9 / eps)
    ell = ratio * (1 + ratio)
    result = securecast.construct(gen_fig4(ell))
    return _gap_report('sr_gap_secure', eps, ell, result)
