"""
Scalar linear network codes over GF(2^k) and their verification.

A code assigns to every edge a coefficient vector over an ordered basis of
independent uniform source symbols; the edge carries the matching linear
combination. Every information quantity of such a code is a rank: the
entropy of a family of edge messages is ``rank * k`` bits. The exhaustive
oracle recomputes the same quantities from the joint distribution over
every source assignment.
"""
import itertools
import logging
from collections import Counter
from fractions import Fraction

import numpy as np

from .field import FieldSpec, FieldError
from .graph import InstanceError
from .utils import CheckResult, Report, verification, get_max_enumeration, node_key
from .utils import load_json, save_json

log = logging.getLogger(__name__)


class CodeFormatError(ValueError):
    pass


class EnumerationCapError(RuntimeError):
    pass


class SourceBasis:
    """ Ordered names of the independent uniform source symbols """

    def __init__(self, symbols):
        self.symbols = tuple(str(symbol) for symbol in symbols)
        if not self.symbols:
            raise CodeFormatError('A source basis needs at least one symbol')
        if len(set(self.symbols)) != len(self.symbols):
            raise CodeFormatError('Source symbol names must be unique: {}'.format(self.symbols))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __eq__(self, other):
        if not isinstance(other, SourceBasis):
            return NotImplemented
        return self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return 'SourceBasis({})'.format(', '.join(self.symbols))

    def describe(self, vector, field=None):
        """ Human readable linear combination, ex: 's + 3a' """
        terms = []
        for coefficient, symbol in zip(vector, self.symbols):
            if coefficient == 1:
                terms.append(symbol)
            elif coefficient:
                terms.append('{}{}'.format(coefficient, symbol))
        return ' + '.join(terms) if terms else '0'


class LinearCode:
    """ An executable scalar linear network code with its key assignment """

    def __init__(self, basis, field, edge_msgs, keys):
        """
        :param SourceBasis or list basis: the source symbols
        :param FieldSpec field: the field all coefficients live in
        :param dict edge_msgs: edge id -> coefficient vector
        :param dict keys: 1 based terminal set index -> key coefficient vector
        :raises CodeFormatError: on vectors of the wrong length, values
         outside the field or zero keys
        """
        self.basis = basis if isinstance(basis, SourceBasis) else SourceBasis(basis)
        self.field = field
        self.edge_msgs = {int(e): self._vector(v, 'edge {}'.format(e)) for e, v in edge_msgs.items()}
        self.keys = {int(j): self._vector(v, 'key {}'.format(j)) for j, v in keys.items()}
        for j, key in self.keys.items():
            if not any(key):
                raise CodeFormatError('Key {} is the zero vector'.format(j))

    def _vector(self, vector, label):
        vector = tuple(vector)
        if len(vector) != len(self.basis):
            raise CodeFormatError('{} has {} coefficients, the basis has {}'.format(
                label, len(vector), len(self.basis)))
        try:
            return tuple(self.field.check(c) for c in vector)
        except FieldError as e:
            raise CodeFormatError('{}: {}'.format(label, e)) from None

    def __repr__(self):
        return 'LinearCode({}, basis: {}, edges: {}, keys: {})'.format(
            self.field, list(self.basis), len(self.edge_msgs), len(self.keys))

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (self.basis == other.basis and self.field == other.field
                and self.edge_msgs == other.edge_msgs and self.keys == other.keys)

    def message(self, edge_id):
        """ The coefficient vector on an edge

        :raises CodeFormatError: if the code has no vector for the edge
        """
        try:
            return self.edge_msgs[edge_id]
        except KeyError:
            raise CodeFormatError('The code has no vector for edge {}'.format(edge_id)) from None

    def key(self, j):
        try:
            return self.keys[j]
        except KeyError:
            raise CodeFormatError('The code has no key for terminal set {}'.format(j)) from None

    def messages(self, edge_ids):
        return [self.message(e) for e in edge_ids]

    def restrict(self, edge_ids):
        """ A copy holding only the vectors of edge_ids that are present """
        kept = {e: v for e, v in self.edge_msgs.items() if e in set(edge_ids)}
        return LinearCode(self.basis, self.field, kept, self.keys)

    def to_dict(self):
        return {
            'field': self.field.to_dict(),
            'basis': list(self.basis),
            'edges': {str(e): list(v) for e, v in sorted(self.edge_msgs.items())},
            'keys': {str(j): list(v) for j, v in sorted(self.keys.items())},
        }

    @classmethod
    def from_dict(cls, data):
        """ Reads a code json document

        :raises CodeFormatError: on malformed documents
        """
        try:
            field = FieldSpec.from_dict(data['field'])
            basis = data['basis']
            edges = {int(e): v for e, v in data['edges'].items()}
            keys = {int(j): v for j, v in data['keys'].items()}
        except FieldError as e:
            raise CodeFormatError('Invalid field: {}'.format(e)) from None
        except (KeyError, TypeError, AttributeError, ValueError) as e:
            raise CodeFormatError('Malformed code document: {}'.format(e)) from None
        return cls(basis, field, edges, keys)


class Echelon:
    """ Incremental Gaussian elimination over a FieldSpec.

    Rows are kept with a leading 1 at their pivot column and reduced
    against every earlier pivot. Pivots are taken at the lowest column
    index.
    """

    def __init__(self, field, vectors=()):
        self.field = field
        self.rows = []  # (pivot column, row)
        for vector in vectors:
            self.add(vector)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vector):
        """ Returns vector minus its projection on the current rows """
        field = self.field
        vector = list(vector)
        for column, row in self.rows:
            factor = vector[column]
            if factor:
                vector = [field.sub(x, field.mul(factor, y)) for x, y in zip(vector, row)]
        return vector

    def add(self, vector):
        """ Adds vector to the row space

        :return bool: True if it was independent of the previous rows
        """
        reduced = self.reduce(vector)
        for column, value in enumerate(reduced):
            if value:
                scale = self.field.inv(value)
                self.rows.append((column, [self.field.mul(scale, x) for x in reduced]))
                return True
        return False

    def contains(self, vector):
        return not any(self.reduce(vector))


def rank(vectors, field):
    """ Rank of a family of coefficient vectors over field """
    return Echelon(field, vectors).rank


def entropy_bits(vectors, field):
    """ Joint entropy, in bits, of the messages of a family of vectors """
    return rank(vectors, field) * field.k


def in_span(vector, vectors, field):
    """ True if vector lies in the span of vectors """
    return Echelon(field, vectors).contains(vector)


def decodable_space(vectors, field):
    """ Every vector in the span of vectors (tiny fields only) """
    echelon = Echelon(field, vectors)
    rows = [row for _, row in echelon.rows]
    size = len(vectors[0]) if vectors else 0
    elements = set()
    for coefficients in itertools.product(range(field.order), repeat=len(rows)):
        vector = [0] * size
        for c, row in zip(coefficients, rows):
            if c:
                vector = [field.add(x, field.mul(c, y)) for x, y in zip(vector, row)]
        elements.add(tuple(vector))
    return elements


@verification
def validate_local_computability(instance, code, *, partial=False):
    """ Every edge message must be computable from its tail's incoming messages.

    :param bool partial: only check the edges the code covers, treating
     uncovered incoming edges as silent (used on partial colorings)
    :raises CodeFormatError: (not partial) if an edge has no vector
    """
    field = code.field
    for edge_id in instance.edge_order:
        if partial and edge_id not in code.edge_msgs:
            continue
        vector = code.message(edge_id)
        tail = instance.edge(edge_id).tail
        if tail == instance.source:
            continue
        inputs = [e for e in instance.in_edges(tail) if not partial or e in code.edge_msgs]
        if not in_span(vector, code.messages(inputs), field):
            return CheckResult('local_computability', False, subject=edge_id,
                               detail='{} is not computable at node {!r}'.format(
                                   code.basis.describe(vector), tail))
    return CheckResult('local_computability', True)


@verification
def check_decoding(instance, code, d, i):
    """ Terminal d of D_i can compute K_i from its incoming messages """
    if d not in instance.terminal_set(i):
        raise InstanceError('{!r} is not a terminal of set {}'.format(d, i))
    incoming = code.messages(instance.in_edges(d))
    passed = in_span(code.key(i), incoming, code.field)
    return CheckResult('decoding', passed, subject=d,
                       detail='' if passed else 'K_{} is not in the span of In({!r})'.format(i, d))


@verification
def check_pairwise_independence(code):
    """ Keys of distinct terminal sets are linearly independent """
    results = []
    for i, i2 in itertools.combinations(sorted(code.keys), 2):
        passed = rank([code.keys[i], code.keys[i2]], code.field) == 2
        results.append(CheckResult('pairwise_independence', passed, subject=(i, i2),
                                   detail='' if passed else 'K_{} and K_{} are dependent'.format(i, i2)))
    return results


@verification
def check_secrecy(instance, code, i, beta):
    """ The messages on the edge set beta reveal nothing about K_i """
    observed = code.messages(sorted(beta))
    echelon = Echelon(code.field, observed)
    passed = not echelon.contains(code.key(i))
    return CheckResult('secrecy', passed, subject=(i, tuple(sorted(beta))),
                       detail='' if passed else 'K_{} is in the span of the observed edges'.format(i))


def _uniform_entropy(counts):
    """ Exact entropy (bits) of a distribution uniform over a support whose
    size is a power of two, which is what linear maps of uniform symbols give """
    values = set(counts)
    support = len(counts)
    if len(values) != 1 or support & (support - 1):
        raise RuntimeError('Distribution is not uniform over a power of two support')
    return Fraction(support.bit_length() - 1)


def _source_tuples(field, size):
    total = field.order ** size
    cap = get_max_enumeration()
    if total > cap:
        raise EnumerationCapError(
            '{} source tuples exceed the enumeration cap ({}); use the rank based checks '
            'or raise KEYCAST_MAX_ENUM'.format(total, cap))
    log.debug('Enumerating {} source tuples over {}'.format(total, field))
    digits = np.unravel_index(np.arange(total), (field.order,) * size)
    return field.array(np.stack(digits, axis=1))


def _evaluate(field, sources, vectors):
    """ Integer matrix (tuples x vectors) of the messages of vectors """
    if not vectors:
        return np.zeros((sources.shape[0], 0), dtype=np.int64)
    coefficients = field.array(np.array(vectors, dtype=np.int64).T)
    return np.asarray((sources @ coefficients).view(np.ndarray), dtype=np.int64)


def mutual_information(field, basis_size, key_vector, observed_vectors):
    """ Exact I(K; X) in bits, from the joint distribution over every source tuple.

    :return Fraction: the mutual information
    :raises EnumerationCapError: if there are too many source tuples
    """
    sources = _source_tuples(field, basis_size)
    total = sources.shape[0]
    keys = _evaluate(field, sources, [key_vector])[:, 0]
    observed = _evaluate(field, sources, list(observed_vectors))
    if observed.shape[1] == 0:
        x_labels = np.zeros(total, dtype=np.int64)
    else:
        _, x_labels = np.unique(observed, axis=0, return_inverse=True)
        x_labels = np.asarray(x_labels).reshape(-1)

    key_counts = Counter(keys.tolist())
    x_counts = Counter(x_labels.tolist())
    joint_counts = Counter(zip(keys.tolist(), x_labels.tolist()))

    independent = (len(joint_counts) == len(key_counts) * len(x_counts) and all(
        count * total == key_counts[k] * x_counts[x] for (k, x), count in joint_counts.items()))
    if independent:
        return Fraction(0)
    return (_uniform_entropy(list(key_counts.values())) + _uniform_entropy(list(x_counts.values()))
            - _uniform_entropy(list(joint_counts.values())))


def exhaustive_mi_oracle(instance, code, i, beta):
    """ I(K_i; X_beta) in bits by brute force over all source assignments """
    for edge_id in beta:
        instance.edge(edge_id)
    return mutual_information(code.field, len(code.basis), code.key(i),
                              code.messages(sorted(beta)))


def oracle_pairwise(code, i, i2):
    """ I(K_i; K_i2) in bits by brute force """
    return mutual_information(code.field, len(code.basis), code.key(i), [code.key(i2)])


def rank_information(field, key_vector, observed_vectors):
    """ I(K; X) in bits from ranks: k * (rank(X) + rank(K) - rank(X, K)) """
    observed = list(observed_vectors)
    symbols = rank(observed, field) + 1 - rank(observed + [key_vector], field)
    return Fraction(symbols * field.k)


def _oracle_check(name, subject, expected, compute):
    try:
        value = compute()
    except EnumerationCapError as e:
        log.warning('Oracle skipped for {} {}: {}'.format(name, subject, e))
        return CheckResult('oracle_' + name, True, subject=subject, skipped=True, detail=str(e))
    passed = value == expected
    return CheckResult('oracle_' + name, passed, subject=subject,
                       detail='oracle {} bits, rank {} bits'.format(value, expected))


def verify_code(instance, code, *, exhaustive=False, title='verification'):
    """ Checks every clause of multiple key-cast feasibility on a code.

    Local computability, decoding at every terminal, pairwise independence
    of the keys and secrecy against every set of every B_i. With
    ``exhaustive`` every clause is recomputed by the brute force oracle and
    must agree with the rank based verdict (checks over the enumeration cap
    are reported as skipped).

    :rtype: Report
    """
    report = Report(title=title)
    report['field'] = str(code.field)
    report['basis'] = list(code.basis)
    report['terminal_sets'] = instance.ell
    report['rate'] = Fraction(1)

    missing = [e.id for e in instance.edges if e.id not in code.edge_msgs]
    if missing:
        report.add(CheckResult('coverage', False, subject=missing[0],
                               detail='no vector for edges {}'.format(missing)))
        return report
    report.add(validate_local_computability(instance, code))

    for i in instance.set_indices:
        if i not in code.keys:
            report.add(CheckResult('key', False, subject=i, detail='no key for set {}'.format(i)))
            continue
        for d in sorted(instance.terminal_set(i), key=node_key):
            report.add(check_decoding(instance, code, d, i))
            if exhaustive:
                incoming = code.messages(instance.in_edges(d))
                report.add(_oracle_check('decoding', d, rank_information(code.field, code.keys[i], incoming),
                                         lambda: mutual_information(code.field, len(code.basis),
                                                                    code.keys[i], incoming)))

    report.add(check_pairwise_independence(code))
    if exhaustive:
        for i, i2 in itertools.combinations(sorted(code.keys), 2):
            report.add(_oracle_check('pairwise_independence', (i, i2), Fraction(0),
                                     lambda: oracle_pairwise(code, i, i2)))

    for i in instance.set_indices:
        if i not in code.keys:
            continue
        for beta in instance.secrecy_sets(i):
            report.add(check_secrecy(instance, code, i, beta))
            if exhaustive:
                report.add(_oracle_check('secrecy', (i, tuple(sorted(beta))), Fraction(0),
                                         lambda: exhaustive_mi_oracle(instance, code, i, beta)))
    return report


def export_code(code, path):
    """ Writes code to path as json

    :return bool: Success / Failure
    """
    return save_json(code.to_dict(), path)


def import_code(path):
    """ Reads a code json file

    :raises CodeFormatError: on malformed files
    """
    try:
        document = load_json(path)
    except ValueError as e:
        raise CodeFormatError(str(e)) from None
    return LinearCode.from_dict(document)
