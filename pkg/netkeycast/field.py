"""
Arithmetic in GF(2^k), 1 <= k <= 16.

Every bit-width uses a fixed primitive reduction polynomial so that codes are
reproducible bit for bit. The field itself is built (and its polynomial
verified) by :mod:`galois`; scalar products go through exp/log tables.
"""
import logging
from functools import lru_cache

import galois
import numpy as np

log = logging.getLogger(__name__)

MIN_BITS = 1
MAX_BITS = 16

# k -> reduction polynomial, integer representation (bit i = coefficient of x^i)
REDUCTION_POLYNOMIALS = {
    1: 0x3,  # x + 1
    2: 0x7,  # x^2 + x + 1
    3: 0xB,  # x^3 + x + 1
    4: 0x13,  # x^4 + x + 1
    5: 0x25,  # x^5 + x^2 + 1
    6: 0x43,  # x^6 + x + 1
    7: 0x83,  # x^7 + x + 1
    8: 0x11D,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,  # x^9 + x^4 + 1
    10: 0x409,  # x^10 + x^3 + 1
    11: 0x805,  # x^11 + x^2 + 1
    12: 0x1053,  # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,  # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,  # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,  # x^15 + x + 1
    16: 0x1100B,  # x^16 + x^12 + x^3 + x + 1
}


class FieldError(ValueError):
    pass


@lru_cache(maxsize=None)
def _galois_field(k):
    if k == 1:
        # galois only accepts a reduction polynomial for extension fields
        return galois.GF(2)
    return galois.GF(2 ** k, irreducible_poly=REDUCTION_POLYNOMIALS[k])


@lru_cache(maxsize=None)
def _tables(k):
    """ exp and log tables over the primitive element of GF(2^k) """
    gf = _galois_field(k)
    order = 2 ** k
    powers = gf.primitive_element ** np.arange(order - 1)
    exp = [int(v) for v in powers.view(np.ndarray)]
    log_table = [0] * order
    for power, element in enumerate(exp):
        log_table[element] = power
    log.debug('Built exp/log tables for GF(2^{})'.format(k))
    return tuple(exp), tuple(log_table)


class FieldSpec:
    """ The field GF(2^k) with its fixed reduction polynomial """

    def __init__(self, k):
        """
        :param int k: bit width, 1 <= k <= 16
        :raises FieldError: on unsupported widths
        """
        if isinstance(k, bool) or not isinstance(k, int) or not MIN_BITS <= k <= MAX_BITS:
            raise FieldError('Field bit width must be an integer in [{}, {}], got {!r}'.format(
                MIN_BITS, MAX_BITS, k))
        self.k = k
        self.poly = REDUCTION_POLYNOMIALS[k]
        self.order = 2 ** k

    def __repr__(self):
        return 'GF(2^{})'.format(self.k)

    def __str__(self):
        return self.__repr__()

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return self.k == other.k

    def __hash__(self):
        return hash(('FieldSpec', self.k))

    @property
    def gf(self):
        """ The galois FieldArray class of this field """
        return _galois_field(self.k)

    def array(self, values):
        """ Returns values as a galois FieldArray of this field """
        return self.gf(np.asarray(values, dtype=np.int64))

    def element(self, value):
        """ Wraps an integer in a FieldElement of this field """
        return FieldElement(value, self)

    def check(self, value):
        """ Validates an integer representation of an element

        :raises FieldError: if value is outside [0, 2^k)
        """
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise FieldError('Field elements are integers, got {!r}'.format(value))
        value = int(value)
        if not 0 <= value < self.order:
            raise FieldError('{} is not an element of {}'.format(value, self))
        return value

    # scalar arithmetic on integer representations

    def add(self, x, y):
        return x ^ y

    def sub(self, x, y):
        return x ^ y

    def mul(self, x, y):
        if x == 0 or y == 0:
            return 0
        exp, log_table = _tables(self.k)
        return exp[(log_table[x] + log_table[y]) % (self.order - 1)]

    def inv(self, x):
        if x == 0:
            raise FieldError('Zero has no multiplicative inverse')
        exp, log_table = _tables(self.k)
        return exp[(-log_table[x]) % (self.order - 1)]

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def to_dict(self):
        return {'k': self.k, 'poly': self.poly}

    @classmethod
    def from_dict(cls, data):
        """ Reads a {"k", "poly"} document

        :raises FieldError: if k is unsupported or poly is not the fixed one
        """
        try:
            k = data['k']
        except (KeyError, TypeError):
            raise FieldError('Field document needs a "k" entry') from None
        spec = cls(k)
        poly = data.get('poly', spec.poly)
        if poly != spec.poly:
            raise FieldError('GF(2^{}) uses polynomial {:#x}, got {!r}'.format(k, spec.poly, poly))
        return spec


class FieldElement:
    """ An element of GF(2^k) bound to its FieldSpec """

    __slots__ = ('value', 'field')

    def __init__(self, value, field):
        self.field = field
        self.value = field.check(value)

    def __repr__(self):
        return '{}({})'.format(self.field, self.value)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.k, self.value))

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError('Mixed fields: {} and {}'.format(self.field, other.field))
            return other.value
        return self.field.check(other)

    def __add__(self, other):
        return FieldElement(self.field.add(self.value, self._other(other)), self.field)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        return FieldElement(self.field.mul(self.value, self._other(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * FieldElement(self._other(other), self.field).inv()

    def inv(self):
        return FieldElement(self.field.inv(self.value), self.field)


def add(x, y):
    """ x + y (xor) """
    return x + y


def mul(x, y):
    """ x * y modulo the reduction polynomial """
    return x * y


def inv(x):
    """ Multiplicative inverse

    :raises FieldError: for zero
    """
    return x.inv()


def choose_field(num_colors):
    """ Smallest field GF(2^k) with 2^k > num_colors

    :param int num_colors: number of colors (largest color) to embed
    :rtype: FieldSpec
    :raises FieldError: if 2^16 or more colors are needed
    """
    if num_colors < 1:
        raise FieldError('At least one color is needed, got {}'.format(num_colors))
    k = max(MIN_BITS, int(num_colors).bit_length())
    if k > MAX_BITS:
        raise FieldError('{} colors need more than 2^{} field elements'.format(num_colors, MAX_BITS))
    return FieldSpec(k)
