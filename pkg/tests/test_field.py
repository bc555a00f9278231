from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from netkeycast.field import FieldSpec, FieldError, REDUCTION_POLYNOMIALS, choose_field, add, mul, inv


@st.composite
def field_and_elements(draw, count=3):
    k = draw(st.integers(min_value=1, max_value=16))
    spec = FieldSpec(k)
    elements = [draw(st.integers(min_value=0, max_value=spec.order - 1)) for _ in range(count)]
    return spec, elements


class TestFieldSpec:

    def setup_class(self):
        self.gf4 = FieldSpec(2)
        self.gf16 = FieldSpec(4)

    def test_bit_width_range(self):
        with pytest.raises(FieldError):
            FieldSpec(0)
        with pytest.raises(FieldError):
            FieldSpec(17)
        with pytest.raises(FieldError):
            FieldSpec(True)
        assert FieldSpec(16).order == 2 ** 16

    def test_gf4_products(self):
        assert self.gf4.mul(2, 2) == 3
        assert self.gf4.mul(2, 3) == 1
        assert self.gf4.mul(3, 3) == 2
        assert self.gf4.mul(0, 3) == 0

    def test_gf16_reduction(self):
        # x * x^3 = x^4 = x + 1
        assert self.gf16.mul(2, 8) == 3
        assert self.gf16.add(5, 5) == 0

    def test_inverse_of_zero(self):
        with pytest.raises(FieldError):
            self.gf4.inv(0)

    def test_check(self):
        assert self.gf4.check(3) == 3
        with pytest.raises(FieldError):
            self.gf4.check(4)
        with pytest.raises(FieldError):
            self.gf4.check(-1)
        with pytest.raises(FieldError):
            self.gf4.check('1')

    @pytest.mark.parametrize('k', range(2, 17))
    def test_polynomials_match_galois(self, k):
        spec = FieldSpec(k)
        assert int(spec.gf.irreducible_poly) == REDUCTION_POLYNOMIALS[k]

    def test_document(self):
        assert self.gf16.to_dict() == {'k': 4, 'poly': 0x13}
        assert FieldSpec.from_dict({'k': 4, 'poly': 19}) == self.gf16
        assert FieldSpec.from_dict({'k': 4}) == self.gf16
        with pytest.raises(FieldError):
            FieldSpec.from_dict({'k': 4, 'poly': 0x19})
        with pytest.raises(FieldError):
            FieldSpec.from_dict({'k': 0, 'poly': 0})
        with pytest.raises(FieldError):
            FieldSpec.from_dict({})

    @settings(max_examples=200, deadline=None)
    @given(field_and_elements())
    def test_axioms(self, case):
        spec, (x, y, z) = case
        assert spec.mul(x, y) == spec.mul(y, x)
        assert spec.mul(spec.mul(x, y), z) == spec.mul(x, spec.mul(y, z))
        assert spec.mul(x, spec.add(y, z)) == spec.add(spec.mul(x, y), spec.mul(x, z))
        assert spec.mul(x, 1) == x
        if x:
            assert spec.mul(x, spec.inv(x)) == 1
            assert spec.div(spec.mul(x, y), x) == y

    @pytest.mark.parametrize('k', [1, 2, 3, 4])
    def test_axioms_on_small_fields(self, k):
        spec = FieldSpec(k)
        elements = range(spec.order)
        for x, y in product(elements, repeat=2):
            assert spec.add(x, y) == spec.add(y, x)
            assert spec.mul(x, y) == spec.mul(y, x)
            assert spec.add(x, spec.sub(y, x)) == y
        for x, y, z in product(elements, repeat=3):
            assert spec.add(spec.add(x, y), z) == spec.add(x, spec.add(y, z))
            assert spec.mul(spec.mul(x, y), z) == spec.mul(x, spec.mul(y, z))
            assert spec.mul(x, spec.add(y, z)) == spec.add(spec.mul(x, y), spec.mul(x, z))
        for x in elements:
            assert spec.add(x, 0) == x
            assert spec.mul(x, 1) == x
            assert spec.mul(x, 0) == 0
            if x:
                assert spec.mul(x, spec.inv(x)) == 1

    @pytest.mark.parametrize('k', [1, 2, 3, 4, 8])
    def test_inverse_is_an_involution(self, k):
        spec = FieldSpec(k)
        for x in range(1, spec.order):
            assert spec.inv(spec.inv(x)) == x

    @settings(max_examples=100, deadline=None)
    @given(field_and_elements(count=2))
    def test_products_match_galois(self, case):
        spec, (x, y) = case
        gf = spec.gf
        assert spec.mul(x, y) == int(gf(x) * gf(y))


class TestFieldElement:

    def setup_class(self):
        self.spec = FieldSpec(2)

    def test_operators(self):
        x = self.spec.element(2)
        y = self.spec.element(3)
        assert x + y == 1
        assert x * y == 1
        assert x * x == y
        assert x.inv() == y
        assert (x / y) == x * x
        assert add(x, x) == 0
        assert mul(x, 1) == x
        assert inv(y) == x
        assert not self.spec.element(0)

    def test_mixed_fields(self):
        with pytest.raises(FieldError):
            self.spec.element(1) + FieldSpec(3).element(1)

    def test_inverse_of_zero(self):
        with pytest.raises(FieldError):
            inv(self.spec.element(0))


class TestChooseField:

    @pytest.mark.parametrize('colors, k', [
        (1, 1), (2, 2), (3, 2), (4, 3), (5, 3), (6, 3), (7, 3), (8, 4), (12, 4), (65535, 16)])
    def test_smallest_field(self, colors, k):
        spec = choose_field(colors)
        assert spec.k == k
        assert spec.order > colors

    def test_too_many_colors(self):
        with pytest.raises(FieldError):
            choose_field(2 ** 16)
        with pytest.raises(FieldError):
            choose_field(70000)
        with pytest.raises(FieldError):
            choose_field(0)
