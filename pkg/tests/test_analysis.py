from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from netkeycast.analysis import (capped_words, characteristic_codebook, corollary1_bound,
                                 min_support_pair, min_support_pair_pruned, plotkin_bound,
                                 plotkin_bound_sharp, sr_gap_report_nonsecure,
                                 sr_gap_report_secure, verify_plotkin_exhaustive, weight_bucket)
from netkeycast.lincode import EnumerationCapError


@st.composite
def codebooks(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    word = st.tuples(*[st.integers(min_value=0, max_value=1)] * n)
    return draw(st.lists(word, min_size=2, max_size=8))


class TestBounds:

    def test_values(self):
        assert plotkin_bound(2, 4, Fraction(1, 2)) == 6
        assert plotkin_bound(3, 6, Fraction(1, 2)) == Fraction(27, 4)
        assert plotkin_bound_sharp(2, 4, Fraction(1, 2)) == 4
        assert plotkin_bound_sharp(3, 6, '1/2') == Fraction(21, 4)

    def test_large_codebooks(self):
        # M -> infinity leaves n w (2 - w)
        assert plotkin_bound(10 ** 6 + 1, 8, Fraction(1, 2)) == 6 + Fraction(6, 10 ** 6)

    @pytest.mark.parametrize('M', [2, 3, 5, 9])
    @pytest.mark.parametrize('w', [Fraction(1, 5), Fraction(1, 2), Fraction(3, 4), 1])
    def test_sharp_is_below(self, M, w):
        assert plotkin_bound_sharp(M, 10, w) <= plotkin_bound(M, 10, w)

    @pytest.mark.parametrize('M, n, w', [(1, 4, '1/2'), (2, 0, '1/2'), (2, 4, 0), (2, 4, '3/2'), (2, 4, 'x')])
    def test_invalid(self, M, n, w):
        with pytest.raises(ValueError):
            plotkin_bound(M, n, w)
        with pytest.raises(ValueError):
            plotkin_bound_sharp(M, n, w)


class TestMinSupportPair:

    def test_smallest_union(self):
        pair, size = min_support_pair(['110', '011', '100'])
        assert pair == ((1, 1, 0), (1, 0, 0))
        assert size == 2

    def test_ties_go_to_the_first_pair(self):
        pair, size = min_support_pair(['100', '010', '001'])
        assert pair == ((1, 0, 0), (0, 1, 0))
        assert size == 2
        assert min_support_pair_pruned(['100', '010', '001']) == (pair, size)

    def test_invalid(self):
        with pytest.raises(ValueError):
            min_support_pair(['101'])
        with pytest.raises(ValueError):
            min_support_pair(['101', '10'])
        with pytest.raises(ValueError):
            min_support_pair(['120', '100'])

    @settings(max_examples=200, deadline=None)
    @given(codebooks())
    def test_pruned_scan_agrees(self, codebook):
        assert min_support_pair_pruned(codebook) == min_support_pair(codebook)


class TestExhaustive:

    def test_capped_words(self):
        assert len(capped_words(4, Fraction(1, 2))) == 11
        assert capped_words(2, 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_pairs(self):
        report = verify_plotkin_exhaustive(4, 2, Fraction(1, 2))
        assert report['codebooks'] == 55
        assert report['worst_min_support'] == 4
        assert report.is_success

    def test_triples(self):
        report = verify_plotkin_exhaustive(6, 3, Fraction(1, 2))
        assert report['words'] == 42
        assert report['codebooks'] == 11480
        # three words of weight 3 pairwise meeting in one position
        assert report['worst_min_support'] == 5
        assert report.is_success

    def test_too_few_words(self):
        report = verify_plotkin_exhaustive(1, 2, Fraction(1, 2))
        assert report['words'] == 1
        assert report['codebooks'] == 0
        assert report.is_success
        assert report.checks[0].skipped

    @pytest.mark.parametrize('n', range(1, 7))
    @pytest.mark.parametrize('M', [2, 3, 4])
    @pytest.mark.parametrize('w', [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)])
    def test_grid(self, n, M, w):
        report = verify_plotkin_exhaustive(n, M, w)
        assert report.is_success, report.first_failure

    def test_cap(self, monkeypatch):
        monkeypatch.setenv('KEYCAST_MAX_CODEBOOKS', '10')
        with pytest.raises(EnumerationCapError):
            verify_plotkin_exhaustive(4, 2, Fraction(1, 2))


class TestCodebooks:

    @pytest.mark.parametrize('n, w, eps, expected', [
        (4, Fraction(1, 2), Fraction(1, 2), (3, 5)),
        (8, Fraction(1, 2), Fraction(1, 4), (5, 8)),
        (10, Fraction(1, 2), Fraction(2, 5), (4, Fraction(23, 2))),
    ])
    def test_corollary(self, n, w, eps, expected):
        assert corollary1_bound(n, w, eps) == expected

    def test_corollary_invalid(self):
        with pytest.raises(ValueError):
            corollary1_bound(4, Fraction(1, 2), 0)

    def test_characteristic_codebook(self):
        words, w = characteristic_codebook([[0, 2], [1]], 3)
        assert words == [(1, 0, 1), (0, 1, 0)]
        assert w == Fraction(2, 3)
        with pytest.raises(ValueError):
            characteristic_codebook([[3]], 3)

    def test_weight_bucket(self):
        low, words = weight_bucket(['0000', '1000', '0100', '1100'], Fraction(9, 4))
        assert low == Fraction(1, 4)
        assert words == [(1, 0, 0, 0), (0, 1, 0, 0)]
        # ties go to the lightest bucket
        assert weight_bucket(['1000', '1100'], Fraction(9, 4)) == (Fraction(1, 4), [(1, 0, 0, 0)])
        with pytest.raises(ValueError):
            weight_bucket([], Fraction(1, 2))


class TestGapReports:

    def test_nonsecure(self):
        report = sr_gap_report_nonsecure(Fraction(1, 8))
        assert report['ell'] == 9
        assert report['keycast_rate'] == 1
        assert report['sr_upper_bound'] == Fraction(7, 8)
        assert report['strict_gap']
        assert report.is_success

    def test_nonsecure_boundary(self):
        report = sr_gap_report_nonsecure(Fraction(1, 4))
        assert report['ell'] == 5
        assert report['sr_upper_bound'] == 1
        assert not report['strict_gap']

    def test_nonsecure_small_eps(self):
        report = sr_gap_report_nonsecure(Fraction(1, 16))
        assert report['ell'] == 17
        assert report['sr_upper_bound'] == Fraction(13, 16)
        assert report.is_success

    @pytest.mark.parametrize('eps, ell', [(9, 2), (3, 12)])
    def test_secure(self, eps, ell):
        report = sr_gap_report_secure(eps)
        assert report['ell'] == ell
        assert report['keycast_rate'] == 1
        assert report['sr_upper_bound'] == Fraction(3, 4) + eps
        assert not report['strict_gap']
        assert report.is_success

    @pytest.mark.parametrize('eps', [Fraction(2, 3), 0, -1, 'x'])
    def test_invalid_nonsecure(self, eps):
        with pytest.raises(ValueError):
            sr_gap_report_nonsecure(eps)

    @pytest.mark.parametrize('eps', [2, 0])
    def test_invalid_secure(self, eps):
        with pytest.raises(ValueError):
            sr_gap_report_secure(eps)
