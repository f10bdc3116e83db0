from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ifslab import (IDENTITY, IFS, Interval, InvalidParameterError,
                    InvalidWordError, Similarity, attractor_hull, compose,
                    cylinder_cover, cylinder_map, invert)
from ifslab.presets import C13, cantor

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=97)
nonzero_rationals = rationals.filter(lambda q: q != 0)


def sim(r, t):
    return Similarity(Fraction(r), Fraction(t))


class TestSimilarityAlgebra:
    def test_compose_identity(self):
        g = sim(2, 1)
        assert compose(g, IDENTITY) == g
        assert compose(IDENTITY, g) == g

    def test_compose_hand_expanded(self):
        # g(h(x)) = (1/3)((1/3)x + 2/3) = x/9 + 2/9
        g = sim(Fraction(1, 3), 0)
        h = sim(Fraction(1, 3), Fraction(2, 3))
        assert compose(g, h) == sim(Fraction(1, 9), Fraction(2, 9))

    def test_invert(self):
        assert invert(sim(2, 1)) == sim(Fraction(1, 2), Fraction(-1, 2))
        assert invert(IDENTITY) == IDENTITY
        assert invert(sim(Fraction(1, 3), Fraction(2, 3))) == sim(3, -2)

    def test_compose_with_inverse_is_identity(self):
        g = sim(Fraction(7, 5), Fraction(-3, 11))
        assert compose(g, invert(g)) == IDENTITY

    def test_zero_ratio_rejected(self):
        with pytest.raises(InvalidParameterError):
            Similarity(Fraction(0), Fraction(1))

    @given(a=nonzero_rationals, b=rationals, c=nonzero_rationals,
           d=rationals, e=nonzero_rationals, f=rationals)
    def test_compose_associative(self, a, b, c, d, e, f):
        g, h, k = Similarity(a, b), Similarity(c, d), Similarity(e, f)
        assert compose(compose(g, h), k) == compose(g, compose(h, k))


class TestCylinderMap:
    def test_single_letter(self):
        assert cylinder_map(C13, (1,)) == sim(Fraction(1, 3), 0)

    def test_two_letters(self):
        assert cylinder_map(C13, (2, 2)) == sim(Fraction(1, 9), Fraction(8, 9))

    def test_empty_word_is_identity(self):
        assert cylinder_map(C13, ()) == IDENTITY

    def test_bad_index(self):
        with pytest.raises(InvalidWordError):
            cylinder_map(C13, (1, 3))

    @given(st.lists(st.integers(1, 2), max_size=8),
           st.lists(st.integers(1, 2), max_size=8))
    def test_concat_is_composition(self, I, J):
        lhs = cylinder_map(C13, tuple(I) + tuple(J))
        rhs = compose(cylinder_map(C13, I), cylinder_map(C13, J))
        assert lhs == rhs


class TestAttractorHull:
    def test_c13(self):
        assert attractor_hull(C13) == Interval(Fraction(0), Fraction(1))

    def test_halves(self):
        ifs = IFS((sim(Fraction(1, 2), 0), sim(Fraction(1, 2), Fraction(1, 2))))
        assert attractor_hull(ifs) == Interval(Fraction(0), Fraction(1))

    def test_degenerate_identical_maps(self):
        ifs = IFS((sim(Fraction(1, 3), 0), sim(Fraction(1, 3), 0)))
        assert attractor_hull(ifs) == Interval(Fraction(0), Fraction(0))

    def test_endpoints_are_fixed_points_of_extreme_maps(self):
        for rho in (Fraction(1, 3), Fraction(2, 5), Fraction(1, 7)):
            ifs = cantor(rho)
            hull = attractor_hull(ifs)
            first = min(ifs.maps, key=lambda m: m.translation)
            last = max(ifs.maps, key=lambda m: m.translation)
            assert first(hull.lo) == hull.lo
            assert last(hull.hi) == hull.hi


class TestCylinderCover:
    def test_one_level(self):
        cover = cylinder_cover(C13, Fraction(1, 3))
        assert [iv for _, iv in cover] == [
            Interval(Fraction(0), Fraction(1, 3)),
            Interval(Fraction(2, 3), Fraction(1))]

    def test_hull_already_small(self):
        assert cylinder_cover(C13, 1) == \
            [((), Interval(Fraction(0), Fraction(1)))]

    def test_two_levels(self):
        cover = cylinder_cover(C13, Fraction(1, 9))
        assert len(cover) == 4
        assert all(iv.diameter == Fraction(1, 9) for _, iv in cover)

    def test_refinement(self):
        for delta in (Fraction(1, 4), Fraction(1, 10)):
            coarse = [iv for _, iv in cylinder_cover(C13, delta)]
            fine = cylinder_cover(C13, delta / 2)
            assert all(any(c.contains(iv) for c in coarse) for _, iv in fine)

    def test_invalid_delta(self):
        with pytest.raises(InvalidParameterError):
            cylinder_cover(C13, 0)


def test_ifs_validation():
    with pytest.raises(InvalidParameterError):
        IFS((sim(Fraction(1, 2), 0),))
    with pytest.raises(InvalidParameterError):
        IFS((sim(Fraction(3, 2), 0), sim(Fraction(1, 2), 0)))
    assert C13.homogeneous()
    assert not IFS((sim(Fraction(1, 2), 0), sim(Fraction(1, 3), Fraction(2, 3)))
                   ).homogeneous()


def test_ifs_json_round_trip(tmp_path):
    import json
    path = tmp_path / "c13.json"
    path.write_text(json.dumps(C13.to_dict()))
    assert IFS.from_json(str(path)) == C13
