import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from acypoly.acyclic import ac_brute, ac_closed
from acypoly.graph import cycle
from acypoly.poly import Poly
from acypoly.roots import (
    Annulus,
    RootFindingError,
    all_roots,
    count_real_roots_in,
    cubic_discriminant,
    enestrom_kakeya,
    is_log_concave,
    is_real_rooted,
    is_stable_hb,
    is_stable_numeric,
    is_unimodal,
    isolate_real_roots,
    limacon_point,
    limit_curve_distance,
    rational_roots,
    real_root_in,
    sturm_chain,
)

from oracles import numpy_roots, sympy_real_root_count

X = Poly([0, 1])


def linear(r):
    return X - r


class TestSturm:
    def test_chain_shape(self):
        chain = sturm_chain(Poly([-1, 0, 1]))
        assert [f.degree for f in chain] == [2, 1, 0]

    def test_counts(self):
        p = linear(1) * linear(2) * linear(3)
        assert count_real_roots_in(p) == 3
        assert count_real_roots_in(p, 0, Fraction(5, 2)) == 2
        assert count_real_roots_in(p, Fraction(3, 2), 10) == 2
        with pytest.raises(ValueError):
            count_real_roots_in(p, 1, 4)
        with pytest.raises(ValueError):
            count_real_roots_in(p, 3, 2)

    def test_distinct_roots_not_multiplicities(self):
        assert count_real_roots_in(linear(1) ** 3 * linear(-2)) == 2

    @settings(max_examples=60)
    @given(st.lists(st.integers(-20, 20), min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
    def test_against_sympy(self, coeffs):
        assert count_real_roots_in(Poly(coeffs)) == sympy_real_root_count(coeffs)

    def test_isolation(self):
        p = linear(1) * linear(2) * linear(Fraction(5, 2)) * (X * X + 1)
        cells = isolate_real_roots(p)
        assert len(cells) == 3
        roots = [Fraction(1), Fraction(2), Fraction(5, 2)]
        for (a, b), r in zip(cells, roots):
            assert a < r < b

    def test_bisection(self):
        r = real_root_in(X * X - 2, 1, 2)
        assert abs(float(r) - math.sqrt(2)) < 1e-25


class TestRealRooted:
    def test_positive_cases(self):
        assert is_real_rooted(Poly([1, 1]) ** 5)
        assert is_real_rooted(linear(-1) * linear(-2) ** 2 * linear(3))
        assert is_real_rooted(ac_closed("forest", 8))

    def test_negative_cases(self):
        assert not is_real_rooted(X * X + 1)
        assert not is_real_rooted(ac_brute(cycle(5)))
        assert not is_real_rooted((X * X + 1) ** 2 * linear(-1))

    def test_preconditions(self):
        with pytest.raises(ValueError):
            is_real_rooted(Poly([3]))
        with pytest.raises(ValueError):
            is_real_rooted(-(X + 1))


class TestHurwitz:
    def test_simple(self):
        assert is_stable_hb(Poly([1, 3, 3, 1]))
        assert is_stable_hb(Poly([1, 1]))
        assert is_stable_hb(Poly([1, 1, 1]))
        assert not is_stable_hb(Poly([1, 1, 1, 1]))          # roots at +-i
        assert not is_stable_hb(Poly([1, 0, 1]))
        assert not is_stable_hb(Poly([-1, 1]))

    def test_right_half_plane_product(self):
        p = (X * X - X + 1) * linear(-1)
        assert not is_stable_hb(Poly(list(p)))

    @settings(max_examples=80)
    @given(st.lists(st.integers(1, 30), min_size=2, max_size=8))
    def test_against_numeric(self, coeffs):
        p = Poly(coeffs)
        zs = numpy_roots(coeffs)
        top = max(z.real for z in zs)
        assume(abs(top) > 1e-6)
        assert is_stable_hb(p) == (top < 0)

    def test_numeric_variant(self):
        assert is_stable_numeric(Poly([1, 3, 3, 1]))
        assert not is_stable_numeric(ac_closed("joinbar_k6", 20))


class TestAllRoots:
    def test_quadratic(self):
        rs = all_roots(Poly([1, 3, 3]))
        assert len(rs) == 2
        for z in rs.roots:
            assert abs(abs(complex(z)) - math.sqrt(1 / 3)) < 1e-15
        assert rs.precision == 128

    def test_residuals_and_conjugates(self):
        p = ac_brute(cycle(7))
        rs = all_roots(p)
        assert max(rs.residuals) < 1e-30
        zs = sorted(rs.as_complex(), key=lambda z: (round(z.real, 9), z.imag))
        conj = sorted((z.conjugate() for z in zs), key=lambda z: (round(z.real, 9), z.imag))
        assert all(abs(a - b) < 1e-20 for a, b in zip(zs, conj))

    def test_multiplicity_hints(self):
        rs = all_roots(Poly([1, 1]) ** 4 * (X * X + 1))
        assert sorted(rs.multiplicities) == [1, 1, 4, 4, 4, 4]

    def test_against_numpy(self):
        p = ac_closed("knn", 4)
        ours = sorted(all_roots(p).as_complex(), key=lambda z: (z.real, z.imag))
        ref = sorted(numpy_roots(list(p)), key=lambda z: (z.real, z.imag))
        assert all(abs(a - b) < 1e-8 for a, b in zip(ours, ref))

    def test_precision_escalation(self):
        assert all_roots(ac_closed("forest", 121)).precision == 256
        assert all_roots(Poly([1, 1]), precision=200).precision == 200

    def test_non_convergence(self):
        with pytest.raises(RootFindingError) as info:
            all_roots(ac_closed("cycle", 9), tol=1e-200)
        assert info.value.roots is not None and len(info.value.residuals) == 8

    def test_degree_zero(self):
        with pytest.raises(ValueError):
            all_roots(Poly([4]))

    def test_json(self):
        doc = all_roots(Poly([1, 2, 1])).to_json()
        assert doc["precision"] == 128
        assert len(doc["roots"]) == 2
        assert all(isinstance(r["re"], str) for r in doc["roots"])


class TestCoefficientTests:
    def test_annulus(self):
        ann = enestrom_kakeya(Poly([1, 10, 45, 58, 1]))
        assert ann == Annulus(Fraction(1, 10), Fraction(58))
        for z in all_roots(Poly([1, 10, 45, 58, 1])).as_complex():
            assert ann.contains(abs(z), 1e-12)

    def test_annulus_degenerate_equal_bounds(self):
        ann = enestrom_kakeya(Poly([1, 1, 1]))
        assert ann.lo == ann.hi == 1

    def test_annulus_preconditions(self):
        with pytest.raises(ValueError):
            enestrom_kakeya(Poly([1, 2]))
        with pytest.raises(ValueError):
            enestrom_kakeya(Poly([1, -2, 1]))

    def test_discriminant(self):
        assert cubic_discriminant(1, 0, -1, 0) == 4
        assert cubic_discriminant(1, 3, 3, 1) == 0
        with pytest.raises(ValueError):
            cubic_discriminant(0, 1, 1, 1)

    def test_rational_roots(self):
        assert rational_roots(Poly([1, 3, 2])) == [Fraction(-1), Fraction(-1, 2)]
        assert rational_roots(Poly([1, 1, 1])) == []
        with pytest.raises(ValueError):
            rational_roots(Poly([2, 1]))

    def test_unimodal(self):
        assert is_unimodal([1, 3, 3, 1])
        assert is_unimodal([1, 2, 2, 1, 1])
        assert not is_unimodal([1, 2, 1, 1, 2])
        assert not is_unimodal(ac_closed("joinbar_k6", 20))
        assert is_unimodal(ac_closed("joinbar_k6", 19))

    def test_log_concave(self):
        assert is_log_concave([1, 4, 6, 4, 1])
        assert not is_log_concave([1, 1, 4])
        assert not is_log_concave([1, 0, 1])


class TestLimitCurves:
    def test_points_on_curves(self):
        assert limit_curve_distance(0) < 1e-12
        assert limit_curve_distance(-1) < 1e-12
        assert limit_curve_distance(complex(-0.5, 0.5)) < 1e-12
        for t in (1.0, 2.0, math.pi, 4.5, 5.2):
            assert limit_curve_distance(limacon_point(t)) < 1e-9

    def test_sixty_degree_point(self):
        z = limacon_point(math.pi / 3)
        assert abs(abs(z) - (math.sqrt(2) - 1)) < 1e-15
        assert abs(cmath.phase(z) - math.pi / 3) < 1e-15

    def test_distance_is_small_only_near_curves(self):
        assert limit_curve_distance(complex(3, 3)) > 1
        assert abs(limit_curve_distance(-4) - (4 - 2 - math.sqrt(2))) < 1e-9
