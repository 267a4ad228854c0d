import json
import math
from fractions import Fraction

import pytest

from acypoly.acyclic import ac_brute, analyze
from acypoly.atlas import exhaustive_scan, gen_dimension3, partitions, star_forest
from acypoly.classify import (
    K1_KN1,
    K3BAR,
    NOT_DEGREE3,
    STAR_FOREST,
    Degree3Witness,
    a3_below_upper,
    a3_formula,
    a3_lower,
    a3_upper,
    build_report,
    coefficient_identities,
    degree3_test,
    upsilon_lower_bounds,
)
from acypoly.graph import (
    Graph,
    complement,
    complete,
    complete_minus_edge,
    cycle,
    disjoint_union,
    empty,
    j_graph,
    path,
    torus,
)
from acypoly.poly import Poly

FIG1_BIPARTITE = Graph.from_edges(7, [(5, 0), (0, 4), (4, 1), (1, 6), (6, 3), (3, 5), (5, 2), (2, 6), (4, 3)])
FIG1_OTHER = Graph.from_edges(7, [(0, 3), (3, 6), (6, 1), (1, 5), (5, 0), (1, 4), (4, 2), (2, 5), (6, 2)])


class TestDegree3:
    def test_witness_kinds(self):
        assert degree3_test(disjoint_union(complete(1), complete(9))).kind == K1_KN1
        assert degree3_test(empty(3)).kind == K3BAR
        w = degree3_test(complete_minus_edge(6))
        assert w.kind == STAR_FOREST and w.star_sizes == (2, 1, 1, 1, 1)
        assert degree3_test(cycle(5)).kind == NOT_DEGREE3
        assert degree3_test(complete(5)).kind == NOT_DEGREE3
        assert degree3_test(empty(4)).kind == NOT_DEGREE3

    def test_invalid_witness(self):
        with pytest.raises(ValueError):
            Degree3Witness(STAR_FOREST, (1, 1, 1))
        with pytest.raises(ValueError):
            Degree3Witness(STAR_FOREST, (4,))

    def test_matches_degree_up_to_order_6(self):
        for n in range(7):
            for g in exhaustive_scan(n):
                assert degree3_test(g).is_degree3 == (ac_brute(g).degree == 3)


class TestA3:
    def test_examples(self):
        assert a3_formula(6, [2, 1, 1, 1, 1]) == 4 == a3_lower(6)
        assert a3_formula(12, [6, 6]) == 80
        g = complement(star_forest([6, 6]))
        assert ac_brute(g)[3] == 80

    def test_lower_bound_is_attained_by_kn_minus_e(self):
        assert a3_lower(10) == 8
        assert analyze(complete_minus_edge(10)).ac[3] == 8

    def test_formula_matches_brute(self):
        for n in range(4, 11):
            for g in gen_dimension3(n):
                w = degree3_test(g)
                if w.kind == STAR_FOREST:
                    assert a3_formula(n, w.star_sizes) == ac_brute(g)[3]

    def test_equal_sizes_maximise_for_fixed_k(self):
        n = 12
        by_k = {}
        for p in partitions(n):
            if len(p) >= 2 and p[0] >= 2:
                by_k.setdefault(len(p), []).append(p)
        for k, parts in by_k.items():
            best = max(parts, key=lambda p: a3_formula(n, p))
            assert max(best) - min(best) <= 1

    def test_upper_bound(self):
        assert a3_upper(3) == pytest.approx(1.5)
        for n in range(3, 40):
            s = math.sqrt(2 * n - 2)
            assert a3_upper(n) == pytest.approx(n * n - n / 2 - n * s)
        assert a3_below_upper(12, 80)
        assert not a3_below_upper(3, 2)
        with pytest.raises(ValueError):
            a3_upper(2)

    def test_order_2n_squared_fixture(self):
        for n in (2, 3, 4):
            sizes = [2 * n] * n
            assert a3_formula(2 * n * n, sizes) == 4 * n ** 4 - 4 * n ** 3 - n * n + n

    def test_non_integer_guard(self):
        with pytest.raises(ValueError):
            a3_formula(5, [2, 2])


class TestBounds:
    def test_complete(self):
        b = upsilon_lower_bounds(complete(6))
        assert b["aks"].value == 2
        assert b["max_degree"].value == 2

    def test_cycle(self):
        b = upsilon_lower_bounds(cycle(5))
        assert b["aks"].value == Fraction(10, 3)

    def test_torus(self):
        g = torus(3, 3)
        b = upsilon_lower_bounds(g)
        assert all(x.applicable for x in b.values())
        assert all(analyze(g).upsilon >= x.value for x in b.values())
        assert b["shi_xu"].value == Fraction(34, 9)
        assert b["kogan"].value == Fraction(54, 13)

    def test_inapplicable(self):
        b = upsilon_lower_bounds(disjoint_union(cycle(3), cycle(3)))
        assert not b["shi_xu"].applicable and b["shi_xu"].to_json()["value"] is None
        b = upsilon_lower_bounds(empty(4))
        assert not b["kogan"].applicable
        assert b["max_degree"].value == 4


class TestIdentities:
    def test_pass(self):
        assert coefficient_identities(complete(4), ac_brute(complete(4)))
        assert coefficient_identities(path(5), ac_brute(path(5)))

    def test_wrong_polynomial(self):
        chk = coefficient_identities(cycle(5), Poly([1, 1]) ** 5)
        assert not chk and "a_5" in chk.failure

    def test_sperner(self):
        chk = coefficient_identities(complete(3), Poly([1, 3, 3, 2]))
        assert not chk

    def test_exhaustive_small(self):
        for n in range(6):
            for g in exhaustive_scan(n):
                assert coefficient_identities(g, ac_brute(g))


class TestReport:
    def test_k7(self):
        r = build_report(complete(7))
        assert r.nabla == 5 and r.stable and r.unimodal
        assert r.method == "closed:complete"

    def test_j10(self):
        r = build_report(j_graph(10))
        assert r.upsilon == 4
        real = [complex(z).real for z in r.roots.real_roots()]
        assert any(-58 < x < -57 for x in real)
        assert max(abs(complex(z)) for z in r.roots.roots) <= 58
        assert r.annulus.hi == 58

    def test_shared_polynomial_pair(self):
        a = build_report(FIG1_BIPARTITE)
        b = build_report(FIG1_OTHER)
        assert a.coefficients == b.coefficients == [1, 7, 21, 35, 32, 12]
        assert a.bipartite and not b.bipartite

    def test_json_schema(self):
        doc = build_report(cycle(5)).to_json()
        json.dumps(doc)
        assert doc["coefficients"] == ["1", "5", "10", "10", "5"]
        assert doc["girth"] == 5 and doc["nabla"] == 1
        assert set(doc["lower_bounds"]) == {"aks", "max_degree", "shi_xu", "kogan"}
        assert doc["degree3"] is None
        assert build_report(path(3)).to_json()["girth"] is None

    def test_rational_roots_recorded(self):
        from acypoly.graph import complete_bipartite

        r = build_report(complete_bipartite(3, 3))
        assert Fraction(-1, 3) in r.rational_roots
