import json
from fractions import Fraction

import numpy as np
import pytest

from metriclat import lattice as lt, partitions as pt
from metriclat.errors import AxiomViolation, EmptyGroundSet, MeetUndefined


@pytest.fixture(scope="module")
def L4():
    return lt.partition_lattice(4)


@pytest.fixture(scope="module")
def L5():
    return lt.partition_lattice(5)


@pytest.fixture(scope="module")
def B3():
    return lt.boolean_measure_lattice([1, 1, 1])


class TestBuild:
    def test_two_chain(self):
        L = lt.build_lattice(["0", "1"], [[0, 1], [1, 1]], [[0, 1], [1, 0]])
        assert L.n_elements == 2
        assert lt.t_ml_sentence_values(L) == [0] * 7

    def test_p4_table(self, L4):
        assert L4.n_elements == 15
        assert L4.elements[0] == "1|2|3|4"
        assert L4.elements[-1] == "1,2,3,4"
        x, y = L4.index("1,2|3,4"), L4.index("1,3|2,4")
        assert L4.metric(x, y) == Fraction(2, 3)

    def test_non_associative_join_rejected(self):
        join = [[0, 1, 0], [1, 1, 2], [0, 2, 2]]
        metric = [[0, "1/2", 1], ["1/2", 0, "1/2"], [1, "1/2", 0]]
        with pytest.raises(AxiomViolation) as err:
            lt.build_lattice(["a", "b", "c"], join, metric)
        assert err.value.kind == "join-associative"

    def test_diameter_enforced_not_rescaled(self):
        with pytest.raises(AxiomViolation) as err:
            lt.build_lattice(["0", "1"], [[0, 1], [1, 1]], [[0, "1/2"], ["1/2", 0]])
        assert err.value.kind == "diameter"
        metric, factor = lt.normalize_diameter(
            [[0, 1], [1, 1]], [[0, "1/2"], ["1/2", 0]]
        )
        assert factor == Fraction(1, 2)
        assert metric[0][1] == 1

    def test_triangle_violation_detected(self):
        metric = [[0, 1, "1/4"], [1, 0, "1/4"], ["1/4", "1/4", 0]]
        join = [[0, 1, 2], [1, 1, 1], [2, 1, 2]]  # chain 0 < c < 1
        with pytest.raises(AxiomViolation) as err:
            lt.build_lattice(["0", "1", "c"], join, metric)
        assert err.value.kind == "triangle"

    def test_semimodular_violation_detected(self):
        # chain 0 < a < 1 with d(a,1) = 3/4 > |1| - |a| = 1/2; the triangle
        # and contractivity inequalities still hold, so the semi-modular
        # check is the one that fires
        join = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
        metric = [[0, "1/2", 1], ["1/2", 0, "3/4"], [1, "3/4", 0]]
        with pytest.raises(AxiomViolation) as err:
            lt.build_lattice(["0", "a", "1"], join, metric)
        assert err.value.kind == "semi-modular"

    def test_contractivity_violation_detected(self):
        # chain 0 < a < b < 1 where joining with a expands the (0, b) pair
        join = [[0, 1, 2, 3], [1, 1, 2, 3], [2, 2, 2, 3], [3, 3, 3, 3]]
        metric = [
            [0, "3/4", "1/4", 1],
            ["3/4", 0, "1/2", "1/2"],
            ["1/4", "1/2", 0, "3/4"],
            [1, "1/2", "3/4", 0],
        ]
        with pytest.raises(AxiomViolation) as err:
            lt.build_lattice(["0", "a", "b", "1"], join, metric)
        assert err.value.kind == "join-contractive"

    def test_indiscernibility_violation_detected(self):
        join = [[0, 1, 2, 3], [1, 1, 2, 3], [2, 2, 2, 3], [3, 3, 3, 3]]
        metric = [
            [0, "1/2", "1/2", 1],
            ["1/2", 0, 0, "1/2"],
            ["1/2", 0, 0, "1/2"],
            [1, "1/2", "1/2", 0],
        ]
        with pytest.raises(AxiomViolation) as err:
            lt.build_lattice(["0", "a", "b", "1"], join, metric)
        assert err.value.kind == "metric-indiscernible"

    def test_missing_bottom_detected(self):
        # a, b incomparable with join c: associative but no least element
        join = [[0, 2, 2], [2, 1, 2], [2, 2, 2]]
        metric = [[0, "1/2", "1/2"], ["1/2", 0, "1/2"], ["1/2", "1/2", 0]]
        with pytest.raises(AxiomViolation) as err:
            lt.build_lattice(["a", "b", "c"], join, metric)
        assert err.value.kind == "zero-element"

    def test_meet_undefined_guard(self):
        # 0 < a,b < c,d < 1 without unique glb for (c,d); the join table is
        # non-associative so only the derivation helper sees this shape
        labels = ["0", "a", "b", "c", "d", "1"]
        J = np.array([
            [0, 1, 2, 3, 4, 5],
            [1, 1, 3, 3, 4, 5],
            [2, 3, 2, 3, 4, 5],
            [3, 3, 3, 3, 5, 5],
            [4, 4, 4, 5, 4, 5],
            [5, 5, 5, 5, 5, 5],
        ], dtype=np.int32)
        with pytest.raises(MeetUndefined):
            lt._derive_meet(J, labels)

    def test_meet_agrees_with_reference_scan(self, L4, B3):
        for L in (L4, B3):
            B = L.n_elements
            for x in range(B):
                for y in range(B):
                    lowers = [z for z in range(B) if L.leq(z, x) and L.leq(z, y)]
                    greatest = [z for z in lowers
                                if all(L.leq(w, z) for w in lowers)]
                    assert greatest == [L.meet(x, y)]

    def test_linear_extension(self, L5):
        xs, ys = np.nonzero(L5.order)
        assert (xs <= ys).all()
        ranks = [L5.norm(i) for i in range(L5.n_elements)]
        assert ranks == sorted(ranks)


class TestSentences:
    def test_p5_all_zero(self, L5):
        assert lt.t_ml_sentence_values(L5) == [0] * 7

    def test_boolean_all_zero(self, B3):
        assert lt.t_ml_sentence_values(B3) == [0] * 7

    def test_semilattice_axiom_defect_zero(self, L4, L5, B3):
        for L in (L4, L5, B3):
            assert lt.semilattice_axiom_defect(L) == 0


class TestCalculus:
    def test_dprime_self_is_zero(self, L4):
        for x in range(L4.n_elements):
            assert lt.dprime(L4, x, x) == 0

    def test_dprime_matching_pair(self, L4):
        x, y = L4.index("1,2|3,4"), L4.index("1,3|2,4")
        assert lt.dprime(L4, x, y) == Fraction(2, 3)

    def test_dprime_chain_is_rank_gap(self, L4):
        for x in range(L4.n_elements):
            for y in range(L4.n_elements):
                if L4.leq(x, y):
                    assert lt.dprime(L4, x, y) == L4.norm(y) - L4.norm(x)

    def test_dprime_sandwich_and_delta(self, L4, B3):
        for L in (L4, B3):
            for x in range(L.n_elements):
                for y in range(L.n_elements):
                    d = L.metric(x, y)
                    dp = lt.dprime(L, x, y)
                    assert d <= dp <= 2 * d
                    assert dp <= lt.delta_quasimetric(L, x, y)

    def test_dprime_from_rank_vector(self, L4):
        for x in range(L4.n_elements):
            for y in range(L4.n_elements):
                j = L4.join(x, y)
                assert lt.dprime(L4, x, y) == 2 * L4.norm(j) - L4.norm(x) - L4.norm(y)

    def test_triple_bracket_values(self):
        L3 = lt.partition_lattice(3)
        xs = [L3.index(s) for s in ("1|2,3", "1,3|2", "1,2|3")]
        assert lt.triple_bracket(L3, *xs) == Fraction(3, 2)
        assert lt.triple_bracket(L3, xs[0], xs[0], xs[0]) == 0

    def test_triple_bracket_with_bottom(self, L4):
        x, y = L4.index("1,2|3,4"), L4.index("1,3|2,4")
        assert lt.triple_bracket(L4, x, y, L4.bottom) == L4.norm(L4.join(x, y))
        assert lt.triple_bracket(L4, L4.bottom, L4.bottom, x) == L4.norm(x)

    def test_triple_bracket_dominates_dprime(self, L4):
        for x in range(0, L4.n_elements, 2):
            for y in range(L4.n_elements):
                for z in range(L4.n_elements):
                    assert lt.dprime(L4, x, y) <= lt.triple_bracket(L4, x, y, z)

    def test_delta_values(self, L4):
        x, y = L4.index("1,2|3,4"), L4.index("1,3|2,4")
        assert lt.delta_quasimetric(L4, x, L4.bottom) == L4.norm(x)
        assert lt.delta_quasimetric(L4, x, x) == 0
        assert lt.delta_quasimetric(L4, x, y) == Fraction(4, 3)

    def test_submodularity_of_rank(self, L4):
        r = L4.rank_num
        for x in range(L4.n_elements):
            for y in range(L4.n_elements):
                assert r[L4.join(x, y)] + r[L4.meet(x, y)] <= r[x] + r[y]

    def test_norm_is_one_lipschitz(self, L4, B3):
        for L in (L4, B3):
            for x in range(L.n_elements):
                for y in range(L.n_elements):
                    assert abs(L.norm(x) - L.norm(y)) <= L.metric(x, y)

    def test_semimodular_upgrade(self, L4):
        # |x+y| + |z| <= |x+z| + |y+z| on every metric lattice
        for x in range(L4.n_elements):
            for y in range(L4.n_elements):
                for z in range(0, L4.n_elements, 3):
                    lhs = L4.norm(L4.join(x, y)) + L4.norm(z)
                    rhs = L4.norm(L4.join(x, z)) + L4.norm(L4.join(y, z))
                    assert lhs <= rhs

    def test_triple_bracket_identity(self, L4):
        # [x,y,z] = d(x+y,0) - d(z,0) + d(x+z,x) + d(y+z,y)
        for x in range(0, L4.n_elements, 2):
            for y in range(L4.n_elements):
                for z in range(L4.n_elements):
                    expected = (
                        L4.metric(L4.join(x, y), L4.bottom)
                        - L4.metric(z, L4.bottom)
                        + L4.metric(L4.join(x, z), x)
                        + L4.metric(L4.join(y, z), y)
                    )
                    assert lt.triple_bracket(L4, x, y, z) == expected

    def test_delta_is_a_quasimetric(self, L4):
        # symmetric, vanishing exactly on the diagonal, and triangle-like
        # whenever the middle element sits below one of the endpoints
        B = L4.n_elements
        for x in range(B):
            for y in range(B):
                d = lt.delta_quasimetric(L4, x, y)
                assert d == lt.delta_quasimetric(L4, y, x)
                assert (d == 0) == (x == y)
                for z in range(B):
                    if L4.leq(z, x) or L4.leq(z, y):
                        assert d <= lt.delta_quasimetric(L4, x, z) + \
                            lt.delta_quasimetric(L4, y, z)

    def test_meet_contracts_on_modular_pairs(self, L4):
        # if (x,z) and (y,z) are metrically modular pairs then
        # d'(xz, yz) <= d'(x, y) and d(xz, yz) <= 2 d(x, y)
        B = L4.n_elements
        for z in lt.modular_elements(L4):
            for x in range(B):
                for y in range(B):
                    xz, yz = L4.meet(x, z), L4.meet(y, z)
                    assert lt.dprime(L4, xz, yz) <= lt.dprime(L4, x, y)
                    assert L4.metric(xz, yz) <= 2 * L4.metric(x, y)

    def test_strong_semimodularity_iff_modular(self, L4, B3):
        # |x+y| - |xy| <= [x,y,z] for all z holds exactly on modular lattices
        def strongly_semimodular(L):
            for x in range(L.n_elements):
                for y in range(L.n_elements):
                    gap = L.norm(L.join(x, y)) - L.norm(L.meet(x, y))
                    for z in range(L.n_elements):
                        if gap > lt.triple_bracket(L, x, y, z):
                            return False
            return True

        assert strongly_semimodular(B3)
        assert not strongly_semimodular(L4)


class TestPhiDefect:
    def test_matching_pair(self, L4):
        x, y = L4.index("1,2|3,4"), L4.index("1,3|2,4")
        val, z = lt.phi_defect(L4, x, y)
        assert val == Fraction(1, 3)

    def test_bottom_always_modular(self, L4):
        for x in range(L4.n_elements):
            assert lt.phi_defect(L4, x, L4.bottom)[0] == 0

    def test_zero_iff_metrically_modular(self, L5, B3):
        for L in (L5, B3):
            for x in range(L.n_elements):
                for y in range(L.n_elements):
                    mm = lt.is_metrically_modular_pair(L, x, y)
                    val, z = lt.phi_defect(L, x, y)
                    assert (val == 0) == mm
                    if mm:
                        meets = L.meet(x, y)
                        r = L.rank_num
                        t1 = max(
                            Fraction(int(r[x] + r[y] - r[L.join(x, y)] - r[meets]),
                                     L.scale),
                            Fraction(0),
                        )
                        assert t1 == 0  # witness z = xy realizes the defect 0


class TestModularElements:
    def test_boolean_all_modular(self, B3):
        assert lt.modular_elements(B3) == list(range(8))

    def test_p4_modular_are_singular(self, L4):
        mods = lt.modular_elements(L4)
        assert len(mods) == 12
        singular = {i for i, p in enumerate(L4.partitions) if pt.is_singular(p)}
        assert set(mods) == singular

    def test_two_chain(self):
        L = lt.chain_lattice(1)
        assert lt.modular_elements(L) == [0, 1]


class TestComplements:
    def test_bottom_complemented_by_top(self, L4):
        assert lt.complements(L4, L4.bottom) == [L4.top]

    def test_matching_complement_not_weak(self, L4):
        x, y = L4.index("1,2|3,4"), L4.index("1,3|2,4")
        assert y in lt.complements(L4, x)
        assert not lt.is_weak_complement(L4, x, y)

    def test_boolean_square_unique_weak_complements(self):
        B2 = lt.boolean_measure_lattice([1, 1])
        for x in range(4):
            comps = lt.complements(B2, x)
            assert len(comps) == 1
            assert lt.is_weak_complement(B2, x, comps[0])

    def test_weak_complement_implies_complement(self, L4):
        for x in range(L4.n_elements):
            for y in range(L4.n_elements):
                if lt.is_weak_complement(L4, x, y):
                    assert y in lt.complements(L4, x)


class TestExchangeRelation:
    def test_p5_rank_submodular(self, L5):
        ok, wit = lt.check_exchange_relation(L5, [L5.norm(i) for i in range(52)])
        assert ok and wit is None

    def test_constant_function(self, L4):
        ok, _ = lt.check_exchange_relation(L4, [1] * 15)
        assert ok

    def test_nc4_rank_fails(self):
        nc4 = lt.noncrossing_lattice(4)
        parts = [pt.parse_partition(s, 4) for s in nc4.elements]
        rank = [Fraction(4 - p.block_count, 3) for p in parts]
        ok, wit = lt.check_exchange_relation(np.array(nc4.join), rank)
        assert not ok
        x, y, z = wit
        # the witness really breaks f(x+y) + f(z) <= f(x) + f(y+z) with z <= x
        J = np.array(nc4.join)
        assert J[z, x] == x
        assert rank[J[x, y]] + rank[z] > rank[x] + rank[J[y, z]]


class TestNoncrossing:
    def test_nc3_is_p3(self):
        nc3 = lt.noncrossing_lattice(3)
        assert len(nc3.elements) == 5

    def test_nc4_catalan(self):
        assert len(lt.noncrossing_lattice(4).elements) == 14

    def test_nc4_rejected_by_validation(self):
        nc4 = lt.noncrossing_lattice(4)
        with pytest.raises(AxiomViolation):
            lt.build_lattice(nc4.elements, nc4.join, nc4.metric)

    def test_nc_join_is_noncrossing_closure(self):
        nc4 = lt.noncrossing_lattice(4)
        parts = [pt.parse_partition(s, 4) for s in nc4.elements]
        idx = {p: i for i, p in enumerate(parts)}
        a = idx[pt.parse_partition("1,3|2|4", 4)]
        b = idx[pt.parse_partition("1|2,4|3", 4)]
        assert nc4.join[a][b] == idx[pt.Partition.one(4)]
        # while the plain partition join keeps the two crossing blocks apart
        assert pt.join(parts[a], parts[b]).block_count == 2


class TestBooleanMeasure:
    def test_uniform_distances(self):
        BM = lt.boolean_measure_lattice([1, 1, 1, 1])
        assert BM.metric(BM.index("{1}"), BM.index("{2}")) == Fraction(1, 2)
        assert BM.metric(BM.bottom, BM.top) == 1

    def test_weighted(self):
        BM = lt.boolean_measure_lattice([1, 2, 3])
        assert BM.norm(BM.index("{3}")) == Fraction(1, 2)

    def test_empty_rejected(self):
        with pytest.raises(EmptyGroundSet):
            lt.boolean_measure_lattice([])
        with pytest.raises(EmptyGroundSet):
            lt.boolean_measure_lattice([1, 0])


class TestJson:
    def test_round_trip(self, L4):
        doc = lt.lattice_to_json(L4)
        text = json.dumps(doc)
        L2 = lt.lattice_from_json(json.loads(text))
        assert L2.elements == L4.elements
        assert (L2.dnum == L4.dnum).all()
        assert L2.scale == L4.scale

    def test_rationals_as_pq_strings(self, L4):
        doc = lt.lattice_to_json(L4)
        assert doc["d"][0][1] == "1/3"
        assert doc["d"][0][0] == "0/1"
