import random
from fractions import Fraction

import numpy as np
import pytest

from metriclat import kernels as kn, lattice as lt
from metriclat.errors import NotARank, NotCND, RankZero


@pytest.fixture(scope="module")
def L3():
    return lt.partition_lattice(3)


@pytest.fixture(scope="module")
def B3():
    return lt.boolean_measure_lattice([1, 1, 1])


class TestZetaMobius:
    def test_two_chain_zeta(self):
        z = kn.zeta_matrix(lt.chain_lattice(1))
        assert z.tolist() == [[1, 1], [0, 1]]

    def test_zeta_upper_triangular_unit_diagonal(self, L3):
        z = kn.zeta_matrix(L3)
        assert (np.tril(z, -1) == 0).all()
        assert (np.diagonal(z) == 1).all()

    def test_constant_one_inverts_to_top_indicator(self, L3):
        mu = kn.mobius_invert(kn.KernelFunction(L3, [1] * 5))
        assert mu.values == (0, 0, 0, 0, 1)

    def test_round_trip_bijection(self):
        rng = random.Random(11)
        for L in (lt.partition_lattice(4), lt.partition_lattice(5),
                  lt.boolean_measure_lattice([1, 1, 1, 1])):
            for _ in range(100):
                f = kn.random_integer_kernel(L, rng)
                assert kn.zeta_transform(kn.mobius_invert(f)).values == f.values
                g = kn.random_integer_kernel(L, rng)
                assert kn.mobius_invert(kn.zeta_transform(g)).values == g.values

    def test_wilf_identity_random_kernels(self, L3):
        rng = random.Random(5)
        for _ in range(100):
            assert kn.wilf_identity_holds(kn.random_integer_kernel(L3, rng))


class TestPsdClassify:
    def test_indicator_below_is_psd(self, L3):
        for x in range(5):
            assert kn.psd_classify(kn.indicator_below(L3, x)) in ("PSD", "PD")

    def test_constant_one_psd_not_pd(self, L3):
        assert kn.psd_classify(kn.KernelFunction(L3, [1] * 5)) == "PSD"

    def test_measure_kernel_with_full_support_is_pd(self, L3):
        rng = random.Random(3)
        w = [Fraction(rng.randint(1, 9), 10) for _ in range(5)]
        assert kn.psd_classify(kn.measure_kernel(L3, w)) == "PD"

    def test_methods_agree_on_random_kernels(self, L3, B3):
        rng = random.Random(7)
        for L in (L3, B3):
            for _ in range(100):
                f = kn.random_integer_kernel(L, rng)
                kn.psd_classify(f)  # raises MethodDisagreement on failure


class TestCnd:
    def test_measure_norm_is_cnd(self, B3):
        eta = kn.KernelFunction(B3, [B3.norm(i) for i in range(8)])
        assert kn.cnd_test(eta)
        assert kn.schoenberg_check(eta)

    def test_constant_minus_psd_is_cnd(self, L3):
        rho = kn.measure_kernel(L3, [Fraction(1, 5)] * 5)
        eta = kn.KernelFunction(L3, [2 - v for v in rho.values])
        assert kn.cnd_test(eta)

    def test_cnd_metric_vanishes_on_diagonal(self, L3):
        eta = kn.KernelFunction(L3, [L3.norm(i) for i in range(5)])
        d = kn.cnd_metric_matrix(eta)
        assert all(d[i][i] == 0 for i in range(5))

    def test_metric_from_cnd_promotes_norm(self, B3):
        eta = kn.KernelFunction(B3, [B3.norm(i) for i in range(8)])
        lat, factor, collapsed = kn.metric_from_cnd(eta)
        assert factor == 1 and not collapsed
        assert lat.n_elements == 8
        assert lt.t_ml_sentence_values(lat) == [0] * 7

    def test_metric_from_cnd_rejects_non_cnd(self, B3):
        # an increasing but wildly non-subadditive kernel
        eta = kn.KernelFunction(B3, [0, 0, 0, 0, 1, 1, 1, 5])
        if not kn.cnd_test(eta):
            with pytest.raises(NotCND):
                kn.metric_from_cnd(eta)

    def test_collapse_detected(self, B3):
        # eta constant on a covering pair forces a quotient
        vals = [B3.norm(i) for i in range(8)]
        eta = kn.KernelFunction(B3, [v * 0 + Fraction(0) if i == 0 else v
                                     for i, v in enumerate(vals)])
        # flattening eta below an atom makes d(0, atom) = eta(atom) - eta(0);
        # instead collapse by making eta equal on 0 and the first atom
        flat = list(vals)
        flat[1] = flat[0]
        eta2 = kn.KernelFunction(B3, flat)
        if kn.cnd_test(eta2):
            lat, factor, collapsed = kn.metric_from_cnd(eta2)
            assert collapsed
            assert lat.n_elements < 8


class TestMatroids:
    def test_uniform_matroid_valid_and_flats(self):
        r = kn.MatroidRank(3, [min(bin(A).count("1"), 2) for A in range(8)])
        ok, info = kn.validate_matroid(r)
        assert ok
        fl = kn.flats_lattice(r)
        assert fl.n_elements == 5
        assert lt.t_ml_sentence_values(fl) == [0] * 7

    def test_invalid_rank_witnessed(self):
        bad = kn.MatroidRank(2, [0, 1, 1, 3])
        ok, info = kn.validate_matroid(bad)
        assert not ok and info[0] == "cardinality"
        with pytest.raises(NotARank):
            kn.flats_lattice(bad)

    def test_non_monotone_witnessed(self):
        bad = kn.MatroidRank(2, [1, 1, 0, 1])
        ok, info = kn.validate_matroid(bad)
        assert not ok

    def test_graphic_triangle(self):
        r = kn.graphic_rank(3, [(0, 1), (1, 2), (0, 2)])
        assert r(0b111) == 2
        assert kn.matroid_distance(r, 0b001, 0b010) == 2
        assert kn.k_sparse(r, 2)
        assert kn.flats_lattice(r).n_elements == 5

    def test_four_cycle_two_regular(self):
        r = kn.graphic_rank(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert r(0b1111) == 3
        assert kn.k_sparse(r, 2)

    def test_rank_zero_on_nonempty_edges_not_sparse(self):
        # self-loops span nothing: r is identically 0 on a nonempty edge set
        r = kn.graphic_rank(2, [(0, 0), (1, 1)])
        assert r((1 << r.ground) - 1) == 0
        assert not kn.k_sparse(r, 2)
        with pytest.raises(RankZero):
            kn.flats_lattice(r)

    def test_empty_edge_set(self):
        r = kn.graphic_rank(3, [])
        assert r(0) == 0

    def test_distance_bounded_by_symmetric_difference(self):
        rng = random.Random(2)
        r = kn.graphic_rank(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        full = 1 << r.ground
        for _ in range(100):
            A, B = rng.randrange(full), rng.randrange(full)
            assert kn.matroid_distance(r, A, B) <= bin(A ^ B).count("1")

    def test_json_round_trip(self):
        r = kn.graphic_rank(3, [(0, 1), (1, 2), (0, 2)])
        doc = r.to_json()
        r2 = kn.MatroidRank.from_json(doc)
        assert r2.values == r.values and r2.ground == r.ground

    def test_kernel_json_round_trip(self, L3):
        f = kn.KernelFunction(L3, [Fraction(1, 3), 1, 0, Fraction(2, 5), 2])
        f2 = kn.KernelFunction.from_json(L3, f.to_json())
        assert f2.values == f.values

    def test_partition_norm_satisfies_exchange_relation(self):
        L5 = lt.partition_lattice(5)
        ok, wit = lt.check_exchange_relation(L5, kn.rank_kernel(L5).values)
        assert ok and wit is None


class TestTotalNonnegativity:
    def test_chain_non_increasing(self):
        ch = lt.chain_lattice(4)
        f = kn.KernelFunction(ch, [Fraction(9 - 2 * i, 9) for i in range(5)])
        ok, wit = kn.totally_p_nonnegative(f, 4)
        assert ok
        ok, wit = kn.fkg_check(f)
        assert ok

    def test_indicator_on_join_prime_boolean_atom(self, B3):
        f = kn.indicator_complement_upset(B3, B3.index("{2}"))
        ok, wit = kn.totally_p_nonnegative(f, 3)
        assert ok
        ok, wit = kn.fkg_check(f)
        assert ok

    def test_indicator_fails_at_non_prime_element(self, L3):
        # the join of the two other atoms climbs above this atom, so the
        # ones of the kernel matrix do not form a rectangle
        f = kn.indicator_complement_upset(L3, L3.index("1,2|3"))
        ok, wit = kn.totally_p_nonnegative(f, 2)
        assert not ok
        S, T, det = wit
        assert det < 0

    def test_fkg_violation_witnessed(self, B3):
        # a kernel dropping sharply at the top: two midlevel sets joining to
        # the top break f(x+y) f(z) >= f(x) f(y) at z = 0
        vals = [None] * 8
        for mask in range(8):
            c = bin(mask).count("1")
            vals[B3.index(kn._mask_label(mask, 3))] = (
                Fraction(1, 10) if c == 3 else (3 if c == 2 else 1)
            )
        g = kn.KernelFunction(B3, vals)
        ok, wit = kn.fkg_check(g)
        assert not ok
        x, y, z = wit
        J = B3.join_table
        assert g.values[int(J[x, y])] * g.values[z] < g.values[x] * g.values[y]
        assert B3.leq(z, x) and B3.leq(z, y)


class TestKotelyanskii:
    def test_determinant_exact(self):
        m = [[Fraction(1), Fraction(1, 2)], [Fraction(1, 2), Fraction(1)]]
        assert kn.exact_determinant(m) == Fraction(3, 4)
        assert kn.exact_determinant([[1, 2], [2, 4]]) == 0

    def test_random_psd_matrix_shape(self):
        rng = random.Random(0)
        K = kn.random_psd_matrix(3, rng)
        evs = np.linalg.eigvalsh(np.array([[float(v) for v in row] for row in K]))
        assert evs.min() > 0 and evs.max() <= 1 + 1e-12

    def test_principal_minors_and_inequality(self):
        rng = random.Random(0)
        for _ in range(100):
            K = kn.random_psd_matrix(3, rng)
            holds, strict = kn.kotelyanskii_report(K)
            assert holds
        # at least one seed yields a strict witness (generic case)
        K = kn.random_psd_matrix(3, random.Random(0))
        holds, strict = kn.kotelyanskii_report(K)
        assert strict is not None

    def test_strict_witness_breaks_total_nonnegativity(self, B3):
        K = kn.random_psd_matrix(3, random.Random(0))
        minors = kn.principal_minor_function(K)
        vals = [None] * 8
        for mask in range(8):
            vals[B3.index(kn._mask_label(mask, 3))] = minors[mask]
        f = kn.KernelFunction(B3, vals)
        ok, wit = kn.totally_p_nonnegative(f, 2)
        assert not ok
