"""Finite metric lattices: construction, axiom checking, and the metric calculus.

A lattice here is a join table plus an exact rational metric satisfying
d(0,1) = 1, join-contractivity d(x+z, y+z) <= d(x,y) and the semi-modular
bound d(x,y) <= |x+y| - |xy|.  Construction validates every axiom eagerly
and derives the order, the meet table and the rank |x| = d(x, 0).

Internally distances are held as integers scaled by a common denominator,
so all validation sweeps and sentence evaluations are exact integer
arithmetic on numpy arrays; Fractions are reconstructed at the API
boundary.
"""

from fractions import Fraction
from math import lcm

import numpy as np

from . import partitions as pt
from .errors import AxiomViolation, EmptyGroundSet, MeetUndefined
from .rationals import format_rational, parse_rational


def _as_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return parse_rational(v)
    return Fraction(v)


class FiniteMetricLattice:
    """A validated finite metric lattice.

    Immutable once constructed; every accessor is a pure read.  Use
    :func:`build_lattice` (or one of the model builders below) instead of
    calling the constructor directly.
    """

    def __init__(self, elements, join_table, meet_table, dnum, scale, partitions=None):
        self.elements = tuple(elements)
        self.join_table = join_table
        self.meet_table = meet_table
        self.dnum = dnum
        self.scale = scale
        self.partitions = partitions  # aligned Partition objects for P_n models
        self._index = {lab: i for i, lab in enumerate(self.elements)}
        self.rank_num = dnum[:, 0].copy()
        # order relation: x <= y iff x + y = y
        self.order = join_table == np.arange(len(self.elements))[None, :]

    @property
    def n_elements(self):
        return len(self.elements)

    def index(self, label):
        return self._index[label]

    def join(self, x, y):
        return int(self.join_table[x, y])

    def meet(self, x, y):
        return int(self.meet_table[x, y])

    def leq(self, x, y):
        return bool(self.order[x, y])

    def metric(self, x, y):
        return Fraction(int(self.dnum[x, y]), self.scale)

    def norm(self, x):
        """|x| = d(x, 0)."""
        return Fraction(int(self.rank_num[x]), self.scale)

    def metric_matrix(self):
        B = self.n_elements
        return [[self.metric(i, j) for j in range(B)] for i in range(B)]

    @property
    def bottom(self):
        return 0

    @property
    def top(self):
        return self.n_elements - 1

    def __repr__(self):
        return f"FiniteMetricLattice({self.n_elements} elements)"


def _violation_pair(bad, labels):
    x, y = np.argwhere(bad)[0]
    return (labels[int(x)], labels[int(y)])


def _validate_join(J, labels):
    B = len(labels)
    idx = np.arange(B)
    if (J < 0).any() or (J >= B).any():
        raise AxiomViolation("join-range", (), "join table value out of range")
    bad = J[idx, idx] != idx
    if bad.any():
        x = int(np.argwhere(bad)[0][0])
        raise AxiomViolation("join-idempotent", (labels[x],))
    bad = J != J.T
    if bad.any():
        raise AxiomViolation("join-commutative", _violation_pair(bad, labels))
    for x in range(B):
        left = J[J[x, :], :]  # (y, z) -> (x+y)+z
        right = J[x, J]       # (y, z) -> x+(y+z)
        bad = left != right
        if bad.any():
            y, z = np.argwhere(bad)[0]
            raise AxiomViolation(
                "join-associative", (labels[x], labels[int(y)], labels[int(z)])
            )
    bottoms = np.flatnonzero((J == idx[None, :]).all(axis=1))
    tops = np.flatnonzero((J == idx[:, None]).all(axis=1))
    if len(bottoms) != 1:
        raise AxiomViolation("zero-element", (), f"{len(bottoms)} candidates for 0")
    if len(tops) != 1:
        raise AxiomViolation("one-element", (), f"{len(tops)} candidates for 1")
    return int(bottoms[0]), int(tops[0])


def _scale_metric(metric, labels):
    B = len(labels)
    rows = [[_as_fraction(v) for v in row] for row in metric]
    if len(rows) != B or any(len(r) != B for r in rows):
        raise AxiomViolation("metric-shape", (), "metric matrix must be BxB")
    scale = 1
    for row in rows:
        for v in row:
            scale = lcm(scale, v.denominator)
    dnum = np.empty((B, B), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            dnum[i, j] = v.numerator * (scale // v.denominator)
    return dnum, scale


def _validate_metric(J, dnum, scale, labels, bottom, top):
    B = len(labels)
    if (dnum < 0).any() or (dnum > scale).any():
        raise AxiomViolation("metric-range", _violation_pair((dnum < 0) | (dnum > scale), labels))
    if (np.diagonal(dnum) != 0).any():
        x = int(np.flatnonzero(np.diagonal(dnum))[0])
        raise AxiomViolation("metric-identity", (labels[x],), "d(x,x) != 0")
    bad = dnum != dnum.T
    if bad.any():
        raise AxiomViolation("metric-symmetry", _violation_pair(bad, labels))
    off = dnum == 0
    np.fill_diagonal(off, False)
    if off.any():
        raise AxiomViolation(
            "metric-indiscernible", _violation_pair(off, labels), "d(x,y)=0 for x != y"
        )
    if dnum[bottom, top] != scale:
        raise AxiomViolation(
            "diameter", (labels[bottom], labels[top]),
            f"d(0,1) = {Fraction(int(dnum[bottom, top]), scale)} != 1",
        )
    for z in range(B):
        bad = dnum > dnum[:, z][:, None] + dnum[z, :][None, :]
        if bad.any():
            x, y = np.argwhere(bad)[0]
            raise AxiomViolation(
                "triangle", (labels[int(x)], labels[int(y)], labels[z])
            )
    for z in range(B):
        jz = J[:, z]
        bad = dnum[jz[:, None], jz[None, :]] > dnum
        if bad.any():
            x, y = np.argwhere(bad)[0]
            raise AxiomViolation(
                "join-contractive", (labels[int(x)], labels[int(y)], labels[z])
            )


def _derive_meet(J, labels=None):
    """Meet table from the join-induced order.

    On a finite join table satisfying the semilattice axioms the greatest
    lower bound always exists (common lower bounds are closed under join),
    so MeetUndefined can only fire on tables that slipped past validation;
    the check stays as a loud guard.
    """
    B = J.shape[0]
    labels = labels or list(range(B))
    idx = np.arange(B)
    order = J == idx[None, :]  # order[i, j]: i <= j
    below = order.T.copy()     # below[j, i]: i <= j
    below_int = below.astype(np.int32)
    meet = np.empty((B, B), dtype=J.dtype)
    for x in range(B):
        common = below[x][None, :] & below          # (y, i): i <= x and i <= y
        sizes = common.sum(axis=1)                  # |common lower bounds|
        counts = common.astype(np.int32) @ below_int.T  # (y, z): |C_y n below(z)|
        counts = np.where(common, counts, -1)
        cand = np.argmax(counts, axis=1)
        # greatest iff its lower set swallows every common lower bound
        ok = counts[idx, cand] == sizes
        if not ok.all():
            y = int(np.flatnonzero(~ok)[0])
            raise MeetUndefined(labels[x], labels[y])
        meet[x, :] = cand
    return meet


def _validate_semimodular(J, M, dnum, labels):
    B = len(labels)
    r = dnum[:, 0]
    bound = r[J] - r[M]
    bad = dnum > bound
    if bad.any():
        raise AxiomViolation(
            "semi-modular", _violation_pair(bad, labels),
            "d(x,y) > |x+y| - |xy|",
        )


def build_lattice(elements, join, metric, partitions=None):
    """Validate and assemble a FiniteMetricLattice.

    ``elements`` are opaque labels, ``join`` a BxB table (or callable on
    index pairs) and ``metric`` a BxB matrix of rationals.  Raises
    AxiomViolation with the failing axiom and a witness tuple, or
    MeetUndefined.  Elements are re-sorted into the canonical linear
    extension: rank ascending, ties by label.
    """
    labels = [str(e) for e in elements]
    B = len(labels)
    if B == 0:
        raise AxiomViolation("empty", (), "no elements")
    if len(set(labels)) != B:
        raise AxiomViolation("labels", (), "duplicate element labels")
    if callable(join):
        J = np.array([[join(i, j) for j in range(B)] for i in range(B)], dtype=np.int32)
    else:
        J = np.array(join, dtype=np.int32)
        if J.shape != (B, B):
            raise AxiomViolation("join-shape", (), "join table must be BxB")
    bottom, top = _validate_join(J, labels)
    dnum, scale = _scale_metric(metric, labels)
    _validate_metric(J, dnum, scale, labels, bottom, top)
    M = _derive_meet(J, labels)
    _validate_semimodular(J, M, dnum, labels)

    # canonical linear extension: rank ascending, label as tiebreak
    rank = dnum[:, bottom]
    perm = sorted(range(B), key=lambda i: (int(rank[i]), labels[i]))
    inv = np.empty(B, dtype=np.int32)
    for new, old in enumerate(perm):
        inv[old] = new
    J2 = inv[J[np.ix_(perm, perm)]]
    M2 = inv[M[np.ix_(perm, perm)]]
    D2 = dnum[np.ix_(perm, perm)]
    labels2 = [labels[i] for i in perm]
    # sortedness really is a linear extension: x < y forces |x| < |y|
    order2 = J2 == np.arange(B)[None, :]
    xs, ys = np.nonzero(order2)
    if (xs > ys).any():
        k = int(np.flatnonzero(xs > ys)[0])
        raise AxiomViolation(
            "linear-extension", (labels2[int(xs[k])], labels2[int(ys[k])]),
            "rank sort is not a linear extension",
        )
    parts2 = None
    if partitions is not None:
        parts2 = tuple(partitions[i] for i in perm)
    return FiniteMetricLattice(labels2, J2, M2, D2, scale, parts2)


# -- model builders ----------------------------------------------------------


def partition_lattice(n):
    """P_n with d(x,y) = (#x + #y - 2#(x+y)) / (n-1), fully validated."""
    parts = sorted(
        pt.enumerate_partitions(n),
        key=lambda p: (n - p.block_count, pt.format_partition(p)),
    )
    index = {p: i for i, p in enumerate(parts)}
    B = len(parts)
    J = np.empty((B, B), dtype=np.int32)
    for i, x in enumerate(parts):
        J[i, i] = i
        for j in range(i + 1, B):
            J[i, j] = J[j, i] = index[pt.join(x, parts[j])]
    nm1 = n - 1
    counts = [p.block_count for p in parts]
    metric = [
        [Fraction(counts[i] + counts[j] - 2 * counts[J[i, j]], nm1) for j in range(B)]
        for i in range(B)
    ]
    labels = [pt.format_partition(p) for p in parts]
    return build_lattice(labels, J, metric, partitions=parts)


def boolean_measure_lattice(weights):
    """2^E with d(A, B) = mu(A delta B); uniform weights give Hamming/|E|."""
    weights = [_as_fraction(w) for w in weights]
    if not weights:
        raise EmptyGroundSet("boolean_measure_lattice needs at least one point")
    if any(w <= 0 for w in weights):
        raise EmptyGroundSet("weights must be positive")
    m = len(weights)
    total = sum(weights)
    masks = list(range(1 << m))

    def mu(mask):
        return sum((w for i, w in enumerate(weights) if mask >> i & 1), Fraction(0)) / total

    def label(mask):
        return "{" + ",".join(str(i + 1) for i in range(m) if mask >> i & 1) + "}"

    J = [[masks.index(a | b) for b in masks] for a in masks]
    metric = [[mu(a ^ b) for b in masks] for a in masks]
    return build_lattice([label(a) for a in masks], J, metric)


def chain_lattice(k):
    """A (k+1)-element chain 0 < c1 < ... < 1 with the rank metric."""
    if k < 1:
        raise AxiomViolation("chain", (), "need at least two elements")
    B = k + 1
    J = [[max(i, j) for j in range(B)] for i in range(B)]
    metric = [[Fraction(abs(i - j), k) for j in range(B)] for i in range(B)]
    labels = [f"c{i}" for i in range(B)]
    return build_lattice(labels, J, metric)


def is_noncrossing(p):
    """No positions i < j < k < l with i, k co-blocked and j, l co-blocked apart."""
    rgs = p.rgs
    n = p.n
    for i in range(n):
        for j in range(i + 1, n):
            if rgs[j] == rgs[i]:
                continue
            for k in range(j + 1, n):
                if rgs[k] != rgs[i]:
                    continue
                if any(rgs[l] == rgs[j] for l in range(k + 1, n)):
                    return False
    return True


def _nc_closure(p):
    """Smallest noncrossing partition above p: merge crossing blocks until none."""
    blocks = [set(b) for b in p.blocks]
    changed = True
    while changed:
        changed = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                a, b = blocks[i], blocks[j]
                if _blocks_cross(a, b):
                    blocks[i] = a | b
                    del blocks[j]
                    changed = True
                    break
            if changed:
                break
    return pt.from_blocks(blocks, p.n)


def _blocks_cross(a, b):
    # crossing: some pair of a has an element of b strictly inside its span
    # and another element of b strictly outside it (either side)
    sa, sb = sorted(a), sorted(b)
    for i in range(len(sa)):
        for j in range(i + 1, len(sa)):
            a1, a2 = sa[i], sa[j]
            if any(a1 < e < a2 for e in sb) and any(e < a1 or e > a2 for e in sb):
                return True
    return False


class RawLattice:
    """Unvalidated tables for a lattice candidate (used for NC_n)."""

    def __init__(self, elements, join, metric, meet=None):
        self.elements = elements
        self.join = join
        self.metric = metric
        self.meet = meet


def noncrossing_lattice(n):
    """NC_n raw tables: P_n meet, noncrossing-closure join, inherited rank.

    The candidate metric is d'(x,y) = 2|x+y| - |x| - |y| with the NC join;
    build_lattice on the result is expected to fail a metric axiom for
    n >= 4 because the inherited rank is not submodular there.
    """
    parts = sorted(
        (p for p in pt.enumerate_partitions(n) if is_noncrossing(p)),
        key=lambda p: (n - p.block_count, pt.format_partition(p)),
    )
    index = {p: i for i, p in enumerate(parts)}
    B = len(parts)
    J = [[0] * B for _ in range(B)]
    M = [[0] * B for _ in range(B)]
    for i, x in enumerate(parts):
        for j, y in enumerate(parts):
            J[i][j] = index[_nc_closure(pt.join(x, y))]
            M[i][j] = index[pt.meet(x, y)]
    if n == 1:
        metric = [[Fraction(0)]]
    else:
        rank = [Fraction(n - p.block_count, n - 1) for p in parts]
        metric = [
            [2 * rank[J[i][j]] - rank[i] - rank[j] for j in range(B)] for i in range(B)
        ]
    labels = [pt.format_partition(p) for p in parts]
    return RawLattice(labels, J, metric, M)


# -- metric-lattice calculus -------------------------------------------------


def t_ml_sentence_values(L):
    """Exact values of the seven axiom sentences; a model returns seven zeros."""
    nums = tml_values_scaled(L.join_table, L.dnum, L.scale)
    return [Fraction(v, L.scale) for v in nums]


def tml_values_scaled(J, D, scale):
    """Scaled-integer evaluation of the seven axiom sentences.

    Returns integer numerators relative to ``scale``.  Shared by the
    lattice API and the verification sweeps over partition tables.
    """
    B = J.shape[0]
    idx = np.arange(B)
    D = D.astype(np.int64, copy=False)
    vals = [abs(int(D[0, B - 1]) - scale)]
    vals.append(int((D[J[:, 0], idx] + D[J[:, B - 1], B - 1]).max()))
    vals.append(int(D[J[idx, idx], idx].max()))
    vals.append(int(D[J, J.T].max()))
    m5 = 0
    m6 = 0
    m7 = 0
    d_join_self = D[J, idx[:, None]]  # [a, b] = d(a+b, a)
    d_join_zero = D[J, 0]             # [a, b] = d(a+b, 0)
    dz0 = D[:, 0]
    for x in range(B):
        left = J[J[x, :], :]
        right = J[x, J]
        m5 = max(m5, int(D[left, right].max()))
        jx = J[x, :]
        m6 = max(m6, int((D[jx[None, :], J] - D[x, :][:, None]).max()))
        lhs = D[x, :][:, None] + dz0[None, :]
        rhs = d_join_zero[x, :][:, None] + d_join_self[x, :][None, :] + d_join_self
        m7 = max(m7, int((lhs - rhs).max()))
    vals.append(m5)
    vals.append(max(m6, 0))
    vals.append(max(m7, 0))
    return vals


def semilattice_axiom_defect(L):
    """Worst violation of d(x,y) <= d(x+y,0) + d(x+z,x) + d(y+z,y) - d(z,0).

    Zero on every metric lattice (the three-variable strengthening of the
    semi-modular bound); exposed so kernel-derived metrics can be checked
    against the semilattice axioms directly.
    """
    J = L.join_table
    D = L.dnum.astype(np.int64)
    dz0 = D[:, 0]
    d_join_self = D[J, np.arange(L.n_elements)[:, None]]
    worst = 0
    for x in range(L.n_elements):
        rhs = (dz0[J[x, :]][:, None] + d_join_self[x, :][None, :]
               + d_join_self - dz0[None, :])
        worst = max(worst, int((D[x, :][:, None] - rhs).max()))
    return Fraction(max(worst, 0), L.scale)


def dprime(L, x, y):
    """d'(x,y) = 2|x+y| - |x| - |y|; satisfies d <= d' <= 2d."""
    r = L.rank_num
    return Fraction(int(2 * r[L.join(x, y)] - r[x] - r[y]), L.scale)


def triple_bracket(L, x, y, z):
    """[x,y,z] = |x+y| + |x+z| + |y+z| - |x| - |y| - |z|."""
    r = L.rank_num
    num = (
        int(r[L.join(x, y)]) + int(r[L.join(x, z)]) + int(r[L.join(y, z)])
        - int(r[x]) - int(r[y]) - int(r[z])
    )
    return Fraction(num, L.scale)


def delta_quasimetric(L, x, y):
    """delta(x,y) = |x| + |y| - 2|xy|; a metric iff L is metrically modular."""
    r = L.rank_num
    return Fraction(int(r[x]) + int(r[y]) - 2 * int(r[L.meet(x, y)]), L.scale)


def phi_defect(L, x, y):
    """Modularity defect: exact minimum over all z of
    max{(|x|+|y|) tsub (|x+y|+|z|), d(x+z,x), d(y+z,y)}.

    Returns (value, witness_z).  Zero exactly on metrically modular pairs;
    the sweep covers every element because the optimum need not sit at xy.
    """
    r = L.rank_num.astype(np.int64)
    D = L.dnum
    J = L.join_table
    t1 = np.maximum(int(r[x]) + int(r[y]) - int(r[L.join(x, y)]) - r, 0)
    t2 = D[J[x, :], x]
    t3 = D[J[y, :], y]
    m = np.maximum(np.maximum(t1, t2), t3)
    z = int(np.argmin(m))
    return Fraction(int(m[z]), L.scale), z


def modular_elements(L):
    """mu(L): elements x with |x+y| + |xy| = |x| + |y| for every y."""
    r = L.rank_num.astype(np.int64)
    defect = r[:, None] + r[None, :] - r[L.join_table] - r[L.meet_table]
    return [int(i) for i in np.flatnonzero((defect == 0).all(axis=1))]


def is_metrically_modular_pair(L, x, y):
    r = L.rank_num
    return int(r[L.join(x, y)]) + int(r[L.meet(x, y)]) == int(r[x]) + int(r[y])


def complements(L, x):
    """{y : x + y = 1 and xy = 0}."""
    top, bottom = L.top, L.bottom
    return [
        y
        for y in range(L.n_elements)
        if L.join(x, y) == top and L.meet(x, y) == bottom
    ]


def is_weak_complement(L, x, y):
    """d'(x, y) = 1; implies complementarity, converse needs modular y."""
    return dprime(L, x, y) == 1


def check_exchange_relation(join_table, values):
    """Does f(x+y) + f(z) <= f(x) + f(y+z) hold whenever z <= x?

    ``join_table`` may be a FiniteMetricLattice or a square array; the
    order is derived from the join.  On a lattice this is equivalent to f
    being submodular.  Returns (True, None) or (False, (x, y, z)).
    """
    if hasattr(join_table, "join_table"):
        J = join_table.join_table
    else:
        J = np.asarray(join_table)
    B = J.shape[0]
    fr = [_as_fraction(v) for v in values]
    if len(fr) != B:
        raise AxiomViolation("kernel-shape", (), "values must cover all elements")
    scale = 1
    for v in fr:
        scale = lcm(scale, v.denominator)
    F = np.array([int(v * scale) for v in fr], dtype=np.int64)
    order = J == np.arange(B)[None, :]
    for x in range(B):
        zs = np.flatnonzero(order[:, x])
        lhs = F[J[x, :]][:, None] + F[zs][None, :]
        rhs = F[x] + F[J[:, zs]]
        bad = lhs > rhs
        if bad.any():
            y, k = np.argwhere(bad)[0]
            return False, (x, int(y), int(zs[k]))
    return True, None


# -- serialization -----------------------------------------------------------


def lattice_to_json(L):
    """The external JSON schema: labels, join table, "p/q" metric strings."""
    B = L.n_elements
    return {
        "elements": list(L.elements),
        "join": [[int(L.join_table[i, j]) for j in range(B)] for i in range(B)],
        "d": [[format_rational(L.metric(i, j)) for j in range(B)] for i in range(B)],
    }


def lattice_from_json(doc):
    """Rebuild (and revalidate) a lattice from the JSON schema."""
    return build_lattice(doc["elements"], doc["join"], doc["d"])


def normalize_diameter(join, metric):
    """Rescale a metric so that d(0,1) = 1; returns (metric', factor).

    The factor is the original d(0,1); rescaling is never done silently by
    build_lattice, callers must opt in.
    """
    B = len(metric)
    if callable(join):
        J = np.array([[join(i, j) for j in range(B)] for i in range(B)], dtype=np.int32)
    else:
        J = np.array(join, dtype=np.int32)
    labels = [str(i) for i in range(B)]
    bottom, top = _validate_join(J, labels)
    rows = [[_as_fraction(v) for v in row] for row in metric]
    factor = rows[bottom][top]
    if factor == 0:
        raise AxiomViolation("diameter", (bottom, top), "d(0,1) = 0 cannot be normalized")
    return [[v / factor for v in row] for row in rows], factor
