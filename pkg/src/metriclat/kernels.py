"""Zeta/Moebius calculus, kernel classification, matroid ranks and flats.

Everything structural is exact rational arithmetic; floating point enters
only in the eigenvalue cross-checks, which are always paired with an exact
method and a tolerance.
"""

from fractions import Fraction

import numpy as np

from .errors import MethodDisagreement, NotARank, NotCND, RankZero
from .lattice import build_lattice, _as_fraction
from .rationals import format_rational


class KernelFunction:
    """An exact rational function on the elements of a host lattice."""

    def __init__(self, lattice, values):
        values = tuple(_as_fraction(v) for v in values)
        if len(values) != lattice.n_elements:
            raise ValueError("kernel must assign a value to every element")
        self.lattice = lattice
        self.values = values

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def to_json(self):
        return {"values": [format_rational(v) for v in self.values]}

    @classmethod
    def from_json(cls, lattice, doc):
        return cls(lattice, doc["values"])


def rank_kernel(L):
    """The norm |x| = d(x, 0) as a KernelFunction."""
    return KernelFunction(L, [L.norm(i) for i in range(L.n_elements)])


def zeta_matrix(L):
    """zeta[i][j] = 1 iff x_i <= x_j; upper triangular with unit diagonal."""
    return L.order.astype(np.int64)


def mobius_invert(f):
    """The unique f_mu with f(x) = sum over y >= x of f_mu(y)."""
    L = f.lattice
    B = L.n_elements
    order = L.order
    out = [Fraction(0)] * B
    for i in range(B - 1, -1, -1):
        acc = f.values[i]
        for j in range(i + 1, B):
            if order[i, j]:
                acc -= out[j]
        out[i] = acc
    return KernelFunction(L, out)


def zeta_transform(fmu):
    """Inverse of mobius_invert: f(x) = sum over y >= x of fmu(y)."""
    L = fmu.lattice
    B = L.n_elements
    order = L.order
    out = []
    for i in range(B):
        out.append(sum((fmu.values[j] for j in range(B) if order[i, j]), Fraction(0)))
    return KernelFunction(L, out)


def join_kernel_matrix(f):
    """The matrix [f(x_i + x_j)] as exact Fractions."""
    L = f.lattice
    B = L.n_elements
    J = L.join_table
    return [[f.values[int(J[i, j])] for j in range(B)] for i in range(B)]


def wilf_identity_holds(f):
    """Check [f(x_i+x_j)] = zeta D_{f_mu} zeta^T exactly."""
    L = f.lattice
    B = L.n_elements
    z = zeta_matrix(L)
    fmu = mobius_invert(f).values
    lhs = join_kernel_matrix(f)
    for i in range(B):
        zi = z[i]
        for j in range(B):
            zj = z[j]
            acc = Fraction(0)
            for k in range(B):
                if zi[k] and zj[k]:
                    acc += fmu[k]
            if acc != lhs[i][j]:
                return False
    return True


def _eig_classify(matrix, tol):
    arr = np.array([[float(v) for v in row] for row in matrix])
    eigs = np.linalg.eigvalsh(arr)
    lo = float(eigs.min())
    if lo > tol:
        return "PD"
    if lo >= -tol:
        return "PSD"
    return "neither"


def psd_classify(f, tol=1e-9):
    """Classify [f(x_i+x_j)] by two independent methods and insist they agree.

    Method A (exact): by the zeta factorization the matrix is congruent to
    diag(f_mu), so PSD iff f_mu >= 0 and PD iff f_mu > 0.  Method B:
    eigenvalues of the float matrix with the given tolerance.
    """
    fmu = mobius_invert(f).values
    if all(v > 0 for v in fmu):
        exact = "PD"
    elif all(v >= 0 for v in fmu):
        exact = "PSD"
    else:
        exact = "neither"
    approx = _eig_classify(join_kernel_matrix(f), tol)
    if exact != approx:
        raise MethodDisagreement(
            f"Moebius method says {exact}, eigenvalue method says {approx}"
        )
    return exact


def indicator_below(L, x):
    """rho_x(y) = 1 if y <= x else 0; positive semidefinite."""
    return KernelFunction(L, [1 if L.leq(y, x) else 0 for y in range(L.n_elements)])


def measure_kernel(L, weights):
    """rho(x) = m(C_x) for the measure putting weights on elements."""
    weights = [_as_fraction(w) for w in weights]
    B = L.n_elements
    vals = []
    for x in range(B):
        vals.append(sum((weights[y] for y in range(B) if L.leq(x, y)), Fraction(0)))
    return KernelFunction(L, vals)


def _is_psd_exact(G):
    """Exact PSD test for a symmetric rational matrix (pivoted elimination)."""
    n = len(G)
    A = [[Fraction(G[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        p = A[i][i]
        if p < 0:
            return False
        if p == 0:
            if any(A[i][j] != 0 for j in range(i + 1, n)):
                return False
            continue
        for j in range(i + 1, n):
            c = A[j][i] / p
            if c == 0:
                continue
            Ai = A[i]
            Aj = A[j]
            for k in range(i, n):
                Aj[k] -= c * Ai[k]
    return True


def cnd_test(eta):
    """Conditionally negative definite: sum c_i c_j eta(x_i + x_j) <= 0 on
    the sum-zero subspace, tested exactly via the basis e_i - e_B."""
    H = join_kernel_matrix(eta)
    B = len(H)
    if B == 1:
        return True
    last = B - 1
    G = [
        [
            -(H[i][j] - H[i][last] - H[last][j] + H[last][last])
            for j in range(B - 1)
        ]
        for i in range(B - 1)
    ]
    return _is_psd_exact(G)


def schoenberg_check(eta, ts=(Fraction(1, 4), Fraction(1, 2), 1, 2, 4), tol=1e-9):
    """Sampled-t heuristic: exp(-t eta) PSD for the sampled t.

    Never authoritative; the full statement quantifies over all t >= 0.
    """
    L = eta.lattice
    B = L.n_elements
    J = L.join_table
    for t in ts:
        arr = np.empty((B, B))
        for i in range(B):
            for j in range(B):
                arr[i, j] = np.exp(-float(t) * float(eta.values[int(J[i, j])]))
        if float(np.linalg.eigvalsh(arr).min()) < -tol:
            return False
    return True


def exp_kernel_is_pd(eta, tol=1e-9):
    """Float check that exp(-eta) is positive definite."""
    L = eta.lattice
    B = L.n_elements
    J = L.join_table
    arr = np.empty((B, B))
    for i in range(B):
        for j in range(B):
            arr[i, j] = np.exp(-float(eta.values[int(J[i, j])]))
    return float(np.linalg.eigvalsh(arr).min()) > tol


def cnd_metric_matrix(eta):
    """d_eta(x, y) = 2 eta(x+y) - eta(x) - eta(y), exact."""
    L = eta.lattice
    B = L.n_elements
    J = L.join_table
    v = eta.values
    return [[2 * v[int(J[i, j])] - v[i] - v[j] for j in range(B)] for i in range(B)]


def metric_from_cnd(eta):
    """Build the metric semilattice carried by a CND kernel.

    Normalizes d_eta to unit diameter, quotients the d = 0 classes and
    validates the result as a metric lattice.  Returns (lattice, factor,
    collapsed) where factor is the normalization divisor eta(1) - eta(0)
    and collapsed says whether the quotient identified distinct elements
    (no collapse happens exactly when exp(-eta) is positive definite).
    """
    if not cnd_test(eta):
        raise NotCND("kernel is not conditionally negative definite")
    L = eta.lattice
    B = L.n_elements
    d = cnd_metric_matrix(eta)
    factor = d[L.bottom][L.top]
    if factor <= 0:
        raise NotCND("d_eta(0, 1) = 0: diameter collapses, nothing to normalize")
    d = [[v / factor for v in row] for row in d]
    # union-find over the d = 0 classes (triangle inequality makes this transitive)
    parent = list(range(B))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(B):
        for j in range(i + 1, B):
            if d[i][j] == 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    reps = sorted({find(i) for i in range(B)})
    collapsed = len(reps) != B
    rep_index = {r: k for k, r in enumerate(reps)}

    def cls(i):
        return rep_index[find(i)]

    Bq = len(reps)
    Jq = [[0] * Bq for _ in range(Bq)]
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            Jq[a][b] = cls(int(L.join_table[ra, rb]))
    dq = [[d[ra][rb] for rb in reps] for ra in reps]
    labels = [L.elements[r] for r in reps]
    return build_lattice(labels, Jq, dq), factor, collapsed


# -- matroid ranks -----------------------------------------------------------


class MatroidRank:
    """An integer set function on 2^E, stored by bitmask over m points."""

    def __init__(self, ground, values):
        self.ground = ground
        if isinstance(values, dict):
            vals = [None] * (1 << ground)
            for k, v in values.items():
                vals[int(k)] = int(v)
            if any(v is None for v in vals):
                raise NotARank("totality", "missing subsets")
            self.values = vals
        else:
            self.values = [int(v) for v in values]
            if len(self.values) != 1 << ground:
                raise NotARank("totality", "wrong number of subsets")

    def __call__(self, mask):
        return self.values[mask]

    def to_json(self):
        return {
            "ground": self.ground,
            "rank": {str(m): v for m, v in enumerate(self.values)},
        }

    @classmethod
    def from_json(cls, doc):
        return cls(doc["ground"], {int(k): v for k, v in doc["rank"].items()})


def validate_matroid(r):
    """Check the three rank axioms; returns (ok, (axiom, witness) or None)."""
    m = r.ground
    full = 1 << m
    for A in range(full):
        if r(A) < 0 or r(A) > bin(A).count("1"):
            return False, ("cardinality", A)
    for A in range(full):
        for e in range(m):
            if not A >> e & 1:
                if r(A) > r(A | 1 << e):
                    return False, ("monotone", (A, A | 1 << e))
    for A in range(full):
        for Bm in range(full):
            if r(A | Bm) + r(A & Bm) > r(A) + r(Bm):
                return False, ("submodular", (A, Bm))
    return True, None


def matroid_distance(r, A, B):
    """D_r(A, B) = 2 r(A u B) - r(A) - r(B), an integer pseudo-metric."""
    return 2 * r(A | B) - r(A) - r(B)


def rank_pseudometric(r, A, B):
    """d_r = D_r / r(E)."""
    top = r((1 << r.ground) - 1)
    if top == 0:
        raise RankZero("r(E) = 0 cannot normalize")
    return Fraction(matroid_distance(r, A, B), top)


def _closure(r, A):
    m = r.ground
    out = A
    for e in range(m):
        if not out >> e & 1 and r(out | 1 << e) == r(out):
            out |= 1 << e
    return out


def _mask_label(mask, m):
    return "{" + ",".join(str(i + 1) for i in range(m) if mask >> i & 1) + "}"


def flats_lattice(r):
    """The metric quotient of (2^E, d_r): the lattice of flats L_r(E)."""
    ok, info = validate_matroid(r)
    if not ok:
        raise NotARank(*info)
    m = r.ground
    top = r((1 << m) - 1)
    if top == 0:
        raise RankZero("r(E) = 0 has no flats lattice")
    flats = sorted({_closure(r, A) for A in range(1 << m)})
    index = {f: i for i, f in enumerate(flats)}
    B = len(flats)
    J = [[index[_closure(r, flats[i] | flats[j])] for j in range(B)] for i in range(B)]
    metric = [
        [rank_pseudometric(r, flats[i], flats[j]) for j in range(B)] for i in range(B)
    ]
    labels = [_mask_label(f, m) for f in flats]
    return build_lattice(labels, J, metric)


def k_sparse(r, k):
    """#E <= k * r(E)."""
    return r.ground <= k * r((1 << r.ground) - 1)


def graphic_rank(n_vertices, edges):
    """Rank of the graphic matroid: r(A) = |V| - #components of (V, A)."""
    edges = [tuple(e) for e in edges]
    m = len(edges)
    values = []
    for A in range(1 << m):
        parent = list(range(n_vertices))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        comps = n_vertices
        for idx, (u, v) in enumerate(edges):
            if A >> idx & 1:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
                    comps -= 1
        values.append(n_vertices - comps)
    return MatroidRank(m, values)


# -- total P-non-negativity and FKG ------------------------------------------


def exact_determinant(rows):
    """Fraction-exact determinant by Gaussian elimination with pivoting."""
    n = len(rows)
    A = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for i in range(n):
        pivot = next((j for j in range(i, n) if A[j][i] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != i:
            A[i], A[pivot] = A[pivot], A[i]
            det = -det
        det *= A[i][i]
        inv = 1 / A[i][i]
        for j in range(i + 1, n):
            c = A[j][i] * inv
            if c:
                for k in range(i, n):
                    A[j][k] -= c * A[i][k]
    return det


def enumerate_chains(L, max_len):
    """All chains (totally ordered index tuples) of size 1..max_len."""
    B = L.n_elements
    order = L.order
    chains = []

    def extend(chain):
        chains.append(tuple(chain))
        if len(chain) == max_len:
            return
        last = chain[-1]
        for j in range(last + 1, B):
            if order[last, j]:
                chain.append(j)
                extend(chain)
                chain.pop()

    for i in range(B):
        extend([i])
    return chains


def totally_p_nonnegative(f, max_chain=4):
    """det of [f(x_i+x_j)] over equal-size chain pairs, all >= 0.

    Returns (True, None) or (False, (rows, cols, det)).  Chain length is
    capped because the minor count grows steeply; the structural
    consequences only need small minors.
    """
    L = f.lattice
    M = join_kernel_matrix(f)
    by_size = {}
    for c in enumerate_chains(L, max_chain):
        by_size.setdefault(len(c), []).append(c)
    for size, chains in sorted(by_size.items()):
        for S in chains:
            for T in chains:
                det = exact_determinant([[M[i][j] for j in T] for i in S])
                if det < 0:
                    return False, (S, T, det)
    return True, None


def fkg_check(f):
    """f(x+y) f(z) >= f(x) f(y) for all z <= x, y."""
    L = f.lattice
    B = L.n_elements
    order = L.order
    J = L.join_table
    v = f.values
    for x in range(B):
        for y in range(B):
            fxy = v[int(J[x, y])]
            fx_fy = v[x] * v[y]
            for z in range(B):
                if order[z, x] and order[z, y] and fxy * v[z] < fx_fy:
                    return False, (x, y, z)
    return True, None


def indicator_complement_upset(L, x):
    """Characteristic function of P minus C_x; totally P-non-negative."""
    return KernelFunction(L, [0 if L.leq(x, y) else 1 for y in range(L.n_elements)])


# -- seeded random generators (reports record the seed) ----------------------


def random_integer_kernel(L, rng, lo=-9, hi=9):
    return KernelFunction(L, [rng.randint(lo, hi) for _ in range(L.n_elements)])


def random_psd_matrix(m, rng, spread=3):
    """Exact rational PSD matrix with spectrum in (0, 1].

    K = (A^T A + I)/c with integer A and c the Gershgorin row-sum bound,
    so K is rational, positive definite and has eigenvalues in (0, 1].
    """
    A = [[rng.randint(-spread, spread) for _ in range(m)] for _ in range(m)]
    G = [[sum(A[k][i] * A[k][j] for k in range(m)) + (i == j) for j in range(m)]
         for i in range(m)]
    c = max(sum(abs(v) for v in row) for row in G)
    return [[Fraction(G[i][j], c) for j in range(m)] for i in range(m)]


def principal_minor_function(K):
    """S -> det(K_S) over bitmasks, with det(K_empty) = 1."""
    m = len(K)
    out = []
    for S in range(1 << m):
        idx = [i for i in range(m) if S >> i & 1]
        out.append(exact_determinant([[K[i][j] for j in idx] for i in idx]))
    return out


def kotelyanskii_report(K):
    """Exact check of det(K_{SuT}) det(K_{SnT}) <= det(K_S) det(K_T).

    Returns (holds_everywhere, strict_witness) where the witness is a pair
    (S, T) of incomparable masks with a strict inequality; such a witness
    is exactly a failure of total P-non-negativity for S -> det(K_S) seen
    through the 2x2 chain minor with rows {SnT, S} and columns {SnT, T}.
    """
    f = principal_minor_function(K)
    strict = None
    for S in range(len(f)):
        for T in range(len(f)):
            lhs = f[S | T] * f[S & T]
            rhs = f[S] * f[T]
            if lhs > rhs:
                return False, None
            if strict is None and lhs < rhs and S & T != S and S & T != T:
                strict = (S, T)
    return True, strict
