"""Named verification checks with exact assertions and report emission.

Each check C1..C24 binds one quantitative statement to an exhaustive (or,
for large n, explicitly sampled) sweep.  All partition arithmetic runs on
integer tables scaled by n-1, so every reported violation is an exact
rational; pass means max_violation <= 0 exactly.  C25 is an exploratory
search and only ever reports information.
"""

import csv
import io
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import get_context

import numpy as np

from . import kernels as kn
from . import lattice as lt
from . import logic as lg
from . import partitions as pt
from .errors import AxiomViolation, BudgetExceeded, MethodDisagreement, UnknownCheck
from .rationals import format_rational

DEFAULT_MAX_INSTANCES = 3_000_000_000


# -- partition tables ---------------------------------------------------------


class PnTables:
    """Join/meet/rank tables for P_n in the canonical element order."""

    def __init__(self, n):
        self.n = n
        parts = sorted(
            pt.enumerate_partitions(n),
            key=lambda p: (n - p.block_count, pt.format_partition(p)),
        )
        self.parts = parts
        self.index = {p: i for i, p in enumerate(parts)}
        B = len(parts)
        self.B = B
        self.counts = np.array([p.block_count for p in parts], dtype=np.int64)
        self.R = n - self.counts  # |x| * (n-1)
        stats = [pt.block_statistics(p) for p in parts]
        self.singles = np.array([s[1] for s in stats], dtype=np.int64)
        self.heavy = np.array([s[2] for s in stats], dtype=np.int64)
        self.block_masks = [
            [self._mask(b) for b in p.blocks] for p in parts
        ]
        J = np.empty((B, B), dtype=np.int32)
        M = np.empty((B, B), dtype=np.int32)
        for i in range(B):
            J[i, i] = M[i, i] = i
            xi = parts[i]
            for j in range(i + 1, B):
                J[i, j] = J[j, i] = self.index[pt.join(xi, parts[j])]
                M[i, j] = M[j, i] = self.index[pt.meet(xi, parts[j])]
        self.J = J
        self.M = M
        self._D = None
        self.singular_idx = [
            i for i, p in enumerate(parts) if pt.is_singular(p)
        ]

    @staticmethod
    def _mask(block):
        m = 0
        for e in block:
            m |= 1 << (e - 1)
        return m

    def dnum(self):
        if self._D is None:
            self._D = 2 * self.R[self.J] - self.R[:, None] - self.R[None, :]
        return self._D

    def label(self, i):
        return pt.format_partition(self.parts[i])


_PN_CACHE = {}
_LATTICE_CACHE = {}


def pn_tables(n):
    if n not in _PN_CACHE:
        _PN_CACHE[n] = PnTables(n)
    return _PN_CACHE[n]


def pn_lattice_cached(n):
    if n not in _LATTICE_CACHE:
        _LATTICE_CACHE[n] = lt.partition_lattice(n)
    return _LATTICE_CACHE[n]


def singular_mask_arrays(n):
    """(masks, sizes) for Sigma_n: the zero partition (mask {1}) plus every
    subset of size >= 2 as a basic block; #y = n - size + 1 uniformly."""
    masks = [1]
    sizes = [1]
    for m in range(1 << n):
        c = bin(m).count("1")
        if c >= 2:
            masks.append(m)
            sizes.append(c)
    return np.array(masks, dtype=np.int64), np.array(sizes, dtype=np.int64)


# -- reports ------------------------------------------------------------------


@dataclass
class CheckReport:
    check_id: str
    params: dict
    instances: int
    max_violation: Fraction
    witness: str
    status: str
    seed: int
    elapsed_ms: int
    tolerance: Fraction = Fraction(0)

    def row(self, include_elapsed=True):
        out = [
            self.check_id,
            str(self.params.get("n", "")),
            str(self.instances),
            format_rational(self.max_violation),
            self.witness,
            self.status,
            str(self.seed),
        ]
        if include_elapsed:
            out.append(str(self.elapsed_ms))
        return out

    def to_dict(self, include_elapsed=True):
        out = {
            "check_id": self.check_id,
            "params": {k: str(v) for k, v in self.params.items()},
            "instances": self.instances,
            "max_violation": format_rational(self.max_violation),
            "witness": self.witness,
            "status": self.status,
            "seed": self.seed,
        }
        if include_elapsed:
            out["elapsed_ms"] = self.elapsed_ms
        return out


CSV_COLUMNS = ["check_id", "n", "instances", "max_violation", "witness", "status",
               "seed", "elapsed_ms"]


def reports_to_csv(reports, include_elapsed=True):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = CSV_COLUMNS if include_elapsed else CSV_COLUMNS[:-1]
    w.writerow(cols)
    for r in reports:
        w.writerow(r.row(include_elapsed))
    return buf.getvalue()


def reports_to_json(reports, include_elapsed=True):
    return json.dumps([r.to_dict(include_elapsed) for r in reports], indent=2) + "\n"


# -- shared sweep machinery ---------------------------------------------------


_SHARED = {}


def _preduce(worker, nitems, jobs):
    """Deterministic max-reduce of worker((lo, hi)) over chunks of range(nitems).

    Workers return (value, key...) tuples; ties break toward the smallest
    key, so the result is independent of chunking and worker count.
    """
    pieces = 1 if jobs <= 1 else min(nitems, jobs * 4) or 1
    step = -(-nitems // pieces)
    chunks = [(lo, min(lo + step, nitems)) for lo in range(0, nitems, step)]
    if jobs <= 1:
        results = [worker(c) for c in chunks]
    else:
        with get_context("fork").Pool(jobs) as pool:
            results = pool.map(worker, chunks)
    best = None
    for r in results:
        if r is None:
            continue
        if best is None or r[0] > best[0] or (r[0] == best[0] and r[1:] < best[1:]):
            best = r
    return best


def _phi_row(T, x, G=None):
    """phi(x, y) * (n-1) for every y, via the full z sweep."""
    R, J = T.R, T.J
    if G is None:
        G = R[J] - R[:, None]
    a_y = R[x] + R - R[J[x]]
    t1 = np.maximum(a_y[:, None] - R[None, :], 0)
    t2 = (R[J[x]] - R[x])[None, :]
    m = np.maximum(np.maximum(t1, t2), G)
    return m.min(axis=1)


def _w_phi_max(chunk):
    """Worker: max over x in chunk of d(x, Sigma_n) - 48 sup_y phi(x, y)."""
    lo, hi = chunk
    T = _SHARED["T"]
    G = _SHARED["G"]
    ds = _SHARED["ds"]
    best = None
    for x in range(lo, hi):
        phimax = int(_phi_row(T, x, G).max())
        v = int(ds[x]) - 48 * phimax
        if best is None or v > best[0] or (v == best[0] and x < best[1]):
            best = (v, x)
    return best


def _w_tml_heavy(chunk):
    """Worker: partial maxima of axiom sentences 5, 6, 7 over x in chunk."""
    lo, hi = chunk
    J = _SHARED["J"]
    D = _SHARED["D"]
    d_join_self = _SHARED["djs"]
    d_join_zero = _SHARED["djz"]
    B = J.shape[0]
    Dflat = D.reshape(-1)
    J64 = J.astype(np.int64)
    dz0 = D[:, 0]
    best = None
    for x in range(lo, hi):
        left = J64[J[x, :], :]
        right = J64[x, J]
        if np.array_equal(left, right):
            m5 = 0
        else:
            m5 = int(np.take(Dflat, left * B + right).max())
        jxz = J64[x, :] * B  # row offsets indexed by z
        m6 = int((np.take(Dflat, jxz[None, :] + J64) - D[x, :][:, None]).max())
        lhs = D[x, :][:, None] + dz0[None, :]
        rhs = d_join_zero[x, :][:, None] + d_join_self[x, :][None, :] + d_join_self
        m7 = int((lhs - rhs).max())
        v = max(m5, m6, m7)
        if best is None or v > best[0] or (v == best[0] and x < best[1]):
            best = (v, x)
    return best


# -- parameter helpers --------------------------------------------------------


def _parse_range(value, default):
    if value is None:
        lo, hi = default
    elif isinstance(value, str):
        if ".." in value:
            a, b = value.split("..")
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(value)
    elif isinstance(value, (tuple, list)):
        lo, hi = int(value[0]), int(value[-1])
    else:
        lo = hi = int(value)
    return list(range(lo, hi + 1)), (f"{lo}..{hi}" if hi > lo else str(lo))


def _frac(num, den):
    return Fraction(int(num), int(den))


class _Tracker:
    """Keeps the extremal violation and its witness deterministically."""

    def __init__(self):
        self.value = Fraction(0)
        self.witness = ""
        self._seen = False

    def feed(self, value, witness):
        if not self._seen or value > self.value:
            self.value = value
            self.witness = witness
            self._seen = True

    def result(self, default_witness=""):
        return self.value, (self.witness if self._seen else default_witness)


# -- the checks ---------------------------------------------------------------


def _check_c1(params, rng, jobs):
    """T_ML axiom sentences are exactly zero on P_n and Boolean lattices."""
    ns, ns_str = _parse_range(params.get("n"), (2, 5))
    ms, ms_str = _parse_range(params.get("bool_m"), (1, 4))
    track = _Tracker()
    instances = 0
    for n in ns:
        T = pn_tables(n)
        J, D = T.J, T.dnum()
        B = T.B
        scale = n - 1
        idx = np.arange(B)
        quick = [
            abs(int(D[0, B - 1]) - scale),
            int((D[J[:, 0], idx] + D[J[:, B - 1], B - 1]).max()),
            int(D[J[idx, idx], idx].max()),
            int(D[J, J.T].max()),
        ]
        for k, v in enumerate(quick):
            track.feed(_frac(v, scale), f"P_{n} axiom {k + 1}")
        _SHARED["J"], _SHARED["D"] = J, D
        _SHARED["djs"] = D[J, idx[:, None]]
        _SHARED["djz"] = D[J, 0]
        v, x = _preduce(_w_tml_heavy, B, jobs)
        track.feed(_frac(v, scale), f"P_{n} axioms 5-7 at x={T.label(x)}")
        instances += 1 + 2 * B + B * B + 3 * B**3
    for m in ms:
        L = lt.boolean_measure_lattice([1] * m)
        vals = lt.t_ml_sentence_values(L)
        for k, v in enumerate(vals):
            track.feed(v, f"2^{m} axiom {k + 1}")
        B = L.n_elements
        instances += 1 + 2 * B + B * B + 3 * B**3
    violation, witness = track.result("all sentences zero")
    return instances, violation, witness, {"n": ns_str, "bool_m": ms_str}


def _check_c2(params, rng, jobs):
    """#(x+y) = #x - i(x,B_y) + 1 and #(xy) = #y + i(x,B_y) - 1 for singular y."""
    ns, ns_str = _parse_range(params.get("n"), (2, 5))
    track = _Tracker()
    instances = 0
    for n in ns:
        for x in pt.enumerate_partitions(n):
            for y in pt.enumerate_singular(n):
                i_xy = pt.incidence(x, pt.basic_block(y))
                jc = pt.join(x, y).block_count
                mc = pt.meet(x, y).block_count
                bad = abs(jc - (x.block_count - i_xy + 1)) + abs(
                    mc - (y.block_count + i_xy - 1)
                )
                instances += 2
                if bad:
                    track.feed(
                        Fraction(bad),
                        f"n={n} x={pt.format_partition(x)} y={pt.format_partition(y)}",
                    )
    violation, witness = track.result("counts match everywhere")
    return instances, violation, witness, {"n": ns_str}


def _c3_brute_row(masks, counts_x, n, sing_masks, sing_sizes):
    hits = ((masks[:, None] & sing_masks[None, :]) != 0).sum(axis=0)
    join_counts = counts_x - hits + 1
    dnum = counts_x + (n - sing_sizes + 1) - 2 * join_counts
    return int(dnum.min())


def _check_c3(params, rng, jobs):
    """Closed form d(x, Sigma_n) = ([x]-1)/(n-1) vs brute force over Sigma_n."""
    ns, ns_str = _parse_range(params.get("n"), (2, 7))
    samples = params.get("samples")
    track = _Tracker()
    instances = 0
    extra = {"n": ns_str}
    for n in ns:
        sing_masks, sing_sizes = singular_mask_arrays(n)
        if samples:
            xs = [pt.random_partition(n, rng) for _ in range(int(samples))]
            extra["sampled"] = True
            extra["samples"] = int(samples)
        else:
            xs = None
        parts_iter = xs if xs is not None else pt.enumerate_partitions(n)
        for x in parts_iter:
            masks = np.array([PnTables._mask(b) for b in x.blocks], dtype=np.int64)
            heavy = pt.block_statistics(x)[2]
            closed = max(heavy - 1, 0)
            brute = _c3_brute_row(masks, x.block_count, n, sing_masks, sing_sizes)
            instances += len(sing_masks)
            if closed != brute:
                track.feed(
                    _frac(abs(closed - brute), n - 1),
                    f"n={n} x={pt.format_partition(x)} closed={closed} brute={brute}",
                )
    violation, witness = track.result("closed form matches brute force")
    return instances, violation, witness, extra


def _check_c4(params, rng, jobs):
    """<x> - <y> <= 2(#x - #y) whenever x <= y."""
    ns, ns_str = _parse_range(params.get("n"), (2, 6))
    track = _Tracker()
    instances = 0
    for n in ns:
        T = pn_tables(n)
        idx = np.arange(T.B)
        order = T.J == idx[None, :]
        S, C = T.singles, T.counts
        gap = (S[:, None] - S[None, :]) - 2 * (C[:, None] - C[None, :])
        gap = np.where(order, gap, -1)
        v = int(gap.max())
        instances += int(order.sum())
        if v > 0:
            x, y = np.unravel_index(int(np.argmax(gap)), gap.shape)
            track.feed(Fraction(v), f"n={n} x={T.label(x)} y={T.label(y)}")
    violation, witness = track.result("singleton difference bound holds")
    return instances, violation, witness, {"n": ns_str}


def _check_c5(params, rng, jobs):
    """d(x, Sigma_n) <= 48 sup_y phi(x,y), and phi(x, x*) >= ([x]-1)/(48(n-1))."""
    ns, ns_str = _parse_range(params.get("n"), (2, 5))
    star_ns, star_str = _parse_range(params.get("star_n"), (2, 6))
    samples = params.get("samples")
    track = _Tracker()
    instances = 0
    extra = {"n": ns_str, "star_n": star_str}
    for n in ns:
        T = pn_tables(n)
        scale = n - 1
        ds = np.maximum(T.heavy - 1, 0)
        if samples:
            extra["sampled"] = True
            extra["samples"] = int(samples)
            G = T.R[T.J] - T.R[:, None]
            for _ in range(int(samples)):
                x = T.index[pt.random_partition(n, rng)]
                phimax = int(_phi_row(T, x, G).max())
                track.feed(_frac(int(ds[x]) - 48 * phimax, scale),
                           f"n={n} x={T.label(x)}")
                instances += T.B * T.B
        else:
            _SHARED["T"] = T
            _SHARED["G"] = T.R[T.J] - T.R[:, None]
            _SHARED["ds"] = ds
            v, x = _preduce(_w_phi_max, T.B, jobs)
            track.feed(_frac(v, scale), f"n={n} x={T.label(x)}")
            instances += T.B**3
    for n in star_ns:
        # the pair bound only needs one phi evaluation per element
        T = pn_tables(n)
        scale = n - 1
        R, J = T.R, T.J
        for i, x in enumerate(T.parts):
            heavy = int(T.heavy[i])
            if heavy < 1:
                continue
            star = pt.star_partition(x)
            j = T.index[star]
            a = int(R[i]) + int(R[j]) - int(R[J[i, j]])
            t1 = np.maximum(a - R, 0)
            t2 = R[J[i]] - R[i]
            t3 = R[J[j]] - R[j]
            phi48 = 48 * int(np.maximum(np.maximum(t1, t2), t3).min())
            track.feed(_frac((heavy - 1) - phi48, 48 * scale),
                       f"n={n} star bound at x={T.label(i)}")
            instances += T.B
    violation, witness = track.result("48-bound holds")
    return instances, violation, witness, extra


def _check_c6(params, rng, jobs):
    """Metrically modular elements of P_n are exactly the singular partitions."""
    ns, ns_str = _parse_range(params.get("n"), (2, 6))
    track = _Tracker()
    instances = 0
    for n in ns:
        T = pn_tables(n)
        R = T.R
        defect = R[:, None] + R[None, :] - R[T.J] - R[T.M]
        modular = (defect == 0).all(axis=1)
        singular = T.heavy <= 1
        bad = modular != singular
        instances += T.B * T.B
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            track.feed(Fraction(int(bad.sum())),
                       f"n={n} mismatch at {T.label(i)}")
    violation, witness = track.result("modular = singular")
    return instances, violation, witness, {"n": ns_str}


def _check_c7(params, rng, jobs):
    """Every singular x is within 1/(n-1) of the maximal singular sublattice
    through the base point 1."""
    ns, ns_str = _parse_range(params.get("n"), (2, 7))
    track = _Tracker()
    instances = 0
    for n in ns:
        sing_masks, sing_sizes = singular_mask_arrays(n)
        in_a = (sing_masks & 1).astype(bool)  # basic block contains element 1
        a_masks = sing_masks[in_a]
        a_sizes = sing_sizes[in_a]
        for m, s in zip(sing_masks.tolist(), sing_sizes.tolist()):
            cx = n - s + 1
            inter = (np.int64(m) & a_masks) != 0
            union_sizes = np.where(
                inter,
                np.array([bin(m | am).count("1") for am in a_masks.tolist()]),
                0,
            )
            join_counts = np.where(inter, n - union_sizes + 1,
                                   n - s - a_sizes + 2)
            dnum = cx + (n - a_sizes + 1) - 2 * join_counts
            best = int(dnum.min())
            instances += len(a_masks)
            track.feed(_frac(best - 1, n - 1), f"n={n} B_x mask={m}")
    violation, witness = track.result("singular sublattice is 1/(n-1)-dense")
    return instances, violation, witness, {"n": ns_str}


def _check_c8(params, rng, jobs):
    """Selector characterizations agree; |Gamma(x)| = product of block sizes."""
    ns, ns_str = _parse_range(params.get("n"), (2, 5))
    track = _Tracker()
    instances = 0
    for n in ns:
        singulars = list(pt.enumerate_singular(n))
        for x in pt.enumerate_partitions(n):
            sel = pt.selectors(x)
            members = set(sel)
            for y in members:
                if not pt.is_selector(x, y):  # also cross-checks metric form
                    track.feed(Fraction(1),
                               f"n={n} x={pt.format_partition(x)} bad member")
            metric_set = {
                y for y in singulars
                if pt.join(x, y).block_count == 1
                and pt.partition_norm(x) + pt.partition_norm(y) == 1
            } if n >= 2 else set()
            if metric_set != members:
                track.feed(Fraction(len(metric_set ^ members)),
                           f"n={n} x={pt.format_partition(x)} set mismatch")
            expected = 1 if x.block_count == 1 else sel.choice_count()
            if len(members) != expected:
                track.feed(Fraction(abs(len(members) - expected)),
                           f"n={n} x={pt.format_partition(x)} count")
            if not members:
                track.feed(Fraction(1), f"n={n} x={pt.format_partition(x)} empty")
            instances += len(singulars) + len(members) + 1
    violation, witness = track.result("selector sets match on both definitions")
    return instances, violation, witness, {"n": ns_str}


def _check_c9(params, rng, jobs):
    """selector_repair: y <= z, x+z = 1, d(y,z) = d(x+y,1) = k/(n-1)."""
    ns, ns_str = _parse_range(params.get("n"), (2, 5))
    track = _Tracker()
    instances = 0
    for n in ns:
        one = pt.Partition.one(n)
        for x in pt.enumerate_partitions(n):
            for y in pt.enumerate_singular(n):
                z = pt.selector_repair(x, y)
                k = x.block_count - pt.incidence(x, pt.basic_block(y))
                bad = (
                    (not pt.refines(y, z))
                    + (pt.join(x, z) != one)
                    + (pt.partition_metric(y, z) != Fraction(k, n - 1))
                    + (pt.partition_metric(pt.join(x, y), one) != Fraction(k, n - 1))
                )
                instances += 4
                if bad:
                    track.feed(Fraction(bad),
                               f"n={n} x={pt.format_partition(x)} "
                               f"y={pt.format_partition(y)}")
    violation, witness = track.result("repair construction exact")
    return instances, violation, witness, {"n": ns_str}


def _check_c10(params, rng, jobs):
    """chi_z(y) <= 2 d(y+z, 1), chi evaluated by the logic module over MOD."""
    ns, ns_str = _parse_range(params.get("n"), (2, 4))
    chi = lg.chi_formula()
    track = _Tracker()
    instances = 0
    for n in ns:
        L = pn_lattice_cached(n)
        mod = lg.modular_indices(L)
        top = L.top
        for y in range(L.n_elements):
            for z in mod:
                val = lg.evaluate_fast(chi, L, {"y": y, "z": z})
                bound = 2 * L.metric(L.join(y, z), top)
                instances += len(mod)
                if val > bound:
                    track.feed(val - bound,
                               f"n={n} y={L.elements[y]} z={L.elements[z]}")
    violation, witness = track.result("chi bound holds")
    return instances, violation, witness, {"n": ns_str}


def _check_c11(params, rng, jobs):
    """selector_trim: w in Gamma(x), B_w subset of B_z, d(z,w) = |x|+|z|-1
    <= 4 |1-|x|-|z||."""
    ns, ns_str = _parse_range(params.get("n"), (2, 6))
    track = _Tracker()
    instances = 0
    for n in ns:
        for x in pt.enumerate_partitions(n):
            for z in pt.enumerate_singular(n):
                if pt.incidence(x, pt.basic_block(z)) != x.block_count:
                    continue
                w = pt.selector_trim(x, z)
                d = pt.partition_metric(z, w)
                target = pt.partition_norm(x) + pt.partition_norm(z) - 1
                # for x = top the kept block is a singleton and w is the bottom
                # partition, whose basic block is {1} only by convention
                subset_ok = (x.block_count == 1
                             or pt.basic_block(w) <= pt.basic_block(z))
                bad = (
                    (not pt.is_selector(x, w))
                    + (not subset_ok)
                    + (d != target)
                    + (d > 4 * abs(1 - pt.partition_norm(x) - pt.partition_norm(z)))
                )
                instances += 4
                if bad:
                    track.feed(Fraction(bad),
                               f"n={n} x={pt.format_partition(x)} "
                               f"z={pt.format_partition(z)}")
    violation, witness = track.result("trim construction exact")
    return instances, violation, witness, {"n": ns_str}


def _check_c12(params, rng, jobs):
    """For z in Gamma(x): d(z, Gamma(y)) <= 24 d(x, y).

    d(z, Gamma(y)) is evaluated exactly: the max over w in Gamma(y) of
    |B_z n B_w| decomposes over the blocks of y (each block contributes 1
    iff it meets B_z, the representative being free), so it equals the
    number of blocks of y hit by B_z; at small n this is re-verified
    against the explicit enumeration of Gamma(y).
    """
    ns, ns_str = _parse_range(params.get("n"), (2, 5))
    track = _Tracker()
    instances = 0
    for n in ns:
        T = pn_tables(n)
        parts = T.parts
        sel_blocks = [list(pt.SelectorSet(p).basic_blocks()) for p in parts]
        sel_masks = [
            [PnTables._mask(b) for b in blocks] for blocks in sel_blocks
        ]
        D = T.dnum()
        scale = n - 1
        explicit = n <= 4
        for xi, x in enumerate(parts):
            cx = x.block_count
            for zi, zmask in enumerate(sel_masks[xi]):
                for yi, y in enumerate(parts):
                    hits = sum(1 for bm in T.block_masks[yi] if bm & zmask)
                    best = cx + y.block_count - 2 * max(1, hits)
                    instances += 1
                    if explicit:
                        zb = sel_blocks[xi][zi]
                        brute = min(
                            cx + y.block_count - 2 * max(1, len(zb & wb))
                            for wb in sel_blocks[yi]
                        )
                        instances += len(sel_blocks[yi])
                        if brute != best:
                            track.feed(_frac(abs(brute - best), scale),
                                       f"n={n} block-hit formula wrong at "
                                       f"x={T.label(xi)} y={T.label(yi)}")
                    v = best - 24 * int(D[xi, yi])
                    if v > 0:
                        track.feed(_frac(v, scale),
                                   f"n={n} x={T.label(xi)} y={T.label(yi)}")
    violation, witness = track.result("24-bound holds")
    return instances, violation, witness, {"n": ns_str}


def _check_c13(params, rng, jobs):
    """d(y, Gamma(x)) <= 4|1-|x|-|y|| + 20 d(y+x,1) + 1200 sup_w phi(y,w)."""
    ns, ns_str = _parse_range(params.get("n"), (2, 4))
    track = _Tracker()
    instances = 0
    for n in ns:
        T = pn_tables(n)
        scale = n - 1
        G = T.R[T.J] - T.R[:, None]
        phimax = np.array([int(_phi_row(T, x, G).max()) for x in range(T.B)],
                          dtype=np.int64)
        instances += T.B * T.B * T.B
        R, J = T.R, T.J
        sel_masks = [
            [PnTables._mask(b) for b in pt.SelectorSet(p).basic_blocks()]
            for p in T.parts
        ]
        sel_sizes = [p.block_count for p in T.parts]
        for xi, x in enumerate(T.parts):
            masks = sel_masks[xi]
            kx = sel_sizes[xi]
            for yi, y in enumerate(T.parts):
                cy = y.block_count
                yblocks = T.block_masks[yi]
                # d(y, z) over selectors z of x: z is singular with |B_z| = #x,
                # so d = (#y + (n - #x + 1) - 2(#y - i(y, B_z) + 1))/(n-1),
                # increasing in the hit count i(y, B_z)
                best_hits = None
                for zm in masks:
                    hits = sum(1 for bm in yblocks if bm & zm)
                    if best_hits is None or hits < best_hits:
                        best_hits = hits
                dist = _frac(cy + (n - kx + 1) - 2 * (cy - best_hits + 1), scale)
                gap = abs(scale - int(R[xi]) - int(R[yi]))
                d_cov = scale - int(R[J[xi, yi]])
                rhs = _frac(4 * gap + 20 * d_cov + 1200 * int(phimax[yi]), scale)
                instances += len(masks)
                if dist > rhs:
                    track.feed(dist - rhs,
                               f"n={n} x={T.label(xi)} y={T.label(yi)}")
    violation, witness = track.result("1200-bound holds")
    return instances, violation, witness, {"n": ns_str}


def _gamma_pair(x, y):
    return pt.gamma(x, y), pt.gamma(y, x)


def _check_c14(params, rng, jobs):
    """Hausdorff closed form equals the brute force over explicit selector sets,
    and the pairwise selector distance formula equals the true distance."""
    ns, ns_str = _parse_range(params.get("n"), (2, 5))
    track = _Tracker()
    instances = 0
    for n in ns:
        parts = list(pt.enumerate_partitions(n))
        for x in parts:
            for y in parts:
                closed = pt.hausdorff_selectors(x, y)
                brute = pt.hausdorff_bruteforce(x, y)
                instances += 1
                if closed != brute:
                    track.feed(abs(closed - brute),
                               f"n={n} x={pt.format_partition(x)} "
                               f"y={pt.format_partition(y)}")
        # pairwise formula vs true distance over explicit selector pairs;
        # exhaustive through n = 4, a deterministic slice of x above that
        # (the sweep is quadratic in selector counts)
        xs = parts if n <= 4 else parts[::7]
        for x in xs:
            for y in parts:
                for zb in pt.SelectorSet(x).basic_blocks():
                    z = pt.singular_from_basic_block(zb, n)
                    for wb in pt.SelectorSet(y).basic_blocks():
                        w = pt.singular_from_basic_block(wb, n)
                        lhs = pt.selector_pair_distance(x, y, zb, wb)
                        rhs = pt.partition_metric(z, w)
                        instances += 1
                        if lhs != rhs:
                            track.feed(abs(lhs - rhs),
                                       f"n={n} x={pt.format_partition(x)} "
                                       f"y={pt.format_partition(y)}")
    violation, witness = track.result("hausdorff formula exact")
    return instances, violation, witness, {"n": ns_str}


def _check_c15(params, rng, jobs):
    """d_Haus(Gamma(x), Gamma(y)) <= d(x, y)."""
    ns, ns_str = _parse_range(params.get("n"), (2, 5))
    track = _Tracker()
    instances = 0
    for n in ns:
        T = pn_tables(n)
        D = T.dnum()
        for xi, x in enumerate(T.parts):
            for yi, y in enumerate(T.parts):
                dh = pt.hausdorff_selectors(x, y)
                instances += 1
                gap = dh - _frac(int(D[xi, yi]), n - 1)
                if gap > 0:
                    track.feed(gap, f"n={n} x={T.label(xi)} y={T.label(yi)}")
    violation, witness = track.result("d_Haus <= d")
    return instances, violation, witness, {"n": ns_str}


def _check_c16(params, rng, jobs):
    """d <= 4 d_Haus and d(x, x+y) <= 2 d_Haus."""
    ns, ns_str = _parse_range(params.get("n"), (2, 5))
    track = _Tracker()
    instances = 0
    for n in ns:
        T = pn_tables(n)
        D = T.dnum()
        R, J = T.R, T.J
        for xi, x in enumerate(T.parts):
            for yi, y in enumerate(T.parts):
                dh = pt.hausdorff_selectors(x, y)
                d = _frac(int(D[xi, yi]), n - 1)
                d_join = _frac(int(R[J[xi, yi]]) - int(R[xi]), n - 1)
                instances += 2
                if d > 4 * dh:
                    track.feed(d - 4 * dh,
                               f"n={n} d>4dH x={T.label(xi)} y={T.label(yi)}")
                if d_join > 2 * dh:
                    track.feed(d_join - 2 * dh,
                               f"n={n} d(x,x+y)>2dH x={T.label(xi)} y={T.label(yi)}")
    violation, witness = track.result("4 d_Haus bound holds")
    return instances, violation, witness, {"n": ns_str}


def _check_c17(params, rng, jobs):
    """The P_{3n} meet-discontinuity family at a given n and K."""
    n = int(params.get("n", 5))
    K = int(params.get("K", 2))
    if n <= K + 2:
        raise ValueError("family needs n > K + 2")
    N = 3 * n
    x = pt.from_blocks([list(range(1, 2 * n + 1)), list(range(2 * n + 1, N + 1))], N)
    y = pt.from_blocks([list(range(1, n + 1)), list(range(n + 1, N + 1))], N)
    z = pt.from_blocks([[i, i + n, i + 2 * n] for i in range(1, n + 1)], N)
    eps = Fraction(1, N - 2)
    xz, yz = pt.meet(x, z), pt.meet(y, z)
    track = _Tracker()
    checks = [
        ("norm x", pt.partition_norm(x), Fraction(N - 2, N - 1)),
        ("norm y", pt.partition_norm(y), Fraction(N - 2, N - 1)),
        ("norm z", pt.partition_norm(z), Fraction(2 * n, N - 1)),
        ("norm xz", pt.partition_norm(xz), Fraction(n, N - 1)),
        ("norm yz", pt.partition_norm(yz), Fraction(n, N - 1)),
        ("join x z", pt.join(x, z), pt.Partition.one(N)),
        ("xz+yz", pt.join(xz, yz), z),
        ("d(xz,yz)", pt.partition_metric(xz, yz), Fraction(2 * n, N - 1)),
        ("d(x,y)", pt.partition_metric(x, y), Fraction(2, N - 1)),
    ]
    for name, got, want in checks:
        if got != want:
            track.feed(Fraction(1), f"{name}: got {got}, want {want}")
    # phi upper bounds through the explicit witness t = z
    for name, a in (("phi(x,z)", x), ("phi(y,z)", y)):
        t1 = max(
            pt.partition_norm(a) + pt.partition_norm(z)
            - pt.partition_norm(pt.join(a, z)) - pt.partition_norm(z),
            Fraction(0),
        )
        t2 = pt.partition_metric(pt.join(a, z), a)
        upper = max(t1, t2)
        if not upper < eps:
            track.feed(upper - eps, f"{name} witness bound >= eps")
    lhs = pt.partition_metric(xz, yz)
    rhs = 2 * pt.partition_metric(x, y) + K * eps
    if not lhs > rhs:
        track.feed(rhs - lhs, "separation inequality fails")
    violation, witness = track.result(
        f"d(xz,yz)={format_rational(lhs)} > 2d(x,y)+K*eps={format_rational(rhs)}"
    )
    return len(checks) + 3, violation, witness, {"n": str(n), "K": str(K)}


def _check_c18(params, rng, jobs):
    """The P_4 complement remark: d = 2/3, |x|+|y| = 4/3, |x+y|+|xy| = 1."""
    L = pn_lattice_cached(4)
    x, y = L.index("1,2|3,4"), L.index("1,3|2,4")
    track = _Tracker()
    checks = [
        ("d(x,y)", L.metric(x, y), Fraction(2, 3)),
        ("|x|+|y|", L.norm(x) + L.norm(y), Fraction(4, 3)),
        ("|x+y|+|xy|", L.norm(L.join(x, y)) + L.norm(L.meet(x, y)), Fraction(1)),
        ("complement", y in lt.complements(L, x), True),
        ("weak complement", lt.is_weak_complement(L, x, y), False),
    ]
    for name, got, want in checks:
        if got != want:
            track.feed(Fraction(1), f"{name}: got {got}, want {want}")
    violation, witness = track.result("P_4 remark reproduced")
    return len(checks), violation, witness, {"n": "4"}


def _check_c19(params, rng, jobs):
    """P_3 inclusion/exclusion failure: 5/2 < 3 exactly."""
    L = pn_lattice_cached(3)
    xs = [L.index(s) for s in ("1|2,3", "1,3|2", "1,2|3")]
    j12 = L.join(xs[0], xs[1])
    j123 = L.join(j12, xs[2])
    lhs = L.norm(j123) + sum(L.norm(i) for i in xs)
    rhs = (
        L.norm(L.join(xs[0], xs[1]))
        + L.norm(L.join(xs[1], xs[2]))
        + L.norm(L.join(xs[2], xs[0]))
    )
    track = _Tracker()
    if lhs != Fraction(5, 2):
        track.feed(abs(lhs - Fraction(5, 2)), f"lhs = {lhs}")
    if rhs != 3:
        track.feed(abs(rhs - 3), f"rhs = {rhs}")
    if not lhs < rhs:
        track.feed(lhs - rhs, "inclusion/exclusion did not fail")
    violation, witness = track.result("5/2 < 3 reproduced")
    return 3, violation, witness, {"n": "3"}


def _phi_pair_stream(n, x, y):
    """phi(x, y) in P_n by streaming all z (no quadratic tables)."""
    nx, ny = pt.partition_norm(x), pt.partition_norm(y)
    njoin = pt.partition_norm(pt.join(x, y))
    best = None
    for z in pt.enumerate_partitions(n):
        t1 = max(nx + ny - njoin - pt.partition_norm(z), Fraction(0))
        t2 = pt.partition_metric(pt.join(x, z), x)
        t3 = pt.partition_metric(pt.join(y, z), y)
        m = max(t1, t2, t3)
        best = m if best is None else min(best, m)
        if best == 0:
            break
    return best


def _check_c20(params, rng, jobs):
    """Bjorner embeddings preserve joins and distances; they are not elementary."""
    ns, ns_str = _parse_range(params.get("n"), (2, 3))
    ks, ks_str = _parse_range(params.get("k"), (2, 3))
    wns, wns_str = _parse_range(params.get("witness_n"), (3, 4))
    track = _Tracker()
    instances = 0
    for n in ns:
        parts = list(pt.enumerate_partitions(n + 1))
        for k in ks:
            emb = {p: pt.bjorner_embed(p, k) for p in parts}
            for i, a in enumerate(parts):
                for b in parts[i:]:
                    instances += 2
                    if pt.partition_metric(emb[a], emb[b]) != pt.partition_metric(a, b):
                        track.feed(Fraction(1),
                                   f"n={n} k={k} isometry at "
                                   f"{pt.format_partition(a)}/{pt.format_partition(b)}")
                    if emb[pt.join(a, b)] != pt.join(emb[a], emb[b]):
                        track.feed(Fraction(1),
                                   f"n={n} k={k} join at "
                                   f"{pt.format_partition(a)}/{pt.format_partition(b)}")
    for n in wns:
        # psi(a) = sup_y phi(a, y) is 0 at singular a; > 0 at the image of any
        # singular a whose basic block avoids the distinguished element 0
        T = pn_tables(n + 1)
        G = T.R[T.J] - T.R[:, None]
        m = 2 * n
        for i in T.singular_idx:
            a = T.parts[i]
            instances += T.B * T.B
            if int(_phi_row(T, i, G).max()) != 0:
                track.feed(Fraction(1), f"n={n} psi(a) != 0 at {T.label(i)}")
            block = pt.basic_block(a)
            if len(block) < 2 or 1 in block:  # internal element 1 is Bjorner 0
                continue
            img = pt.bjorner_embed(a, 2)
            if pt.is_singular(img):
                track.feed(Fraction(1), f"n={n} image singular at {T.label(i)}")
                continue
            wit = _phi_pair_stream(m + 1, img, pt.star_partition(img))
            instances += pt.bell_number(m + 1)
            if not wit > 0:
                track.feed(Fraction(1), f"n={n} psi(image) = 0 at {T.label(i)}")
    violation, witness = track.result("embedding isometric; non-elementarity witnessed")
    return instances, violation, witness, {"n": ns_str, "k": ks_str,
                                           "witness_n": wns_str}


def _check_c21(params, rng, jobs):
    """psi separation: d(phi_n^2n(x), z) = 1/2 for every x, while psi over
    the full tuple is 0 inside Pi_n."""
    ns, ns_str = _parse_range(params.get("n"), (2, 4))
    track = _Tracker()
    instances = 0
    for n in ns:
        parts = list(pt.enumerate_partitions(n + 1))
        zb = [[0]] + [[2 * i - 1, 2 * i] for i in range(1, n + 1)]
        z = pt.from_bjorner_blocks(zb)
        for x in parts:
            img = pt.bjorner_embed(x, 2)
            instances += 1
            d = pt.partition_metric(img, z)
            if d != Fraction(1, 2):
                track.feed(abs(d - Fraction(1, 2)),
                           f"n={n} x={pt.format_partition(x)} d={d}")
        # sup_y min over the full tuple of witnesses is 0 in Pi_n
        T = pn_tables(n + 1)
        D = T.dnum()
        instances += T.B * T.B
        if int(D.min(axis=0).max()) != 0:
            track.feed(Fraction(1), f"n={n} psi over full tuple nonzero")
    violation, witness = track.result("1/2 separation reproduced")
    return instances, violation, witness, {"n": ns_str}


def _check_c22(params, rng, jobs):
    """Kernel suite: Wilf, PSD agreement, CND metrics, FKG/TPN, Kotelyanskii."""
    trials = int(params.get("trials", 100))
    track = _Tracker()
    instances = 0
    wilf_hosts = [pn_lattice_cached(3), pn_lattice_cached(4),
                  lt.boolean_measure_lattice([1, 1, 1, 1])]
    for L in wilf_hosts:
        for _ in range(trials):
            f = kn.random_integer_kernel(L, rng)
            instances += 1
            if not kn.wilf_identity_holds(f):
                track.feed(Fraction(1), f"wilf fails on {L!r}")
    psd_hosts = [pn_lattice_cached(3), pn_lattice_cached(4),
                 lt.boolean_measure_lattice([1, 1, 1])]
    for L in psd_hosts:
        for t in range(trials):
            instances += 1
            try:
                if t % 3 == 0:
                    f = kn.random_integer_kernel(L, rng)
                elif t % 3 == 1:
                    fmu = [Fraction(rng.randint(0, 4)) for _ in range(L.n_elements)]
                    f = kn.zeta_transform(kn.KernelFunction(L, fmu))
                else:
                    fmu = [Fraction(rng.randint(1, 5)) for _ in range(L.n_elements)]
                    f = kn.zeta_transform(kn.KernelFunction(L, fmu))
                cls = kn.psd_classify(f)
                if t % 3 == 1 and cls == "neither":
                    track.feed(Fraction(1), "nonneg Moebius classified neither")
                if t % 3 == 2 and cls != "PD":
                    track.feed(Fraction(1), "positive Moebius not PD")
            except MethodDisagreement as exc:
                track.feed(Fraction(1), f"psd disagreement: {exc}")
    # CND kernels whose exp(-eta) is PD must give valid metric lattices
    Bm = lt.boolean_measure_lattice([1, 1, 1])
    etas = [kn.KernelFunction(Bm, [Bm.norm(i) for i in range(8)])]
    for _ in range(10):
        fmu = [Fraction(rng.randint(1, 4)) for _ in range(8)]
        rho = kn.zeta_transform(kn.KernelFunction(Bm, fmu))
        a = max(rho.values) + 1
        etas.append(kn.KernelFunction(Bm, [a - v for v in rho.values]))
    for eta in etas:
        instances += 1
        if not kn.cnd_test(eta):
            track.feed(Fraction(1), "constructed eta not CND")
            continue
        lat, factor, collapsed = kn.metric_from_cnd(eta)
        if kn.exp_kernel_is_pd(eta) and collapsed:
            track.feed(Fraction(1), "exp(-eta) PD but quotient collapsed")
        gap = lt.semilattice_axiom_defect(lat)
        if gap > 0:
            track.feed(gap, "d_eta breaks the three-variable semilattice axiom")
        if not kn.schoenberg_check(eta):
            track.feed(Fraction(1), "schoenberg heuristic failed")
    # FKG and total nonnegativity examples; the rectangle argument for the
    # indicator of P minus C_x needs x join-prime (x <= a+b forces x <= a or
    # x <= b), so chains qualify everywhere and Boolean lattices at atoms
    ch5 = lt.chain_lattice(4)
    prime_hosts = [(ch5, range(ch5.n_elements)),
                   (Bm, [Bm.index("{1}"), Bm.index("{2}"), Bm.index("{3}"),
                         Bm.bottom])]
    for L, xs in prime_hosts:
        for x in xs:
            f = kn.indicator_complement_upset(L, x)
            ok, wit = kn.totally_p_nonnegative(f, 3)
            instances += 1
            if not ok:
                track.feed(Fraction(1), f"indicator TPN fails at {L.elements[x]}")
            ok, wit = kn.fkg_check(f)
            if not ok:
                track.feed(Fraction(1), f"indicator FKG fails at {L.elements[x]}")
    ch = lt.chain_lattice(4)
    dec = kn.KernelFunction(ch, [Fraction(9 - 2 * i, 9) for i in range(5)])
    ok, wit = kn.totally_p_nonnegative(dec, 4)
    instances += 1
    if not ok:
        track.feed(Fraction(1), "non-increasing chain kernel not TPN")
    # Kotelyanskii: principal minors satisfy the reversed 2-minor inequality
    strict_found = 0
    mask_index = {m: Bm.index(kn._mask_label(m, 3)) for m in range(8)}
    for _ in range(trials):
        Kmat = kn.random_psd_matrix(3, rng)
        holds, strict = kn.kotelyanskii_report(Kmat)
        instances += 1
        if not holds:
            track.feed(Fraction(1), "kotelyanskii inequality violated")
        if strict is not None:
            strict_found += 1
            minors = kn.principal_minor_function(Kmat)
            vals = [None] * 8
            for m in range(8):
                vals[mask_index[m]] = minors[m]
            fdet = kn.KernelFunction(Bm, vals)
            ok, wit = kn.totally_p_nonnegative(fdet, 2)
            if ok:
                track.feed(Fraction(1), "strict Kotelyanskii but TPN passed")
    if strict_found == 0:
        track.feed(Fraction(1), "no strict Kotelyanskii witness found")
    # NC_4 rank is not submodular
    nc4 = lt.noncrossing_lattice(4)
    parts = [pt.parse_partition(s, 4) for s in nc4.elements]
    rk = [Fraction(4 - p.block_count, 3) for p in parts]
    ok, wit = lt.check_exchange_relation(np.array(nc4.join), rk)
    instances += 1
    if ok:
        track.feed(Fraction(1), "NC_4 exchange relation unexpectedly holds")
    violation, witness = track.result(
        f"kernel suite clean; {strict_found} strict Kotelyanskii witnesses"
    )
    return instances, violation, witness, {"trials": str(trials),
                                           "eig_tolerance": "1e-9"}


def _check_c23(params, rng, jobs):
    """NC_3 = P_3; |NC_4| = 14; NC_4 fails a metric axiom and submodularity."""
    track = _Tracker()
    nc3 = lt.noncrossing_lattice(3)
    if len(nc3.elements) != pt.bell_number(3):
        track.feed(Fraction(1), "NC_3 != P_3")
    nc4 = lt.noncrossing_lattice(4)
    if len(nc4.elements) != 14:
        track.feed(Fraction(1), f"|NC_4| = {len(nc4.elements)}")
    try:
        lt.build_lattice(nc4.elements, nc4.join, nc4.metric)
        track.feed(Fraction(1), "NC_4 passed metric-lattice validation")
        kind = "none"
    except AxiomViolation as exc:
        kind = exc.kind
    parts = [pt.parse_partition(s, 4) for s in nc4.elements]
    rk = [Fraction(4 - p.block_count, 3) for p in parts]
    ok, wit = lt.check_exchange_relation(np.array(nc4.join), rk)
    if ok:
        track.feed(Fraction(1), "NC_4 exchange relation holds")
        wtxt = "none"
    else:
        wtxt = "/".join(nc4.elements[i] for i in wit)
    violation, witness = track.result(
        f"NC_4 fails axiom {kind}; exchange witness {wtxt}"
    )
    return 4, violation, witness, {"n": "3..4"}


def _check_c24(params, rng, jobs):
    """Selector-set semilattice: Gamma(x+y) is the unique greatest selector
    set inside {z.w : z in Gamma(x), w in Gamma(y)} for the induced order,
    and rho(Gamma(x), Gamma(y)) = d'(x, y).

    (Smaller selector sets can also sit inside the meet set: Gamma(1) = {0}
    does whenever two selectors meet at the bottom, so literal uniqueness
    fails; the greatest contained set is unique and equals Gamma(x+y).)
    """
    ns, ns_str = _parse_range(params.get("n"), (2, 4))

    def leq_sets(A, B):
        return all(any(pt.refines(a, b) for b in B) for a in A)

    track = _Tracker()
    instances = 0
    for n in ns:
        parts = list(pt.enumerate_partitions(n))
        gamma_sets = {p: frozenset(pt.selectors(p)) for p in parts}
        for x in parts:
            for y in parts:
                meets = {pt.meet(z, w) for z in gamma_sets[x] for w in gamma_sets[y]}
                target = pt.join(x, y)
                contained = [p for p in parts if gamma_sets[p] <= meets]
                instances += len(parts) + len(meets)
                if not gamma_sets[target] <= meets:
                    track.feed(Fraction(1),
                               f"n={n} Gamma(x+y) not inside meets "
                               f"x={pt.format_partition(x)} y={pt.format_partition(y)}")
                for v in contained:
                    if not leq_sets(gamma_sets[v], gamma_sets[target]):
                        track.feed(Fraction(1),
                                   f"n={n} contained set above Gamma(x+y): "
                                   f"v={pt.format_partition(v)} "
                                   f"x={pt.format_partition(x)} "
                                   f"y={pt.format_partition(y)}")
                    elif v != target and leq_sets(gamma_sets[target], gamma_sets[v]):
                        track.feed(Fraction(1),
                                   f"n={n} greatest contained set not unique "
                                   f"x={pt.format_partition(x)} "
                                   f"y={pt.format_partition(y)}")
                rho = (1 - pt.partition_norm(x)) + (1 - pt.partition_norm(y)) \
                    - 2 * (1 - pt.partition_norm(target))
                dprime = 2 * pt.partition_norm(target) - pt.partition_norm(x) \
                    - pt.partition_norm(y)
                if rho != dprime:
                    track.feed(abs(rho - dprime), f"n={n} rho != d'")
    violation, witness = track.result("selector semilattice isometric")
    return instances, violation, witness, {"n": ns_str}


def _check_c25(params, rng, jobs):
    """Exploratory property-Gamma search; reports the best (k, delta, eps)."""
    n = int(params.get("n", 5))
    k_values = params.get("k_values", (1, 2, 3))
    tuples_per_k = int(params.get("tuples_per_k", 4))
    T = pn_tables(n)
    G = T.R[T.J] - T.R[:, None]
    ds = np.maximum(T.heavy - 1, 0)
    scale = n - 1
    eps_target = Fraction(1, scale)
    far = ds >= 1  # e(y) >= 1/(n-1)
    best = None
    instances = 0
    for k in k_values:
        candidates = []
        for _ in range(tuples_per_k):
            candidates.append([T.index[pt.random_partition(n, rng)]
                               for _ in range(k)])
        # a designed tuple: the k highest-rank non-singular elements
        nonsing = [i for i in range(T.B) if T.heavy[i] > 1]
        if len(nonsing) >= k:
            candidates.append(nonsing[-k:])
        for tup in candidates:
            s = np.zeros(T.B, dtype=np.int64)
            for x in tup:
                s += _phi_row(T, x, G)
                instances += T.B * T.B
            if far.any():
                delta = Fraction(int(s[far].min()), scale)
            else:
                delta = Fraction(0)
            key = (delta, -k)
            if best is None or key > best[0]:
                labels = ",".join(T.label(i) for i in tup)
                best = (key, k, delta, labels)
    _, k, delta, labels = best
    witness = (f"n={n} k={k} delta={format_rational(delta)} "
               f"eps={format_rational(eps_target)} tuple=[{labels}]")
    return instances, Fraction(0), witness, {"n": str(n), "exploratory": "true"}


_REGISTRY = {
    "C1": (_check_c1, "T_ML axioms zero on P_n and Boolean lattices"),
    "C2": (_check_c2, "singular join/meet block counts"),
    "C3": (_check_c3, "distance to singular closed form"),
    "C4": (_check_c4, "singleton-difference lemma"),
    "C5": (_check_c5, "48-bound and star-partition lower bound"),
    "C6": (_check_c6, "modular elements = singular partitions"),
    "C7": (_check_c7, "maximal singular sublattice density"),
    "C8": (_check_c8, "selector existence and characterization"),
    "C9": (_check_c9, "selector repair lemma"),
    "C10": (_check_c10, "chi bound via logic over MOD"),
    "C11": (_check_c11, "selector trim constant"),
    "C12": (_check_c12, "24-bound for selector transport"),
    "C13": (_check_c13, "1200-bound for selector-set definability"),
    "C14": (_check_c14, "Hausdorff closed form vs brute force"),
    "C15": (_check_c15, "d_Haus <= d"),
    "C16": (_check_c16, "d <= 4 d_Haus and d(x,x+y) <= 2 d_Haus"),
    "C17": (_check_c17, "P_3n meet-discontinuity family"),
    "C18": (_check_c18, "P_4 complement remark"),
    "C19": (_check_c19, "P_3 inclusion/exclusion failure"),
    "C20": (_check_c20, "Bjorner isometry and non-elementarity"),
    "C21": (_check_c21, "psi separation at 1/2"),
    "C22": (_check_c22, "kernel suite"),
    "C23": (_check_c23, "NC_4 submodularity failure"),
    "C24": (_check_c24, "selector-set semilattice"),
    "C25": (_check_c25, "property-Gamma exploratory search"),
}

# sweeps whose cost explodes with n; used for the budget precheck
_CUBIC_CHECKS = {"C1", "C5"}


def check_ids():
    return list(_REGISTRY)


def _planned_instances(check_id, params):
    if check_id not in _CUBIC_CHECKS:
        return 0
    ns, _ = _parse_range(params.get("n"), (2, 5))
    per_triple = 3 if check_id == "C1" else 1
    if params.get("samples"):
        return int(params["samples"]) * pt.bell_number(max(ns)) ** 2
    return per_triple * sum(pt.bell_number(n) ** 3 for n in ns)


def run_check(check_id, params=None, jobs=1):
    """Execute one named check; deterministic given params and seed."""
    if check_id not in _REGISTRY:
        raise UnknownCheck(f"unknown check id {check_id!r}")
    params = dict(params or {})
    seed = int(params.get("seed", 0))
    cap = int(params.get("max_instances", DEFAULT_MAX_INSTANCES))
    planned = _planned_instances(check_id, params)
    if planned > cap:
        raise BudgetExceeded(check_id, planned, cap)
    rng = random.Random(f"{seed}:{check_id}")
    func, _ = _REGISTRY[check_id]
    t0 = time.monotonic()
    instances, violation, witness, extra = func(params, rng, jobs)
    elapsed = int((time.monotonic() - t0) * 1000)
    out_params = dict(extra)
    out_params["seed"] = seed
    status = "info" if extra.get("exploratory") else (
        "pass" if violation <= 0 else "fail"
    )
    return CheckReport(
        check_id=check_id,
        params=out_params,
        instances=instances,
        max_violation=max(violation, Fraction(0)),
        witness=witness,
        status=status,
        seed=seed,
        elapsed_ms=elapsed,
    )


def run_all(params=None, jobs=1):
    """C1..C24 with desk-scale defaults; returns one report per check."""
    params = dict(params or {})
    reports = []
    for cid in check_ids():
        if cid == "C25":
            continue
        p = dict(params)
        p.pop("deep", None)
        if params.get("deep") and cid in ("C1", "C5"):
            p["n"] = "2..7"
            if cid == "C5":
                p["star_n"] = "2..7"
        reports.append(run_check(cid, p, jobs))
    return reports


def estimate_constant(check_id, params=None, jobs=1):
    """Empirical extremal ratio for a bound-type check, with its witness."""
    params = dict(params or {})
    ns, _ = _parse_range(params.get("n"), (2, 5))
    if check_id == "C5":
        best = (Fraction(0), "")
        for n in ns:
            T = pn_tables(n)
            G = T.R[T.J] - T.R[:, None]
            for x in range(T.B):
                heavy = int(T.heavy[x])
                if heavy <= 1:
                    continue
                phimax = int(_phi_row(T, x, G).max())
                ratio = Fraction(heavy - 1, phimax)
                if ratio > best[0]:
                    best = (ratio, f"n={n} x={T.label(x)}")
        return best
    if check_id in ("C15", "C16"):
        best = (Fraction(0), "")
        for n in ns:
            T = pn_tables(n)
            D = T.dnum()
            for xi, x in enumerate(T.parts):
                for yi, y in enumerate(T.parts):
                    if xi == yi:
                        continue
                    dh = pt.hausdorff_selectors(x, y)
                    d = _frac(int(D[xi, yi]), n - 1)
                    ratio = (dh / d) if check_id == "C15" else (
                        d / dh if dh > 0 else None
                    )
                    if ratio is not None and ratio > best[0]:
                        best = (ratio, f"n={n} x={T.label(xi)} y={T.label(yi)}")
        return best
    if check_id == "C12":
        best = (Fraction(0), "")
        for n in ns:
            T = pn_tables(n)
            D = T.dnum()
            sel_blocks = [list(pt.SelectorSet(p).basic_blocks()) for p in T.parts]
            for xi, x in enumerate(T.parts):
                for zb in sel_blocks[xi]:
                    for yi, y in enumerate(T.parts):
                        if int(D[xi, yi]) == 0:
                            continue
                        dist = min(
                            x.block_count + y.block_count - 2 * max(1, len(zb & wb))
                            for wb in sel_blocks[yi]
                        )
                        ratio = _frac(dist, int(D[xi, yi]))
                        if ratio > best[0]:
                            best = (ratio, f"n={n} x={T.label(xi)} y={T.label(yi)}")
        return best
    raise UnknownCheck(f"no constant estimate for {check_id!r}")
