"""Set partitions of {1..n} and the partition-lattice machinery.

Partitions are stored in restricted-growth normal form: ``rgs[i]`` is the
block id of element ``i+1``, ``rgs[0] = 0`` and each id is at most one more
than the maximum of the previous ids.  The lattice order is refinement
(x <= y iff every block of x sits inside a block of y), so the bottom
element 0 is the all-singletons partition and the top element 1 is the
one-block partition.

The metric is d(x, y) = (#x + #y - 2#(x+y)) / (n-1) with norm
|x| = (n - #x) / (n-1); all values are exact Fractions.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .errors import (
    BadIndexing,
    DegenerateLattice,
    DimensionMismatch,
    EmptySubset,
    NotAPartition,
    NotCovering,
    ParseError,
    SingularInput,
)


class Partition:
    """An immutable set partition of {1..n} in restricted-growth form."""

    __slots__ = ("n", "rgs", "_blocks")

    def __init__(self, n, rgs):
        rgs = tuple(rgs)
        if n < 1 or len(rgs) != n:
            raise NotAPartition(f"rgs length {len(rgs)} != n = {n}")
        mx = -1
        for i, b in enumerate(rgs):
            if b < 0 or b > mx + 1:
                raise NotAPartition(f"rgs {rgs} violates restricted growth at index {i}")
            mx = max(mx, b)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rgs", rgs)
        object.__setattr__(self, "_blocks", None)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    def __eq__(self, other):
        return isinstance(other, Partition) and self.n == other.n and self.rgs == other.rgs

    def __hash__(self):
        return hash((self.n, self.rgs))

    def __repr__(self):
        return f"Partition({self.n}, {format_partition(self)!r})"

    def __lt__(self, other):
        # arbitrary total order used only for deterministic sorting
        return (self.n, self.rgs) < (other.n, other.rgs)

    @property
    def blocks(self):
        """Blocks as frozensets of elements 1..n, sorted by minimum element."""
        cached = self._blocks
        if cached is None:
            by_id = {}
            for i, b in enumerate(self.rgs):
                by_id.setdefault(b, []).append(i + 1)
            cached = tuple(sorted((frozenset(blk) for blk in by_id.values()), key=min))
            object.__setattr__(self, "_blocks", cached)
        return cached

    @property
    def block_count(self):
        return max(self.rgs) + 1

    @classmethod
    def zero(cls, n):
        """The all-singletons partition (lattice bottom)."""
        return cls(n, range(n))

    @classmethod
    def one(cls, n):
        """The one-block partition (lattice top)."""
        return cls(n, [0] * n)


def from_blocks(blocks, n):
    """Build a Partition from an iterable of blocks covering {1..n}."""
    rgs = [None] * n
    next_id = 0
    # assign ids in order of first (smallest) element to normalize
    for blk in sorted((sorted(b) for b in blocks), key=lambda b: b[0] if b else 0):
        if not blk:
            continue
        for e in blk:
            if not 1 <= e <= n:
                raise NotAPartition(f"element {e} outside 1..{n}")
            if rgs[e - 1] is not None:
                raise NotAPartition(f"element {e} appears twice")
            rgs[e - 1] = next_id
        next_id += 1
    if any(v is None for v in rgs):
        missing = [i + 1 for i, v in enumerate(rgs) if v is None]
        raise NotAPartition(f"elements {missing} missing")
    # first-occurrence relabeling makes this a valid rgs
    relabel = {}
    out = []
    for v in rgs:
        out.append(relabel.setdefault(v, len(relabel)))
    return Partition(n, out)


def parse_partition(text, n):
    """Parse block syntax "1,4|2,3|5,6" or rgs syntax "rgs:0,1,1,0,2,2"."""
    text = text.strip()
    if not text:
        raise ParseError("empty partition text")
    if text.startswith("rgs:"):
        body = text[4:].strip()
        try:
            rgs = [int(t) for t in body.split(",")] if body else []
        except ValueError as exc:
            raise ParseError(f"bad rgs digits in {body!r}") from exc
        if len(rgs) != n:
            raise NotAPartition(f"rgs has {len(rgs)} entries, expected {n}")
        return Partition(n, rgs)
    blocks = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if not chunk:
            raise ParseError("empty block in partition text")
        try:
            blocks.append([int(t) for t in chunk.split(",")])
        except ValueError as exc:
            raise ParseError(f"bad element in block {chunk!r}") from exc
    return from_blocks(blocks, n)


def format_partition(x):
    """Canonical block syntax: blocks by minimum element, elements ascending."""
    return "|".join(",".join(str(e) for e in sorted(b)) for b in x.blocks)


@lru_cache(maxsize=None)
def bell_number(n):
    """Number of partitions of an n-set (Bell number, via the triangle)."""
    if n == 0:
        return 1
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[-1]


def enumerate_partitions(n):
    """Yield all partitions of {1..n} in lexicographic rgs order."""
    if n < 1:
        raise NotAPartition("n must be >= 1")
    rgs = [0] * n
    maxes = [0] * n
    while True:
        yield Partition(n, rgs)
        i = n - 1
        while i > 0 and rgs[i] > maxes[i - 1]:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        maxes[i] = max(maxes[i - 1], rgs[i])
        for j in range(i + 1, n):
            rgs[j] = 0
            maxes[j] = maxes[i]


def random_partition(n, rng):
    """Draw a uniformly random partition of {1..n} (uniform over rgs strings).

    Uses the completion-count DP: N(i, m) = (m+1) N(i+1, m) + N(i+1, m+1).
    """

    @lru_cache(maxsize=None)
    def completions(i, m):
        if i == n:
            return 1
        return (m + 1) * completions(i + 1, m) + completions(i + 1, m + 1)

    rgs = [0]
    m = 0
    for i in range(1, n):
        r = rng.randrange(completions(i, m))
        low = (m + 1) * completions(i + 1, m)
        if r < low:
            rgs.append(r // completions(i + 1, m))
        else:
            rgs.append(m + 1)
            m += 1
    return Partition(n, rgs)


def join(x, y):
    """Finest common coarsening (union-find over co-blocked pairs)."""
    if x.n != y.n:
        raise DimensionMismatch(f"join of P_{x.n} and P_{y.n} elements")
    n = x.n
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for rgs in (x.rgs, y.rgs):
        first = {}
        for i, b in enumerate(rgs):
            j = first.setdefault(b, i)
            if j != i:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    relabel = {}
    out = []
    for i in range(n):
        out.append(relabel.setdefault(find(i), len(relabel)))
    return Partition(n, out)


def meet(x, y):
    """Common refinement (pairwise block intersections)."""
    if x.n != y.n:
        raise DimensionMismatch(f"meet of P_{x.n} and P_{y.n} elements")
    relabel = {}
    out = []
    for a, b in zip(x.rgs, y.rgs):
        out.append(relabel.setdefault((a, b), len(relabel)))
    return Partition(x.n, out)


def refines(x, y):
    """x <= y in the refinement order."""
    if x.n != y.n:
        raise DimensionMismatch("comparing partitions of different ground sets")
    seen = {}
    for a, b in zip(x.rgs, y.rgs):
        if seen.setdefault(a, b) != b:
            return False
    return True


def block_statistics(x):
    """(#x, <x>, [x]): block count, singleton blocks, blocks of size >= 2."""
    sizes = {}
    for b in x.rgs:
        sizes[b] = sizes.get(b, 0) + 1
    singletons = sum(1 for s in sizes.values() if s == 1)
    return len(sizes), singletons, len(sizes) - singletons


def incidence(x, subset):
    """i(x, S): number of blocks of x meeting S."""
    n = x.n
    hit = set()
    for e in subset:
        if not 1 <= e <= n:
            raise DimensionMismatch(f"element {e} outside 1..{n}")
        hit.add(x.rgs[e - 1])
    return len(hit)


def partition_norm(x):
    """|x| = (n - #x)/(n - 1); the distance to the all-singletons partition."""
    if x.n == 1:
        raise DegenerateLattice("P_1 has no metric (denominator n - 1 = 0)")
    return Fraction(x.n - x.block_count, x.n - 1)


def partition_metric(x, y):
    """d(x, y) = (#x + #y - 2#(x+y)) / (n - 1); equals d' on P_n."""
    if x.n != y.n:
        raise DimensionMismatch("distance between partitions of different ground sets")
    if x.n == 1:
        raise DegenerateLattice("P_1 has no metric (denominator n - 1 = 0)")
    return Fraction(
        x.block_count + y.block_count - 2 * join(x, y).block_count, x.n - 1
    )


def is_singular(x):
    """At most one block of size >= 2."""
    return block_statistics(x)[2] <= 1


def basic_block(x):
    """The unique block of size >= 2; frozenset({1}) for the bottom partition."""
    for blk in x.blocks:
        if len(blk) >= 2:
            return blk
    return frozenset({1})


def singular_from_basic_block(block, n):
    """The singular partition whose basic block is ``block`` (size <= 1 gives 0)."""
    block = frozenset(block)
    if len(block) <= 1:
        return Partition.zero(n)
    return from_blocks(
        [block] + [[e] for e in range(1, n + 1) if e not in block], n
    )


def enumerate_singular(n):
    """Yield the bottom partition, then one singular per subset of size >= 2."""
    yield Partition.zero(n)
    elements = range(1, n + 1)
    for size in range(2, n + 1):
        for block in combinations(elements, size):
            yield singular_from_basic_block(block, n)


def dist_to_singular(x):
    """d(x, Sigma_n) = ([x] - 1)/(n - 1), clamped at 0 for singular x."""
    if x.n == 1:
        raise DegenerateLattice("P_1 has no metric")
    heavy = block_statistics(x)[2]
    return Fraction(max(heavy - 1, 0), x.n - 1)


def star_partition(x):
    """Rewire pairs of non-singleton blocks so the pairwise joins halve.

    Blocks of size >= 2 are sorted by minimum element; within block i the
    two distinguished elements are a_i = min and b_i = second smallest.
    Consecutive blocks 2i-1, 2i swap their distinguished elements:
    {a, b} u R and {a', b'} u R' become {a, b'} u R' and {a', b} u R.
    An odd trailing block is kept as is, as are all singletons.

    Guarantees <x*> = <x>, [x*] = [x] and [x + x*] = ceil([x]/2).
    """
    heavy = [sorted(b) for b in x.blocks if len(b) >= 2]
    if not heavy:
        raise SingularInput("star_partition needs a block of size >= 2")
    out = [b for b in x.blocks if len(b) == 1]
    for i in range(0, len(heavy) - 1, 2):
        p, q = heavy[i], heavy[i + 1]
        out.append([p[0], q[1]] + q[2:])
        out.append([q[0], p[1]] + p[2:])
    if len(heavy) % 2 == 1:
        out.append(heavy[-1])
    return from_blocks(out, x.n)


class SelectorSet:
    """The selectors of x: singular partitions picking one element per block.

    Members are enumerated through their basic blocks, one choice of
    representative per block of x, so there are prod(|B|) choices.  The
    choices give pairwise distinct partitions except over the top element,
    where every singleton choice collapses to the bottom partition (its
    conventional basic block is {1}).
    """

    def __init__(self, base):
        self.base = base

    def basic_blocks(self):
        """Iterate the choice-function basic blocks as frozensets."""
        for choice in product(*(sorted(b) for b in self.base.blocks)):
            yield frozenset(choice)

    def __iter__(self):
        n = self.base.n
        if self.base.block_count == 1:
            yield Partition.zero(n)
            return
        for block in self.basic_blocks():
            yield singular_from_basic_block(block, n)

    def __len__(self):
        if self.base.block_count == 1:
            return 1
        count = 1
        for b in self.base.blocks:
            count *= len(b)
        return count

    def choice_count(self):
        """Number of representative choices, prod of block sizes."""
        count = 1
        for b in self.base.blocks:
            count *= len(b)
        return count

    def __contains__(self, y):
        return is_selector(self.base, y)


def selectors(x):
    return SelectorSet(x)


def is_selector(x, y):
    """Test both characterizations of a selector and insist they agree.

    Combinatorial: y is singular and its basic block meets every block of x
    exactly once.  Metric: x + y = 1 and |x| + |y| = 1.
    """
    if x.n != y.n:
        raise DimensionMismatch("selector test across ground sets")
    combinatorial = False
    if is_singular(y):
        block = basic_block(y)
        combinatorial = all(len(b & block) == 1 for b in x.blocks)
    if x.n == 1:
        return combinatorial
    metric = (
        join(x, y).block_count == 1
        and partition_norm(x) + partition_norm(y) == 1
    )
    if combinatorial != metric:
        raise AssertionError(
            f"selector characterizations disagree for {format_partition(x)} / "
            f"{format_partition(y)}"
        )
    return combinatorial


def _min_cover(options, n_sets):
    """Exact minimum number of sets covering all elements, branch and bound.

    ``options[i]`` is the set of set-indices that can cover element i; every
    element must end up covered by a chosen set.  Elements here are blocks
    of x and sets are blocks of y, so sizes are tiny; the bound logic keeps
    worst cases graceful.
    """
    n_elems = len(options)
    if n_elems == 0:
        return 0
    covers = [set() for _ in range(n_sets)]
    for i, opts in enumerate(options):
        if not opts:
            raise ValueError("uncoverable element")
        for s in opts:
            covers[s].add(i)
    all_elems = frozenset(range(n_elems))
    # greedy upper bound
    uncovered = set(all_elems)
    greedy = 0
    while uncovered:
        s = max(range(n_sets), key=lambda t: len(covers[t] & uncovered))
        uncovered -= covers[s]
        greedy += 1
    max_cover = max(len(c) for c in covers)
    best_holder = [greedy]

    def branch(uncovered, used):
        if not uncovered:
            best_holder[0] = min(best_holder[0], used)
            return
        # lower bound: each chosen set covers at most max_cover elements
        if used + (len(uncovered) + max_cover - 1) // max_cover >= best_holder[0]:
            return
        pivot = min(uncovered, key=lambda i: len(options[i]))
        for s in sorted(options[pivot], key=lambda t: -len(covers[t] & uncovered)):
            branch(uncovered - covers[s], used + 1)

    branch(all_elems, 0)
    return best_holder[0]


def gamma(x, y):
    """gamma(x, y) = min over z in Gamma(x) of max over w in Gamma(y) of |B_z n B_w|.

    For a fixed choice z, the inner max equals i(y, B_z): a selector of y can
    take its representative inside B_z in every block of y that B_z meets.
    Minimizing i(y, B_z) over choices of one representative per block of x is
    a minimum set cover of the blocks of x by the blocks of y under the
    nonempty-intersection incidence, solved exactly by branch and bound.
    The reduction itself is oracle-tested against gamma_bruteforce.
    """
    if x.n != y.n:
        raise DimensionMismatch("gamma across ground sets")
    y_blocks = y.blocks
    options = []
    for bx in x.blocks:
        opts = {j for j, by in enumerate(y_blocks) if bx & by}
        options.append(opts)
    return _min_cover(options, len(y_blocks))


def gamma_bruteforce(x, y):
    """Definitional min-max over explicit selector choice pairs."""
    if x.n != y.n:
        raise DimensionMismatch("gamma across ground sets")
    best = None
    for bz in SelectorSet(x).basic_blocks():
        worst = 0
        for bw in SelectorSet(y).basic_blocks():
            worst = max(worst, len(bz & bw))
        best = worst if best is None else min(best, worst)
    return best


def selector_pair_distance(x, y, bz, bw):
    """d(z, w) for z in Gamma(x), w in Gamma(y) via their basic blocks."""
    return Fraction(
        x.block_count + y.block_count - 2 * max(1, len(bz & bw)), x.n - 1
    )


def hausdorff_selectors(x, y):
    """Closed form (#x + #y - 2 min{gamma(x,y), gamma(y,x)}) / (n-1)."""
    if x.n != y.n:
        raise DimensionMismatch("hausdorff across ground sets")
    if x.n == 1:
        raise DegenerateLattice("P_1 has no metric")
    g = min(gamma(x, y), gamma(y, x))
    return Fraction(x.block_count + y.block_count - 2 * g, x.n - 1)


def hausdorff_bruteforce(x, y):
    """Hausdorff distance over explicit selector sets, pairwise formula."""
    zs = list(SelectorSet(x).basic_blocks())
    ws = list(SelectorSet(y).basic_blocks())
    d_zw = [[selector_pair_distance(x, y, bz, bw) for bw in ws] for bz in zs]
    forward = max(min(row) for row in d_zw)
    backward = max(min(d_zw[i][j] for i in range(len(zs))) for j in range(len(ws)))
    return max(forward, backward)


def selector_repair(x, y):
    """Grow a singular y into a singular z with y <= z and x + z = 1.

    Adds the minimum element of every block of x missed by B_y; then
    d(y, z) = k/(n-1) with k = #x - i(x, B_y), which equals d(x+y, 1).
    """
    if x.n != y.n:
        raise DimensionMismatch("selector_repair across ground sets")
    if not is_singular(y):
        raise SingularInput("selector_repair needs singular y")
    block = set(basic_block(y))
    for bx in x.blocks:
        if not bx & block:
            block.add(min(bx))
    return singular_from_basic_block(block, x.n)


def chi_witness(y, z):
    """Rebuild a singular z into a selector w of y staying close to z.

    From each block of y meeting B_z in two or more elements keep only the
    minimum of the intersection; add the minimum element of each block of y
    missed by B_z.  Then y + w = 1, |y| + |w| = 1, d(z+w, z) = d(y+z, 1) and
    d(z, w) <= 2 d(y+z, 1) + |1 - |y| - |z||.
    """
    if y.n != z.n:
        raise DimensionMismatch("chi_witness across ground sets")
    if not is_singular(z):
        raise SingularInput("chi_witness needs singular z")
    bz = basic_block(z)
    kept = []
    for by in y.blocks:
        inter = by & bz
        if inter:
            kept.append(min(inter))
        else:
            kept.append(min(by))
    return singular_from_basic_block(kept, y.n)


def selector_trim(x, z):
    """Shrink a singular z covering x (x + z = 1) to a selector w of x.

    Keeps the minimum element of B_z inside each block of x, so B_w is a
    subset of B_z and d(z, w) = |x| + |z| - 1 <= 4 |1 - |x| - |z||.
    """
    if x.n != z.n:
        raise DimensionMismatch("selector_trim across ground sets")
    if not is_singular(z):
        raise SingularInput("selector_trim needs singular z")
    bz = basic_block(z)
    if incidence(x, bz) != x.block_count:
        raise NotCovering("selector_trim needs x + z = 1 (B_z meeting every block)")
    kept = [min(bx & bz) for bx in x.blocks]
    return singular_from_basic_block(kept, x.n)


def restrict(x, subset):
    """x_S: the partition S inherits, relabeled to 1..|S| order-preservingly."""
    subset = sorted(set(subset))
    if not subset:
        raise EmptySubset("restrict needs a nonempty subset")
    if subset[0] < 1 or subset[-1] > x.n:
        raise DimensionMismatch(f"subset outside 1..{x.n}")
    rename = {e: i + 1 for i, e in enumerate(subset)}
    blocks = []
    for b in x.blocks:
        inter = [rename[e] for e in b if e in rename]
        if inter:
            blocks.append(inter)
    return from_blocks(blocks, len(subset))


# -- Bjorner indexing: Pi_n is the partition lattice of {0..n}, stored as
#    P_{n+1} with ground element e standing for Bjorner element e - 1.


def from_bjorner_blocks(blocks):
    """Build the internal P_{n+1} partition for blocks covering {0..n}."""
    elements = sorted({e for b in blocks for e in b})
    if not elements or elements[0] != 0:
        raise BadIndexing("Bjorner blocks must contain the distinguished element 0")
    n = elements[-1]
    if elements != list(range(n + 1)):
        raise BadIndexing(f"Bjorner blocks must cover 0..{n} exactly")
    return from_blocks([[e + 1 for e in b] for b in blocks], n + 1)


def to_bjorner_blocks(x):
    """Blocks of the Bjorner-indexed partition over {0..n}."""
    return [frozenset(e - 1 for e in b) for b in x.blocks]


def bjorner_embed(pi, k):
    """The lattice embedding Pi_n -> Pi_kn used to build the continuous limit.

    For pi = {B_0, .., B_p} with 0 in B_0, each other block B_i spawns k
    blocks C_ij = {k*b - j : b in B_i} for j = 0..k-1, and C_0 collects the
    remainder of {0..kn}.  Join-preserving and isometric; both properties
    are verified by the test-suite rather than assumed.
    """
    if k < 1:
        raise BadIndexing("bjorner_embed needs k >= 1")
    n = pi.n - 1
    if n < 1:
        raise BadIndexing("Pi_0 has nothing to embed")
    m = k * n
    blocks = to_bjorner_blocks(pi)
    others = sorted((b for b in blocks if 0 not in b), key=min)
    covered = set()
    out = []
    for b in others:
        for j in range(k):
            cij = frozenset(k * e - j for e in b)
            out.append(cij)
            covered |= cij
    c0 = frozenset(e for e in range(m + 1) if e not in covered)
    return from_bjorner_blocks([c0] + out)


def psi_min_distance(witnesses, y):
    """min_i d(x_i, y); the sup over y is taken by the logic module."""
    witnesses = list(witnesses)
    if not witnesses:
        raise DimensionMismatch("psi_min_distance needs at least one witness")
    for w in witnesses:
        if w.n != y.n:
            raise DimensionMismatch("psi witnesses across ground sets")
    return min(partition_metric(w, y) for w in witnesses)
