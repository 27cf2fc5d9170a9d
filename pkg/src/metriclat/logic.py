"""The continuous-logic DSL evaluated exactly over finite metric lattices.

Terms are built from variables, 0, 1, join and meet (meet is an extension
justified by its definability on the models we evaluate).  Formulas combine
atomic distances with max, min, truncated subtraction, sums, scalar
multiples and sup/inf quantifiers, optionally relativized to the metrically
modular elements (MOD) or to the selector set of a term (SEL).

Two evaluators share one semantics: ``evaluate`` is the reference
implementation on Fractions; ``evaluate_fast`` runs the same recursion on
scaled integers with the innermost quantifier block vectorized through
numpy.  Both are exact.

Sums and scalar multiples are evaluated without clamping: the axiom
sentences use (a + b) tsub (c + d) as one composite connective, and
clamping the inner sums at 1 would change values (the modularity sentence
on P_4 must come out 1/3, which forces |x| + |y| = 4/3 to survive the
intermediate step).  Range assertions therefore apply to quantifier and
root values, not to the affine layer.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import DomainUnavailable, NotPrenex, ParseError, UnboundVariable
from .lattice import modular_elements
from .rationals import format_rational


# -- abstract syntax ----------------------------------------------------------


@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class TZero:
    pass


@dataclass(frozen=True)
class TOne:
    pass


@dataclass(frozen=True)
class TJoin:
    left: object
    right: object


@dataclass(frozen=True)
class TMeet:
    left: object
    right: object


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Dist:
    left: object
    right: object


@dataclass(frozen=True)
class DistPrime:
    left: object
    right: object


@dataclass(frozen=True)
class Norm:
    term: object


@dataclass(frozen=True)
class Max:
    items: tuple


@dataclass(frozen=True)
class Min:
    items: tuple


@dataclass(frozen=True)
class TSub:
    left: object
    right: object


@dataclass(frozen=True)
class Add:
    items: tuple


@dataclass(frozen=True)
class Scale:
    factor: Fraction
    body: object


@dataclass(frozen=True)
class SelDomain:
    term: object


ALL = "ALL"
MOD = "MOD"


@dataclass(frozen=True)
class Sup:
    var: str
    body: object
    domain: object = ALL


@dataclass(frozen=True)
class Inf:
    var: str
    body: object
    domain: object = ALL


_QUANTS = (Sup, Inf)


def term_variables(t):
    if isinstance(t, TVar):
        return {t.name}
    if isinstance(t, (TJoin, TMeet)):
        return term_variables(t.left) | term_variables(t.right)
    return set()


def free_variables(f):
    if isinstance(f, Const):
        return set()
    if isinstance(f, (Dist, DistPrime)):
        return term_variables(f.left) | term_variables(f.right)
    if isinstance(f, Norm):
        return term_variables(f.term)
    if isinstance(f, (Max, Min, Add)):
        out = set()
        for g in f.items:
            out |= free_variables(g)
        return out
    if isinstance(f, TSub):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, Scale):
        return free_variables(f.body)
    if isinstance(f, _QUANTS):
        out = free_variables(f.body) - {f.var}
        if isinstance(f.domain, SelDomain):
            out |= term_variables(f.domain.term)
        return out
    raise TypeError(f"not a formula node: {f!r}")


def has_quantifier(f):
    if isinstance(f, _QUANTS):
        return True
    if isinstance(f, (Max, Min, Add)):
        return any(has_quantifier(g) for g in f.items)
    if isinstance(f, TSub):
        return has_quantifier(f.left) or has_quantifier(f.right)
    if isinstance(f, Scale):
        return has_quantifier(f.body)
    return False


# -- parser -------------------------------------------------------------------


_RESERVED = {
    "sup", "inf", "in", "MOD", "SEL", "max", "min", "tsub", "add", "scale",
    "d", "dp", "norm", "join", "meet",
}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([().,/]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", position=pos)
        num, ident, sym = m.groups()
        if num is not None:
            tokens.append(("int", num, m.start(1)))
        elif ident is not None:
            tokens.append(("ident", ident, m.start(2)))
        else:
            tokens.append(("sym", sym, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, free):
        self.tokens = _tokenize(text)
        self.i = 0
        self.scope = set(free)

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(
                f"unexpected token {tok[1]!r}", position=tok[2],
                expected=value or kind,
            )
        return tok

    def parse_formula(self):
        kind, value, pos = self.peek()
        if kind == "ident" and value in ("sup", "inf"):
            return self.parse_quantifier()
        return self.parse_connective()

    def parse_quantifier(self):
        op = self.next()[1]
        kind, name, pos = self.next()
        if kind != "ident" or name in _RESERVED:
            raise ParseError(f"bad variable name {name!r}", position=pos)
        domain = ALL
        if self.peek()[:2] == ("ident", "in"):
            self.next()
            kind, dom, pos = self.next()
            if dom == "MOD":
                domain = MOD
            elif dom == "SEL":
                self.expect("sym", "(")
                domain = SelDomain(self.parse_term())
                self.expect("sym", ")")
            else:
                raise ParseError(
                    f"bad domain {dom!r}", position=pos, expected="MOD or SEL(term)"
                )
        self.expect("sym", ".")
        shadowed = name in self.scope
        self.scope.add(name)
        body = self.parse_formula()
        if not shadowed:
            self.scope.discard(name)
        cls = Sup if op == "sup" else Inf
        return cls(name, body, domain)

    def parse_rational(self):
        tok = self.expect("int")
        num = int(tok[1])
        if self.peek()[:2] == ("sym", "/"):
            self.next()
            den = int(self.expect("int")[1])
            if den == 0:
                raise ParseError("zero denominator", position=tok[2])
            return Fraction(num, den)
        return Fraction(num)

    def parse_connective(self):
        kind, value, pos = self.peek()
        if kind == "int":
            q = self.parse_rational()
            if not 0 <= q <= 1:
                raise ParseError(f"constant {q} outside [0,1]", position=pos)
            return Const(q)
        if kind != "ident":
            raise ParseError(f"unexpected token {value!r}", position=pos,
                             expected="formula")
        if value in ("max", "min", "add"):
            self.next()
            self.expect("sym", "(")
            items = [self.parse_formula()]
            while self.peek()[:2] == ("sym", ","):
                self.next()
                items.append(self.parse_formula())
            self.expect("sym", ")")
            cls = {"max": Max, "min": Min, "add": Add}[value]
            return cls(tuple(items))
        if value == "tsub":
            self.next()
            self.expect("sym", "(")
            left = self.parse_formula()
            self.expect("sym", ",")
            right = self.parse_formula()
            self.expect("sym", ")")
            return TSub(left, right)
        if value == "scale":
            self.next()
            self.expect("sym", "(")
            q = self.parse_rational()
            self.expect("sym", ",")
            body = self.parse_formula()
            self.expect("sym", ")")
            return Scale(q, body)
        if value in ("d", "dp"):
            self.next()
            self.expect("sym", "(")
            left = self.parse_term()
            self.expect("sym", ",")
            right = self.parse_term()
            self.expect("sym", ")")
            return (Dist if value == "d" else DistPrime)(left, right)
        if value == "norm":
            self.next()
            self.expect("sym", "(")
            t = self.parse_term()
            self.expect("sym", ")")
            return Norm(t)
        raise ParseError(f"unexpected token {value!r}", position=pos,
                         expected="formula")

    def parse_term(self):
        kind, value, pos = self.next()
        if kind == "int":
            if value == "0":
                return TZero()
            if value == "1":
                return TOne()
            raise ParseError(f"bad term constant {value!r}", position=pos,
                             expected="0 or 1")
        if kind != "ident":
            raise ParseError(f"unexpected token {value!r}", position=pos,
                             expected="term")
        if value in ("join", "meet"):
            self.expect("sym", "(")
            left = self.parse_term()
            self.expect("sym", ",")
            right = self.parse_term()
            self.expect("sym", ")")
            return (TJoin if value == "join" else TMeet)(left, right)
        if value in _RESERVED:
            raise ParseError(f"reserved word {value!r} used as variable",
                             position=pos)
        if value not in self.scope:
            raise UnboundVariable(value)
        return TVar(value)


def parse_formula(text, free=()):
    """Parse the DSL grammar; ``free`` declares permitted free variables."""
    p = _Parser(text, free)
    out = p.parse_formula()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"trailing input {tok[1]!r}", position=tok[2])
    return out


def format_term(t):
    if isinstance(t, TVar):
        return t.name
    if isinstance(t, TZero):
        return "0"
    if isinstance(t, TOne):
        return "1"
    if isinstance(t, TJoin):
        return f"join({format_term(t.left)}, {format_term(t.right)})"
    if isinstance(t, TMeet):
        return f"meet({format_term(t.left)}, {format_term(t.right)})"
    raise TypeError(f"not a term node: {t!r}")


def _format_rat(q):
    return str(q.numerator) if q.denominator == 1 else format_rational(q)


def format_formula(f):
    """Canonical text; parse(format(f)) reproduces f node for node."""
    if isinstance(f, Const):
        return _format_rat(f.value)
    if isinstance(f, Dist):
        return f"d({format_term(f.left)}, {format_term(f.right)})"
    if isinstance(f, DistPrime):
        return f"dp({format_term(f.left)}, {format_term(f.right)})"
    if isinstance(f, Norm):
        return f"norm({format_term(f.term)})"
    if isinstance(f, Max):
        return "max(" + ", ".join(format_formula(g) for g in f.items) + ")"
    if isinstance(f, Min):
        return "min(" + ", ".join(format_formula(g) for g in f.items) + ")"
    if isinstance(f, Add):
        return "add(" + ", ".join(format_formula(g) for g in f.items) + ")"
    if isinstance(f, TSub):
        return f"tsub({format_formula(f.left)}, {format_formula(f.right)})"
    if isinstance(f, Scale):
        return f"scale({_format_rat(f.factor)}, {format_formula(f.body)})"
    if isinstance(f, _QUANTS):
        op = "sup" if isinstance(f, Sup) else "inf"
        if f.domain == ALL:
            dom = ""
        elif f.domain == MOD:
            dom = " in MOD"
        else:
            dom = f" in SEL({format_term(f.domain.term)})"
        return f"{op} {f.var}{dom} . {format_formula(f.body)}"
    raise TypeError(f"not a formula node: {f!r}")


# -- evaluation ---------------------------------------------------------------


def modular_indices(L):
    cached = getattr(L, "_modular_cache", None)
    if cached is None:
        cached = modular_elements(L)
        L._modular_cache = cached
    return cached


def selector_indices(L, x):
    """{y in MOD : x + y = 1 and |x| + |y| = 1}; the selector set of x."""
    top = L.top
    r = L.rank_num
    target = L.scale - int(r[x])
    return [
        y for y in modular_indices(L)
        if int(L.join_table[x, y]) == top and int(r[y]) == target
    ]


def _domain_indices(domain, L, env):
    if domain == ALL:
        return range(L.n_elements)
    if domain == MOD:
        return modular_indices(L)
    x = _eval_term_scalar(domain.term, L, env)
    sel = selector_indices(L, x)
    if not sel:
        raise DomainUnavailable(
            f"element {L.elements[x]!r} has no selectors in this model"
        )
    return sel


def _eval_term_scalar(t, L, env):
    if isinstance(t, TVar):
        if t.name not in env:
            raise UnboundVariable(t.name)
        return env[t.name]
    if isinstance(t, TZero):
        return L.bottom
    if isinstance(t, TOne):
        return L.top
    if isinstance(t, TJoin):
        return L.join(_eval_term_scalar(t.left, L, env),
                      _eval_term_scalar(t.right, L, env))
    if isinstance(t, TMeet):
        return L.meet(_eval_term_scalar(t.left, L, env),
                      _eval_term_scalar(t.right, L, env))
    raise TypeError(f"not a term node: {t!r}")


def evaluate(f, L, assignment=None, check_bounds=True):
    """Reference evaluator: exact Fractions, plain recursion."""
    env = dict(assignment or {})
    missing = free_variables(f) - set(env)
    if missing:
        raise UnboundVariable(sorted(missing)[0])
    val = _eval_frac(f, L, env, check_bounds)
    if check_bounds and not 0 <= val <= 1:
        raise AssertionError(f"root value {val} outside [0,1]")
    return val


def _eval_frac(f, L, env, check):
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Dist):
        return L.metric(_eval_term_scalar(f.left, L, env),
                        _eval_term_scalar(f.right, L, env))
    if isinstance(f, DistPrime):
        x = _eval_term_scalar(f.left, L, env)
        y = _eval_term_scalar(f.right, L, env)
        r = L.rank_num
        return Fraction(2 * int(r[L.join(x, y)]) - int(r[x]) - int(r[y]), L.scale)
    if isinstance(f, Norm):
        return L.norm(_eval_term_scalar(f.term, L, env))
    if isinstance(f, Max):
        return max(_eval_frac(g, L, env, check) for g in f.items)
    if isinstance(f, Min):
        return min(_eval_frac(g, L, env, check) for g in f.items)
    if isinstance(f, TSub):
        return max(
            _eval_frac(f.left, L, env, check) - _eval_frac(f.right, L, env, check),
            Fraction(0),
        )
    if isinstance(f, Add):
        return sum((_eval_frac(g, L, env, check) for g in f.items), Fraction(0))
    if isinstance(f, Scale):
        return f.factor * _eval_frac(f.body, L, env, check)
    if isinstance(f, _QUANTS):
        best = None
        pick = max if isinstance(f, Sup) else min
        shadowed = env.get(f.var)
        had = f.var in env
        for v in _domain_indices(f.domain, L, env):
            env[f.var] = v
            val = _eval_frac(f.body, L, env, check)
            best = val if best is None else pick(best, val)
        if had:
            env[f.var] = shadowed
        else:
            env.pop(f.var, None)
        if best is None:
            raise DomainUnavailable(f"empty domain for {f.var}")
        if check and not 0 <= best <= 1:
            raise AssertionError(f"quantifier value {best} outside [0,1]")
        return best
    raise TypeError(f"not a formula node: {f!r}")


# -- scaled-integer evaluator with a vectorized innermost block ---------------


def _denominator_bound(f, scale):
    if isinstance(f, Const):
        return f.value.denominator
    if isinstance(f, (Dist, DistPrime, Norm)):
        return scale
    if isinstance(f, (Max, Min, Add)):
        out = 1
        for g in f.items:
            out = lcm(out, _denominator_bound(g, scale))
        return out
    if isinstance(f, TSub):
        return lcm(_denominator_bound(f.left, scale),
                   _denominator_bound(f.right, scale))
    if isinstance(f, Scale):
        return f.factor.denominator * _denominator_bound(f.body, scale)
    if isinstance(f, _QUANTS):
        return _denominator_bound(f.body, scale)
    raise TypeError(f"not a formula node: {f!r}")


class _FastCtx:
    def __init__(self, L, G):
        self.L = L
        self.G = G
        self.mult = G // L.scale
        self.J = L.join_table
        self.M = L.meet_table
        self.D = L.dnum.astype(np.int64) * self.mult
        self.R = L.rank_num.astype(np.int64) * self.mult


def evaluate_fast(f, L, assignment=None, check_bounds=True):
    """Exact evaluator on scaled integers; innermost quantifiers vectorized.

    Semantically identical to ``evaluate``; used for the big sweeps.
    """
    env = dict(assignment or {})
    missing = free_variables(f) - set(env)
    if missing:
        raise UnboundVariable(sorted(missing)[0])
    G = _denominator_bound(f, L.scale)
    if G > 1 << 40:
        raise OverflowError("scaled-integer evaluation would overflow; "
                            "use evaluate() for this formula")
    cache = getattr(L, "_fastctx_cache", None)
    if cache is None:
        cache = {}
        L._fastctx_cache = cache
    ctx = cache.get(G)
    if ctx is None:
        ctx = _FastCtx(L, G)
        cache[G] = ctx
    val = _eval_int(f, ctx, env)
    if check_bounds and not 0 <= val <= G:
        raise AssertionError(f"root value {Fraction(val, G)} outside [0,1]")
    return Fraction(val, G)


def _eval_term_vec(t, ctx, env, vec):
    """Term value as an int or a broadcastable numpy index array."""
    if isinstance(t, TVar):
        if t.name in vec:
            return vec[t.name]
        if t.name not in env:
            raise UnboundVariable(t.name)
        return env[t.name]
    if isinstance(t, TZero):
        return ctx.L.bottom
    if isinstance(t, TOne):
        return ctx.L.top
    if isinstance(t, (TJoin, TMeet)):
        a = _eval_term_vec(t.left, ctx, env, vec)
        b = _eval_term_vec(t.right, ctx, env, vec)
        table = ctx.J if isinstance(t, TJoin) else ctx.M
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            return int(table[a, b])
        return table[a, b]
    raise TypeError(f"not a term node: {t!r}")


def _eval_vec(f, ctx, env, vec):
    """Quantifier-free body over vectorized variables; values are ints * G."""
    if isinstance(f, Const):
        return int(f.value * ctx.G)
    if isinstance(f, Dist):
        a = _eval_term_vec(f.left, ctx, env, vec)
        b = _eval_term_vec(f.right, ctx, env, vec)
        out = ctx.D[a, b]
        return int(out) if np.ndim(out) == 0 else out
    if isinstance(f, DistPrime):
        a = _eval_term_vec(f.left, ctx, env, vec)
        b = _eval_term_vec(f.right, ctx, env, vec)
        out = 2 * ctx.R[ctx.J[a, b]] - ctx.R[a] - ctx.R[b]
        return int(out) if np.ndim(out) == 0 else out
    if isinstance(f, Norm):
        a = _eval_term_vec(f.term, ctx, env, vec)
        out = ctx.R[a]
        return int(out) if np.ndim(out) == 0 else out
    if isinstance(f, (Max, Min)):
        vals = [_eval_vec(g, ctx, env, vec) for g in f.items]
        op = np.maximum if isinstance(f, Max) else np.minimum
        acc = vals[0]
        for v in vals[1:]:
            acc = op(acc, v)
        return acc
    if isinstance(f, TSub):
        return np.maximum(
            np.asarray(_eval_vec(f.left, ctx, env, vec))
            - _eval_vec(f.right, ctx, env, vec),
            0,
        )
    if isinstance(f, Add):
        acc = _eval_vec(f.items[0], ctx, env, vec)
        for g in f.items[1:]:
            acc = acc + _eval_vec(g, ctx, env, vec)
        return acc
    if isinstance(f, Scale):
        v = _eval_vec(f.body, ctx, env, vec)
        num, den = f.factor.numerator, f.factor.denominator
        scaled = np.asarray(v) * num
        if den != 1:
            q, rem = np.divmod(scaled, den)
            if np.any(rem):
                raise AssertionError("scale broke integrality; denominator bound bug")
            scaled = q
        return int(scaled) if np.ndim(scaled) == 0 else scaled
    raise TypeError(f"unexpected node under vectorized body: {f!r}")


def _sel_depends_on(domain, var):
    return isinstance(domain, SelDomain) and var in term_variables(domain.term)


def _eval_int(f, ctx, env):
    if not isinstance(f, _QUANTS):
        if isinstance(f, (Max, Min)):
            vals = [_eval_int(g, ctx, env) for g in f.items]
            return max(vals) if isinstance(f, Max) else min(vals)
        if isinstance(f, TSub):
            return max(_eval_int(f.left, ctx, env) - _eval_int(f.right, ctx, env), 0)
        if isinstance(f, Add):
            return sum(_eval_int(g, ctx, env) for g in f.items)
        if isinstance(f, Scale):
            v = _eval_int(f.body, ctx, env) * f.factor.numerator
            q, rem = divmod(v, f.factor.denominator)
            if rem:
                raise AssertionError("scale broke integrality; denominator bound bug")
            return q
        return _eval_vec(f, ctx, env, {})

    # quantifier: vectorize an innermost chain of up to two quantifiers
    # whose body is quantifier-free; otherwise loop this variable.
    L = ctx.L
    body = f.body
    if has_quantifier(body) and not (
        isinstance(body, _QUANTS)
        and not has_quantifier(body.body)
        and not _sel_depends_on(body.domain, f.var)
    ):
        pick = max if isinstance(f, Sup) else min
        best = None
        shadowed = env.get(f.var)
        had = f.var in env
        for v in _domain_indices(f.domain, L, env):
            env[f.var] = v
            val = _eval_int(f.body, ctx, env)
            best = val if best is None else pick(best, val)
        if had:
            env[f.var] = shadowed
        else:
            env.pop(f.var, None)
        if best is None:
            raise DomainUnavailable(f"empty domain for {f.var}")
        return best

    chain = [f]
    if isinstance(body, _QUANTS):
        chain.append(body)
        body = body.body

    dom0 = np.fromiter(_domain_indices(chain[0].domain, L, env), dtype=np.int64)
    if dom0.size == 0:
        raise DomainUnavailable(f"empty domain for {chain[0].var}")
    vec = {}
    if len(chain) == 1:
        vec[chain[0].var] = dom0
    else:
        # SEL domains depending on the outer variable were routed to the
        # scalar loop above, so the inner domain is fixed here
        vec[chain[0].var] = dom0[:, None]
        dom1 = np.fromiter(_domain_indices(chain[1].domain, L, env), dtype=np.int64)
        if dom1.size == 0:
            raise DomainUnavailable(f"empty domain for {chain[1].var}")
        vec[chain[1].var] = dom1[None, :]

    arr = np.asarray(_eval_vec(body, ctx, env, vec))
    if len(chain) == 2:
        shape = (vec[chain[0].var].size, vec[chain[1].var].size)
        arr = np.broadcast_to(arr, shape)
        arr = arr.max(axis=1) if isinstance(chain[1], Sup) else arr.min(axis=1)
    else:
        arr = np.broadcast_to(arr, (dom0.size,))
    return int(arr.max() if isinstance(chain[0], Sup) else arr.min())


# -- the named sentences of the axiom systems ---------------------------------


def _v(name):
    return TVar(name)


def _d(a, b):
    return Dist(a, b)


def _abs_diff(a, b):
    return Max((TSub(a, b), TSub(b, a)))


def phi_formula(xv="x", yv="y", zv="z"):
    """Modularity defect phi(x, y) with free variables x, y."""
    x, y, z = _v(xv), _v(yv), _v(zv)
    return Inf(
        zv,
        Max((
            TSub(Add((Norm(x), Norm(y))), Add((Norm(TJoin(x, y)), Norm(z)))),
            _d(TJoin(x, z), x),
            _d(TJoin(y, z), y),
        )),
    )


def chi_formula(yv="y", zv="z", wv="w"):
    """chi_z(y): how well z can be rebuilt into a selector of y, over MOD."""
    y, z, w = _v(yv), _v(zv), _v(wv)
    gap = _abs_diff(Add((Norm(y), Norm(z))), Const(Fraction(1)))
    gap_w = _abs_diff(Add((Norm(w), Norm(y))), Const(Fraction(1)))
    return Inf(
        wv,
        Max((
            TSub(_d(z, w), gap),
            _d(TJoin(z, w), z),
            _d(TJoin(w, y), TOne()),
            TSub(gap_w, Scale(Fraction(1, 4), gap)),
        )),
        MOD,
    )


def psi_formula(k):
    """psi_k(x1..xk) = sup_y min_i d(x_i, y)."""
    return Sup(
        "y", Min(tuple(_d(_v(f"x{i+1}"), _v("y")) for i in range(k)))
    )


def builtin_sentences():
    """The named formula registry: axiom sentences plus phi, chi and psi."""
    x, y, z, t, w = (_v(n) for n in "xyztw")
    reg = {}
    reg["tml1"] = _abs_diff(_d(TZero(), TOne()), Const(Fraction(1)))
    reg["tml2"] = Sup("x", Add((_d(TJoin(x, TZero()), x), _d(TJoin(x, TOne()), TOne()))))
    reg["tml3"] = Sup("x", _d(TJoin(x, x), x))
    reg["tml4"] = Sup("x", Sup("y", _d(TJoin(x, y), TJoin(y, x))))
    reg["tml5"] = Sup("x", Sup("y", Sup("z",
        _d(TJoin(TJoin(x, y), z), TJoin(x, TJoin(y, z))))))
    reg["tml6"] = Sup("x", Sup("y", Sup("z",
        TSub(_d(TJoin(x, z), TJoin(y, z)), _d(x, y)))))
    reg["tml7"] = Sup("x", Sup("y", Sup("z", TSub(
        Add((_d(x, y), _d(z, TZero()))),
        Add((_d(TJoin(x, y), TZero()), _d(TJoin(x, z), x), _d(TJoin(y, z), y))),
    ))))
    reg["sigma_mod"] = Sup("x", Sup("y", phi_formula()))
    reg["sigma_dist"] = Sup("x", Sup("y", Sup("z", Inf("t", Inf("w", Max((
        _d(TMeet(x, y), t),
        _d(TMeet(x, z), w),
        _d(TMeet(x, TJoin(y, z)), TJoin(t, w)),
    )))))))
    # zero exactly when every x has sup_y d(x, y) = 1 (weak complementation);
    # with the quantifiers the other way around the value is 1 on any model
    reg["sigma_wcom"] = Sup("x", Inf("y", TSub(Const(Fraction(1)), _d(x, y))))
    reg["sigma_d_eq_dprime"] = Sup("x", Sup("y", _abs_diff(_d(x, y), DistPrime(x, y))))
    # the probability-algebra axioms expressible without a complement symbol;
    # mu is the norm and mu(x delta y) = |x+y| - |xy| on these models
    reg["pr_mu_bounds"] = Max((Norm(TZero()), _abs_diff(Norm(TOne()), Const(Fraction(1)))))
    reg["pr_meet_comm"] = Sup("x", Sup("y", _d(TMeet(x, y), TMeet(y, x))))
    reg["pr_meet_assoc"] = Sup("x", Sup("y", Sup("z",
        _d(TMeet(TMeet(x, y), z), TMeet(x, TMeet(y, z))))))
    reg["pr_distrib"] = Sup("x", Sup("y", Sup("z",
        _d(TMeet(x, TJoin(y, z)), TJoin(TMeet(x, y), TMeet(x, z))))))
    reg["pr_mu_meet_monotone"] = Sup("x", Sup("y", TSub(Norm(TMeet(x, y)), Norm(x))))
    reg["pr_mu_join_monotone"] = Sup("x", Sup("y", TSub(Norm(x), Norm(TJoin(x, y)))))
    reg["pr_mu_modular"] = Sup("x", Sup("y", _abs_diff(
        TSub(Norm(x), Norm(TMeet(x, y))),
        TSub(Norm(TJoin(x, y)), Norm(y)),
    )))
    reg["pr_d_symm_diff"] = Sup("x", Sup("y", _abs_diff(
        _d(x, y), TSub(Norm(TJoin(x, y)), Norm(TMeet(x, y))),
    )))
    reg["phi"] = phi_formula()
    reg["chi"] = chi_formula()
    reg["chi_bound_gap"] = Sup("y", Sup("z", TSub(
        chi_formula(), Scale(Fraction(2), _d(TJoin(y, z), TOne()))
    ), MOD))
    reg["psi_2"] = psi_formula(2)
    reg["psi_3"] = psi_formula(3)
    return reg


def prenex_classify(f):
    """Quantifier-prefix shape: universal, existential, forall-exists or other.

    The formula must be in prenex form (a quantifier prefix over a
    quantifier-free body); relativized domains are ignored for the shape.
    """
    prefix = []
    node = f
    while isinstance(node, _QUANTS):
        prefix.append(isinstance(node, Sup))
        node = node.body
    if has_quantifier(node):
        raise NotPrenex("quantifier below a connective; not in prenex form")
    if all(prefix):
        return "universal"
    if not any(prefix):
        return "existential"
    first_inf = prefix.index(False)
    if all(not q for q in prefix[first_inf:]):
        return "forall-exists"
    return "other"
