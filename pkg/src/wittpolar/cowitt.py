"""Co-Witt vectors: nonpositively indexed sequences with nilpotent deep tails.

An element stores one tail value c, a finite exception map, and a witness
pair (r, s) certifying that the ideal generated by c and all entries at
indices <= -r has vanishing s-fold iterated polar power.

Addition is the stabilized windowed Witt sum: the entry at index -n is the
eventual value of the level-m sum component evaluated on the windows
(a_{-n-m}, .., a_{-n}) and (b_{-n-m}, .., b_{-n}) as m grows.  The windowed
polynomials are produced by re-running the ghost/Dwork lifting inside a
quotient of Z[window variables] by a monomial ideal; such quotients stay
torsion free and carry the v -> v^p lift, so the recursion's exact
divisions survive verbatim, while three sound kill rules keep the
polynomials tiny:

  * variables bound to 0 are killed on sight;
  * if the span of every window value is nilpotent, monomials die at
    total degree >= the product-length threshold of that span;
  * monomials die at deep-variable degree >= p^s, because p^s deep
    factors can be regrouped (scheme independence) into a complete p-ary
    subtree landing in the vanishing s-fold polar power.

Stabilization is detected by K consecutive equal values under a hard cap,
plus an exact shortcut: once both tails are zero and the window covers all
nonzero entries, deeper windows only prepend zeros, and V-padding leaves
the value literally constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .exact import MultiPoly
from .ppolar import (PPolarAlgebra, PolarIdeal, ideal_generated,
                     ideal_power_nilpotent, polar_power,
                     product_length_threshold, vec_is_zero)
from .wittmod import eval_polar_poly
from .wittuniv import DworkCongruenceFailed


class StabilizationNotDetected(RuntimeError):
    """Windowed sums did not repeat within the iteration cap."""


@dataclass(frozen=True)
class CoWittElement:
    """Eventually-constant sequence indexed by the nonpositive integers."""

    algebra: PPolarAlgebra
    tail: tuple
    exceptions: dict = field(default_factory=dict)
    witness: tuple = (0, 0)

    def __post_init__(self):
        A = self.algebra
        if len(self.tail) != A.dim:
            raise ValueError("tail dimension mismatch")
        clean = {}
        for idx, v in self.exceptions.items():
            if idx > 0:
                raise ValueError("exception indices must be <= 0")
            v = tuple(v)
            if len(v) != A.dim:
                raise ValueError("entry dimension mismatch")
            if v != tuple(self.tail):
                clean[int(idx)] = v
        object.__setattr__(self, "tail", tuple(self.tail))
        object.__setattr__(self, "exceptions", clean)
        object.__setattr__(self, "witness", tuple(self.witness))

    def entry(self, idx: int) -> tuple:
        if idx > 0:
            raise IndexError("co-Witt entries live at indices <= 0")
        return self.exceptions.get(idx, self.tail)

    def depth(self) -> int:
        """Deepest exception index, as a nonnegative number."""
        return max((-i for i in self.exceptions), default=0)

    def is_zero(self) -> bool:
        return vec_is_zero(self.tail) and not self.exceptions

    def __eq__(self, other):
        return (isinstance(other, CoWittElement)
                and self.algebra == other.algebra
                and self.tail == other.tail
                and self.exceptions == other.exceptions)

    def __hash__(self):
        return hash((self.algebra, self.tail,
                     frozenset(self.exceptions.items())))

    def to_json(self) -> dict:
        F = self.algebra.field
        return {"tail": [list(F.coords(a)) for a in self.tail],
                "exceptions": {str(i): [list(F.coords(a)) for a in v]
                               for i, v in sorted(self.exceptions.items())},
                "witness": list(self.witness)}


def cw_from_json(A: PPolarAlgebra, data: dict) -> CoWittElement:
    F = A.field
    tail = tuple(F.from_coords(c) for c in data["tail"])
    exc = {int(i): tuple(F.from_coords(c) for c in v)
           for i, v in data.get("exceptions", {}).items()}
    return CoWittElement(A, tail, exc, tuple(data.get("witness", (0, 0))))


def cw_zero(A: PPolarAlgebra) -> CoWittElement:
    return CoWittElement(A, A.zero, {}, (0, 0))


# -- validity -------------------------------------------------------------------


def _deep_ideal(x: CoWittElement, r: int) -> PolarIdeal:
    gens = [x.tail] + [v for i, v in x.exceptions.items() if i <= -r]
    return ideal_generated(x.algebra, [g for g in gens if any(g)])


def _min_nilpotence(A: PPolarAlgebra, I: PolarIdeal):
    """Least s with vanishing s-fold polar power, or None."""
    cur = I
    for s in range(A.dim + 2):
        if cur.is_zero():
            return s
        cur = polar_power(A, cur)
    return None


def witness_search(x: CoWittElement):
    """Smallest valid (r, s), or None; validity is monotone in r."""
    for r in range(x.depth() + 2):
        s = _min_nilpotence(x.algebra, _deep_ideal(x, r))
        if s is not None:
            return (r, s)
    return None


def cw_validate(x: CoWittElement) -> bool:
    """Check the stored witness; search small (r, s) if it fails."""
    r, s = x.witness
    if r >= 0 and s >= 0 and ideal_power_nilpotent(
            x.algebra, _deep_ideal(x, r), s):
        return True
    return witness_search(x) is not None


def _settled(x: CoWittElement) -> CoWittElement:
    """The element with its witness replaced by the minimal valid one."""
    w = witness_search(x)
    if w is None:
        raise ValueError("not a valid co-Witt element")
    return CoWittElement(x.algebra, x.tail, x.exceptions, w)


# -- windowed stabilized sums ----------------------------------------------------


def _window_value(A: PPolarAlgebra, windows: Sequence[Sequence[tuple]],
                  deep: Sequence[bool], caps: tuple, op: str) -> tuple:
    """Top Witt component of `op` on the given coordinate windows.

    Each window is a list of m+1 vectors (deepest first); `deep[i]` flags
    window position i.  The ghost targets are lifted inside the monomial
    quotient cut out by the kill rules and evaluated on A.
    """
    p = A.p
    t_total, t_deep = caps
    m = len(windows[0]) - 1
    blocks = ["x", "y"][:len(windows)]
    names = tuple(f"{b}{i}" for b in blocks for i in range(m + 1))
    zero = [vec_is_zero(u) for w in windows for u in w]
    deepfl = list(deep) * len(windows)

    def kill(exp) -> bool:
        tot = 0
        dd = 0
        for i, e in enumerate(exp):
            if not e:
                continue
            if zero[i]:
                return True
            tot += e
            if deepfl[i]:
                dd += e
        if t_total is not None and tot >= t_total:
            return True
        if t_deep is not None and dd >= t_deep:
            return True
        return False

    def ghost_entry(offset: int, level: int, sign: int) -> MultiPoly:
        terms = {}
        for i in range(level + 1):
            e = [0] * len(names)
            e[offset + i] = p ** (level - i)
            e = tuple(e)
            if not kill(e):
                terms[e] = sign * p ** i
        return MultiPoly(names, terms)

    if op == "sum":
        targets = [ghost_entry(0, lv, 1) + ghost_entry(m + 1, lv, 1)
                   for lv in range(m + 1)]
    elif op == "neg":
        targets = [ghost_entry(0, lv, -1) for lv in range(m + 1)]
    else:
        raise ValueError(f"unknown windowed op {op!r}")
    comps: list = []
    powers: list = []
    for lv, t in enumerate(targets):
        if lv:
            frob = targets[lv - 1].frobenius_vars(p)
            frob = MultiPoly(frob.vars, {e: c for e, c in frob.terms.items()
                                         if not kill(e)})
            if not (t - frob).divisible_by(p ** lv):
                raise DworkCongruenceFailed(lv)
        powers = [pw.pow(p, kill) for pw in powers]
        acc = t
        for i, pw in enumerate(powers):
            acc = acc - pw * (p ** i)
        c = acc.divide_exact_int(p ** lv)
        comps.append(c)
        powers.append(c)
    top = comps[m].reduce_mod(p)
    binding = {}
    for b, w in zip(blocks, windows):
        for i in range(m + 1):
            binding[f"{b}{i}"] = w[i]
    return eval_polar_poly(A, top, binding)


def _caps_for(A: PPolarAlgebra, elems: Sequence[CoWittElement], r: int) -> tuple:
    deep_vals = []
    all_vals = []
    for e in elems:
        deep_vals.extend([v for i, v in e.exceptions.items() if i <= -r])
        deep_vals.append(e.tail)
        all_vals.extend(e.exceptions.values())
        all_vals.append(e.tail)
    deep_vals = [v for v in deep_vals if any(v)]
    all_vals = [v for v in all_vals if any(v)]
    s_star = _min_nilpotence(A, ideal_generated(A, deep_vals))
    if s_star is None:
        raise ValueError("deep entries do not generate a nilpotent ideal")
    t_total = product_length_threshold(A, all_vals)
    return (t_total, A.p ** s_star)


def stabilized_entry(elems: Sequence[CoWittElement], n: int, op: str = "sum",
                     accessors: Sequence[Callable] | None = None,
                     K: int | None = None, cap: int | None = None,
                     start_m: int = 0) -> tuple:
    """The eventual value of the windowed `op` at index -n."""
    A = elems[0].algebra
    r = max(e.witness[0] for e in elems)
    s = max(e.witness[1] for e in elems)
    entry_fns = accessors or [e.entry for e in elems]
    if K is None:
        K = A.dim + 2
    if cap is None:
        cap = max(16, 4 * (r + s + 1) * max(A.dim, 1))
    caps = _caps_for(A, elems, r)

    def windows_at(m: int):
        idxs = [-n - m + i for i in range(m + 1)]
        deep = [i <= -r for i in idxs]
        return [[fn(i) for i in idxs] for fn in entry_fns], deep

    # exact shortcut: zero tails and a window already covering every
    # nonzero entry mean deeper windows only prepend zeros (V-padding)
    if accessors is None and all(vec_is_zero(e.tail) for e in elems):
        deepest = max([0] + [-i for e in elems
                             for i, v in e.exceptions.items() if any(v)])
        m0 = max(start_m, deepest - n, 0)
        windows, deep = windows_at(m0)
        return _window_value(A, windows, deep, caps, op)

    history: list = []
    for m in range(start_m, cap + 1):
        windows, deep = windows_at(m)
        v = _window_value(A, windows, deep, caps, op)
        history.append(v)
        if len(history) >= K and all(h == v for h in history[-K:]):
            return v
    raise StabilizationNotDetected(
        f"no repeat of length {K} within window cap {cap} at index {-n}")


def _stabilized_op(elems: list, op: str, K, cap) -> CoWittElement:
    A = elems[0].algebra
    tail_fns = [(lambda i, e=e: e.tail) for e in elems]
    new_tail = stabilized_entry(elems, 0, op, accessors=tail_fns, K=K, cap=cap)
    n_explicit = max(max(e.depth() for e in elems),
                     max(e.witness[0] for e in elems))
    exceptions = {}
    for nn in range(n_explicit + 1):
        v = stabilized_entry(elems, nn, op, K=K, cap=cap)
        if v != new_tail:
            exceptions[-nn] = v
    r = max(e.witness[0] for e in elems)
    s = 2 * max(e.witness[1] for e in elems) + 1
    return _settled(CoWittElement(A, new_tail, exceptions, (r, s)))


def cw_add(x: CoWittElement, y: CoWittElement, K: int | None = None,
           cap: int | None = None) -> CoWittElement:
    """Stabilized sum; entries deeper than every exception reuse one
    translation-invariant computation for the new tail."""
    if x.algebra != y.algebra:
        raise ValueError("operands live over different algebras")
    x = _settled(x)
    y = _settled(y)
    if x.is_zero():
        return y
    if y.is_zero():
        return x
    return _stabilized_op([x, y], "sum", K, cap)


def cw_neg(x: CoWittElement, K: int | None = None,
           cap: int | None = None) -> CoWittElement:
    """Stabilized windowed Witt negation (componentwise minus for odd p)."""
    x = _settled(x)
    if x.is_zero():
        return x
    return _stabilized_op([x], "neg", K, cap)


def cw_F(x: CoWittElement) -> CoWittElement:
    """Componentwise p-th power in place."""
    A = x.algebra
    return CoWittElement(A, A.ppow(x.tail),
                         {i: A.ppow(v) for i, v in x.exceptions.items()},
                         x.witness)


def cw_V(x: CoWittElement) -> CoWittElement:
    """Shift toward index 0, dropping the old index-0 entry."""
    r, s = x.witness
    return CoWittElement(x.algebra, x.tail,
                         {i + 1: v for i, v in x.exceptions.items() if i <= -1},
                         (max(r - 1, 0), s))


# -- the unipotent part ---------------------------------------------------------


def cw_from_cwu(c) -> CoWittElement:
    """Embed a CW^u class: finite support ending at index 0, zero tail."""
    A = c.algebra
    ex = {}
    L = c.length
    for i, v in enumerate(c.rep):
        ex[-(L - 1 - i)] = v
    return CoWittElement(A, A.zero, ex, (0, 0))


def cwu_from_cw(x: CoWittElement):
    """Extract the CW^u class of a finite-support element (zero tail)."""
    from .wittmod import CwuClass, cwu_class, witt
    A = x.algebra
    if not vec_is_zero(x.tail):
        raise ValueError("element does not have finite support")
    if not x.exceptions:
        return CwuClass(A, ())
    depth = x.depth()
    coords = [x.entry(-depth + i) for i in range(depth + 1)]
    return cwu_class(witt(A, coords))
