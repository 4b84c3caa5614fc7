"""Universal Witt-operation polynomials via the ghost map and Dwork lifting.

Everything here is exact arithmetic over Z.  The ghost components of a
coordinate block b are

    w_m(b) = sum_{i=0}^{m} p^i * b_i^(p^(m-i)),

and a target sequence of ghost polynomials is lifted back to coordinate
polynomials by the constructive congruence recursion: once
t_m = phi(t_{m-1}) (mod p^m) holds, with phi the substitution v -> v^p on
every generator, the defect D_m = t_m - sum_{i<m} p^i c_i^(p^(m-i)) is
exactly divisible by p^m and c_m = D_m / p^m.  A failed exact division is
the detector for a wrong derivation and is never silently patched.

The resulting sum/negation/product/Frobenius/scalar-action polynomials are
certified to lie in the free p-polar ring: every monomial has total degree
congruent to 1 mod p-1 in the Witt-coordinate block, which is what makes
them evaluable on p-polar algebras.
"""

from __future__ import annotations

import json
import os
import tempfile
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

from .exact import MultiPoly

KINDS = ("sum", "neg", "prod", "frob", "scalar")

_BLOCK_LETTERS = ("x", "y", "z", "u", "v")

FORMAT = "wittpolar/1"


class DworkCongruenceFailed(ValueError):
    """Ghost target failed t_m = phi(t_{m-1}) mod p^m at some level."""

    def __init__(self, level: int, message: str | None = None):
        self.level = level
        super().__init__(message or f"congruence failed at level {level}")


@dataclass(frozen=True)
class GhostSequence:
    """Ghost component polynomials w_0 .. w_{n-1} of one coordinate block."""

    p: int
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, m):
        return self.entries[m]


@dataclass(frozen=True)
class UnivWittPoly:
    """One coordinate polynomial of a universal Witt operation."""

    kind: str
    level: int
    p: int
    poly: MultiPoly


def block_vars(block: str, n: int) -> list:
    return [f"{block}{i}" for i in range(n)]


def witt_blocks(kind: str, p: int) -> tuple:
    """Variable block letters that form the Witt-coordinate block."""
    if kind == "sum":
        return ("x", "y")
    if kind in ("neg", "frob", "scalar"):
        return ("x",)
    if kind == "prod":
        return _BLOCK_LETTERS[:p]
    raise ValueError(f"unknown kind {kind!r}")


def ghost_polys(p: int, n: int, block: str = "a",
                kill: Callable | None = None) -> GhostSequence:
    """w_m = sum_{i<=m} p^i b_i^(p^(m-i)) for m = 0..n-1."""
    from .gfq import _is_prime
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("need at least one component")
    names = tuple(block_vars(block, n))
    entries = []
    # powers[i] holds b_i^(p^(m-i)) for the current m
    powers = []
    for m in range(n):
        powers = [pw.pow(p, kill) for pw in powers]
        powers.append(MultiPoly.monomial(names, tuple(1 if i == m else 0
                                                      for i in range(n))))
        acc = MultiPoly.zero()
        for i, pw in enumerate(powers):
            acc = acc + pw * (p ** i)
        entries.append(acc)
    return GhostSequence(p, tuple(entries))


def dwork_congruence_holds(p: int, targets: Sequence[MultiPoly]):
    """Level of the first failed congruence, or None if all hold."""
    for m in range(1, len(targets)):
        diff = targets[m] - targets[m - 1].frobenius_vars(p)
        if not diff.divisible_by(p ** m):
            return m
    return None


def dwork_lift(p: int, targets: Sequence[MultiPoly], check: bool = True,
               kill: Callable | None = None) -> list:
    """Unique coordinate polynomials c with w(c) = targets.

    With `check`, the congruence is verified first and a violation raises
    DworkCongruenceFailed; the exact division can then never fail.
    """
    if check:
        bad = dwork_congruence_holds(p, targets)
        if bad is not None:
            raise DworkCongruenceFailed(bad)
    comps: list = []
    powers: list = []
    for m, t in enumerate(targets):
        powers = [pw.pow(p, kill) for pw in powers]
        acc = t
        for i, pw in enumerate(powers):
            acc = acc - pw * (p ** i)
        c = acc.divide_exact_int(p ** m)
        comps.append(c)
        powers.append(c)
    return comps


def _targets(p: int, n: int, kind: str) -> list:
    if kind == "sum":
        gx = ghost_polys(p, n, "x")
        gy = ghost_polys(p, n, "y")
        return [gx[m] + gy[m] for m in range(n)]
    if kind == "neg":
        gx = ghost_polys(p, n, "x")
        return [-gx[m] for m in range(n)]
    if kind == "prod":
        ghosts = [ghost_polys(p, n, b) for b in witt_blocks("prod", p)]
        out = []
        for m in range(n):
            acc = ghosts[0][m]
            for g in ghosts[1:]:
                acc = acc * g[m]
            out.append(acc)
        return out
    if kind == "frob":
        gx = ghost_polys(p, n + 1, "x")
        return [gx[m + 1] for m in range(n)]
    if kind == "scalar":
        ga = ghost_polys(p, n, "a")
        gx = ghost_polys(p, n, "x")
        return [ga[m] * gx[m] for m in range(n)]
    raise ValueError(f"unknown kind {kind!r}")


def polar_degree_check(upoly: UnivWittPoly) -> bool:
    """Every monomial has Witt-block degree = 1 mod (p-1).

    This is the certificate that the polynomial lives in the free p-polar
    ring and can be evaluated on p-polar algebras; for the scalar action it
    constrains the x-block only.
    """
    p = upoly.p
    if p == 2:
        return True
    blocks = witt_blocks(upoly.kind, p)
    names = frozenset(v for v in upoly.poly.vars
                      if v.rstrip("0123456789") in blocks)
    degs = upoly.poly.degree_profile(names)
    return all(d % (p - 1) == 1 % (p - 1) for d in degs)


def _cache_root() -> str:
    root = os.environ.get("WITTPOLAR_CACHE")
    if not root:
        root = os.path.join(os.path.expanduser("~"), ".cache", "wittpolar")
    return root


def cache_path(p: int, n: int, kind: str) -> str:
    return os.path.join(_cache_root(), "wittpolys", f"p{p}_n{n}_{kind}.json")


def family_to_json(p: int, n: int, kind: str, polys: Sequence[UnivWittPoly]) -> dict:
    return {"format": FORMAT, "p": p, "n": n, "kind": kind,
            "levels": [u.poly.to_json() for u in polys]}


def family_from_json(data: dict) -> list:
    p, kind = data["p"], data["kind"]
    return [UnivWittPoly(kind, m, p, MultiPoly.from_json(pj))
            for m, pj in enumerate(data["levels"])]


def _atomic_write(path: str, payload: str):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_memo: dict = {}


def universal_polys(p: int, n: int, kind: str, use_disk: bool = True) -> list:
    """The universal polynomials for one Witt operation, cached per (p,n,kind)."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    from .gfq import _is_prime
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("length must be >= 1")
    if not ((p <= 5 and n <= 2) or (p <= 3 and n <= 4)):
        warnings.warn(f"(p={p}, n={n}) exceeds the desk-scale envelope; "
                      "this may be slow", stacklevel=2)
    key = (p, n, kind)
    if key in _memo:
        return _memo[key]
    path = cache_path(p, n, kind)
    if use_disk and os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        if data.get("format") == FORMAT and (data["p"], data["n"]) == (p, n):
            polys = family_from_json(data)
            _memo[key] = polys
            return polys
    comps = dwork_lift(p, _targets(p, n, kind))
    polys = [UnivWittPoly(kind, m, p, c) for m, c in enumerate(comps)]
    for u in polys:
        if not polar_degree_check(u):
            raise AssertionError(
                f"{kind} level {u.level} escaped the free p-polar ring")
    if use_disk:
        payload = json.dumps(family_to_json(p, n, kind, polys),
                             sort_keys=True, separators=(",", ":"))
        _atomic_write(path, payload)
    _memo[key] = polys
    return polys


def reduce_mod_p(polys: Sequence[UnivWittPoly]) -> list:
    """Coefficientwise reduction to F_p for evaluation in characteristic p."""
    return [u.poly.reduce_mod(u.p) for u in polys]


def ghost_of_coords(p: int, coords: Sequence[MultiPoly], level: int) -> MultiPoly:
    """w_level evaluated at arbitrary coordinate polynomials."""
    acc = MultiPoly.zero()
    for i in range(level + 1):
        acc = acc + coords[i].pow(p ** (level - i)) * (p ** i)
    return acc
