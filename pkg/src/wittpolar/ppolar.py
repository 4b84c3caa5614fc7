"""Finite-dimensional p-polar algebras over GF(q).

A p-polar algebra with basis e_0..e_{d-1} is stored as the symmetric
structure tensor mu: sorted p-multisets of basis indices -> vectors in
F_q^d (absent keys mean zero).  Symmetry is structural, multilinearity is
automatic from the tensor representation, and the permutation-invariance
axiom on (2p-1)-fold products is checked by `check_assoc`.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product
from typing import Iterable, Sequence

from .gfq import (FqField, echelon_insert, echelon_reduce, echelon_span,
                  embed, fp_matrix_of_additive, gf_build, in_span,
                  linear_kernel)


class LengthNotAdmissible(ValueError):
    """Product of n elements requested with n != 1 mod (p-1)."""


def vec_add(field: FqField, u: Sequence[int], v: Sequence[int]) -> tuple:
    return tuple(field.add(a, b) for a, b in zip(u, v))

def vec_sub(field: FqField, u: Sequence[int], v: Sequence[int]) -> tuple:
    return tuple(field.sub(a, b) for a, b in zip(u, v))

def vec_scale(field: FqField, c: int, v: Sequence[int]) -> tuple:
    if c == 0:
        return (0,) * len(v)
    if c == 1:
        return tuple(v)
    return tuple(field.mul(c, a) for a in v)

def vec_is_zero(v: Sequence[int]) -> bool:
    return not any(v)


class PPolarAlgebra:
    """Symmetric p-multilinear structure on F_q^d satisfying (ASSOC)."""

    __slots__ = ("field", "dim", "mu", "mu_is_zero")

    def __init__(self, field: FqField, dim: int, mu: dict):
        self.field = field
        self.dim = dim
        clean = {}
        p = field.p
        for key, val in mu.items():
            key = tuple(key)
            if len(key) != p or tuple(sorted(key)) != key:
                raise ValueError(f"mu key {key} must be a sorted p-multiset")
            if any(i < 0 or i >= dim for i in key):
                raise ValueError(f"mu key {key} out of basis range")
            val = tuple(val)
            if len(val) != dim:
                raise ValueError("mu value has wrong dimension")
            if any(val):
                clean[key] = val
        self.mu = clean
        self.mu_is_zero = not clean

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def zero(self) -> tuple:
        return (0,) * self.dim

    def basis_vector(self, i: int) -> tuple:
        return tuple(1 if j == i else 0 for j in range(self.dim))

    def __eq__(self, other):
        return (isinstance(other, PPolarAlgebra) and self.field == other.field
                and self.dim == other.dim and self.mu == other.mu)

    def __hash__(self):
        return hash((self.field, self.dim, frozenset(self.mu.items())))

    def __repr__(self):
        return f"PPolarAlgebra(p={self.p}, dim={self.dim} over {self.field!r})"

    def mu_basis(self, key: tuple) -> tuple:
        return self.mu.get(tuple(sorted(key)), self.zero)

    def mu_p(self, vecs: Sequence[Sequence[int]]) -> tuple:
        """One application of mu to exactly p vectors (multilinear expansion)."""
        F = self.field
        if len(vecs) != self.p:
            raise ValueError(f"mu takes exactly {self.p} arguments")
        if self.mu_is_zero:
            return self.zero
        supports = [[(i, c) for i, c in enumerate(v) if c] for v in vecs]
        out = list(self.zero)
        for combo in product(*supports):
            key = tuple(sorted(i for i, _ in combo))
            val = self.mu.get(key)
            if val is None:
                continue
            coeff = 1
            for _, c in combo:
                coeff = F.mul(coeff, c)
            for j, vj in enumerate(val):
                if vj:
                    out[j] = F.add(out[j], F.mul(coeff, vj))
        return tuple(out)

    def mu_eval(self, elements: Sequence[Sequence[int]]) -> tuple:
        """The unique product of the given elements (left-associative scheme)."""
        n = len(elements)
        p = self.p
        if n < 1 or (n - 1) % (p - 1):
            raise LengthNotAdmissible(
                f"cannot multiply {n} elements in a {p}-polar algebra")
        elements = [tuple(v) for v in elements]
        acc = elements[0] if n == 1 else self.mu_p(elements[:p])
        pos = p
        while pos < n:
            acc = self.mu_p([acc] + elements[pos:pos + p - 1])
            pos += p - 1
        return acc

    def ppow(self, v: Sequence[int], times: int = 1) -> tuple:
        """Iterated p-th power v^(p^times)."""
        for _ in range(times):
            v = self.mu_p([v] * self.p)
        return tuple(v)

    def to_json(self) -> dict:
        F = self.field
        mu = []
        for key in sorted(self.mu):
            val = [list(F.coords(a)) for a in self.mu[key]]
            mu.append({"idx": list(key), "val": val})
        return {"p": self.p, "field": F.to_json(), "dim": self.dim, "mu": mu}

    @classmethod
    def from_json(cls, data: dict) -> "PPolarAlgebra":
        field = FqField.from_json(data["field"])
        if data.get("p", field.p) != field.p:
            raise ValueError("p must equal the field characteristic")
        mu = {}
        for entry in data["mu"]:
            key = tuple(entry["idx"])
            val = tuple(field.from_coords(c) for c in entry["val"])
            mu[key] = val
        return cls(field, data["dim"], mu)


# -- polarization of honest commutative algebras -----------------------------


def bilinear_product(field: FqField, table: Sequence[Sequence[Sequence[int]]],
                     u: Sequence[int], v: Sequence[int]) -> tuple:
    """Product in the commutative algebra given by basis table e_i e_j."""
    d = len(table)
    out = [0] * d
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            c = field.mul(a, b)
            for k, t in enumerate(table[i][j]):
                if t:
                    out[k] = field.add(out[k], field.mul(c, t))
    return tuple(out)


def polarize(field: FqField, table: Sequence[Sequence[Sequence[int]]]) -> PPolarAlgebra:
    """Restrict a commutative associative product to p-fold products.

    `table[i][j]` is the coordinate vector of e_i * e_j.  Symmetry and
    associativity of the input are verified on basis tuples.
    """
    d = len(table)
    table = [[tuple(v) for v in row] for row in table]
    for i in range(d):
        for j in range(d):
            if table[i][j] != table[j][i]:
                raise ValueError(f"input product not symmetric at ({i},{j})")
    for i in range(d):
        for j in range(d):
            for k in range(d):
                left = bilinear_product(field, table, table[i][j],
                                        _unit(d, k))
                right = bilinear_product(field, table, _unit(d, i),
                                         table[j][k])
                if left != right:
                    raise ValueError(
                        f"input product not associative at ({i},{j},{k})")
    p = field.p
    mu = {}
    for key in combinations_with_replacement(range(d), p):
        acc = _unit(d, key[0])
        for i in key[1:]:
            acc = bilinear_product(field, table, acc, _unit(d, i))
        if any(acc):
            mu[key] = acc
    return PPolarAlgebra(field, d, mu)


def _unit(d: int, i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(d))


# -- the permutation-invariance axiom ----------------------------------------


def check_assoc(A: PPolarAlgebra):
    """True iff 2p-1-fold products are invariant under all transpositions.

    Products within the first p and last p-1 slots are symmetric by
    construction, so only the transposition across the mu boundary can
    fail; it is checked on all sorted multiset pairs, which generates the
    full symmetric group action.  Returns (ok, witness) where the witness
    is (indices, value, swapped_value) for the first failure.
    """
    p, d = A.p, A.dim

    def g(left: tuple, right: tuple) -> tuple:
        inner = A.mu_basis(left)
        out = list(A.zero)
        F = A.field
        for j, c in enumerate(inner):
            if c:
                val = A.mu_basis((j,) + right)
                for k, v in enumerate(val):
                    if v:
                        out[k] = F.add(out[k], F.mul(c, v))
        return tuple(out)

    for left in combinations_with_replacement(range(d), p):
        for right in combinations_with_replacement(range(d), p - 1):
            base = g(left, right)
            # swap the slot-p element with the slot-(p+1) element
            for li in set(left):
                for ri in set(right):
                    if li == ri:
                        continue
                    new_left = tuple(sorted(left[:_index(left, li)] +
                                            left[_index(left, li) + 1:] + (ri,)))
                    new_right = tuple(sorted(right[:_index(right, ri)] +
                                             right[_index(right, ri) + 1:] + (li,)))
                    other = g(new_left, new_right)
                    if other != base:
                        return False, ((left, right), base, other)
    return True, None


def _index(t: tuple, v) -> int:
    return t.index(v)


# -- ideals -------------------------------------------------------------------


class PolarIdeal:
    """F_q-subspace closed under mu(A, ..., A, -), in echelon form."""

    __slots__ = ("algebra", "basis")

    def __init__(self, algebra: PPolarAlgebra, basis: Sequence[Sequence[int]],
                 verify: bool = True):
        self.algebra = algebra
        self.basis = tuple(echelon_span(algebra.field, basis))
        if verify and not self._closed():
            raise ValueError("subspace is not closed under multiplication")

    def _closed(self) -> bool:
        A = self.algebra
        for key in combinations_with_replacement(range(A.dim), A.p - 1):
            outer = [A.basis_vector(i) for i in key]
            for b in self.basis:
                v = A.mu_p(outer + [list(b)])
                if not in_span(A.field, self.basis, v):
                    return False
        return True

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, v: Sequence[int]) -> bool:
        return in_span(self.algebra.field, self.basis, v)

    def __eq__(self, other):
        return (isinstance(other, PolarIdeal) and self.algebra == other.algebra
                and self.basis == other.basis)

    def __repr__(self):
        return f"PolarIdeal(dim={self.dim} of {self.algebra!r})"


def ideal_generated(A: PPolarAlgebra, gens: Iterable[Sequence[int]]) -> PolarIdeal:
    """Smallest F_q-subspace containing gens closed under mu(A,..,A,-)."""
    rows: list = []
    for v in gens:
        echelon_insert(A.field, rows, v)
    outer_keys = list(combinations_with_replacement(range(A.dim), A.p - 1))
    changed = True
    while changed:
        changed = False
        for key in outer_keys:
            outer = [A.basis_vector(i) for i in key]
            for b in list(rows):
                v = A.mu_p(outer + [list(b)])
                if any(v) and echelon_insert(A.field, rows, v):
                    changed = True
    return PolarIdeal(A, rows, verify=False)


def polar_power(A: PPolarAlgebra, I: PolarIdeal) -> PolarIdeal:
    """I^p = the ideal generated by mu(I, ..., I)."""
    gens = []
    for key in combinations_with_replacement(range(len(I.basis)), A.p):
        v = A.mu_p([I.basis[i] for i in key])
        if any(v):
            gens.append(v)
    return ideal_generated(A, gens)


def ideal_power_nilpotent(A: PPolarAlgebra, I: PolarIdeal, s: int) -> bool:
    """True iff the s-fold iterated polar power of I vanishes."""
    cur = I
    for _ in range(s):
        if cur.is_zero():
            return True
        cur = polar_power(A, cur)
    return cur.is_zero()


def nilpotence_exponent(A: PPolarAlgebra, I: PolarIdeal, cap: int | None = None):
    """Least s with I^(p^s) = 0, or None if the chain stabilizes nonzero."""
    cap = cap if cap is not None else A.dim + 1
    cur = I
    for s in range(cap + 1):
        if cur.is_zero():
            return s
        nxt = polar_power(A, cur)
        if nxt.basis == cur.basis:
            return None
        cur = nxt
    return None


def nilradical(A: PPolarAlgebra) -> PolarIdeal:
    """All x with x^(p^N) = 0: kernel of the d-fold iterated p-power map.

    The p-power map is additive in characteristic p and F_q-semilinear, so
    its iterated kernel is computed over F_p and stabilizes by iterate d.
    """
    if A.dim == 0:
        return PolarIdeal(A, [], verify=False)
    M = fp_matrix_of_additive(A.field, lambda v: A.mu_p([v] * A.p), A.dim)
    Mk = M
    for _ in range(A.dim - 1):
        Mk = Mk.matmul(M)
    flat_kernel = linear_kernel(Mk)
    vectors = []
    m = A.field.m
    for fv in flat_kernel:
        vectors.append(tuple(A.field.from_coords(fv[i * m:(i + 1) * m])
                             for i in range(A.dim)))
    return PolarIdeal(A, vectors, verify=False)


def product_length_threshold(A: PPolarAlgebra, vectors: Sequence[Sequence[int]],
                             cap: int | None = None):
    """Least L = 1 + j(p-1) such that every product of >= L elements drawn
    from the span of `vectors` vanishes, or None if no such L exists.

    Products of span elements of length 1 + j(p-1) are spanned, by
    multilinearity and scheme independence, by mu applied to span basis
    vectors, so the chain is computed on basis combinations only.
    """
    F = A.field
    span = echelon_span(F, vectors)
    if not span:
        return 1
    p = A.p
    if cap is None:
        cap = (p ** (A.dim + 1) - 1) // (p - 1) + 1
    outer = list(combinations_with_replacement(range(len(span)), p - 1))
    cur = list(span)
    for j in range(1, cap + 1):
        nxt: list = []
        for key in outer:
            vs = [span[i] for i in key]
            for w in cur:
                u = A.mu_p(vs + [w])
                if any(u):
                    echelon_insert(F, nxt, u)
        if not nxt:
            return 1 + j * (p - 1)
        cur = nxt
    return None


# -- quotients and scalar extension ------------------------------------------


def quotient(A: PPolarAlgebra, I: PolarIdeal):
    """(B, project, lift): the induced structure on A/I.

    The complement of the pivot coordinates gives a section; the induced
    mu is re-validated against (ASSOC).
    """
    F = A.field
    pivots = [next(i for i, c in enumerate(row) if c) for row in I.basis]
    comp = [i for i in range(A.dim) if i not in pivots]
    dB = len(comp)

    def project(v):
        res = echelon_reduce(F, I.basis, v)
        return tuple(res[i] for i in comp)

    def lift(w):
        v = [0] * A.dim
        for c, i in zip(w, comp):
            v[i] = c
        return tuple(v)

    mu = {}
    for key in combinations_with_replacement(range(dB), A.p):
        val = project(A.mu_p([A.basis_vector(comp[i]) for i in key]))
        if any(val):
            mu[key] = val
    B = PPolarAlgebra(F, dB, mu)
    ok, witness = check_assoc(B)
    if not ok:
        raise AssertionError(f"quotient lost associativity: {witness}")
    return B, project, lift


def extend_scalars(A: PPolarAlgebra, t: int) -> PPolarAlgebra:
    """Same structure constants over the degree-t extension field."""
    if t == 1:
        return A
    big = gf_build(A.field.p, A.field.m * t)
    mu = {key: tuple(embed(A.field, big, a) for a in val)
          for key, val in A.mu.items()}
    return PPolarAlgebra(big, A.dim, mu)


# -- free polar monomial bases -------------------------------------------------


def free_polar_basis(p: int, nvars: int, max_blocks: int) -> list:
    """Monomials (as sorted index multisets) of degree 1 + i(p-1), i <= max_blocks,
    in graded-lex order."""
    out = []
    for i in range(max_blocks + 1):
        deg = 1 + i * (p - 1)
        out.extend(combinations_with_replacement(range(nvars), deg))
    return out
