"""Arithmetic in GF(p^m) plus linear and Frobenius-twisted linear algebra.

Field elements are ints in range(p^m) encoding the little-endian base-p
digit vector of coordinates in the power basis.  The modulus is always the
lexicographically least monic irreducible polynomial of its degree (prime
fields use the x - 0 convention), so every serialized artifact is
reproducible without any table dependency.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

_MUL_TABLE_MAX_Q = 256


class FqField:
    """Immutable descriptor of GF(p^m) with element arithmetic."""

    __slots__ = ("p", "m", "q", "modulus", "_mul_table", "_inv_table")

    def __init__(self, p: int, m: int, modulus: Sequence[int]):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = tuple(int(c) % p for c in modulus)
        if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        self._mul_table = None
        self._inv_table = None

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return (isinstance(other, FqField) and self.p == other.p
                and self.m == other.m and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    # -- encoding -------------------------------------------------------

    def coords(self, a: int) -> tuple:
        """Little-endian base-p digits of a (power-basis coordinates)."""
        p = self.p
        out = []
        for _ in range(self.m):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_coords(self, cs: Sequence[int]) -> int:
        a = 0
        for c in reversed(list(cs)):
            a = a * self.p + (int(c) % self.p)
        return a

    def elements(self):
        return range(self.q)

    @property
    def gen(self) -> int:
        """The power-basis generator x (the element p); 1 for prime fields."""
        return self.p if self.m > 1 else 1

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out = 0
        mult = 1
        for _ in range(self.m):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        out = 0
        mult = 1
        for _ in range(self.m):
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is None and self.q <= _MUL_TABLE_MAX_Q:
            self._build_tables()
        if self._mul_table is not None:
            return self._mul_table[a * self.q + b]
        return self._mul_direct(a, b)

    def _mul_direct(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da, db = self.coords(a), self.coords(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the monic modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(m):
                    prod[k - m + i] = (prod[k - m + i] - c * self.modulus[i]) % p
        return self.from_coords(prod[:m])

    def _build_tables(self):
        q = self.q
        table = [0] * (q * q)
        for a in range(q):
            row = a * q
            for b in range(a, q):
                v = self._mul_direct(a, b)
                table[row + b] = v
                table[b * q + a] = v
        self._mul_table = table
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self._pow_direct(a, q - 2)
        self._inv_table = inv

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        return self._pow_direct(a, k)

    def _pow_direct(self, a: int, k: int) -> int:
        out = 1
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self._pow_direct(a, self.q - 2)

    def frobenius(self, a: int, k: int = 1) -> int:
        """a^(p^k); negative k is the inverse automorphism (m-cycle)."""
        k %= self.m
        for _ in range(k):
            a = self._pow_direct(a, self.p)
        return a

    def pth_root(self, a: int) -> int:
        return self.frobenius(a, -1)

    def in_prime_field(self, a: int) -> bool:
        return self.frobenius(a, 1) == a

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FqField":
        f = gf_build(data["p"], data["m"])
        if tuple(data["modulus"]) != f.modulus:
            return cls(data["p"], data["m"], data["modulus"])
        return f


# -- field construction ----------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _fp_poly_mod(num: list, den: list, p: int) -> list:
    """Remainder of num by monic den, coefficients mod p (little-endian)."""
    num = [c % p for c in num]
    dd = len(den) - 1
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            num[k] = 0
            for i in range(dd):
                num[k - dd + i] = (num[k - dd + i] - c * den[i]) % p
    out = num[:dd]
    while out and not out[-1]:
        out.pop()
    return out


def _fp_irreducible(poly: list, p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for c in range(p ** d):
            den, v = [], c
            for _ in range(d):
                v, r = divmod(v, p)
                den.append(r)
            den.append(1)
            if not _fp_poly_mod(list(poly), den, p):
                return False
    return True


@lru_cache(maxsize=None)
def gf_build(p: int, m: int) -> FqField:
    """Deterministic field: lexicographically least irreducible modulus."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if m == 1:
        return FqField(p, 1, (0, 1))
    for c in range(p ** m):
        digits, v = [], c
        for _ in range(m):
            v, r = divmod(v, p)
            digits.append(r)
        poly = digits + [1]
        if _fp_irreducible(poly, p):
            return FqField(p, m, poly)
    raise AssertionError("no irreducible polynomial found")


def frobenius(field: FqField, a: int, k: int) -> int:
    return field.frobenius(a, k)


@lru_cache(maxsize=None)
def embedding(small: FqField, big: FqField) -> tuple:
    """Image of each power-basis element of `small` inside `big`.

    The roots of small's modulus all lie in the unique subfield of the
    right order, which is the kernel of the F_p-linear map
    x -> x^(p^small.m) - x; only those candidates are scanned and the
    least root (in the integer encoding) is chosen, so the embedding is
    deterministic.
    """
    if big.p != small.p or big.m % small.m:
        raise ValueError("no embedding between these fields")
    if small.m == 1:
        root = 0
    else:
        sub_basis = additive_poly_roots(
            big, [big.neg(1)] + [0] * (small.m - 1) + [1])
        root = None
        from itertools import product as _prod
        for digits in _prod(range(big.p), repeat=len(sub_basis)):
            cand = 0
            for d, b in zip(digits, sub_basis):
                if d:
                    cand = big.add(cand, big.mul(d, b))
            if cand == 0:
                continue
            acc = 0
            for c in reversed(small.modulus):
                acc = big.add(big.mul(acc, cand), c % big.p)
            if acc == 0 and (root is None or cand < root):
                root = cand
        if root is None:
            raise AssertionError("modulus has no root in the extension")
    return tuple(big.pow(root, i) for i in range(small.m))


def embed(small: FqField, big: FqField, a: int) -> int:
    basis = embedding(small, big)
    out = 0
    for c, b in zip(small.coords(a), basis):
        if c:
            out = big.add(out, big.mul(c, b))
    return out


# -- matrices and kernels ----------------------------------------------------


class FqMatrix:
    """Rectangular matrix over an FqField; rows of int-encoded entries."""

    __slots__ = ("field", "rows")

    def __init__(self, field: FqField, rows: Sequence[Sequence[int]]):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def __eq__(self, other):
        return (isinstance(other, FqMatrix) and self.field == other.field
                and self.rows == other.rows)

    def mul_vec(self, v: Sequence[int]) -> tuple:
        F = self.field
        out = []
        for row in self.rows:
            s = 0
            for a, b in zip(row, v):
                if a and b:
                    s = F.add(s, F.mul(a, b))
            out.append(s)
        return tuple(out)

    def matmul(self, other: "FqMatrix") -> "FqMatrix":
        F = self.field
        cols = list(zip(*other.rows))
        rows = []
        for r in self.rows:
            row = []
            for c in cols:
                s = 0
                for a, b in zip(r, c):
                    if a and b:
                        s = F.add(s, F.mul(a, b))
                row.append(s)
            rows.append(row)
        return FqMatrix(F, rows)


def rref(field: FqField, rows: Sequence[Sequence[int]]):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    R = [list(r) for r in rows]
    pivots = []
    rank = 0
    ncols = len(R[0]) if R else 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(R)):
            if R[i][col]:
                piv = i
                break
        if piv is None:
            continue
        R[rank], R[piv] = R[piv], R[rank]
        inv = field.inv(R[rank][col])
        R[rank] = [field.mul(inv, c) for c in R[rank]]
        for i in range(len(R)):
            if i != rank and R[i][col]:
                f = R[i][col]
                R[i] = [field.sub(a, field.mul(f, b))
                        for a, b in zip(R[i], R[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(R):
            break
    return [tuple(r) for r in R[:rank]], pivots


def linear_kernel(M: FqMatrix) -> list:
    """Echelon-form basis of the right kernel of M (deterministic)."""
    field = M.field
    if M.ncols == 0:
        return []
    R, pivots = rref(field, M.rows)
    free = [c for c in range(M.ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * M.ncols
        v[fc] = 1
        for r, pc in zip(R, pivots):
            if r[fc]:
                v[pc] = field.neg(r[fc])
        basis.append(tuple(v))
    return basis


def rank(field: FqField, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(field, rows)[0])


# -- Fp-flattening of additive maps ----------------------------------------


def _flatten(field: FqField, vec: Sequence[int]) -> list:
    out = []
    for a in vec:
        out.extend(field.coords(a))
    return out


def _unflatten(field: FqField, flat: Sequence[int], n: int) -> tuple:
    m = field.m
    return tuple(field.from_coords(flat[i * m:(i + 1) * m]) for i in range(n))


def fp_matrix_of_additive(field: FqField, fn: Callable, n: int) -> FqMatrix:
    """Matrix over F_p of an additive map F_q^n -> F_q^n, in flat coordinates."""
    fp = gf_build(field.p, 1)
    dim = n * field.m
    cols = []
    for j in range(n):
        for i in range(field.m):
            v = [0] * n
            v[j] = field.p ** i if field.m > 1 else 1
            cols.append(_flatten(field, fn(tuple(v))))
    rows = [[cols[c][r] for c in range(dim)] for r in range(dim)]
    return FqMatrix(fp, rows)


def additive_map_kernel(field: FqField, fn: Callable, n: int) -> list:
    """F_p-basis (echelon over F_p) of the kernel of an additive map on F_q^n."""
    M = fp_matrix_of_additive(field, fn, n)
    flat = linear_kernel(M)
    return [_unflatten(field, v, n) for v in flat]


def semilinear_kernel(field: FqField, M: FqMatrix, twist: int) -> list:
    """F_p-basis of the kernel of v -> M . v^(p^twist).

    The kernel is only an F_p-subspace, so it is computed by flattening
    to F_p-linear algebra of dimension m*n.
    """
    if M.nrows != M.ncols:
        raise ValueError("matrix must be square")

    def fn(v):
        tw = tuple(field.frobenius(a, twist) for a in v)
        return M.mul_vec(tw)

    return additive_map_kernel(field, fn, M.ncols)


def additive_poly_roots(field: FqField, coeffs: Sequence[int]) -> list:
    """F_p-basis of the root space in `field` of sum_t c_t X^(p^t)."""

    def fn(v):
        x = v[0]
        acc = 0
        for t, c in enumerate(coeffs):
            if c:
                acc = field.add(acc, field.mul(c, field.frobenius(x, t)))
        return (acc,)

    return [v[0] for v in additive_map_kernel(field, fn, 1)]


# -- echelon span bookkeeping over F_q ---------------------------------------


def echelon_reduce(field: FqField, rows: Sequence[tuple], v: Sequence[int]):
    """Reduce v against echelon rows; returns the residue vector."""
    v = list(v)
    for row in rows:
        lead = next(i for i, c in enumerate(row) if c)
        if v[lead]:
            f = field.mul(v[lead], field.inv(row[lead]))
            v = [field.sub(a, field.mul(f, b)) for a, b in zip(v, row)]
    return tuple(v)


def echelon_insert(field: FqField, rows: list, v: Sequence[int]) -> bool:
    """Insert v into an echelon basis in place; True if the span grew."""
    res = echelon_reduce(field, rows, v)
    if not any(res):
        return False
    lead = next(i for i, c in enumerate(res) if c)
    inv = field.inv(res[lead])
    res = tuple(field.mul(inv, c) for c in res)
    rows.append(res)
    rows.sort(key=lambda r: next(i for i, c in enumerate(r) if c))
    # back-substitute to keep the basis fully reduced
    for k in range(len(rows)):
        for j in range(len(rows)):
            if j == k:
                continue
            lead = next(i for i, c in enumerate(rows[k]) if c)
            if rows[j][lead]:
                f = rows[j][lead]
                rows[j] = tuple(field.sub(a, field.mul(f, b))
                                for a, b in zip(rows[j], rows[k]))
    return True


def echelon_span(field: FqField, vectors) -> list:
    rows: list = []
    for v in vectors:
        echelon_insert(field, rows, v)
    return rows


def in_span(field: FqField, rows: Sequence[tuple], v: Sequence[int]) -> bool:
    return not any(echelon_reduce(field, rows, v))
