"""Exact polynomial and truncated-series layer."""

import random
from fractions import Fraction

import pytest

from wittpolar.exact import (IntegralityViolation, MultiPoly, TruncSeries,
                             exact_div_int, poly_arith, poly_substitute,
                             series_reverse)


def V(name):
    return MultiPoly.variable(name)


def test_difference_of_squares():
    x0, y0 = V("x0"), V("y0")
    assert (x0 + y0) * (x0 - y0) == x0 * x0 - y0 * y0


def test_additive_identity():
    a = V("x0") * 3 + V("y1") * V("x2")
    assert poly_arith(a, MultiPoly.zero(), "add") == a


def brute_cube(a_vars):
    """Independent expansion oracle: multiply term lists directly."""
    # (x0 + y0)^3 expanded by hand through the multinomial theorem
    x0, y0 = a_vars
    return (x0 ** 3 + 3 * (x0 ** 2) * y0 + 3 * x0 * (y0 ** 2) + y0 ** 3)


def test_cube_expansion_matches_oracle():
    x0, y0 = V("x0"), V("y0")
    lhs = (x0 + y0) ** 3
    assert lhs == brute_cube((x0, y0))
    assert lhs.coefficient({"x0": 2, "y0": 1}) == 3


def test_substitute_square():
    f = V("x0") ** 2
    u, v = V("u0"), V("u1")
    assert poly_substitute(f, {"x0": u + v}) == u ** 2 + 2 * u * v + v ** 2


def test_substitute_identity_binding():
    f = V("x0") * V("y0") + 2 * V("x1")
    bind = {name: V(name) for name in ("x0", "x1", "y0")}
    assert poly_substitute(f, bind) == f


def test_substitute_unbound_variable():
    with pytest.raises(ValueError, match="unbound"):
        poly_substitute(V("x0") + V("x1"), {"x0": V("u0")})


def test_exact_division():
    f = 2 * V("x0") ** 2 + 4 * V("x1")
    assert exact_div_int(f, 2) == V("x0") ** 2 + 2 * V("x1")


def test_exact_division_carry_term():
    x0, y0 = V("x0"), V("y0")
    f = x0 ** 2 + y0 ** 2 - (x0 + y0) ** 2
    assert exact_div_int(f, 2) == -(x0 * y0)


def test_exact_division_rejects_odd():
    with pytest.raises(IntegralityViolation):
        exact_div_int(V("x0") + MultiPoly.const(1), 2)


def rand_poly(rng, names, terms=4, deg=3, coeff=9):
    out = MultiPoly.zero()
    for _ in range(terms):
        exps = tuple(rng.randrange(deg) for _ in names)
        out = out + MultiPoly.monomial(names, exps, rng.randrange(-coeff, coeff))
    return out


def test_ring_axioms_randomized():
    rng = random.Random(20240817)
    names = ("x0", "x1", "y0")
    for _ in range(25):
        a, b, c = (rand_poly(rng, names) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert exact_div_int(a * 6, 6) == a


def test_variable_alignment_and_hash():
    a = MultiPoly(("x0", "y0"), {(1, 0): 1})
    b = MultiPoly(("x0",), {(1,): 1})
    assert a == b and hash(a) == hash(b)


def test_json_round_trip():
    f = V("x0") ** 2 * V("a1") - MultiPoly.const(Fraction(3, 7))
    data = f.to_json()
    assert data["terms"][0]["den"] == "7"
    assert MultiPoly.from_json(data) == f


# -- truncated series ---------------------------------------------------------


def lagrange_reversion(f: TruncSeries) -> list:
    """Independent oracle: g_n = [x^(n-1)] (x / f)^n / n."""
    D = f.prec
    # h = x / f(x) = 1 / (1 + c2 x + ...)  via iterative reciprocal
    denom = [f[k + 1] for k in range(D)]  # f / x
    recip = [Fraction(0)] * D
    recip[0] = Fraction(1)
    for k in range(1, D):
        recip[k] = -sum(denom[j] * recip[k - j] for j in range(1, k + 1))
    out = [Fraction(0), Fraction(1)]
    power = recip[:]  # (x/f)^1
    for n in range(2, D + 1):
        nxt = [Fraction(0)] * D
        for i, a in enumerate(power):
            if a:
                for j in range(D - i):
                    nxt[i + j] += a * recip[j]
        power = nxt
        out.append(power[n - 1] / n)
    return out


def test_reverse_identity():
    f = TruncSeries.x(8)
    assert series_reverse(f) == f


def test_reverse_catalan_signs():
    f = TruncSeries(6, [0, 1, 1])  # x + x^2
    g = series_reverse(f)
    assert [g[k] for k in range(7)] == [0, 1, -1, 2, -5, 14, -42]
    assert [g[k] for k in range(7)] == lagrange_reversion(f)[:7]


def test_reverse_log_exp_pair():
    D = 10
    log1p = TruncSeries(D, [0] + [Fraction((-1) ** (k + 1), k)
                                  for k in range(1, D + 1)])
    expm1 = TruncSeries(D, [0] + [Fraction(1, _fact(k))
                                  for k in range(1, D + 1)])
    assert series_reverse(log1p) == expm1
    assert log1p.compose(expm1) == TruncSeries.x(D)


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def test_reverse_is_involutive_randomized():
    rng = random.Random(7)
    for _ in range(10):
        coeffs = [0, 1] + [Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
                           for _ in range(8)]
        f = TruncSeries(9, coeffs)
        g = series_reverse(f)
        assert series_reverse(g) == f
        assert f.compose(g) == TruncSeries.x(9)
        assert [g[k] for k in range(10)] == lagrange_reversion(f)


def test_reverse_rejects_bad_leading_terms():
    with pytest.raises(ValueError):
        series_reverse(TruncSeries(5, [1, 1]))
    with pytest.raises(ValueError):
        series_reverse(TruncSeries(5, [0, 2]))
