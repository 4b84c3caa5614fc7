"""Universal Witt polynomials: ghosts, Dwork lifting, certificates."""

import json
import os

import pytest

from wittpolar.exact import IntegralityViolation, MultiPoly
from wittpolar.wittuniv import (DworkCongruenceFailed, cache_path,
                                dwork_congruence_holds, dwork_lift,
                                ghost_of_coords, ghost_polys,
                                polar_degree_check, reduce_mod_p,
                                universal_polys)
from wittpolar.verify import _ghost_target


def V(name):
    return MultiPoly.variable(name)


def test_ghost_single_component():
    g = ghost_polys(5, 1)
    assert g[0] == V("a0")


def test_ghost_p2():
    g = ghost_polys(2, 2)
    a0, a1 = V("a0"), V("a1")
    assert g[1] == a0 ** 2 + 2 * a1


def test_ghost_p3():
    g = ghost_polys(3, 3)
    a0, a1, a2 = V("a0"), V("a1"), V("a2")
    assert g[1] == a0 ** 3 + 3 * a1
    assert g[2] == a0 ** 9 + 3 * a1 ** 3 + 9 * a2


def test_dwork_round_trip_on_formal_ghosts():
    for p, n in ((2, 3), (3, 2)):
        targets = list(ghost_polys(p, n, "x").entries)
        comps = dwork_lift(p, targets)
        assert comps == [V(f"x{i}") for i in range(n)]


def test_dwork_sum_target_p2():
    gx, gy = ghost_polys(2, 2, "x"), ghost_polys(2, 2, "y")
    comps = dwork_lift(2, [gx[m] + gy[m] for m in range(2)])
    x0, x1, y0, y1 = (V(v) for v in ("x0", "x1", "y0", "y1"))
    assert comps[0] == x0 + y0
    assert comps[1] == x1 + y1 - x0 * y0


def test_dwork_rejects_constant_sequence():
    x = V("x0")
    with pytest.raises(DworkCongruenceFailed) as err:
        dwork_lift(2, [x, x, x])
    assert err.value.level == 1
    assert dwork_congruence_holds(2, [x, x ** 2, x ** 4]) is None


def test_dwork_accepts_frobenius_orbit():
    x = V("x0")
    comps = dwork_lift(2, [x, x ** 2, x ** 4, x ** 8])
    assert comps[0] == x and all(c.is_zero() for c in comps[1:])


def test_unchecked_lift_surfaces_integrality_failure():
    x = V("x0")
    with pytest.raises(IntegralityViolation):
        dwork_lift(2, [x, x, x], check=False)


def test_sum_polys_match_spec_values():
    S = universal_polys(2, 2, "sum")
    x0, x1, y0, y1 = (V(v) for v in ("x0", "x1", "y0", "y1"))
    assert S[1].poly == x1 + y1 - x0 * y0


def test_prod_polys_match_spec_values():
    M = universal_polys(2, 2, "prod")
    x0, x1, y0, y1 = (V(v) for v in ("x0", "x1", "y0", "y1"))
    assert M[1].poly == x0 ** 2 * y1 + x1 * y0 ** 2 + 2 * x1 * y1


def test_neg_polys():
    N2 = universal_polys(2, 2, "neg")
    x0, x1 = V("x0"), V("x1")
    assert N2[1].poly == -x1 - x0 ** 2
    # odd p: componentwise negation
    for p in (3, 5):
        N = universal_polys(p, 2, "neg")
        assert N[0].poly == -V("x0")
        assert N[1].poly == -V("x1")


def test_frob_polys():
    F = universal_polys(2, 2, "frob")
    x0, x1 = V("x0"), V("x1")
    assert F[0].poly == x0 ** 2 + 2 * x1


def test_reduce_mod_p():
    S = universal_polys(2, 2, "sum")
    x0, x1, y0, y1 = (V(v) for v in ("x0", "x1", "y0", "y1"))
    assert reduce_mod_p(S)[1] == x1 + y1 + x0 * y0
    M = universal_polys(2, 2, "prod")
    assert reduce_mod_p(M)[1] == x0 ** 2 * y1 + x1 * y0 ** 2
    # Frobenius reduces to the componentwise p-th power
    for p, n in ((2, 3), (3, 2)):
        F = universal_polys(p, n, "frob")
        for m, q in enumerate(reduce_mod_p(F)):
            assert q == V(f"x{m}") ** p


def test_ghost_round_trips_exact():
    for p, n in ((2, 3), (3, 3), (5, 2)):
        for kind in ("sum", "neg", "prod", "frob", "scalar"):
            coords = [u.poly for u in universal_polys(p, n, kind)]
            targets = _ghost_target(p, n, kind)
            for m in range(n):
                assert ghost_of_coords(p, coords, m) == targets[m]


def test_polar_degree_certificates():
    for p, n in ((2, 2), (3, 3), (5, 2)):
        for kind in ("sum", "neg", "prod", "frob", "scalar"):
            assert all(polar_degree_check(u)
                       for u in universal_polys(p, n, kind))


def test_polar_degree_check_rejects():
    from wittpolar.wittuniv import UnivWittPoly
    bad = UnivWittPoly("sum", 0, 3, V("x0") * V("y0"))
    assert not polar_degree_check(bad)
    # p = 2 is vacuous
    assert polar_degree_check(UnivWittPoly("sum", 0, 2, V("x0") * V("y0")))


def test_scalar_vs_module_axioms_on_ghosts():
    # scalar target is w(a) * w(x); check the distributive ghost identity
    p, n = 3, 2
    C = [u.poly for u in universal_polys(p, n, "scalar")]
    ga = ghost_polys(p, n, "a")
    gx = ghost_polys(p, n, "x")
    for m in range(n):
        assert ghost_of_coords(p, C, m) == ga[m] * gx[m]


def test_frobenius_scalar_commutation_mod_p_and_discrepancy():
    # F(a.x) = phi(a).F(x) holds mod p; over Z the defect is exactly
    # p^(m+1) a_(m+1) w_(m+1)(x)
    for p, n in ((2, 2), (3, 2)):
        C = universal_polys(p, n + 1, "scalar")
        F = universal_polys(p, n, "frob")
        cx = [u.poly for u in C]
        bind_f = {f"x{i}": cx[i] for i in range(n + 1)}
        lhs = [F[m].poly.substitute(bind_f) for m in range(n)]
        fx = [u.poly for u in F]
        bind_c = {f"x{i}": fx[i] for i in range(n)}
        bind_c.update({f"a{i}": V(f"a{i}") ** p for i in range(n)})
        rhs = [C2.poly.substitute(bind_c)
               for C2 in universal_polys(p, n, "scalar")]
        for m in range(n):
            assert (lhs[m] - rhs[m]).divisible_by(p)
        ga = ghost_polys(p, n + 1, "a")
        gx = ghost_polys(p, n + 1, "x")
        for m in range(n):
            diff = ghost_of_coords(p, lhs, m) - ghost_of_coords(p, rhs, m)
            phi_a = ga[m].frobenius_vars(p)
            want = (ga[m + 1] - phi_a) * gx[m + 1]
            assert diff == want  # and the defect is p^(m+1) a_(m+1) w(x)


def test_verschiebung_scalar_commutation_mod_p():
    # a . V(x) = V(phi(a) . x) after substituting a -> phi(b)
    for p, n in ((2, 2), (3, 2)):
        Cn1 = universal_polys(p, n + 1, "scalar")
        Cn = universal_polys(p, n, "scalar")
        xs = [V(f"x{i}") for i in range(n)]
        vx = [MultiPoly.zero()] + xs
        bind = {f"x{i}": vx[i] for i in range(n + 1)}
        bind.update({f"a{i}": V(f"a{i}") for i in range(n + 1)})
        lhs = [u.poly.substitute(bind) for u in Cn1]  # a . V(x)
        bind2 = {f"a{i}": V(f"a{i}") ** p for i in range(n)}
        bind2.update({f"x{i}": xs[i] for i in range(n)})
        inner = [u.poly.substitute(bind2) for u in Cn]  # phi(a) . x
        rhs = [MultiPoly.zero()] + inner
        for m in range(n + 1):
            assert (lhs[m] - rhs[m]).divisible_by(p)


def test_disk_cache_round_trip_and_determinism():
    p, n, kind = 3, 2, "prod"
    path = cache_path(p, n, kind)
    if os.path.exists(path):
        os.unlink(path)
    import wittpolar.wittuniv as wu
    wu._memo.pop((p, n, kind), None)
    first = universal_polys(p, n, kind)
    blob1 = open(path).read()
    wu._memo.pop((p, n, kind), None)
    second = universal_polys(p, n, kind)  # loaded from disk
    assert [u.poly for u in first] == [u.poly for u in second]
    wu._memo.pop((p, n, kind), None)
    os.unlink(path)
    universal_polys(p, n, kind)
    assert open(path).read() == blob1
    data = json.loads(blob1)
    assert data["format"] == "wittpolar/1"


def test_envelope_warning():
    with pytest.warns(UserWarning, match="envelope"):
        universal_polys(5, 3, "neg")
