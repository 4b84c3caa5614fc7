"""GF(p^m) arithmetic and (semi)linear kernels."""

import random

import pytest

from wittpolar.gfq import (FqMatrix, additive_poly_roots, embed, embedding,
                           gf_build, linear_kernel, rank, semilinear_kernel)


def test_prime_field_convention():
    F2 = gf_build(2, 1)
    assert F2.modulus == (0, 1)
    assert F2.add(1, 1) == 0


def test_f4_modulus_is_least_irreducible():
    F4 = gf_build(2, 2)
    assert F4.modulus == (1, 1, 1)
    g = F4.gen
    assert F4.mul(g, g) == F4.add(g, 1)  # g^2 = g + 1


def test_f9_modulus():
    assert gf_build(3, 2).modulus == (1, 0, 1)  # x^2 + 1


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        gf_build(6, 1)


def test_frobenius_prime_field_fixed():
    F3 = gf_build(3, 1)
    for a in F3.elements():
        assert F3.frobenius(a, 5) == a


def test_frobenius_generator_f4():
    F4 = gf_build(2, 2)
    g = F4.gen
    assert F4.frobenius(g, 1) == F4.add(g, 1)


def test_frobenius_inverse_pair():
    F9 = gf_build(3, 2)
    for a in F9.elements():
        assert F9.frobenius(F9.frobenius(a, 1), -1) == a
    # order m cycle
    assert all(F9.frobenius(a, F9.m) == a for a in F9.elements())


def test_frobenius_is_field_automorphism():
    rng = random.Random(3)
    F8 = gf_build(2, 3)
    for _ in range(40):
        a, b = rng.randrange(8), rng.randrange(8)
        assert F8.frobenius(F8.add(a, b)) == F8.add(F8.frobenius(a),
                                                    F8.frobenius(b))
        assert F8.frobenius(F8.mul(a, b)) == F8.mul(F8.frobenius(a),
                                                    F8.frobenius(b))


def test_field_inverses():
    for F in (gf_build(2, 2), gf_build(3, 2), gf_build(5, 1)):
        for a in range(1, F.q):
            assert F.mul(a, F.inv(a)) == 1


def test_kernel_zero_matrix():
    F2 = gf_build(2, 1)
    M = FqMatrix(F2, [[0, 0, 0]] * 3)
    assert linear_kernel(M) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_kernel_identity():
    F3 = gf_build(3, 1)
    M = FqMatrix(F3, [[1, 0], [0, 1]])
    assert linear_kernel(M) == []


def test_kernel_rank_one():
    F2 = gf_build(2, 1)
    M = FqMatrix(F2, [[1, 1], [0, 0]])
    assert linear_kernel(M) == [(1, 1)]


def test_rank_plus_kernel_dim():
    rng = random.Random(11)
    for F in (gf_build(2, 1), gf_build(3, 1), gf_build(2, 2)):
        for _ in range(15):
            rows = [[rng.randrange(F.q) for _ in range(4)] for _ in range(3)]
            M = FqMatrix(F, rows)
            assert rank(F, rows) + len(linear_kernel(M)) == 4


def test_semilinear_identity_twist_trivial_kernel():
    F4 = gf_build(2, 2)
    M = FqMatrix(F4, [[1, 0], [0, 1]])
    assert semilinear_kernel(F4, M, 1) == []


def test_semilinear_zero_matrix_full_kernel():
    F4 = gf_build(2, 2)
    M = FqMatrix(F4, [[0, 0], [0, 0]])
    # F_p-basis of F_4^2 has dimension m*n = 4
    assert len(semilinear_kernel(F4, M, 1)) == 4


def test_semilinear_rank_nullity_over_fp():
    rng = random.Random(5)
    F9 = gf_build(3, 2)
    for twist in (0, 1):
        for _ in range(10):
            M = FqMatrix(F9, [[rng.randrange(9) for _ in range(2)]
                              for _ in range(2)])
            ker = semilinear_kernel(F9, M, twist)
            # the map is F_p-linear on a 4-dimensional F_3-space
            img_rank = 4 - len(ker)
            assert 0 <= img_rank <= 4


def test_additive_poly_x4_minus_x_on_f4():
    F4 = gf_build(2, 2)
    roots = additive_poly_roots(F4, [F4.neg(1), 0, 1])  # x^4 - x
    assert len(roots) == 2  # all of F_4, F_2-dimension 2


def test_additive_poly_frobenius_injective():
    F4 = gf_build(2, 2)
    assert additive_poly_roots(F4, [0, 1]) == []  # x^2 = 0 only at 0


def test_embedding_compatibility():
    F2, F4, F16 = gf_build(2, 1), gf_build(2, 2), gf_build(2, 4)
    for a in F4.elements():
        via = embed(F4, F16, a)
        assert embed(F4, F16, F4.mul(a, a)) == F16.mul(via, via)
    # towers agree on the prime field
    assert embed(F2, F16, 1) == 1
    with pytest.raises(ValueError):
        embedding(gf_build(2, 3), F16)  # 3 does not divide 4


def test_field_json_round_trip():
    F9 = gf_build(3, 2)
    from wittpolar.gfq import FqField
    assert FqField.from_json(F9.to_json()) == F9
    assert F9.to_json() == {"p": 3, "m": 2, "modulus": [1, 0, 1]}
