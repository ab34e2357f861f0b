from fractions import Fraction

import pytest

from egpkit import (
    GroundSet,
    RationalPoly,
    ValidationError,
    bjr_count,
    chain,
    chi,
    chi_character,
    coarse,
    ehr,
    ehr_star,
    enumerate_preorders,
    from_relations,
    low_of,
    permutahedron,
    product,
    uniform_matroid,
    matroid_rank,
)
from egpkit.invariants import lagrange
from conftest import cardinality_fn


def test_poly_arithmetic():
    p = RationalPoly([1, 2])  # 1 + 2k
    q = RationalPoly([0, 0, 1])  # k^2
    assert (p + q).coeffs == (1, 2, 1)
    assert (p * q).coeffs == (0, 0, 1, 2)
    assert (p * 3).coeffs == (3, 6)
    assert (-p).coeffs == (-1, -2)
    assert p.eval_at(Fraction(1, 2)) == 2
    assert RationalPoly([1, 0, 0]).degree == 0
    assert RationalPoly([]).coeffs == ()


def test_compose_linear():
    p = RationalPoly([0, 0, 1])  # k^2
    assert p.compose_linear(-1, -1).coeffs == (1, 2, 1)  # (−k−1)^2
    p = RationalPoly([1, 1, 1])
    for k in range(-3, 4):
        assert p.compose_linear(2, 5).eval_at(k) == p.eval_at(2 * k + 5)


def test_binomial_basis():
    # k^2 = 2*C(k,2) + C(k,1)
    assert RationalPoly([0, 0, 1]).binomial_basis() == [0, 1, 2]
    assert RationalPoly([0, 2, -3, 1]).binomial_basis() == [0, 0, 0, 6]


def test_lagrange():
    p = lagrange([(0, 1), (1, 2), (2, 5)])
    assert p.coeffs == (1, 0, 1)  # k^2 + 1


def test_ehr_star_chain():
    g = GroundSet(["a", "b"])
    p = ehr_star(chain(g))
    assert p == RationalPoly([0, Fraction(-1, 2), Fraction(1, 2)])  # C(k,2)


def test_ehr_star_vee(abc):
    P = from_relations(abc, [("a", "b"), ("c", "b")])
    # k(k-1)(2k-1)/6: squares summed
    assert ehr_star(P) == RationalPoly(
        [0, Fraction(1, 6), Fraction(-1, 2), Fraction(1, 3)]
    )


def test_ehr_star_bubbles_collapse(abc):
    # one bubble means one free value
    assert ehr_star(coarse(abc)) == RationalPoly([0, 1])


def test_ehr_weak_chain():
    g = GroundSet(["a", "b"])
    # weakly decreasing pairs from {0..k}: C(k+2,2)
    assert ehr(chain(g)) == RationalPoly([1, Fraction(3, 2), Fraction(1, 2)])


def test_reciprocity(abc):
    # strict count at k equals (-1)^d times the weak count at -k-1
    for P in enumerate_preorders(abc):
        d = ehr(P).degree
        lhs = ehr_star(P)
        rhs = ehr(P).compose_linear(-1, -1) * Fraction((-1) ** d)
        assert lhs == rhs


def test_chi_hexagon(hexagon):
    assert chi(hexagon) == RationalPoly([0, 2, -3, 1])  # k(k-1)(k-2)


def test_chi_pentagon(pentagon):
    p = chi(pentagon)
    assert p.degree == 3
    # five vertices, so five strict-count summands
    assert p.eval_at(1) == 0
    assert p.eval_at(2) >= 0


def test_chi_of_cones(abc):
    # the cone of a chain counts its order-preserving strict maps
    for n in range(1, 5):
        g = GroundSet([chr(97 + i) for i in range(n)])
        p = chi(low_of(chain(g)))
        from math import comb

        for k in range(n, n + 4):
            assert p.eval_at(k) == comb(k, n)


def test_chi_multiplicative(hexagon):
    u = permutahedron([2, 1], labels=["x", "y"])
    assert chi(product(u, hexagon)) == chi(u) * chi(hexagon)


def test_chi_character_matches_chi(abc, hexagon, pentagon):
    for z in [hexagon, pentagon, cardinality_fn(abc)]:
        p = chi(z)
        for n in range(5):
            assert chi_character(z, n) == p.eval_at(n)


def test_chi_character_rejects(hexagon, abc):
    with pytest.raises(ValidationError):
        chi_character(hexagon, -1)
    with pytest.raises(ValidationError):
        chi_character(low_of(chain(abc)), 2)  # needs extended=True


def test_chi_character_extended(abc):
    z = low_of(chain(abc))
    p = chi(z)
    for n in range(5):
        assert chi_character(z, n, extended=True) == p.eval_at(n)


def test_bjr_uniform():
    M = uniform_matroid(1, 2)
    # unique maximum iff the two values differ
    for n in range(1, 5):
        assert bjr_count(M, n) == n * n - n


def test_bjr_matches_chi():
    for M in [uniform_matroid(1, 2), uniform_matroid(2, 3)]:
        p = chi(matroid_rank(M))
        for n in range(5):
            assert bjr_count(M, n) == p.eval_at(n)
