import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from k3ulrich import (
    A, B, H, ZERO, DivisorClass, GramLattice, InertiaSignature, ParameterError, RootError,
    build_k3_lattice, degree, inertia, is_even, is_primitive, pairing, reflect, self_intersection,
)
from k3ulrich.enumeration import enumerate_classes
from k3ulrich.lattice import determinant, diagonalize

coords = st.tuples(*[st.integers(-10, 10)] * 3).map(DivisorClass)


def oracle_signature(gram):
    """Eigenvalue signs in floating point, with sympy deciding singularity."""
    det = sympy.Matrix(gram).det()
    ev = np.linalg.eigvalsh(np.array(gram, dtype=float))
    tol = 1e-9 * max(1.0, np.abs(ev).max())
    zero = 3 - sympy.Matrix(gram).rank()
    pos = int((ev > tol).sum())
    neg = int((ev < -tol).sum())
    assert pos + neg + zero == 3 and (det == 0) == (zero > 0)
    return (pos, neg, zero)


def test_build_a2_u6():
    L = build_k3_lattice(2, 6)
    assert L.gram == ((4, 6, 6), (6, 4, 6), (6, 6, 4))
    assert L.params == (2, 6)
    assert sympy.Matrix(L.gram).det() == 64
    assert determinant(L.gram) == 64


@pytest.mark.parametrize("a,u", [(1, 0), (0, 5), (-3, 1)])
def test_build_rejects_small_a(a, u):
    with pytest.raises(ParameterError):
        build_k3_lattice(a, u)


def test_gram_entries():
    for a in range(2, 12):
        for u in range(-5, 70, 7):
            L = build_k3_lattice(a, u)
            assert pairing(L, H, H) == 2 * a
            assert pairing(L, A, B) == u
            assert self_intersection(L, A) == 4 * (a - 1)
            assert degree(L, A) == degree(L, B) == 3 * a
            assert pairing(L, A, ZERO) == 0


def test_three_h_minus_a():
    for a in range(2, 20):
        L = build_k3_lattice(a, 4 * a)
        D = 3 * H - A
        assert self_intersection(L, D) == 18 * a - 18 * a + 4 * (a - 1)
        assert degree(L, D) == 3 * a
    assert (self_intersection(L, ZERO), degree(L, ZERO)) == (0, 0)


def test_degree_formula():
    L = build_k3_lattice(7, 30)
    for z, x, y in [(1, 2, 3), (-4, 0, 5), (2, -3, -3)]:
        assert degree(L, DivisorClass((z, x, y))) == 3 * 7 * x + 3 * 7 * y + 2 * 7 * z


def test_inertia_examples():
    assert inertia(build_k3_lattice(2, 6)) == InertiaSignature(1, 2, 0)
    assert inertia(build_k3_lattice(3, 9)) == (1, 2, 0)
    assert inertia(GramLattice(((1, 0, 0), (0, 1, 0), (0, 0, 1)))) == (3, 0, 0)


@pytest.mark.parametrize("gram,expected", [
    (((0, 1, 0), (1, 0, 0), (0, 0, -2)), (1, 2, 0)),  # hyperbolic plane + (-2)
    (((0, 0, 0), (0, 0, 0), (0, 0, 0)), (0, 0, 3)),
    (((0, 1, 1), (1, 0, 1), (1, 1, 0)), (1, 2, 0)),
    (((0, 0, 1), (0, 0, 0), (1, 0, 0)), (1, 1, 1)),
    (((2, 1, 0), (1, 2, 0), (0, 0, 0)), (2, 0, 1)),
])
def test_inertia_degenerate_pivots(gram, expected):
    assert tuple(inertia(gram)) == expected == oracle_signature(gram)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=6, max_size=6))
def test_inertia_matches_oracle(e):
    g = ((e[0], e[1], e[2]), (e[1], e[3], e[4]), (e[2], e[4], e[5]))
    assert tuple(inertia(g)) == oracle_signature(g)


def test_diagonal_product_is_determinant():
    for a, u in [(2, 6), (3, 11), (10, 45)]:
        L = build_k3_lattice(a, u)
        prod = 1
        for d in diagonalize(L.gram):
            prod *= d
        assert prod == determinant(L.gram)


def test_signature_sweep_with_boundary():
    for a in range(2, 51):
        for u in range(4 * a - 6, 5 * a + 7):
            L = build_k3_lattice(a, u)
            assert is_even(L)
            sig = inertia(L)
            if 4 * a - 3 <= u <= 5 * a + 3:
                assert sig == (1, 2, 0)
            else:
                assert sig != (1, 2, 0)
                if u in (4 * a - 4, 5 * a + 4):
                    assert sig.zero == 1


def test_degrees_divisible_by_a():
    for a in range(2, 30):
        L = build_k3_lattice(a, 4 * a + 1)
        row = L.gram[0]
        assert all(v % a == 0 for v in row)


def test_primitive():
    L = build_k3_lattice(2, 6)
    assert is_primitive(L, H)
    assert not is_primitive(L, 2 * A)
    assert not is_primitive(L, ZERO)
    assert is_primitive(L, DivisorClass((6, 10, 15)))


def test_not_even():
    assert not is_even(GramLattice(((1, 0, 0), (0, 2, 0), (0, 0, 2))))


def test_gram_must_be_symmetric():
    with pytest.raises(ValueError):
        GramLattice(((1, 2, 0), (0, 1, 0), (0, 0, 1)))


@settings(max_examples=200, deadline=None)
@given(coords, coords, coords, st.integers(-5, 5), st.integers(2, 12), st.integers(0, 70))
def test_pairing_bilinear_symmetric(D, E, F, k, a, u):
    L = build_k3_lattice(a, u)
    assert pairing(L, D, E) == pairing(L, E, D)
    assert pairing(L, D + k * F, E) == pairing(L, D, E) + k * pairing(L, F, E)
    assert self_intersection(L, D) % 2 == 0


def test_json_roundtrip():
    L = build_k3_lattice(123456789012345678901, 5)
    d = L.to_dict()
    assert d["gram"][0][0] == "246913578024691357802"
    assert GramLattice.from_dict(d) == L


def test_reflect_examples():
    L = build_k3_lattice(3, 9)
    G = A - B
    assert self_intersection(L, G) == -2
    assert reflect(L, G, G) == -G
    D = H
    assert pairing(L, D, G) == 0
    assert reflect(L, D, G) == D
    with pytest.raises(RootError):
        reflect(L, H, A)


def _roots(L, max_deg):
    out = []
    for d in range(-max_deg, max_deg + 1):
        out += list(enumerate_classes(L, d, -2))
    return out


def test_reflection_isometry_involution_on_grid():
    rng = random.Random(7)
    n_roots = 0
    for a in range(2, 11):
        for u in range(4 * a - 3, 5 * a + 4):
            L = build_k3_lattice(a, u)
            for G in _roots(L, 6 * a):
                n_roots += 1
                for _ in range(5):
                    D = DivisorClass(tuple(rng.randint(-10, 10) for _ in range(3)))
                    E = DivisorClass(tuple(rng.randint(-10, 10) for _ in range(3)))
                    assert pairing(L, reflect(L, D, G), reflect(L, E, G)) == pairing(L, D, E)
                    assert reflect(L, reflect(L, D, G), G) == D
    assert n_roots > 0


def test_divisor_label():
    assert (3 * H - A).label() == "3h-A"
    assert ZERO.label() == "0"
    assert DivisorClass((-1, 2, -1)).label() == "-h+2A-B"
