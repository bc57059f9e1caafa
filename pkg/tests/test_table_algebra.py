import itertools

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from tabular.table_algebra import (ChebyshevAlgebra, IntegerLaurentAlgebra, WindowExhausted,
                                   check_semisimple_small, compose_perm, cyclic_group_ring, dump_table,
                                   golden, kappa, load_table, perm_cycles, symmetric_group_ring,
                                   table_from_name, trivial_table, verify_table_axioms)

x = sympy.Symbol("x")


def u_poly(k: int):
    """U_k(x/2): the Chebyshev basis normalised so that x U_k = U_{k+1} + U_{k-1}."""
    return sympy.expand(sympy.chebyshevu(k, x / 2))


def in_u_basis(poly) -> dict[int, int]:
    """Peel off leading terms; every U_k is monic of degree k."""
    poly, out = sympy.Poly(sympy.expand(poly), x), {}
    while not poly.is_zero:
        k = poly.degree()
        c = int(poly.LC())
        out[k] = c
        poly = poly - sympy.Poly(c * u_poly(k), x)
    return out


@pytest.mark.parametrize("A", [golden(), trivial_table(), symmetric_group_ring(3)]
                         + [cyclic_group_ring(t) for t in range(1, 7)], ids=lambda A: A.name)
def test_finite_tables_satisfy_the_axioms(A):
    rep = verify_table_axioms(A)
    assert rep.ok, rep.render()


def test_infinite_tables_on_windows():
    assert verify_table_axioms(ChebyshevAlgebra(8)).ok
    assert verify_table_axioms(IntegerLaurentAlgebra(8)).ok


def test_chebyshev_linearization_matches_the_polynomial_oracle():
    C = ChebyshevAlgebra(8)
    for k, kk in itertools.product(range(9), repeat=2):
        assert C.product(k, kk) == in_u_basis(u_poly(k) * u_poly(kk)), (k, kk)


def test_golden_relation_and_kappa():
    G = golden()
    assert G.product("x", "x") == {"1": 1, "x": 1}
    assert kappa("1", G.product("x", "x")) == 1
    assert check_semisimple_small(G)


def test_group_ring_bar_is_inversion():
    S3 = symmetric_group_ring(3)
    for p in S3.labels():
        assert compose_perm(p, S3.bar(p)) == (0, 1, 2)
    assert perm_cycles((1, 2, 0)) == "(1 2 3)"
    assert perm_cycles((0, 1)) == "1"


def test_integer_laurent_bar_negates():
    L = IntegerLaurentAlgebra(3)
    assert L.bar(2) == -2 and L.product(2, -3) == {-1: 1}
    with pytest.raises(WindowExhausted):
        L.multiply({4: 1}, {0: 1})


@pytest.mark.parametrize("name", ["golden", "z4", "s3", "trivial"])
def test_dump_load_roundtrip(name):
    A = table_from_name(name)
    B = load_table(dump_table(A))
    assert dump_table(B) == dump_table(A)
    assert verify_table_axioms(B).ok


def test_load_rejects_malformed_rows():
    with pytest.raises(ValueError):
        load_table("kind finite\nrank 1\nidentity 0\nbar 0\n0 0 0\n")


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_chebyshev_is_commutative_and_associative(a, b, c):
    C = ChebyshevAlgebra(None)
    assert C.product(a, b) == C.product(b, a)
    assert C.multiply_any(C.product(a, b), {c: 1}) == C.multiply_any({a: 1}, C.product(b, c))
