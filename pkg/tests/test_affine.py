import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

import periodic_oracle as po
from tabular.affine import (BOT, TOP, AffineError, affine_generators_relations, affine_multiply,
                            annular_involutions, build_table_datum_affine, chebyshev_to_power, codec_report,
                            e_gen, format_affine, format_triple, from_triple, i_zero, identity, is_annular,
                            is_tl_diagram, make_diagram, parse_affine, parse_triple, power_to_chebyshev, shift_u,
                            to_triple, torus_trace, window_diagrams, winding_number)
from tabular.axioms import check_a_override, verify_A1_A3, verify_A4, verify_A5_trace
from tabular.asymptotic import build_asymptotic, check_gamma_cyclic
from tabular.laurent import ONE, QUANTUM_TWO, LaurentPoly


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def library_word(n: int, letters):
    acc = {identity(n): ONE}
    for x in letters:
        g = shift_u(n) if x == "u" else shift_u(n, -1) if x == "U" else e_gen(n, x)
        acc = affine_multiply(acc, {g: ONE})
    return acc


def as_periodic(D) -> po.Periodic:
    row = {TOP: "t", BOT: "b"}
    top = {i: (row[r], q) for i, (r, q) in enumerate(D.top, 1)}
    bottom = {i: (row[r], q) for i, (r, q) in enumerate(D.bottom, 1)}
    return po.from_map(D.n, top, bottom, D.bands)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_relations(n):
    rep = affine_generators_relations(n)
    assert rep.ok, rep.render()


@given(st.integers(3, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.sampled_from(["u", "U"] + list(range(1, n + 1))), max_size=9))))
def test_products_match_periodic_patch_oracle(case):
    n, letters = case
    loops, expected = po.word(n, letters)
    (D, c), = library_word(n, letters).items()
    assert c == QUANTUM_TWO ** loops
    assert as_periodic(D) == expected


def test_winding_of_u():
    assert winding_number(shift_u(4)) == 1
    assert winding_number(shift_u(4, -1)) == -1
    assert winding_number(shift_u(4, 3)) == 3
    assert winding_number(identity(5)) == 0


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_annular_involution_counts(n):
    for t in range(n, 0, -2):
        assert len(annular_involutions(n, t)) == comb(n, (n - t) // 2)
    assert len(i_zero(n)) == (comb(n, n // 2) if n % 2 == 0 else 0)


def test_annular_condition():
    assert is_annular(((1, 2),), 3)
    assert is_annular(((1, 4), (2, 3)), 4)
    assert not is_annular(((1, 3),), 4)   # 2 inside, 4 outside
    assert not is_annular(((1, 3), (2, 4)), 4)


@pytest.mark.parametrize("n, w, k, size", [(4, 2, 2, 193), (5, 2, 2, 630)])
def test_basis_sizes(n, w, k, size):
    derived = sum(comb(n, (n - t) // 2) ** 2 * (2 * w + 1) for t in range(n, 0, -2))
    if n % 2 == 0:
        derived += comb(n, n // 2) ** 2 * (k + 1)
    assert derived == size
    assert len(build_table_datum_affine(n, w, k).basis()) == size
    assert len(window_diagrams(n, w, k)) == size


@pytest.mark.parametrize("n", [4, 5])
def test_codec_roundtrip(n):
    rep = codec_report(n, 3, 3)
    assert rep.ok, rep.render()


def test_text_codec_examples():
    D = e_gen(4, 4)
    assert format_affine(D) == "4; T:(4,5); B:(4,5); P:(2,2),(3,3); w=0"
    assert parse_affine("4; T:; B:; P:(2,1),(3,2),(4,3),(5,4); w=1") == shift_u(4)
    with pytest.raises(ValueError):
        parse_affine("4; T:; B:; P:(2,1),(3,2),(4,3),(5,4); w=0")
    with pytest.raises(AffineError):
        make_diagram(4, [(1, 3)], [(1, 2)], [(2, 3), (4, 4)])
    assert parse_triple(format_triple(((1, 2),), ((2, 3),), -1)) == (((1, 2),), ((2, 3),), -1)


def test_triple_payload_is_the_winding():
    S = ((2, 3),)
    for w in range(-3, 4):
        D = from_triple(4, S, S, w)
        assert to_triple(D) == (S, S, w)
        assert winding_number(D) == w


def test_chebyshev_change_of_basis():
    assert power_to_chebyshev(4) == {4: 1, 2: 3, 0: 2}
    for k in range(0, 12, 2):
        assert power_to_chebyshev(k).get(0, 0) == catalan(k // 2)
    for k in range(9):
        # inverse pair: expand U_k in powers, then each power back into the U basis
        back: dict = {}
        for e, c in chebyshev_to_power(k).items():
            for j, d in power_to_chebyshev(e).items():
                back[j] = back.get(j, 0) + c * d
        assert {j: c for j, c in back.items() if c} == {k: 1}


def test_torus_trace_values():
    n = 4
    assert torus_trace(identity(n)) == ONE
    assert torus_trace(shift_u(n)) == LaurentPoly()
    S = ((1, 2), (3, 4))
    for k in range(6):
        D = from_triple(n, S, S, k)
        want = QUANTUM_TWO ** 2 * LaurentPoly.monomial(-n, power_to_chebyshev(k).get(0, 0))
        assert torus_trace(D) == want
    assert torus_trace(from_triple(n, S, S, 4)) == QUANTUM_TWO ** 2 * LaurentPoly.monomial(-4, 2)


def test_tl_subalgebra_predicate():
    n = 4
    assert all(is_tl_diagram(e_gen(n, i)) for i in range(1, n + 1))
    assert is_tl_diagram(identity(n)) and not is_tl_diagram(shift_u(n))
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        for D in affine_multiply({e_gen(n, i): ONE}, {e_gen(n, j): ONE}):
            assert is_tl_diagram(D)


@pytest.mark.parametrize("n", [4, 5])
def test_windowed_axioms(n):
    inst = build_table_datum_affine(n, 2, 2)
    for rep in (verify_A1_A3(inst, inst.generators), verify_A4(inst), verify_A5_trace(inst),
                check_a_override(inst)):
        assert rep.ok, rep.render()


def test_asymptotic_structure_on_the_n4_window():
    inst = build_table_datum_affine(4, 2, 2)
    alg, rep = build_asymptotic(inst)
    assert rep.ok, rep.render()
    assert check_gamma_cyclic(inst).ok
