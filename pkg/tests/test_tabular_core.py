import pytest

from tabular.asymptotic import build_asymptotic, phi, phi_full_leading_defect
from tabular.cellular import (cyclic2_cell_datum, lift_cell_datum, symmetric_cell_datum, trivial_cell_datum,
                              verify_cell_datum)
from tabular.cli import RunConfig, run_suites
from tabular.datum import Label, a_function, bracket
from tabular.laurent import ONE, QUANTUM_TWO
from tabular.matrix_table import MUTANTS, make_matrix_table
from tabular.table_algebra import cyclic_group_ring, golden, symmetric_group_ring, trivial_table
from tabular.tl_ade import build_table_datum_ade, coxeter_graph


def suite(inst, name="matrix"):
    return run_suites(RunConfig(name), inst)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("G", [golden(), cyclic_group_ring(3), trivial_table()], ids=lambda G: G.name)
def test_matrix_instances_pass_every_suite(n, G):
    rep = suite(make_matrix_table(n, G))
    assert rep.ok, rep.render()


def test_matrix_instance_is_a_single_cell_with_a_zero():
    inst = make_matrix_table(2, golden())
    assert inst.datum.lambdas == [0]
    assert {a_function(inst, X) for X in inst.basis()} == {0}
    assert len(inst.basis()) == 2 * 2 * 2


@pytest.mark.parametrize("mutant, axiom, check", [("broken-star", "A2", "A2"),
                                                  ("asymmetric-trace", "A5", "A5-star"),
                                                  ("dropped-idempotent", "A1", "A1-idempotents")])
def test_mutants_fail_the_expected_axiom(mutant, axiom, check):
    inst = make_matrix_table(2, golden(), mutant)
    rep = suite(inst)
    axioms_failed = {c.name.split("-")[0] for c in rep.failures() if c.name[:2] in ("A1", "A2", "A3", "A4", "A5")}
    assert axioms_failed == {axiom}, rep.render()
    assert rep.get(check).witness


def test_mutant_names_are_validated():
    assert set(MUTANTS) == {"broken-star", "asymmetric-trace", "dropped-idempotent"}
    with pytest.raises(ValueError):
        make_matrix_table(2, golden(), "nonsense")


def test_bracket_of_a_matrix_cell_is_kronecker():
    inst = make_matrix_table(3, golden())
    assert bracket(inst, 0, 1, 1) == {"1": ONE}
    assert bracket(inst, 0, 1, 2) == {}


def test_phi_of_the_identity_spreads_over_every_cell():
    # Phi(1) = sum over generalized units; on TL(A2) the unit has weight one on
    # t_{b_1} and t_{b_2} in the lower cell, so the leading-term property only
    # holds cell by cell.
    inst = build_table_datum_ade(coxeter_graph("A", 2))
    one = inst.label_of[()]
    image = phi(inst, one)
    lower = {inst.format_label(Z): str(p) for Z, p in image.items() if Z.lam != one.lam}
    assert lower == {"b_1": "1", "b_2": "1"}
    defects = {(inst.format_label(X), inst.format_label(Z)) for X, Z, _ in phi_full_leading_defect(inst)}
    assert ("b_e", "b_1") in defects and ("b_e", "b_2") in defects
    assert suite(inst, "tl").ok


@pytest.mark.parametrize("cd", [cyclic2_cell_datum(), symmetric_cell_datum(1), symmetric_cell_datum(2),
                                symmetric_cell_datum(3), trivial_cell_datum(trivial_table())],
                         ids=["Z2", "S1", "S2", "S3", "trivial"])
def test_static_cell_data_are_cell_data(cd):
    rep = verify_cell_datum(cd)
    assert rep.ok, rep.render()


def test_golden_has_no_rank_one_trivial_datum():
    with pytest.raises(ValueError):
        trivial_cell_datum(golden())


@pytest.mark.parametrize("G, cd", [(cyclic_group_ring(2), cyclic2_cell_datum()),
                                   (symmetric_group_ring(3), symmetric_cell_datum(3))], ids=["Z2", "S3"])
def test_lift_produces_a_cell_datum(G, cd):
    inst = make_matrix_table(2, G)
    lifted, rep = lift_cell_datum(inst, {0: cd})
    assert rep.ok, rep.render()
    assert len(lifted.element) == len(inst.basis())


def test_asymptotic_product_in_a_matrix_cell():
    inst = make_matrix_table(2, golden())
    alg, rep = build_asymptotic(inst)
    assert rep.ok
    X = Label(0, 1, "x", 2)
    Y = Label(0, 2, "x", 1)
    assert alg.product(X, Y) == {Label(0, 1, "1", 1): 1, Label(0, 1, "x", 1): 1}
    assert inst.product(X, Y).coeff(Label(0, 1, "x", 1)) == ONE
    assert QUANTUM_TWO.degree() == 1
