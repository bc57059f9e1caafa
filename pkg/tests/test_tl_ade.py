import csv
import itertools
from math import comb
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planar_oracle import stack, word_diagram
from tabular.cli import RunConfig, run_suites
from tabular.datum import a_function
from tabular.laurent import parse_laurent
from tabular.tl_ade import (BudgetExceeded, CoxeterGraphError, build_table_datum_ade, canonical, cell_module,
                            coxeter_graph, enumerate_wc, format_word, graph_from_edges, involution_report,
                            is_fc_reduced, multiply_basis, parse_graph, parse_word, trace_identity,
                            validate_graph, verify_cell_module, word_product)

GOLDEN = Path(__file__).parent / "golden"


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def golden_counts() -> dict[str, int]:
    with open(GOLDEN / "fc_counts.tsv") as fh:
        return {row["graph"]: int(row["count"]) for row in csv.DictReader(fh, delimiter="\t")}


def test_golden_counts_match_closed_forms():
    counts = golden_counts()
    for n in range(1, 6):
        assert counts[f"A{n}"] == catalan(n + 1)
    for n in (4, 5):
        # D_n: (n + 3)/2 * C_n - 1
        assert counts[f"D{n}"] == (n + 3) * catalan(n) // 2 - 1


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6"])
def test_enumeration_matches_golden_counts(name):
    enum = enumerate_wc(parse_graph(name))
    assert enum.complete
    assert len(enum.words) == golden_counts()[name]


def test_budget_stops_the_enumeration():
    enum = enumerate_wc(parse_graph("E7"), budget=1000)
    assert not enum.complete and len(enum.words) == 1000
    with pytest.raises(BudgetExceeded):
        build_table_datum_ade(parse_graph("E7"))


def test_a2_words_and_products():
    g = parse_graph("A2")
    assert [format_word(w) for w in enumerate_wc(g).words] == ["e", "1", "2", "12", "21"]
    assert multiply_basis(g, (1, 2), (2, 1)) == (1, (1,))
    assert multiply_basis(g, (1,), (2, 1)) == (0, (1,))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_structure_constants_match_planar_diagrams(n):
    g = coxeter_graph("A", n - 1)
    words = enumerate_wc(g).words
    diagram = {w: word_diagram(n, w) for w in words}
    assert all(m == 0 for m, _ in diagram.values())
    back = {d: w for w, (_, d) in diagram.items()}
    assert len(back) == len(words) == catalan(n)
    for x, y in itertools.product(words, repeat=2):
        loops, d = stack(n, diagram[x][1], diagram[y][1])
        assert multiply_basis(g, x, y) == (loops, back[d]), (x, y)


@given(st.lists(st.integers(1, 4), max_size=12))
def test_free_words_reduce_like_diagrams(word):
    n = 5
    g = coxeter_graph("A", n - 1)
    m, z = word_product(g, word)
    loops, d = word_diagram(n, word)
    assert m == loops
    assert word_diagram(n, z) == (0, d)


@given(st.sampled_from(["D4", "D5", "E6"]), st.data())
def test_canonical_form_is_a_class_invariant(name, data):
    g = parse_graph(name)
    words = enumerate_wc(g).words
    w = data.draw(st.sampled_from(words))
    assert canonical(g, w) == w and is_fc_reduced(g, w)
    # swapping an adjacent commuting pair stays in the class
    if len(w) >= 2:
        k = data.draw(st.integers(0, len(w) - 2))
        if g.commute(w[k], w[k + 1]) and w[k] != w[k + 1]:
            swapped = w[:k] + (w[k + 1], w[k]) + w[k + 2:]
            assert canonical(g, swapped) == w


@given(st.sampled_from(["D4", "E6"]), st.data())
def test_product_is_associative_on_d_and_e(name, data):
    g = parse_graph(name)
    words = enumerate_wc(g).words
    x, y, z = (data.draw(st.sampled_from(words)) for _ in range(3))
    m1, xy = multiply_basis(g, x, y)
    m2, left = multiply_basis(g, xy, z)
    m3, yz = multiply_basis(g, y, z)
    m4, right = multiply_basis(g, x, yz)
    assert (m1 + m2, left) == (m3 + m4, right)


@pytest.mark.parametrize("name", ["A2", "A3", "A4", "D4"])
def test_tl_instances_pass_every_suite(name):
    inst = build_table_datum_ade(parse_graph(name))
    rep = run_suites(RunConfig("tl"), inst)
    assert rep.ok, rep.render()


def test_a3_cells_and_trace():
    inst = build_table_datum_ade(parse_graph("A3"))
    assert [len(inst.datum.tableaux[lam]) for lam in inst.datum.lambdas] == [1, 3, 2]
    assert inst.datum.tableaux["c2"] == ["13", "2132"]
    assert [a_function(inst, inst.cell(lam)[0]) for lam in inst.datum.lambdas] == [0, 1, 2]
    assert trace_identity(inst) == parse_laurent("1+3v^-2+2v^-4")
    assert inst.trace(inst.label_of[()]) == trace_identity(inst)


def test_d4_cells():
    inst = build_table_datum_ade(parse_graph("D4"))
    assert sorted(a_function(inst, inst.cell(lam)[0]) for lam in inst.datum.lambdas) == [0, 1, 2, 2, 2, 3]
    assert involution_report(inst).ok
    for lam in inst.datum.lambdas:
        assert verify_cell_module(inst, cell_module(inst, lam)).ok


def test_graph_validation():
    assert validate_graph(graph_from_edges(4, [(1, 3), (2, 3), (3, 4)])).kind == "D"
    with pytest.raises(CoxeterGraphError):
        validate_graph(graph_from_edges(3, [(1, 2), (2, 3), (3, 1)]))
    with pytest.raises((CoxeterGraphError, ValueError)):
        parse_graph("F4")


def test_word_codec():
    assert parse_word("e") == ()
    assert parse_word("2132") == (2, 1, 3, 2)
    assert format_word((10, 2)) == "10.2" and parse_word("10.2") == (10, 2)
