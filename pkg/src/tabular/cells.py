"""Two-sided cells from the multiplication preorder, and Lusztig's a-function."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

import networkx as nx

from .datum import Element, Label, TabularInstance, a_function
from .laurent import NEG_INF
from .report import Report, Sweep


@dataclass
class TwoCellDecomposition:
    cells: list[tuple[Hashable, list[Label]]]
    order: set[tuple[int, int]]
    """(i, j) in order means cell i lies weakly below cell j (reachable from j)."""

    def cell_of(self, X: Label) -> int:
        for i, (_, labels) in enumerate(self.cells):
            if X in labels:
                return i
        raise KeyError(X)


def preorder_graph(inst: TabularInstance) -> nx.DiGraph:
    """Edge X -> X' whenever X' occurs in K X K' for windowed K, K'."""
    B = inst.basis()
    graph = nx.DiGraph()
    graph.add_nodes_from(B)
    for X in B:
        reach: set[Label] = set()
        for K in B:
            left = inst.product(K, X)
            if not left:
                continue
            for K2 in B:
                reach |= inst.multiply_elements(left, Element.basis(K2)).support()
        graph.add_edges_from((X, Y) for Y in reach if inst.in_window(Y))
    return graph


def preorder_cells(inst: TabularInstance) -> tuple[TwoCellDecomposition, Report]:
    rep = Report(f"cells: {inst.name}")
    graph = preorder_graph(inst)
    comps = [set(c) for c in nx.strongly_connected_components(graph)]
    cond = nx.condensation(graph, comps)
    closure = nx.transitive_closure_dag(cond)

    expected = {lam: set(inst.cell(lam)) for lam in inst.datum.lambdas}
    cells: list[tuple[Hashable, list[Label]]] = []
    comp_to_cell: dict[int, int] = {}
    with Sweep(rep, "cells-match-datum") as sw:
        for ci, comp in enumerate(comps):
            lams = {X.lam for X in comp}
            lam = next(iter(lams))
            ok = len(lams) == 1 and comp == expected[lam]
            sw.record(ok, f"component {sorted(inst.format_label(X) for X in comp)[:4]} vs cell {lam!r}")
            comp_to_cell[ci] = len(cells)
            cells.append((lam, inst.sorted_labels(comp)))
        sw.record(len(comps) == len(expected), f"{len(comps)} components for {len(expected)} cells")
    order = {(comp_to_cell[j], comp_to_cell[i]) for i, j in closure.edges()}
    order |= {(i, i) for i in range(len(cells))}

    # the induced cell order must be compatible with the poset: X' below X forces lam' <= lam
    with Sweep(rep, "cells-order-compatible") as sw:
        for lo, hi in order:
            mu, lam = cells[lo][0], cells[hi][0]
            sw.record(mu == lam or inst.datum.is_below(mu, lam), f"cell {mu!r} reachable from {lam!r}")
    # sort cells in poset enumeration order for deterministic output
    pos = {lam: i for i, lam in enumerate(inst.datum.lambdas)}
    perm = sorted(range(len(cells)), key=lambda i: pos[cells[i][0]])
    renum = {old: new for new, old in enumerate(perm)}
    cells = [cells[i] for i in perm]
    order = {(renum[i], renum[j]) for i, j in order}
    return TwoCellDecomposition(cells, order), rep


def lusztig_a(inst: TabularInstance, Z: Label) -> int:
    """Least n >= 0 with v^-n Z L_lam inside L_lam, L_lam the A^- span of the cell of Z."""
    cell = inst.cell(Z.lam)
    best = NEG_INF
    for X in cell:
        prod = inst.product(Z, X)
        for Y in cell:
            d = prod.coeff(Y).degree()
            if d > best:
                best = d
    return max(0, best) if best is not NEG_INF else 0


def lusztig_a_crosscheck(inst: TabularInstance) -> Report:
    rep = Report(f"lusztig-a: {inst.name}")
    with Sweep(rep, "lusztig-a") as sw:
        for Z in inst.basis():
            a = a_function(inst, Z)
            n = lusztig_a(inst, Z)
            sw.record(a == n, f"{inst.format_label(Z)}: a={a}, Lusztig scan {n}")
    return rep
