"""Cell data for table algebras and the lift to a cell datum of the whole algebra.

Given a cell datum for each Gamma(lam), the basis C^{C_lam(s,t)}_{S,T}
indexed by the lexicographic poset {(lam, lam')} is a cell datum for
the tabular algebra.  `verify_cellular` checks C1-C3 by brute force.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable

import sympy

from .datum import Element, Label, TabularInstance
from .report import Report, Sweep
from .table_algebra import TableAlgebra, cyclic_group_ring, symmetric_group_ring


@dataclass
class CellDatum:
    """Cell datum of a Z-algebra with basis given by a table algebra.

    `basis[(mu, s, t)]` is a Z-combination of table labels; `less` holds
    pairs (mu, nu) with mu < nu; `lambdas` lists the poset.
    """

    algebra: TableAlgebra
    lambdas: list
    less: frozenset
    tableaux: dict
    basis: dict


def _chain(xs: list) -> frozenset:
    return frozenset((xs[i], xs[j]) for i in range(len(xs)) for j in range(i + 1, len(xs)))


def trivial_cell_datum(G: TableAlgebra) -> CellDatum:
    if G.rank != 1:
        raise ValueError("trivial cell datum needs a rank-one algebra")
    return CellDatum(G, ["*"], frozenset(), {"*": ["*"]}, {("*", "*", "*"): {G.identity: 1}})


def cyclic2_cell_datum() -> CellDatum:
    """Z[C_2]: the ideal spanned by 1+g below the cell of 1."""
    G = cyclic_group_ring(2)
    lams = ["2", "11"]
    basis = {("2", "*", "*"): {0: 1, 1: 1}, ("11", "*", "*"): {0: 1}}
    return CellDatum(G, lams, _chain(lams), {lam: ["*"] for lam in lams}, basis)


def _group_elt_product(G: TableAlgebra, *parts: dict) -> dict:
    acc = {G.identity: 1}
    for p in parts:
        acc = G.multiply(acc, p)
    return acc


def symmetric_cell_datum(t: int) -> CellDatum:
    """A Murphy-type cell datum for Z S_t, t <= 3, with the inversion involution.

    Partitions are ordered so that more dominant shapes lie lower; the
    data are static and C1-C3 are re-verified by `verify_cell_datum`.
    """
    G = symmetric_group_ring(t)
    e = tuple(range(t))
    if t <= 1:
        lam = str(t)
        return CellDatum(G, [lam], frozenset(), {lam: ["*"]}, {(lam, "*", "*"): {e: 1}})
    if t == 2:
        s = (1, 0)
        lams = ["2", "11"]
        basis = {("2", "*", "*"): {e: 1, s: 1}, ("11", "*", "*"): {e: 1}}
        return CellDatum(G, lams, _chain(lams), {lam: ["*"] for lam in lams}, basis)
    if t == 3:
        lams = ["3", "21", "111"]
        x21 = {e: 1, (1, 0, 2): 1}
        d = {"a": {e: 1}, "b": {(0, 2, 1): 1}}
        basis = {("3", "*", "*"): {p: 1 for p in G.labels()}, ("111", "*", "*"): {e: 1}}
        for i, j in itertools.product("ab", repeat=2):
            di_inv = {G.bar(p): c for p, c in d[i].items()}
            basis[("21", i, j)] = _group_elt_product(G, di_inv, x21, d[j])
        tab = {"3": ["*"], "21": ["a", "b"], "111": ["*"]}
        return CellDatum(G, lams, _chain(lams), tab, basis)
    raise ValueError("static symmetric-group cell data ships for t <= 3 only")


def _unimodular_inverse(G: TableAlgebra, cd: CellDatum) -> tuple[list, list, dict] | None:
    """Inverse of the transition matrix from cell basis to table basis, or None if not unimodular."""
    labels = G.labels()
    keys = sorted(cd.basis, key=str)
    if len(keys) != len(labels):
        return None
    m = sympy.Matrix(len(keys), len(labels), lambda i, j: cd.basis[keys[i]].get(labels[j], 0))
    if m.det() not in (1, -1):
        return None
    inv = m.inv()
    # row b of inv gives the cell-basis coordinates of the table label b
    coords = {labels[j]: {keys[i]: int(inv[j, i]) for i in range(len(keys)) if inv[j, i] != 0}
              for j in range(len(labels))}
    return keys, labels, coords


def verify_cell_datum(cd: CellDatum) -> Report:
    """Brute-force C1-C3 for a cell datum of a table algebra, with involution bar."""
    G = cd.algebra
    rep = Report(f"cell datum: {G.name}")
    inv = _unimodular_inverse(G, cd)
    rep.add("C1", inv is not None, len(cd.basis), "" if inv else "cell basis is not a Z-basis")
    if inv is None:
        return rep
    _, _, coords = inv

    def to_cells(x: dict) -> dict:
        out: dict = {}
        for b, c in x.items():
            for k, w in coords[b].items():
                out[k] = out.get(k, 0) + c * w
        return {k: c for k, c in out.items() if c}

    with Sweep(rep, "C2") as sw:
        for (mu, s, t), x in cd.basis.items():
            sw.record(G.bar_element(x) == {b: c for b, c in cd.basis[(mu, t, s)].items() if c},
                      f"C({mu},{s},{t})* != C({mu},{t},{s})")
    with Sweep(rep, "C3") as sw:
        for a in G.labels():
            for (mu, s, t), x in cd.basis.items():
                got = {k: c for k, c in to_cells(G.multiply({a: 1}, x)).items() if (k[0], mu) not in cd.less}
                for k in got:
                    sw.record(k[0] == mu and k[2] == t, f"a={G.format_label(a)}: a*C({mu},{s},{t}) leaves row")
                row = {k[1]: c for k, c in got.items()}
                for t2 in cd.tableaux[mu]:
                    got2 = {k: c for k, c in to_cells(G.multiply({a: 1}, cd.basis[(mu, s, t2)])).items()
                            if (k[0], mu) not in cd.less}
                    sw.record({k[1]: c for k, c in got2.items() if k[2] == t2} == row and all(k[2] == t2 for k in got2),
                              f"a={G.format_label(a)}: r_a depends on t at ({mu},{s},{t2})")
    return rep


# --- the lift -----------------------------------------------------------------------


@dataclass
class LiftedCellDatum:
    inst: TabularInstance
    lambdas: list
    less: frozenset
    tableaux: dict
    element: dict  # ((lam, lam'), (S, s), (T, t)) -> Element
    coords: dict   # lam -> table label -> {(lam', s, t): int}


def lift_cell_datum(inst: TabularInstance, cell_data: dict[Hashable, CellDatum]) -> tuple[LiftedCellDatum, Report]:
    d = inst.datum
    rep = Report(f"lifted cell datum: {inst.name}")
    lambdas = [(lam, mu) for lam in d.lambdas for mu in cell_data[lam].lambdas]
    less = frozenset(
        (p, q) for p, q in itertools.product(lambdas, repeat=2)
        if d.is_below(p[0], q[0]) or (p[0] == q[0] and (p[1], q[1]) in cell_data[p[0]].less)
    )
    tableaux = {(lam, mu): [(S, s) for S in d.tableaux[lam] for s in cell_data[lam].tableaux[mu]]
                for lam, mu in lambdas}
    element: dict = {}
    coords: dict = {}
    for lam in d.lambdas:
        cd = cell_data[lam]
        inv = _unimodular_inverse(inst.gamma_of(lam), cd)
        rep.add(f"C1-gamma[{lam}]", inv is not None, 1, "" if inv else "cell basis of Gamma is not a Z-basis")
        if inv is None:
            return LiftedCellDatum(inst, lambdas, less, tableaux, element, coords), rep
        coords[lam] = inv[2]
        for (mu, s, t), x in cd.basis.items():
            for S, T in itertools.product(d.tableaux[lam], repeat=2):
                element[((lam, mu), (S, s), (T, t))] = Element({Label(lam, S, b, T): c for b, c in x.items()})
    lifted = LiftedCellDatum(inst, lambdas, less, tableaux, element, coords)
    rep.extend(verify_cellular(lifted))
    return lifted, rep


def _to_lifted(lifted: LiftedCellDatum, x: Element) -> dict:
    out: dict = {}
    for X, c in x.items():
        for (mu, s, t), w in lifted.coords[X.lam][X.b].items():
            key = ((X.lam, mu), (X.S, s), (X.T, t))
            out[key] = out[key] + c * w if key in out else c * w
    return {k: c for k, c in out.items() if c}


def verify_cellular(lifted: LiftedCellDatum) -> Report:
    inst = lifted.inst
    rep = Report(f"C1-C3: {inst.name}")
    with Sweep(rep, "C1") as sw:
        for p, q in lifted.less:
            sw.record((q, p) not in lifted.less and p != q, f"order not strict at {p}, {q}")
        count = sum(len(m) ** 2 for m in lifted.tableaux.values())
        sw.record(count == len(inst.basis()) == len(lifted.element), f"{count} cell labels vs {len(inst.basis())}")
    with Sweep(rep, "C2") as sw:
        for (mu, P, Q), x in lifted.element.items():
            sw.record(inst.star_element(x) == lifted.element[(mu, Q, P)], f"C'({mu},{P},{Q})* mismatch")
    with Sweep(rep, "C3") as sw:
        for X in inst.basis():
            for (mu, P, Q), x in lifted.element.items():
                prod = _to_lifted(lifted, inst.multiply_elements(Element.basis(X), x))
                kept = {k: c for k, c in prod.items() if (k[0], mu) not in lifted.less}
                row = {}
                for k, c in kept.items():
                    if k[0] != mu or k[2] != Q:
                        sw.fail(f"{inst.format_label(X)} * C'({mu},{P},{Q}) has term outside the row: {k}")
                    row[k[1]] = c
                for Q2 in lifted.tableaux[mu]:
                    if Q2 == Q:
                        continue
                    prod2 = _to_lifted(lifted, inst.multiply_elements(Element.basis(X), lifted.element[(mu, P, Q2)]))
                    kept2 = {k[1]: c for k, c in prod2.items() if (k[0], mu) not in lifted.less}
                    sw.record(kept2 == row, f"r_a depends on T at a={inst.format_label(X)}, {mu}, {P}, {Q2}")
    return rep

