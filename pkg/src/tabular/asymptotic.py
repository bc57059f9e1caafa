"""The asymptotic algebra A^oo, Lusztig's properties P1-P3 and the map Phi."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .datum import Element, Label, TabularInstance, a_function
from .laurent import LaurentPoly, lp_sum
from .report import Report, Sweep
from .table_algebra import kappa


@dataclass
class AsymptoticAlgebra:
    """t-basis per cell; gamma[(X, X', X'')] holds the nonzero structure constants."""

    cells: dict[Hashable, list[Label]]
    gamma: dict[tuple[Label, Label, Label], int] = field(default_factory=dict)
    _by_pair: dict[tuple[Label, Label], dict[Label, int]] = field(default_factory=dict, repr=False)

    def product(self, X: Label, Y: Label) -> dict[Label, int]:
        return self._by_pair.get((X, Y), {})

    def multiply(self, x: dict, y: dict) -> dict:
        """Product of t-basis combinations with coefficients in Z or in A."""
        out: dict = {}
        for X, cx in x.items():
            for Y, cy in y.items():
                if X.lam != Y.lam:
                    continue
                for Z, gm in self.product(X, Y).items():
                    term = cx * cy * gm
                    out[Z] = out[Z] + term if Z in out else term
        return {Z: c for Z, c in out.items() if c}


def gamma_entries(inst: TabularInstance) -> dict[tuple[Label, Label, Label], int]:
    """All nonzero gamma_{X,Y,Z} with X, Y windowed and Z in supp(XY)."""
    out: dict = {}
    for X, Y in itertools.product(inst.basis(), repeat=2):
        for Z, g in inst.product(X, Y).items():
            c = g.coeff(a_function(inst, Z))
            if c:
                out[(X, Y, Z)] = c
    return out


def build_asymptotic(inst: TabularInstance) -> tuple[AsymptoticAlgebra, Report]:
    rep = Report(f"asymptotic: {inst.name}")
    cells = {lam: inst.cell(lam) for lam in inst.datum.lambdas}
    entries = gamma_entries(inst)
    alg = AsymptoticAlgebra(cells)
    for (X, Y, Z), c in entries.items():
        if X.lam == Y.lam == Z.lam:
            alg.gamma[(X, Y, Z)] = c
            alg._by_pair.setdefault((X, Y), {})[Z] = c

    with Sweep(rep, "gamma-within-cell") as sw:
        for (X, Y, Z), c in entries.items():
            sw.record(X.lam == Y.lam == Z.lam, f"gamma({inst.format_label(X)}, {inst.format_label(Y)}, "
                                              f"{inst.format_label(Z)}) = {c} across cells")

    with Sweep(rep, "asymptotic-associativity") as sw:
        for lam, cell in cells.items():
            for X, Y, Z in itertools.product(cell, repeat=3):
                # both bracketings must stay inside the window to be comparable
                if not all(map(inst.in_window, [*alg.product(X, Y), *alg.product(Y, Z)])):
                    continue
                lhs = alg.multiply(alg.product(X, Y), {Z: 1})
                rhs = alg.multiply({X: 1}, alg.product(Y, Z))
                sw.record(lhs == rhs, f"(t_X t_Y) t_Z != t_X (t_Y t_Z) at "
                                      f"{inst.format_label(X)}, {inst.format_label(Y)}, {inst.format_label(Z)}")

    rep.extend(check_gamma_cyclic(inst, entries))
    return alg, rep


def check_gamma_cyclic(inst: TabularInstance, entries: dict | None = None) -> Report:
    """gamma_{K1,K2,K3*} = gamma_{K2,K3,K1*} = gamma_{K3,K1,K2*} on windowed triples."""
    rep = Report(f"gamma-cyclic: {inst.name}")
    if entries is None:
        entries = gamma_entries(inst)
    with Sweep(rep, "gamma-cyclic") as sw:
        for (K1, K2, Z), c in entries.items():
            K3 = inst.star(Z)
            if not inst.in_window(K3):
                continue
            r1 = entries.get((K2, K3, inst.star(K1)), 0)
            r2 = entries.get((K3, K1, inst.star(K2)), 0)
            sw.record(c == r1 == r2, f"rotations {c}, {r1}, {r2} at "
                                     f"{inst.format_label(K1)}, {inst.format_label(K2)}, {inst.format_label(K3)}")
    return rep


def generalized_unit(inst: TabularInstance, lam: Hashable) -> list[Label]:
    one = inst.identity_b(lam)
    return [Label(lam, S, one, S) for S in inst.datum.tableaux[lam]]


# --- P1, P2, P3 -------------------------------------------------------------------

BiPoly = dict  # (exp of v, exp of v') -> int


def _bi(p: LaurentPoly, second: bool) -> BiPoly:
    return {((0, e) if second else (e, 0)): c for e, c in p.terms.items()}


def _bi_mul(p: BiPoly, q: BiPoly) -> BiPoly:
    out: BiPoly = {}
    for (a, b), c in p.items():
        for (a2, b2), c2 in q.items():
            k = (a + a2, b + b2)
            out[k] = out.get(k, 0) + c * c2
    return {k: c for k, c in out.items() if c}


def _bi_add_into(acc: dict, key, p: BiPoly) -> None:
    cur = acc.setdefault(key, {})
    for k, c in p.items():
        cur[k] = cur.get(k, 0) + c
        if not cur[k]:
            del cur[k]
    if not cur:
        del acc[key]


def verify_P123(inst: TabularInstance, alg: AsymptoticAlgebra | None = None) -> Report:
    rep = Report(f"P1-P3: {inst.name}")
    if alg is None:
        alg, _ = build_asymptotic(inst)
    d = inst.datum

    with Sweep(rep, "P1") as sw:
        for lam in d.lambdas:
            cell = inst.cell(lam)
            vals = {a_function(inst, X) for X in cell}
            sw.record(len(vals) == 1 and all(isinstance(v, int) for v in vals), f"lam={lam}: a-values {vals}")
        idem = d.idempotents or []
        for lam in d.lambdas:
            for e in idem:
                vals = {a_function(inst, X) for X in inst.cell(lam) if inst.product(X, e) == Element.basis(X)}
                sw.record(len(vals) <= 1, f"a not constant on c_lam 1_e for lam={lam}")

    with Sweep(rep, "P2") as sw:
        for lam in d.lambdas:
            units = generalized_unit(inst, lam)
            for D, D2 in itertools.product(units, repeat=2):
                want = {D: 1} if D == D2 else {}
                sw.record(alg.product(D, D2) == want, f"t_D t_D' wrong for {inst.format_label(D)}, {inst.format_label(D2)}")
            for X in inst.cell(lam):
                hits = []
                for D, D2 in itertools.product(units, repeat=2):
                    sandwich = alg.multiply(alg.multiply({D: 1}, {X: 1}), {D2: 1})
                    if sandwich == {X: 1}:
                        hits.append((D, D2))
                ok = len(hits) == 1 and hits[0][0].S == X.S and hits[0][1].S == X.T
                sw.record(ok, f"{inst.format_label(X)} lies in {len(hits)} blocks t_D A t_D'")

    with Sweep(rep, "P3") as sw:
        B = inst.basis()
        for lam in d.lambdas:
            cell = inst.cell(lam)

            def left(X: Label, x: dict) -> dict:
                out: dict = {}
                for Y, cy in x.items():
                    for W, g in inst.product(X, Y).items():
                        if W.lam == lam:
                            _bi_add_into(out, W, _bi_mul(_bi(g, False), cy))
                return out

            def right(x: dict, X: Label) -> dict:
                out: dict = {}
                for Y, cy in x.items():
                    for W, g in inst.product(Y, X).items():
                        if W.lam == lam:
                            _bi_add_into(out, W, _bi_mul(cy, _bi(g, True)))
                return out

            for X, X1, X2 in itertools.product(B, cell, B):
                unit = {X1: {(0, 0): 1}}
                Xs = inst.star(X2)
                lhs = right(left(X, unit), Xs)
                rhs = left(X, right(unit, Xs))
                sw.record(lhs == rhs, f"left/right actions do not commute at "
                                      f"{inst.format_label(X)}, {inst.format_label(X1)}, {inst.format_label(X2)}")
    return rep


# --- Phi and the matrix-algebra identification ------------------------------------


def phi(inst: TabularInstance, X: Label) -> dict[Label, LaurentPoly]:
    """Phi(X) = sum_lam sum_{D, Z in c_lam} g_{X,D,Z} t_Z."""
    out: dict[Label, list[LaurentPoly]] = {}
    for lam in inst.datum.lambdas:
        for D in generalized_unit(inst, lam):
            for Z, g in inst.product(X, D).items():
                if Z.lam == lam:
                    out.setdefault(Z, []).append(g)
    return {Z: s for Z, cs in out.items() if (s := lp_sum(cs))}


def _combine(parts: Iterable[tuple[LaurentPoly, dict]]) -> dict:
    acc: dict[Label, list[LaurentPoly]] = {}
    for c, vec in parts:
        for Z, p in vec.items():
            acc.setdefault(Z, []).append(c * p)
    return {Z: s for Z, cs in acc.items() if (s := lp_sum(cs))}


def phi_check(inst: TabularInstance, alg: AsymptoticAlgebra | None = None) -> Report:
    rep = Report(f"Phi: {inst.name}")
    if alg is None:
        alg, _ = build_asymptotic(inst)
    B = inst.basis()
    images = {X: phi(inst, X) for X in B}

    def image(Z: Label) -> dict:
        if Z not in images:
            images[Z] = phi(inst, Z)
        return images[Z]

    with Sweep(rep, "Phi-homomorphism") as sw:
        for X, Y in itertools.product(B, repeat=2):
            lhs = _combine((g, image(Z)) for Z, g in inst.product(X, Y).items())
            rhs = alg.multiply(images[X], images[Y])
            sw.record(lhs == rhs, f"Phi(XY) != Phi(X)Phi(Y) at {inst.format_label(X)}, {inst.format_label(Y)}")
    # Own-cell component: Phi_lam(X^) - t_X lies in the v^-1 A^- span.  The
    # other components need not: Phi(1) = sum_D t_D over every cell.  What
    # does hold is that Phi_mu(X) vanishes unless mu <= lam.
    with Sweep(rep, "Phi-leading-term") as sw:
        for X in B:
            a = a_function(inst, X)
            diff = {Z: p.shift(-a) for Z, p in images[X].items() if Z.lam == X.lam}
            diff[X] = diff.get(X, LaurentPoly()) - 1
            bad = [Z for Z, p in diff.items() if not p.in_v_inv_A_minus()]
            sw.record(not bad, f"Phi_lam(X^) - t_X has a non-v^-1 term at {inst.format_label(X)}")
    with Sweep(rep, "Phi-triangular") as sw:
        for X in B:
            stray = [Z for Z in images[X] if Z.lam != X.lam and not inst.datum.is_below(Z.lam, X.lam)]
            sw.record(not stray, f"Phi({inst.format_label(X)}) has a term in cell {stray[0].lam if stray else ''}")
    return rep


def phi_full_leading_defect(inst: TabularInstance) -> list[tuple[Label, Label, LaurentPoly]]:
    """Terms of Phi(X^) - t_X, over all cells, that fall outside the v^-1 A^- span."""
    out = []
    for X in inst.basis():
        a = a_function(inst, X)
        diff = {Z: p.shift(-a) for Z, p in phi(inst, X).items()}
        diff[X] = diff.get(X, LaurentPoly()) - 1
        out.extend((X, Z, p) for Z, p in diff.items() if p and not p.in_v_inv_A_minus())
    return out


def matrix_iso_check(inst: TabularInstance, lam: Hashable, alg: AsymptoticAlgebra | None = None) -> Report:
    """gamma(C^b_{S,T}, C^b'_{T',U}, C^b''_{S'',U''}) = kappa(b'', b b') exactly when the tableaux chain."""
    rep = Report(f"matrix-iso: {inst.name} lam={lam}")
    if alg is None:
        alg, _ = build_asymptotic(inst)
    G = inst.gamma_of(lam)
    cell = inst.cell(lam)
    with Sweep(rep, "matrix-iso") as sw:
        for X, Y in itertools.product(cell, repeat=2):
            prod = alg.product(X, Y)
            bb = G.product(X.b, Y.b)
            for Z in cell:
                chained = X.T == Y.S and Z.S == X.S and Z.T == Y.T
                want = kappa(Z.b, bb) if chained else 0
                got = prod.get(Z, 0)
                sw.record(got == want, f"gamma({inst.format_label(X)}, {inst.format_label(Y)}, "
                                       f"{inst.format_label(Z)}) = {got}, expected {want}")
    return rep
