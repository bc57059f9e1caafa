"""The tabular algebra A (x) M_n(Z) (x) Gamma, plus deliberately broken variants.

Its basis is e_{ac} (x) b with one cell, tableaux {1..n} and a-value 0
everywhere.  The broken variants exist so that the verifiers can be
shown to reject something.
"""

from __future__ import annotations

from .datum import Element, Label, TableDatum, TabularInstance
from .laurent import LaurentPoly
from .table_algebra import TableAlgebra

LAM = 0
MUTANTS = ("broken-star", "asymmetric-trace", "dropped-idempotent")


def make_matrix_table(n: int, G: TableAlgebra, mutant: str | None = None) -> TabularInstance:
    if not G.finite:
        raise ValueError("matrix_table needs a finite-rank table algebra")
    if n < 1:
        raise ValueError("matrix size must be positive")
    if mutant is not None and mutant not in MUTANTS:
        raise ValueError(f"unknown mutant {mutant!r}; choose from {', '.join(MUTANTS)}")
    M = list(range(1, n + 1))
    one = G.identity
    idem = [Label(LAM, a, one, a) for a in M]
    if mutant == "dropped-idempotent":
        idem = idem[:-1]
    datum = TableDatum([LAM], frozenset(), {LAM: G}, {LAM: M}, idempotents=idem)

    def multiply(X: Label, Y: Label) -> Element:
        if X.T != Y.S:
            return Element()
        return Element({Label(LAM, X.S, b, Y.T): c for b, c in G.product(X.b, Y.b).items()})

    def star(X: Label) -> Label:
        return Label(LAM, X.T, G.bar(X.b), X.S)

    def trace(X: Label) -> LaurentPoly:
        return LaurentPoly.const(int(X.S == X.T and X.b == one))

    if mutant == "broken-star":
        # star without the table involution.  When the involution is already
        # trivial that is no change at all, so off-diagonal labels get a
        # cyclic relabelling instead (still an involution on labels).
        labels = G.labels()
        trivial_bar = all(G.bar(b) == b for b in labels)
        shift = {b: labels[(i + 1) % len(labels)] for i, b in enumerate(labels)}
        unshift = {v: k for k, v in shift.items()}

        def star(X: Label) -> Label:  # noqa: F811
            if not trivial_bar or X.S == X.T:
                return Label(LAM, X.T, X.b, X.S)
            b = shift[X.b] if X.S < X.T else unshift[X.b]
            return Label(LAM, X.T, b, X.S)

    if mutant == "asymmetric-trace":
        def trace(X: Label) -> LaurentPoly:  # noqa: F811
            base = int(X.S == X.T and X.b == one)
            # a v^-1 term only on strictly upper-triangular units breaks tau(x) = tau(x*)
            extra = LaurentPoly.monomial(-1) if (X.S < X.T and X.b == one) else LaurentPoly()
            return LaurentPoly.const(base) + extra

    def fmt(X: Label) -> str:
        return f"e{X.S}{X.T}*{G.format_label(X.b)}"

    name = f"matrix(n={n},{G.name})" + (f"[{mutant}]" if mutant else "")
    return TabularInstance(
        name, datum, multiply, star, trace, format_label=fmt,
        encode=lambda X: (X.S, X.b, X.T), decode=lambda t: Label(LAM, t[0], t[1], t[2]),
    )
