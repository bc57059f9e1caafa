"""Table data, tabular instances and the elementary operations on them.

A tabular instance couples a table datum (poset, table algebras,
tableaux) with an exact multiplication oracle on basis labels
`(lam, S, b, T)`.  Everything downstream (axiom checks, cells,
asymptotic algebra) only talks to the instance through this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .laurent import NEG_INF, ONE, ZERO, Degree, LaurentPoly, lp_sum
from .table_algebra import TableAlgebra


class Label(NamedTuple):
    """Basis label C(S, b, T) in the cell of `lam`."""

    lam: Hashable
    S: Hashable
    b: Hashable
    T: Hashable


class Element:
    """Finite A-linear combination of basis labels."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[Label, LaurentPoly | int] | None = None):
        out: dict[Label, LaurentPoly] = {}
        if coeffs:
            for k, c in coeffs.items():
                c = LaurentPoly.coerce(c)
                if c:
                    out[k] = c
        self._c = out

    @classmethod
    def basis(cls, X: Label, coeff: LaurentPoly | int = 1) -> Element:
        return cls({X: coeff})

    @classmethod
    def _raw(cls, c: dict[Label, LaurentPoly]) -> Element:
        e = cls.__new__(cls)
        e._c = {k: v for k, v in c.items() if v}
        return e

    def items(self) -> Iterator[tuple[Label, LaurentPoly]]:
        return iter(self._c.items())

    def labels(self) -> list[Label]:
        return list(self._c)

    def coeff(self, X: Label) -> LaurentPoly:
        return self._c.get(X, ZERO)

    def support(self) -> set[Label]:
        return set(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: Element) -> Element:
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out[k] + c if k in out else c
        return Element._raw(out)

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __neg__(self) -> Element:
        return Element._raw({k: -c for k, c in self._c.items()})

    def scale(self, p: LaurentPoly | int) -> Element:
        p = LaurentPoly.coerce(p)
        return Element._raw({k: c * p for k, c in self._c.items()})

    def map_labels(self, f: Callable[[Label], Label]) -> Element:
        out: dict[Label, LaurentPoly] = {}
        for k, c in self._c.items():
            fk = f(k)
            out[fk] = out[fk] + c if fk in out else c
        return Element._raw(out)

    def filter(self, keep: Callable[[Label], bool]) -> Element:
        return Element._raw({k: c for k, c in self._c.items() if keep(k)})

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*{k}" for k, c in self._c.items())
        return f"Element({body or '0'})"


def element_sum(parts: Iterable[Element]) -> Element:
    acc: dict[Label, list[LaurentPoly]] = {}
    for e in parts:
        for k, c in e.items():
            acc.setdefault(k, []).append(c)
    return Element._raw({k: lp_sum(cs) for k, cs in acc.items()})


@dataclass
class TableDatum:
    """Poset, per-cell table algebras and tableau sets.

    `less` is the strict order as an explicit set of pairs (mu, lam)
    meaning mu < lam.  `b_window` lists the table-algebra labels swept
    for each lam; for finite table algebras it defaults to all labels.
    """

    lambdas: list
    less: frozenset
    gamma: dict
    tableaux: dict
    idempotents: list | None = None
    b_window: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for lam in self.lambdas:
            if lam not in self.b_window:
                self.b_window[lam] = self.gamma[lam].labels()

    def is_below(self, mu: Hashable, lam: Hashable) -> bool:
        return (mu, lam) in self.less

    def cell_labels(self, lam: Hashable) -> list[Label]:
        Ms = self.tableaux[lam]
        return [Label(lam, S, b, T) for S in Ms for b in self.b_window[lam] for T in Ms]


def chain_order(lambdas: Sequence) -> frozenset:
    """Strict order of a chain listed from bottom to top."""
    return frozenset((lambdas[i], lambdas[j]) for i in range(len(lambdas)) for j in range(i + 1, len(lambdas)))


class TabularInstance:
    """A tabular algebra presented by its datum and basis-level oracles.

    multiply(X, Y) must return the exact product as an Element;
    star(X) and trace(X) act on labels and are extended linearly.
    """

    def __init__(
        self,
        name: str,
        datum: TableDatum,
        multiply: Callable[[Label, Label], Element],
        star: Callable[[Label], Label],
        trace: Callable[[Label], LaurentPoly] | None = None,
        a_override: Mapping[Hashable, int] | None = None,
        format_label: Callable[[Label], str] | None = None,
        encode: Callable[[Label], Hashable] | None = None,
        decode: Callable[[Hashable], Label] | None = None,
        native_basis: Iterable[Hashable] | None = None,
        generators: Sequence[tuple[str, Element]] | None = None,
        finite: bool = True,
    ):
        self.name = name
        self.datum = datum
        self._multiply = multiply
        self._star = star
        self._trace = trace
        self.a_override = dict(a_override) if a_override is not None else None
        self._format = format_label
        self.encode = encode
        self.decode = decode
        self.native_basis = list(native_basis) if native_basis is not None else None
        self.generators = list(generators) if generators is not None else None
        self.finite = finite
        self._products: dict[tuple[Label, Label], Element] = {}
        self._basis: list[Label] | None = None
        self._index: dict[Label, int] | None = None
        self._a_brute: dict[Label, Degree] | None = None
        self._a_brute_cell: dict[Label, Degree] | None = None

    # --- basis ----------------------------------------------------------

    def basis(self) -> list[Label]:
        if self._basis is None:
            self._basis = [X for lam in self.datum.lambdas for X in self.datum.cell_labels(lam)]
            self._index = {X: i for i, X in enumerate(self._basis)}
        return self._basis

    def cell(self, lam: Hashable) -> list[Label]:
        return [X for X in self.basis() if X.lam == lam]

    def in_window(self, X: Label) -> bool:
        self.basis()
        return X in self._index

    def gamma_of(self, lam: Hashable) -> TableAlgebra:
        return self.datum.gamma[lam]

    def identity_b(self, lam: Hashable) -> Hashable:
        return self.datum.gamma[lam].identity

    def format_label(self, X: Label) -> str:
        if self._format is not None:
            return self._format(X)
        G = self.gamma_of(X.lam)
        return f"{X.lam}|{X.S}|{G.format_label(X.b)}|{X.T}"

    def label_key(self, X: Label) -> tuple:
        self.basis()
        i = self._index.get(X)
        return (0, i, "") if i is not None else (1, 0, self.format_label(X))

    def sorted_labels(self, labels: Iterable[Label]) -> list[Label]:
        return sorted(labels, key=self.label_key)

    def format_element(self, x: Element) -> str:
        if not x:
            return "0"
        return " + ".join(f"({x.coeff(X)})*{self.format_label(X)}" for X in self.sorted_labels(x.labels()))

    # --- structure --------------------------------------------------------

    def product(self, X: Label, Y: Label) -> Element:
        key = (X, Y)
        hit = self._products.get(key)
        if hit is None:
            hit = self._multiply(X, Y)
            self._products[key] = hit
        return hit

    def multiply_elements(self, x: Element, y: Element) -> Element:
        acc: dict[Label, list[LaurentPoly]] = {}
        for X, cx in x.items():
            for Y, cy in y.items():
                c = cx * cy
                for Z, g in self.product(X, Y).items():
                    acc.setdefault(Z, []).append(c * g)
        return Element._raw({Z: lp_sum(cs) for Z, cs in acc.items()})

    def left_mult(self, X: Label, y: Element) -> Element:
        return self.multiply_elements(Element.basis(X), y)

    def right_mult(self, x: Element, Y: Label) -> Element:
        return self.multiply_elements(x, Element.basis(Y))

    def g(self, X: Label, Y: Label, Z: Label) -> LaurentPoly:
        return self.product(X, Y).coeff(Z)

    def star(self, X: Label) -> Label:
        return self._star(X)

    def star_element(self, x: Element) -> Element:
        return x.map_labels(self._star)

    @property
    def has_trace(self) -> bool:
        return self._trace is not None

    def trace(self, X: Label) -> LaurentPoly:
        if self._trace is None:
            raise ValueError(f"{self.name}: no trace supplied")
        return self._trace(X)

    def trace_element(self, x: Element) -> LaurentPoly:
        return lp_sum(c * self.trace(X) for X, c in x.items())

    # --- derived structure constants -------------------------------------

    def all_products(self) -> dict[tuple[Label, Label], Element]:
        B = self.basis()
        for X in B:
            for Y in B:
                self.product(X, Y)
        return self._products

    def brute_a(self, Z: Label, within_cell: bool = False) -> Degree:
        """Windowed max_{X,Y} deg g_{X,Y,Z}."""
        if self._a_brute is None:
            full: dict[Label, Degree] = {}
            cell: dict[Label, Degree] = {}
            B = self.basis()
            for X in B:
                for Y in B:
                    same = X.lam == Y.lam
                    for W, c in self.product(X, Y).items():
                        d = c.degree()
                        if d > full.get(W, NEG_INF):
                            full[W] = d
                        if same and W.lam == X.lam and d > cell.get(W, NEG_INF):
                            cell[W] = d
            self._a_brute, self._a_brute_cell = full, cell
        table = self._a_brute_cell if within_cell else self._a_brute
        return table.get(Z, NEG_INF)


def multiply_elements(inst: TabularInstance, x: Element, y: Element) -> Element:
    return inst.multiply_elements(x, y)


def reduce_mod_lower(inst: TabularInstance, x: Element, lam: Hashable) -> Element:
    """Drop every term lying in a cell strictly below lam."""
    return x.filter(lambda X: not inst.datum.is_below(X.lam, lam))


def a_function(inst: TabularInstance, Z: Label) -> int:
    """The a-value of Z: the closed form if the instance carries one, else the brute-force max."""
    if inst.a_override is not None:
        return inst.a_override[Z.lam]
    if not inst.finite:
        raise ValueError(f"{inst.name}: infinite rank needs an a_override")
    d = inst.brute_a(Z)
    if d is NEG_INF:
        raise ValueError(f"{inst.name}: {inst.format_label(Z)} never occurs in a product")
    return d


def a_of_cell(inst: TabularInstance, lam: Hashable) -> int:
    if inst.a_override is not None:
        return inst.a_override[lam]
    return a_function(inst, inst.cell(lam)[0])


def gamma(inst: TabularInstance, X: Label, Y: Label, Z: Label) -> int:
    """Coefficient of v^a(Z) in g_{X,Y,Z}."""
    return inst.g(X, Y, Z).coeff(a_function(inst, Z))


BracketValue = dict  # table label -> LaurentPoly


def bracket(inst: TabularInstance, lam: Hashable, T: Hashable, U: Hashable,
            S: Hashable | None = None, V: Hashable | None = None) -> BracketValue:
    """<T, U> read off from C^1_{S,T} C^1_{U,V} mod A(<lam).

    Raises ValueError when the reduced product has terms outside the
    expected C_{S,V} row; use `check_brackets` for the full independence test.
    """
    Ms = inst.datum.tableaux[lam]
    S = Ms[0] if S is None else S
    V = Ms[0] if V is None else V
    one = inst.identity_b(lam)
    prod = inst.product(Label(lam, S, one, T), Label(lam, U, one, V))
    red = reduce_mod_lower(inst, prod, lam)
    out: BracketValue = {}
    for X, c in red.items():
        if X.lam != lam or X.S != S or X.T != V:
            raise ValueError(
                f"{inst.name}: C1_(S,T) C1_(U,V) has stray term {inst.format_label(X)} mod lower cells"
            )
        out[X.b] = c
    return out


def gamma_times(G: TableAlgebra, *factors: Mapping) -> dict:
    """Product of A (x) Gamma elements (table label -> LaurentPoly or int)."""
    acc: dict = {G.identity: ONE}
    for f in factors:
        acc = G.multiply_any(acc, f)
    return acc
