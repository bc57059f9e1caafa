"""Normalized table algebras over Z.

A table algebra is given by a distinguished basis containing 1, a
structure-constant oracle with nonnegative integer values and an
involution permuting the basis.  Finite algebras store their full
multiplication table; the Chebyshev and integer-Laurent algebras are
infinite and expose an enumeration window instead.
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Mapping, Sequence

from .report import Report, Sweep

Label = Hashable
TableElement = dict  # label -> nonzero int


class WindowExhausted(LookupError):
    """Raised when an infinite-rank algebra is asked about labels outside its window."""


def clean(coeffs: Mapping[Label, int]) -> TableElement:
    return {b: c for b, c in coeffs.items() if c}


def add_into(acc: dict, coeffs: Mapping[Label, int], scale: int = 1) -> None:
    for b, c in coeffs.items():
        acc[b] = acc.get(b, 0) + scale * c


class TableAlgebra:
    """Base class; subclasses supply `_product`, `bar` and label enumeration."""

    name: str = "table"
    identity: Label = None
    finite: bool = True

    def __init__(self, window: int | None = None):
        self.window = window
        self._cache: dict[tuple[Label, Label], TableElement] = {}

    # labels ---------------------------------------------------------------

    def labels(self, window: int | None = None) -> list[Label]:
        raise NotImplementedError

    @property
    def rank(self) -> int | None:
        return len(self.labels()) if self.finite else None

    def is_label(self, b: Label) -> bool:
        raise NotImplementedError

    def in_window(self, b: Label) -> bool:
        return self.is_label(b)

    def format_label(self, b: Label) -> str:
        return str(b)

    def parse_label(self, text: str) -> Label:
        for b in self.labels():
            if self.format_label(b) == text:
                return b
        raise ValueError(f"unknown label {text!r} for {self.name}")

    # structure ------------------------------------------------------------

    def bar(self, b: Label) -> Label:
        raise NotImplementedError

    def _product(self, i: Label, j: Label) -> TableElement:
        raise NotImplementedError

    def product(self, i: Label, j: Label) -> TableElement:
        """Structure-constant oracle b_i b_j, exact and unwindowed."""
        key = (i, j)
        hit = self._cache.get(key)
        if hit is None:
            if not self.is_label(i) or not self.is_label(j):
                raise WindowExhausted(f"{self.name}: not a basis label: {i!r} or {j!r}")
            hit = clean(self._product(i, j))
            self._cache[key] = hit
        return hit

    def multiply(self, a: Mapping[Label, int], b: Mapping[Label, int]) -> TableElement:
        """Bilinear extension of the oracle; operands must lie in the window."""
        for x in itertools.chain(a, b):
            if not self.in_window(x):
                raise WindowExhausted(f"{self.name}: label {self.format_label(x)} outside window {self.window}")
        out: dict = {}
        for i, ci in a.items():
            for j, cj in b.items():
                add_into(out, self.product(i, j), ci * cj)
        return clean(out)

    def multiply_any(self, a: Mapping[Label, int], b: Mapping[Label, int]) -> dict:
        """Bilinear product with no window restriction and arbitrary coefficient ring."""
        out: dict = {}
        for i, ci in a.items():
            for j, cj in b.items():
                for k, c in self.product(i, j).items():
                    term = ci * cj * c
                    out[k] = out[k] + term if k in out else term
        return {k: c for k, c in out.items() if c}

    def bar_element(self, a: Mapping[Label, int]) -> TableElement:
        return clean({self.bar(b): c for b, c in a.items()})

    def element(self, b: Label) -> TableElement:
        return {b: 1}


def kappa(b: Label, a: Mapping[Label, int]) -> int:
    """Coefficient of the basis label b in a."""
    return a.get(b, 0)


def supp(a: Mapping[Label, int]) -> set:
    return {b for b, c in a.items() if c}


def form_h(a: Mapping[Label, int], b: Mapping[Label, int]) -> int:
    """The bilinear form making the distinguished basis orthonormal."""
    return sum(c * b.get(x, 0) for x, c in a.items())


# --- finite algebras ------------------------------------------------------------


class FiniteTableAlgebra(TableAlgebra):
    def __init__(
        self,
        name: str,
        labels: Sequence[Label],
        identity: Label,
        table: Mapping[tuple[Label, Label], Mapping[Label, int]],
        bar: Mapping[Label, Label],
        names: Mapping[Label, str] | None = None,
    ):
        super().__init__(None)
        self.name = name
        self._labels = list(labels)
        self._label_set = set(self._labels)
        self.identity = identity
        self._table = {k: clean(v) for k, v in table.items()}
        self._bar = dict(bar)
        self._names = dict(names) if names else None

    def labels(self, window: int | None = None) -> list[Label]:
        return list(self._labels)

    def is_label(self, b: Label) -> bool:
        return b in self._label_set

    def bar(self, b: Label) -> Label:
        return self._bar[b]

    def _product(self, i: Label, j: Label) -> TableElement:
        return dict(self._table.get((i, j), {}))

    def format_label(self, b: Label) -> str:
        if self._names is not None:
            return self._names[b]
        return str(b)

    def with_bar(self, bar: Mapping[Label, Label], name: str | None = None) -> FiniteTableAlgebra:
        """Same multiplication, different involution (used to build broken variants)."""
        return FiniteTableAlgebra(name or self.name, self._labels, self.identity, self._table, bar, self._names)


def group_ring(
    name: str,
    elements: Sequence[Label],
    mult: Callable[[Label, Label], Label] | Mapping[tuple[Label, Label], Label],
    names: Mapping[Label, str] | None = None,
) -> FiniteTableAlgebra:
    """Integral group ring; bar is inversion.  The group table is validated."""
    elements = list(elements)
    law = mult if callable(mult) else (lambda g, h: mult[(g, h)])
    table: dict = {}
    for g in elements:
        for h in elements:
            gh = law(g, h)
            if gh not in elements:
                raise ValueError(f"group table not closed: {g!r}*{h!r} = {gh!r}")
            table[(g, h)] = gh
    for g, h, k in itertools.product(elements, repeat=3):
        if table[(table[(g, h)], k)] != table[(g, table[(h, k)])]:
            raise ValueError(f"group table not associative at {(g, h, k)!r}")
    units = [e for e in elements if all(table[(e, g)] == g == table[(g, e)] for g in elements)]
    if not units:
        raise ValueError("group table has no identity")
    e = units[0]
    inverse = {}
    for g in elements:
        inv = [h for h in elements if table[(g, h)] == e and table[(h, g)] == e]
        if not inv:
            raise ValueError(f"element {g!r} has no inverse")
        inverse[g] = inv[0]
    return FiniteTableAlgebra(
        name, elements, e, {k: {gh: 1} for k, gh in table.items()}, inverse, names
    )


def cyclic_group_ring(t: int) -> FiniteTableAlgebra:
    if t < 1:
        raise ValueError("cyclic group order must be positive")
    names = {i: "1" if i == 0 else ("g" if i == 1 else f"g^{i}") for i in range(t)}
    return group_ring(f"Z{t}", list(range(t)), lambda a, b: (a + b) % t, names)


def compose_perm(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p*q)(i) = p(q(i)); permutations of 0..t-1 stored as image tuples."""
    return tuple(p[q[i]] for i in range(len(q)))


def perm_cycles(p: tuple[int, ...], one_based: bool = True) -> str:
    """Cycle notation, e.g. (1 2)(3 4); the identity is "1"."""
    seen, parts = set(), []
    off = 1 if one_based else 0
    for i in range(len(p)):
        if i in seen or p[i] == i:
            seen.add(i)
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + off))
            j = p[j]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "1"


def symmetric_group_ring(t: int) -> FiniteTableAlgebra:
    perms = sorted(itertools.permutations(range(t)))
    names = {p: perm_cycles(p) for p in perms}
    return group_ring(f"S{t}", perms, compose_perm, names)


def golden() -> FiniteTableAlgebra:
    """Z[x]/(x^2 - x - 1) with basis {1, x} and trivial involution."""
    labels = ["1", "x"]
    table = {
        ("1", "1"): {"1": 1},
        ("1", "x"): {"x": 1},
        ("x", "1"): {"x": 1},
        ("x", "x"): {"1": 1, "x": 1},
    }
    return FiniteTableAlgebra("golden", labels, "1", table, {"1": "1", "x": "x"})


def trivial_table() -> FiniteTableAlgebra:
    return FiniteTableAlgebra("trivial", ["1"], "1", {("1", "1"): {"1": 1}}, {"1": "1"})


# --- infinite algebras ----------------------------------------------------------


class ChebyshevAlgebra(TableAlgebra):
    """Basis U_0, U_1, ... with U_k U_k' = sum_{i=0..k} U_{k'-k+2i} for k <= k'."""

    name = "chebyshev"
    identity = 0
    finite = False

    def __init__(self, window: int | None = 8):
        super().__init__(window)

    def labels(self, window: int | None = None) -> list[int]:
        w = self.window if window is None else window
        if w is None:
            raise WindowExhausted("chebyshev: enumeration needs a window")
        return list(range(w + 1))

    def is_label(self, b: Label) -> bool:
        return isinstance(b, int) and b >= 0

    def in_window(self, b: Label) -> bool:
        return self.is_label(b) and (self.window is None or b <= self.window)

    def bar(self, b: Label) -> Label:
        return b

    def _product(self, i: int, j: int) -> TableElement:
        k, kk = min(i, j), max(i, j)
        return {kk - k + 2 * m: 1 for m in range(k + 1)}

    def format_label(self, b: Label) -> str:
        return f"U{b}"

    def parse_label(self, text: str) -> int:
        if text.startswith("U") and text[1:].isdigit():
            return int(text[1:])
        raise ValueError(f"bad Chebyshev label {text!r}")


class IntegerLaurentAlgebra(TableAlgebra):
    """Group ring of Z written multiplicatively, basis v^k, bar(v^k) = v^-k."""

    name = "integer_laurent"
    identity = 0
    finite = False

    def __init__(self, window: int | None = 8):
        super().__init__(window)

    def labels(self, window: int | None = None) -> list[int]:
        w = self.window if window is None else window
        if w is None:
            raise WindowExhausted("integer_laurent: enumeration needs a window")
        return list(range(-w, w + 1))

    def is_label(self, b: Label) -> bool:
        return isinstance(b, int)

    def in_window(self, b: Label) -> bool:
        return self.is_label(b) and (self.window is None or abs(b) <= self.window)

    def bar(self, b: Label) -> Label:
        return -b

    def _product(self, i: int, j: int) -> TableElement:
        return {i + j: 1}

    def format_label(self, b: Label) -> str:
        return f"w{b}"

    def parse_label(self, text: str) -> int:
        if text.startswith("w"):
            return int(text[1:])
        raise ValueError(f"bad integer-Laurent label {text!r}")


def builtin_table(kind: str, **params) -> TableAlgebra:
    if kind == "golden":
        return golden()
    if kind == "trivial":
        return trivial_table()
    if kind == "group_ring":
        if "cyclic" in params:
            return cyclic_group_ring(params["cyclic"])
        if "symmetric" in params:
            return symmetric_group_ring(params["symmetric"])
        return group_ring(params.get("name", "group"), params["elements"], params["mult"])
    if kind == "chebyshev":
        return ChebyshevAlgebra(params.get("window", 8))
    if kind == "integer_laurent":
        return IntegerLaurentAlgebra(params.get("window", 8))
    raise ValueError(f"unknown table algebra kind {kind!r}")


def table_from_name(name: str) -> TableAlgebra:
    """CLI-style names: golden, trivial, z3, s3, chebyshev, laurent."""
    low = name.lower()
    if low in ("golden", "trivial"):
        return builtin_table(low)
    if low.startswith("z") and low[1:].isdigit():
        return cyclic_group_ring(int(low[1:]))
    if low.startswith("s") and low[1:].isdigit():
        return symmetric_group_ring(int(low[1:]))
    if low.startswith("chebyshev"):
        return ChebyshevAlgebra(int(low.split(":")[1]) if ":" in low else 8)
    if low.startswith("laurent"):
        return IntegerLaurentAlgebra(int(low.split(":")[1]) if ":" in low else 8)
    raise ValueError(f"unknown table algebra {name!r}")


# --- verification ---------------------------------------------------------------


def verify_table_axioms(A: TableAlgebra, window: int | None = None) -> Report:
    """Exhaustive check of T1-T3 (with g = 1) and associativity over the window."""
    labels = A.labels(window)
    rep = Report(f"table axioms: {A.name}")
    fmt = A.format_label

    rep.add("identity-in-basis", A.identity in labels or A.is_label(A.identity), 1)
    with Sweep(rep, "unit") as sw:
        for b in labels:
            sw.record(A.product(A.identity, b) == {b: 1} == A.product(b, A.identity), f"b={fmt(b)}")

    with Sweep(rep, "T1") as sw:
        for i, j in itertools.product(labels, repeat=2):
            for k, c in A.product(i, j).items():
                sw.record(isinstance(c, int) and c >= 0, f"kappa({fmt(k)}, {fmt(i)}*{fmt(j)}) = {c}")

    with Sweep(rep, "T2") as sw:
        for b in labels:
            bb = A.bar(b)
            sw.record(A.is_label(bb) and A.bar(bb) == b, f"bar({fmt(b)}) = {bb!r}")
        if A.finite:
            sw.record(len({A.bar(b) for b in labels}) == len(labels), "bar is not a permutation")

    with Sweep(rep, "T3") as sw:
        for i, j, m in itertools.product(labels, repeat=3):
            lhs = kappa(m, A.product(i, j))
            rhs = kappa(i, A.product(m, A.bar(j)))
            sw.record(lhs == rhs, f"(i,j,m)=({fmt(i)},{fmt(j)},{fmt(m)}): {lhs} != {rhs}")

    with Sweep(rep, "associativity") as sw:
        for i, j, k in itertools.product(labels, repeat=3):
            left = A.multiply_any(A.product(i, j), {k: 1})
            right = A.multiply_any({i: 1}, A.product(j, k))
            sw.record(left == right, f"({fmt(i)},{fmt(j)},{fmt(k)})")

    with Sweep(rep, "bar-anti-automorphism") as sw:
        for i, j in itertools.product(labels, repeat=2):
            lhs = A.bar_element(A.product(i, j))
            rhs = A.product(A.bar(j), A.bar(i))
            sw.record(lhs == rhs, f"bar({fmt(i)}*{fmt(j)}) != bar({fmt(j)})*bar({fmt(i)})")
    return rep


def check_semisimple_small(A: TableAlgebra) -> bool:
    """Nondegeneracy over Q of the trace form Tr(L_a L_b) of the left regular representation."""
    if not A.finite:
        raise ValueError(f"{A.name}: semisimplicity check needs finite rank")
    labels = A.labels()
    r = len(labels)
    if r > 12:
        raise ValueError(f"{A.name}: rank {r} exceeds the desk-scale limit of 12")
    import sympy

    index = {b: n for n, b in enumerate(labels)}

    def left_matrix(a: Label) -> sympy.Matrix:
        m = sympy.zeros(r, r)
        for col, b in enumerate(labels):
            for k, c in A.product(a, b).items():
                m[index[k], col] += c
        return m

    mats = [left_matrix(b) for b in labels]
    gram = sympy.Matrix(r, r, lambda i, j: (mats[i] * mats[j]).trace())
    return gram.det() != 0


# --- text format ----------------------------------------------------------------


def dump_table(A: TableAlgebra) -> str:
    """Serialize a finite algebra: header lines then `i j k c` for kappa(b_k, b_i b_j) = c."""
    if not A.finite:
        return f"kind {A.name}\nwindow {A.window}\n"
    labels = A.labels()
    index = {b: n for n, b in enumerate(labels)}
    lines = ["kind finite", f"rank {len(labels)}", f"identity {index[A.identity]}"]
    lines.append("bar " + " ".join(str(index[A.bar(b)]) for b in labels))
    lines.append("names " + " ".join(A.format_label(b).replace(" ", "") for b in labels))
    for i, j in itertools.product(labels, repeat=2):
        for k, c in sorted(A.product(i, j).items(), key=lambda kc: index[kc[0]]):
            lines.append(f"{index[i]} {index[j]} {index[k]} {c}")
    return "\n".join(lines) + "\n"


def load_table(text: str, name: str = "loaded") -> TableAlgebra:
    """Inverse of dump_table.  Labels of a loaded finite algebra are 0..rank-1."""
    header: dict[str, list[str]] = {}
    rows: list[tuple[int, int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0].isalpha():
            header[parts[0]] = parts[1:]
            continue
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected `i j k c`, got {raw!r}")
        rows.append(tuple(int(p) for p in parts))  # type: ignore[arg-type]
    kind = header.get("kind", ["finite"])[0]
    if kind in ("chebyshev", "integer_laurent"):
        window = int(header.get("window", ["8"])[0])
        return builtin_table(kind, window=window)
    if kind != "finite":
        raise ValueError(f"unknown kind {kind!r}")
    rank = int(header["rank"][0])
    identity = int(header.get("identity", ["0"])[0])
    bar_row = [int(x) for x in header.get("bar", [str(i) for i in range(rank)])]
    if len(bar_row) != rank:
        raise ValueError("bar permutation has wrong length")
    names = header.get("names")
    table: dict = {}
    for i, j, k, c in rows:
        if not all(0 <= x < rank for x in (i, j, k)):
            raise ValueError(f"label out of range in row {(i, j, k, c)}")
        table.setdefault((i, j), {})[k] = c
    return FiniteTableAlgebra(
        name, list(range(rank)), identity, table, dict(enumerate(bar_row)),
        dict(enumerate(names)) if names and len(names) == rank else None,
    )
