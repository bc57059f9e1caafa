"""Temperley-Lieb algebras of simply-laced Coxeter graphs in the monomial basis.

Basis elements b_w are indexed by fully commutative (FC) elements w,
stored as the lexicographically least reduced word of their
commutation class.  Products of basis elements are always a power of
[2] times a single basis element.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable

import networkx as nx

from .datum import Element, Label, TableDatum, TabularInstance, a_of_cell
from .laurent import QUANTUM_TWO, ZERO, LaurentPoly, lp_sum
from .report import Report, Sweep
from .table_algebra import trivial_table

Word = tuple[int, ...]
EMPTY: Word = ()


class CoxeterGraphError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CoxeterGraph:
    """A simply-laced Coxeter graph on nodes 1..n."""

    kind: str
    n: int
    edges: frozenset[frozenset[int]]

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def commute(self, i: int, j: int) -> bool:
        return i != j and not self.adjacent(i, j)

    def neighbours(self, i: int) -> list[int]:
        return [j for j in self.nodes if self.adjacent(i, j)]

    @property
    def name(self) -> str:
        return f"{self.kind}{self.n}"


def _path(nodes: list[int]) -> set[frozenset[int]]:
    return {frozenset(p) for p in zip(nodes, nodes[1:])}


def coxeter_graph(kind: str, n: int) -> CoxeterGraph:
    """Standard numbering: A_n a path; D_n with 1, 2 forking off 3; E_n with 2 hanging off 4."""
    kind = kind.upper()
    if kind == "A" and n >= 1:
        edges = _path(list(range(1, n + 1)))
    elif kind == "D" and n >= 4:
        edges = {frozenset((1, 3)), frozenset((2, 3))} | _path(list(range(3, n + 1)))
    elif kind == "E" and n >= 6:
        edges = _path([1, 3] + list(range(4, n + 1))) | {frozenset((2, 4))}
    else:
        raise CoxeterGraphError(f"no Coxeter graph of type {kind}{n}")
    return validate_graph(CoxeterGraph(kind, n, frozenset(edges)))


def parse_graph(text: str) -> CoxeterGraph:
    """'A3', 'D4', 'E6' (case-insensitive)."""
    text = text.strip()
    if len(text) < 2 or not text[1:].isdigit():
        raise CoxeterGraphError(f"cannot read Coxeter type {text!r}")
    return coxeter_graph(text[0], int(text[1:]))


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> CoxeterGraph:
    g = CoxeterGraph("?", n, frozenset(frozenset(e) for e in edges))
    return validate_graph(g)


def validate_graph(g: CoxeterGraph) -> CoxeterGraph:
    """Accept only paths, D-type forks and E-type graphs with branches (1, 2, r)."""
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(g.nodes)
    for e in g.edges:
        if len(e) != 2 or not all(1 <= i <= g.n for i in e):
            raise CoxeterGraphError(f"bad edge {sorted(e)}")
        nx_graph.add_edge(*e)
    if not nx.is_tree(nx_graph):
        raise CoxeterGraphError("Coxeter graph must be a tree")
    degrees = dict(nx_graph.degree())
    branch = [v for v, d in degrees.items() if d >= 3]
    if not branch:
        kind = "A"
    elif len(branch) > 1 or degrees[branch[0]] > 3:
        raise CoxeterGraphError("more than one branch point")
    else:
        c = branch[0]
        lengths = []
        for start in nx_graph.neighbors(c):
            seen, cur, length = {c}, start, 1
            while True:
                seen.add(cur)
                nxt = [u for u in nx_graph.neighbors(cur) if u not in seen]
                if not nxt:
                    break
                cur, length = nxt[0], length + 1
            lengths.append(length)
        p, q, _ = sorted(lengths)
        if p == q == 1:
            kind = "D"
        elif p == 1 and q == 2:
            kind = "E"
        else:
            raise CoxeterGraphError(f"branch lengths {sorted(lengths)} are not of type D or E")
    if g.kind != "?" and g.kind != kind:
        raise CoxeterGraphError(f"graph labelled {g.kind} has shape {kind}")
    return CoxeterGraph(kind, g.n, g.edges)


# --- fully commutative words ---------------------------------------------------------


def canonical(g: CoxeterGraph, word: Iterable[int]) -> Word:
    """Lexicographically least word in the commutation class of `word`."""
    rest = list(word)
    out: list[int] = []
    while rest:
        best = None
        for k, s in enumerate(rest):
            if all(g.commute(t, s) for t in rest[:k]) and (best is None or s < rest[best]):
                best = k
        out.append(rest.pop(best))
    return tuple(out)


def is_fc_reduced(g: CoxeterGraph, word: Word) -> bool:
    """True when no word in the class contains s s or s t s with s, t adjacent.

    Between two consecutive occurrences of s there must be at least two
    letters adjacent to s.
    """
    last: dict[int, int] = {}
    for k, s in enumerate(word):
        if s in last:
            between = sum(1 for t in word[last[s] + 1:k] if g.adjacent(s, t))
            if between < 2:
                return False
        last[s] = k
    return True


def format_word(word: Word, n: int | None = None) -> str:
    if not word:
        return "e"
    if (n is not None and n < 10) or all(i < 10 for i in word):
        return "".join(map(str, word))
    return ".".join(map(str, word))


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "e"):
        return EMPTY
    parts = text.split(".") if "." in text else list(text)
    if not all(p.isdigit() for p in parts):
        raise ValueError(f"cannot read word {text!r}")
    return tuple(int(p) for p in parts)


def reverse(g: CoxeterGraph, w: Word) -> Word:
    return canonical(g, reversed(w))


@dataclass
class Enumeration:
    words: list[Word]
    complete: bool


def enumerate_wc(g: CoxeterGraph, length_cap: int | None = None, budget: int = 1000) -> Enumeration:
    """Breadth-first closure of {e} under right multiplication, keeping FC words.

    Stops when `budget` elements have been found or words would exceed
    `length_cap`; the result is flagged incomplete in that case.
    """
    seen = {EMPTY}
    order = [EMPTY]
    queue = deque([EMPTY])
    complete = True
    while queue:
        w = queue.popleft()
        for s in g.nodes:
            u = w + (s,)
            if not is_fc_reduced(g, u):
                continue
            u = canonical(g, u)
            if u in seen:
                continue
            if (length_cap is not None and len(u) > length_cap) or len(seen) >= budget:
                complete = False
                continue
            seen.add(u)
            order.append(u)
            queue.append(u)
    order.sort(key=lambda w: (len(w), w))
    return Enumeration(order, complete)


# --- monomial multiplication -----------------------------------------------------------


class RuleError(RuntimeError):
    """A generator step produced a word that is not fully commutative."""


def multiply_generator(g: CoxeterGraph, i: int, w: Word) -> tuple[int, Word]:
    """b_i b_w = [2]^m b_z, returned as (m, z)."""
    first = next((k for k, s in enumerate(w) if s == i), len(w))
    hits = [k for k in range(first) if g.adjacent(i, w[k])]
    if first < len(w) and not hits:
        return 1, w
    if first == len(w) or len(hits) >= 2:
        return 0, canonical(g, (i,) + w)
    # w = x j y i z with x, y commuting with i, so b_i b_w = b_x b_i b_j b_i b_(yz) = b_x b_i b_(yz)
    p = hits[0]
    return word_product(g, w[:p] + w[p + 1:])


def word_product(g: CoxeterGraph, word: Iterable[int]) -> tuple[int, Word]:
    """b_{s1} b_{s2} ... b_{sk} = [2]^m b_z."""
    m, z = 0, EMPTY
    for i in reversed(tuple(word)):
        dm, z = multiply_generator(g, i, z)
        m += dm
    if not is_fc_reduced(g, z):
        raise RuleError(f"{format_word(z)} is not fully commutative")
    return m, z


def multiply_basis(g: CoxeterGraph, x: Word, y: Word) -> tuple[int, Word]:
    m, z = 0, y
    for i in reversed(x):
        dm, z = multiply_generator(g, i, z)
        m += dm
    if not is_fc_reduced(g, z):
        raise RuleError(f"{format_word(z)} is not fully commutative")
    return m, z


def monomial_multiply(g: CoxeterGraph, x: dict[Word, LaurentPoly], y: dict[Word, LaurentPoly]) -> dict[Word, LaurentPoly]:
    acc: dict[Word, list[LaurentPoly]] = {}
    for (u, cu), (w, cw) in itertools.product(x.items(), y.items()):
        m, z = multiply_basis(g, u, w)
        acc.setdefault(z, []).append(cu * cw * QUANTUM_TWO ** m)
    return {z: s for z, cs in acc.items() if (s := lp_sum(cs))}


# --- cells and the table datum ---------------------------------------------------------


def _one_sided_cells(g: CoxeterGraph, words: list[Word], side: str) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(words)
    for w in words:
        for i in g.nodes:
            if side == "left":
                _, z = multiply_generator(g, i, w)
            else:
                _, z = multiply_generator(g, i, reverse(g, w))
                z = reverse(g, z)
            graph.add_edge(w, z)
    return graph


def _scc_index(graph: nx.DiGraph) -> tuple[list[set], dict]:
    comps = [set(c) for c in nx.strongly_connected_components(graph)]
    comps.sort(key=lambda c: min((len(w), w) for w in c))
    where = {w: k for k, comp in enumerate(comps) for w in comp}
    return comps, where


@dataclass
class ADECells:
    """Left, right and two-sided cells of the monomial basis, with the induced order."""

    left: list[set]
    right: list[set]
    two_sided: list[set]
    below: frozenset  # (k, l): cell k strictly below cell l
    involutions: dict = field(default_factory=dict)  # left-cell index -> involutions in it


def compute_cells(g: CoxeterGraph, words: list[Word]) -> ADECells:
    left_graph = _one_sided_cells(g, words, "left")
    right_graph = _one_sided_cells(g, words, "right")
    left, _ = _scc_index(left_graph)
    right, _ = _scc_index(right_graph)
    both = nx.compose(left_graph, right_graph)
    two, where = _scc_index(both)
    cond = nx.condensation(both, two)
    closure = nx.transitive_closure_dag(cond)
    # condensation relabels components; map back through a member
    member = {c: next(iter(cond.nodes[c]["members"])) for c in cond.nodes}
    below = frozenset((where[member[j]], where[member[i]]) for i, j in closure.edges())
    inv = {k: sorted(w for w in cell if reverse(g, w) == w) for k, cell in enumerate(left)}
    return ADECells(left, right, two, below, inv)


class TLInstance(TabularInstance):
    """A TL(X) instance that also remembers its graph, cells and word codec."""

    graph: CoxeterGraph
    cells_ade: ADECells
    word_of: dict[Label, Word]
    label_of: dict[Word, Label]
    trace_cache: dict[Label, LaurentPoly]


def build_table_datum_ade(g: CoxeterGraph, budget: int = 1000) -> TLInstance:
    """TL(X) with Gamma trivial, C_{S,T} the basis element in right cell S* and left cell T.

    Tableaux are left cells, named by the involution they contain.
    Raises ValueError when some basis element is not pinned down by its
    pair of one-sided cells.
    """
    enum = enumerate_wc(g, budget=budget)
    if not enum.complete:
        raise BudgetExceeded(f"{g.name}: more than {budget} fully commutative elements")
    words = enum.words
    cells = compute_cells(g, words)
    left_of = {w: k for k, c in enumerate(cells.left) for w in c}
    right_of = {w: k for k, c in enumerate(cells.right) for w in c}
    cell_of = {w: k for k, c in enumerate(cells.two_sided) for w in c}

    def tableau_name(k: int) -> str:
        invs = cells.involutions[k]
        return format_word(invs[0], g.n) if len(invs) == 1 else format_word(min(cells.left[k]), g.n)

    names = {k: tableau_name(k) for k in range(len(cells.left))}
    # right cell of w <-> left cell of w* under reversal
    right_to_left = {right_of[w]: left_of[reverse(g, w)] for w in words}
    lam_names = [f"c{k}" for k in range(len(cells.two_sided))]
    tableaux: dict[str, list[str]] = {lam: [] for lam in lam_names}
    for k in range(len(cells.left)):
        lam = lam_names[cell_of[min(cells.left[k])]]
        tableaux[lam].append(names[k])
    for lam in lam_names:
        tableaux[lam].sort(key=lambda s: (len(s.replace(".", "")), s))

    to_label: dict[Word, Label] = {}
    one = "1"
    for w in words:
        lab = Label(lam_names[cell_of[w]], names[right_to_left[right_of[w]]], one, names[left_of[w]])
        if lab in to_label.values():
            raise ValueError(f"{g.name}: {format_word(w)} shares its (right cell, left cell) pair")
        to_label[w] = lab
    to_word = {lab: w for w, lab in to_label.items()}
    sizes = sum(len(tableaux[lam]) ** 2 for lam in lam_names)
    if sizes != len(words):
        raise ValueError(f"{g.name}: {len(words)} basis elements but {sizes} (S, T) pairs")

    less = frozenset((lam_names[k], lam_names[l]) for k, l in cells.below if k != l)
    G = trivial_table()
    datum = TableDatum(lam_names, less, {lam: G for lam in lam_names}, tableaux,
                       idempotents=[to_label[EMPTY]])

    def multiply(X: Label, Y: Label) -> Element:
        m, z = multiply_basis(g, to_word[X], to_word[Y])
        return Element.basis(to_label[z], QUANTUM_TWO ** m)

    def star(X: Label) -> Label:
        return Label(X.lam, X.T, X.b, X.S)

    def trace(X: Label) -> LaurentPoly:
        return trace_ade(inst, X)

    gens = [(f"b{i}", Element.basis(to_label[(i,)])) for i in g.nodes]
    inst = TLInstance(
        f"TL({g.name})", datum, multiply, star, trace,
        format_label=lambda X: "b_" + format_word(to_word[X], g.n),
        encode=lambda X: to_word[X], decode=lambda w: to_label[canonical(g, w)],
        native_basis=words, generators=gens,
    )
    inst.graph = g
    inst.cells_ade = cells
    inst.word_of = to_word
    inst.label_of = to_label
    inst.trace_cache = {}
    return inst


def involution_report(inst: TLInstance) -> Report:
    """Each left cell holds exactly one involution, and it is C_{S,S} for that cell."""
    rep = Report(f"involutions: {inst.name}")
    g, cells = inst.graph, inst.cells_ade
    with Sweep(rep, "one-involution-per-left-cell") as sw:
        for k, invs in cells.involutions.items():
            ok = len(invs) == 1
            if ok:
                X = inst.label_of[invs[0]]
                ok = X.S == X.T
            sw.record(ok, f"left cell {k} has involutions {[format_word(w, g.n) for w in invs]}")
    return rep


# --- cell modules and the trace ---------------------------------------------------------


Matrix = list[list[LaurentPoly]]


@dataclass
class CellModule:
    lam: Hashable
    tableaux: list
    generators: dict[int, Matrix]


def action_matrix(inst: TabularInstance, lam: Hashable, x: Element) -> Matrix:
    """r_x(S', S): coefficient of C_{S',T} in x C_{S,T} mod A(<lam), read at the first T."""
    Ms = inst.datum.tableaux[lam]
    one = inst.identity_b(lam)
    T = Ms[0]
    index = {S: k for k, S in enumerate(Ms)}
    mat = [[ZERO] * len(Ms) for _ in Ms]
    for S in Ms:
        prod = inst.multiply_elements(x, Element.basis(Label(lam, S, one, T)))
        for Z, c in prod.items():
            if Z.lam == lam:
                mat[index[Z.S]][index[S]] = c
    return mat


def cell_module(inst: TLInstance, lam: Hashable) -> CellModule:
    g = inst.graph
    gens = {i: action_matrix(inst, lam, Element.basis(inst.label_of[(i,)])) for i in g.nodes}
    return CellModule(lam, list(inst.datum.tableaux[lam]), gens)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return [[lp_sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)] for r in range(n)]


def mat_scale(a: Matrix, p: LaurentPoly) -> Matrix:
    return [[x * p for x in row] for row in a]


def verify_cell_module(inst: TLInstance, module: CellModule) -> Report:
    """The generator matrices satisfy the defining relations of TL(X)."""
    g = inst.graph
    rep = Report(f"cell module {module.lam}: {inst.name}")
    M = module.generators
    with Sweep(rep, "module-relations") as sw:
        for i in g.nodes:
            sw.record(mat_mul(M[i], M[i]) == mat_scale(M[i], QUANTUM_TWO), f"b{i}^2 != [2] b{i}")
        for i, j in itertools.combinations(g.nodes, 2):
            if g.adjacent(i, j):
                sw.record(mat_mul(mat_mul(M[i], M[j]), M[i]) == M[i], f"b{i} b{j} b{i} != b{i}")
                sw.record(mat_mul(mat_mul(M[j], M[i]), M[j]) == M[j], f"b{j} b{i} b{j} != b{j}")
            else:
                sw.record(mat_mul(M[i], M[j]) == mat_mul(M[j], M[i]), f"b{i} b{j} != b{j} b{i}")
    return rep


def trace_ade(inst: TLInstance, X: Label) -> LaurentPoly:
    """tau(X) = sum over cells lam of v^(-2 a(lam)) times the trace of X on the cell module."""
    cache = inst.trace_cache
    if X in cache:
        return cache[X]
    parts = []
    x = Element.basis(X)
    for lam in inst.datum.lambdas:
        # X acts by zero on cell modules of cells not below its own
        if lam != X.lam and not inst.datum.is_below(lam, X.lam):
            continue
        mat = action_matrix(inst, lam, x)
        tr = lp_sum(mat[k][k] for k in range(len(mat)))
        if tr:
            parts.append(tr.shift(-2 * a_of_cell(inst, lam)))
    cache[X] = lp_sum(parts)
    return cache[X]


def trace_identity(inst: TLInstance) -> LaurentPoly:
    """tau(b_e) = sum over lam of v^(-2 a(lam)) |M(lam)|."""
    return lp_sum(LaurentPoly.monomial(-2 * a_of_cell(inst, lam), len(inst.datum.tableaux[lam]))
                  for lam in inst.datum.lambdas)
