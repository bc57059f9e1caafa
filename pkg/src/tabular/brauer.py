"""Brauer algebra B(n) over Z[v, v^-1] with loop value [2] = v + v^-1.

A diagram is a perfect matching on n top and n bottom nodes, crossings
allowed.  Basis labels are triples [S1, S2, w]: S1, S2 are the
involutions read off the top and bottom arcs, and w in S_t records how
the t propagating edges permute the fixed points.  The table algebra of
the cell with t propagating edges is Z S_t with inversion as bar.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Iterator

from .datum import Element, Label, TableDatum, TabularInstance, chain_order
from .laurent import ONE, QUANTUM_TWO, LaurentPoly, lp_sum
from .table_algebra import perm_cycles, symmetric_group_ring

TOP, BOT = 0, 1
Node = tuple[int, int]
Involution = tuple[tuple[int, int], ...]
Perm = tuple[int, ...]


@dataclass(frozen=True)
class BrauerDiagram:
    n: int
    top: tuple[Node, ...]     # partner of top node i at index i-1
    bottom: tuple[Node, ...]

    def partner(self, node: Node) -> Node:
        row, i = node
        return (self.top if row == TOP else self.bottom)[i - 1]

    @property
    def through(self) -> int:
        return sum(1 for row, _ in self.bottom if row == TOP)


def from_pairs(n: int, pairs: list[tuple[Node, Node]]) -> BrauerDiagram:
    """Build from a list of node pairs; every one of the 2n nodes must be used once."""
    mate: dict[Node, Node] = {}
    for a, b in pairs:
        for x, y in ((a, b), (b, a)):
            if x in mate or x[0] not in (TOP, BOT) or not 1 <= x[1] <= n:
                raise ValueError(f"node {x} is invalid or used twice")
            mate[x] = y
    if len(mate) != 2 * n:
        raise ValueError("not a perfect matching")
    return BrauerDiagram(n, tuple(mate[(TOP, i)] for i in range(1, n + 1)),
                         tuple(mate[(BOT, i)] for i in range(1, n + 1)))


def all_diagrams(n: int) -> list[BrauerDiagram]:
    nodes = [(TOP, i) for i in range(1, n + 1)] + [(BOT, i) for i in range(1, n + 1)]

    def matchings(rest: list[Node]) -> Iterator[list[tuple[Node, Node]]]:
        if not rest:
            yield []
            return
        head = rest[0]
        for k in range(1, len(rest)):
            for tail in matchings(rest[1:k] + rest[k + 1:]):
                yield [(head, rest[k])] + tail

    return [from_pairs(n, m) for m in matchings(nodes)]


def compose(A: BrauerDiagram, B: BrauerDiagram) -> tuple[int, BrauerDiagram]:
    """A stacked on top of B: (number of closed middle loops, diagram)."""
    n = A.n
    # middle nodes are A's bottom row, identified with B's top row
    seen: set[int] = set()

    def exit_from(node: Node, in_a: bool) -> Node:
        while True:
            row, i = (A if in_a else B).partner(node)
            if in_a and row == TOP:
                return (TOP, i)
            if not in_a and row == BOT:
                return (BOT, i)
            seen.add(i)
            node, in_a = ((TOP, i), False) if in_a else ((BOT, i), True)

    mate: dict[Node, Node] = {}
    for i in range(1, n + 1):
        mate[(TOP, i)] = exit_from((TOP, i), True)
        mate[(BOT, i)] = exit_from((BOT, i), False)
    loops = 0
    for i in range(1, n + 1):
        if i in seen:
            continue
        loops += 1
        node, in_a = (BOT, i), True
        while True:
            _, j = (A if in_a else B).partner(node)
            seen.add(j)
            node, in_a = ((TOP, j), False) if in_a else ((BOT, j), True)
            if in_a and j == i:
                break
    D = BrauerDiagram(n, tuple(mate[(TOP, i)] for i in range(1, n + 1)),
                      tuple(mate[(BOT, i)] for i in range(1, n + 1)))
    return loops, D


def brauer_multiply(x: dict, y: dict) -> dict:
    acc: dict[BrauerDiagram, list[LaurentPoly]] = {}
    for (A, c), (B, d) in itertools.product(x.items(), y.items()):
        loops, D = compose(A, B)
        acc.setdefault(D, []).append(c * d * QUANTUM_TWO ** loops)
    return {D: s for D, cs in acc.items() if (s := lp_sum(cs))}


# --- triples -----------------------------------------------------------------------------


def involutions(n: int, t: int) -> list[Involution]:
    """Involutions of 1..n with exactly t fixed points, as sorted transposition lists."""
    def pairings(points: list[int], k: int) -> Iterator[list[tuple[int, int]]]:
        if k == 0:
            yield []
            return
        for i, a in enumerate(points):
            for j in range(i + 1, len(points)):
                for tail in pairings(points[i + 1:j] + points[j + 1:], k - 1):
                    yield [(a, points[j])] + tail

    return sorted({tuple(sorted(p)) for p in pairings(list(range(1, n + 1)), (n - t) // 2)}) if (n - t) % 2 == 0 else []


def fixed_points(S: Involution, n: int) -> list[int]:
    moved = {x for pair in S for x in pair}
    return [i for i in range(1, n + 1) if i not in moved]


def from_triple(n: int, S1: Involution, S2: Involution, w: Perm) -> BrauerDiagram:
    """Bottom fixed point g_a joins top fixed point f_{w(a)}."""
    f1, f2 = fixed_points(S1, n), fixed_points(S2, n)
    if len(f1) != len(f2) or sorted(w) != list(range(len(f1))):
        raise ValueError("w must permute the fixed points")
    pairs = [((TOP, a), (TOP, b)) for a, b in S1] + [((BOT, a), (BOT, b)) for a, b in S2]
    pairs += [((BOT, g), (TOP, f1[w[a]])) for a, g in enumerate(f2)]
    return from_pairs(n, pairs)


def to_triple(D: BrauerDiagram) -> tuple[Involution, Involution, Perm]:
    n = D.n

    def arcs(row: int) -> Involution:
        ends = D.top if row == TOP else D.bottom
        return tuple((i, j) for i, (r, j) in enumerate(ends, 1) if r == row and i < j)

    S1, S2 = arcs(TOP), arcs(BOT)
    index = {f: k for k, f in enumerate(fixed_points(S1, n))}
    w = tuple(index[D.bottom[g - 1][1]] for g in fixed_points(S2, n))
    return S1, S2, w


def format_involution(S: Involution) -> str:
    return "".join(f"({a} {b})" for a, b in S) or "1"


_CYCLE = re.compile(r"\(([\d ]+)\)")


def _parse_cycles(text: str) -> list[list[int]]:
    text = text.strip()
    if text == "1":
        return []
    if _CYCLE.sub("", text).strip():
        raise ValueError(f"cannot read cycle notation {text!r}")
    return [[int(x) for x in body.split()] for body in _CYCLE.findall(text)]


def parse_involution(text: str) -> Involution:
    cycles = _parse_cycles(text)
    if any(len(c) != 2 for c in cycles):
        raise ValueError(f"{text!r} is not a product of disjoint transpositions")
    return tuple(sorted(tuple(sorted(c)) for c in cycles))


def parse_perm(text: str, t: int) -> Perm:
    image = list(range(t))
    for cyc in _parse_cycles(text):
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if not 1 <= a <= t:
                raise ValueError(f"point {a} outside 1..{t}")
            image[a - 1] = b - 1
    if sorted(image) != list(range(t)):
        raise ValueError(f"{text!r} is not a permutation")
    return tuple(image)


def format_triple(S1: Involution, S2: Involution, w: Perm) -> str:
    return f"[{format_involution(S1)};{format_involution(S2)};{perm_cycles(w)}]"


def parse_triple(text: str, n: int) -> tuple[Involution, Involution, Perm]:
    hit = re.fullmatch(r"\s*\[([^;]*);([^;]*);([^;]*)\]\s*", text)
    if not hit:
        raise ValueError(f"cannot read triple {text!r}")
    S1, S2 = parse_involution(hit.group(1)), parse_involution(hit.group(2))
    w = parse_perm(hit.group(3), len(fixed_points(S1, n)))
    from_triple(n, S1, S2, w)
    return S1, S2, w


# --- the trace ---------------------------------------------------------------------------------


def closure_windings(D: BrauerDiagram) -> list[int]:
    """|winding| of each loop after joining top node i to bottom node i.

    The winding counts signed traversals of propagating edges, so it is
    the winding around the annulus the closure lives on.
    """
    n = D.n
    seen: set[Node] = set()
    out = []
    for start in [(BOT, i) for i in range(1, n + 1)]:
        if start in seen:
            continue
        node, wind = start, 0
        while True:
            seen.add(node)
            nxt = D.partner(node)
            if node[0] != nxt[0]:
                wind += 1 if node[0] == BOT else -1
            seen.add(nxt)
            # through the closure: top i is bottom i
            node = (BOT if nxt[0] == TOP else TOP, nxt[1])
            if node == start:
                break
        out.append(abs(wind))
    return out


@functools.lru_cache(maxsize=None)
def brauer_trace(D: BrauerDiagram) -> LaurentPoly:
    """0 if a closure loop winds twice or more, else v^(L1 - n) [2]^L0.

    L1 counts loops winding once and L0 loops not winding at all; on
    C(S, 1, S) this is v^-2k [2]^k with k the number of arcs per row.
    """
    loops = closure_windings(D)
    if any(w >= 2 for w in loops):
        return LaurentPoly()
    l1 = sum(1 for w in loops if w == 1)
    l0 = len(loops) - l1
    return LaurentPoly.monomial(l1 - D.n) * QUANTUM_TWO ** l0


# --- the table datum -----------------------------------------------------------------------------


class BrauerInstance(TabularInstance):
    n: int
    to_diagram: object
    to_label: object


def build_table_datum_brauer(n: int) -> BrauerInstance:
    if n < 1:
        raise ValueError("Brauer algebras need n >= 1")
    lambdas = [t for t in range(n + 1) if (n - t) % 2 == 0]
    gamma = {t: symmetric_group_ring(t) for t in lambdas}
    tableaux = {t: involutions(n, t) for t in lambdas}
    one = Label(n, (), tuple(range(n)), ())
    datum = TableDatum(lambdas, chain_order(lambdas), gamma, tableaux, idempotents=[one])

    @functools.lru_cache(maxsize=None)
    def to_diagram(X: Label) -> BrauerDiagram:
        return from_triple(n, X.S, X.T, X.b)

    @functools.lru_cache(maxsize=None)
    def to_label(D: BrauerDiagram) -> Label:
        S1, S2, w = to_triple(D)
        return Label(len(w), S1, w, S2)

    def multiply(X: Label, Y: Label) -> Element:
        prod = brauer_multiply({to_diagram(X): ONE}, {to_diagram(Y): ONE})
        return Element({to_label(D): c for D, c in prod.items()})

    def star(X: Label) -> Label:
        return Label(X.lam, X.T, gamma[X.lam].bar(X.b), X.S)

    def fmt(X: Label) -> str:
        return format_triple(X.S, X.T, X.b)

    def encode(X: Label) -> BrauerDiagram:
        return to_diagram(X)

    gens = []
    for i in range(1, n):
        s = [((TOP, j), (BOT, j)) for j in range(1, n + 1) if j not in (i, i + 1)]
        cross = from_pairs(n, s + [((TOP, i), (BOT, i + 1)), ((TOP, i + 1), (BOT, i))])
        cup = from_pairs(n, s + [((TOP, i), (TOP, i + 1)), ((BOT, i), (BOT, i + 1))])
        gens += [(f"s{i}", Element.basis(to_label(cross))), (f"e{i}", Element.basis(to_label(cup)))]
    inst = BrauerInstance(
        f"brauer(n={n})", datum, multiply, star, lambda X: brauer_trace(to_diagram(X)),
        a_override={t: (n - t) // 2 for t in lambdas}, format_label=fmt, encode=encode,
        decode=to_label, native_basis=all_diagrams(n), generators=gens,
    )
    inst.n = n
    inst.to_diagram = to_diagram
    inst.to_label = to_label
    return inst
