"""The affine diagram algebra D(A^_{n-1}) on a cylinder with n nodes per circle.

A diagram is stored on its fundamental domain: for every top and bottom
node 1..n we record the partner node as (row, absolute position),
where absolute positions live in Z and node p is the shift of node
((p - 1) mod n) + 1.  Bands (non-contractible loops of the cylinder)
are a plain count and occur only when nothing propagates.

Basis labels follow the triple description: [S1, S2, w] when
t > 0 propagating edges are present, with S1, S2 annular involutions
and w the winding number; and [S1, S2, k] when t = 0, with S1, S2
shift-equivariant matchings of Z and k bands.  The tabular basis at
t = 0 uses the Chebyshev polynomials U_k in the band variable.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator

from .datum import Element, Label, TableDatum, TabularInstance, chain_order
from .laurent import ONE, QUANTUM_TWO, ZERO, LaurentPoly, lp_sum
from .report import Report, Sweep
from .table_algebra import ChebyshevAlgebra, IntegerLaurentAlgebra

TOP, BOT = 0, 1
Node = tuple[int, int]  # (row, absolute position)


class AffineError(ValueError):
    pass


def residue(p: int, n: int) -> int:
    return (p - 1) % n + 1


def block(p: int, n: int) -> int:
    """q with p in [qn + 1, qn + n]."""
    return (p - 1) // n


@dataclass(frozen=True)
class AffineDiagram:
    n: int
    top: tuple[Node, ...]     # partner of top node i (index i-1)
    bottom: tuple[Node, ...]  # partner of bottom node i
    bands: int = 0

    def partner(self, node: Node) -> Node:
        row, p = node
        r = residue(p, self.n)
        shift = p - r
        prow, pp = (self.top if row == TOP else self.bottom)[r - 1]
        return prow, pp + shift

    @property
    def through(self) -> int:
        return sum(1 for row, _ in self.bottom if row == TOP)

    def propagating(self) -> list[tuple[int, int]]:
        """(top position, bottom position) with the bottom end in 1..n."""
        return [(p, i) for i, (row, p) in enumerate(self.bottom, 1) if row == TOP]

    def arcs(self, row: int) -> list[tuple[int, int]]:
        """Arcs in a circle as absolute (left, right) with left in 1..n."""
        ends = self.top if row == TOP else self.bottom
        out = set()
        for i, (prow, p) in enumerate(ends, 1):
            if prow == row:
                left, right = min(i, p), max(i, p)
                shift = left - residue(left, self.n)
                out.add((left - shift, right - shift))
        return sorted(out)

    def flip(self) -> AffineDiagram:
        swap = lambda node: (1 - node[0], node[1])  # noqa: E731
        return AffineDiagram(self.n, tuple(map(swap, self.bottom)), tuple(map(swap, self.top)), self.bands)


def make_diagram(n: int, top_arcs: Iterable[tuple[int, int]], bottom_arcs: Iterable[tuple[int, int]],
                 props: Iterable[tuple[int, int]], bands: int = 0) -> AffineDiagram:
    """Build from absolute arcs and (top, bottom) propagating pairs; validates planarity."""
    top: dict[int, Node] = {}
    bottom: dict[int, Node] = {}

    def put(side: dict, row: int, p: int, partner: Node) -> None:
        r = residue(p, n)
        node = (partner[0], partner[1] - (p - r))
        if r in side and side[r] != node:
            raise AffineError(f"node {r} in row {row} used twice")
        side[r] = node

    for a, b in top_arcs:
        put(top, TOP, a, (TOP, b))
        put(top, TOP, b, (TOP, a))
    for a, b in bottom_arcs:
        put(bottom, BOT, a, (BOT, b))
        put(bottom, BOT, b, (BOT, a))
    for x, y in props:
        put(top, TOP, x, (BOT, y))
        put(bottom, BOT, y, (TOP, x))
    if len(top) != n or len(bottom) != n:
        raise AffineError("not every node is the end of an edge")
    D = AffineDiagram(n, tuple(top[i] for i in range(1, n + 1)), tuple(bottom[i] for i in range(1, n + 1)), bands)
    problem = planarity_failure(D)
    if problem:
        raise AffineError(problem)
    return D


def planarity_failure(D: AffineDiagram) -> str | None:
    n = D.n
    for row in (TOP, BOT):
        arcs = D.arcs(row)
        for a, b in arcs:
            if not 0 < b - a < n:
                return f"arc ({a},{b}) is too long"
        for (a, b), (c, d) in itertools.product(arcs, repeat=2):
            for q in (-1, 0, 1):
                c2, d2 = c + q * n, d + q * n
                if (a, b) != (c2, d2) and (a < c2 < b < d2 or c2 < a < d2 < b):
                    return f"arcs ({a},{b}) and ({c2},{d2}) cross"
        ends = [x if row == TOP else y for x, y in D.propagating()]
        for a, b in arcs:
            for e in ends:
                for q in range(-2 - abs(e) // n, 3 + abs(e) // n):
                    if a < e + q * n < b:
                        return f"propagating end {e + q * n} inside arc ({a},{b})"
    props = sorted(D.propagating(), key=lambda e: e[1])
    xs = [x for x, _ in props]
    if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])) or (xs and xs[-1] >= xs[0] + n):
        return "propagating edges cross"
    if props and D.bands:
        return "bands alongside propagating edges"
    return None


# --- text codec ------------------------------------------------------------------------


def format_affine(D: AffineDiagram) -> str:
    t = D.through
    top = ",".join(f"({a},{b})" for a, b in D.arcs(TOP))
    bot = ",".join(f"({a},{b})" for a, b in D.arcs(BOT))
    props = ",".join(f"({x},{y})" for x, y in D.propagating())
    payload = f"w={winding_number(D)}" if t else f"k={D.bands}"
    return f"{D.n}; T:{top}; B:{bot}; P:{props}; {payload}"


_PAIR = re.compile(r"\((-?\d+),(-?\d+)\)")


def parse_affine(text: str) -> AffineDiagram:
    parts = [p.strip() for p in text.split(";")]
    if len(parts) != 5 or not parts[0].isdigit():
        raise ValueError(f"cannot read affine diagram {text!r}")
    n = int(parts[0])
    fields = {}
    for tag, body in ((p[:2], p[2:]) for p in parts[1:4]):
        if tag not in ("T:", "B:", "P:"):
            raise ValueError(f"unexpected field {tag!r}")
        fields[tag] = [(int(a), int(b)) for a, b in _PAIR.findall(body)]
    payload = parts[4]
    if not re.fullmatch(r"[wk]=-?\d+", payload):
        raise ValueError(f"bad payload {payload!r}")
    bands = int(payload[2:]) if payload[0] == "k" else 0
    D = make_diagram(n, fields["T:"], fields["B:"], fields["P:"], bands)
    if payload[0] == "w" and (not D.through or winding_number(D) != int(payload[2:])):
        raise ValueError(f"payload {payload} does not match the edges")
    return D


# --- composition ------------------------------------------------------------------------


def compose(A: AffineDiagram, B: AffineDiagram) -> tuple[int, AffineDiagram]:
    """A on top of B: returns (loops removed, reduced diagram)."""
    n = A.n
    if B.n != n:
        raise AffineError("diagrams have different n")
    # layers: 0 = top of A, 1 = middle, 2 = bottom of B
    def step(layer: int, p: int, via_a: bool) -> tuple[int, int]:
        if via_a:
            row, q = A.partner((TOP if layer == 0 else BOT, p))
            return (0 if row == TOP else 1), q
        row, q = B.partner((TOP if layer == 1 else BOT, p))
        return (1 if row == TOP else 2), q

    visited_mid: set[int] = set()

    def walk(layer: int, p: int) -> tuple[int, int]:
        via_a = layer == 0
        while True:
            layer, p = step(layer, p, via_a)
            if layer != 1:
                return layer, p
            visited_mid.add(residue(p, n))
            via_a = not via_a

    top: list[Node] = []
    bottom: list[Node] = []
    for i in range(1, n + 1):
        layer, p = walk(0, i)
        top.append((TOP if layer == 0 else BOT, p))
    for i in range(1, n + 1):
        layer, p = walk(2, i)
        bottom.append((TOP if layer == 0 else BOT, p))
    loops, bands = 0, A.bands + B.bands
    for r in range(1, n + 1):
        if r in visited_mid:
            continue
        p, via_a = r, True
        while True:
            visited_mid.add(residue(p, n))
            layer, p = step(1, p, via_a)
            via_a = not via_a
            if via_a and residue(p, n) == r:
                break
        if p == r:
            loops += 1
        elif abs(p - r) == n:
            bands += 1
        else:
            raise AffineError(f"middle cycle from {r} drifts by {p - r}")
    D = AffineDiagram(n, tuple(top), tuple(bottom), bands)
    if D.through and bands:
        raise AffineError("band created next to propagating edges")
    return loops, D


AffineCombo = dict  # AffineDiagram -> LaurentPoly


def affine_multiply(x: AffineCombo, y: AffineCombo) -> AffineCombo:
    acc: dict[AffineDiagram, list[LaurentPoly]] = {}
    for (A, c), (B, d) in itertools.product(x.items(), y.items()):
        loops, D = compose(A, B)
        acc.setdefault(D, []).append(c * d * QUANTUM_TWO ** loops)
    return {D: s for D, cs in acc.items() if (s := lp_sum(cs))}


# --- generators and relations ----------------------------------------------------------------


def identity(n: int) -> AffineDiagram:
    return make_diagram(n, [], [], [(i, i) for i in range(1, n + 1)])


def shift_u(n: int, power: int = 1) -> AffineDiagram:
    """u^power: bottom j joined to top j + power."""
    return make_diagram(n, [], [], [(j + power, j) for j in range(1, n + 1)])


def e_gen(n: int, i: int) -> AffineDiagram:
    i = residue(i, n)
    others = [j for j in range(1, n + 1) if j not in (i, residue(i + 1, n))]
    return make_diagram(n, [(i, i + 1)], [(i, i + 1)], [(j, j) for j in others])


def _prod(*ds: AffineDiagram) -> AffineCombo:
    acc: AffineCombo = {identity(ds[0].n): ONE}
    for D in ds:
        acc = affine_multiply(acc, {D: ONE})
    return acc


def affine_generators_relations(n: int) -> Report:
    if n < 3:
        raise ValueError("affine diagrams need n >= 3")
    rep = Report(f"affine relations n={n}")
    E = {i: e_gen(n, i) for i in range(1, n + 1)}
    u, u_inv = shift_u(n), shift_u(n, -1)
    two = lambda D: {D: QUANTUM_TWO}  # noqa: E731
    with Sweep(rep, "relation-1") as sw:
        for i in E:
            sw.record(_prod(E[i], E[i]) == two(E[i]), f"E{i}^2 != [2]E{i}")
    with Sweep(rep, "relation-2") as sw:
        for i, j in itertools.product(E, repeat=2):
            if residue(j + 1, n) != i and residue(j - 1, n) != i:
                sw.record(_prod(E[i], E[j]) == _prod(E[j], E[i]), f"E{i}E{j} != E{j}E{i}")
    with Sweep(rep, "relation-3") as sw:
        for i in E:
            for j in (residue(i + 1, n), residue(i - 1, n)):
                sw.record(_prod(E[i], E[j], E[i]) == {E[i]: ONE}, f"E{i}E{j}E{i} != E{i}")
    with Sweep(rep, "relation-4") as sw:
        for i in E:
            sw.record(_prod(u, E[i], u_inv) == {E[residue(i + 1, n)]: ONE}, f"uE{i}u^-1 != E{residue(i + 1, n)}")
        sw.record(_prod(u, u_inv) == {identity(n): ONE}, "u u^-1 != 1")
    with Sweep(rep, "relation-5") as sw:
        lhs = _prod(*([u, E[1]] * (n - 1)))
        rhs = _prod(*([u] * n + [u, E[1]]))
        sw.record(lhs == rhs, f"(uE1)^{n - 1} != u^{n}(uE1)")
    return rep


def winding_number(D: AffineDiagram) -> int:
    """Signed count of propagating-edge copies crossing the seam x = 1/2."""
    if not D.through:
        raise AffineError("winding number needs a propagating edge")
    return sum(block(x, D.n) - block(y, D.n) for x, y in D.propagating())


def is_tl_diagram(D: AffineDiagram) -> bool:
    """Membership of the TL(A^) subalgebra: the identity, or even crossings with every line x = i + 1/2."""
    n = D.n
    if D.through == n:
        return D == identity(n)
    spans = [tuple(sorted(e)) for e in D.propagating()]
    spans += D.arcs(TOP) + D.arcs(BOT)
    for i in range(n):
        s = i + 0.5
        hits = D.bands
        for lo, hi in spans:
            # copies lo + qn .. hi + qn containing s
            hits += sum(1 for q in range(-(abs(lo) + abs(hi)) // n - 2, (abs(lo) + abs(hi)) // n + 3)
                        if lo + q * n < s < hi + q * n)
        if hits % 2:
            return False
    return True


# --- annular involutions and the triple codec -----------------------------------------------


Involution = tuple[tuple[int, int], ...]  # sorted transposed pairs


def fixed_points(S: Involution, n: int) -> list[int]:
    moved = {x for pair in S for x in pair}
    return [i for i in range(1, n + 1) if i not in moved]


def is_annular(S: Involution, n: int) -> bool:
    image = {i: i for i in range(1, n + 1)}
    for i, j in S:
        if not (1 <= i < j <= n) or image[i] != i or image[j] != j:
            return False
        image[i], image[j] = j, i
    fix = set(fixed_points(S, n))
    for i, j in S:
        interval = set(range(i, j + 1))
        if {image[k] for k in interval} != interval:
            return False
        if fix & interval and not fix <= interval:
            return False
    return True


def _involutions(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for tail in _involutions(rest):
        yield tail
    for k, q in enumerate(rest):
        for tail in _involutions(rest[:k] + rest[k + 1:]):
            yield [(first, q)] + tail


def annular_involutions(n: int, t: int) -> list[Involution]:
    """Ann(n) intersected with I(t), t > 0."""
    out = []
    for pairs in _involutions(list(range(1, n + 1))):
        S = tuple(sorted(pairs))
        if n - 2 * len(S) == t and is_annular(S, n):
            out.append(S)
    return sorted(out)


def i_zero(n: int) -> list[Involution]:
    """I(0): shift-equivariant fixed-point-free matchings of Z, as absolute arcs (a, b) with a in 1..n."""
    if n % 2:
        return []
    out = set()
    for pairs in _involutions(list(range(1, n + 1))):
        if len(pairs) * 2 != n or not is_annular(tuple(sorted(pairs)), n):
            continue
        for sides in itertools.product((0, 1), repeat=len(pairs)):
            arcs = tuple(sorted((i, j) if s == 0 else (j, i + n) for (i, j), s in zip(pairs, sides)))
            try:
                make_diagram(n, arcs, arcs, [])
            except AffineError:
                continue
            out.add(arcs)
    return sorted(out)


def format_involution(S: Involution) -> str:
    return "".join(f"({a},{b})" for a, b in S) or "()"


def parse_involution(text: str) -> Involution:
    text = text.strip()
    pairs = _PAIR.findall(text)
    if _PAIR.sub("", text) not in ("", "()"):
        raise ValueError(f"cannot read involution {text!r}")
    return tuple(sorted((int(a), int(b)) for a, b in pairs))


def _top_arcs(S: Involution, n: int) -> list[tuple[int, int]]:
    fix = set(fixed_points(S, n))
    out = []
    for i, j in S:
        inside = set(range(i + 1, j))
        out.append((i, j) if not (fix & inside) else (j, i + n))
    return out


def from_triple(n: int, S1: Involution, S2: Involution, payload: int) -> AffineDiagram:
    """[S1, S2, w] for t > 0, [S1, S2, k] with absolute arcs for t = 0."""
    if len(S1) != len(S2):
        raise AffineError("involutions have different numbers of fixed points")
    if 2 * len(S1) == n:
        if payload < 0:
            raise AffineError("band count must be nonnegative")
        return make_diagram(n, S1, S2, [], payload)
    f1, f2 = fixed_points(S1, n), fixed_points(S2, n)
    t = len(f1)
    if not (is_annular(S1, n) and is_annular(S2, n)):
        raise AffineError("involutions must be annular")
    # bottom g_a joins top f_{a+w}, indices read periodically
    props = []
    for a, g in enumerate(f2):
        q, r = divmod(a + payload, t)
        props.append((f1[r] + q * n, g))
    return make_diagram(n, _top_arcs(S1, n), _top_arcs(S2, n), props)


def _reduced(arcs: list[tuple[int, int]], n: int) -> Involution:
    return tuple(sorted(tuple(sorted((residue(a, n), residue(b, n)))) for a, b in arcs))


def to_triple(D: AffineDiagram) -> tuple[Involution, Involution, int]:
    n = D.n
    if not D.through:
        return tuple(D.arcs(TOP)), tuple(D.arcs(BOT)), D.bands
    S1, S2 = _reduced(D.arcs(TOP), n), _reduced(D.arcs(BOT), n)
    if not (is_annular(S1, n) and is_annular(S2, n)):
        raise AffineError(f"{format_affine(D)} reads off a non-annular involution")
    return S1, S2, winding_number(D)


def format_triple(S1: Involution, S2: Involution, payload: int) -> str:
    return f"[{format_involution(S1)};{format_involution(S2)};{payload}]"


def parse_triple(text: str) -> tuple[Involution, Involution, int]:
    hit = re.fullmatch(r"\s*\[([^;]*);([^;]*);\s*(-?\d+)\s*\]\s*", text)
    if not hit:
        raise ValueError(f"cannot read triple {text!r}")
    return parse_involution(hit.group(1)), parse_involution(hit.group(2)), int(hit.group(3))


# --- Chebyshev change of basis ---------------------------------------------------------------


def power_to_chebyshev(k: int) -> dict[int, int]:
    """x^k in the U basis, from x U_j = U_{j+1} + U_{j-1}."""
    if k < 0:
        raise ValueError("negative power")
    cur = {0: 1}
    for _ in range(k):
        nxt: dict[int, int] = {}
        for j, c in cur.items():
            nxt[j + 1] = nxt.get(j + 1, 0) + c
            if j:
                nxt[j - 1] = nxt.get(j - 1, 0) + c
        cur = nxt
    return {j: c for j, c in cur.items() if c}


def chebyshev_to_power(k: int) -> dict[int, int]:
    """U_k as a polynomial in x, from U_{k+1} = x U_k - U_{k-1}."""
    if k < 0:
        raise ValueError("negative index")
    prev, cur = {}, {0: 1}
    for _ in range(k):
        nxt = {e + 1: c for e, c in cur.items()}
        for e, c in prev.items():
            nxt[e] = nxt.get(e, 0) - c
        prev, cur = cur, {e: c for e, c in nxt.items() if c}
    return cur


def chebyshev_change(k: int, window: int | None = None) -> dict[int, int]:
    if window is not None and k > window:
        raise ValueError(f"power {k} exceeds the window {window}")
    return power_to_chebyshev(k)


# --- the torus trace ----------------------------------------------------------------------------


def torus_loops(D: AffineDiagram) -> list[tuple[int, int]]:
    """Loops after gluing the top circle to the bottom one, as (horizontal, vertical) windings.

    Bands of D appear as (1, 0) loops.
    """
    n = D.n
    seen: set[tuple[int, int]] = set()
    loops = []
    for row0 in (TOP, BOT):
        for r in range(1, n + 1):
            if (row0, r) in seen:
                continue
            row, p, vert = row0, r, 0
            while True:
                seen.add((row, residue(p, n)))
                row, p = D.partner((row, p))
                seen.add((row, residue(p, n)))
                # pass through the glued circle to the other row at the same position
                vert += 1 if row == BOT else -1
                row = TOP if row == BOT else BOT
                if row == row0 and residue(p, n) == r:
                    break
            loops.append(((p - r) // n, vert))
    loops.extend([(1, 0)] * D.bands)
    return loops


@functools.lru_cache(maxsize=None)
def torus_trace(D: AffineDiagram) -> LaurentPoly:
    n = D.n
    contractible, regular, exceptional = 0, [], 0
    for h, vert in torus_loops(D):
        if h == 0 and vert == 0:
            contractible += 1
        elif vert == 0:
            exceptional += 1
        else:
            regular.append(h)
    if regular and exceptional:
        raise AffineError("regular and exceptional loops together")
    scale = QUANTUM_TWO ** contractible
    if exceptional:
        return scale * LaurentPoly.monomial(-n, power_to_chebyshev(exceptional).get(0, 0))
    if any(regular):
        return ZERO
    return scale * LaurentPoly.monomial(len(regular) - n)


# --- the table datum --------------------------------------------------------------------------


class AffineInstance(TabularInstance):
    n: int
    to_combo: dict
    label_of_diagram: object


def build_table_datum_affine(n: int, w_window: int = 2, k_window: int = 2) -> AffineInstance:
    if n < 3:
        raise ValueError("affine diagrams need n >= 3")
    lambdas = [t for t in range(n + 1) if (n - t) % 2 == 0]
    laurent, cheb = IntegerLaurentAlgebra(window=w_window), ChebyshevAlgebra(window=k_window)
    gamma = {t: (cheb if t == 0 else laurent) for t in lambdas}
    tableaux = {t: (i_zero(n) if t == 0 else annular_involutions(n, t)) for t in lambdas}
    one = Label(n, (), 0, ())
    datum = TableDatum(lambdas, chain_order(lambdas), gamma, tableaux, idempotents=[one])

    @functools.lru_cache(maxsize=None)
    def to_combo(X: Label) -> AffineCombo:
        if X.lam:
            return {from_triple(n, X.S, X.T, X.b): ONE}
        return {from_triple(n, X.S, X.T, e): LaurentPoly.const(c) for e, c in chebyshev_to_power(X.b).items()}

    @functools.lru_cache(maxsize=None)
    def from_diagram(D: AffineDiagram) -> dict[Label, int]:
        S1, S2, payload = to_triple(D)
        t = D.through
        if t:
            return {Label(t, S1, payload, S2): 1}
        return {Label(0, S1, j, S2): c for j, c in power_to_chebyshev(payload).items()}

    def from_combo(x: AffineCombo) -> Element:
        acc: dict[Label, list[LaurentPoly]] = {}
        for D, c in x.items():
            for X, w in from_diagram(D).items():
                acc.setdefault(X, []).append(c * w)
        return Element({X: lp_sum(cs) for X, cs in acc.items()})

    def multiply(X: Label, Y: Label) -> Element:
        return from_combo(affine_multiply(to_combo(X), to_combo(Y)))

    def star(X: Label) -> Label:
        return Label(X.lam, X.T, gamma[X.lam].bar(X.b), X.S)

    def trace(X: Label) -> LaurentPoly:
        return lp_sum(c * torus_trace(D) for D, c in to_combo(X).items())

    @functools.lru_cache(maxsize=None)
    def fmt(X: Label) -> str:
        G = gamma[X.lam]
        return f"[{format_involution(X.S)};{format_involution(X.T)};{G.format_label(X.b)}]"

    gens = [("u", Element.basis(Label(n, (), 1, ()))), ("u^-1", Element.basis(Label(n, (), -1, ())))]
    gens += [(f"E{i}", from_combo({e_gen(n, i): ONE})) for i in range(1, n + 1)]
    inst = AffineInstance(
        f"affine(n={n},|w|<={w_window},k<={k_window})", datum, multiply, star, trace,
        a_override={t: (n - t) // 2 for t in lambdas}, format_label=fmt,
        encode=lambda X: (X.S, X.T, X.b), decode=None, generators=gens, finite=False,
    )
    inst.n = n
    inst.to_combo = to_combo
    inst.label_of_diagram = from_diagram
    return inst


def window_diagrams(n: int, w_window: int, k_window: int) -> list[AffineDiagram]:
    """All diagrams with |w| <= w_window, or k <= k_window bands when nothing propagates."""
    out = []
    for t in range(n, -1, -2):
        if t:
            Ms = annular_involutions(n, t)
            payloads: Iterable[int] = range(-w_window, w_window + 1)
        else:
            Ms = i_zero(n)
            payloads = range(k_window + 1)
        for S1, S2 in itertools.product(Ms, repeat=2):
            out.extend(from_triple(n, S1, S2, p) for p in payloads)
    return out


def codec_report(n: int, w_window: int = 3, k_window: int = 3) -> Report:
    rep = Report(f"affine codec n={n}")
    with Sweep(rep, "triple-roundtrip") as sw:
        for D in window_diagrams(n, w_window, k_window):
            triple = to_triple(D)
            back = from_triple(n, *triple)
            text = parse_affine(format_affine(D))
            sw.record(back == D and text == D and parse_triple(format_triple(*triple)) == triple,
                      f"{format_affine(D)} does not round-trip")
    return rep


def tableau_key(S: Hashable) -> str:
    return format_involution(S)
