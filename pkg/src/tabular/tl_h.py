"""TL(H_n) as an algebra of decorated planar diagrams on n+1 strands.

Nodes are numbered north-first: north i is i, south i is m+i, where
m = n+1.  Arcs may carry decorations ("blobs") only when exposed to the
west face.  Reduction:

  R1  an undecorated contractible loop is removed for a factor [2];
  R2  a contractible loop with a single decoration kills the term;
  R3  two decorations on one curve become one decoration plus none,
      matching x^2 = x + 1 in the golden table algebra.

Applied together, a curve with k decorations reads as F(k-1) + F(k) x
(Fibonacci numbers), which is what `_blob_power` returns.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .datum import Element, Label, TableDatum, TabularInstance, chain_order
from .laurent import ONE, QUANTUM_TWO, LaurentPoly, lp_sum
from .report import Report, Sweep
from .table_algebra import golden, trivial_table


class RuleError(RuntimeError):
    """Reduction left a diagram that is not H-admissible."""


class Arc(NamedTuple):
    a: int
    b: int
    d: int  # decoration count


@dataclass(frozen=True, order=True)
class HDiagram:
    m: int
    arcs: tuple[Arc, ...]

    @staticmethod
    def make(m: int, arcs: Iterable[tuple[int, int, int]]) -> HDiagram:
        norm = sorted(Arc(min(a, b), max(a, b), d) for a, b, d in arcs)
        return HDiagram(m, tuple(norm))

    def north_arcs(self) -> list[Arc]:
        return [x for x in self.arcs if x.b <= self.m]

    def south_arcs(self) -> list[Arc]:
        return [x for x in self.arcs if x.a > self.m]

    def propagating(self) -> list[Arc]:
        return [x for x in self.arcs if x.a <= self.m < x.b]

    @property
    def through(self) -> int:
        return len(self.propagating())

    def flip(self) -> HDiagram:
        m = self.m
        swap = lambda e: e + m if e <= m else e - m  # noqa: E731
        return HDiagram.make(m, ((swap(x.a), swap(x.b), x.d) for x in self.arcs))

    def __str__(self) -> str:
        return format_diagram(self)


HCombo = dict  # HDiagram -> LaurentPoly


# --- text codec ------------------------------------------------------------------------


def format_diagram(D: HDiagram) -> str:
    m = D.m
    north = ",".join(f"({x.a},{x.b})d{x.d}" for x in D.north_arcs())
    south = ",".join(f"({x.a - m},{x.b - m})d{x.d}" for x in D.south_arcs())
    prop = ",".join(f"({x.a},{x.b - m})d{x.d}" for x in D.propagating())
    return f"N:{{{north}}} S:{{{south}}} P:{{{prop}}}"


_ARC = re.compile(r"\((\d+),(\d+)\)d(\d+)")
_FACE = re.compile(r"^\s*N:\{(.*?)\}\s+S:\{(.*?)\}\s+P:\{(.*?)\}\s*$")


def parse_diagram(text: str, m: int | None = None) -> HDiagram:
    """Inverse of `format_diagram`; m defaults to the largest node mentioned."""
    hit = _FACE.match(text)
    if not hit:
        raise ValueError(f"cannot read diagram {text!r}")
    faces = []
    for part in hit.groups():
        arcs = _ARC.findall(part)
        if _ARC.sub("", part).replace(",", "").strip():
            raise ValueError(f"stray text in {part!r}")
        faces.append([tuple(map(int, a)) for a in arcs])
    nodes = [x for face in faces for a in face for x in a[:2]]
    m = m if m is not None else max(nodes, default=0)
    arcs = [(a, b, d) for a, b, d in faces[0]]
    arcs += [(a + m, b + m, d) for a, b, d in faces[1]]
    arcs += [(a, b + m, d) for a, b, d in faces[2]]
    D = HDiagram.make(m, arcs)
    if sorted(e for x in D.arcs for e in x[:2]) != list(range(1, 2 * m + 1)):
        raise ValueError(f"{text!r} is not a perfect matching on {m} strands")
    return D


# --- admissibility ---------------------------------------------------------------------


def _face_positions(D: HDiagram, north: bool) -> dict[int, Arc]:
    """Position on the face (1..m) -> arc touching it there."""
    m = D.m
    out = {}
    for x in D.arcs:
        for e in (x.a, x.b):
            if (e <= m) == north:
                out[e if north else e - m] = x
    return out


def west_exposed(D: HDiagram) -> set[Arc]:
    """Arcs touching the region adjacent to the west face."""
    m = D.m
    out = set()
    props = D.propagating()
    if props:
        out.add(min(props, key=lambda x: x.a))
    for north in (True, False):
        pos = _face_positions(D, north)
        # a cup starting at i is exposed when nodes 1..i-1 are closed up among themselves
        open_count = 0
        for i in range(1, m + 1):
            x = pos[i]
            lo, hi = (x.a, x.b) if north else (x.a - m, x.b - m)
            if x.a <= m < x.b:
                open_count = 10 ** 9  # a propagating edge blocks everything east of it
                continue
            if i == lo:
                if open_count == 0:
                    out.add(x)
                open_count += 1
            elif i == hi:
                open_count -= 1
    return out


def admissibility_failures(D: HDiagram) -> list[str]:
    m = D.m
    bad = []
    if any(x.d > 1 for x in D.arcs):
        bad.append("edge with two decorations")
    exposed = west_exposed(D)
    if any(x.d and x not in exposed for x in D.arcs):
        bad.append("decorated edge not exposed to the west")
    if D.through == m:
        if any(x.d for x in D.arcs):
            bad.append("decoration on an all-propagating diagram")
        return bad
    for name, arcs, shift in (("north", D.north_arcs(), 0), ("south", D.south_arcs(), m)):
        ok = any((x.a - shift, x.b - shift) == (1, 2) and x.d == 1 for x in arcs) or any(
            x.b - x.a == 1 and x.a - shift > 1 and x.d == 0 for x in arcs)
        if not ok:
            bad.append(f"{name} face has neither a decorated (1,2) nor a plain (i,i+1), i>1")
    return bad


def is_admissible(D: HDiagram) -> bool:
    return not admissibility_failures(D)


def _perfect_noncrossing(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points), 2):
        inside, outside = points[1:k], points[k + 1:]
        for left in _perfect_noncrossing(inside):
            for right in _perfect_noncrossing(outside):
                yield [(first, points[k])] + left + right


def all_admissible(m: int) -> list[HDiagram]:
    """Every H-admissible diagram on m strands, by brute force over planar matchings."""
    # boundary order: north 1..m, then south m..1 (so planar = non-crossing on a circle)
    circle = list(range(1, m + 1)) + [m + i for i in range(m, 0, -1)]
    out = set()
    for pairs in _perfect_noncrossing(circle):
        bare = HDiagram.make(m, ((a, b, 0) for a, b in pairs))
        exposed = sorted(west_exposed(bare))
        for bits in itertools.product((0, 1), repeat=len(exposed)):
            deco = {(x.a, x.b): d for x, d in zip(exposed, bits)}
            D = HDiagram.make(m, ((x.a, x.b, deco.get((x.a, x.b), 0)) for x in bare.arcs))
            if is_admissible(D):
                out.add(D)
    return sorted(out)


# --- composition -------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _blob_power(k: int) -> tuple[int, int]:
    """x^k = p + q x in Z[x]/(x^2 - x - 1)."""
    p, q = 1, 0
    for _ in range(k):
        p, q = q, p + q
    return p, q


@dataclass(frozen=True)
class RawDiagram:
    """A concatenation before reduction: arcs may carry several decorations, plus loop decorations."""

    m: int
    arcs: tuple[Arc, ...]
    loops: tuple[int, ...]


def concatenate(top: HDiagram, bottom: HDiagram) -> RawDiagram:
    m = top.m
    if bottom.m != m:
        raise ValueError("diagrams have different strand counts")
    # node keys: ("t", i) composite north, ("b", i) composite south, ("c", i) glued middle
    def key_top(e: int):
        return ("t", e) if e <= m else ("c", e - m)

    def key_bot(e: int):
        return ("c", e) if e <= m else ("b", e - m)

    edges = [(key_top(x.a), key_top(x.b), x.d) for x in top.arcs]
    edges += [(key_bot(x.a), key_bot(x.b), x.d) for x in bottom.arcs]
    incident: dict = {}
    for k, (p, q, _) in enumerate(edges):
        incident.setdefault(p, []).append(k)
        incident.setdefault(q, []).append(k)
    used = [False] * len(edges)

    def walk(start, first_edge: int) -> tuple[object, int]:
        node, k, decor = start, first_edge, 0
        while True:
            used[k] = True
            p, q, d = edges[k]
            decor += d
            node = q if p == node else p
            if node[0] != "c":
                return node, decor
            nxt = [j for j in incident[node] if j != k]
            if not nxt or used[nxt[0]]:
                return node, decor
            k = nxt[0]

    def number(node) -> int:
        return node[1] if node[0] == "t" else m + node[1]

    arcs = []
    for end in [("t", i) for i in range(1, m + 1)] + [("b", i) for i in range(1, m + 1)]:
        k = incident[end][0]
        if used[k]:
            continue
        other, decor = walk(end, k)
        arcs.append((number(end), number(other), decor))
    loops = []
    for k in range(len(edges)):
        if not used[k]:
            start = edges[k][0]
            _, decor = walk(start, k)
            loops.append(decor)
    norm = tuple(sorted(Arc(min(a, b), max(a, b), d) for a, b, d in arcs))
    return RawDiagram(m, norm, tuple(sorted(loops)))


def reduce_raw(raw: RawDiagram) -> HCombo:
    """Closed-form application of R1-R3 to a concatenation."""
    coeff = ONE
    for k in raw.loops:
        p, _ = _blob_power(k)
        if not p:
            return {}
        coeff = coeff * QUANTUM_TWO * p
    choices = []
    for x in raw.arcs:
        if x.d <= 1:
            choices.append([(x, 1)])
        else:
            p, q = _blob_power(x.d)
            choices.append([(c, w) for c, w in ((Arc(x.a, x.b, 0), p), (Arc(x.a, x.b, 1), q)) if w])
    out: HCombo = {}
    for pick in itertools.product(*choices):
        w = 1
        for _, c in pick:
            w *= c
        D = HDiagram(raw.m, tuple(sorted(x for x, _ in pick)))
        fails = admissibility_failures(D)
        if fails:
            raise RuleError(f"{format_diagram(D)}: {'; '.join(fails)}")
        out[D] = out[D] + coeff * w if D in out else coeff * w
    return {D: c for D, c in out.items() if c}


def reduce_stepwise(raw: RawDiagram, rng: random.Random) -> HCombo:
    """Apply single R1/R2/R3 steps in random order until nothing applies.

    Exists so that tests can compare against `reduce_raw`.
    """
    todo: list[tuple[LaurentPoly, tuple[Arc, ...], tuple[int, ...]]] = [(ONE, raw.arcs, raw.loops)]
    out: HCombo = {}
    while todo:
        c, arcs, loops = todo.pop()
        moves = [("loop", i) for i in range(len(loops))]
        moves += [("arc", i) for i, x in enumerate(arcs) if x.d >= 2]
        if not moves:
            D = HDiagram(raw.m, tuple(sorted(arcs)))
            out[D] = out[D] + c if D in out else c
            continue
        kind, i = rng.choice(moves)
        if kind == "arc":
            x = arcs[i]
            rest = arcs[:i] + arcs[i + 1:]
            todo.append((c, rest + (Arc(x.a, x.b, x.d - 1),), loops))
            todo.append((c, rest + (Arc(x.a, x.b, x.d - 2),), loops))
            continue
        k = loops[i]
        rest = loops[:i] + loops[i + 1:]
        if k == 0:
            todo.append((c * QUANTUM_TWO, arcs, rest))
        elif k == 1:
            continue
        else:
            todo.append((c, arcs, rest + (k - 1,)))
            todo.append((c, arcs, rest + (k - 2,)))
    return {D: p for D, p in out.items() if p}


def compose(top: HDiagram, bottom: HDiagram) -> HCombo:
    return reduce_raw(concatenate(top, bottom))


def h_multiply(x: HCombo, y: HCombo) -> HCombo:
    acc: dict[HDiagram, list[LaurentPoly]] = {}
    for (D, c), (E, d) in itertools.product(x.items(), y.items()):
        for F, w in compose(D, E).items():
            acc.setdefault(F, []).append(c * d * w)
    return {F: s for F, cs in acc.items() if (s := lp_sum(cs))}


def combo_add(*terms: tuple[int | LaurentPoly, HCombo]) -> HCombo:
    acc: dict[HDiagram, list[LaurentPoly]] = {}
    for c, x in terms:
        c = LaurentPoly.coerce(c)
        for D, p in x.items():
            acc.setdefault(D, []).append(c * p)
    return {D: s for D, cs in acc.items() if (s := lp_sum(cs))}


# --- generators and the presentation ----------------------------------------------------


def identity_diagram(m: int) -> HDiagram:
    return HDiagram.make(m, ((i, m + i, 0) for i in range(1, m + 1)))


def h_generators(n: int) -> list[HDiagram]:
    """b_1 .. b_n on n+1 strands; b_1 carries a decoration on its cup and its cap."""
    if n < 2:
        raise ValueError("TL(H_n) needs n >= 2")
    m = n + 1
    gens = []
    for i in range(1, n + 1):
        d = 1 if i == 1 else 0
        arcs = [(i, i + 1, d), (m + i, m + i + 1, d)]
        arcs += [(j, m + j, 0) for j in range(1, m + 1) if j not in (i, i + 1)]
        gens.append(HDiagram.make(m, arcs))
    return gens


def _word(gens: list[HDiagram], *idx: int) -> HCombo:
    acc: HCombo = {identity_diagram(gens[0].m): ONE}
    for i in idx:
        acc = h_multiply(acc, {gens[i - 1]: ONE})
    return acc


def presentation_check(n: int) -> Report:
    """All defining relations of TL(H_n), as identities between diagram combinations."""
    gens = h_generators(n)
    rep = Report(f"presentation TL(H{n})")
    with Sweep(rep, "presentation") as sw:
        for i in range(1, n + 1):
            sw.record(_word(gens, i, i) == combo_add((QUANTUM_TWO, _word(gens, i))), f"b{i}^2 != [2] b{i}")
        for i, j in itertools.permutations(range(1, n + 1), 2):
            if abs(i - j) > 1:
                sw.record(_word(gens, i, j) == _word(gens, j, i), f"b{i} b{j} != b{j} b{i}")
            elif {i, j} == {1, 2}:
                lhs = _word(gens, i, j, i, j, i)
                rhs = combo_add((3, _word(gens, i, j, i)), (-1, _word(gens, i)))
                sw.record(lhs == rhs, f"b{i}b{j}b{i}b{j}b{i} != 3 b{i}b{j}b{i} - b{i}")
            else:
                sw.record(_word(gens, i, j, i) == _word(gens, i), f"b{i} b{j} b{i} != b{i}")
    return rep


# --- half-diagrams and the table datum ----------------------------------------------------


class Half(NamedTuple):
    """North-face configuration: cups (i, j, decoration) and the free points."""

    cups: tuple[Arc, ...]
    free: tuple[int, ...]

    def __str__(self) -> str:
        body = ",".join(f"({x.a},{x.b})" + ("d" if x.d else "") for x in self.cups)
        return "{" + body + "}"


def north_half(D: HDiagram) -> Half:
    return Half(tuple(D.north_arcs()), tuple(sorted(x.a for x in D.propagating())))


def south_half(D: HDiagram) -> Half:
    return north_half(D.flip())


def glue(m: int, top: Half, bottom: Half, decorate: bool) -> HDiagram:
    arcs = list(top.cups) + [Arc(x.a + m, x.b + m, x.d) for x in bottom.cups]
    for k, (i, j) in enumerate(zip(top.free, bottom.free)):
        arcs.append(Arc(i, j + m, int(decorate and k == 0)))
    return HDiagram.make(m, arcs)


def half_diagrams(m: int, t: int) -> list[Half]:
    """North halves with t free points that occur in admissible diagrams with t propagating edges."""
    found = {north_half(D) for D in all_admissible(m) if D.through == t}
    return sorted(found, key=lambda h: (str(h), h.free))


class HInstance(TabularInstance):
    m: int
    to_diagram: dict[Label, HDiagram]
    to_label: dict[HDiagram, Label]


def _label_of(D: HDiagram) -> Label:
    t = D.through
    props = D.propagating()
    b = "x" if props and min(props).d else "1"
    return Label(t, north_half(D), b, south_half(D))


def build_table_datum_h(n: int) -> HInstance:
    m = n + 1
    lambdas = [t for t in range(m + 1) if (m - t) % 2 == 0]
    G_gold, G_triv = golden(), trivial_table()
    gamma = {t: (G_triv if t in (0, m) else G_gold) for t in lambdas}
    tableaux = {t: half_diagrams(m, t) for t in lambdas}
    datum = TableDatum(lambdas, chain_order(lambdas), gamma, tableaux, idempotents=[])

    to_diagram: dict[Label, HDiagram] = {}
    for t in lambdas:
        for X in datum.cell_labels(t):
            D = glue(m, X.S, X.T, X.b == "x")
            to_diagram[X] = D
    to_label = {D: X for X, D in to_diagram.items()}
    identity = to_label.get(identity_diagram(m))
    if identity is not None:
        datum.idempotents = [identity]

    def multiply(X: Label, Y: Label) -> Element:
        return Element({_label_of(D): c for D, c in compose(to_diagram[X], to_diagram[Y]).items()})

    def star(X: Label) -> Label:
        return Label(X.lam, X.T, X.b, X.S)

    def trace(X: Label) -> LaurentPoly:
        return cylinder_trace(to_diagram[X])

    gens = [(f"b{i}", Element.basis(_label_of(D))) for i, D in enumerate(h_generators(n), 1)]
    inst = HInstance(
        f"TL(H{n})", datum, multiply, star, trace,
        a_override={t: (m - t) // 2 for t in lambdas},
        format_label=lambda X: format_diagram(to_diagram[X]),
        encode=lambda X: to_diagram[X], decode=_label_of,
        native_basis=sorted(to_label), generators=gens,
    )
    inst.m = m
    inst.to_diagram = to_diagram
    inst.to_label = to_label
    return inst


def codec_report(inst: HInstance) -> Report:
    """Im(C) is exactly the set of admissible diagrams, and decoding inverts C."""
    rep = Report(f"codec: {inst.name}")
    image = set(inst.to_label)
    brute = set(all_admissible(inst.m))
    rep.add("codec-image", image == brute, len(brute),
            "" if image == brute else f"{len(image)} glued vs {len(brute)} admissible")
    with Sweep(rep, "codec-roundtrip") as sw:
        for X, D in inst.to_diagram.items():
            sw.record(_label_of(D) == X and parse_diagram(format_diagram(D), inst.m) == D,
                      f"{format_diagram(D)} does not round-trip")
    return rep


# --- the cylinder trace --------------------------------------------------------------------


class ClosedLoop(NamedTuple):
    decorations: int
    winding: int


def cylinder_loops(D: HDiagram) -> list[ClosedLoop]:
    """Close north i to south i on a cylinder and list the resulting loops.

    Winding counts signed passages through the glued face: +1 going
    from a south node into the matching north node, -1 the other way.
    """
    m = D.m
    partner = {}
    for x in D.arcs:
        partner[x.a] = (x.b, x.d)
        partner[x.b] = (x.a, x.d)
    seen: set[int] = set()
    loops = []
    for start in range(1, 2 * m + 1):
        if start in seen:
            continue
        node, decor, wind = start, 0, 0
        while True:
            seen.add(node)
            other, d = partner[node]
            seen.add(other)
            decor += d
            # cross the glued face at `other`
            if other > m:
                node, wind = other - m, wind + 1
            else:
                node, wind = other + m, wind - 1
            if node == start:
                break
        loops.append(ClosedLoop(decor, wind))
    return loops


def trace_terms(D: HDiagram) -> dict[tuple[int, bool], LaurentPoly]:
    """T(D): (number of essential loops, westmost decorated) -> coefficient."""
    loops = cylinder_loops(D)
    coeff = ONE
    essential = []
    for lp in loops:
        if lp.winding == 0:
            p, _ = _blob_power(lp.decorations)
            if not p:
                return {}
            coeff = coeff * QUANTUM_TWO * p
        else:
            essential.append(lp.decorations)
    decorated = [k for k in essential if k]
    if len(decorated) > 1:
        raise RuleError(f"{format_diagram(D)}: decorations on two essential loops")
    p, q = _blob_power(decorated[0]) if decorated else (1, 0)
    t = len(essential)
    return {key: coeff * w for key, w in (((t, False), p), ((t, True), q)) if w}


def cylinder_trace(D: HDiagram) -> LaurentPoly:
    """tau(D) = f(T(D)) with f = v^(t-(n+1)) on undecorated trace diagrams, 0 on decorated ones."""
    return lp_sum(c.shift(t - D.m) for (t, decorated), c in trace_terms(D).items() if not decorated)
