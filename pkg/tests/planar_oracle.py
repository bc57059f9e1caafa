"""Planar Temperley-Lieb diagrams, as an independent route to TL(A_{n-1}) structure constants.

A diagram on n strands is a perfect matching of the points ("t", i) and
("b", i).  Stacking glues the bottom of the upper diagram to the top of
the lower one; each closed component in the gluing line is a loop.
"""

from __future__ import annotations

Point = tuple[str, int]


def generator(n: int, i: int) -> frozenset:
    pairs = {frozenset({("t", i), ("t", i + 1)}), frozenset({("b", i), ("b", i + 1)})}
    pairs |= {frozenset({("t", j), ("b", j)}) for j in range(1, n + 1) if j not in (i, i + 1)}
    return frozenset(pairs)


def identity(n: int) -> frozenset:
    return frozenset(frozenset({("t", j), ("b", j)}) for j in range(1, n + 1))


def stack(n: int, upper: frozenset, lower: frozenset) -> tuple[int, frozenset]:
    """upper * lower as (loops, diagram), using a graph walk on 3n points."""
    adj: dict = {}
    for pair in upper:
        a, b = (("u", p) for p in pair)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    for pair in lower:
        a, b = (("l", p) for p in pair)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    # identify the upper bottom row with the lower top row
    for j in range(1, n + 1):
        a, b = ("u", ("b", j)), ("l", ("t", j))
        adj[a].append(b)
        adj[b].append(a)

    def outer(node) -> bool:
        side, (row, _) = node
        return (side, row) in (("u", "t"), ("l", "b"))

    seen, pairs, loops = set(), set(), 0
    for start in adj:
        if start in seen:
            continue
        comp, stack_ = [], [start]
        seen.add(start)
        while stack_:
            x = stack_.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack_.append(y)
        ends = [x for x in comp if outer(x)]
        if not ends:
            loops += 1
        else:
            (s1, (r1, i1)), (s2, (r2, i2)) = ends
            pairs.add(frozenset({(r1, i1), (r2, i2)}))
    return loops, frozenset(pairs)


def word_diagram(n: int, word) -> tuple[int, frozenset]:
    loops, d = 0, identity(n)
    for i in word:
        m, d = stack(n, d, generator(n, i))
        loops += m
    return loops, d
