"""Affine diagrams as periodic matchings of Z x {top, bottom}, composed on a finite patch.

Only the generators are defined here; products are formed by union-find
over `blocks` copies of the fundamental domain, with no use of the
library's residue bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Periodic:
    n: int
    mate: tuple  # ((row, i) for i in 1..n on top, then bottom) -> (row, absolute position)
    bands: int = 0

    def partner(self, row: str, p: int) -> tuple[str, int]:
        r = (p - 1) % self.n + 1
        idx = r - 1 if row == "t" else self.n + r - 1
        prow, q = self.mate[idx]
        return prow, q + (p - r)


def from_map(n: int, top: dict, bottom: dict, bands: int = 0) -> Periodic:
    return Periodic(n, tuple(top[i] for i in range(1, n + 1)) + tuple(bottom[i] for i in range(1, n + 1)), bands)


def u(n: int, power: int = 1) -> Periodic:
    return from_map(n, {i: ("b", i - power) for i in range(1, n + 1)}, {i: ("t", i + power) for i in range(1, n + 1)})


def e(n: int, i: int) -> Periodic:
    top, bottom = {}, {}
    for j in range(1, n + 1):
        top[j], bottom[j] = ("b", j), ("t", j)
    # arc joining i and i + 1 in both rows, read periodically
    j, k = i, i + 1
    rj, rk = (j - 1) % n + 1, (k - 1) % n + 1
    top[rj], top[rk] = ("t", k - (j - rj)), ("t", j - (k - rk))
    bottom[rj], bottom[rk] = ("b", k - (j - rj)), ("b", j - (k - rk))
    return from_map(n, top, bottom)


def identity(n: int) -> Periodic:
    return from_map(n, {i: ("b", i) for i in range(1, n + 1)}, {i: ("t", i) for i in range(1, n + 1)})


def stack(A: Periodic, B: Periodic, blocks: int = 12) -> tuple[int, Periodic]:
    n = A.n
    lo, hi = -blocks * n + 1, blocks * n
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    # layers: ("T", p) top of A, ("M", p) middle, ("B", p) bottom of B
    for p in range(lo, hi + 1):
        for D, up, down in ((A, "T", "M"), (B, "M", "B")):
            for row, layer in (("t", up), ("b", down)):
                prow, q = D.partner(row, p)
                if lo <= q <= hi:
                    union((layer, p), (up if prow == "t" else down, q))
    top, bottom = {}, {}
    groups: dict = {}
    for p in range(lo, hi + 1):
        for layer in "TMB":
            groups.setdefault(find((layer, p)), []).append((layer, p))
    loops, band_classes = 0, set()
    for members in groups.values():
        ends = [x for x in members if x[0] != "M"]
        mids = [x for x in members if x[0] == "M"]
        if ends:
            continue
        # a middle component away from the patch edge is either closed or a band
        degree_ok = all(lo + n <= p <= hi - n for _, p in mids)
        if degree_ok:
            # one representative per translation class
            if 1 <= min(p for _, p in mids) <= n:
                loops += 1
        elif any(1 <= p <= n for _, p in mids):
            band_classes.add(min(p for _, p in mids if 1 <= p <= n))
    for i in range(1, n + 1):
        for layer, store in (("T", top), ("B", bottom)):
            others = [x for x in groups[find((layer, i))] if x != (layer, i) and x[0] != "M"]
            (olayer, q), = others
            store[i] = ("t" if olayer == "T" else "b", q)
    return loops, from_map(n, top, bottom, A.bands + B.bands + len(band_classes))


def word(n: int, letters) -> tuple[int, Periodic]:
    total, D = 0, identity(n)
    for x in letters:
        g = u(n, 1) if x == "u" else u(n, -1) if x == "U" else e(n, x)
        m, D = stack(D, g)
        total += m
    return total, D
