"""Face posets of orientable rotary polytopes built from their rotation groups, and axiom checks."""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import CapExceeded, NotEquivelar
from .permgroup import Perm
from .presentation import Word

DEFAULT_POSET_CAP = 1 << 14


@dataclass
class FacePoset:
    """Faces of rank -1..n numbered 0..count-1 per rank; `cover[i]` holds pairs (a, b) with a of rank i below b of rank i+1."""

    rank: int
    counts: dict[int, int]
    cover: dict[int, set] = field(repr=False)
    group_order: int | None = None
    order_consistent: bool = True
    _below: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_incidences(cls, rank: int, counts: dict[int, int], cover: dict[int, set], group_order: int | None = None):
        return cls(rank, dict(counts), {i: set(cover.get(i, ())) for i in range(-1, rank)}, group_order)

    @property
    def count_list(self) -> list[int]:
        return [self.counts[i] for i in range(-1, self.rank + 1)]

    def up(self, i: int) -> dict[int, set]:
        d = defaultdict(set)
        for a, b in self.cover[i]:
            d[a].add(b)
        return d

    def down(self, i: int) -> dict[int, set]:
        """For rank-(i+1) faces, the rank-i faces below them."""
        d = defaultdict(set)
        for a, b in self.cover[i]:
            d[b].add(a)
        return d

    def less(self, i: int, j: int) -> set:
        """Pairs (a, b), a of rank i and b of rank j > i, with a < b in the transitive closure."""
        key = (i, j)
        if key not in self._below:
            if j == i + 1:
                rel = set(self.cover[i])
            else:
                prev = self.less(i, j - 1)
                up = self.up(j - 1)
                rel = {(a, c) for a, b in prev for c in up.get(b, ())}
            self._below[key] = rel
        return self._below[key]

    def above(self, i: int, j: int) -> dict[int, set]:
        """For rank-i faces, the rank-j faces above them (j > i)."""
        key = ("up", i, j)
        if key not in self._below:
            d = defaultdict(set)
            for a, b in self.less(i, j):
                d[a].add(b)
            self._below[key] = d
        return self._below[key]

    def beneath(self, i: int, j: int) -> dict[int, set]:
        """For rank-j faces, the rank-i faces below them (i < j)."""
        key = ("down", i, j)
        if key not in self._below:
            d = defaultdict(set)
            for a, b in self.less(i, j):
                d[b].add(a)
            self._below[key] = d
        return self._below[key]

    def to_json(self) -> str:
        inc = [[i, a, b] for i in range(-1, self.rank) for a, b in sorted(self.cover[i])]
        return json.dumps({"ranks": self.rank, "counts": self.count_list, "incidence": inc})

    def hasse_edges(self) -> str:
        """Hasse diagram, one edge "i:a j:b" per line."""
        lines = [f"{i}:{a} {i + 1}:{b}" for i in range(-1, self.rank) for a, b in sorted(self.cover[i])]
        return "\n".join(lines) + "\n"


def _enumerate(sigmas, cap):
    """Elements by breadth-first search and the table of right multiplication by each generator."""
    d = sigmas[0].degree
    e = Perm.identity(d)
    elems = [e]
    index = {e.key(): 0}
    cols: list[list[int]] = [[] for _ in sigmas]
    k = 0
    while k < len(elems):
        g = elems[k]
        k += 1
        for i, s in enumerate(sigmas):
            h = g * s
            key = h.key()
            j = index.get(key)
            if j is None:
                if len(elems) >= cap:
                    raise CapExceeded("poset element enumeration", cap)
                j = len(elems)
                index[key] = j
                elems.append(h)
            cols[i].append(j)
    return elems, np.array(cols, dtype=np.int64)


def _right_action(mult: np.ndarray, inv: np.ndarray, w: Word) -> np.ndarray:
    x = np.arange(mult.shape[1])
    for l in w.letters:
        x = mult[l - 1][x] if l > 0 else inv[-l - 1][x]
    return x


def _components(maps: list[np.ndarray], n: int) -> np.ndarray:
    """Orbit labels (0..k-1, in order of first element) under the given permutations of range(n)."""
    label = np.arange(n)
    if maps:
        changed = True
        while changed:
            changed = False
            for m in maps:
                a = np.minimum(label, label[m])
                inv = np.empty_like(m)
                inv[m] = np.arange(n)
                a = np.minimum(a, a[inv])
                # pointer jumping keeps the number of rounds small
                a = a[a]
                if not np.array_equal(a, label):
                    label = a
                    changed = True
    _, first, inverse = np.unique(label, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first)] = np.arange(len(first))
    return rank[inverse]


def stabilizer_words(n_gens: int, i: int) -> list[Word]:
    """Generators of the rank-i face stabilizer in <s1..s(n-1)>."""
    rank = n_gens + 1
    if i == 0:
        return [Word((j,)) for j in range(2, n_gens + 1)]
    if i == rank - 1:
        return [Word((j,)) for j in range(1, n_gens)]
    ws = [Word((j,)) for j in range(1, i)]
    ws.append(Word((i, i + 1)))
    ws += [Word((j,)) for j in range(i + 2, n_gens + 1)]
    return ws


def build_poset(R, cap: int = DEFAULT_POSET_CAP) -> FacePoset:
    """Faces of rank i are the cosets g S_i of the rank-i stabilizers; incidence is nonempty intersection."""
    sig = list(R.sigmas)
    n = R.rank
    elems, mult = _enumerate(sig, cap)
    N = len(elems)
    inv = np.empty_like(mult)
    for i in range(mult.shape[0]):
        inv[i][mult[i]] = np.arange(N)
    labels: dict[int, np.ndarray] = {}
    if n == 2:
        labels[0] = np.arange(N)
        labels[1] = np.arange(N)
    else:
        for i in range(n):
            maps = [_right_action(mult, inv, w) for w in stabilizer_words(n - 1, i)]
            labels[i] = _components(maps, N)
    counts = {-1: 1, n: 1}
    for i in range(n):
        counts[i] = int(labels[i].max()) + 1
    cover: dict[int, set] = {-1: {(0, b) for b in range(counts[0])}, n - 1: {(a, 0) for a in range(counts[n - 1])}}
    if n == 2:
        # the k-gon: vertex g lies on edges g and g s1^-1
        cover[0] = {(g, g) for g in range(N)} | {(int(mult[0][g]), g) for g in range(N)}
        return FacePoset(n, counts, cover, N)
    for i in range(n - 1):
        cover[i] = set(zip(labels[i].tolist(), labels[i + 1].tolist()))
    P = FacePoset(n, counts, cover, N)
    consistent = True
    for i, j in combinations(range(n), 2):
        if j > i + 1:
            meet = set(zip(labels[i].tolist(), labels[j].tolist()))
            if meet != P.less(i, j):
                consistent = False
    P.order_consistent = consistent
    return P


@dataclass(frozen=True)
class PolytopeReport:
    diamond: bool
    strongly_connected: bool
    flag_count: int
    flag_count_ok: bool | None
    adjacency_ok: bool
    order_consistent: bool

    @property
    def ok(self) -> bool:
        return (self.diamond and self.strongly_connected and self.adjacency_ok and self.order_consistent
                and self.flag_count_ok is not False)

    def to_json(self) -> dict:
        return {"diamond": self.diamond, "strongly_connected": self.strongly_connected, "flags": self.flag_count,
                "flag_count_ok": self.flag_count_ok, "adjacency_ok": self.adjacency_ok,
                "order_consistent": self.order_consistent, "ok": self.ok}


def flags(P: FacePoset) -> list[tuple[int, ...]]:
    """Maximal chains, as the faces of ranks 0..n-1."""
    out: list[tuple[int, ...]] = [()]
    ups = {i: P.up(i) for i in range(P.rank - 1)}
    out = [(v,) for v in range(P.counts[0])]
    for i in range(P.rank - 1):
        out = [f + (b,) for f in out for b in sorted(ups[i].get(f[-1], ()))]
    return out


def _between(P: FacePoset, i: int, a: int, b: int, ups, downs) -> set:
    """Rank-i faces covering the rank-(i-1) face a and covered by the rank-(i+1) face b."""
    lo = ups[i - 1].get(a, set()) if i - 1 >= 0 else set(range(P.counts[i]))
    hi = downs[i].get(b, set()) if i + 1 <= P.rank - 1 else set(range(P.counts[i]))
    return lo & hi


def _interval_connected(P: FacePoset, lo_rank: int, lo: int, hi_rank: int, hi: int) -> bool:
    inside = {r: _faces_in(P, lo_rank, lo, r, hi_rank, hi) for r in range(lo_rank + 1, hi_rank)}
    nodes = [(r, f) for r, fs in inside.items() for f in fs]
    if not nodes:
        return True
    ups = {r: P.up(r) for r in range(lo_rank + 1, hi_rank - 1)}
    adj = defaultdict(list)
    for r in range(lo_rank + 1, hi_rank - 1):
        for a in inside[r]:
            for b in ups[r].get(a, ()):
                if b in inside[r + 1]:
                    adj[(r, a)].append((r + 1, b))
                    adj[(r + 1, b)].append((r, a))
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def validate_polytope(P: FacePoset) -> PolytopeReport:
    n = P.rank
    ups = {i: P.up(i) for i in range(-1, n)}
    downs = {i: P.down(i - 1) for i in range(0, n + 1)}
    # diamond: every interval of rank gap 2 holds exactly two faces
    diamond = all(len(_faces_in(P, i - 1, a, i, i + 1, b)) == 2
                  for i in range(n) for a, b in _pairs(P, i - 1, i + 1))
    # strong connectivity over every interval of rank gap at least 3, the whole poset included
    strong = all(_interval_connected(P, lo, a, hi, b)
                 for lo in range(-1, n + 1) for hi in range(lo + 3, n + 1) for a, b in _pairs(P, lo, hi))
    fl = flags(P)
    flag_ok = None if P.group_order is None else len(fl) == 2 * P.group_order
    # each flag has exactly one i-adjacent flag
    flagset = set(fl)
    adjacency = True
    for f in fl:
        for i in range(n):
            a = f[i - 1] if i > 0 else 0
            b = f[i + 1] if i < n - 1 else 0
            if i == 0:
                cands = {x for x in range(P.counts[0]) if b in ups[0].get(x, ())} if n > 1 else set(range(P.counts[0]))
            elif i == n - 1:
                cands = set(ups[i - 1].get(a, ()))
            else:
                cands = ups[i - 1].get(a, set()) & downs[i + 1].get(b, set())
            others = [g for g in cands if g != f[i] and (f[:i] + (g,) + f[i + 1:]) in flagset]
            if len(others) != 1:
                adjacency = False
                break
        if not adjacency:
            break
    return PolytopeReport(diamond, strong, len(fl), flag_ok, adjacency, P.order_consistent)


@dataclass(frozen=True)
class SectionReport:
    schlafli: tuple[int, ...]
    flat: dict = field(hash=False)
    rank3_flat: bool

    def to_json(self) -> dict:
        return {"type": list(self.schlafli), "flat": {f"{k},{m}": v for (k, m), v in self.flat.items()},
                "rank3_sections_flat": self.rank3_flat}


def _faces_in(P: FacePoset, lo_rank: int, lo: int, r: int, hi_rank: int, hi: int) -> set:
    """Rank-r faces strictly between face lo (rank lo_rank) and face hi (rank hi_rank)."""
    s = set(range(P.counts[r])) if lo_rank < 0 else set(P.above(lo_rank, r).get(lo, ()))
    if hi_rank <= P.rank - 1:
        s &= P.beneath(r, hi_rank).get(hi, set())
    return s


def _pairs(P: FacePoset, lo_rank: int, hi_rank: int) -> list[tuple[int, int]]:
    if lo_rank == -1 and hi_rank == P.rank:
        return [(0, 0)]
    if lo_rank == -1:
        return [(0, b) for b in range(P.counts[hi_rank])]
    if hi_rank == P.rank:
        return [(a, 0) for a in range(P.counts[lo_rank])]
    return sorted(P.less(lo_rank, hi_rank))


def section_type_report(P: FacePoset) -> SectionReport:
    n = P.rank
    sizes = []
    for i in range(1, n):
        seen = set()
        for a, b in _pairs(P, i - 2, i + 1):
            seen.add(len(_faces_in(P, i - 2, a, i - 1, i + 1, b)))
        if len(seen) != 1:
            raise NotEquivelar(f"sections of rank 2 at position {i} have sizes {sorted(seen)}")
        sizes.append(seen.pop())
    flat = {}
    for k in range(n):
        for m in range(k + 1, n):
            flat[(k, m)] = len(P.less(k, m)) == P.counts[k] * P.counts[m]
    rank3 = True
    for lo in range(-1, n - 3):
        hi = lo + 4
        for a, b in _pairs(P, lo, hi):
            verts = _faces_in(P, lo, a, lo + 1, hi, b)
            facets = _faces_in(P, lo, a, lo + 3, hi, b)
            rel = P.less(lo + 1, lo + 3)
            if any((v, f) not in rel for v in verts for f in facets):
                rank3 = False
                break
        if not rank3:
            break
    return SectionReport(tuple(sizes), flat, rank3)
