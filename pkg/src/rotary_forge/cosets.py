"""Todd-Coxeter coset enumeration (HLT scans with deduction lookahead)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceeded, IncompleteTable
from .presentation import Presentation, Word


def letter_index(x: int) -> int:
    """s_i -> 2(i-1), s_i^-1 -> 2(i-1)+1."""
    return 2 * (abs(x) - 1) + (0 if x > 0 else 1)


def _encode(w: Word) -> list[int]:
    return [letter_index(x) for x in w.letters]


@dataclass(frozen=True)
class CosetTable:
    """rows[c][a] is the coset c.a for action letter a (see letter_index)."""

    ngens: int
    rows: tuple[tuple[int, ...], ...]
    complete: bool = True

    @property
    def coset_count(self) -> int:
        return len(self.rows)

    def act(self, c: int, w: Word) -> int:
        for x in w.letters:
            c = self.rows[c][letter_index(x)]
        return c

    def to_json(self) -> str:
        return json.dumps({"cosets": self.coset_count, "action": [list(r) for r in self.rows]})

    @classmethod
    def from_json(cls, text: str) -> "CosetTable":
        d = json.loads(text)
        rows = tuple(tuple(r) for r in d["action"])
        ngens = len(rows[0]) // 2 if rows else 0
        return cls(ngens, rows)


class _Enumerator:
    max_stack = 4096

    def __init__(self, ngens: int, relators: Sequence[Word], max_cosets: int):
        self.L = 2 * ngens
        self.rels = [r for r in (_encode(w) for w in relators) if r]
        self.cap = max_cosets
        # 1-based cosets, 0 means undefined
        self.table: list[list[int]] = [[0] * self.L, [0] * self.L]
        self.p = [0, 1]
        self.live = 1
        self.stack: list[tuple[int, int]] = []
        self.overflow = False
        conj: list[set[tuple[int, ...]]] = [set() for _ in range(self.L)]
        for r in self.rels:
            for w in (r, [x ^ 1 for x in reversed(r)]):
                for k in range(len(w)):
                    c = tuple(w[k:] + w[:k])
                    conj[c[0]].add(c)
        self.conj = [sorted(s) for s in conj]

    def rep(self, k: int) -> int:
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:
            p[k], k = r, p[k]
        return r

    def define(self, a: int, x: int) -> None:
        if self.live >= self.cap:
            raise CapExceeded("coset enumeration", self.cap)
        n = len(self.table)
        row = [0] * self.L
        row[x ^ 1] = a
        self.table.append(row)
        self.table[a][x] = n
        self.p.append(n)
        self.live += 1
        self.push(a, x)

    def push(self, a: int, x: int) -> None:
        if len(self.stack) >= self.max_stack:
            self.overflow = True
            self.stack.clear()
        else:
            self.stack.append((a, x))

    def merge(self, k: int, l: int, q: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            if a > b:
                a, b = b, a
            self.p[b] = a
            q.append(b)
            self.live -= 1

    def coincidence(self, a: int, b: int) -> None:
        t = self.table
        q: list[int] = []
        self.merge(a, b, q)
        i = 0
        while i < len(q):
            g = q[i]
            i += 1
            row = t[g]
            for x in range(self.L):
                d = row[x]
                if d:
                    xi = x ^ 1
                    t[d][xi] = 0
                    m1, m2 = self.rep(g), self.rep(d)
                    if t[m1][x]:
                        self.merge(m2, t[m1][x], q)
                    elif t[m2][xi]:
                        self.merge(m1, t[m2][xi], q)
                    else:
                        t[m1][x] = m2
                        t[m2][xi] = m1
                        self.push(m1, x)

    def scan(self, a: int, w: Sequence[int], fill: bool) -> None:
        t = self.table
        f, i = a, 0
        b, j = a, len(w) - 1
        while True:
            while i <= j:
                nxt = t[f][w[i]]
                if not nxt:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = t[b][w[j] ^ 1]
                if not nxt:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                self.push(f, w[i])
                return
            if not fill:
                return
            self.define(f, w[i])

    def process_deductions(self) -> None:
        p = self.p
        while self.stack:
            a, x = self.stack.pop()
            if p[a] != a:
                continue
            for w in self.conj[x]:
                self.scan(a, w, False)
                if p[a] != a:
                    break
            b = self.table[a][x]
            if b and p[b] == b:
                for w in self.conj[x ^ 1]:
                    self.scan(b, w, False)
                    if p[b] != b:
                        break
        if self.overflow:
            self.overflow = False
            self.lookahead()

    def lookahead(self) -> None:
        p = self.p
        for a in range(1, len(self.table)):
            if p[a] != a:
                continue
            for w in self.rels:
                self.scan(a, w, False)
                if p[a] != a:
                    break
        self.stack.clear()

    def run(self, subgroup: Sequence[Word]) -> None:
        for h in subgroup:
            e = _encode(h)
            if e:
                self.scan(1, e, True)
                self.process_deductions()
        a = 1
        p = self.p
        while a < len(self.table):
            if p[a] == a:
                for w in self.rels:
                    self.scan(a, w, True)
                    self.process_deductions()
                    if p[a] != a:
                        break
            if p[a] == a:
                row = self.table[a]
                for x in range(self.L):
                    if not row[x]:
                        self.define(a, x)
                        self.process_deductions()
                        if p[a] != a:
                            break
            a += 1

    def standardize(self) -> tuple[tuple[int, ...], ...]:
        """Renumber live cosets breadth-first from the subgroup coset, 0-based."""
        t, L = self.table, self.L
        rep = self.rep
        order = [1]
        new = {1: 0}
        k = 0
        while k < len(order):
            c = order[k]
            k += 1
            for x in range(L):
                d = t[c][x]
                if not d:
                    raise IncompleteTable(f"coset {c} has no image under letter {x}")
                d = rep(d)
                if d not in new:
                    new[d] = len(order)
                    order.append(d)
        return tuple(tuple(new[rep(t[c][x])] for x in range(L)) for c in order)


def coset_enumerate(pres: Presentation, subgroup_gens: Sequence[Word] = (), max_cosets: int | None = None) -> CosetTable:
    """Enumerate right cosets of <subgroup_gens> in the group presented by `pres`.

    Raises CapExceeded if more than `max_cosets` live cosets are ever needed.
    """
    if max_cosets is None:
        max_cosets = default_max_cosets(pres)
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    e = _Enumerator(pres.ngens, pres.relators(), max_cosets)
    e.run(subgroup_gens)
    return CosetTable(pres.ngens, e.standardize())


def default_max_cosets(pres: Presentation) -> int:
    prod = 1
    for p in pres.orders:
        prod *= p
    return 8 * prod


def perm_images(table: CosetTable) -> list:
    """One permutation per generator, acting on cosets by right multiplication."""
    from .permgroup import Perm

    if not table.complete:
        raise IncompleteTable("table is not complete")
    return [Perm([row[2 * i] for row in table.rows]) for i in range(table.ngens)]
