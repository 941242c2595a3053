"""Permutations on {0..d-1} and groups they generate.

Products compose left to right: (p * q)(x) = q(p(x)), matching right actions on cosets.
Order and membership come from a Schreier-Sims stabilizer chain built on first use.
"""
from __future__ import annotations

import math
import random
import re
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded
from .presentation import Presentation, Word

DEFAULT_ELEMENT_CAP = 1 << 16


class Perm:
    __slots__ = ("a", "_key")

    def __init__(self, images):
        a = np.asarray(images, dtype=np.int32)
        if a.ndim != 1:
            raise ValueError("images must be one-dimensional")
        self.a = a
        self._key = None

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(np.arange(degree, dtype=np.int32))

    @classmethod
    def checked(cls, images) -> "Perm":
        p = cls(images)
        d = p.degree
        if d and (p.a.min() < 0 or p.a.max() >= d or len(np.unique(p.a)) != d):
            raise ValueError("images do not form a bijection")
        return p

    @property
    def degree(self) -> int:
        return len(self.a)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.a)

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.a.tobytes()
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, Perm) and self.key() == other.key()

    def __call__(self, x: int) -> int:
        return int(self.a[x])

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Perm(other.a[self.a])

    def inverse(self) -> "Perm":
        inv = np.empty_like(self.a)
        inv[self.a] = np.arange(len(self.a), dtype=np.int32)
        return Perm(inv)

    def __invert__(self):
        return self.inverse()

    def __pow__(self, e: int) -> "Perm":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = Perm.identity(self.degree)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conj(self, g: "Perm") -> "Perm":
        """g^-1 self g."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return bool(np.all(self.a == np.arange(len(self.a))))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = int(self.a[i])
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = int(self.a[j])
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        n = 1
        for c in self.cycles():
            n = math.lcm(n, len(c))
        return n

    def support(self) -> list[int]:
        return [int(i) for i in np.nonzero(self.a != np.arange(len(self.a)))[0]]

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Perm({self.cycle_string()}, degree={self.degree})"


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse cycle notation such as "(0 3 5)(1 2)"."""
    a = list(range(degree))
    seen = set()
    body = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s*,?\s*\d+)*)?\s*\))*", body.replace(" ", " ")):
        raise ValueError(f"bad cycle notation: {text!r}")
    for grp in re.findall(r"\(([^()]*)\)", body):
        pts = [int(x) for x in re.split(r"[\s,]+", grp.strip()) if x]
        for x in pts:
            if x >= degree or x in seen:
                raise ValueError(f"bad point {x} in {text!r}")
            seen.add(x)
        for i, x in enumerate(pts):
            a[x] = pts[(i + 1) % len(pts)]
    return Perm(a)


def evaluate(word: Word, images: Sequence[Perm]) -> Perm:
    if not images:
        raise ValueError("no images")
    result = Perm.identity(images[0].degree)
    inverses: dict[int, Perm] = {}
    for g, e in word.syllables():
        base = images[g - 1]
        if e < 0:
            if g not in inverses:
                inverses[g] = base.inverse()
            base = inverses[g]
        result = result * (base ** abs(e))
    return result


class _Level:
    __slots__ = ("point", "gens", "inv_reps", "orbit", "checked")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Perm] = []
        self.inv_reps: dict[int, np.ndarray] = {}
        self.orbit: list[int] = []
        self.checked: set[tuple[int, int]] = set()


class StabilizerChain:
    """Base, strong generators and inverse transversals of a permutation group."""

    def __init__(self, degree: int, gens: Sequence[Perm], base_prefix: Sequence[int] = (), known_order: int | None = None, seed: int = 1):
        self.degree = degree
        self.levels: list[_Level] = []
        self.prefix = list(base_prefix)
        gens = [g for g in gens if not g.is_identity()]
        if not gens:
            return
        if known_order is not None:
            self._random_build(gens, known_order, seed)
        else:
            self._deterministic_build(gens)

    # construction helpers
    def _new_level(self, h: Perm) -> _Level:
        return _Level(h.support()[0])

    def _extend_orbit(self, lv: _Level) -> None:
        if not lv.orbit:
            lv.orbit = [lv.point]
            lv.inv_reps[lv.point] = np.arange(self.degree, dtype=np.int32)
        invs = [g.inverse().a for g in lv.gens]
        reps = lv.inv_reps
        k = 0
        queue = list(lv.orbit)
        while k < len(queue):
            x = queue[k]
            k += 1
            ux = reps[x]
            for g, ginv in zip(lv.gens, invs):
                y = int(g.a[x])
                if y not in reps:
                    reps[y] = ux[ginv]
                    lv.orbit.append(y)
                    queue.append(y)

    def _add_gen(self, lv: _Level, g: Perm) -> None:
        lv.gens.append(g)
        self._extend_orbit(lv)

    def strip(self, g: Perm, start: int = 0) -> tuple[np.ndarray, int]:
        a = g.a
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            x = int(a[lv.point])
            u = lv.inv_reps.get(x)
            if u is None:
                return a, i
            a = u[a]
        return a, len(self.levels)

    def _insert(self, h: np.ndarray, j: int, lo: int) -> int:
        hp = Perm(h)
        if j == len(self.levels):
            self.levels.append(self._new_level(hp))
        for l in range(lo, j + 1):
            self._add_gen(self.levels[l], hp)
        return j

    def _seed_levels(self, gens: Sequence[Perm]) -> None:
        # prefix points come first so that the stabilizer below them is pointwise
        for b in self.prefix:
            self.levels.append(_Level(b))
        if not self.levels:
            self.levels.append(self._new_level(gens[0]))
        for g in gens:
            self._add_gen(self.levels[0], g)
        for lv in self.levels[1:]:
            self._extend_orbit(lv)

    def _deterministic_build(self, gens: Sequence[Perm]) -> None:
        self._seed_levels(gens)
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            restart = False
            for x in list(lv.orbit):
                ux_inv = lv.inv_reps[x]
                ux = np.empty_like(ux_inv)
                ux[ux_inv] = np.arange(self.degree, dtype=np.int32)
                for gi, g in enumerate(lv.gens):
                    if (x, gi) in lv.checked:
                        continue
                    y = int(g.a[x])
                    # Schreier generator u_x g u_y^-1
                    h = lv.inv_reps[y][g.a[ux]]
                    a, j = self.strip(Perm(h), i + 1)
                    lv.checked.add((x, gi))
                    if j < len(self.levels) or not _is_id(a):
                        self._insert(a, j, i + 1)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def _random_build(self, gens: Sequence[Perm], target: int, seed: int) -> None:
        rng = random.Random(seed)
        self._seed_levels(gens)
        pool = list(gens)
        while len(pool) < 10:
            pool.append(pool[rng.randrange(len(pool))])
        acc = Perm.identity(self.degree)
        stalls = 0
        while self.order() < target:
            i = rng.randrange(len(pool))
            j = rng.randrange(len(pool))
            if i == j:
                continue
            pool[i] = pool[i] * pool[j]
            acc = acc * pool[i]
            a, lvl = self.strip(acc)
            if lvl < len(self.levels) or not _is_id(a):
                self._insert(a, lvl, min(1, lvl))
                stalls = 0
            else:
                stalls += 1
                if stalls > 400:
                    break
        if self.order() != target:
            # fall back to the deterministic algorithm on the original generators
            self.levels = []
            self._deterministic_build(gens)

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.orbit)
        return n

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def contains(self, g: Perm) -> bool:
        a, j = self.strip(g)
        return j == len(self.levels) and _is_id(a)


def _is_id(a: np.ndarray) -> bool:
    return bool(np.all(a == np.arange(len(a))))


class PermGroup:
    def __init__(self, gens: Sequence[Perm], degree: int | None = None, known_order: int | None = None):
        gens = list(gens)
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("generators of unequal degree")
        self.degree = degree
        self.gens = gens
        self._known_order = known_order
        self._chain: StabilizerChain | None = None

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self.gens, known_order=self._known_order)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            raise ValueError("degree mismatch")
        return self.chain.contains(g)

    __contains__ = contains

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> frozenset:
        return subgroup_elements(self.gens, cap, degree=self.degree)

    def is_normal_subgroup(self, elems: Iterable[Perm]) -> bool:
        s = set(elems)
        return all(x.conj(g) in s for g in self.gens for x in s)

    def pointwise_stabilizer_chain(self, points: Sequence[int]) -> StabilizerChain:
        return StabilizerChain(self.degree, self.gens, base_prefix=points, known_order=self.order())


def group_order(G: PermGroup) -> int:
    return G.order()


def membership(g: Perm, G: PermGroup) -> bool:
    return G.contains(g)


def subgroup_elements(gens: Sequence[Perm], cap: int = DEFAULT_ELEMENT_CAP, degree: int | None = None) -> frozenset:
    """All elements of <gens> by closure; CapExceeded if more than `cap`."""
    gens = [g for g in gens if not g.is_identity()]
    if degree is None:
        if not gens:
            raise ValueError("degree required")
        degree = gens[0].degree
    e = Perm.identity(degree)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                if len(seen) >= cap:
                    raise CapExceeded("subgroup element closure", cap)
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def intersection(A: Iterable[Perm], B: PermGroup) -> frozenset:
    return frozenset(a for a in A if B.contains(a))


def normal_closure(G: PermGroup, S: Sequence[Perm], cap: int = DEFAULT_ELEMENT_CAP) -> frozenset:
    gens = [s for s in S if not s.is_identity()]
    if not gens:
        return frozenset({G.identity()})
    elems = set(subgroup_elements(gens, cap, G.degree))
    queue = deque(gens)
    while queue:
        n = queue.popleft()
        for g in G.gens:
            c = n.conj(g)
            if c not in elems:
                gens.append(c)
                queue.append(c)
                elems = set(subgroup_elements(gens, cap, G.degree))
    return frozenset(elems)


def cyclic_subgroup(c: Perm) -> frozenset:
    out = [Perm.identity(c.degree)]
    x = c
    while not x.is_identity():
        out.append(x)
        x = x * c
    return frozenset(out)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def cyclic_core(G: PermGroup, c: Perm) -> frozenset:
    """Largest subgroup of <c> normal in G."""
    k = c.order()
    for d in divisors(k):
        h = c ** d
        sub = cyclic_subgroup(h)
        if all(h.conj(g) in sub for g in G.gens):
            return sub
    return frozenset({Perm.identity(c.degree)})


def hom_extends(pres: Presentation, images: Sequence[Perm]) -> bool:
    """True iff every relator of `pres` evaluates to the identity on `images`."""
    if len(images) != pres.ngens:
        raise ValueError(f"expected {pres.ngens} images, got {len(images)}")
    return all(evaluate(w, images).is_identity() for w in pres.relators())


def direct_sum(g: Perm, h: Perm) -> Perm:
    return Perm(np.concatenate([g.a, h.a + g.degree]))


def direct_product(G: PermGroup, H: PermGroup, pairing: Sequence[tuple[Perm, Perm]]) -> PermGroup:
    """Subgroup of G x H generated by the paired permutations, on the disjoint union."""
    if not pairing:
        raise ValueError("pairing must be nonempty")
    return PermGroup([direct_sum(g, h) for g, h in pairing], degree=G.degree + H.degree)
