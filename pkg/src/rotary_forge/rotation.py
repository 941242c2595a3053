"""Rotation groups with distinguished generators s1..s(n-1).

Tightness, the intersection condition, chirality, enantiomorphs, duals, mixes,
chirality groups, quotients and atomicity.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .cosets import coset_enumerate, default_max_cosets, perm_images
from .errors import (CapExceeded, GeneratorCollapsed, NotChiral, NotFaithful,
                     NotMember, NotNormal, NotTight)
from .permgroup import (DEFAULT_ELEMENT_CAP, Perm, PermGroup, cyclic_subgroup, direct_sum,
                        divisors, evaluate, hom_extends, normal_closure, subgroup_elements)
from .presentation import Presentation, Word


@dataclass(eq=False)
class RotationGroup:
    rank: int
    sigmas: tuple[Perm, ...]
    claimed_type: tuple[int, ...]
    presentation: Presentation | None = None
    presentation_faithful: bool = False
    known_order: int | None = None
    element_cap: int = DEFAULT_ELEMENT_CAP
    label: str = ""
    # subgroups and tightness reports, computed once per instance
    _memo: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.sigmas = tuple(self.sigmas)
        self.claimed_type = tuple(self.claimed_type)
        if len(self.sigmas) != self.rank - 1:
            raise ValueError(f"rank {self.rank} needs {self.rank - 1} generators")

    @property
    def degree(self) -> int:
        return self.sigmas[0].degree

    @cached_property
    def group(self) -> PermGroup:
        return PermGroup(list(self.sigmas), degree=self.degree, known_order=self.known_order)

    def order(self) -> int:
        if self.known_order is not None:
            return self.known_order
        return self.group.order()

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def word(self, w: Word) -> Perm:
        return evaluate(w, self.sigmas)

    def subgroup(self, indices: Sequence[int]) -> PermGroup:
        """<s_i : i in indices> with 1-based indices."""
        key = ("subgroup", tuple(indices))
        if key not in self._memo:
            self._memo[key] = PermGroup([self.sigmas[i - 1] for i in key[1]], degree=self.degree)
        return self._memo[key]

    def subgroup_elements(self, indices: Sequence[int]) -> frozenset:
        return subgroup_elements([self.sigmas[i - 1] for i in indices], self.element_cap, self.degree)

    @property
    def intended_type(self) -> tuple[int, ...]:
        return self.presentation.orders if self.presentation is not None else self.claimed_type

    def generator_orders(self) -> tuple[int, ...]:
        return tuple(s.order() for s in self.sigmas)

    def orders_ok(self) -> bool:
        """s_i has its intended order and every s_i...s_j (i<j) has order exactly 2."""
        if self.generator_orders() != self.intended_type:
            return False
        n = len(self.sigmas)
        for i in range(n):
            prod = self.sigmas[i]
            for j in range(i + 1, n):
                prod = prod * self.sigmas[j]
                if prod.order() != 2:
                    return False
        return True


@dataclass(frozen=True)
class TightnessReport:
    order: int
    expected: int
    tight: bool
    intersection_ok: bool
    orders_ok: bool


@dataclass(frozen=True)
class ChiralityVerdict:
    polytopal: bool
    regular: bool
    chiral: bool
    chirality_group: frozenset = field(repr=False)
    description: str = ""

    @property
    def chirality_group_order(self) -> int:
        return len(self.chirality_group)


def _prod(xs) -> int:
    return math.prod(xs)


def make_rotation_group(pres: Presentation, max_cosets: int | None = None, element_cap: int = DEFAULT_ELEMENT_CAP,
                        label: str = "", allow_collapse: bool = True) -> RotationGroup:
    """Faithful permutation model of the group presented by `pres`.

    Cosets of a cyclic <s_i> are tried first: if s_i acts with its full order p_i then the
    action is faithful with order index * p_i. Otherwise the trivial subgroup is enumerated.
    Raises CapExceeded when the enumeration needs more than `max_cosets` cosets.
    """
    if max_cosets is None:
        max_cosets = default_max_cosets(pres)
    n = pres.ngens
    candidates = [1, n] + [i for i in range(2, n)]
    seen = set()
    for i in candidates:
        if i in seen:
            continue
        seen.add(i)
        try:
            table = coset_enumerate(pres, [Word((i,))], max_cosets)
        except CapExceeded:
            continue
        sig = perm_images(table)
        if sig[i - 1].order() == pres.orders[i - 1]:
            order = table.coset_count * pres.orders[i - 1]
            return _finish(pres, sig, order, element_cap, label, allow_collapse)
    table = coset_enumerate(pres, [], max_cosets)
    sig = perm_images(table)
    return _finish(pres, sig, table.coset_count, element_cap, label, allow_collapse)


def _finish(pres, sig, order, element_cap, label, allow_collapse) -> RotationGroup:
    measured = tuple(s.order() for s in sig)
    if not allow_collapse and 1 in measured:
        raise GeneratorCollapsed(f"generator s{measured.index(1) + 1} is trivial")
    return RotationGroup(pres.rank, tuple(sig), measured, pres, True, order, element_cap, label)


def from_permutations(sigmas: Sequence[Perm], presentation: Presentation | None = None, label: str = "",
                      element_cap: int = DEFAULT_ELEMENT_CAP) -> RotationGroup:
    sigmas = tuple(sigmas)
    return RotationGroup(len(sigmas) + 1, sigmas, tuple(s.order() for s in sigmas), presentation, False,
                         None, element_cap, label)


def check_intersection_condition(R: RotationGroup) -> bool:
    """<s1..si> meet <sj..s(i+1)> equals <sj..si> for 2 <= j <= i+1 <= n-1."""
    if any(s.is_identity() for s in R.sigmas):
        return False
    n = R.rank
    for i in range(1, n - 1):
        for j in range(2, i + 2):
            left = list(range(1, i + 1))
            right = list(range(j, i + 2))
            middle = list(range(j, i + 1))
            A, B = R.subgroup(left), R.subgroup(right)
            if A.order() > B.order():
                A, B = B, A
                left, right = right, left
            elems = R.subgroup_elements(left)
            inter = {a for a in elems if B.contains(a)}
            expect = R.subgroup_elements(middle) if middle else {R.identity()}
            if inter != set(expect):
                return False
    return True


def is_tight(R: RotationGroup) -> TightnessReport:
    if "tight" not in R._memo:
        order = R.order()
        expected = _prod(R.intended_type)
        R._memo["tight"] = TightnessReport(order, expected, order == expected, check_intersection_condition(R),
                                           R.orders_ok())
    return R._memo["tight"]


def normal_form(R: RotationGroup, g: Perm) -> tuple[int, ...]:
    """Exponents (a1..a(n-1)) with g = s1^a1 ... s(n-1)^a(n-1), 0 <= ai < pi."""
    rep = is_tight(R)
    if not (rep.tight and rep.intersection_ok and rep.orders_ok):
        raise NotTight("normal forms need a tight group satisfying the intersection condition")
    if not R.group.contains(g):
        raise NotMember("element is not in the group")
    n = R.rank - 1
    exps = []
    h = g
    for i in range(1, n + 1):
        rest = R.subgroup(range(i + 1, n + 1)) if i < n else None
        s = R.sigmas[i - 1]
        sinv = s.inverse()
        x = h
        for a in range(R.intended_type[i - 1]):
            ok = x.is_identity() if rest is None else rest.contains(x)
            if ok:
                exps.append(a)
                h = x
                break
            x = sinv * x
        else:
            raise NotMember("no normal form found")
    return tuple(exps)


def normal_form_word(exps: Sequence[int]) -> Word:
    return Word.from_terms((i + 1, a) for i, a in enumerate(exps))


def _substitute_presentation(pres: Presentation | None, images: Sequence[Word], orders: Sequence[int]) -> Presentation | None:
    """Presentation in new generators t, given old generators as words in t."""
    if pres is None:
        return None
    rels = [w.substitute(images) for w in pres.relators()]
    return Presentation(pres.rank, tuple(orders), tuple(rels))


def enantiomorph_generators(sigmas: Sequence[Perm]) -> tuple[Perm, ...]:
    s1, s2 = sigmas[0], sigmas[1]
    return (s1.inverse(), s1 * s1 * s2) + tuple(sigmas[2:])


def enantiomorph(R: RotationGroup) -> RotationGroup:
    if R.rank < 3:
        raise ValueError("enantiomorph needs rank at least 3")
    sig = enantiomorph_generators(R.sigmas)
    # old generators in terms of the new ones: s1 = t1^-1, s2 = t1^2 t2
    n = R.rank - 1
    images = [Word((-1,)), Word((1, 1, 2))] + [Word((i,)) for i in range(3, n + 1)]
    pres = _substitute_presentation(R.presentation, images, R.intended_type)
    return RotationGroup(R.rank, sig, R.claimed_type, pres, R.presentation_faithful, R.known_order, R.element_cap,
                         f"enantiomorph({R.label})")


def dual(R: RotationGroup) -> RotationGroup:
    """Generator i of the dual is s_(n-i)^-1; the type reverses."""
    n = R.rank - 1
    sig = tuple(R.sigmas[n - i].inverse() for i in range(1, n + 1))
    images = [Word((-(n + 1 - j),)) for j in range(1, n + 1)]
    pres = _substitute_presentation(R.presentation, images, tuple(reversed(R.intended_type)))
    return RotationGroup(R.rank, sig, tuple(reversed(R.claimed_type)), pres, R.presentation_faithful,
                         R.known_order, R.element_cap, f"dual({R.label})")


def mix(R1: RotationGroup, R2: RotationGroup) -> RotationGroup:
    if R1.rank != R2.rank:
        raise ValueError("rank mismatch")
    sig = tuple(direct_sum(a, b) for a, b in zip(R1.sigmas, R2.sigmas))
    return RotationGroup(R1.rank, sig, tuple(s.order() for s in sig), None, False, None,
                         max(R1.element_cap, R2.element_cap), f"mix({R1.label},{R2.label})")


def same_generators(R1: RotationGroup, R2: RotationGroup) -> bool:
    """Generator-preserving isomorphism: the map s_i -> s_i' extends both ways."""
    if R1.rank != R2.rank:
        return False
    if R1.presentation_faithful and R2.presentation_faithful:
        return hom_extends(R1.presentation, R2.sigmas) and hom_extends(R2.presentation, R1.sigmas)
    return mix(R1, R2).group.order() == R1.order() == R2.order()


def describe_cyclic(R: RotationGroup, elems: frozenset) -> str:
    """Name a subgroup as <s_i^k> when it is one, else by its order."""
    if len(elems) == 1:
        return "1"
    for i, s in enumerate(R.sigmas, start=1):
        for d in divisors(s.order()):
            if s.order() // d == len(elems) and cyclic_subgroup(s ** d) == elems:
                return f"<s{i}^{d}>" if d > 1 else f"<s{i}>"
    return f"order {len(elems)}"


def _mix_with_enantiomorph(R: RotationGroup) -> PermGroup:
    E = enantiomorph_generators(R.sigmas)
    return PermGroup([direct_sum(a, b) for a, b in zip(R.sigmas, E)], degree=2 * R.degree)


def _second(g: Perm, d: int) -> Perm:
    return Perm(g.a[d:] - d)


def chirality_group(R: RotationGroup, method: str = "mix") -> frozenset:
    """Kernel of the projection of mix(R, enantiomorph R) onto R, as elements of R.

    "mix": {g : (id, g) in mix}, trying cyclic candidates <s_i^k> first, then enumerating
    the mix when it is small and otherwise sifting through a chain that fixes a base of R.
    "relators": normal closure in R of the relators evaluated at the enantiomorph generators
    (valid because the presentation is faithful).
    """
    d = R.degree
    if method == "relators":
        if not R.presentation_faithful:
            raise NotFaithful("relator method needs a faithful presentation")
        E = enantiomorph_generators(R.sigmas)
        imgs = [evaluate(w, E) for w in R.presentation.relators()]
        return normal_closure(R.group, imgs, R.element_cap)
    if method != "mix":
        raise ValueError(f"unknown method {method}")
    M = _mix_with_enantiomorph(R)
    size = M.order() // R.order()
    ident = R.identity()
    if size == 1:
        return frozenset({ident})
    for s in R.sigmas:
        o = s.order()
        if o % size == 0:
            c = s ** (o // size)
            if M.contains(direct_sum(ident, c)):
                return cyclic_subgroup(c)
    if M.order() <= R.element_cap:
        ids = ident.key()
        return frozenset(_second(g, d) for g in M.elements(R.element_cap) if g.a[:d].tobytes() == ids)
    chain = M.pointwise_stabilizer_chain(R.group.chain.base)
    gens = [g for lv in chain.levels[len(R.group.chain.base):] for g in lv.gens]
    return subgroup_elements([_second(g, d) for g in gens], R.element_cap, d)


def chirality_verdict(R: RotationGroup) -> ChiralityVerdict:
    if not R.presentation_faithful:
        raise NotFaithful("chirality is decided on a faithful presentation")
    polytopal = R.orders_ok() and check_intersection_condition(R)
    regular = hom_extends(R.presentation, enantiomorph_generators(R.sigmas))
    X = chirality_group(R, "mix")
    if X != chirality_group(R, "relators"):
        raise AssertionError("chirality group methods disagree")
    if (len(X) == 1) != regular:
        raise AssertionError("chirality group disagrees with the regularity test")
    return ChiralityVerdict(polytopal, regular, polytopal and not regular, X, describe_cyclic(R, X))


def _sub_presentation(pres: Presentation, indices: Sequence[int]) -> Presentation:
    """Relators of `pres` that only involve the given consecutive generators, renumbered from 1."""
    lo = indices[0]
    keep = set(indices)
    rels = [w.shift(1 - lo) for w in pres.extra_relators if {abs(x) for x in w.letters} <= keep]
    return Presentation(len(indices) + 1, tuple(pres.orders[i - 1] for i in indices), tuple(rels))


def section_group(R: RotationGroup, indices: Sequence[int], label: str) -> RotationGroup:
    sig = tuple(R.sigmas[i - 1] for i in indices)
    sub = R.subgroup(indices)
    order = sub.order()
    pres = None
    faithful = False
    if R.presentation is not None:
        pres = _sub_presentation(R.presentation, indices)
        try:
            faithful = make_rotation_group(pres).order() == order
        except CapExceeded:
            faithful = False
    return RotationGroup(len(indices) + 1, sig, tuple(s.order() for s in sig), pres, faithful, order,
                         R.element_cap, label)


def facet_group(R: RotationGroup) -> RotationGroup:
    return section_group(R, list(range(1, R.rank - 1)), f"facet({R.label})")


def vertex_figure_group(R: RotationGroup) -> RotationGroup:
    return section_group(R, list(range(2, R.rank)), f"vertex_figure({R.label})")


def coset_representatives(R: RotationGroup, H: PermGroup) -> list[Perm]:
    """Representatives t of the right cosets H t, found by breadth-first search."""
    reps = [R.identity()]
    invs = [R.identity()]
    k = 0
    while k < len(reps):
        t = reps[k]
        k += 1
        for s in R.sigmas:
            u = t * s
            if not any(H.contains(u * v) for v in invs):
                reps.append(u)
                invs.append(u.inverse())
    return reps


def core(R: RotationGroup, indices: Sequence[int]) -> frozenset:
    """Kernel of the action of R on the right cosets of <s_i : i in indices>."""
    H = R.subgroup(indices)
    reps = coset_representatives(R, H)
    pairs = [(t, t.inverse()) for t in reps]
    return frozenset(h for h in R.subgroup_elements(indices) if all(H.contains(t * h * ti) for t, ti in pairs))


def vertex_action_kernel(R: RotationGroup) -> frozenset:
    return core(R, list(range(2, R.rank)))


def is_normal(R: RotationGroup, N: frozenset) -> bool:
    return all(x.conj(g) in N for g in R.sigmas for x in N) and all((a * b) in N for a in N for b in N)


def _words_for(R: RotationGroup, elems: Sequence[Perm]) -> list[Word]:
    """Words in the generators for the given elements (normal forms when tight, else breadth-first search)."""
    try:
        return [normal_form_word(normal_form(R, g)) for g in elems]
    except NotTight:
        pass
    want = {g: None for g in elems}
    found: dict = {}
    start = R.identity()
    frontier = [(start, Word())]
    seen = {start}
    gens = [(s, Word((i + 1,))) for i, s in enumerate(R.sigmas)]
    if start in want:
        found[start] = Word()
    while frontier and len(found) < len(want):
        nxt = []
        for g, w in frontier:
            for s, ws in gens:
                h = g * s
                if h not in seen:
                    if len(seen) >= R.element_cap:
                        raise CapExceeded("word search", R.element_cap)
                    seen.add(h)
                    hw = w * ws
                    if h in want:
                        found[h] = hw
                    nxt.append((h, hw))
        frontier = nxt
    return [found[g] for g in elems]


def quotient_by_normal(R: RotationGroup, N: frozenset) -> tuple[RotationGroup, dict]:
    """R/N acting on the cosets of N, with flags on orders and the intersection condition."""
    N = frozenset(N)
    if R.identity() not in N or not is_normal(R, N):
        raise NotNormal("set is not a normal subgroup")
    for i, s in enumerate(R.sigmas, start=1):
        if s in N:
            raise GeneratorCollapsed(f"s{i} lies in the normal subgroup")
    Nl = list(N)

    def key(g: Perm) -> bytes:
        return min((n * g).key() for n in Nl)

    ident = R.identity()
    index = {key(ident): 0}
    reps = [ident]
    images: list[list[int]] = [[] for _ in R.sigmas]
    k = 0
    while k < len(reps):
        g = reps[k]
        k += 1
        for i, s in enumerate(R.sigmas):
            h = g * s
            kh = key(h)
            if kh not in index:
                index[kh] = len(reps)
                reps.append(h)
            images[i].append(index[kh])
    sig = tuple(Perm(im) for im in images)
    pres = None
    faithful = False
    if R.presentation is not None:
        gens = [n for n in Nl if not n.is_identity()]
        # a small generating set is enough for the normal closure
        chosen: list[Perm] = []
        span = {ident}
        for n in sorted(gens, key=lambda p: p.key()):
            if n not in span:
                chosen.append(n)
                span = set(subgroup_elements(chosen, R.element_cap, R.degree))
        # induced orders replace the parent ones; s_i^o_i lies in N so the group presented is unchanged
        orders = tuple(s.order() for s in sig)
        pres = Presentation(R.rank, orders, R.presentation.extra_relators + tuple(_words_for(R, chosen)))
        faithful = R.presentation_faithful
    Q = RotationGroup(R.rank, sig, tuple(s.order() for s in sig), pres, faithful, len(reps), R.element_cap,
                      f"{R.label}/N")
    flags = {"orders_ok": Q.orders_ok(), "intersection_ok": check_intersection_condition(Q)}
    return Q, flags


def quotient_by_powers(R: RotationGroup, alphas: Sequence[int], max_cosets: int | None = None) -> RotationGroup:
    """R / <<s_i^alpha_i>> through the presentation."""
    if not R.presentation_faithful:
        raise NotFaithful("quotients by relators need a faithful presentation")
    extra = [Word.power(i + 1, a) for i, (a, p) in enumerate(zip(alphas, R.intended_type)) if a != p]
    pres = Presentation(R.rank, tuple(alphas), R.presentation.extra_relators + tuple(extra))
    return make_rotation_group(pres, max_cosets=max_cosets, element_cap=R.element_cap, label=f"{R.label}/{tuple(alphas)}")


def is_atomic(R: RotationGroup) -> bool:
    """False iff some proper quotient by a normal <s1^a1><s2^a2>... is a tight chiral polytope."""
    v = chirality_verdict(R)
    if not v.chiral:
        raise NotChiral("atomicity is defined for chiral polytopes")
    t = R.intended_type
    for alphas in itertools.product(*(divisors(p) for p in t)):
        if alphas == t or 1 in alphas:
            continue
        try:
            Q = quotient_by_powers(R, alphas)
        except CapExceeded:
            continue
        if Q.order() != _prod(alphas) or not Q.orders_ok():
            continue
        if check_intersection_condition(Q) and chirality_verdict(Q).chiral:
            return False
    return True


def group_report(R: RotationGroup) -> dict:
    rep = is_tight(R)
    out = {
        "type": list(R.claimed_type),
        "order": rep.order,
        "tight": rep.tight,
        "intersection": rep.intersection_ok,
        "orders_ok": rep.orders_ok,
        "polytopal": rep.orders_ok and rep.intersection_ok,
        "regular_or_chiral": None,
        "chirality_group_order": None,
        "generators": [s.cycle_string() for s in R.sigmas],
    }
    if R.presentation_faithful:
        v = chirality_verdict(R)
        out["regular_or_chiral"] = "regular" if v.regular else ("chiral" if v.chiral else "nonpolytopal")
        out["chirality_group_order"] = v.chirality_group_order
        out["chirality_group"] = v.description
    return out
