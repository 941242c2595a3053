"""Named families: atomic chiral polyhedra, tight regular polyhedra, and the rank-4 groups Gamma1-4, Lambda1-8.

Every relation is written as an equation in the presentation grammar and parsed, so the
stored relators are the tabulated equations L = R turned into L R^-1.
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Iterator

from .errors import InvalidParams
from .presentation import Presentation, parse_presentation


class FamilyId(str, Enum):
    P_2M_MA = "p2m-ma"
    P_MA_2M = "ma-2m"
    P_8_2B = "p8-2b"
    P_2B_8 = "p2b-8"
    P_2BM1_2B = "p2bm1-2b"
    P_2B_2BM1 = "p2b-2bm1"
    REG_M_2M = "reg-m-2m"
    REG_4_8 = "reg-4-8"
    REG_4_2B = "reg-4-2b"
    REG_2BM1_2B = "reg-2bm1-2b"
    GAMMA1 = "gamma1"
    GAMMA2 = "gamma2"
    GAMMA3 = "gamma3"
    GAMMA4 = "gamma4"
    LAMBDA1 = "lambda1"
    LAMBDA2 = "lambda2"
    LAMBDA3 = "lambda3"
    LAMBDA4 = "lambda4"
    LAMBDA5 = "lambda5"
    LAMBDA6 = "lambda6"
    LAMBDA7 = "lambda7"
    LAMBDA8 = "lambda8"

    @classmethod
    def parse(cls, name: str) -> "FamilyId":
        try:
            return cls(name.lower())
        except ValueError:
            raise InvalidParams(f"unknown family {name!r}") from None


ATOMIC_POLYHEDRA = (FamilyId.P_2M_MA, FamilyId.P_MA_2M, FamilyId.P_8_2B, FamilyId.P_2B_8, FamilyId.P_2BM1_2B, FamilyId.P_2B_2BM1)
REGULAR_POLYHEDRA = (FamilyId.REG_M_2M, FamilyId.REG_4_8, FamilyId.REG_4_2B, FamilyId.REG_2BM1_2B)
GAMMAS = (FamilyId.GAMMA1, FamilyId.GAMMA2, FamilyId.GAMMA3, FamilyId.GAMMA4)
LAMBDAS = tuple(FamilyId(f"lambda{i}") for i in range(1, 9))


@dataclass(frozen=True)
class Params:
    m: int | None = None
    alpha: int | None = None
    beta: int | None = None
    k: int | None = None
    k1: int | None = None
    k2: int | None = None
    eps: int | None = None
    eps1: int | None = None
    eps2: int | None = None

    def given(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}

    def label(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.given().items())


def is_odd_prime(m: int) -> bool:
    if m < 3 or m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


PM = (-1, 1)
ZO = (0, 1)

# parameter fields demanded by each family, with the allowed sign set where relevant
_SIGNS = {
    FamilyId.P_2M_MA: {}, FamilyId.P_MA_2M: {},
    FamilyId.P_8_2B: {"eps": PM}, FamilyId.P_2B_8: {"eps": PM},
    FamilyId.P_2BM1_2B: {"eps": PM}, FamilyId.P_2B_2BM1: {"eps": PM},
    FamilyId.REG_M_2M: {}, FamilyId.REG_4_8: {}, FamilyId.REG_4_2B: {},
    FamilyId.REG_2BM1_2B: {"eps": ZO},
    FamilyId.GAMMA1: {}, FamilyId.GAMMA2: {"eps1": PM, "eps2": PM},
    FamilyId.GAMMA3: {"eps1": PM, "eps2": PM}, FamilyId.GAMMA4: {"eps1": PM, "eps2": PM},
    FamilyId.LAMBDA1: {}, FamilyId.LAMBDA2: {"eps": PM}, FamilyId.LAMBDA3: {"eps": PM},
    FamilyId.LAMBDA4: {"eps": PM}, FamilyId.LAMBDA5: {"eps": PM},
    FamilyId.LAMBDA6: {"eps1": ZO, "eps2": PM}, FamilyId.LAMBDA7: {"eps1": ZO, "eps2": PM},
    FamilyId.LAMBDA8: {"eps1": ZO, "eps2": PM},
}

_ODD_PRIME = {FamilyId.P_2M_MA: ("alpha", "k"), FamilyId.P_MA_2M: ("alpha", "k"), FamilyId.REG_M_2M: (),
              FamilyId.GAMMA1: ("alpha", "k1", "k2"), FamilyId.LAMBDA1: ("alpha", "k")}

# smallest beta allowed; the regular {4,2^b} and {2^(b-1),2^b} facets also occur with b-1 inside Lambda3/Lambda8
MIN_BETA = {FamilyId.REG_4_2B: 4, FamilyId.REG_2BM1_2B: 4}


def required_fields(family: FamilyId) -> set[str]:
    if family in _ODD_PRIME:
        req = {"m"} | {f for f in _ODD_PRIME[family]}
    elif family == FamilyId.REG_4_8:
        req = set()
    else:
        req = {"beta"}
    return req | set(_SIGNS[family])


def validate(family: FamilyId, params: Params) -> None:
    given = params.given()
    req = required_fields(family)
    missing = req - set(given)
    extra = set(given) - req
    if missing:
        raise InvalidParams(f"{family.value} needs {sorted(missing)}")
    if extra:
        raise InvalidParams(f"{family.value} does not take {sorted(extra)}")
    if "m" in req and not is_odd_prime(params.m):
        raise InvalidParams(f"m={params.m} is not an odd prime")
    if "alpha" in req and params.alpha < 2:
        raise InvalidParams(f"alpha={params.alpha} < 2")
    for f in ("k", "k1", "k2"):
        if f in req and not 1 <= given[f] <= params.m - 1:
            raise InvalidParams(f"{f}={given[f]} outside 1..m-1")
    if "beta" in req and params.beta < MIN_BETA.get(family, 5):
        raise InvalidParams(f"beta={params.beta} < {MIN_BETA.get(family, 5)}")
    for f, allowed in _SIGNS[family].items():
        if given[f] not in allowed:
            raise InvalidParams(f"{f}={given[f]} not in {allowed}")


def schlafli_type(family: FamilyId, params: Params) -> tuple[int, ...]:
    validate(family, params)
    m, a, b = params.m, params.alpha, params.beta
    F = FamilyId
    if family in (F.P_2M_MA, F.GAMMA1):
        t = (2 * m, m ** a)
        return t if family == F.P_2M_MA else (2 * m, m ** a, 2 * m)
    table = {
        F.P_MA_2M: lambda: (m ** a, 2 * m),
        F.P_8_2B: lambda: (8, 2 ** b),
        F.P_2B_8: lambda: (2 ** b, 8),
        F.P_2BM1_2B: lambda: (2 ** (b - 1), 2 ** b),
        F.P_2B_2BM1: lambda: (2 ** b, 2 ** (b - 1)),
        F.REG_M_2M: lambda: (m, 2 * m),
        F.REG_4_8: lambda: (4, 8),
        F.REG_4_2B: lambda: (4, 2 ** b),
        F.REG_2BM1_2B: lambda: (2 ** (b - 1), 2 ** b),
        F.GAMMA2: lambda: (8, 2 ** b, 8),
        F.GAMMA3: lambda: (2 ** (b - 1), 2 ** b, 2 ** (b - 1)),
        F.GAMMA4: lambda: (8, 2 ** b, 2 ** (b - 1)),
        F.LAMBDA1: lambda: (m, 2 * m, m ** a),
        F.LAMBDA2: lambda: (4, 8, 2 ** b),
        F.LAMBDA3: lambda: (4, 2 ** (b - 1), 2 ** b),
        F.LAMBDA4: lambda: (4, 2 ** b, 8),
        F.LAMBDA5: lambda: (4, 2 ** b, 2 ** (b - 1)),
        F.LAMBDA6: lambda: (2 ** (b - 1), 2 ** b, 8),
        F.LAMBDA7: lambda: (2 ** (b - 1), 2 ** b, 2 ** (b - 1)),
        F.LAMBDA8: lambda: (2 ** (b - 2), 2 ** (b - 1), 2 ** b),
    }
    return table[family]()


def relations(family: FamilyId, params: Params) -> list[str]:
    """The extra relations of the family as equations in the text grammar."""
    validate(family, params)
    F = FamilyId
    m, a, b = params.m, params.alpha, params.beta
    k, k1, k2 = params.k, params.k1, params.k2
    e, e1, e2 = params.eps, params.eps1, params.eps2
    if b is not None:
        B2, B1 = 2 ** (b - 2), 2 ** (b - 1)
    if m is not None and a is not None:
        M = m ** (a - 1)
    if family == F.P_2M_MA:
        return [f"s2 s1^2 = s1^2 s2^{1 + k * M}"]
    if family == F.P_MA_2M:
        return [f"s2^2 s1 = s1^{1 + k * M} s2^2"]
    if family == F.P_8_2B:
        return [f"s2 s1^2 = s1^2 s2^{1 + e * B2}"]
    if family == F.P_2B_8:
        return [f"s1 s2^2 = s2^2 s1^{1 + e * B2}"]
    if family == F.P_2BM1_2B:
        return [f"s2^-1 s1 = s1^{-1 + B2} s2^{-3 + e * B2}",
                f"s2 s1^-1 = s1^{1 + B2} s2^{3 + e * B2}"]
    if family == F.P_2B_2BM1:
        return [f"s1^-1 s2 = s2^{-1 + B2} s1^{-3 + e * B2}",
                f"s1 s2^-1 = s2^{1 + B2} s1^{3 + e * B2}"]
    if family in (F.REG_M_2M, F.REG_4_8):
        return ["s2^2 s1 = s1 s2^2"]
    if family == F.REG_4_2B:
        return [f"s2^-1 s1 = s1^-1 s2^{1 + B1}"]
    if family == F.REG_2BM1_2B:
        return [f"s2 s1^-1 = s1 s2^{3 - e * B1}"]
    if family == F.GAMMA1:
        return [f"s2 s1^2 = s1^2 s2^{1 + k1 * M}",
                f"s3^2 s2 = s2^{1 + k2 * M} s3^2"]
    if family == F.GAMMA2:
        return [f"s2 s1^2 = s1^2 s2^{1 + e1 * B2}",
                f"s3^2 s2 = s2^{1 + e2 * B2} s3^2"]
    gamma3_tail = [f"s3^-1 s2 = s2^{3 + e2 * B2} s3^{1 + B2}",
                   f"s3 s2^-1 = s2^{-3 + e2 * B2} s3^{-1 + B2}"] if e2 is not None else []
    if family == F.GAMMA3:
        return [f"s2^-1 s1 = s1^{-1 + B2} s2^{-3 + e1 * B2}",
                f"s2 s1^-1 = s1^{1 + B2} s2^{3 + e1 * B2}"] + gamma3_tail
    if family == F.GAMMA4:
        return [f"s2 s1^2 = s1^2 s2^{1 + e1 * B2}"] + gamma3_tail
    if family == F.LAMBDA1:
        return ["s2^2 s1 = s1 s2^2", f"s3 s2^2 = s2^2 s3^{1 + k * M}"]
    if family == F.LAMBDA2:
        return ["s2^2 s1 = s1 s2^2", f"s3 s2^2 = s2^2 s3^{1 + e * B2}"]
    lambda3_tail = lambda eps: [f"s3^-1 s2 = s2^{-1 + B2} s3^{-3 + eps * B2}",
                                f"s3 s2^-1 = s2^{1 + B2} s3^{3 + eps * B2}"]
    lambda5_tail = lambda eps: [f"s3^-1 s2 = s2^{3 + eps * B2} s3^{1 - B2}",
                                f"s3 s2^-1 = s2^{-3 + eps * B2} s3^{-1 + B2}"]
    if family == F.LAMBDA3:
        return [f"s2^-1 s1 = s1^-1 s2^{1 + B2}"] + lambda3_tail(e)
    if family == F.LAMBDA4:
        return [f"s2^-1 s1 = s1^-1 s2^{1 + B1}", f"s2 s3^2 = s3^2 s2^{1 + e * B2}"]
    if family == F.LAMBDA5:
        return [f"s2^-1 s1 = s1^-1 s2^{1 + B1}"] + lambda5_tail(e)
    if family == F.LAMBDA6:
        return [f"s2 s1^-1 = s1 s2^{3 - e1 * B1}", f"s2 s3^2 = s3^2 s2^{1 + e2 * B2}"]
    if family == F.LAMBDA7:
        return [f"s2 s1^-1 = s1 s2^{3 - e1 * B1}"] + lambda5_tail(e2)
    if family == F.LAMBDA8:
        return [f"s2 s1^-1 = s1 s2^{3 - e1 * B2}"] + lambda3_tail(e2)
    raise InvalidParams(f"no relations for {family}")


def presentation_text(family: FamilyId, params: Params) -> str:
    t = schlafli_type(family, params)
    rels = "".join(f"{r};\n" for r in relations(family, params))
    return f"rank {len(t) + 1};\norders {' '.join(map(str, t))};\n{rels}"


def presentation_for(family: FamilyId, params: Params) -> Presentation:
    return parse_presentation(presentation_text(family, params))


@dataclass(frozen=True)
class CatalogueEntry:
    family: FamilyId
    params: Params

    @property
    def schlafli(self) -> tuple[int, ...]:
        return schlafli_type(self.family, self.params)

    def presentation(self) -> Presentation:
        return presentation_for(self.family, self.params)

    def label(self) -> str:
        return f"{self.family.value}({self.params.label()})"


def grid(family: FamilyId, ms=(3, 5), alphas=(2, 3), betas=(5, 6)) -> Iterator[Params]:
    """All valid parameter choices of a family within the given bounds (Gamma1 only with k1 = k2)."""
    req = required_fields(family)
    axes: dict[str, tuple] = {}
    if "m" in req:
        axes["m"] = tuple(ms)
    if "alpha" in req:
        axes["alpha"] = tuple(alphas)
    if "beta" in req:
        axes["beta"] = tuple(b for b in betas if b >= MIN_BETA.get(family, 5))
    for f, allowed in _SIGNS[family].items():
        axes[f] = allowed
    names = list(axes)

    def rec(i, acc):
        if i == len(names):
            yield dict(acc)
            return
        for v in axes[names[i]]:
            acc[names[i]] = v
            yield from rec(i + 1, acc)
        del acc[names[i]]

    for base in rec(0, {}):
        ks = [f for f in ("k", "k1", "k2") if f in req]
        if not ks:
            yield Params(**base)
            continue
        for k in range(1, base["m"]):
            yield Params(**base, **{f: k for f in ks})


# --- explicit permutation representations on Z_q x Z_r, point (b, c) -> b + q*c ---

PERM_REP_FAMILIES = GAMMAS + (FamilyId.LAMBDA1, FamilyId.LAMBDA2, FamilyId.LAMBDA3)


@dataclass(frozen=True)
class PermRepSpec:
    family: FamilyId
    params: Params
    q: int
    r: int
    D: int
    bar_variant: str


def perm_rep_spec(family: FamilyId, params: Params) -> PermRepSpec:
    if family not in PERM_REP_FAMILIES:
        raise InvalidParams(f"no explicit permutation representation for {family.value}")
    validate(family, params)
    if family == FamilyId.GAMMA1 and params.k1 != params.k2:
        raise InvalidParams("Gamma1 needs k1 = k2")
    t = schlafli_type(family, params)
    if family in (FamilyId.GAMMA1,):
        D, bar = params.k1 * params.m ** (params.alpha - 1), "half-square"
    elif family == FamilyId.LAMBDA1:
        D, bar = params.k * params.m ** (params.alpha - 1), "none"
    else:
        D = 2 ** (params.beta - 3)
        bar = {FamilyId.GAMMA2: "square", FamilyId.GAMMA3: "parity", FamilyId.GAMMA4: "square",
               FamilyId.LAMBDA2: "parity", FamilyId.LAMBDA3: "parity"}[family]
    return PermRepSpec(family, params, t[1], t[2], D, bar)


def _point_maps(spec: PermRepSpec):
    """(b, c) -> image functions for pi1 and pi2 as printed in the existence proofs."""
    F = FamilyId
    D, q = spec.D, spec.q
    p = spec.params
    fam = spec.family
    if fam == F.GAMMA1:
        def bar(b):
            return -b + (b * (b - 1) // 2) * D

        def pi1(b, c):
            return (bar(b) + (c // 2) * D, -c) if c % 2 == 0 else (bar(b) + 2 - ((c - 1) // 2) * D, 2 - c)

        def pi2(b, c):
            return (b + 1 + (c // 2) * D, c) if c % 2 == 0 else (b - 1 - ((c - 1) // 2) * D, c - 2)
        return pi1, pi2
    if fam == F.GAMMA2:
        e1, e2 = p.eps1, p.eps2

        def bar(b):
            return -b + b * (b - 1) * D * e1

        def pi1(b, c):
            return (bar(b) + D * e2 * c, -c) if c % 2 == 0 else (bar(b) + 2 - D * e2 * (c - 1), 2 - c)

        def pi2(b, c):
            return (b + 1 + D * e2 * c, c) if c % 2 == 0 else (b - 1 - D * e2 * (c - 1), c - 2)
        return pi1, pi2
    if fam in (F.GAMMA3, F.GAMMA4):
        e1, e2 = p.eps1, p.eps2
        if fam == F.GAMMA3:
            def bar(b):
                return b * (1 + D * e1) if b % 2 == 0 else (b - 1) * (1 - D * e1) - 1
        else:
            def bar(b):
                return -b + b * (b - 1) * D * e1

        def pi1(b, c):
            if c % 2 == 0:
                return bar(b) + 2 * c + D * e2 * c, c * (D + 1)
            return bar(b) + 2 * c - D * e2 * (c - 1), c * (D + 1) - D

        def pi2(b, c):
            if c % 2 == 0:
                return b + 1 - 2 * c + D * e2 * c, c * (D - 1)
            return b + 1 - 2 * c - D * e2 * (c - 1), c * (D - 1) - D
        return pi1, pi2
    if fam == F.LAMBDA1:
        def pi1(b, c):
            t = c + (c * (c - 1) // 2) * D
            return (b + 2 * c, t) if b % 2 == 0 else (b + 2 * c - 2, t)

        def pi2(b, c):
            return b + 1 - 2 * c, -c + (c * (c - 1) // 2) * D
        return pi1, pi2
    if fam == F.LAMBDA2:
        e = p.eps

        def bar(b):
            return b if b % 2 == 0 else b - 2

        def pi1(b, c):
            if c % 2 == 0:
                return bar(b) - 2 * c, c * (1 + D * e)
            return bar(b) - 2 * c + 4, c * (1 - D * e) + D * e

        def pi2(b, c):
            if c % 2 == 0:
                return b + 1 - 2 * c, c * (-1 + D * e)
            return b + 1 - 2 * c, c * (-1 - D * e) + D * e
        return pi1, pi2
    if fam == F.LAMBDA3:
        e = p.eps

        def bar(b):
            return b * (-1 - D) if b % 2 == 0 else b * (-1 - D) + D

        def pi1(b, c):
            if c % 2 == 0:
                return bar(b) - c * D, c * (-1 + D * e)
            return bar(b) - (c - 1) * D + 2, (1 - c) * (1 + D * e) + 1

        def pi2(b, c):
            if c % 2 == 0:
                return b + 1 + c * D, c * (1 + D * e)
            return b - 1 + (c - 1) * D, (c - 1) * (1 - D * e) - 1
        return pi1, pi2
    raise InvalidParams(fam.value)


def perm_rep_generators(spec: PermRepSpec):
    from .permgroup import Perm

    q, r = spec.q, spec.r
    pi1, pi2 = _point_maps(spec)

    def pi3(b, c):
        return b, c + 1

    out = []
    for f in (pi1, pi2, pi3):
        img = [0] * (q * r)
        for c in range(r):
            for b in range(q):
                b2, c2 = f(b, c)
                img[b + q * c] = (b2 % q) + q * (c2 % r)
        out.append(Perm.checked(img))
    return tuple(out)


def perm_rep_for(family: FamilyId, params: Params, cross_check: bool = True):
    """The rotation group generated by the printed permutations pi1, pi2, pi3.

    With `cross_check`, the presentation is marked faithful only if the permutations satisfy
    every relator and generate a group of the same order as the coset enumeration.
    """
    from .permgroup import hom_extends
    from .rotation import RotationGroup, make_rotation_group

    spec = perm_rep_spec(family, params)
    sig = perm_rep_generators(spec)
    pres = presentation_for(family, params)
    R = RotationGroup(4, sig, tuple(s.order() for s in sig), pres, False, None,
                      label=f"perm_rep({family.value},{params.label()})")
    if cross_check and hom_extends(pres, sig):
        ref = make_rotation_group(pres)
        if ref.order() == R.group.order():
            R.presentation_faithful = True
            R.known_order = ref.order()
    return R


@dataclass(frozen=True)
class PermRepCheck:
    ok: bool
    epimorphism: bool
    fixes_origin: bool
    full_orbit_witness: tuple[int, int] | None
    pi2_shifts_row: bool
    pi3_shifts_column: bool

    def __bool__(self):
        return self.ok


def verify_perm_rep_conditions(R, p: int, q: int, r: int) -> PermRepCheck:
    """Hypotheses of the permutation-representation lemma, on the grid Z_q x Z_r.

    (a) pi1 fixes (0,0); (b) some point has a pi1-orbit of length exactly p;
    (c) (b,0)pi2 = (b+1,0); (d) (b,c)pi3 = (b,c+1). The relators must also hold.
    """
    from .permgroup import hom_extends

    pi1, pi2, pi3 = R.sigmas
    epi = R.presentation is not None and hom_extends(R.presentation, R.sigmas)
    fixes = pi1(0) == 0
    witness = None
    for cyc in pi1.cycles():
        if len(cyc) == p:
            x = min(cyc)
            witness = (x % q, x // q)
            break
    shifts = all(pi2(b) == (b + 1) % q for b in range(q))
    col = all(pi3(b + q * c) == b + q * ((c + 1) % r) for b in range(q) for c in range(r))
    ok = epi and fixes and witness is not None and shifts and col and pi1.order() == p
    return PermRepCheck(ok, epi, fixes, witness, shifts, col)


# --- nonexistence of Lambda4..Lambda8 ---

NONEXISTENT = tuple(FamilyId(f"lambda{i}") for i in range(4, 9))


@dataclass(frozen=True)
class CollapseEvidence:
    family: FamilyId
    params: Params
    intended_type: tuple[int, ...]
    measured_type: tuple[int, ...]
    order: int
    expected_order: int
    sigma2_order: int
    sigma2_core_order: int
    tight: bool
    orders_ok: bool
    intersection_ok: bool
    chiral: bool
    failed: tuple[str, ...]

    @property
    def collapsed(self) -> bool:
        return bool(self.failed)

    def to_json(self) -> dict:
        return {
            "family": self.family.value, "params": self.params.given(),
            "intended_type": list(self.intended_type), "measured_type": list(self.measured_type),
            "order": self.order, "expected_order": self.expected_order,
            "sigma2_order": self.sigma2_order, "sigma2_core_order": self.sigma2_core_order,
            "tight": self.tight, "orders_ok": self.orders_ok, "intersection": self.intersection_ok,
            "chiral": self.chiral, "failed": list(self.failed), "collapsed": self.collapsed,
        }


def nonexistence_witness(family: FamilyId, params: Params, max_cosets: int | None = None) -> CollapseEvidence:
    """Enumerate the presented group and report which conjunct of "tight chiral polytope" fails.

    sigma2_core_order is the order of the core of <s2> in <s2, s3>.
    """
    from .permgroup import PermGroup, cyclic_core
    from .rotation import check_intersection_condition, chirality_verdict, make_rotation_group

    if family not in NONEXISTENT:
        raise InvalidParams(f"{family.value} is not one of lambda4..lambda8")
    pres = presentation_for(family, params)
    R = make_rotation_group(pres, max_cosets=max_cosets)
    order = R.order()
    expected = 1
    for p in pres.orders:
        expected *= p
    orders_ok = R.orders_ok()
    inter = check_intersection_condition(R)
    chiral = chirality_verdict(R).chiral
    vf = PermGroup([R.sigmas[1], R.sigmas[2]], degree=R.degree)
    core = len(cyclic_core(vf, R.sigmas[1]))
    failed = []
    if order != expected:
        failed.append("tight")
    if not orders_ok:
        failed.append("orders")
    if not inter:
        failed.append("intersection")
    if not chiral:
        failed.append("chiral")
    return CollapseEvidence(family, params, pres.orders, R.claimed_type, order, expected, R.sigmas[1].order(),
                            core, order == expected, orders_ok, inter, chiral, tuple(failed))


# --- atomic chiral 4-polytopes with chiral vertex-figures, by their rewriting columns ---

@dataclass(frozen=True)
class Table4Row:
    row: int
    family: FamilyId
    facets: str
    dual_of_family: bool = False


TABLE4 = (
    Table4Row(1, FamilyId.LAMBDA1, "regular"),
    Table4Row(2, FamilyId.LAMBDA2, "regular"),
    Table4Row(3, FamilyId.LAMBDA3, "regular"),
    Table4Row(4, FamilyId.GAMMA1, "chiral"),
    Table4Row(5, FamilyId.GAMMA2, "chiral"),
    Table4Row(6, FamilyId.GAMMA3, "chiral"),
    Table4Row(7, FamilyId.GAMMA4, "chiral"),
    Table4Row(8, FamilyId.GAMMA4, "chiral", dual_of_family=True),
)


def table4_type(row: int, params: Params) -> tuple[int, ...]:
    r = TABLE4[row - 1]
    t = schlafli_type(r.family, params)
    return tuple(reversed(t)) if r.dual_of_family else t


def table4_relations(row: int, params: Params) -> list[str]:
    """The four columns s2^-1 s1, s2 s1^-1, s3^-1 s2, s3 s2^-1 of a row, as equations."""
    r = TABLE4[row - 1]
    validate(r.family, params)
    p = params
    if p.m is not None:
        K = (p.k if p.k is not None else p.k1) * p.m ** (p.alpha - 1)
    if p.beta is not None:
        B = 2 ** (p.beta - 2)
    e, e1, e2 = p.eps, p.eps1, p.eps2
    if row == 1:
        c = [f"s1^-1 s2^-3", f"s1 s2^3", f"s2^3 s3^{1 + K}", f"s2^-3 s3^{-1 + K}"]
    elif row == 2:
        c = [f"s1^-1 s2^-3", f"s1 s2^3", f"s2^3 s3^{1 + e * B}", f"s2^-3 s3^{-1 + e * B}"]
    elif row == 3:
        c = [f"s1^-1 s2^{1 + B}", f"s1 s2^{-1 + B}", f"s2^{-1 + B} s3^{-3 + e * B}", f"s2^{1 + B} s3^{3 + e * B}"]
    elif row == 4:
        c = [f"s1^3 s2^{1 + K}", f"s1^-3 s2^{-1 + K}", f"s2^{-1 + K} s3^-3", f"s2^{1 + K} s3^3"]
    elif row == 5:
        c = [f"s1^3 s2^{1 + e1 * B}", f"s1^-3 s2^{-1 + e1 * B}", f"s2^{-1 + e2 * B} s3^-3", f"s2^{1 + e2 * B} s3^3"]
    elif row == 6:
        c = [f"s1^{-1 + B} s2^{-3 + e1 * B}", f"s1^{1 + B} s2^{3 + e1 * B}",
             f"s2^{3 + e2 * B} s3^{1 + B}", f"s2^{-3 + e2 * B} s3^{-1 + B}"]
    elif row == 7:
        c = [f"s1^3 s2^{1 + e1 * B}", f"s1^-3 s2^{-1 + e1 * B}",
             f"s2^{3 + e2 * B} s3^{1 + B}", f"s2^{-3 + e2 * B} s3^{-1 + B}"]
    elif row == 8:
        c = [f"s1^{-1 + B} s2^{-3 + e1 * B}", f"s1^{1 + B} s2^{3 + e1 * B}",
             f"s2^{-1 + e2 * B} s3^-3", f"s2^{1 + e2 * B} s3^3"]
    else:
        raise InvalidParams(f"no table row {row}")
    lhs = ["s2^-1 s1", "s2 s1^-1", "s3^-1 s2", "s3 s2^-1"]
    return [f"{a} = {b}" for a, b in zip(lhs, c)]


def table4_presentation(row: int, params: Params) -> Presentation:
    t = table4_type(row, params)
    rels = "".join(f"{x};\n" for x in table4_relations(row, params))
    return parse_presentation(f"rank 4;\norders {' '.join(map(str, t))};\n{rels}")
