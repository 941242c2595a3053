import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oracles import census_oracle, closure
from rotary_forge.catalogue import FamilyId, Params, presentation_for
from rotary_forge.census import (Census, CensusConfig, amalgamate, catalogue_agreement, census_all,
                                 classify_candidate, dual_parameters, enumerate_tight_rotary_polyhedra,
                                 maximal_divisors, rebuild, rewriting_parameters, types_up_to)
from rotary_forge.permgroup import cyclic_subgroup, divisors, hom_extends
from rotary_forge.rotation import (chirality_verdict, check_intersection_condition, dual, is_atomic, is_normal,
                                   make_rotation_group, mix, quotient_by_powers, same_generators)

BOUND = 120


@pytest.fixture(scope="module")
def small_census():
    return census_all(CensusConfig(bound=BOUND))


def p69(k):
    return make_rotation_group(presentation_for(FamilyId.P_2M_MA, Params(m=3, alpha=2, k=k)))


def test_type_6_9():
    res = enumerate_tight_rotary_polyhedra(6, 9)
    assert len(res.chiral) == 2 and not res.indeterminate
    groups = [rebuild(6, 9, r.params) for r in res.chiral]
    for k in (1, 2):
        assert sum(same_generators(G, p69(k)) for G in groups) == 1
    a, b = res.chiral
    assert a.enantiomorph == b.params and b.enantiomorph == a.params
    assert {r.matched_family for r in res.chiral} == {"p2m-ma(m=3,alpha=2,k=1)", "p2m-ma(m=3,alpha=2,k=2)"}


@pytest.mark.parametrize("p", range(3, 9))
def test_type_p_2(p):
    res = enumerate_tight_rotary_polyhedra(p, 2)
    assert len(res.records) == 1 and res.records[0].verdict == "regular"


def test_type_4_4():
    assert enumerate_tight_rotary_polyhedra(4, 4).chiral == []


@pytest.mark.parametrize("p, q", [(3, 3), (4, 2), (2, 5), (4, 4)])
def test_matches_sympy_oracle(p, q):
    res = enumerate_tight_rotary_polyhedra(p, q, annotate=False)
    assert {r.params: r.verdict for r in res.records} == census_oracle(p, q)


@pytest.mark.slow
@pytest.mark.parametrize("p, q", [(3, 6), (6, 9)])
def test_matches_sympy_oracle_slow(p, q):
    res = enumerate_tight_rotary_polyhedra(p, q, annotate=False)
    assert {r.params: r.verdict for r in res.records} == census_oracle(p, q)


@pytest.mark.parametrize("p, q", [t for t in types_up_to(36) if 2 not in t])
def test_lift_matches_exhaustive_scan(p, q):
    lift = Census(CensusConfig(method="lift")).result(p, q)
    scan = Census(CensusConfig(method="scan")).result(p, q)
    assert [(r.params, r.verdict) for r in lift.records] == [(r.params, r.verdict) for r in scan.records]
    assert not scan.indeterminate


def test_classify_candidate():
    t = rewriting_parameters(p69(1).sigmas, 6, 9)
    o = classify_candidate(6, 9, t)
    assert o.status == "tight" and o.verdict == "chiral"
    assert classify_candidate(6, 9, (0, 0, 0, 0)).status == "small"


def test_dual_parameters():
    res = enumerate_tight_rotary_polyhedra(9, 6)
    for r in enumerate_tight_rotary_polyhedra(6, 9).records:
        d = dual_parameters(6, 9, r.params)
        assert d in {x.params for x in res.records}
        assert same_generators(rebuild(9, 6, d), dual(rebuild(6, 9, r.params)))


def test_maximal_divisors():
    assert maximal_divisors(12) == [6, 4]
    assert maximal_divisors(27) == [9]
    assert maximal_divisors(7) == [1]


def test_deterministic_parallel():
    a = census_all(CensusConfig(bound=60, workers=1))
    b = census_all(CensusConfig(bound=60, workers=2))
    assert {k: [r.to_json() for r in v.records] for k, v in a.items()} == \
        {k: [r.to_json() for r in v.records] for k, v in b.items()}


# --- invariants over the census ---

def test_census_soundness(small_census):
    for (p, q), res in small_census.items():
        assert not res.indeterminate
        keys = {r.params for r in res.records}
        for r in res.records:
            G = rebuild(p, q, r.params)
            s1, s2 = (s.images for s in G.sigmas)
            assert len(closure([s1, s2], G.degree)) == p * q
            assert G.orders_ok() and check_intersection_condition(G)
            if r.verdict == "chiral":
                assert r.enantiomorph in keys


def test_no_chiral_with_2(small_census):
    for (p, q), res in small_census.items():
        if 2 in (p, q):
            assert res.chiral == []


def test_normal_sigma1_forces_2(small_census):
    for (p, q), res in small_census.items():
        for r in res.records:
            G = rebuild(p, q, r.params)
            if is_normal(G, cyclic_subgroup(G.sigmas[0])):
                assert q == 2


def test_squares_not_normal_in_chiral(small_census):
    for (p, q), res in small_census.items():
        for r in res.chiral:
            G = rebuild(p, q, r.params)
            for s in G.sigmas:
                assert not is_normal(G, cyclic_subgroup(s * s))


def test_normal_power_congruence(small_census):
    hits = 0
    for (p, q), res in small_census.items():
        for r in res.records:
            G = rebuild(p, q, r.params)
            s1, s2 = G.sigmas
            for a in divisors(q)[:-1]:
                if not is_normal(G, cyclic_subgroup(s2 ** a)):
                    continue
                lhs = s2 ** a * s1
                s = next(s for s in range(q // a) if s1 * s2 ** (s * a) == lhs)
                assert (s * s - 1) % (q // a) == 0
                hits += 1
    assert hits > 0


def test_catalogue_agreement_small(small_census):
    rep = catalogue_agreement(small_census, BOUND)
    assert rep["ok"], rep["failures"]


def test_nonatomic_records_cover_smaller_chiral(small_census):
    # within this bound the non-atomic chiral records lie over smaller chiral ones
    seen = 0
    for (p, q), res in small_census.items():
        for r in res.chiral:
            if r.atomic:
                continue
            G = rebuild(p, q, r.params)
            found = False
            for a, b in itertools.product(divisors(p), divisors(q)):
                if (a, b) == (p, q) or 1 in (a, b):
                    continue
                Q = quotient_by_powers(G, (a, b))
                if Q.order() == a * b and Q.orders_ok() and chirality_verdict(Q).chiral:
                    t = rewriting_parameters(Q.sigmas, a, b)
                    assert t in {x.params for x in small_census[(a, b)].chiral}
                    found = True
            assert found
            seen += 1
    assert seen > 0


def test_regular_records_have_no_chiral_quotients(small_census):
    for (p, q), res in small_census.items():
        for r in res.regular:
            if p * q > 60:
                continue
            G = rebuild(p, q, r.params)
            for a, b in itertools.product(divisors(p), divisors(q)):
                if (a, b) == (p, q) or 1 in (a, b):
                    continue
                Q = quotient_by_powers(G, (a, b))
                if Q.order() == a * b and Q.orders_ok() and check_intersection_condition(Q):
                    assert not chirality_verdict(Q).chiral


def test_atomic_records_prime_power(small_census):
    for (p, q), res in small_census.items():
        for r in res.chiral:
            if r.atomic and p >= q:
                f = [d for d in divisors(p) if d > 1 and all(d % e for e in range(2, d))]
                assert len(f) == 1


def test_mix_of_distinct_atomic_not_tight():
    A, B = p69(1), p69(2)
    assert mix(A, B).group.order() != 6 * 9
    C = make_rotation_group(presentation_for(FamilyId.P_2M_MA, Params(m=3, alpha=3, k=1)))
    M = mix(C, A)
    assert M.claimed_type == (6, 27) and M.group.order() != 6 * 27


# --- amalgamation ---

def test_amalgamate_examples():
    F1 = p69(1)
    V = lambda k: make_rotation_group(presentation_for(FamilyId.P_MA_2M, Params(m=3, alpha=2, k=k)))
    A = amalgamate(F1, V(1))
    G1 = make_rotation_group(presentation_for(FamilyId.GAMMA1, Params(m=3, alpha=2, k1=1, k2=1)))
    assert A.ok and A.measured_order == 324 and same_generators(A.group, G1)
    B = amalgamate(F1, V(2))
    assert not B.ok and B.measured_order < 324
    R = make_rotation_group(presentation_for(FamilyId.REG_M_2M, Params(m=3)))
    C = amalgamate(R, F1)
    L1 = make_rotation_group(presentation_for(FamilyId.LAMBDA1, Params(m=3, alpha=2, k=1)))
    assert C.ok and C.measured_order == 162 and same_generators(C.group, L1)


@settings(max_examples=15)
@given(st.sampled_from([(4, 8), (4, 16), (6, 9), (8, 16), (9, 6), (6, 18)]), st.data())
def test_enantiomorph_parameters_round_trip(pq, data):
    p, q = pq
    res = enumerate_tight_rotary_polyhedra(p, q, annotate=False)
    if not res.records:
        return
    r = data.draw(st.sampled_from(res.records))
    G = rebuild(p, q, r.params)
    from rotary_forge.rotation import enantiomorph_generators
    E = enantiomorph_generators(G.sigmas)
    assert rewriting_parameters(E, p, q) == r.enantiomorph
    assert (r.verdict == "regular") == hom_extends(G.presentation, E)
