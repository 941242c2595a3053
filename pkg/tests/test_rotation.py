import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import closure
from rotary_forge.catalogue import FamilyId, Params, presentation_for
from rotary_forge.errors import GeneratorCollapsed, NotChiral, NotMember, NotTight
from rotary_forge.permgroup import PermGroup, cyclic_subgroup, hom_extends, subgroup_elements
from rotary_forge.presentation import parent_presentation, parse_presentation
from rotary_forge.rotation import (chirality_group, chirality_verdict, check_intersection_condition, dual,
                                   enantiomorph, facet_group, from_permutations, is_atomic, is_normal, is_tight,
                                   make_rotation_group, mix, normal_form, quotient_by_normal, same_generators,
                                   vertex_action_kernel, vertex_figure_group)


@pytest.fixture(scope="module")
def p69(build):
    return build("p2m-ma", m=3, alpha=2, k=1)


@pytest.fixture(scope="module")
def gamma1(build):
    return build("gamma1", m=3, alpha=2, k1=1, k2=1)


@pytest.fixture(scope="module")
def reg36(build):
    return build("reg-m-2m", m=3)


def rank4_instances(build):
    return [build("gamma1", m=3, alpha=2, k1=1, k2=1), build("gamma1", m=3, alpha=2, k1=2, k2=2),
            build("gamma2", beta=5, eps1=1, eps2=-1), build("gamma4", beta=5, eps1=-1, eps2=1),
            build("lambda1", m=3, alpha=2, k=2), build("lambda2", beta=5, eps=1),
            build("lambda3", beta=5, eps=-1)]


def test_make_gamma1(gamma1):
    assert gamma1.order() == 324 and gamma1.claimed_type == (6, 9, 6)
    assert gamma1.presentation_faithful


def test_gamma1_unequal_k_is_small():
    R = make_rotation_group(presentation_for(FamilyId.GAMMA1, Params(m=3, alpha=2, k1=1, k2=2)))
    assert R.order() < 324
    assert not is_tight(R).tight


def test_lambda4_sigma2_collapses():
    R = make_rotation_group(presentation_for(FamilyId.LAMBDA4, Params(beta=5, eps=1)))
    assert R.sigmas[1].order() <= 16
    assert not R.orders_ok()


def test_is_tight(build):
    rep = is_tight(build("gamma2", beta=5, eps1=1, eps2=1))
    assert (rep.order, rep.expected, rep.tight) == (2048, 2048, True)
    rep = is_tight(make_rotation_group(parent_presentation([3, 3])))
    assert (rep.order, rep.expected, rep.tight) == (12, 9, False)
    rep = is_tight(build("lambda1", m=3, alpha=2, k=1))
    assert (rep.order, rep.tight) == (162, True)


def test_intersection_condition(gamma1, p69):
    assert check_intersection_condition(gamma1)
    assert check_intersection_condition(p69)
    s = p69.sigmas[0]
    assert not check_intersection_condition(from_permutations([s, s]))


def test_normal_form_examples(p69, gamma1):
    s1, s2 = p69.sigmas
    assert normal_form(p69, p69.identity()) == (0, 0)
    assert normal_form(p69, s2 * s1 * s1) == (2, 4)
    t1, _, t3 = gamma1.sigmas
    assert normal_form(gamma1, t3 * t1) == (1, 2, 1)


def test_normal_form_errors(p69):
    with pytest.raises(NotTight):
        normal_form(make_rotation_group(parent_presentation([3, 3])), p69.identity())
    other = make_rotation_group(presentation_for(FamilyId.P_2M_MA, Params(m=3, alpha=2, k=2)))
    outsider = from_permutations(other.sigmas).sigmas[0]
    if outsider.degree == p69.degree and not p69.group.contains(outsider):
        with pytest.raises(NotMember):
            normal_form(p69, outsider)


def test_enantiomorph(p69, reg36):
    E = enantiomorph(p69)
    p69_2 = presentation_for(FamilyId.P_2M_MA, Params(m=3, alpha=2, k=2))
    assert hom_extends(p69_2, E.sigmas)
    EE = enantiomorph(E)
    assert hom_extends(p69.presentation, EE.sigmas)
    assert hom_extends(reg36.presentation, enantiomorph(reg36).sigmas)


def test_dual(p69, build):
    D = dual(p69)
    assert D.claimed_type == (9, 6)
    assert hom_extends(parse_presentation("rank 3; orders 9 6; s2^2 s1 = s1^4 s2^2"), D.sigmas)
    assert dual(D).sigmas == p69.sigmas
    G4 = build("gamma4", beta=5, eps1=1, eps2=1)
    assert dual(G4).claimed_type == (16, 32, 8)


def test_mix(p69, reg36):
    assert mix(p69, enantiomorph(p69)).group.order() == 162
    assert mix(p69, p69).group.order() == 54
    assert mix(reg36, reg36).group.order() == 18


def test_chirality_verdicts(p69, reg36, gamma1):
    v = chirality_verdict(p69)
    assert v.chiral and v.polytopal and v.description == "<s2^3>" and v.chirality_group_order == 3
    v = chirality_verdict(reg36)
    assert v.regular and not v.chiral and v.chirality_group_order == 1
    v = chirality_verdict(gamma1)
    assert v.chiral and v.description == "<s2^3>"


def test_sections(gamma1, p69, build):
    assert same_generators(facet_group(gamma1), p69)
    assert same_generators(vertex_figure_group(build("lambda1", m=3, alpha=2, k=1)), p69)
    F = facet_group(p69)
    assert F.rank == 2 and F.order() == 6
    assert len(F.group.elements()) == 6


def test_vertex_action_kernel(gamma1, p69):
    K = vertex_action_kernel(gamma1)
    assert len(K) > 1
    t2, t3 = gamma1.sigmas[1], gamma1.sigmas[2]
    A = cyclic_subgroup(t2)
    B = cyclic_subgroup(t3)
    a = max(len(K & A), 1)
    b = max(len(K & B), 1)
    # K factors as (K meet <s2>)(K meet <s3>)
    assert {x * y for x in K & A for y in K & B} == K and a * b == len(K)
    K = vertex_action_kernel(p69)
    assert len(K) > 1 and K <= cyclic_subgroup(p69.sigmas[1])


def test_vertex_kernel_of_p2():
    # brute-force core of <s2>: elements lying in every conjugate of <s2>
    R = make_rotation_group(parse_presentation("rank 3; orders 6 2;"))
    H = cyclic_subgroup(R.sigmas[1])
    G = R.group.elements()
    core = {h for h in H if all(h.conj(g) in H for g in G)}
    assert vertex_action_kernel(R) == core == {R.identity()}
    # for {2,2} the vertex stabilizer is normal and the kernel is all of it
    R = make_rotation_group(parse_presentation("rank 3; orders 2 2;"))
    assert vertex_action_kernel(R) == cyclic_subgroup(R.sigmas[1])


def test_quotients(p69, gamma1):
    X = chirality_verdict(p69).chirality_group
    Q, flags = quotient_by_normal(p69, X)
    assert Q.claimed_type == (6, 3) and Q.order() == 18
    assert flags == {"orders_ok": True, "intersection_ok": True}
    assert chirality_verdict(Q).regular
    Q, _ = quotient_by_normal(gamma1, chirality_verdict(gamma1).chirality_group)
    assert chirality_verdict(Q).regular
    with pytest.raises(GeneratorCollapsed):
        quotient_by_normal(p69, p69.group.elements())


def test_atomic(p69, gamma1):
    assert is_atomic(p69)
    assert is_atomic(gamma1)
    Q, _ = quotient_by_normal(p69, chirality_verdict(p69).chirality_group)
    with pytest.raises(NotChiral):
        is_atomic(Q)


# --- invariants ---

def test_rels1s3_and_eq5(build):
    for R in rank4_instances(build):
        s1, s2, s3 = R.sigmas
        assert s3 * s1 == s1 * s2 * s2 * s3
        for k in range(R.claimed_type[0]):
            assert s3 * s1 ** k * s3.inverse() == s2.inverse() * s1 ** -k * s2


@pytest.mark.parametrize("family, params", [
    ("p2m-ma", dict(m=3, alpha=2, k=2)), ("ma-2m", dict(m=5, alpha=2, k=3)), ("p8-2b", dict(beta=5, eps=-1)),
    ("p2bm1-2b", dict(beta=5, eps=1)), ("gamma1", dict(m=3, alpha=2, k1=2, k2=2)),
    ("lambda2", dict(beta=5, eps=-1)), ("reg-4-2b", dict(beta=4)),
])
def test_normal_form_bijection(build, family, params):
    R = build(family, **params)
    elems = R.group.elements()
    box = set(itertools.product(*(range(p) for p in R.claimed_type)))
    forms = {normal_form(R, g) for g in elems}
    assert forms == box and len(elems) == len(box)
    # brute-force closure of the same generators agrees on the count
    assert len(closure([s.images for s in R.sigmas], R.degree)) == len(box)


ROUND_TRIP = [("p2m-ma", dict(m=3, alpha=2, k=1)), ("gamma1", dict(m=3, alpha=2, k1=2, k2=2)),
              ("gamma2", dict(beta=5, eps1=-1, eps2=1))]


@given(st.sampled_from(ROUND_TRIP), st.data())
def test_normal_form_round_trip(build, case, data):
    R = build(case[0], **case[1])
    exps = tuple(data.draw(st.integers(0, p - 1)) for p in R.claimed_type)
    g = R.identity()
    for s, a in zip(R.sigmas, exps):
        g = g * s ** a
    assert normal_form(R, g) == exps


CHIRAL = [("p2m-ma", dict(m=3, alpha=2, k=1)), ("ma-2m", dict(m=3, alpha=3, k=2)), ("p2b-8", dict(beta=5, eps=1)),
          ("p2b-2bm1", dict(beta=5, eps=-1)), ("gamma1", dict(m=3, alpha=2, k1=1, k2=1)),
          ("gamma3", dict(beta=5, eps1=1, eps2=1)), ("lambda1", dict(m=5, alpha=2, k=3)),
          ("lambda3", dict(beta=5, eps=1))]


@pytest.mark.parametrize("family, params", CHIRAL)
def test_mix_order_and_quotient_by_x(build, family, params):
    R = build(family, **params)
    X = chirality_group(R)
    assert mix(R, enantiomorph(R)).group.order() == R.order() * len(X)
    assert X == chirality_group(R, "relators")
    Q, flags = quotient_by_normal(R, X)
    assert all(flags.values()) and chirality_verdict(Q).regular


@pytest.mark.parametrize("family, params", CHIRAL[:4])
def test_no_square_generator_is_normal(build, family, params):
    R = build(family, **params)
    for s in R.sigmas:
        assert not is_normal(R, cyclic_subgroup(s * s))


def test_quotient_mix_compatibility(build):
    R = build("p2m-ma", m=3, alpha=3, k=1)
    s1, s2 = R.sigmas
    K = cyclic_subgroup(s2 ** 9)
    N = chirality_group(R)
    assert is_normal(R, K) and is_normal(R, N)
    QK, _ = quotient_by_normal(R, K)
    QN, _ = quotient_by_normal(R, N)
    QKN, _ = quotient_by_normal(R, K & N)
    assert mix(QK, QN).group.order() == QKN.order()
