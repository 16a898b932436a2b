"""Tests for the Chow-ring presentations and their graded groups."""

import pytest

from loghilb.chow import (
    BaseRing,
    GradedPresentation,
    PresentationError,
    compare_presentations,
    eps_name,
    graded_group,
    graded_groups,
    ideal_member,
    ideals_equal,
    iterated_keel,
    keel_step,
    minimal_nonfaces,
    q_polynomial,
    sr_presentation,
    stratum_cycle_class,
    thmD_presentation,
)
from loghilb.fan import fan_motive, hilb_fan
from loghilb.poly import MultiPoly, ZERO
from loghilb.strata import parse_profile

H = MultiPoly.var("H")
TAU = MultiPoly.var("tau")


def eps(j, r=1):
    return MultiPoly.var(eps_name(j, r))


def rho(j):
    return MultiPoly.var(f"rho_{j}")


def sigma(j):
    return MultiPoly.var(f"sigma_{j}")


# ---------------------------------------------------------------------------
# Q-polynomials


def test_q_formally_zero():
    assert q_polynomial(0, 3, "t") == ZERO
    assert q_polynomial(0, 0, "t") == ZERO


def test_q_22():
    t, c = MultiPoly.var("t"), MultiPoly.var("H")
    assert q_polynomial(2, 2, "t") == 2 * t ** 2 + 3 * c * t + c ** 2


def test_q_21():
    t, t2, c = MultiPoly.var("t"), MultiPoly.var("t2"), MultiPoly.var("H")
    assert q_polynomial(2, 1, "t", ["t2"]) == t + c - 2 * t2


def test_q_homogeneous():
    for m in range(1, 7):
        for h in range(1, m + 1):
            uppers = [f"u{j}" for j in range(m - h)]
            q = q_polynomial(m, h, "t", uppers)
            assert q.is_homogeneous()
            assert q.degree() == h


def test_q_argument_validation():
    with pytest.raises(PresentationError):
        q_polynomial(2, 3, "t")
    with pytest.raises(PresentationError):
        q_polynomial(3, 1, "t", ["only_one"])


# ---------------------------------------------------------------------------
# Stanley-Reisner presentations


def test_sr_2_1_nonfaces_and_groups():
    fan = hilb_fan(2, 1)
    pres = sr_presentation(fan)
    labels = {
        frozenset(fan.rays[k].label for k in nf) for nf in minimal_nonfaces(fan)
    }
    assert labels == {
        frozenset({"sigma_1", "sigma_2"}),
        frozenset({"tau", "rho_2"}),
    }
    groups = graded_groups(pres)
    assert [g.rank for g in groups] == [1, 2, 1]
    assert all(g.torsion == () for g in groups)


def _expected_monomial_families(fan, n, i):
    """Expected nonface families of the subdivided fans.

    sigma_j * rho_{n-j} while the exceptional ray exists, then the chain
    sigma_{n-i} ... sigma_n with the conventions that index 0 means tau
    and the level-1 exceptional ray coincides with sigma_n.
    """
    def ray(label):
        for k, r in enumerate(fan.rays):
            if r.label == label:
                return k
        raise AssertionError(f"missing ray {label}")

    families = set()
    if i < n:
        families.add(frozenset({ray("tau"), ray(f"rho_{n}")}))
    for j in range(1, n - i):
        families.add(frozenset({ray(f"sigma_{j}"), ray(f"rho_{n - j}")}))
    chain = []
    for j in range(n - i, n + 1):
        if j == 0:
            chain.append(ray("tau"))
        else:
            chain.append(ray(f"sigma_{j}"))
    families.add(frozenset(chain))
    if i == 1 and n >= 2:
        # level-1 ray equals sigma_n, so the j = n-1 pair becomes a chain
        families.add(frozenset({ray(f"sigma_{n - 1}"), ray(f"sigma_{n}")}))
    return families


@pytest.mark.parametrize("n", (1, 2, 3, 4))
def test_sr_nonfaces_match_expected_families(n):
    for i in range(1, n + 1):
        fan = hilb_fan(n, i)
        computed = {frozenset(nf) for nf in minimal_nonfaces(fan)}
        assert computed == _expected_monomial_families(fan, n, i)


@pytest.mark.parametrize("n", (1, 2, 3, 4))
def test_sr_linear_relations_from_ray_coordinates(n):
    for i in range(1, n + 1):
        fan = hilb_fan(n, i)
        pres = sr_presentation(fan)
        linear = [rel for rel in pres.relations if rel.degree() == 1]
        expected = []
        for j in range(1, n + 1):
            rel = sigma(j) - TAU
            for k in range(max(n - j + 1, i + 1), n + 1):
                rel = rel + (k + j - n) * rho(k)
            expected.append(rel)
        assert {frozenset(r.terms.items()) for r in linear} == {
            frozenset(r.terms.items()) for r in expected
        } or all(ideal_member(pres, r) for r in expected)


@pytest.mark.parametrize("n", (1, 2, 3, 4))
def test_sr_ranks_equal_motive_coefficients(n):
    for i in range(1, n + 1):
        fan = hilb_fan(n, i)
        pres = sr_presentation(fan)
        motive = fan_motive(fan).coefficients_in("L")
        ranks = [g.rank for g in graded_groups(pres)]
        expected = [motive.get(n - k, ZERO).constant_term() for k in range(n + 1)]
        assert ranks == expected


def test_sr_top_degree_nonzero():
    for n, i in [(2, 1), (3, 2), (4, 2), (4, 4)]:
        pres = sr_presentation(hilb_fan(n, i))
        top = graded_group(pres, n)
        assert top.rank + len(top.torsion) > 0


# ---------------------------------------------------------------------------
# blow-up presentations


def test_thmD_top_level_is_symmetric_power():
    pres = thmD_presentation(3, [3], BaseRing.p1(3))
    assert pres.generators == ()
    assert [g.rank for g in graded_groups(pres)] == [1, 1, 1, 1]


def test_thmD_one_step_example():
    # a single blow-up adjoins one generator with two relation families
    pres = thmD_presentation(3, [2], BaseRing.p1(3))
    assert pres.generators == (eps_name(3),)
    e3 = eps(3)
    q33 = (-e3 + H) * (-2 * e3 + H) * (-3 * e3 + H)
    assert any(rel == q33 for rel in pres.relations)
    assert any(rel == H * e3 for rel in pres.relations)


def test_level_zero_equals_level_one():
    base = BaseRing.p1(3)
    a = thmD_presentation(3, [0], base)
    b = thmD_presentation(3, [1], base)
    assert a.generators == b.generators
    assert a.relations == b.relations


@pytest.mark.parametrize("n", (1, 2, 3, 4))
def test_iterated_keel_matches_direct_presentation(n):
    base = BaseRing.p1(n)
    for i in range(0, n + 1):
        direct = thmD_presentation(n, [i], base)
        stepped = iterated_keel(n, i, base)
        assert set(direct.variables()) == set(stepped.variables())
        assert ideals_equal(direct, stepped)


def sr_generator_map(pres):
    gen_map = {"H": TAU}
    for name in pres.generators:
        level = int(name[3:].split("_")[0])
        gen_map[name] = rho(level)
    return gen_map


@pytest.mark.parametrize("n,i", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)])
def test_blowup_presentation_matches_sr(n, i):
    pres = thmD_presentation(n, [i], BaseRing.p1(n))
    sr = sr_presentation(hilb_fan(n, i))
    report = compare_presentations(pres, sr, sr_generator_map(pres))
    assert report["pass"], report


def test_compare_detects_wrong_map():
    pres = thmD_presentation(3, [1], BaseRing.p1(3))
    sr = sr_presentation(hilb_fan(3, 1))
    bad = sr_generator_map(pres)
    bad["H"] = rho(3)
    report = compare_presentations(pres, sr, bad)
    assert not report["pass"]


def test_keel_step_validation():
    base = BaseRing.p1(2)
    pres = GradedPresentation(base, (), (), 2)
    with pytest.raises(PresentationError):
        keel_step(pres, [H + 1], H ** 2, "e")  # inhomogeneous kernel
    stepped = keel_step(pres, [H], q_polynomial(2, 2, "e"), "e")
    with pytest.raises(PresentationError):
        keel_step(stepped, [H], H, "e")  # duplicate generator


def test_symbolic_two_markings_structure():
    base = BaseRing.symbolic(2)
    pres = thmD_presentation(2, [1, 1], base)
    assert set(pres.generators) == {eps_name(2, 1), eps_name(2, 2)}
    # one Q-relation and one kernel relation per marking
    assert len(pres.relations) == 4


def test_ideal_member_basics():
    pres = sr_presentation(hilb_fan(2, 1))
    assert ideal_member(pres, ZERO)
    assert ideal_member(pres, sigma(1) * sigma(2))
    assert not ideal_member(pres, TAU)


def test_graded_group_degree_zero():
    pres = sr_presentation(hilb_fan(3, 2))
    g = graded_group(pres, 0)
    assert g.rank == 1 and g.torsion == ()


# ---------------------------------------------------------------------------
# cycle classes of strata


def test_cycle_class_figure_example():
    profile = parse_profile("1;(1,2);();(1)")
    cls = stratum_cycle_class(profile, 5)
    assert cls == eps(2, 1) * eps(3, 1) * eps(1, 3)
    assert cls.degree() == profile.codimension == 3


def test_cycle_class_single_bubble():
    assert stratum_cycle_class(parse_profile("0;(2)"), 2) == eps(2, 1)
    assert stratum_cycle_class(parse_profile("2;()"), 2) == MultiPoly.const(1)


def test_cycle_class_total_mismatch():
    with pytest.raises(PresentationError):
        stratum_cycle_class(parse_profile("1;(1)"), 5)
