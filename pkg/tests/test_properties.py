from hypothesis import given, settings, strategies as st

from tabloidchar.bijection import gammas_for, is_eigen, phi, psi, row_law_holds
from tabloidchar.characters import ModuleSpec, character, weighted_character_sum
from tabloidchar.core import Permutation, RootSumValue, partitions_of, root_sum_add, root_sum_eval, sigma_rho
from tabloidchar.cycle_tabloids import count_marked, enumerate_marked, parse_marked, render_marked
from tabloidchar.tabloids import Numbering, canonicalize, fixed_point_profile, left_act, right_act_a
from tabloidchar.verify import catalog_instances

INSTANCES = list(catalog_instances(7))


@st.composite
def instances(draw):
    return draw(st.sampled_from(INSTANCES))


@st.composite
def perms(draw, m):
    return Permutation(draw(st.permutations(range(1, m + 1))))


@st.composite
def tabloids(draw, inst):
    labels = draw(st.permutations(range(1, inst.m + 1)))
    it = iter(labels)
    rows = [[[next(it) for _ in range(w)] for w in comp.parts] for comp in inst.components]
    return canonicalize(Numbering.on(inst, rows))


@given(st.data())
def test_actions_commute_and_are_free(data):
    inst = data.draw(instances())
    t = data.draw(tabloids(inst))
    s, u = data.draw(perms(inst.m)), data.draw(perms(inst.m))
    i = data.draw(st.integers(-8, 8))
    assert left_act(s, right_act_a(t, i)) == right_act_a(left_act(s, t), i)
    assert left_act(s * u, t) == left_act(s, left_act(u, t))
    assert (right_act_a(t, i) == t) == (i % inst.l == 0)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_profile_class_function(data):
    inst = data.draw(instances())
    s, tau = data.draw(perms(inst.m)), data.draw(perms(inst.m))
    assert fixed_point_profile(inst, s).counts == fixed_point_profile(inst, tau * s * tau.inverse()).counts


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_weighted_sum_counts_marked(data):
    inst = data.draw(instances())
    rho = data.draw(st.sampled_from(list(partitions_of(inst.m))))
    j = data.draw(st.integers(0, inst.l - 1))
    tau = data.draw(perms(inst.m))
    sigma = tau * sigma_rho(rho) * tau.inverse()
    gamma = gammas_for(inst, j)
    value = weighted_character_sum(inst, j, sigma)
    assert value == count_marked(inst, rho, gamma) == count_marked(inst.with_periods(gamma), rho, gamma)
    coarse = inst.with_periods(gamma)
    assert value == weighted_character_sum(coarse, 1, sigma)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_phi_psi_round_trip(data):
    inst = data.draw(instances())
    rho = data.draw(st.sampled_from(list(partitions_of(inst.m))))
    j = data.draw(st.integers(0, inst.l - 1))
    marked = list(enumerate_marked(inst, rho, gammas_for(inst, j)))
    if not marked:
        return
    mt = data.draw(st.sampled_from(marked))
    t = phi(mt, j)
    assert is_eigen(t, sigma_rho(rho), j)
    assert row_law_holds(t, rho, j)
    assert psi(t, rho, j) == mt
    assert parse_marked(render_marked(mt), inst, mt.y.gamma, rho) == mt


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_characters_sum_to_fixed_count(data):
    # sum over k of zeta^{kj} vanishes unless j = 0, leaving F_0
    inst = data.draw(instances())
    s = data.draw(perms(inst.m))
    profile = fixed_point_profile(inst, s)
    total = RootSumValue.zero(inst.l)
    for k in range(inst.l):
        total = root_sum_add(total, character(ModuleSpec(inst, k), s, profile=profile))
    re, im = root_sum_eval(total)
    assert abs(re - profile.counts[0]) < 1e-9 and abs(im) < 1e-9
