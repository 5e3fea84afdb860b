"""Hypothesis property tests for the lattice, generator and closure laws."""

from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_glb, brute_lfp, powerset
from lfpsat.closure import (
    ClosureProblem,
    is_c_closed_small,
    is_phi_closed_small,
    replay,
    saturate_large,
    saturate_small,
)
from lfpsat.fixpoint import kleene_oracle, least_fixed_point
from lfpsat.generator import (
    DenseFamily,
    bound_of,
    canonical_generator,
    check_bound,
    check_dense,
    dense_generator,
    gamma_map,
    gamma_op,
    s_phi,
    validate_monotone,
)
from lfpsat.lattice import BasisSubset, downset, explicit_basis, infimum, join_subset, tautological_presentation
from lfpsat.powerset import list_basis, list_presentation
from lfpsat.samples import (
    chain,
    diamond,
    hexagon,
    pentagon,
    random_closure_lattice,
    random_extensional,
    random_monotone_map,
    random_rule_set,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
atom_sets = st.sampled_from(["x", "xy", "xyz", "wxyz"])
SETTINGS = settings(max_examples=60, deadline=None)


def _explicit(name):
    lat = {"chain": chain(4), "diamond": diamond(), "pentagon": pentagon(), "hexagon": hexagon()}[name]
    return lat, explicit_basis(lat)


explicit_names = st.sampled_from(["chain", "diamond", "pentagon", "hexagon"])


@SETTINGS
@given(explicit_names, st.data())
def test_join_of_downset_is_identity(name, data):
    lat, basis = _explicit(name)
    x = data.draw(st.sampled_from(lat.elements()))
    assert join_subset(basis, lat, downset(basis, lat, x)) == x


@SETTINGS
@given(atom_sets, st.data())
def test_join_monotone_under_inclusion(atoms, data):
    u, lat, basis, _ = powerset(atoms)
    n = len(basis)
    r = data.draw(st.integers(0, (1 << n) - 1))
    s = data.draw(st.integers(0, (1 << n) - 1)) & r
    assert lat.leq(join_subset(basis, lat, BasisSubset(s, n)), join_subset(basis, lat, BasisSubset(r, n)))


@SETTINGS
@given(st.lists(st.integers(0, 7), max_size=12))
def test_join_depends_only_on_image(indices):
    # a family of list-basis indices with repeats joins like its image set
    u, lat, _, _ = powerset("xyz")
    basis = list_basis(u, lattice=lat)
    family = lat.join(basis.images[b] for b in indices)
    assert family == join_subset(basis, lat, BasisSubset.of(8, indices))


@SETTINGS
@given(explicit_names, st.data())
def test_infimum_is_greatest_lower_bound(name, data):
    lat, basis = _explicit(name)
    family = data.draw(st.lists(st.sampled_from(lat.elements()), max_size=3))
    inf = infimum(basis, lat, family)
    assert all(lat.leq(inf, a) for a in family)
    for b in range(len(basis)):
        if all(basis.leq_b(b, a) for a in family):
            assert lat.leq(basis.images[b], inf)
    if family:
        assert inf == brute_glb(lat, family)


@SETTINGS
@given(atom_sets, seeds)
def test_s_phi_and_gamma_monotone(atoms, seed):
    rng = random.Random(seed)
    _, lat, basis, _ = powerset(atoms)
    gen = random_extensional(basis, lat, rng)
    for x, y in lat.cover_pairs():
        assert s_phi(gen, basis, lat, x) <= s_phi(gen, basis, lat, y)
        assert lat.leq(gamma_op(gen, basis, lat, x), gamma_op(gen, basis, lat, y))


@SETTINGS
@given(seeds)
def test_s_phi_monotone_on_closure_lattices(seed):
    rng = random.Random(seed)
    lat = random_closure_lattice(rng)
    basis = explicit_basis(lat)
    gen = random_extensional(basis, lat, rng)
    for x, y in lat.cover_pairs():
        assert s_phi(gen, basis, lat, x) <= s_phi(gen, basis, lat, y)


@SETTINGS
@given(st.sampled_from(["x", "xy", "xyz"]), seeds)
def test_canonical_and_dense_faithful(atoms, seed):
    rng = random.Random(seed)
    _, lat, basis, _ = powerset(atoms)
    f = validate_monotone(random_monotone_map(lat, rng, density=rng.random()), lat)
    canonical = canonical_generator(f)
    dense, bound = dense_generator(f, DenseFamily.of(lat.elements()), basis, lat)
    assert check_bound(dense, bound, basis, lat)
    for a in lat.elements():
        assert gamma_op(canonical, basis, lat, a) == f(a) == gamma_op(dense, basis, lat, a)


@SETTINGS
@given(st.sampled_from(["x", "xy", "xyz"]), seeds)
def test_list_images_are_dense_for_every_monotone_map(atoms, seed):
    rng = random.Random(seed)
    u, lat, _, _ = powerset(atoms)
    basis = list_basis(u, lattice=lat)
    f = validate_monotone(random_monotone_map(lat, rng, density=rng.random()), lat)
    assert check_dense(f, DenseFamily.of(basis.images), basis, lat)


@SETTINGS
@given(atom_sets, seeds)
def test_bound_of_passes_check_bound(atoms, seed):
    rng = random.Random(seed)
    _, lat, basis, _ = powerset(atoms)
    for gen in (random_rule_set(basis, lat, rng), random_extensional(basis, lat, rng)):
        assert check_bound(gen, bound_of(gen, basis, lat), basis, lat)


@SETTINGS
@given(atom_sets, seeds)
def test_saturation_small_equals_large(atoms, seed):
    rng = random.Random(seed)
    _, lat, basis, pres = powerset(atoms)
    gen = random_extensional(basis, lat, rng)
    problem = ClosureProblem.build(lat, basis, pres, gen)
    result = saturate_small(problem)
    assert result.closed == saturate_large(gen, basis, lat)
    assert is_c_closed_small(result.closed, pres)
    assert is_phi_closed_small(result.closed, gen, problem.bound, basis, lat)
    assert replay(result.firings, len(basis)) == result.closed


@SETTINGS
@given(seeds, seeds)
def test_order_independence(seed, order_seed):
    rng = random.Random(seed)
    u, lat, _, _ = powerset("xyz")
    basis = list_basis(u, lattice=lat)
    gen = random_rule_set(basis, lat, rng)
    problem = ClosureProblem.build(lat, basis, list_presentation(basis, lat), gen)
    assert saturate_small(problem, seed=order_seed).closed == saturate_small(problem).closed


@SETTINGS
@given(atom_sets, seeds)
def test_monotone_in_generator(atoms, seed):
    rng = random.Random(seed)
    _, lat, basis, pres = powerset(atoms)
    gen = random_extensional(basis, lat, rng)
    bigger = gen.add((rng.randrange(len(basis)), lat.random_element(rng)))
    small = saturate_small(ClosureProblem.build(lat, basis, pres, gen)).closed
    large = saturate_small(ClosureProblem.build(lat, basis, pres, bigger)).closed
    assert small <= large


@SETTINGS
@given(seeds)
def test_explicit_lfp_agrees_with_brute_force(seed):
    rng = random.Random(seed)
    lat = random_closure_lattice(rng, n_atoms=3, extra=rng.randint(1, 5))
    basis = explicit_basis(lat)
    gen = random_extensional(basis, lat, rng)
    report = least_fixed_point(ClosureProblem.build(lat, basis, tautological_presentation(basis, lat), gen))
    assert report.agree
    assert report.lfp == brute_lfp(gamma_map(gen, basis, lat), lat)[0]
    assert gamma_op(gen, basis, lat, report.lfp) == report.lfp


@SETTINGS
@given(st.sampled_from(["xy", "xyz"]), seeds)
def test_dense_pipeline_matches_kleene(atoms, seed):
    rng = random.Random(seed)
    _, lat, basis, pres = powerset(atoms)
    f = validate_monotone(random_monotone_map(lat, rng, density=rng.random()), lat)
    gen, bound = dense_generator(f, DenseFamily.of(lat.elements()), basis, lat)
    report = least_fixed_point(ClosureProblem.build(lat, basis, pres, gen, bound=bound))
    assert report.lfp == kleene_oracle(f, lat)[0]
