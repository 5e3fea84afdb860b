from __future__ import annotations

import random

import pytest

from helpers import powerset
from lfpsat.closure import (
    ClosureProblem,
    check_initiality,
    find_c_violation,
    find_phi_violation,
    is_c_closed_large,
    is_c_closed_small,
    is_phi_closed_large,
    is_phi_closed_small,
    replay,
    saturate_large,
    saturate_small,
)
from lfpsat.errors import ContractError, GuardError, UnboundedGeneratorError
from lfpsat.generator import (
    MonotoneMap,
    bound_of,
    canonical_generator,
    extensional,
    validate_monotone,
)
from lfpsat.lattice import BasisSubset, explicit_basis, tautological_presentation
from lfpsat.powerset import FiniteUniverse, PowersetLattice, list_basis, list_presentation
from lfpsat.samples import diamond, random_rule_set


def a3_problem(a3):
    return ClosureProblem.build(a3.lattice, a3.basis, a3.presentation, a3.generator)


def test_reachability_saturates_to_everything(a3):
    result = saturate_small(a3_problem(a3))
    assert result.closed == a3.basis.subset("xyz")
    assert result.trace_lines(a3.basis) == ["fire phi p0:x += x", "fire phi p1:y += y", "fire phi p2:z += z"]
    assert replay(result.firings, 3) == result.closed


def test_small_and_large_predicates_on_reachability(a3):
    lat, basis, gen, pres = a3.lattice, a3.basis, a3.generator, a3.presentation
    bound = bound_of(gen, basis, lat)
    expected_phi = {"xyz"}
    for s in BasisSubset.all_subsets(3):
        name = "".join(basis.labels[b] for b in s)
        assert is_c_closed_small(s, pres) and is_c_closed_large(s, basis, lat)
        assert is_phi_closed_small(s, gen, bound, basis, lat) == (name in expected_phi) == is_phi_closed_large(
            s, gen, basis, lat
        )
    assert find_phi_violation(basis.subset(["y"]), gen, bound, basis, lat) == (0, 0)
    assert find_phi_violation(basis.subset([]), gen, bound, basis, lat) == (0, 0)


def test_containment_fails_for_list_basis_without_empty_list(a3_list):
    u, lat, basis = a3_list
    pres = list_presentation(basis, lat)
    s = basis.subset(["[x]"])
    assert not is_c_closed_large(s, basis, lat)
    assert find_c_violation(s, pres) is not None
    assert is_c_closed_large(basis.subset(["[]", "[x]"]), basis, lat)


def test_saturate_large_empty_generator_on_list_basis():
    u = FiniteUniverse.of("x")
    lat = PowersetLattice(u)
    basis = list_basis(u, lattice=lat)
    closed = saturate_large(extensional([], basis, lat), basis, lat)
    assert {basis.labels[b] for b in closed} == {"[]"}


def test_saturate_small_on_list_basis(a3_list):
    u, lat, basis = a3_list
    gen = extensional([(basis.position("[x]"), 0)], basis, lat)
    problem = ClosureProblem.build(lat, basis, list_presentation(basis, lat), gen)
    closed = saturate_small(problem).closed
    assert {basis.labels[b] for b in closed} == {"[]", "[x]"}
    assert closed == saturate_large(gen, basis, lat)


def test_diamond_rules():
    lat = diamond()
    basis = explicit_basis(lat)
    pres = tautological_presentation(basis, lat)
    gen = extensional([(basis.position("a"), "0"), (basis.position("b"), "a")], basis, lat)
    closed = saturate_small(ClosureProblem.build(lat, basis, pres, gen)).closed
    assert {basis.labels[b] for b in closed} == {"a", "b", "c"}
    assert closed == saturate_large(gen, basis, lat)


def test_canonical_is_rejected():
    _, lat, basis, pres = powerset("xy")
    gen = canonical_generator(validate_monotone(MonotoneMap(lambda s: s), lat))
    with pytest.raises(UnboundedGeneratorError, match="generator not bounded"):
        ClosureProblem.build(lat, basis, pres, gen)


def test_build_rejects_bad_bound(a3):
    bound = bound_of(a3.generator, a3.basis, a3.lattice).without(0)
    with pytest.raises(ContractError):
        ClosureProblem.build(a3.lattice, a3.basis, a3.presentation, a3.generator, bound=bound)


def test_build_rejects_inexact_presentation(a3):
    pres = a3.presentation.without((0, 0))
    with pytest.raises(ContractError):
        ClosureProblem.build(a3.lattice, a3.basis, pres, a3.generator)


def test_saturate_large_guards():
    _, lat, basis, _ = powerset("abcdefghijklmno")
    with pytest.raises(GuardError):
        saturate_large(extensional([], basis, lat), basis, lat)
    _, lat, basis, _ = powerset("abcd")
    with pytest.raises(GuardError):
        saturate_large(extensional([], basis, lat), basis, lat, max_carrier=8)
    with pytest.raises(GuardError):
        is_c_closed_large(BasisSubset.empty(15), powerset("abcdefghijklmno")[2], lat)


def test_seeded_saturation_matches_fifo(a3):
    problem = a3_problem(a3)
    base = saturate_small(problem)
    for seed in range(10):
        result = saturate_small(problem, seed=seed)
        assert result.closed == base.closed
        assert replay(result.firings, 3) == base.closed


def test_initiality_against_sampled_candidates():
    rng = random.Random(11)
    u, lat, basis, pres = powerset("wxyz")
    for _ in range(10):
        gen = random_rule_set(basis, lat, rng)
        problem = ClosureProblem.build(lat, basis, pres, gen)
        closed = saturate_small(problem).closed
        for _ in range(50):
            candidate = BasisSubset(rng.getrandbits(4), 4)
            assert check_initiality(closed, candidate, gen, pres, problem.bound, basis, lat)
        # the closed set itself is a candidate, and nothing strictly below it is
        assert is_phi_closed_small(closed, gen, problem.bound, basis, lat)
        for b in closed:
            smaller = closed - BasisSubset.of(4, [b])
            assert not is_phi_closed_small(smaller, gen, problem.bound, basis, lat)
