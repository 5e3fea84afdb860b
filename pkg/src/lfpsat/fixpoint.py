"""Least fixed points of the induced operator, with two independent oracles.

The production answer is the join of the least closed subset computed by
:func:`lfpsat.closure.saturate_small`. It is compared with

* Kleene iteration from bottom, and
* the meet of all deflationary points (``f(x) <= x``), computed by
  enumerating the carrier.

Neither oracle touches the closure engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .closure import (
    ClosureProblem,
    ClosureResult,
    is_c_closed_large,
    is_phi_closed_large,
    saturate_small,
)
from .errors import ContractError, GuardError, MonotonicityError
from .generator import Generator, MonotoneMap, gamma_map, gamma_op
from .lattice import (
    ENUMERATION_LIMIT,
    Basis,
    BasisSubset,
    Element,
    LatticeHandle,
    downset,
    infimum,
    join_subset,
)


def is_deflationary(gen: Generator, basis: Basis, lattice: LatticeHandle, a: Element) -> bool:
    return lattice.leq(gamma_op(gen, basis, lattice, a), a)


def correspondence_forward(p: BasisSubset, gen: Generator, basis: Basis, lattice: LatticeHandle) -> Element:
    """Closed subset to deflationary point: ``p -> join(p)``."""
    if not is_c_closed_large(p, basis, lattice):
        raise ContractError(f"{basis.format(p)} is not closed under containment")
    if not is_phi_closed_large(p, gen, basis, lattice):
        raise ContractError(f"{basis.format(p)} is not closed under the generator")
    return join_subset(basis, lattice, p)


def correspondence_backward(a: Element, gen: Generator, basis: Basis, lattice: LatticeHandle) -> BasisSubset:
    """Deflationary point to closed subset: ``a -> downset(a)``."""
    if not is_deflationary(gen, basis, lattice, a):
        raise ContractError(f"{lattice.format(a)} is not deflationary for the induced operator")
    return downset(basis, lattice, a)


def kleene_oracle(f: MonotoneMap, lattice: LatticeHandle) -> tuple[Element, int]:
    """Iterate ``f`` from bottom until it stabilises; returns the limit and the number of applications.

    A finite lattice has no infinite ascending chain, so a monotone map
    stabilises within ``|L| + 1`` applications. Running past that bound or
    observing a descending step diagnoses a non-monotone map.
    """
    if not f.validated:
        raise ContractError(f"Kleene iteration needs a validated monotone map, {f.name} is unchecked")
    limit = lattice.size + 1
    x = lattice.bottom
    steps = 0
    while steps < limit:
        y = f(x)
        steps += 1
        if y == x:
            return x, steps
        if not lattice.leq(x, y):
            raise MonotonicityError(
                f"Kleene iteration of {f.name} descended from {lattice.format(x)} to {lattice.format(y)}; "
                "the map is not monotone",
                witness=(x, y),
            )
        x = y
    raise MonotonicityError(f"Kleene iteration of {f.name} did not stabilise within {limit} steps")


def deflationary_points(f: MonotoneMap, lattice: LatticeHandle, limit: int = ENUMERATION_LIMIT) -> list[Element]:
    if not lattice.is_enumerable(limit):
        raise GuardError(f"deflationary scan needs an enumerable carrier; {lattice.size} elements > {limit}")
    return [x for x in lattice.elements(limit) if lattice.leq(f(x), x)]


def deflationary_meet_oracle(
    f: MonotoneMap, basis: Basis, lattice: LatticeHandle, limit: int = ENUMERATION_LIMIT
) -> Element:
    """Meet of every ``x`` with ``f(x) <= x``, over the whole carrier."""
    return infimum(basis, lattice, deflationary_points(f, lattice, limit))


@dataclass(frozen=True)
class FixpointReport:
    """Saturation answer plus oracle values; oracle fields are None when skipped."""

    lfp: Element
    closed: BasisSubset
    oracle_kleene: Element | None
    oracle_meet: Element | None
    agree: bool | None
    kleene_steps: int | None
    closure: ClosureResult

    def lines(self, lattice: LatticeHandle, basis: Basis) -> list[str]:
        def show(x: Element | None) -> str:
            return "skipped" if x is None else lattice.format(x)

        agree = "skipped" if self.agree is None else str(self.agree).lower()
        steps = "skipped" if self.kleene_steps is None else str(self.kleene_steps)
        return [
            f"lfp = {lattice.format(self.lfp)}",
            f"closed = {basis.format(self.closed)}",
            f"oracle_kleene = {show(self.oracle_kleene)}",
            f"oracle_meet = {show(self.oracle_meet)}",
            f"agree = {agree}",
            f"kleene_steps = {steps}",
        ]


def least_fixed_point(
    problem: ClosureProblem, oracle_limit: int = ENUMERATION_LIMIT, seed: int | None = None
) -> FixpointReport:
    """Least fixed point of the operator induced by a bounded generator.

    Kleene iteration always runs (it needs at most height + 1 steps). The
    meet oracle enumerates the carrier and is skipped above
    ``oracle_limit`` elements; ``agree`` is then None unless Kleene
    disagrees.
    """
    lattice, basis, gen = problem.lattice, problem.basis, problem.generator
    result = saturate_small(problem, seed=seed)
    lfp = join_subset(basis, lattice, result.closed)
    if gamma_op(gen, basis, lattice, lfp) != lfp:
        raise AssertionError(f"saturation produced {lattice.format(lfp)}, which is not a fixed point")
    gamma = gamma_map(gen, basis, lattice)
    kleene, steps = kleene_oracle(gamma, lattice)
    if lattice.is_enumerable(oracle_limit):
        meet = deflationary_meet_oracle(gamma, basis, lattice, oracle_limit)
        agree: bool | None = lfp == kleene == meet
    else:
        meet = None
        agree = None if lfp == kleene else False
    return FixpointReport(lfp, result.closed, kleene, meet, agree, steps, result)
