"""Least closed subsets of a basis.

Two engines compute the least subset of ``B`` closed under containment and
under a generator:

* :func:`saturate_small` quantifies only over the presentation indices
  ``J`` and the bound indices ``I``, and runs a worklist over those finitely
  many rule instances. This is the production path.
* :func:`saturate_large` quantifies over every subset ``U`` of ``B`` and
  every element of the carrier, by naive iteration. It is exponential and
  guarded, and exists to cross-check the small engine.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import ContractError, GuardError, UnboundedGeneratorError
from .generator import (
    Bound,
    Canonical,
    Generator,
    bound_of,
    check_bound,
    in_phi,
)
from .lattice import (
    ENUMERATION_LIMIT,
    Basis,
    BasisSubset,
    LatticeHandle,
    Presentation,
    check_presentation,
    downset,
    join_subset,
)

LARGE_BASIS_LIMIT = 14

UNBOUNDED_MESSAGE = (
    "generator not bounded: a canonical generator relates a basis index to every element "
    "above some point, so no finite family of coverings is known for it; "
    "supply rules or a dense family instead"
)


@dataclass(frozen=True)
class ClosureProblem:
    lattice: LatticeHandle
    basis: Basis
    presentation: Presentation
    generator: Generator
    bound: Bound

    @classmethod
    def build(
        cls,
        lattice: LatticeHandle,
        basis: Basis,
        presentation: Presentation,
        generator: Generator,
        bound: Bound | None = None,
        validate: bool = True,
    ) -> ClosureProblem:
        """Assemble a problem, deriving the bound from the generator when omitted.

        With ``validate`` the presentation and the bound are checked and a
        ContractError names the first violation.
        """
        if isinstance(generator, Canonical) and bound is None:
            raise UnboundedGeneratorError(UNBOUNDED_MESSAGE)
        bound = bound if bound is not None else bound_of(generator, basis, lattice)
        if bound is None:
            raise UnboundedGeneratorError(UNBOUNDED_MESSAGE)
        if validate:
            rep = check_presentation(presentation, basis, lattice)
            if not rep:
                b, x, direction = rep.violations[0]
                raise ContractError(
                    f"presentation is not exact at b = {basis.labels[b]}, X = {basis.format(x)}, direction {direction}"
                )
            rep = check_bound(generator, bound, basis, lattice)
            if not rep:
                b, a = rep.violations[0]
                raise ContractError(f"bound does not cover the pair ({basis.labels[b]}, {lattice.format(a)})")
        return cls(lattice, basis, presentation, generator, bound)


@dataclass(frozen=True)
class Firing:
    kind: str  # "c" for containment rules, "phi" for generator rules
    rule_id: str
    added: tuple[int, ...]


@dataclass(frozen=True)
class ClosureResult:
    closed: BasisSubset
    firings: tuple[Firing, ...] = field(default=())
    passes: int = 0

    def trace_lines(self, basis: Basis) -> list[str]:
        return [
            " ".join(["fire", f.kind, f.rule_id, "+="] + [basis.labels[b] for b in f.added]) for f in self.firings
        ]


def replay(firings: Iterable[Firing], size: int) -> BasisSubset:
    mask = 0
    for f in firings:
        for b in f.added:
            mask |= 1 << b
    return BasisSubset(mask, size)


@dataclass(frozen=True)
class _Rule:
    kind: str
    rule_id: str
    premise: int
    conclusion: int


def _small_rules(problem: ClosureProblem) -> list[_Rule]:
    basis, lattice, pres = problem.basis, problem.lattice, problem.presentation
    rules = [
        _Rule("c", pres.j_labels[j], pres.y[j].mask, pres.r_masks[j]) for j in range(len(pres.y)) if pres.r_masks[j]
    ]
    for i, cover in enumerate(problem.bound.alpha):
        top = join_subset(basis, lattice, cover)
        premise = downset(basis, lattice, top).mask
        for b in range(len(basis)):
            if in_phi(problem.generator, basis, lattice, b, top):
                rules.append(_Rule("phi", f"{problem.bound.labels[i]}:{basis.labels[b]}", premise, 1 << b))
    return rules


def saturate_small(problem: ClosureProblem, seed: int | None = None) -> ClosureResult:
    """Least subset closed under the presentation rules and the bounded generator rules.

    Rule instances: one per ``j`` (``Y(j) <= S => R_j <= S``) and one per
    ``(i, b)`` with ``(b, join(alpha(i)))`` in the generator
    (``downset(join(alpha(i))) <= S => b in S``). The worklist is FIFO and a
    rule is re-enqueued only when one of its premise indices enters ``S``.
    With ``seed`` the initial order is shuffled and rules are popped in
    random order instead; the result is the same.
    """
    if isinstance(problem.generator, Canonical):
        raise UnboundedGeneratorError(UNBOUNDED_MESSAGE)
    n = len(problem.basis)
    rules = _small_rules(problem)
    rng = random.Random(seed) if seed is not None else None
    if rng is not None:
        rng.shuffle(rules)
    watchers: list[list[int]] = [[] for _ in range(n)]
    for k, r in enumerate(rules):
        m = r.premise
        while m:
            low = m & -m
            watchers[low.bit_length() - 1].append(k)
            m ^= low
    pending = deque(range(len(rules)))
    queued = [True] * len(rules)
    s = 0
    firings: list[Firing] = []
    passes = 0
    while pending:
        if rng is not None:
            pending.rotate(-rng.randrange(len(pending)))
        k = pending.popleft()
        queued[k] = False
        passes += 1
        r = rules[k]
        if r.premise & ~s or not r.conclusion & ~s:
            continue
        added = r.conclusion & ~s
        s |= added
        new = BasisSubset(added, n)
        firings.append(Firing(r.kind, r.rule_id, tuple(new)))
        for b in new:
            for k2 in watchers[b]:
                if not queued[k2]:
                    queued[k2] = True
                    pending.append(k2)
    return ClosureResult(BasisSubset(s, n), tuple(firings), passes)


def find_c_violation(s: BasisSubset, pres: Presentation) -> int | None:
    """A ``j`` with ``Y(j) <= s`` but ``R_j`` not inside ``s``, or None."""
    for j, yj in enumerate(pres.y):
        if yj.mask & ~s.mask == 0 and pres.r_masks[j] & ~s.mask:
            return j
    return None


def is_c_closed_small(s: BasisSubset, pres: Presentation) -> bool:
    return find_c_violation(s, pres) is None


def find_phi_violation(
    s: BasisSubset, gen: Generator, bound: Bound, basis: Basis, lattice: LatticeHandle
) -> tuple[int, int] | None:
    """An ``(i, b)`` whose rule is enabled in ``s`` with ``b`` missing, or None."""
    basis.check(s)
    for i, cover in enumerate(bound.alpha):
        top = join_subset(basis, lattice, cover)
        if not downset(basis, lattice, top) <= s:
            continue
        for b in range(len(basis)):
            if b not in s and in_phi(gen, basis, lattice, b, top):
                return i, b
    return None


def is_phi_closed_small(s: BasisSubset, gen: Generator, bound: Bound, basis: Basis, lattice: LatticeHandle) -> bool:
    return find_phi_violation(s, gen, bound, basis, lattice) is None


def _submasks(mask: int) -> Iterable[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def is_c_closed_large(s: BasisSubset, basis: Basis, lattice: LatticeHandle) -> bool:
    """Every ``U <= s`` has ``downset(join(U)) <= s``. Enumerates all such ``U``."""
    basis.check(s)
    if len(basis) > LARGE_BASIS_LIMIT:
        raise GuardError(f"containment check enumerates subsets; |B| = {len(basis)} > {LARGE_BASIS_LIMIT}")
    for u in _submasks(s.mask):
        if downset(basis, lattice, join_subset(basis, lattice, BasisSubset(u, len(basis)))).mask & ~s.mask:
            return False
    return True


def is_phi_closed_large(s: BasisSubset, gen: Generator, basis: Basis, lattice: LatticeHandle) -> bool:
    """For every element ``a`` and ``b``: ``(b, a)`` in gen and ``downset(a) <= s`` give ``b in s``."""
    basis.check(s)
    for a in lattice.elements():
        if downset(basis, lattice, a) <= s:
            for b in range(len(basis)):
                if b not in s and in_phi(gen, basis, lattice, b, a):
                    return False
    return True


def saturate_large(
    gen: Generator,
    basis: Basis,
    lattice: LatticeHandle,
    max_basis: int = LARGE_BASIS_LIMIT,
    max_carrier: int = ENUMERATION_LIMIT,
) -> BasisSubset:
    """Least subset closed under all containments and all generator pairs.

    Naive iteration from the empty set: each pass applies the containment
    rule for every ``U`` inside the current set and the generator rule for
    every element of the carrier, until nothing changes.
    """
    n = len(basis)
    if n > max_basis:
        raise GuardError(f"saturate_large enumerates 2^|B| subsets; |B| = {n} exceeds the limit {max_basis}")
    if lattice.size > max_carrier:
        raise GuardError(f"saturate_large enumerates the carrier; {lattice.size} elements exceed the limit {max_carrier}")
    closure_of: dict[int, int] = {}

    def c_rule(u: int) -> int:
        if u not in closure_of:
            closure_of[u] = downset(basis, lattice, join_subset(basis, lattice, BasisSubset(u, n))).mask
        return closure_of[u]

    phi_rules = []
    for a in lattice.elements():
        heads = 0
        for b in range(n):
            if in_phi(gen, basis, lattice, b, a):
                heads |= 1 << b
        if heads:
            phi_rules.append((downset(basis, lattice, a).mask, heads))

    s = 0
    while True:
        new = s
        for u in _submasks(s):
            new |= c_rule(u)
        for premise, heads in phi_rules:
            if premise & ~s == 0:
                new |= heads
        if new == s:
            return BasisSubset(s, n)
        s = new


def check_initiality(
    closed: BasisSubset,
    candidate: BasisSubset,
    gen: Generator,
    pres: Presentation,
    bound: Bound,
    basis: Basis,
    lattice: LatticeHandle,
) -> bool:
    """If ``candidate`` is closed under both small rule families then ``closed <= candidate``."""
    if is_c_closed_small(candidate, pres) and is_phi_closed_small(candidate, gen, bound, basis, lattice):
        return closed <= candidate
    return True
