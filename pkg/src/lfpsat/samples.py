"""Seeded instance builders: standard small lattices, random generators and maps."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .generator import Extensional, HornRule, MonotoneMap, RuleSet, extensional, rule_set
from .lattice import Basis, BasisSubset, Element, ExplicitLattice, LatticeHandle, Presentation
from .powerset import FiniteUniverse, PowersetLattice, membership_presentation, singleton_basis


def chain(n: int) -> ExplicitLattice:
    elems = [f"c{i}" for i in range(n)]
    return ExplicitLattice.from_relation(elems, zip(elems, elems[1:]))


def diamond() -> ExplicitLattice:
    """M3: bottom, three pairwise incomparable atoms, top."""
    elems = ["0", "a", "b", "c", "1"]
    pairs = [("0", x) for x in "abc"] + [(x, "1") for x in "abc"]
    return ExplicitLattice.from_relation(elems, pairs)


def pentagon() -> ExplicitLattice:
    """N5: 0 < a < b < 1 and 0 < c < 1."""
    return ExplicitLattice.from_relation(["0", "a", "b", "c", "1"], [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


def hexagon() -> ExplicitLattice:
    """Six elements, two 2-chains between 0 and 1; contains N5 so it is not modular."""
    elems = ["0", "a", "b", "c", "d", "1"]
    pairs = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "d"), ("d", "c"), ("c", "1")]
    return ExplicitLattice.from_relation(elems, pairs)


def random_closure_lattice(rng: random.Random, n_atoms: int = 3, extra: int = 3) -> ExplicitLattice:
    """Random lattice of an intersection-closed family of subsets of ``n_atoms`` points."""
    full = (1 << n_atoms) - 1
    family = {full}
    for _ in range(extra):
        family.add(rng.getrandbits(n_atoms))
    changed = True
    while changed:
        changed = False
        for x in list(family):
            for y in list(family):
                if x & y not in family:
                    family.add(x & y)
                    changed = True
    members = sorted(family)
    names = {m: "s" + format(m, f"0{n_atoms}b") for m in members}
    pairs = [(names[x], names[y]) for x in members for y in members if x & ~y == 0]
    return ExplicitLattice.from_relation([names[m] for m in members], pairs)


@dataclass(frozen=True)
class Fixture:
    universe: FiniteUniverse
    lattice: PowersetLattice
    basis: Basis
    presentation: Presentation
    generator: RuleSet


def reachability_fixture() -> Fixture:
    """``P({x, y, z})`` with rules ``x <-``, ``y <- x``, ``z <- y``."""
    u = FiniteUniverse.of("xyz")
    lat = PowersetLattice(u)
    basis = singleton_basis(u, lat)
    rules = [
        HornRule(0, basis.subset([])),
        HornRule(1, basis.subset(["x"])),
        HornRule(2, basis.subset(["y"])),
    ]
    return Fixture(u, lat, basis, membership_presentation(u), rule_set(rules, basis, lat))


def random_rule_set(basis: Basis, lattice: LatticeHandle, rng: random.Random, max_rules: int | None = None) -> RuleSet:
    """Up to ``max_rules`` (default ``2|B|``) rules with bodies of at most three indices."""
    n = len(basis)
    count = rng.randint(0, max_rules if max_rules is not None else 2 * n)
    rules = []
    for _ in range(count):
        body = rng.sample(range(n), rng.randint(0, min(3, n)))
        rules.append(HornRule(rng.randrange(n), BasisSubset.of(n, body)))
    return rule_set(rules, basis, lattice)


def random_extensional(basis: Basis, lattice: LatticeHandle, rng: random.Random, max_pairs: int | None = None) -> Extensional:
    n = len(basis)
    count = rng.randint(0, max_pairs if max_pairs is not None else 2 * n)
    return extensional(((rng.randrange(n), lattice.random_element(rng)) for _ in range(count)), basis, lattice)


def _linear_extension(lattice: LatticeHandle) -> tuple[list[Element], dict[Element, list[Element]]]:
    elems = lattice.elements()
    lower: dict[Element, list[Element]] = {x: [] for x in elems}
    indegree = {x: 0 for x in elems}
    for x, y in lattice.cover_pairs():
        lower[y].append(x)
        indegree[y] += 1
    queue = deque(x for x in elems if indegree[x] == 0)
    order = []
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in lattice.upper_covers(x):
            indegree[y] -= 1
            if indegree[y] == 0:
                queue.append(y)
    return order, lower


def monotone_completion(seed_fn: dict[Element, Element], lattice: LatticeHandle) -> dict[Element, Element]:
    """``f(x) = join{g(y) | y <= x}``, computed along a linear extension via lower covers."""
    order, lower = _linear_extension(lattice)
    table: dict[Element, Element] = {}
    for x in order:
        table[x] = lattice.join([seed_fn[x]] + [table[y] for y in lower[x]])
    return table


def random_monotone_map(lattice: LatticeHandle, rng: random.Random, density: float = 0.25, name: str = "f") -> MonotoneMap:
    """Monotone completion of a random function that is bottom except at a ``density`` fraction of points."""
    seed_fn = {
        x: (lattice.random_element(rng) if rng.random() < density else lattice.bottom) for x in lattice.elements()
    }
    table = monotone_completion(seed_fn, lattice)
    return MonotoneMap(table.__getitem__, name)
