"""Inductive generators: relations between basis indices and lattice elements.

A pair ``(b, a)`` in a generator reads as the rule "if every basis index
below ``a`` is in S, then ``b`` is in S". Four presentations are supported:

* :class:`Extensional` - an explicit finite list of pairs;
* :class:`RuleSet` - Horn rules ``head <- body``, the pair being
  ``(head, join(body))``;
* :class:`Canonical` - ``(b, a)`` iff ``b <=^B f(a)`` for a monotone ``f``;
  it has no bound and the saturation engine refuses it;
* :class:`DenseDerived` - built from a monotone map and a dense family,
  bounded by the downsets of the family members.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Union

from .errors import ContractError, DensityError, MonotonicityError, RepresentationError
from .lattice import (
    ENUMERATION_LIMIT,
    Basis,
    BasisSubset,
    Element,
    LatticeHandle,
    downset,
    join_subset,
)
from .report import CheckReport


@dataclass(frozen=True)
class MonotoneMap:
    """An endomap handle. ``validated`` is set by :func:`validate_monotone`."""

    apply: Callable[[Element], Element]
    name: str = "f"
    validated: bool = False

    def __call__(self, x: Element) -> Element:
        return self.apply(x)


def table_map(table: Mapping[Element, Element], lattice: LatticeHandle, name: str = "f") -> MonotoneMap:
    """A map given by a total lookup table over an enumerable carrier."""
    elems = lattice.elements()
    missing = [x for x in elems if x not in table]
    if missing:
        raise ContractError(f"map {name} is not total: no value for {lattice.format(missing[0])}")
    for x, y in table.items():
        lattice.check(x)
        lattice.check(y)
    frozen = dict(table)
    return MonotoneMap(frozen.__getitem__, name)


def check_monotone(
    f: MonotoneMap,
    lattice: LatticeHandle,
    exhaustive_limit: int = ENUMERATION_LIMIT,
    seed: int = 0,
    samples: int = 2000,
) -> CheckReport:
    """Test ``x <= y => f(x) <= f(y)`` on covering pairs.

    Exhaustive when the carrier has at most ``exhaustive_limit`` elements
    (covers generate the order), else ``samples`` random covers drawn with
    ``seed``. A violation is the pair ``(x, y)``.
    """
    if lattice.size <= exhaustive_limit:
        pairs: Iterable[tuple[Element, Element]] = lattice.cover_pairs(exhaustive_limit)
        exhaustive = True
    else:
        rng = random.Random(seed)
        drawn = []
        while len(drawn) < samples:
            x = lattice.random_element(rng)
            ups = lattice.upper_covers(x)
            if ups:
                drawn.append((x, rng.choice(ups)))
        pairs, exhaustive = drawn, False
    violations = []
    checked = 0
    for x, y in pairs:
        checked += 1
        if not lattice.leq(f(x), f(y)):
            violations.append((x, y))
    return CheckReport("monotone", tuple(violations), checked=checked, exhaustive=exhaustive)


def validate_monotone(f: MonotoneMap, lattice: LatticeHandle, **kwargs) -> MonotoneMap:
    report = check_monotone(f, lattice, **kwargs)
    if not report:
        x, y = report.violations[0]
        raise MonotonicityError(
            f"{f.name} is not monotone: {lattice.format(x)} <= {lattice.format(y)} but "
            f"{f.name}({lattice.format(x)}) = {lattice.format(f(x))} is not below "
            f"{f.name}({lattice.format(y)}) = {lattice.format(f(y))}",
            witness=(x, y),
        )
    return replace(f, validated=True)


@dataclass(frozen=True)
class DenseFamily:
    labels: tuple[str, ...]
    members: tuple[Element, ...]

    @classmethod
    def of(cls, members: Iterable[Element]) -> DenseFamily:
        ms = tuple(members)
        return cls(tuple(f"v{i}" for i in range(len(ms))), ms)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Bound:
    """Covering family ``alpha: I -> subsets of B``, each covering stored by its image."""

    labels: tuple[str, ...]
    alpha: tuple[BasisSubset, ...]

    def __len__(self) -> int:
        return len(self.alpha)

    def without(self, i: int) -> Bound:
        return Bound(self.labels[:i] + self.labels[i + 1 :], self.alpha[:i] + self.alpha[i + 1 :])


@dataclass(frozen=True)
class HornRule:
    head: int
    body: BasisSubset


def _dedup(pairs: Iterable[tuple[int, Element]]) -> tuple[tuple[int, Element], ...]:
    return tuple(dict.fromkeys(pairs))


@dataclass(frozen=True)
class Extensional:
    pairs: tuple[tuple[int, Element], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", _dedup(self.pairs))

    @cached_property
    def pair_set(self) -> frozenset[tuple[int, Element]]:
        return frozenset(self.pairs)

    def add(self, pair: tuple[int, Element]) -> Extensional:
        return Extensional(self.pairs + (pair,))


@dataclass(frozen=True)
class RuleSet:
    """Horn rules; build with :func:`rule_set` so ``pairs`` is filled in."""

    rules: tuple[HornRule, ...]
    pairs: tuple[tuple[int, Element], ...]

    @cached_property
    def pair_set(self) -> frozenset[tuple[int, Element]]:
        return frozenset(self.pairs)


@dataclass(frozen=True)
class Canonical:
    f: MonotoneMap


@dataclass(frozen=True)
class DenseDerived:
    f: MonotoneMap
    family: DenseFamily
    bound: Bound

    @cached_property
    def member_set(self) -> frozenset[Element]:
        return frozenset(self.family.members)


Generator = Union[Extensional, RuleSet, Canonical, DenseDerived]


def extensional(pairs: Iterable[tuple[int, Element]], basis: Basis, lattice: LatticeHandle) -> Extensional:
    pairs = tuple(pairs)
    for b, a in pairs:
        if not 0 <= b < len(basis):
            raise RepresentationError(f"basis position {b} out of range")
        lattice.check(a)
    return Extensional(pairs)


def rule_set(rules: Iterable[HornRule], basis: Basis, lattice: LatticeHandle) -> RuleSet:
    rs = tuple(dict.fromkeys(rules))
    for r in rs:
        if not 0 <= r.head < len(basis):
            raise RepresentationError(f"rule head {r.head} out of range")
        basis.check(r.body)
    pairs = _dedup((r.head, join_subset(basis, lattice, r.body)) for r in rs)
    return RuleSet(rs, pairs)


def canonical_generator(f: MonotoneMap) -> Canonical:
    if not f.validated:
        raise ContractError(f"canonical generator needs a validated monotone map, {f.name} is unchecked")
    return Canonical(f)


def in_phi(gen: Generator, basis: Basis, lattice: LatticeHandle, b: int, a: Element) -> bool:
    """Membership test ``(b, a)`` in the generator."""
    if isinstance(gen, (Extensional, RuleSet)):
        return (b, a) in gen.pair_set
    if isinstance(gen, Canonical):
        return basis.leq_b(b, gen.f(a))
    if isinstance(gen, DenseDerived):
        return a in gen.member_set and basis.leq_b(b, gen.f(a))
    raise TypeError(f"not a generator: {gen!r}")


def phi_pairs(gen: Generator, basis: Basis, lattice: LatticeHandle) -> Iterator[tuple[int, Element]]:
    """Enumerate the pairs of a generator.

    Canonical generators relate every element, so they are enumerated by a
    scan of the whole carrier, which must be enumerable.
    """
    if isinstance(gen, (Extensional, RuleSet)):
        yield from gen.pairs
    elif isinstance(gen, Canonical):
        for a in lattice.elements():
            for b in downset(basis, lattice, gen.f(a)):
                yield b, a
    elif isinstance(gen, DenseDerived):
        seen = set()
        for a in gen.family.members:
            if a in seen:
                continue
            seen.add(a)
            for b in downset(basis, lattice, gen.f(a)):
                yield b, a
    else:
        raise TypeError(f"not a generator: {gen!r}")


def s_phi(gen: Generator, basis: Basis, lattice: LatticeHandle, a: Element) -> BasisSubset:
    """``{b | exists a' with (b, a') in gen and a' <= a}``."""
    lattice.check(a)
    n = len(basis)
    if isinstance(gen, (Extensional, RuleSet)):
        mask = 0
        for b, a2 in gen.pairs:
            if lattice.leq(a2, a):
                mask |= 1 << b
        return BasisSubset(mask, n)
    if isinstance(gen, Canonical):
        return downset(basis, lattice, gen.f(a))
    if isinstance(gen, DenseDerived):
        mask = 0
        for g in gen.family.members:
            if lattice.leq(g, a):
                mask |= downset(basis, lattice, gen.f(g)).mask
        return BasisSubset(mask, n)
    raise TypeError(f"not a generator: {gen!r}")


def gamma_op(gen: Generator, basis: Basis, lattice: LatticeHandle, a: Element) -> Element:
    """The induced operator: join of ``s_phi(gen, a)``."""
    return join_subset(basis, lattice, s_phi(gen, basis, lattice, a))


def gamma_map(gen: Generator, basis: Basis, lattice: LatticeHandle) -> MonotoneMap:
    """The induced operator as a map handle. Monotone for every generator."""
    return MonotoneMap(lambda a: gamma_op(gen, basis, lattice, a), name="gamma", validated=True)


def check_dense(
    f: MonotoneMap,
    family: DenseFamily,
    basis: Basis,
    lattice: LatticeHandle,
    sample: Iterable[Element] | None = None,
) -> CheckReport:
    """For every ``b <=^B f(a)`` find ``v`` with ``b <=^B f(gamma(v))`` and ``gamma(v) <= a``.

    ``a`` ranges over the whole carrier unless ``sample`` is given.
    Violations are ``(b, a)``; the first witness found for each satisfied
    case is listed in ``notes`` as ``"b a -> v"``.
    """
    if not f.validated:
        raise ContractError(f"density is only defined for validated monotone maps, {f.name} is unchecked")
    exhaustive = sample is None
    xs = list(lattice.elements()) if sample is None else list(sample)
    images = [f(g) for g in family.members]
    violations = []
    witnesses = []
    checked = 0
    for a in xs:
        for b in downset(basis, lattice, f(a)):
            checked += 1
            for v, g in enumerate(family.members):
                if lattice.leq(g, a) and basis.leq_b(b, images[v]):
                    witnesses.append(f"{basis.labels[b]} {lattice.format(a)} -> {family.labels[v]}")
                    break
            else:
                violations.append((b, a))
    return CheckReport("dense", tuple(violations), checked=checked, exhaustive=exhaustive, notes=tuple(witnesses))


def dense_generator(
    f: MonotoneMap, family: DenseFamily, basis: Basis, lattice: LatticeHandle
) -> tuple[DenseDerived, Bound]:
    """Bounded generator ``(b, a)`` iff ``a = gamma(v)`` for some ``v`` and ``b <=^B f(a)``.

    The bound indexes the family: ``alpha(v) = downset(gamma(v))``.
    """
    report = check_dense(f, family, basis, lattice)
    if not report:
        b, a = report.violations[0]
        raise DensityError(
            f"{f.name} is not dense for the family: {basis.labels[b]} <= {f.name}({lattice.format(a)}) "
            f"has no witness below {lattice.format(a)}"
        )
    for g in family.members:
        lattice.check(g)
    bound = Bound(family.labels, tuple(downset(basis, lattice, g) for g in family.members))
    return DenseDerived(f, family, bound), bound


def bound_of(gen: Generator, basis: Basis, lattice: LatticeHandle) -> Bound | None:
    """The bound carried by a generator; None for canonical generators.

    Finite pair lists are bounded by one covering per pair, the downset of
    the pair's element.
    """
    if isinstance(gen, Canonical):
        return None
    if isinstance(gen, DenseDerived):
        return gen.bound
    pairs = gen.pairs
    return Bound(tuple(f"p{k}" for k in range(len(pairs))), tuple(downset(basis, lattice, a) for _, a in pairs))


def check_bound(gen: Generator, bound: Bound, basis: Basis, lattice: LatticeHandle) -> CheckReport:
    """Every pair ``(b, a)`` has some ``i`` with ``alpha(i) == downset(a)``. Violations are ``(b, a)``."""
    images = {s.mask for s in bound.alpha}
    for s in bound.alpha:
        basis.check(s)
    violations = []
    checked = 0
    for b, a in phi_pairs(gen, basis, lattice):
        checked += 1
        if downset(basis, lattice, a).mask not in images:
            violations.append((b, a))
    return CheckReport("bound", tuple(violations), checked=checked)


def bound_mediated(gen: Generator, bound: Bound, basis: Basis, lattice: LatticeHandle, a: Element) -> BasisSubset:
    """``{b | exists i, alpha(i) <= downset(a) and (b, join(alpha(i))) in gen}``."""
    below = downset(basis, lattice, a)
    mask = 0
    for cover in bound.alpha:
        if cover <= below:
            top = join_subset(basis, lattice, cover)
            for b in range(len(basis)):
                if in_phi(gen, basis, lattice, b, top):
                    mask |= 1 << b
    return BasisSubset(mask, len(basis))


def check_local(
    gen: Generator,
    basis: Basis,
    lattice: LatticeHandle,
    sample: Iterable[Element] | None = None,
    bound: Bound | None = None,
) -> CheckReport:
    """Compare ``s_phi`` with its bound-mediated description at each sampled element.

    Violations are ``(a, direct, mediated)``.
    """
    bound = bound if bound is not None else bound_of(gen, basis, lattice)
    if bound is None:
        raise ContractError("locality check needs a bound; canonical generators carry none")
    xs = list(lattice.elements()) if sample is None else list(sample)
    violations = []
    for a in xs:
        direct = s_phi(gen, basis, lattice, a)
        mediated = bound_mediated(gen, bound, basis, lattice, a)
        if direct != mediated:
            violations.append((a, direct, mediated))
    return CheckReport("local", tuple(violations), checked=len(xs), exhaustive=sample is None)


def constant_generator(c: Element, basis: Basis, lattice: LatticeHandle) -> Extensional:
    """Bounded generator for the constant map at ``c``: ``(b, bottom)`` for ``b <=^B c``."""
    return Extensional(tuple((b, lattice.bottom) for b in downset(basis, lattice, c)))

