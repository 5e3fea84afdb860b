"""Powerset lattices over a finite universe, their bases and presentations.

An element of ``P(A)`` is an ``int`` bitmask: bit ``i`` is set iff the
``i``-th atom of the universe is a member.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import ConfigurationError, RepresentationError
from .lattice import Basis, BasisSubset, Element, LatticeHandle, Presentation, downset, join_subset

PowersetElement = int


@dataclass(frozen=True)
class FiniteUniverse:
    """Ordered atoms; an atom's position is its bit index."""

    atoms: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.atoms)) != len(self.atoms):
            raise ConfigurationError(f"duplicate atoms in universe {self.atoms}")

    @classmethod
    def of(cls, atoms: Iterable[str]) -> FiniteUniverse:
        return cls(tuple(atoms))

    def __len__(self) -> int:
        return len(self.atoms)

    @cached_property
    def position(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.atoms)}

    def element(self, members: Iterable[str]) -> PowersetElement:
        mask = 0
        for a in members:
            try:
                mask |= 1 << self.position[a]
            except KeyError:
                raise RepresentationError(f"unknown atom {a!r}") from None
        return mask

    def members(self, x: PowersetElement) -> tuple[str, ...]:
        return tuple(a for i, a in enumerate(self.atoms) if x >> i & 1)


class PowersetLattice(LatticeHandle):
    """``P(A)`` ordered by inclusion, joins are unions."""

    def __init__(self, universe: FiniteUniverse) -> None:
        self.universe = universe
        self._full = (1 << len(universe)) - 1

    @property
    def bottom(self) -> PowersetElement:
        return 0

    @property
    def top(self) -> PowersetElement:
        return self._full

    @property
    def size(self) -> int:
        return 1 << len(self.universe)

    def leq(self, x: Element, y: Element) -> bool:
        return x & ~y == 0

    def join(self, family: Iterable[Element]) -> PowersetElement:
        acc = 0
        for x in family:
            self.check(x)
            acc |= x
        return acc

    def check(self, x: Element) -> None:
        if not isinstance(x, int) or isinstance(x, bool) or x < 0 or x & ~self._full:
            raise RepresentationError(f"{x!r} is not a subset of a {len(self.universe)}-atom universe")

    def _enumerate(self) -> Iterator[PowersetElement]:
        return iter(range(self.size))

    def upper_covers(self, x: Element) -> tuple[PowersetElement, ...]:
        return tuple(x | 1 << i for i in range(len(self.universe)) if not x >> i & 1)

    def random_element(self, rng: random.Random) -> PowersetElement:
        return rng.getrandbits(len(self.universe)) if self.universe.atoms else 0

    def format(self, x: Element) -> str:
        return "{" + ",".join(self.universe.members(x)) + "}"

    def parse(self, token: str) -> PowersetElement:
        token = token.strip()
        if not (token.startswith("{") and token.endswith("}")):
            raise RepresentationError(f"powerset element must look like {{a,b}}, got {token!r}")
        inner = token[1:-1].strip()
        return self.universe.element(a.strip() for a in inner.split(",")) if inner else 0

    def __repr__(self) -> str:
        return f"PowersetLattice({' '.join(self.universe.atoms)})"


def singleton_basis(universe: FiniteUniverse, lattice: PowersetLattice | None = None) -> Basis:
    """Atoms as basis indices, ``beta(a) = {a}``, ``a <=^B X`` iff ``a in X``."""
    lattice = lattice or PowersetLattice(universe)

    def member(b: int, x: Element) -> bool:
        return bool(x >> b & 1)

    return Basis.over(lattice, universe.atoms, [1 << i for i in range(len(universe))], leq_b=member)


def list_image(universe: FiniteUniverse, items: Sequence[str]) -> PowersetElement:
    """Subset denoted by a list: ``[] -> {}``, ``x :: l -> {x} | image(l)``."""
    if not items:
        return 0
    return universe.element((items[0],)) | list_image(universe, items[1:])


def _list_label(items: Sequence[str]) -> str:
    return "[" + ",".join(items) + "]"


def list_basis(universe: FiniteUniverse, max_len: int | None = None, lattice: PowersetLattice | None = None) -> Basis:
    """Finite lists of atoms as a basis, one canonical list per image subset.

    Lists are canonicalised to their sorted, duplicate-free form (atom order
    is universe order), so there are ``2**|A|`` indices ordered by bitmask.
    """
    n = len(universe)
    max_len = n if max_len is None else max_len
    if max_len < n:
        raise ConfigurationError(f"list basis needs max_len >= {n} to reach every subset, got {max_len}")
    lattice = lattice or PowersetLattice(universe)
    lists = [universe.members(mask) for mask in range(1 << n)]
    images = [list_image(universe, items) for items in lists]

    def contained(b: int, x: Element) -> bool:
        return images[b] & ~x == 0

    return Basis.over(lattice, [_list_label(items) for items in lists], images, leq_b=contained)


def membership_presentation(universe: FiniteUniverse) -> Presentation:
    """``J = A``, ``Y(j) = {j}``, ``R = {(j, j)}`` for the singleton basis."""
    n = len(universe)
    ys = tuple(BasisSubset.of(n, (j,)) for j in range(n))
    return Presentation(universe.atoms, ys, frozenset((j, j) for j in range(n)))


def list_presentation(basis: Basis, lattice: PowersetLattice) -> Presentation:
    """An exact presentation of ``P(A)`` over the list basis.

    ``J`` ranges over sets of at most ``|A|`` list indices and ``R_j`` is the
    downset of their join. A list below ``join(X)`` has at most ``|A|``
    atoms, and each atom is reached by one member of ``X``, so a cover of
    that size always exists inside ``X``.
    """
    n = len(basis)
    k = len(lattice.universe)
    ys: list[BasisSubset] = []
    pairs = set()
    for r in range(k + 1):
        for combo in itertools.combinations(range(n), r):
            y = BasisSubset.of(n, combo)
            j = len(ys)
            ys.append(y)
            for b in downset(basis, lattice, join_subset(basis, lattice, y)):
                pairs.add((b, j))
    return Presentation(tuple(y.format(basis.labels) for y in ys), tuple(ys), frozenset(pairs))
