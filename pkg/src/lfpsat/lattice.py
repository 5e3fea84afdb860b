"""Finite posets, sup lattices with a basis, and basis subsets.

Everything here is finite. A lattice is either a powerset over a finite
universe (see :mod:`lfpsat.powerset`) or an explicit table of elements with
an order relation. A :class:`Basis` is a finite family ``beta: B -> L`` such
that every element is the join of the basis images below it; subsets of
``B`` are stored as bitmasks in :class:`BasisSubset`.
"""

from __future__ import annotations

import itertools
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .errors import ConfigurationError, GuardError, RepresentationError
from .report import CheckReport

Element = Hashable

ENUMERATION_LIMIT = 4096


class LatticeHandle(ABC):
    """A finite sup lattice with canonical element representatives.

    Equal elements have equal representatives, so ``==`` is lattice equality.
    """

    @property
    @abstractmethod
    def bottom(self) -> Element: ...

    @property
    @abstractmethod
    def size(self) -> int: ...

    @abstractmethod
    def leq(self, x: Element, y: Element) -> bool: ...

    @abstractmethod
    def join(self, family: Iterable[Element]) -> Element: ...

    @abstractmethod
    def check(self, x: Element) -> None:
        """Raise RepresentationError unless ``x`` is an element of this carrier."""

    @abstractmethod
    def _enumerate(self) -> Iterator[Element]: ...

    @abstractmethod
    def upper_covers(self, x: Element) -> tuple[Element, ...]: ...

    @abstractmethod
    def random_element(self, rng: random.Random) -> Element: ...

    @abstractmethod
    def format(self, x: Element) -> str: ...

    @abstractmethod
    def parse(self, token: str) -> Element: ...

    @property
    def top(self) -> Element:
        return self.join(self._enumerate())

    def is_enumerable(self, limit: int = ENUMERATION_LIMIT) -> bool:
        return self.size <= limit

    def elements(self, limit: int = ENUMERATION_LIMIT) -> tuple[Element, ...]:
        if self.size > limit:
            raise GuardError(f"carrier has {self.size} elements, enumeration limit is {limit}")
        return tuple(self._enumerate())

    def cover_pairs(self, limit: int = ENUMERATION_LIMIT) -> Iterator[tuple[Element, Element]]:
        """All pairs ``(x, y)`` where ``y`` covers ``x``.

        On a finite poset the order is the reflexive-transitive closure of
        this relation, so checking a property on covers checks it on ``<=``.
        """
        for x in self.elements(limit):
            for y in self.upper_covers(x):
                yield x, y

    def join2(self, x: Element, y: Element) -> Element:
        return self.join((x, y))


@dataclass(frozen=True)
class PosetTable:
    """A finite poset given by its full order relation."""

    elements: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    @classmethod
    def from_relation(cls, elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> PosetTable:
        """Build the reflexive-transitive closure of ``pairs`` over ``elements``."""
        elems = tuple(elements)
        if len(set(elems)) != len(elems):
            raise ConfigurationError("duplicate element identifiers")
        known = set(elems)
        up = {e: {e} for e in elems}
        for x, y in pairs:
            if x not in known or y not in known:
                raise ConfigurationError(f"order pair ({x}, {y}) mentions an unknown element")
            up[x].add(y)
        # Warshall closure
        for k in elems:
            for x in elems:
                if k in up[x]:
                    up[x] |= up[k]
        return cls(elems, frozenset((x, y) for x in elems for y in up[x]))

    def leq(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs

    def check_laws(self) -> CheckReport:
        violations = []
        for x in self.elements:
            if not self.leq(x, x):
                violations.append(("reflexive", x))
        for x, y in itertools.product(self.elements, repeat=2):
            if x != y and self.leq(x, y) and self.leq(y, x):
                violations.append(("antisymmetric", x, y))
        for x, y, z in itertools.product(self.elements, repeat=3):
            if self.leq(x, y) and self.leq(y, z) and not self.leq(x, z):
                violations.append(("transitive", x, y, z))
        n = len(self.elements)
        return CheckReport("poset", tuple(violations), checked=n**3)


class ExplicitLattice(LatticeHandle):
    """A lattice given by an explicit :class:`PosetTable`.

    Construction fails unless the poset has a least element and every pair
    of elements has a least upper bound.
    """

    def __init__(self, poset: PosetTable) -> None:
        report = poset.check_laws()
        if not report:
            raise ConfigurationError(f"order is not a partial order: {report.violations[0]}")
        self.poset = poset
        elems = poset.elements
        if not elems:
            raise ConfigurationError("explicit lattice needs at least one element")
        self._index = {e: i for i, e in enumerate(elems)}
        self._up = {x: frozenset(y for y in elems if poset.leq(x, y)) for x in elems}
        bottoms = [x for x in elems if len(self._up[x]) == len(elems)]
        if not bottoms:
            raise ConfigurationError("order has no least element (the empty join)")
        self._bottom = bottoms[0]
        self._join: dict[tuple[str, str], str] = {}
        for x, y in itertools.combinations_with_replacement(elems, 2):
            uppers = self._up[x] & self._up[y]
            least = [u for u in uppers if uppers <= self._up[u]]
            if not least:
                raise ConfigurationError(f"elements {x} and {y} have no least upper bound")
            self._join[x, y] = self._join[y, x] = least[0]
        self._covers = {
            x: tuple(
                y
                for y in elems
                if y != x
                and y in self._up[x]
                and not any(z not in (x, y) and z in self._up[x] and y in self._up[z] for z in elems)
            )
            for x in elems
        }

    @classmethod
    def from_relation(cls, elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> ExplicitLattice:
        return cls(PosetTable.from_relation(elements, pairs))

    @property
    def bottom(self) -> str:
        return self._bottom

    @property
    def size(self) -> int:
        return len(self.poset.elements)

    def leq(self, x: Element, y: Element) -> bool:
        return y in self._up[x]

    def join(self, family: Iterable[Element]) -> str:
        acc = self._bottom
        for x in family:
            self.check(x)
            acc = self._join[acc, x]
        return acc

    def check(self, x: Element) -> None:
        if x not in self._index:
            raise RepresentationError(f"{x!r} is not an element of this explicit lattice")

    def _enumerate(self) -> Iterator[str]:
        return iter(self.poset.elements)

    def upper_covers(self, x: Element) -> tuple[str, ...]:
        return self._covers[x]

    def random_element(self, rng: random.Random) -> str:
        return rng.choice(self.poset.elements)

    def format(self, x: Element) -> str:
        return str(x)

    def parse(self, token: str) -> str:
        self.check(token)
        return token

    def join_irreducibles(self) -> tuple[str, ...]:
        """Elements that are not the join of the elements strictly below them."""
        out = []
        for x in self.poset.elements:
            below = [y for y in self.poset.elements if y != x and self.leq(y, x)]
            if self.join(below) != x:
                out.append(x)
        return tuple(out)

    def __repr__(self) -> str:
        return f"ExplicitLattice({len(self.poset.elements)} elements)"


@dataclass(frozen=True)
class BasisSubset:
    """A subset of a basis index set ``{0, ..., size - 1}`` stored as a bitmask."""

    mask: int
    size: int

    def __post_init__(self) -> None:
        if self.size < 0 or self.mask < 0 or self.mask >> self.size:
            raise RepresentationError(f"mask {self.mask:#x} does not fit a basis of size {self.size}")

    @classmethod
    def of(cls, size: int, positions: Iterable[int]) -> BasisSubset:
        mask = 0
        for p in positions:
            if not 0 <= p < size:
                raise RepresentationError(f"basis position {p} out of range for size {size}")
            mask |= 1 << p
        return cls(mask, size)

    @classmethod
    def empty(cls, size: int) -> BasisSubset:
        return cls(0, size)

    @classmethod
    def full(cls, size: int) -> BasisSubset:
        return cls((1 << size) - 1, size)

    @classmethod
    def all_subsets(cls, size: int) -> Iterator[BasisSubset]:
        for mask in range(1 << size):
            yield cls(mask, size)

    def _same(self, other: BasisSubset) -> None:
        if self.size != other.size:
            raise RepresentationError(f"basis subsets of sizes {self.size} and {other.size} do not mix")

    def __contains__(self, pos: object) -> bool:
        return isinstance(pos, int) and 0 <= pos < self.size and bool(self.mask >> pos & 1)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __or__(self, other: BasisSubset) -> BasisSubset:
        self._same(other)
        return BasisSubset(self.mask | other.mask, self.size)

    def __and__(self, other: BasisSubset) -> BasisSubset:
        self._same(other)
        return BasisSubset(self.mask & other.mask, self.size)

    def __sub__(self, other: BasisSubset) -> BasisSubset:
        self._same(other)
        return BasisSubset(self.mask & ~other.mask, self.size)

    def __le__(self, other: BasisSubset) -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: BasisSubset) -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: BasisSubset) -> bool:
        return other <= self

    def __gt__(self, other: BasisSubset) -> bool:
        return other < self

    def issubset(self, other: BasisSubset) -> bool:
        return self <= other

    def with_(self, pos: int) -> BasisSubset:
        return self | BasisSubset.of(self.size, (pos,))

    def format(self, labels: Sequence[str]) -> str:
        return "{" + ",".join(labels[p] for p in self) + "}"

    def __repr__(self) -> str:
        return f"BasisSubset({sorted(self)}, size={self.size})"


@dataclass(frozen=True, eq=False)
class Basis:
    """A finite family ``beta: B -> L`` together with the test ``b <=^B x``.

    ``leq_b`` is kept separate from the lattice order so that instances can
    supply a cheaper decision procedure (membership, for powersets). Use
    :meth:`over` to build one whose test defers to the lattice order.
    """

    labels: tuple[str, ...]
    images: tuple[Element, ...]
    leq_b: Callable[[int, Element], bool] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.images):
            raise ConfigurationError("basis needs one image per index")
        if len(set(self.labels)) != len(self.labels):
            raise ConfigurationError("duplicate basis labels")

    @classmethod
    def over(
        cls,
        lattice: LatticeHandle,
        labels: Sequence[str],
        images: Sequence[Element],
        leq_b: Callable[[int, Element], bool] | None = None,
    ) -> Basis:
        imgs = tuple(images)
        for x in imgs:
            lattice.check(x)
        if leq_b is None:

            @lru_cache(maxsize=None)
            def leq_b(b: int, x: Element) -> bool:
                return lattice.leq(imgs[b], x)

        return cls(tuple(labels), imgs, leq_b)

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def position(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise RepresentationError(f"unknown basis index {label!r}") from None

    def subset(self, labels: Iterable[str]) -> BasisSubset:
        return BasisSubset.of(len(self), (self.position(lb) for lb in labels))

    def empty(self) -> BasisSubset:
        return BasisSubset.empty(len(self))

    def full(self) -> BasisSubset:
        return BasisSubset.full(len(self))

    def check(self, s: BasisSubset) -> None:
        if s.size != len(self):
            raise RepresentationError(f"subset of size {s.size} used with a basis of size {len(self)}")

    def format(self, s: BasisSubset) -> str:
        return s.format(self.labels)


def explicit_basis(lattice: ExplicitLattice, elements: Sequence[str] | None = None) -> Basis:
    """A basis whose indices are lattice elements, mapped by the identity.

    Defaults to the join-irreducible elements, the smallest basis a finite
    lattice admits.
    """
    chosen = lattice.join_irreducibles() if elements is None else tuple(elements)
    return Basis.over(lattice, chosen, chosen)


def downset(basis: Basis, lattice: LatticeHandle, x: Element) -> BasisSubset:
    """The basis indices ``b`` with ``b <=^B x``."""
    lattice.check(x)
    mask = 0
    for b in range(len(basis)):
        if basis.leq_b(b, x):
            mask |= 1 << b
    return BasisSubset(mask, len(basis))


def join_subset(basis: Basis, lattice: LatticeHandle, s: BasisSubset) -> Element:
    """Join of the basis images of ``s``."""
    basis.check(s)
    return lattice.join(basis.images[b] for b in s)


def infimum(basis: Basis, lattice: LatticeHandle, family: Iterable[Element]) -> Element:
    """Greatest lower bound, built as the join of basis elements below every member."""
    members = list(family)
    mask = 0
    for b in range(len(basis)):
        if all(basis.leq_b(b, a) for a in members):
            mask |= 1 << b
    return join_subset(basis, lattice, BasisSubset(mask, len(basis)))


def _test_elements(
    lattice: LatticeHandle, sample: Iterable[Element] | None, seed: int, samples: int
) -> tuple[list[Element], bool]:
    if sample is not None:
        return list(sample), False
    if lattice.is_enumerable():
        return list(lattice.elements()), True
    rng = random.Random(seed)
    return [lattice.bottom, lattice.top] + [lattice.random_element(rng) for _ in range(samples)], False


def validate_basis(
    basis: Basis,
    lattice: LatticeHandle,
    sample: Iterable[Element] | None = None,
    seed: int = 0,
    samples: int = 256,
) -> CheckReport:
    """Check ``x == join(downset(x))`` and that ``leq_b`` agrees with the order.

    Exhaustive on enumerable carriers, otherwise over ``samples`` seeded
    random elements. Violations are ``("join", x, got)`` or
    ``("leq_b", b, x)``.
    """
    xs, exhaustive = _test_elements(lattice, sample, seed, samples)
    violations: list[tuple] = []
    for x in xs:
        for b in range(len(basis)):
            if basis.leq_b(b, x) != lattice.leq(basis.images[b], x):
                violations.append(("leq_b", b, x))
        got = join_subset(basis, lattice, downset(basis, lattice, x))
        if got != x:
            violations.append(("join", x, got))
    return CheckReport("basis", tuple(violations), checked=len(xs), exhaustive=exhaustive)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation ``(J, Y, R)`` of a lattice over a basis.

    ``r_pairs`` holds ``(b, j)``: basis index ``b`` is covered by ``Y(j)``.
    Exactness means ``b <=^B join(X)`` iff some ``j`` has ``Y(j) <= X`` and
    ``(b, j)`` in ``r_pairs``.
    """

    j_labels: tuple[str, ...]
    y: tuple[BasisSubset, ...]
    r_pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if len(self.j_labels) != len(self.y):
            raise ConfigurationError("presentation needs one Y(j) per index j")
        sizes = {s.size for s in self.y}
        if len(sizes) > 1:
            raise ConfigurationError("presentation mixes subsets of different bases")
        n = sizes.pop() if sizes else None
        for b, j in self.r_pairs:
            if not 0 <= j < len(self.y) or (n is not None and not 0 <= b < n):
                raise ConfigurationError(f"presentation pair ({b}, {j}) out of range")

    @cached_property
    def r_masks(self) -> tuple[int, ...]:
        masks = [0] * len(self.y)
        for b, j in self.r_pairs:
            masks[j] |= 1 << b
        return tuple(masks)

    def r_j(self, j: int) -> BasisSubset:
        return BasisSubset(self.r_masks[j], self.y[j].size)

    def covers(self, b: int, x: BasisSubset) -> int | None:
        """Some ``j`` with ``Y(j) <= x`` and ``(b, j)`` in R, or None."""
        for j, yj in enumerate(self.y):
            if self.r_masks[j] >> b & 1 and yj.mask & ~x.mask == 0:
                return j
        return None

    def without(self, pair: tuple[int, int]) -> Presentation:
        return Presentation(self.j_labels, self.y, self.r_pairs - {pair})


TAUTOLOGICAL_LIMIT = 12


def tautological_presentation(basis: Basis, lattice: LatticeHandle, limit: int = TAUTOLOGICAL_LIMIT) -> Presentation:
    """``J`` = every basis subset, ``Y`` = identity, ``R = {(b, U) | b <=^B join(U)}``."""
    n = len(basis)
    if n > limit:
        raise GuardError(f"tautological presentation needs |B| <= {limit}, basis has {n}")
    ys = tuple(BasisSubset.all_subsets(n))
    pairs = set()
    for j, u in enumerate(ys):
        for b in downset(basis, lattice, join_subset(basis, lattice, u)):
            pairs.add((b, j))
    return Presentation(tuple(u.format(basis.labels) for u in ys), ys, frozenset(pairs))


def check_presentation(
    pres: Presentation,
    basis: Basis,
    lattice: LatticeHandle,
    sample: Iterable[BasisSubset] | None = None,
    exhaustive_limit: int = TAUTOLOGICAL_LIMIT,
    seed: int = 0,
    samples: int = 256,
) -> CheckReport:
    """Verify the presentation biconditional for every ``b`` and each ``X``.

    ``X`` ranges over all basis subsets when ``sample`` is None and
    ``|B| <= exhaustive_limit``. A violation is ``(b, X, direction)`` where
    ``"->"`` means ``b <=^B join(X)`` holds but no ``j`` witnesses it, and
    ``"<-"`` means a ``j`` fires although ``b`` is not below ``join(X)``.
    """
    n = len(basis)
    for yj in pres.y:
        basis.check(yj)
    exhaustive = sample is None and n <= exhaustive_limit
    if sample is not None:
        xs = list(sample)
    elif exhaustive:
        xs = list(BasisSubset.all_subsets(n))
    else:
        rng = random.Random(seed)
        xs = [BasisSubset.empty(n), BasisSubset.full(n)]
        xs += [BasisSubset(rng.getrandbits(n), n) for _ in range(samples)]
    violations = []
    for x in xs:
        basis.check(x)
        below = downset(basis, lattice, join_subset(basis, lattice, x))
        for b in range(n):
            lhs = b in below
            rhs = pres.covers(b, x) is not None
            if lhs and not rhs:
                violations.append((b, x, "->"))
            elif rhs and not lhs:
                violations.append((b, x, "<-"))
    return CheckReport("presentation", tuple(violations), checked=len(xs) * n, exhaustive=exhaustive)
