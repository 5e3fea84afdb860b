"""Brute-force oracles and small builders shared by the tests.

Nothing here calls the code paths it is used to check.
"""

from __future__ import annotations

import itertools

from lfpsat.powerset import FiniteUniverse, PowersetLattice, membership_presentation, singleton_basis


def powerset(atoms):
    u = FiniteUniverse.of(atoms)
    lat = PowersetLattice(u)
    return u, lat, singleton_basis(u, lat), membership_presentation(u)


def brute_glb(lattice, family):
    """Scan every element for lower bounds and return the greatest one."""
    elems = lattice.elements()
    lower = [x for x in elems if all(lattice.leq(x, a) for a in family)]
    greatest = [x for x in lower if all(lattice.leq(y, x) for y in lower)]
    assert len(greatest) == 1
    return greatest[0]


def brute_lub(lattice, family):
    elems = lattice.elements()
    upper = [x for x in elems if all(lattice.leq(a, x) for a in family)]
    least = [x for x in upper if all(lattice.leq(x, y) for y in upper)]
    assert len(least) == 1
    return least[0]


def brute_lfp(f, lattice):
    """Least element among all fixed points, by scanning the carrier."""
    fixed = [x for x in lattice.elements() if f(x) == x]
    least = [x for x in fixed if all(lattice.leq(x, y) for y in fixed)]
    assert len(least) == 1
    return least[0], fixed


def pairs_gamma(pairs, lattice, images, a):
    """Join of images of every b with some (b, a') in pairs and a' <= a."""
    return lattice.join(images[b] for b, a2 in pairs if lattice.leq(a2, a))


def all_lists(atoms, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(atoms, repeat=n)
