"""f/h/gamma vectors, signatures, and the vanishing-monomial suite.

The suite is the bridge between the fan side and the mixed-volume side:
for each cone of pairwise non-special adjacent rays and each odd exponent
tuple of total degree d - p it decides mixed-volume vanishing of the
conormal divisor polytopes through the subset-sum criterion on Minkowski
dimension functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from . import fan as fanmod
from . import istheory, polymat
from .fan import Fan, require_complete


class GammaSigError(Exception):
    pass


@dataclass(frozen=True)
class FVector:
    counts: tuple
    d: int


@dataclass(frozen=True)
class HVector:
    entries: tuple
    d: int

    @property
    def palindromic(self):
        return self.entries == self.entries[::-1]


@dataclass(frozen=True)
class GammaVector:
    entries: tuple
    d: int

    @property
    def top(self):
        return self.entries[-1]


def f_vector(fan):
    """Face counts (f_0, ..., f_{d-1}) of the fan's simplicial complex."""
    require_complete(fan)
    counts = [0] * fan.dim
    for face in fanmod.faces(fan):
        if face:
            counts[len(face) - 1] += 1
    return FVector(tuple(counts), fan.dim)


def h_vector(f):
    """Standard simplicial-sphere transform of an f-vector."""
    d = f.d
    ext = (1,) + f.counts
    entries = []
    for j in range(d + 1):
        entries.append(sum((-1) ** (j - i) * comb(d - i, j - i) * ext[i]
                           for i in range(j + 1)))
    hv = HVector(tuple(entries), d)
    if sum(hv.entries) != f.counts[-1]:
        raise GammaSigError("h-vector does not sum to the facet count")
    return hv


def gamma_vector(h):
    """Coefficients of h(t) in the basis t^i (1+t)^(d-2i).

    Defined only for palindromic h; solved by peeling leading coefficients,
    which is triangular in this basis.
    """
    if not h.palindromic:
        raise GammaSigError(f"h-vector {h.entries} is not palindromic")
    d = h.d
    rem = list(h.entries)
    gammas = []
    for i in range(d // 2 + 1):
        g = rem[i]
        gammas.append(g)
        for k in range(d - 2 * i + 1):
            rem[i + k] -= g * comb(d - 2 * i, k)
    if any(x != 0 for x in rem):
        raise GammaSigError(f"gamma expansion left a remainder: {rem}")
    return GammaVector(tuple(gammas), d)


def signature(fan):
    """Alternating h-vector sum h(-1); defined for even-dimensional fans."""
    if fan.dim % 2 != 0:
        raise GammaSigError(f"signature needs even dimension, got {fan.dim}")
    h = h_vector(f_vector(fan))
    return sum((-1) ** i * x for i, x in enumerate(h.entries))


@dataclass(frozen=True)
class MonomialWitness:
    p: int
    pcone: tuple
    exponents: tuple


@dataclass(frozen=True)
class VanishingSuiteReport:
    fan: Fan
    witnesses: tuple
    tuples_checked: int

    @property
    def all_vanish(self):
        return not self.witnesses


def _odd_tuples(p, total):
    """All positive odd tuples of length p summing to total."""
    if (total - p) % 2 != 0 or total < p:
        return
    for comp in itertools.combinations_with_replacement(range(p), (total - p) // 2):
        counts = [1] * p
        for i in comp:
            counts[i] += 2
        yield tuple(counts)


def _pairwise_non_special(fan, pcone):
    from . import structure

    for a, b in itertools.permutations(pcone, 2):
        rep = structure.special_rays(fan, (a,), (a,))
        if b in rep.special:
            return False
    return True


def vanishing_monomial_suite(fan, p_max=None):
    """Nonvanishing witnesses among odd-exponent conormal monomials.

    For 1 <= p <= d/2 and each p-cone of pairwise non-special rays, every
    odd tuple with sum d - p is tested; tuples on cones containing mutually
    special rays vanish trivially and are skipped.
    """
    from ._parallel import map_ordered

    require_complete(fan)
    d = fan.dim
    if d % 2 != 0:
        raise GammaSigError("the suite needs even dimension")
    lc, lc_witness = fanmod.is_locally_convex(fan)
    if not lc:
        raise GammaSigError(f"fan not locally convex at {lc_witness}")
    if p_max is None:
        p_max = d // 2
    p_max = min(p_max, d // 2)

    pcones = [face for face in sorted(fanmod.faces(fan))
              if 1 <= len(face) <= p_max]

    def analyse(pcone):
        p = len(pcone)
        if p > 1 and not _pairwise_non_special(fan, pcone):
            return ([], 0)
        polys = [istheory.restrict_conormal(fan, pcone, (j,)).polytope()
                 for j in pcone]
        b = istheory.minkowski_dim_function(polys)
        found = []
        checked = 0
        for a in _odd_tuples(p, d - p):
            checked += 1
            inside, _ = polymat.in_nonzero_region(b, a)
            if inside:
                found.append(MonomialWitness(p, pcone, a))
        return (found, checked)

    witnesses = []
    total = 0
    for found, checked in map_ordered(analyse, pcones):
        witnesses.extend(found)
        total += checked
    return VanishingSuiteReport(fan, tuple(witnesses), total)


@dataclass(frozen=True)
class SignatureZeroReport:
    signature: int
    gamma: tuple
    predicate: bool
    witnesses: tuple
    consistent: bool


def signature_zero_predicate(fan):
    """True iff the vanishing suite finds no witness, with a consistency flag.

    The report compares the predicate against ``signature(fan) == 0``; on a
    locally convex fan a disagreement is an implementation inconsistency.
    """
    sig = signature(fan)
    gam = gamma_vector(h_vector(f_vector(fan)))
    suite = vanishing_monomial_suite(fan)
    predicate = suite.all_vanish
    return SignatureZeroReport(sig, gam.entries, predicate, suite.witnesses,
                               predicate == (sig == 0))
