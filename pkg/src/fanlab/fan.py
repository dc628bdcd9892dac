"""Simplicial fan data model: validation, walls, links, flagness, local convexity.

A fan is given by its ambient lattice rank, a list of primitive integer ray
generators, and its maximal cones as sorted tuples of ray indices.  All
predicates are decided exactly over the rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import exactlin
from .exactlin import dot, lattice_basis_extend, rank


class FanError(Exception):
    pass


class InvalidFanError(FanError):
    def __init__(self, report):
        self.report = report
        super().__init__("fan failed validation: "
                         + "; ".join(c.name for c in report.failures()))


class NotACone(FanError):
    pass


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple
    max_cones: tuple

    @staticmethod
    def make(dim, rays, cones):
        """Normalise raw ray/cone data into a Fan (no validation)."""
        rays = tuple(tuple(int(x) for x in r) for r in rays)
        cones = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in cones))
        return Fan(dim, rays, cones)

    @property
    def n_rays(self):
        return len(self.rays)

    def ray(self, i):
        return self.rays[i]

    def is_cone(self, indices):
        s = frozenset(indices)
        return any(s.issubset(c) for c in self.max_cones)

    def adjacent(self, i, j):
        return i != j and self.is_cone((i, j))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: object = None


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def complete(self):
        return self.passed

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed,
                 **({"witness": _json_witness(c.witness)} if c.witness is not None else {})}
                for c in self.checks
            ],
        }


def _json_witness(w):
    if isinstance(w, (tuple, list)):
        return [_json_witness(x) for x in w]
    if isinstance(w, frozenset):
        return sorted(w)
    if isinstance(w, Fraction):
        return str(w)
    return w


@dataclass(frozen=True)
class Wall:
    """A codimension-1 cone with its two maximal cones and off-wall rays."""

    tau: tuple
    sigma: tuple
    sigma_prime: tuple
    gamma: int
    gamma_prime: int

    @property
    def rays_involved(self):
        return tuple(sorted(set(self.sigma) | set(self.sigma_prime)))


@lru_cache(maxsize=None)
def validate(fan):
    """Check every Fan invariant, returning a report with failure witnesses."""
    checks = []

    ok = fan.dim >= 1
    checks.append(CheckResult("dimension_positive", ok, None if ok else fan.dim))

    bad = None
    for i, r in enumerate(fan.rays):
        if len(r) != fan.dim or all(x == 0 for x in r):
            bad = i
            break
        if gcd(*(abs(x) for x in r)) != 1:
            bad = i
            break
    checks.append(CheckResult("rays_nonzero_primitive", bad is None, bad))

    dup = None
    seen = {}
    for i, r in enumerate(fan.rays):
        if r in seen:
            dup = (seen[r], i)
            break
        seen[r] = i
    checks.append(CheckResult("rays_distinct", dup is None, dup))

    bad_size = None
    for c in fan.max_cones:
        if len(c) != fan.dim or len(set(c)) != fan.dim \
                or any(i < 0 or i >= fan.n_rays for i in c):
            bad_size = c
            break
    checks.append(CheckResult("cone_size", bad_size is None, bad_size))

    dep = None
    if bad_size is None and bad is None:
        for c in fan.max_cones:
            if rank([fan.rays[i] for i in c], width=fan.dim) != fan.dim:
                dep = c
                break
    checks.append(CheckResult("cone_independent", dep is None, dep))

    structural_ok = all(c.passed for c in checks)

    # Completeness: every wall in exactly two cones, off-wall rays strictly
    # separated by the wall hyperplane, connected dual graph.
    wall_count_bad = None
    separation_bad = None
    connected_ok = True
    if structural_ok:
        incidence = _wall_incidence(fan)
        for tau, cones in incidence.items():
            if len(cones) != 2:
                wall_count_bad = (tau, len(cones))
                break
        if wall_count_bad is None:
            for tau, cones in incidence.items():
                sigma, sigma_prime = cones
                g = next(iter(set(sigma) - set(tau)))
                gp = next(iter(set(sigma_prime) - set(tau)))
                s, sp = _separation_signs(fan, tau, g, gp)
                if s == 0 or sp == 0 or s == sp:
                    separation_bad = (tau, g, gp)
                    break
            connected_ok = _dual_graph_connected(fan, incidence)
    checks.append(CheckResult("wall_two_cones", structural_ok and wall_count_bad is None,
                              wall_count_bad))
    checks.append(CheckResult("wall_separation",
                              structural_ok and wall_count_bad is None and separation_bad is None,
                              separation_bad))
    checks.append(CheckResult("dual_graph_connected", structural_ok and connected_ok, None))

    return ValidationReport(tuple(checks))


def _wall_incidence(fan):
    incidence = {}
    for c in fan.max_cones:
        for tau in itertools.combinations(c, fan.dim - 1):
            incidence.setdefault(tau, []).append(c)
    return {t: sorted(cs) for t, cs in sorted(incidence.items())}


def _separation_signs(fan, tau, g, gp):
    """Signs of the two off-wall rays against the wall hyperplane."""
    if len(tau) == 0:
        # d = 1: the hyperplane is the origin; sign of the single coordinate.
        normal = (Fraction(1),)
    else:
        normals = exactlin.kernel_basis([fan.rays[i] for i in tau], fan.dim)
        if len(normals) != 1:
            return 0, 0
        normal = normals[0]
    a = dot(normal, fan.rays[g])
    b = dot(normal, fan.rays[gp])
    sgn = lambda x: (x > 0) - (x < 0)
    return sgn(a), sgn(b)


def _dual_graph_connected(fan, incidence):
    if not fan.max_cones:
        return False
    adj = {c: set() for c in fan.max_cones}
    for cones in incidence.values():
        if len(cones) == 2:
            adj[cones[0]].add(cones[1])
            adj[cones[1]].add(cones[0])
    seen = {fan.max_cones[0]}
    stack = [fan.max_cones[0]]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(fan.max_cones)


def require_complete(fan):
    report = validate(fan)
    if not report.passed:
        raise InvalidFanError(report)
    return report


@lru_cache(maxsize=None)
def walls(fan):
    """Every wall of a validated complete fan, in deterministic order."""
    require_complete(fan)
    out = []
    for tau, cones in _wall_incidence(fan).items():
        sigma, sigma_prime = cones
        g = next(iter(set(sigma) - set(tau)))
        gp = next(iter(set(sigma_prime) - set(tau)))
        out.append(Wall(tau, sigma, sigma_prime, g, gp))
    return tuple(out)


@lru_cache(maxsize=None)
def faces(fan):
    """All faces of the fan's simplicial complex, as a frozenset of tuples."""
    out = set()
    for c in fan.max_cones:
        for k in range(len(c) + 1):
            out.update(itertools.combinations(c, k))
    return frozenset(out)


@dataclass(frozen=True)
class LinkFan:
    """The link of a cone, realised as a complete fan in the quotient lattice.

    Quotienting by the center's span needs a choice of complement; it is
    pinned to the complement rows of the deterministic Hermite completion
    of the center's ray generators, so repeated runs agree.  ``fan`` is the
    induced complete simplicial fan on the primitive ray images,
    ``multipliers[k]`` the positive integer scale between ray
    ``ray_indices[k]`` of the parent and its primitive image.
    """

    parent: Fan
    center: tuple
    ray_indices: tuple
    fan: Fan
    multipliers: tuple
    basis: tuple
    duals: tuple

    def local_index(self, parent_ray):
        return self.ray_indices.index(parent_ray)

    def image(self, parent_ray):
        """Quotient coordinates of any parent ray (not necessarily primitive)."""
        p = len(self.center)
        u = self.parent.rays[parent_ray]
        return tuple(dot(self.duals[k], u) for k in range(p, self.parent.dim))

    def cones_upstairs(self):
        """Maximal link cones as parent ray index tuples."""
        return tuple(tuple(self.ray_indices[i] for i in c) for c in self.fan.max_cones)


@lru_cache(maxsize=None)
def link(fan, center):
    """Link of a cone with fixed quotient data for N(center).

    ``center`` is a sorted tuple of ray indices forming a cone of ``fan``.
    """
    center = tuple(sorted(center))
    if center not in faces(fan):
        raise NotACone(f"{center} is not a cone of the fan")
    p = len(center)
    d = fan.dim
    star = [c for c in fan.max_cones if set(center).issubset(c)]
    ray_indices = tuple(sorted(set(itertools.chain.from_iterable(star)) - set(center)))

    basis, duals = lattice_basis_extend([fan.rays[i] for i in center], d)
    images = []
    multipliers = []
    for a in ray_indices:
        u = fan.rays[a]
        coords = [dot(duals[k], u) for k in range(p, d)]
        assert all(x.denominator == 1 for x in coords)
        coords = [int(x) for x in coords]
        if all(x == 0 for x in coords):
            raise FanError(f"ray {a} lies in the span of the center {center}")
        c = gcd(*(abs(x) for x in coords))
        multipliers.append(c)
        images.append(tuple(x // c for x in coords))

    local = {a: i for i, a in enumerate(ray_indices)}
    cones = tuple(sorted(tuple(sorted(local[a] for a in set(c) - set(center)))
                         for c in star))
    if len(set(images)) != len(images):
        raise FanError(f"link of {center} has coincident quotient rays")
    qfan = Fan(d - p, tuple(images), cones)
    return LinkFan(fan, center, ray_indices, qfan, tuple(multipliers), basis, duals)


@lru_cache(maxsize=None)
def is_flag(fan):
    """Whether every set of pairwise adjacent rays spans a cone.

    Returns ``(True, None)`` or ``(False, witness)`` with a minimal
    non-face of size at least 3.
    """
    require_complete(fan)
    fc = faces(fan)
    for k in range(3, fan.dim + 2):
        for comb in itertools.combinations(range(fan.n_rays), k):
            if comb in fc:
                continue
            if all(fan.adjacent(i, j) for i, j in itertools.combinations(comb, 2)):
                # all (k-1)-subsets are faces exactly when every pair is
                # adjacent and no smaller witness was found first
                if all(sub in fc for sub in itertools.combinations(comb, k - 1)):
                    return (False, comb)
    return (True, None)


@lru_cache(maxsize=None)
def is_locally_convex(fan):
    """Nef test for every conormal restriction: D_rho . V(tau) <= 0 on stars.

    Uses the wall-relation coefficient of each on-wall ray, which carries
    the sign of the intersection number.  Returns ``(bool, witness)`` where
    the witness is a violating ``(ray, wall)`` pair.
    """
    from . import istheory

    require_complete(fan)
    for w in walls(fan):
        rel = istheory.wall_relation(fan, w)
        for rho in w.tau:
            if rel.coeffs[rho] > 0:
                return (False, (rho, w))
    return (True, None)
