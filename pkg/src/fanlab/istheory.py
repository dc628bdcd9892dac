"""Toric intersection theory on simplicial complete fans.

Wall relations, Cartier data, intersection numbers, nef tests, divisor
polytopes, conormal-bundle restrictions to links, and the Minkowski-sum
dimension function feeding the odd-exponent engine.

Intersection numbers are computed through the Cartier-data pairing
``<m_sigma - m_sigma', u_gamma'>`` and agree with the true ones up to a
fixed positive rational per wall.  Only the sign and the zero/nonzero
status are part of the stable contract; every downstream predicate
consumes only those.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from . import fan as fanmod
from .exactlin import (Subspace, dot, frac_vec, primitive, solve_square,
                       vec_sub)
from .fan import Fan, LinkFan, Wall


class IntersectionError(Exception):
    pass


class NotNefError(IntersectionError):
    def __init__(self, wall, value):
        self.wall = wall
        self.value = value
        super().__init__(f"divisor is not nef: intersection {value} on wall {wall.tau}")


class DegenerateRestrictionError(IntersectionError):
    """A link ray has multiplier c = 0, which no convention covers here.

    Cannot occur for simplicial links (the ray would lie in the span of the
    center); surfaced as an explicit error rather than guessing a value.
    """


@dataclass(frozen=True)
class Divisor:
    """A torus-invariant divisor as rational coefficients per ray."""

    coeffs: tuple

    @staticmethod
    def of(coeffs):
        return Divisor(tuple(Fraction(c) for c in coeffs))

    @staticmethod
    def zero(fan):
        return Divisor(tuple(Fraction(0) for _ in fan.rays))

    @staticmethod
    def ray(fan, i):
        return Divisor(tuple(Fraction(int(j == i)) for j in range(fan.n_rays)))

    def __add__(self, other):
        return Divisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Divisor(tuple(-a for a in self.coeffs))

    def scale(self, c):
        c = Fraction(c)
        return Divisor(tuple(c * a for a in self.coeffs))


@dataclass(frozen=True)
class CartierData:
    """Per-maximal-cone support points m_sigma with <m_sigma, u_rho> = -a_rho."""

    fan: Fan
    m: tuple

    def for_cone(self, cone):
        return self.m[self.fan.max_cones.index(tuple(cone))]


@dataclass(frozen=True)
class Polytope:
    """A polytope given by its vertex set plus the span of vertex differences."""

    vertices: tuple
    direction_space: Subspace

    @property
    def dim(self):
        return self.direction_space.dim

    def is_point(self):
        return self.dim == 0

    @staticmethod
    def from_vertices(vertices, ambient_dim):
        vs = sorted(set(tuple(Fraction(x) for x in v) for v in vertices))
        if not vs:
            raise ValueError("a polytope needs at least one vertex")
        base = vs[0]
        dirs = [vec_sub(v, base) for v in vs[1:]]
        return Polytope(tuple(vs), Subspace.from_vectors(dirs, ambient_dim))


@dataclass(frozen=True)
class WallRelation:
    """The primitive linear relation among the rays of a wall's two cones.

    Coefficients are normalised so the off-wall entries are positive and the
    gcd of all entries is 1.  Up to one positive rational per wall they equal
    the intersection numbers D_rho . V(tau).
    """

    wall: Wall
    coeffs: dict


@lru_cache(maxsize=None)
def _wall_relation_cached(fan, wall):
    sigma_rays = list(wall.sigma)
    cols = [fan.rays[i] for i in sigma_rays]
    rows = [[Fraction(cols[j][i]) for j in range(len(cols))] for i in range(fan.dim)]
    rhs = [Fraction(x) for x in fan.rays[wall.gamma_prime]]
    sol = solve_square(rows, rhs)
    # u_gamma' = sum sol_j u_j  ->  u_gamma' - sum sol_j u_j = 0
    coeffs = {wall.gamma_prime: Fraction(1)}
    for j, idx in enumerate(sigma_rays):
        coeffs[idx] = -sol[j]
    mult = lcm(*(c.denominator for c in coeffs.values()))
    ints = {i: int(c * mult) for i, c in coeffs.items()}
    g = gcd(*(abs(v) for v in ints.values()))
    ints = {i: v // g for i, v in ints.items()}
    if ints[wall.gamma] < 0:
        ints = {i: -v for i, v in ints.items()}
    if ints[wall.gamma] <= 0 or ints[wall.gamma_prime] <= 0:
        raise IntersectionError(f"off-wall coefficients not positive on wall {wall.tau}")
    return WallRelation(wall, ints)


def wall_relation(fan, wall):
    """The unique primitive wall relation with positive off-wall coefficients."""
    return _wall_relation_cached(fan, wall)


@lru_cache(maxsize=None)
def cartier_data(fan, divisor):
    """Solve <m_sigma, u_rho> = -a_rho on every maximal cone."""
    ms = []
    for cone in fan.max_cones:
        rows = [frac_vec(fan.rays[i]) for i in cone]
        rhs = [-divisor.coeffs[i] for i in cone]
        ms.append(solve_square(rows, rhs))
    return CartierData(fan, tuple(ms))


def intersection_number(fan, divisor, wall):
    """The pairing <m_sigma(D) - m_sigma'(D), u_gamma'> for the given wall.

    Equals D . V(tau) up to a fixed positive rational per wall; only the
    sign and zero status are stable.
    """
    cd = cartier_data(fan, divisor)
    m_s = cd.for_cone(wall.sigma)
    m_sp = cd.for_cone(wall.sigma_prime)
    return dot(vec_sub(m_s, m_sp), fan.rays[wall.gamma_prime])


def is_nef(fan, divisor):
    """Whether every wall pairing is nonnegative; returns (bool, witness wall)."""
    if fan.dim == 0:
        return (True, None)
    for w in fanmod.walls(fan):
        if intersection_number(fan, divisor, w) < 0:
            return (False, w)
    return (True, None)


def divisor_polytope(fan, divisor):
    """Vertex set {m_sigma} of a nef divisor with its direction space."""
    if fan.dim == 0:
        return Polytope.from_vertices([()], 0)
    ok, witness = is_nef(fan, divisor)
    if not ok:
        raise NotNefError(witness, intersection_number(fan, divisor, witness))
    cd = cartier_data(fan, divisor)
    return Polytope.from_vertices(cd.m, fan.dim)


@dataclass(frozen=True)
class ConormalRestriction:
    """A sum of conormal restrictions expressed on the link's quotient fan."""

    link: LinkFan
    divisor: Divisor

    def polytope(self):
        return divisor_polytope(self.link.fan, self.divisor)


def restrict_conormal(fan, pcone, A):
    """Restrict sum_{j in A}(-D_{i_j}) to the link over ``pcone``.

    ``pcone`` is a tuple of ray indices forming a cone, ``A`` a nonempty
    subset of it.  The divisor on the quotient star fan has coefficient
    ``sum_{j in A} <dual_j, u_alpha> / c_alpha`` on each link ray, with the
    duals taken in the deterministic Hermite extension of the pcone rays.
    """
    pcone = tuple(sorted(pcone))
    A = tuple(sorted(A))
    if not A or not set(A).issubset(pcone):
        raise ValueError("A must be a nonempty subset of the pcone")
    lk = fanmod.link(fan, pcone)
    positions = [pcone.index(j) for j in A]
    coeffs = []
    for k, alpha in enumerate(lk.ray_indices):
        c = lk.multipliers[k]
        if c == 0:
            raise DegenerateRestrictionError(
                f"link ray {alpha} has multiplier 0 over pcone {pcone}")
        u = fan.rays[alpha]
        coeffs.append(sum((dot(lk.duals[pos], u) for pos in positions),
                          Fraction(0)) / c)
    return ConormalRestriction(lk, Divisor(tuple(coeffs)))


def minkowski_dim_function(polys):
    """Dimension function b_A = dim of the Minkowski sum over A.

    Computed as the dimension of the sum of direction spaces; no hulls are
    ever formed.  The result is checked submodular and monotone.
    """
    from .polymat import DimFunction, check_submodular

    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polytope")
    n = len(polys)
    ambient = polys[0].direction_space.ambient_dim
    values = [0] * (1 << n)
    spans = [None] * (1 << n)
    spans[0] = Subspace.zero(ambient)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        spans[mask] = spans[mask ^ (1 << low)].add(polys[low].direction_space)
        values[mask] = spans[mask].dim
    b = DimFunction(n, tuple(values))
    report = check_submodular(b)
    if not (report.submodular_ok and report.monotone_ok):
        raise IntersectionError(f"dimension function not submodular/monotone: {report}")
    return b
