"""Structural analysis of locally convex complete fans.

Special-ray classification (computed two independent ways and
cross-checked), flat links, cross-polytope and suspension detection,
special-ray covers, the p-cone dichotomy, d/2-tuple dimension-deficit
certificates, and induced-4-cycle construction from flat walls.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from functools import lru_cache

from . import fan as fanmod
from .exactlin import Subspace, dot, invert, kernel_basis, lattice_basis_extend
from .fan import require_complete
from .istheory import Divisor, intersection_number, restrict_conormal, wall_relation

logger = logging.getLogger(__name__)


class StructureError(Exception):
    pass


class PreconditionError(StructureError):
    pass


class MethodDisagreement(StructureError):
    """The span-intersection and condition-based special-ray methods differ."""


class ConstructionError(StructureError):
    pass


def _walls_by_tau(fan):
    return {w.tau: w for w in fanmod.walls(fan)}


def _walls_containing(fan, rays):
    rays = set(rays)
    return [w for w in fanmod.walls(fan) if rays.issubset(w.tau)]


@lru_cache(maxsize=None)
def _ray_coeff_sign_data(fan):
    """Wall-relation coefficients per wall, keyed by tau."""
    return {w.tau: wall_relation(fan, w).coeffs for w in fanmod.walls(fan)}


def conormal_vanishes(fan, pcone, j):
    """Whether -D_j restricted over the cone ``pcone`` is zero.

    Tested on the ambient walls containing the cone: the restriction is
    zero exactly when the wall-relation coefficient of j vanishes on all of
    them (vacuously true when the cone is maximal).
    """
    pcone = tuple(sorted(pcone))
    if j not in pcone:
        raise ValueError(f"ray {j} is not in the cone {pcone}")
    coeffs = _ray_coeff_sign_data(fan)
    return all(coeffs[w.tau][j] == 0 for w in _walls_containing(fan, pcone))


@dataclass(frozen=True)
class SpecialRayReport:
    """Classification of the rays of lk(pcone) with respect to A.

    ``special`` rays lie in every Span(tau) over the ambient walls tau
    containing the pcone on which the conormal sum has nonzero
    intersection; ``subspace`` is their span in the lift target
    N(rays of pcone outside A).  ``link_span`` is the same span in the
    quotient N(pcone), and ``perp_ok`` records whether it equals the
    orthogonal complement of the restricted divisor polytope there.
    """

    pcone: tuple
    A: tuple
    special: tuple
    non_special: tuple
    subspace: Subspace
    lift_center: tuple
    ambient_span: Subspace
    link_span: Subspace
    per_cone_counts: tuple
    uniform_count: bool
    perp_ok: object = None


def _special_by_span(fan, pcone, A):
    """Method (i): intersect Span(tau) over qualifying ambient walls."""
    coeffs = _ray_coeff_sign_data(fan)
    span = Subspace.full(fan.dim)
    for w in _walls_containing(fan, pcone):
        total = sum(coeffs[w.tau][j] for j in A)
        if total != 0:
            span = span.intersect(
                Subspace.from_vectors([fan.rays[i] for i in w.tau], fan.dim))
    lk = fanmod.link(fan, pcone)
    special = tuple(a for a in lk.ray_indices if span.contains(fan.rays[a]))
    return special, span


def _special_by_conditions(fan, pcone, A):
    """Method (ii): per-ray vanishing conditions plus the crossing closure.

    A ray enters when every opposite wall kills all the A-divisors, and is
    expelled while some opposite wall carries a non-member on-wall ray with
    nonzero intersection.  Zero tests go through the Cartier pairing, so
    this route is computationally independent of the wall relations.
    """
    lk = fanmod.link(fan, pcone)
    link_rays = set(lk.ray_indices)
    ray_divs = {j: Divisor.ray(fan, j) for j in A}
    by_tau = _walls_by_tau(fan)
    pset = set(pcone)

    opposite = {}
    for gamma in link_rays:
        ws = []
        for cone in fan.max_cones:
            if pset.issubset(cone) and gamma in cone:
                tau = tuple(i for i in cone if i != gamma)
                ws.append(by_tau[tau])
        opposite[gamma] = ws

    members = set()
    for gamma in link_rays:
        if all(intersection_number(fan, ray_divs[j], w) == 0
               for w in opposite[gamma] for j in A):
            members.add(gamma)

    changed = True
    while changed:
        changed = False
        for gamma in sorted(members):
            expel = False
            for w in opposite[gamma]:
                for omega in w.tau:
                    if omega in link_rays and omega not in members:
                        if intersection_number(fan, Divisor.ray(fan, omega), w) != 0:
                            expel = True
                            break
                if expel:
                    break
            if expel:
                members.remove(gamma)
                changed = True
    return tuple(sorted(members))


@lru_cache(maxsize=None)
def special_rays(fan, pcone, A, require_locally_convex=True):
    """Special/non-special classification of lk(pcone) with respect to A.

    Runs the span-intersection and the condition-based computation and
    raises MethodDisagreement if they differ.  With the default strict mode
    the fan must be locally convex and two structural invariants are
    enforced: every maximal link cone carries the same number of special
    rays, and their span matches the orthogonal complement of the restricted
    divisor polytope.  Pass ``require_locally_convex=False`` to classify on
    arbitrary complete simplicial fans, where only method agreement is
    checked.
    """
    pcone = tuple(sorted(pcone))
    A = tuple(sorted(A))
    if not A or not set(A).issubset(pcone):
        raise ValueError("A must be a nonempty subset of the pcone")
    require_complete(fan)
    strict = require_locally_convex
    if strict:
        lc, witness = fanmod.is_locally_convex(fan)
        if not lc:
            raise PreconditionError(f"fan is not locally convex at {witness}")

    special_i, ambient_span = _special_by_span(fan, pcone, A)
    special_ii = _special_by_conditions(fan, pcone, A)
    if special_i != special_ii:
        raise MethodDisagreement(
            f"pcone {pcone}, A {A}: span method {special_i} vs conditions {special_ii}")

    lk = fanmod.link(fan, pcone)
    non_special = tuple(a for a in lk.ray_indices if a not in special_i)

    counts = tuple(sum(1 for a in cone if a in special_i)
                   for cone in lk.cones_upstairs())
    uniform = len(set(counts)) <= 1

    lift_center = tuple(i for i in pcone if i not in A)
    _, duals = lattice_basis_extend([fan.rays[i] for i in lift_center], fan.dim)
    q = len(lift_center)
    images = [tuple(dot(duals[k], fan.rays[a]) for k in range(q, fan.dim))
              for a in special_i]
    subspace = Subspace.from_vectors(images, fan.dim - q)

    link_images = [lk.image(a) for a in special_i]
    link_span = Subspace.from_vectors(link_images, fan.dim - len(pcone))

    perp_ok = None
    if strict:
        if not uniform:
            raise StructureError(
                f"maximal cones of lk{pcone} carry unequal special counts {counts}")
        restriction = restrict_conormal(fan, pcone, A)
        poly = restriction.polytope()
        perp = Subspace.from_vectors(
            kernel_basis(poly.direction_space.basis,
                         poly.direction_space.ambient_dim),
            poly.direction_space.ambient_dim)
        perp_ok = perp == link_span
        if not perp_ok:
            raise StructureError(
                f"special span of lk{pcone} does not match the polytope complement")

    return SpecialRayReport(pcone, A, special_i, non_special, subspace,
                            lift_center, ambient_span, link_span, counts,
                            uniform, perp_ok)


@dataclass(frozen=True)
class FlatLinkReport:
    flat: bool
    subspace: object
    reason: object = None


def flat_link(fan, pcone, A, M):
    """Whether lk(pcone + M) lifts to a vector subspace of N(pcone outside A).

    ``M`` must be a maximal cone of non-special rays (with respect to A)
    inside one maximal cone.  Flatness holds when the ray images of every
    maximal cone of that link span one common subspace, which is returned.
    """
    pcone = tuple(sorted(pcone))
    A = tuple(sorted(A))
    M = tuple(sorted(M))
    rep = special_rays(fan, pcone, A)
    if set(M) & set(rep.special):
        raise PreconditionError(f"M = {M} contains special rays")
    if not fan.is_cone(pcone + M):
        raise PreconditionError(f"{pcone} + {M} is not a cone of the fan")
    maximal = any(
        set(M) == {a for a in cone if a not in pcone and a in rep.non_special}
        for cone in fan.max_cones if set(pcone + M).issubset(cone))
    if not maximal:
        raise PreconditionError(
            f"M = {M} is not a maximal non-special collection in any maximal cone")

    if not rep.special:
        return FlatLinkReport(False, None, "no special rays")

    lift_center = tuple(i for i in pcone if i not in A)
    _, duals = lattice_basis_extend([fan.rays[i] for i in lift_center], fan.dim)
    q = len(lift_center)

    def image(a):
        return tuple(dot(duals[k], fan.rays[a]) for k in range(q, fan.dim))

    lk = fanmod.link(fan, pcone + M)
    spans = []
    for cone in lk.cones_upstairs():
        spans.append(Subspace.from_vectors([image(a) for a in cone],
                                           fan.dim - q))
    common = spans[0]
    for s in spans[1:]:
        if s != common:
            return FlatLinkReport(False, None, ("cone spans differ", s, common))
    return FlatLinkReport(True, common)


@dataclass(frozen=True)
class CrossPolytopeReport:
    pairing: object
    witness: object
    certified: bool


def detect_cross_polytope(fan):
    """Antipodal-pair certificate when every conormal restriction vanishes.

    Returns the pairing and certifies that the maximal cones are exactly
    the sign choices; otherwise reports the first ray whose conormal does
    not restrict to zero.
    """
    require_complete(fan)
    for rho in range(fan.n_rays):
        if not conormal_vanishes(fan, (rho,), rho):
            return CrossPolytopeReport(None, rho, False)
    index = {r: i for i, r in enumerate(fan.rays)}
    pairs = []
    seen = set()
    for i, r in enumerate(fan.rays):
        if i in seen:
            continue
        anti = tuple(-x for x in r)
        if anti not in index:
            return CrossPolytopeReport(None, i, False)
        j = index[anti]
        seen.update((i, j))
        pairs.append((i, j))
    certified = False
    if len(pairs) == fan.dim:
        expected = set()
        for choice in itertools.product(*[(a, b) for a, b in pairs]):
            expected.add(tuple(sorted(choice)))
        certified = expected == set(fan.max_cones)
    if not certified:
        return CrossPolytopeReport(None, None, False)
    return CrossPolytopeReport(tuple(pairs), None, True)


@dataclass(frozen=True)
class AntipodePartner:
    partner: object
    link_support_matches: object
    is_antipodal: object


def antipode_partner(fan, pcone, r):
    """The unique non-adjacent ray with vanishing conormal over the reduced cone.

    Requires -D_r to restrict to zero over ``pcone``.  Searches for rays b
    outside lk(r) forming a cone with pcone minus r whose own conormal over
    that cone vanishes; at most one exists, and its link is checked to have
    the same support as lk(pcone).
    """
    pcone = tuple(sorted(pcone))
    if r not in pcone:
        raise ValueError(f"{r} is not in {pcone}")
    require_complete(fan)
    if not conormal_vanishes(fan, pcone, r):
        raise PreconditionError(f"-D_{r} does not restrict to zero over {pcone}")
    base = tuple(i for i in pcone if i != r)
    candidates = []
    for beta in range(fan.n_rays):
        if beta == r or beta in base:
            continue
        if fan.adjacent(beta, r):
            continue
        cone = tuple(sorted(base + (beta,)))
        if not fan.is_cone(cone):
            continue
        if conormal_vanishes(fan, cone, beta):
            candidates.append(beta)
    if not candidates:
        return AntipodePartner(None, None, None)
    if len(candidates) > 1:
        raise StructureError(f"uniqueness violated: candidates {candidates}")
    beta = candidates[0]
    support_matches = (set(fanmod.link(fan, tuple(sorted(base + (beta,)))).cones_upstairs())
                       == set(fanmod.link(fan, pcone).cones_upstairs()))
    antipodal = fan.rays[beta] == tuple(-x for x in fan.rays[r])
    return AntipodePartner(beta, support_matches, antipodal)


@dataclass(frozen=True)
class SuspensionDecomposition:
    core: Subspace
    core_rays: tuple
    pairs: tuple
    residual: tuple

    @property
    def valid(self):
        return not self.residual


def suspension_structure(fan, rho):
    """Decompose lk(rho) into its special core and suspension pairs.

    Each non-special ray must have exactly one non-adjacent partner among
    the non-special rays, the pair must be adjacent to every other link
    ray, and the number of pairs must equal the link dimension minus the
    core dimension; failures land in ``residual``.
    """
    rep = special_rays(fan, (rho,), (rho,))
    link_rays = rep.special + rep.non_special
    core = Subspace.from_vectors([fan.rays[a] for a in rep.special], fan.dim)

    def link_adjacent(a, b):
        return fan.is_cone((rho, a, b))

    residual = []
    pairs = []
    paired = set()
    for delta in rep.non_special:
        partners = [mu for mu in rep.non_special
                    if mu != delta and not link_adjacent(delta, mu)]
        if len(partners) != 1:
            residual.append((delta, tuple(partners)))
            continue
        mu = partners[0]
        if delta in paired or mu in paired:
            if (min(delta, mu), max(delta, mu)) not in pairs:
                residual.append((delta, (mu,)))
            continue
        others_ok = all(link_adjacent(delta, x) and link_adjacent(mu, x)
                        for x in link_rays if x not in (delta, mu))
        if not others_ok:
            residual.append((delta, (mu,)))
            continue
        pairs.append((min(delta, mu), max(delta, mu)))
        paired.update((delta, mu))

    if not residual and len(pairs) != (fan.dim - 1) - core.dim:
        residual.append(("pair count", len(pairs), (fan.dim - 1) - core.dim))
    return SuspensionDecomposition(core, rep.special, tuple(pairs), tuple(residual))


def _cone_or_repeated_suspension(fan, members):
    """Greedy peeling of suspension pairs down to a cone, if possible."""
    members = set(members)
    pairs = []
    while True:
        if not members or fan.is_cone(tuple(sorted(members))):
            return (True, tuple(pairs), tuple(sorted(members)))
        found = None
        for a, b in itertools.combinations(sorted(members), 2):
            if fan.adjacent(a, b):
                continue
            rest = members - {a, b}
            if all(fan.adjacent(a, x) and fan.adjacent(b, x) for x in rest):
                found = (a, b)
                break
        if found is None:
            return (False, tuple(pairs), tuple(sorted(members)))
        pairs.append(found)
        members -= set(found)


@dataclass(frozen=True)
class BlockCoverReport:
    centers: dict
    structure: dict
    structure_failures: tuple
    sharing_failures: tuple


def special_block_cover(fan):
    """Special-ray cover: centers per ray, their structure, and non-sharing.

    For every ray gamma, ``centers[gamma]`` lists the rays rho with gamma
    special in lk(rho).  Each center set must form a cone or a repeated
    suspension of one, and mutually non-special adjacent pairs in different
    blocks must not share a special ray; counterexamples are reported.
    """
    lc, witness = fanmod.is_locally_convex(fan)
    if not lc:
        raise PreconditionError(f"fan is not locally convex at {witness}")
    specials = {rho: set(special_rays(fan, (rho,), (rho,)).special)
                for rho in range(fan.n_rays)}
    centers = {gamma: tuple(sorted(rho for rho in range(fan.n_rays)
                                   if gamma in specials[rho]))
               for gamma in range(fan.n_rays)}
    structure = {}
    failures = []
    for gamma, cs in centers.items():
        ok, pairs, cone_part = _cone_or_repeated_suspension(fan, cs)
        structure[gamma] = {"pairs": pairs, "cone": cone_part, "ok": ok}
        if not ok:
            failures.append(gamma)

    sharing_failures = []
    for r1, r2 in itertools.combinations(range(fan.n_rays), 2):
        if not fan.adjacent(r1, r2):
            continue
        if r2 in specials[r1] or r1 in specials[r2]:
            continue
        same_block = bool(special_rays(fan, (r1, r2), (r1, r2)).special)
        if same_block:
            continue
        shared = specials[r1] & specials[r2]
        if shared:
            sharing_failures.append((r1, r2, tuple(sorted(shared))))
    return BlockCoverReport(centers, structure, tuple(failures),
                            tuple(sharing_failures))


@dataclass(frozen=True)
class DichotomyTag:
    case: str
    data: object


def pcone_dichotomy(fan, pcone):
    """Classify a cone by the p = 2 style dichotomy.

    VANISHING_CONORMAL when some conormal restriction over the cone is
    zero; otherwise TRIVIAL for cones whose rays are not pairwise
    non-special; otherwise FLAT_SUBSPACE when the full conormal sum leaves
    a positive-dimensional special span, ALL_NONSPECIAL_SUSPENSION when
    every link ray is non-special for some member, and INCONSISTENT if
    none of the cases holds.
    """
    pcone = tuple(sorted(pcone))
    if not fan.is_cone(pcone):
        raise PreconditionError(f"{pcone} is not a cone of the fan")
    for j in pcone:
        if conormal_vanishes(fan, pcone, j):
            return DichotomyTag("VANISHING_CONORMAL", j)

    mutually_non_special = True
    for a, b in itertools.permutations(pcone, 2):
        if b in special_rays(fan, (a,), (a,)).special:
            mutually_non_special = False
            break
    if not mutually_non_special:
        return DichotomyTag("TRIVIAL", None)

    rep = special_rays(fan, pcone, pcone)
    if rep.special:
        d, p = fan.dim, len(pcone)
        poly_dim = restrict_conormal(fan, pcone, pcone).polytope().dim
        return DichotomyTag("FLAT_SUBSPACE",
                            {"special": rep.special, "polytope_dim": poly_dim,
                             "bound": d - p - 1, "bound_ok": poly_dim <= d - p - 1})

    lk = fanmod.link(fan, pcone)
    per_member = {j: set(special_rays(fan, pcone, (j,)).special) for j in pcone}
    uncovered = [gamma for gamma in lk.ray_indices
                 if all(gamma in per_member[j] for j in pcone)]
    if not uncovered:
        return DichotomyTag("ALL_NONSPECIAL_SUSPENSION", None)
    return DichotomyTag("INCONSISTENT", {"uncovered": tuple(uncovered)})


@dataclass(frozen=True)
class HalfToneCertificate:
    ordering: tuple
    threshold: object
    dims: tuple
    containments: tuple


def pdover2_certificates(fan, rays):
    """Dimension-deficit certificates for a d/2-tuple of adjacent rays.

    For each ordering, the first index k where the running Minkowski-sum
    dimension is at most k - 1, with the verified span containments at the
    zero-gain steps.  Requires an even-dimensional, locally convex fan on
    which the vanishing-monomial suite is empty.
    """
    from . import gammasig

    rays = tuple(sorted(rays))
    d = fan.dim
    if d % 2 != 0:
        raise PreconditionError("even dimension required")
    if len(rays) != d // 2:
        raise PreconditionError(f"need a {d // 2}-tuple, got {len(rays)}")
    if not fan.is_cone(rays):
        raise PreconditionError(f"{rays} is not a cone of the fan")
    suite = gammasig.vanishing_monomial_suite(fan)
    if not suite.all_vanish:
        raise PreconditionError("vanishing-monomial suite has witnesses")

    polys = {j: restrict_conormal(fan, rays, (j,)).polytope() for j in rays}
    certs = []
    found_any = False
    for ordering in itertools.permutations(rays):
        running = None
        dims = []
        containments = []
        threshold = None
        for k, j in enumerate(ordering, start=1):
            d_space = polys[j].direction_space
            nxt = d_space if running is None else running.add(d_space)
            gain = nxt.dim - (running.dim if running is not None else 0)
            if gain == 0 and running is not None:
                # new summand adds nothing: span(Q_k) inside the running
                # span, i.e. omega_P contained in omega_R
                containments.append((k, j, all(running.contains(v)
                                               for v in d_space.basis)))
            running = nxt
            dims.append(running.dim)
            if threshold is None and running.dim <= k - 1:
                threshold = k
        if threshold is not None:
            found_any = True
        certs.append(HalfToneCertificate(ordering, threshold, tuple(dims),
                                         tuple(containments)))
    if not found_any:
        raise StructureError(
            f"no dimension-deficit certificate for {rays}; inconsistent with "
            "the d/2 containment statement")
    return tuple(certs)


@dataclass(frozen=True)
class FourCycle:
    rays: tuple

    def canonical(self):
        a, b, c, d = self.rays
        variants = []
        for seq in ((a, b, c, d), (a, d, c, b)):
            for r in range(4):
                variants.append(seq[r:] + seq[:r])
        return FourCycle(min(variants))

    def verify(self, fan):
        a, b, c, d = self.rays
        edges = [(a, b), (b, c), (c, d), (d, a)]
        non_edges = [(a, c), (b, d)]
        for e in edges:
            if not fan.adjacent(*e):
                return (False, ("missing edge", e))
        for e in non_edges:
            if fan.is_cone(e):
                return (False, ("diagonal present", e))
        return (True, None)


def _dual_covector(fan, cone, ray):
    """Dual of a ray with respect to the basis given by a maximal cone."""
    rows = [fan.rays[i] for i in cone]
    inv = invert(rows)
    pos = cone.index(ray)
    return tuple(inv[i][pos] for i in range(fan.dim))


def _require_flat_wall(fan, wall, alpha):
    require_complete(fan)
    lc, w = fanmod.is_locally_convex(fan)
    if not lc:
        raise PreconditionError(f"fan is not locally convex at {w}")
    flag, fw = fanmod.is_flag(fan)
    if not flag:
        raise PreconditionError(f"fan is not flag: witness {fw}")
    if alpha not in wall.tau:
        raise PreconditionError(f"ray {alpha} is not on the wall {wall.tau}")
    num = intersection_number(fan, Divisor.ray(fan, alpha), wall)
    if num != 0:
        raise PreconditionError(
            f"D_{alpha} . V({wall.tau}) = {num} != 0; wall is not flat for {alpha}")


def four_cycle_from_flat_wall(fan, wall, alpha):
    """Construct the induced 4-cycle across a wall flat for an on-wall ray.

    The fourth vertex is the unique ray adjacent to both off-wall rays that
    forms a wall with tau minus alpha on the strict negative side of the
    dual of alpha (taken in the second cone's ray basis).
    """
    _require_flat_wall(fan, wall, alpha)
    alpha_star = _dual_covector(fan, wall.sigma_prime, alpha)
    rest = tuple(i for i in wall.tau if i != alpha)
    excluded = set(wall.tau) | {wall.gamma, wall.gamma_prime}
    fc = fanmod.faces(fan)
    candidates = []
    for beta in range(fan.n_rays):
        if beta in excluded:
            continue
        if tuple(sorted(rest + (beta,))) not in fc:
            continue
        if dot(alpha_star, fan.rays[beta]) >= 0:
            continue
        if fan.adjacent(beta, wall.gamma) and fan.adjacent(beta, wall.gamma_prime):
            candidates.append(beta)
    if len(candidates) != 1:
        raise ConstructionError(
            f"expected one fourth-vertex candidate at wall {wall.tau} for {alpha}, "
            f"found {candidates}")
    alpha_prime = candidates[0]
    cycle = FourCycle((alpha, wall.gamma, alpha_prime, wall.gamma_prime))
    ok, witness = cycle.verify(fan)
    if not ok:
        raise ConstructionError(f"constructed cycle fails the induced check: {witness}")
    return cycle.canonical()


@dataclass(frozen=True)
class SideStructureReport:
    positive: tuple
    on_hyperplane: tuple
    negative: tuple
    partner_wall: object
    partner_intersection_zero: object
    violations: tuple


def verify_4cycle_side_structure(fan, wall, alpha):
    """Classify the walls around tau minus alpha by the sign of alpha's dual.

    Expects tau strictly positive, the two ray-replacement walls on the
    hyperplane, exactly one wall strictly negative, and the partner wall to
    be flat for the new ray; deviations are reported, not raised.
    """
    _require_flat_wall(fan, wall, alpha)
    alpha_star = _dual_covector(fan, wall.sigma_prime, alpha)
    rest = tuple(i for i in wall.tau if i != alpha)
    by_tau = _walls_by_tau(fan)
    positive, zero, negative = [], [], []
    for tau, w in by_tau.items():
        if not set(rest).issubset(tau):
            continue
        beta = next(iter(set(tau) - set(rest)))
        s = dot(alpha_star, fan.rays[beta])
        if s > 0:
            positive.append(tau)
        elif s == 0:
            zero.append(tau)
        else:
            negative.append(tau)

    violations = []
    if wall.tau not in positive:
        violations.append(("tau not strictly positive", wall.tau))
    expected_zero = {tuple(sorted(rest + (wall.gamma,))),
                     tuple(sorted(rest + (wall.gamma_prime,)))}
    if set(zero) != expected_zero:
        violations.append(("hyperplane walls differ", tuple(zero)))
    if len(negative) != 1:
        violations.append(("negative side not unique", tuple(negative)))

    partner = negative[0] if len(negative) == 1 else None
    partner_zero = None
    if partner is not None:
        new_ray = next(iter(set(partner) - set(rest)))
        partner_zero = intersection_number(
            fan, Divisor.ray(fan, new_ray), by_tau[partner]) == 0
        if not partner_zero:
            violations.append(("partner wall not flat", partner))
    return SideStructureReport(tuple(positive), tuple(zero), tuple(negative),
                               partner, partner_zero, tuple(violations))


@dataclass(frozen=True)
class FourCycleCover:
    witnessed: dict
    unwitnessed: tuple
    cycles: tuple


def all_rays_in_4cycles(fan):
    """A witnessing induced 4-cycle per ray, via flat walls.

    Rays without a flat wall, or whose every flat wall fails construction,
    are reported unwitnessed with the reason; on a signature-0 locally
    convex fan every ray must be witnessed.
    """
    from ._parallel import map_ordered

    require_complete(fan)
    lc, w = fanmod.is_locally_convex(fan)
    if not lc:
        raise PreconditionError(f"fan is not locally convex at {w}")

    def analyse(alpha):
        flat_walls = [wl for wl in fanmod.walls(fan)
                      if alpha in wl.tau
                      and intersection_number(fan, Divisor.ray(fan, alpha), wl) == 0]
        if not flat_walls:
            return (alpha, None, "no_flat_wall")
        for wl in flat_walls:
            try:
                return (alpha, four_cycle_from_flat_wall(fan, wl, alpha), None)
            except ConstructionError:
                continue
        return (alpha, None, "construction_failed")

    witnessed = {}
    unwitnessed = []
    cycles = set()
    for alpha, cycle, reason in map_ordered(analyse, range(fan.n_rays)):
        if cycle is None:
            unwitnessed.append((alpha, reason))
        else:
            witnessed[alpha] = cycle
            cycles.add(cycle)
    return FourCycleCover(witnessed, tuple(unwitnessed),
                          tuple(sorted(cycles, key=lambda c: c.rays)))


def randomized_complement_experiment(fan, pcone, A, M, seed=0):
    """Experiment: flat-link verdicts under a randomized complement choice.

    The pinned Hermite complement is replaced by a random one (integer
    shear towards the pcone rows plus a unimodular mix of the complement
    rows).  The flatness verdict and the subspace dimension are expected to
    be choice-independent; this is an observation, not an invariant.
    """
    pcone = tuple(sorted(pcone))
    A = tuple(sorted(A))
    M = tuple(sorted(M))
    rng = random.Random(seed)
    baseline = flat_link(fan, pcone, A, M)

    lift_center = tuple(i for i in pcone if i not in A)
    basis, _ = lattice_basis_extend([fan.rays[i] for i in lift_center], fan.dim)
    q = len(lift_center)
    rows = [list(r) for r in basis]
    for k in range(q, fan.dim):
        for j in range(q):
            t = rng.randint(-3, 3)
            rows[k] = [a + t * b for a, b in zip(rows[k], rows[j])]
    for _ in range(4):
        if fan.dim - q < 2:
            break
        i, j = rng.sample(range(q, fan.dim), 2)
        t = rng.randint(-2, 2)
        rows[i] = [a + t * b for a, b in zip(rows[i], rows[j])]
    duals_cols = invert(rows)
    duals = [tuple(duals_cols[i][k] for i in range(fan.dim))
             for k in range(fan.dim)]

    def image(a):
        return tuple(dot(duals[k], fan.rays[a]) for k in range(q, fan.dim))

    lk = fanmod.link(fan, pcone + M)
    spans = [Subspace.from_vectors([image(a) for a in cone], fan.dim - q)
             for cone in lk.cones_upstairs()]
    flat = bool(spans) and all(s == spans[0] for s in spans)
    agrees = (flat == baseline.flat and
              (not flat or spans[0].dim == baseline.subspace.dim))
    if not agrees:
        logger.warning("complement-choice experiment disagrees at %s/%s/%s",
                       pcone, A, M)
    return {"pcone": pcone, "A": A, "M": M, "baseline_flat": baseline.flat,
            "randomized_flat": flat, "agrees": agrees}


def flat_lift_experiment(fan):
    """Experiment for the conjectural combination of flat links on 2-cones.

    When both rays of a 2-cone admit flat links in their single-ray lift
    targets inside one maximal cone, the union of the non-special
    collections is tested for a flat link over the 2-cone itself.  Results
    are observations; disagreements are logged and returned, never raised.
    """
    observations = []
    for pcone in sorted(fanmod.faces(fan)):
        if len(pcone) != 2:
            continue
        i1, i2 = pcone
        rep1 = special_rays(fan, pcone, (i1,))
        rep2 = special_rays(fan, pcone, (i2,))
        for cone in fan.max_cones:
            if not set(pcone).issubset(cone):
                continue
            m1 = {a for a in cone if a in rep1.non_special}
            m2 = {a for a in cone if a in rep2.non_special}
            union = tuple(sorted(m1 | m2))
            if not fan.is_cone(pcone + union):
                continue
            # flatness is read in N(pcone): image the small link's cones
            # through the 2-cone quotient
            base_link = fanmod.link(fan, pcone)
            lk = fanmod.link(fan, pcone + union)
            spans = [Subspace.from_vectors([base_link.image(a) for a in c],
                                           fan.dim - len(pcone))
                     for c in lk.cones_upstairs()]
            flat = bool(spans) and all(s == spans[0] for s in spans)
            observations.append({"pcone": pcone, "union": union, "flat": flat})
            if not flat:
                logger.warning("flat-lift expectation fails at %s + %s",
                               pcone, union)
            break
    return observations
