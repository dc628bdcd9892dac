"""Bundled fans and fan builders: named examples, products, polygons,
cross polytopes, and stellar-style subdivisions for randomized testing."""

from __future__ import annotations

import itertools
import random

from .exactlin import primitive
from .fan import Fan


def sq2():
    """Normal fan of the square: the P1 x P1 fan."""
    return Fan.make(2, [(1, 0), (0, 1), (-1, 0), (0, -1)],
                    [(0, 1), (1, 2), (2, 3), (3, 0)])


def pent():
    """Locally convex pentagon fan."""
    return Fan.make(2, [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)],
                    [(0, 4), (4, 1), (1, 2), (2, 3), (3, 0)])


def p2():
    """Projective-plane fan: complete but not flag, not locally convex."""
    return Fan.make(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (2, 0)])


def cross_polytope(d):
    """The fan over the cross polytope: rays +-e_i, cones all sign choices."""
    rays = [tuple(int(i == k) for k in range(d)) for i in range(d)]
    rays += [tuple(-int(i == k) for k in range(d)) for i in range(d)]
    cones = [tuple(i + d * s for i, s in enumerate(signs))
             for signs in itertools.product((0, 1), repeat=d)]
    return Fan.make(d, rays, cones)


def cp3():
    return cross_polytope(3)


def cp4():
    return cross_polytope(4)


_NGON_RAYS = {
    4: [(1, 0), (0, 1), (-1, 0), (0, -1)],
    5: [(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1)],
    6: [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
    7: [(1, 0), (2, 1), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
    8: [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 0), (-1, -1), (0, -1)],
}


def ngon(n):
    """Locally convex n-gon fans for n = 4..8 (every star is convex)."""
    if n not in _NGON_RAYS:
        raise ValueError(f"no bundled {n}-gon; available: {sorted(_NGON_RAYS)}")
    rays = _NGON_RAYS[n]
    cones = [(i, (i + 1) % n) for i in range(n)]
    return Fan.make(2, rays, cones)


def product(f1, f2):
    """Product fan: rays embedded in the direct sum, cones products of cones."""
    d = f1.dim + f2.dim
    rays = [r + (0,) * f2.dim for r in f1.rays]
    rays += [(0,) * f1.dim + r for r in f2.rays]
    shift = f1.n_rays
    cones = [tuple(c1) + tuple(shift + i for i in c2)
             for c1 in f1.max_cones for c2 in f2.max_cones]
    return Fan.make(d, rays, cones)


def sq2xsq2():
    return product(sq2(), sq2())


def sq2xpent():
    return product(sq2(), pent())


def stellar_subdivide(fan, cone):
    """Stellar subdivision at a maximal cone: new ray at the cone barycenter."""
    cone = tuple(sorted(cone))
    if cone not in fan.max_cones:
        raise ValueError(f"{cone} is not a maximal cone")
    new_ray = primitive(tuple(sum(fan.rays[i][k] for i in cone)
                              for k in range(fan.dim)))
    if new_ray in fan.rays:
        raise ValueError("barycenter coincides with an existing ray")
    b = fan.n_rays
    cones = [c for c in fan.max_cones if c != cone]
    for drop in cone:
        cones.append(tuple(sorted(set(cone) - {drop})) + (b,))
    return Fan.make(fan.dim, fan.rays + (new_ray,), cones)


def random_subdivided_cp3(seed, max_steps=4):
    """A complete simplicial 3D fan built by stellar subdivisions of CP3."""
    rng = random.Random(seed)
    fan = cp3()
    for _ in range(rng.randint(1, max_steps)):
        cone = fan.max_cones[rng.randrange(len(fan.max_cones))]
        try:
            fan = stellar_subdivide(fan, cone)
        except ValueError:
            continue
    return fan


NAMED = {
    "sq2": sq2,
    "pent": pent,
    "p2": p2,
    "cp3": cp3,
    "cp4": cp4,
    "sq2xsq2": sq2xsq2,
    "sq2xpent": sq2xpent,
}


def named(name):
    try:
        return NAMED[name]()
    except KeyError:
        raise ValueError(f"unknown fan {name!r}; available: {sorted(NAMED)}")


def write_corpus(directory):
    """Regenerate the bundled fan files under the given directory."""
    import pathlib

    from . import jsonio

    directory = pathlib.Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name in sorted(NAMED):
        jsonio.dump(jsonio.fan_to_json(named(name)),
                    directory / f"{name}.json", pretty=True)


if __name__ == "__main__":
    import sys

    write_corpus(sys.argv[1] if len(sys.argv) > 1 else "corpus")
