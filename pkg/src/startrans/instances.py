"""Ready-made instances: the two-variable running example, small complete
intersections, a vanishing-top example, non-Koszul inputs, and a seeded
random corpus used by the acceptance suite and ``koszul --seed``.

Every instance is a pair (complex, sop) over a fresh ring; complexes are
Koszul complexes of validated parameter systems unless noted.
"""

from __future__ import annotations

import random

from .complexes import FreeComplex, koszul, validate_sop
from .fields import RationalField
from .modules import GradedFreeModule
from .poly import PolyMatrix, PolyRing


def standard_ring(names=("x", "y"), weights=None, field=None):
    return PolyRing(field or RationalField(), names, weights)


def exa_instance(field=None):
    """The repo's running example: F = Koszul(x^2, y^2) over Q[x, y],
    parameters (x, y); the colon image is (x^2, xy, y^2)."""
    ring = standard_ring(("x", "y"), field=field)
    gens = validate_sop(ring, [ring.parse("x^2"), ring.parse("y^2")])
    sop = validate_sop(ring, [ring.var(0), ring.var(1)])
    return koszul(gens), sop


def complete_intersection_instance(powers=(2, 2, 2), sop_powers=None, field=None):
    """Koszul complex of pure variable powers in len(powers) variables."""
    n = len(powers)
    names = tuple("xyzw"[:n]) if n <= 4 else tuple(f"x{i}" for i in range(n))
    ring = standard_ring(names, field=field)
    gens = validate_sop(
        ring, [ring.monomial(_power_exps(n, i, e)) for i, e in enumerate(powers)]
    )
    if sop_powers is None:
        sop_powers = (1,) * n
    sop = validate_sop(
        ring,
        [ring.monomial(_power_exps(n, i, e)) for i, e in enumerate(sop_powers)],
    )
    return koszul(gens), sop


def _power_exps(n, i, e):
    exps = [0] * n
    exps[i] = e
    return tuple(exps)


def vanishing_top_instance(field=None):
    """F = Koszul(x, y) with parameters (x, y): the decomposition vectors
    are signed standard basis vectors, so the output top module vanishes."""
    ring = standard_ring(("x", "y"), field=field)
    sop = validate_sop(ring, [ring.var(0), ring.var(1)])
    return koszul(sop), sop


def padded_zero_top_instance(field=None):
    """Length-2 complex with a zero top module: 0 -> 0 -> R(-1) -> R."""
    ring = standard_ring(("x", "y"), field=field)
    modules = (
        GradedFreeModule(ring, 1, (0,)),
        GradedFreeModule(ring, 1, (1,)),
        GradedFreeModule(ring, 0, ()),
    )
    maps = (
        PolyMatrix(ring, [[ring.var(0)]]),
        PolyMatrix(ring, [[]], nrows=1, ncols=0),
    )
    comp = FreeComplex(ring, modules, maps)
    sop = validate_sop(ring, [ring.var(0), ring.var(1)])
    return comp, sop


def square_ideal_instance(field=None):
    """Resolution 0 -> R(-3)^2 -> R(-2)^3 -> R of R/(x^2, xy, y^2); a
    non-Koszul input with a top module of rank 2."""
    ring = standard_ring(("x", "y"), field=field)
    x, y = ring.var(0), ring.var(1)
    zero = ring.zero()
    modules = (
        GradedFreeModule(ring, 1, (0,)),
        GradedFreeModule(ring, 3, (2, 2, 2)),
        GradedFreeModule(ring, 2, (3, 3)),
    )
    maps = (
        PolyMatrix(ring, [[x * x, x * y, y * y]]),
        PolyMatrix(ring, [[y, zero], [-x, y], [zero, -x]]),
    )
    comp = FreeComplex(ring, modules, maps)
    sop = validate_sop(ring, [x, y])
    return comp, sop


def direct_sum_instance(powers_a=(1, 1), powers_b=(2, 2), field=None):
    """Direct sum of two Koszul complexes in the same two variables; mixes
    unit and non-unit decomposition vectors."""
    ring = standard_ring(("x", "y"), field=field)
    ca = koszul(
        validate_sop(
            ring,
            [ring.monomial(_power_exps(2, i, e)) for i, e in enumerate(powers_a)],
        )
    )
    cb = koszul(
        validate_sop(
            ring,
            [ring.monomial(_power_exps(2, i, e)) for i, e in enumerate(powers_b)],
        )
    )
    modules = []
    maps = []
    for p in range(3):
        ma, mb = ca.module(p), cb.module(p)
        modules.append(
            GradedFreeModule(ring, ma.rank + mb.rank, ma.twists + mb.twists)
        )
    for p in range(1, 3):
        a, b = ca.phi(p), cb.phi(p)
        rows = []
        for i in range(a.nrows):
            rows.append(list(a.row(i)) + [ring.zero()] * b.ncols)
        for i in range(b.nrows):
            rows.append([ring.zero()] * a.ncols + list(b.row(i)))
        maps.append(PolyMatrix(ring, rows, a.nrows + b.nrows, a.ncols + b.ncols))
    comp = FreeComplex(ring, tuple(modules), tuple(maps))
    sop = validate_sop(ring, [ring.var(0), ring.var(1)])
    return comp, sop


def random_instance(seed, field=None):
    """Seeded random corpus instance: n in {2, 3}, monomial parameters
    x_i^a with a <= 3, complex = Koszul(x_i^b) with a <= b <= 3 (so the top
    image lies in the parameter ideal)."""
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    names = ("x", "y", "z")[:n]
    ring = standard_ring(names, field=field)
    sop_powers = [rng.randint(1, 3) for _ in range(n)]
    gen_powers = [rng.randint(a, 3) for a in sop_powers]
    sop = validate_sop(
        ring,
        [ring.monomial(_power_exps(n, i, e)) for i, e in enumerate(sop_powers)],
    )
    gens = validate_sop(
        ring,
        [ring.monomial(_power_exps(n, i, e)) for i, e in enumerate(gen_powers)],
    )
    name = (
        f"random_seed{seed}_n{n}_sop{''.join(map(str, sop_powers))}"
        f"_gen{''.join(map(str, gen_powers))}"
    )
    return name, koszul(gens), sop


def corpus(count=20, seed=2024, field=None):
    """The fixed corpus: named hand instances plus ``count`` random ones."""
    out = [
        ("exa",) + exa_instance(field),
        ("ci3",) + complete_intersection_instance((2, 2, 2), field=field),
        ("vanishing_top",) + vanishing_top_instance(field),
        ("square_ideal",) + square_ideal_instance(field),
        ("direct_sum",) + direct_sum_instance(field=field),
    ]
    for k in range(count):
        out.append(random_instance(seed + k, field=field))
    return out
