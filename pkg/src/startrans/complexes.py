"""Graded free complexes: Koszul construction, validation, exactness
certification, and the decomposition of the top map over a parameter ideal.

Index subsets of {1..n} are kept as sorted 1-indexed tuples throughout; the
boundary of a Koszul basis element e_S is
``sum over i in S of (-1)^(number of j in S below i) * x_i * e_(S minus i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NotASop, NotInModule, PreconditionFailed, ValidationError
from .modules import GradedFreeModule, buchberger, hilbert_data, syzygies
from .poly import PolyMatrix


def subsets(n, p):
    """All p-element subsets of {1..n} as sorted tuples, in lex order."""
    return [tuple(c) for c in combinations(range(1, n + 1), p)]


def count_below(i, subset):
    """Number of indices in the subset strictly below i."""
    return sum(1 for j in subset if j < i)


def offset_sum(subset):
    """Sum of (i - 1) over the subset; 0 for the empty subset."""
    return sum(i - 1 for i in subset)


def complement(subset, n):
    inside = set(subset)
    return tuple(i for i in range(1, n + 1) if i not in inside)


def co_singleton(i, n):
    """The subset {1..n} minus {i}."""
    return tuple(j for j in range(1, n + 1) if j != i)


def sign_scalar(field_obj, exponent):
    return field_obj.one if exponent % 2 == 0 else field_obj.neg(field_obj.one)


@dataclass(frozen=True)
class SopData:
    """A validated homogeneous system of parameters."""

    ring: object
    gens: tuple
    degrees: tuple
    colength: int
    validated: bool = True

    @property
    def n(self):
        return len(self.gens)

    def ideal_gb(self):
        ambient = GradedFreeModule(self.ring, 1, (0,))
        return buchberger(ambient, [ambient.vector((g,)) for g in self.gens])


def validate_sop(ring, polys):
    """Check the given elements cut out a finite-colength ideal.

    Raises ValidationError on structurally bad input and NotASop (carrying
    the infinite Hilbert series) when the colength is infinite.
    """
    polys = tuple(polys)
    if len(polys) < 2:
        raise ValidationError("a system of parameters needs at least 2 elements")
    degrees = []
    for k, p in enumerate(polys):
        d = p.homogeneous_degree()
        if not isinstance(d, int) or d <= 0:
            raise ValidationError(
                f"parameter {k + 1} must be homogeneous of positive degree"
            )
        degrees.append(d)
    ambient = GradedFreeModule(ring, 1, (0,))
    gb = buchberger(ambient, [ambient.vector((p,)) for p in polys])
    data = hilbert_data(gb)
    if data.dimension is None:
        raise NotASop(
            "parameters do not span a finite-colength ideal", series=data.series
        )
    return SopData(ring, polys, tuple(degrees), data.dimension)


@dataclass(frozen=True)
class FreeComplex:
    """Sequence F_0 .. F_n of graded free modules with boundary maps;
    ``maps[p-1]`` sends F_p to F_(p-1), columns being images of the source
    basis.  ``labels`` optionally names each module's basis elements."""

    ring: object
    modules: tuple
    maps: tuple
    labels: tuple = None

    @property
    def length(self):
        return len(self.modules) - 1

    def module(self, p):
        return self.modules[p]

    def phi(self, p):
        """The boundary map F_p -> F_(p-1), for 1 <= p <= length."""
        return self.maps[p - 1]

    def top_rank(self):
        return self.modules[-1].rank

    def image_gb(self, p):
        """Groebner basis of Im phi_p inside F_(p-1)."""
        target = self.modules[p - 1]
        m = self.phi(p)
        cols = [target.vector(m.column(j)) for j in range(m.ncols)]
        return buchberger(target, cols)

    def effective_length(self):
        top = self.length
        while top > 0 and self.modules[top].rank == 0:
            top -= 1
        return top


@dataclass(frozen=True)
class ComplexDefect:
    kind: str  # "shape" | "homogeneity" | "composition"
    position: int
    row: int = -1
    col: int = -1
    message: str = ""


def homogeneity_defect(comp):
    """First non-homogeneous entry of any boundary map, or None."""
    for p in range(1, comp.length + 1):
        m = comp.phi(p)
        src = comp.module(p)
        tgt = comp.module(p - 1)
        if m.nrows != tgt.rank or m.ncols != src.rank:
            return ComplexDefect(
                "shape", p, message=f"map {p} is {m.nrows}x{m.ncols}, expected "
                f"{tgt.rank}x{src.rank}"
            )
        bad = m.check_homogeneous(tgt.twists, src.twists)
        if bad is not None:
            return ComplexDefect(
                "homogeneity", p, bad[0], bad[1],
                f"entry ({bad[0]},{bad[1]}) of map {p} is not homogeneous of "
                "the degree forced by the twists",
            )
    return None


def composition_defect(comp):
    """First nonzero entry of a composite phi_(p-1) phi_p, or None."""
    for p in range(2, comp.length + 1):
        prod = comp.phi(p - 1) @ comp.phi(p)
        for i in range(prod.nrows):
            for j in range(prod.ncols):
                if not prod.entry(i, j).is_zero():
                    return ComplexDefect(
                        "composition", p, i, j,
                        f"(phi_{p - 1} phi_{p}) has nonzero entry ({i},{j})",
                    )
    return None


def check_complex(comp):
    """Full structural check; None when the complex is well formed."""
    return homogeneity_defect(comp) or composition_defect(comp)


@dataclass(frozen=True)
class AcyclicityCertificate:
    ok: bool
    failed_position: int = -1
    witnesses: tuple = ()
    detail: str = ""


def certify_acyclic(comp):
    """Certify Ker phi_p = Im phi_(p+1) for 1 <= p < n and phi_n injective.

    Each kernel generator (a syzygy of the columns of phi_p) is lifted
    through phi_(p+1); the certificate records those witnesses.
    """
    defect = check_complex(comp)
    if defect is not None:
        raise PreconditionFailed(f"not a complex: {defect.message}")
    n = comp.length
    witnesses = []
    for p in range(1, n + 1):
        src = comp.module(p)
        m = comp.phi(p)
        cols = [
            comp.module(p - 1).vector(m.column(j)) for j in range(m.ncols)
        ]
        rels = syzygies(cols, comp.module(p - 1))
        rels = [r for r in rels if not r.is_zero()]
        if p == n:
            if rels:
                return AcyclicityCertificate(
                    False, p, tuple(witnesses),
                    f"top map has a nonzero kernel element {rels[0]!r}",
                )
            witnesses.append(())
            continue
        nxt = comp.phi(p + 1)
        nxt_cols = [src.vector(nxt.column(j)) for j in range(nxt.ncols)]
        image = buchberger(src, nxt_cols)
        level = []
        for r in rels:
            v = src.vector(r.coords)
            try:
                level.append(image.lift(v))
            except NotInModule:
                return AcyclicityCertificate(
                    False, p, tuple(witnesses),
                    f"kernel element {v!r} at position {p} is not in the "
                    "image of the next map",
                )
        witnesses.append(tuple(level))
    return AcyclicityCertificate(True, -1, tuple(witnesses))


def check_qf_containment(comp, sop):
    """True iff every entry of the top map lies in the parameter ideal."""
    gb = sop.ideal_gb()
    m = comp.phi(comp.length)
    ambient = gb.ambient
    for i in range(m.nrows):
        for j in range(m.ncols):
            e = m.entry(i, j)
            if e.is_zero():
                continue
            if not gb.contains(ambient.vector((e,))):
                return False
    return True


def koszul(sop):
    """The Koszul complex of a validated sop, with subset labels.

    Basis of position p is {e_S} over p-subsets in lex order; twists
    accumulate the generator degrees.
    """
    if not isinstance(sop, SopData) or not sop.validated:
        raise PreconditionFailed("koszul requires a validated sop")
    ring = sop.ring
    n = sop.n
    f = ring.field
    modules = []
    labels = []
    for p in range(n + 1):
        subs = subsets(n, p)
        twists = tuple(sum(sop.degrees[i - 1] for i in s) for s in subs)
        modules.append(GradedFreeModule(ring, len(subs), twists))
        labels.append(tuple(subs))
    maps = []
    for p in range(1, n + 1):
        src = subsets(n, p)
        tgt = subsets(n, p - 1)
        tgt_index = {s: k for k, s in enumerate(tgt)}
        entries = [[ring.zero() for _ in src] for _ in tgt]
        for j, s in enumerate(src):
            for i in s:
                sign = sign_scalar(f, count_below(i, s))
                row = tgt_index[tuple(k for k in s if k != i)]
                entries[row][j] = entries[row][j] + sop.gens[i - 1].scale(sign)
        maps.append(PolyMatrix(ring, entries, len(tgt), len(src)))
    return FreeComplex(ring, tuple(modules), tuple(maps), tuple(labels))


def tensor_module(free_mod, sop, p, shift=0):
    """The module free_mod (x) K_p with basis (lambda, subset), lambda-major;
    twists are deg(v) + deg(e_S) - shift."""
    subs = subsets(sop.n, p)
    twists = []
    for lam in range(free_mod.rank):
        base = free_mod.twists[lam]
        for s in subs:
            twists.append(base + sum(sop.degrees[i - 1] for i in s) - shift)
    return GradedFreeModule(free_mod.ring, free_mod.rank * len(subs), tuple(twists))


def tensor_boundary(free_mod, sop, p, shift=0):
    """Matrix of (free_mod (x) boundary_p) from free_mod (x) K_p to
    free_mod (x) K_(p-1), in the lambda-major bases."""
    ring = free_mod.ring
    f = ring.field
    n = sop.n
    src = subsets(n, p)
    tgt = subsets(n, p - 1)
    tgt_index = {s: k for k, s in enumerate(tgt)}
    rows = free_mod.rank * len(tgt)
    cols = free_mod.rank * len(src)
    entries = [[ring.zero() for _ in range(cols)] for _ in range(rows)]
    for lam in range(free_mod.rank):
        for j, s in enumerate(src):
            cj = lam * len(src) + j
            for i in s:
                sign = sign_scalar(f, count_below(i, s))
                ri = lam * len(tgt) + tgt_index[tuple(k for k in s if k != i)]
                entries[ri][cj] = entries[ri][cj] + sop.gens[i - 1].scale(sign)
    return PolyMatrix(ring, entries, rows, cols)


def decompose_images(comp, sop):
    """Vectors v[(lam, i)] with phi_n(v_lam) = sum_i x_i * v[(lam, i)].

    Canonical: every entry of the image column is divided through the
    reduced basis of the parameter ideal and the witness is pushed back to
    the given parameters.  Returns a tuple (per lambda) of n-tuples.
    """
    if not check_qf_containment(comp, sop):
        raise PreconditionFailed(
            "Im phi_n is not contained in Q*F_(n-1); decomposition impossible"
        )
    n = comp.length
    ring = comp.ring
    top_map = comp.phi(n)
    target = comp.module(n - 1)
    gb = sop.ideal_gb()
    ambient1 = gb.ambient
    out = []
    for lam in range(comp.module(n).rank):
        column = top_map.column(lam)
        parts = [[ring.zero() for _ in range(target.rank)] for _ in range(n)]
        for ell, entry in enumerate(column):
            if entry.is_zero():
                continue
            witness = gb.lift(ambient1.vector((entry,)))
            for i in range(n):
                parts[i][ell] = witness[i]
        vectors = tuple(target.vector(tuple(parts[i])) for i in range(n))
        recombined = target.zero_vector()
        for x, v in zip(sop.gens, vectors):
            recombined = recombined + v.mul_poly(x)
        if not (recombined - target.vector(column)).is_zero():
            raise NotInModule("decomposition failed to recombine (internal)")
        out.append(vectors)
    return tuple(out)
