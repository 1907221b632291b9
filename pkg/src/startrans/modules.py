"""Groebner bases for submodules of graded free modules.

The engine behind every membership test, witness, syzygy, colon,
intersection and Hilbert computation in the package.  Buchberger's
algorithm with the classical pair criteria, full tail reduction, and a
tracked transformation so that every basis element knows its expression in
the input generators (that expression is what makes witnesses canonical).

Module terms are ordered degree first (twists included), then position
(lower basis index wins), then the ring order on monomials.  When the
ambient ring carries a quotient ideal J, submodule computations adjoin
J-multiples of the basis vectors, so results are correct over R/J.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, NotInModule, StarTransError
from .poly import MonomialOrder, Polynomial, PolyRing, format_polynomial


@dataclass(frozen=True)
class GradedFreeModule:
    """Free module with a degree (twist) per basis element."""

    ring: PolyRing
    rank: int
    twists: tuple

    def __post_init__(self):
        if len(self.twists) != self.rank:
            raise DimensionMismatch("one twist per basis element required")

    def zero_vector(self):
        z = self.ring.zero()
        return ModuleVector(self, (z,) * self.rank)

    def basis_vector(self, i, coeff=None):
        coords = [self.ring.zero()] * self.rank
        coords[i] = (
            self.ring.one() if coeff is None else self.ring.constant(coeff)
        )
        return ModuleVector(self, tuple(coords))

    def vector(self, coords):
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise DimensionMismatch("coordinate count must equal rank")
        return ModuleVector(self, coords)

    def same_shape(self, other):
        return (
            self.rank == other.rank
            and self.twists == other.twists
            and self.ring.compatible(other.ring)
        )


def term_key(module, pos, exps):
    """Sort key for module terms (larger key = larger term)."""
    ring = module.ring
    if ring.order.elim_first:
        rest = exps[1:]
        deg = sum(w * e for w, e in zip(ring.weights[1:], rest))
        return (
            exps[0],
            deg + module.twists[pos],
            -pos,
            tuple(-e for e in reversed(rest)),
        )
    return (
        ring.mono_degree(exps) + module.twists[pos],
        -pos,
        ring.mono_key(exps),
    )


class ModuleVector:
    """Element of a graded free module; coordinates are polynomials."""

    __slots__ = ("module", "coords")

    def __init__(self, module, coords):
        self.module = module
        self.coords = tuple(coords)

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other):
        if not self.module.same_shape(other.module):
            raise DimensionMismatch("vectors live in different modules")

    def __add__(self, other):
        self._check(other)
        return ModuleVector(
            self.module, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._check(other)
        return ModuleVector(
            self.module, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        return ModuleVector(self.module, tuple(-a for a in self.coords))

    def scale(self, c):
        return ModuleVector(self.module, tuple(a.scale(c) for a in self.coords))

    def mul_poly(self, p):
        return ModuleVector(self.module, tuple(a * p for a in self.coords))

    def mul_term(self, coeff, exps):
        return ModuleVector(
            self.module, tuple(a.mul_term(coeff, exps) for a in self.coords)
        )

    def __eq__(self, other):
        return (
            isinstance(other, ModuleVector)
            and self.module.same_shape(other.module)
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(tuple(frozenset(c.terms.items()) for c in self.coords))

    def lead(self):
        """Largest term as (position, exponents, coefficient); None if zero."""
        best = None
        best_key = None
        for pos, c in enumerate(self.coords):
            for exps, coeff in c.terms.items():
                k = term_key(self.module, pos, exps)
                if best_key is None or k > best_key:
                    best_key = k
                    best = (pos, exps, coeff)
        return best

    def homogeneous_degree(self):
        """Common value of deg(coord) + twist over nonzero coords, or None
        when the vector is zero or not homogeneous."""
        degs = set()
        for pos, c in enumerate(self.coords):
            if c.is_zero():
                continue
            d = c.homogeneous_degree()
            if not isinstance(d, int):
                return None
            degs.add(d + self.module.twists[pos])
        if len(degs) == 1:
            return degs.pop()
        return None

    def constant_parts(self):
        """Constant coefficient of every coordinate, as a list of scalars."""
        return [c.constant_coeff() for c in self.coords]

    def __repr__(self):
        inner = ", ".join(format_polynomial(c) for c in self.coords)
        return f"({inner})"


# -- division ---------------------------------------------------------------


def _max_term(module, work):
    best = None
    best_key = None
    for pos, terms in enumerate(work):
        for exps in terms:
            k = term_key(module, pos, exps)
            if best_key is None or k > best_key:
                best_key = k
                best = (pos, exps)
    return best


def _divide(vector, divisors, leads, track=False):
    """Fully reduce ``vector`` by ``divisors``; every remainder term is
    divisible by no divisor lead.  Returns (quotients, remainder) where
    quotients[k] satisfies vector = sum quotients[k]*divisors[k] + remainder
    (quotients is None unless ``track``)."""
    module = vector.module
    ring = module.ring
    f = ring.field
    work = [dict(c.terms) for c in vector.coords]
    rem = [{} for _ in range(module.rank)]
    quots = [{} for _ in divisors] if track else None

    def sub_term(target, exps, c):
        c0 = f.sub(target.get(exps, f.zero), c)
        if f.is_zero(c0):
            target.pop(exps, None)
        else:
            target[exps] = c0

    while True:
        top = _max_term(module, work)
        if top is None:
            break
        pos, exps = top
        coeff = work[pos][exps]
        for k, lead in enumerate(leads):
            if lead is None:
                continue
            gpos, gexps, gcoeff = lead
            if gpos == pos and ring.mono_divides(gexps, exps):
                u = ring.mono_div(exps, gexps)
                q = f.div(coeff, gcoeff)
                for dpos, dpoly in enumerate(divisors[k].coords):
                    for dexps, dc in dpoly.terms.items():
                        sub_term(work[dpos], ring.mono_mul(dexps, u), f.mul(q, dc))
                if track:
                    q0 = f.add(quots[k].get(u, f.zero), q)
                    if f.is_zero(q0):
                        quots[k].pop(u, None)
                    else:
                        quots[k][u] = q0
                break
        else:
            rem[pos][exps] = coeff
            del work[pos][exps]

    remainder = ModuleVector(
        module, tuple(Polynomial(ring, r) for r in rem)
    )
    if track:
        qpolys = [Polynomial(ring, q) for q in quots]
        return qpolys, remainder
    return None, remainder


# -- Buchberger -------------------------------------------------------------


def _adjoined_generators(ambient):
    """J-multiples of the basis vectors, for a ring with a quotient ideal."""
    out = []
    for g in ambient.ring.quotient:
        for i in range(ambient.rank):
            coords = [ambient.ring.zero()] * ambient.rank
            coords[i] = g
            out.append(ModuleVector(ambient, tuple(coords)))
    return out


class SubmoduleGB:
    """Generators of a submodule together with its reduced Groebner basis.

    ``rows[k]`` expresses ``gb[k]`` as a combination of the working
    generator list (the input generators followed by any quotient-ideal
    multiples that were adjoined).
    """

    __slots__ = ("ambient", "generators", "adjoined", "gb", "rows", "order", "reduced")

    def __init__(self, ambient, generators, adjoined, gb, rows):
        self.ambient = ambient
        self.generators = tuple(generators)
        self.adjoined = tuple(adjoined)
        self.gb = tuple(gb)
        self.rows = tuple(tuple(r) for r in rows)
        self.order = ambient.ring.order
        self.reduced = True

    @property
    def working_generators(self):
        return self.generators + self.adjoined

    def leads(self):
        return [g.lead() for g in self.gb]

    def divide(self, v):
        return _divide(v, list(self.gb), self.leads(), track=True)

    def normal_form(self, v):
        _, r = _divide(v, list(self.gb), self.leads(), track=False)
        return r

    def contains(self, v):
        return self.normal_form(v).is_zero()

    def lift(self, v):
        """Canonical witness over the *input* generators; NotInModule if
        the vector is outside the submodule."""
        quots, rem = self.divide(v)
        if not rem.is_zero():
            raise NotInModule("vector has nonzero normal form")
        ring = self.ambient.ring
        total = [ring.zero()] * len(self.working_generators)
        for q, row in zip(quots, self.rows):
            if q.is_zero():
                continue
            for j, a in enumerate(row):
                if a.terms:
                    total[j] = total[j] + q * a
        witness = total[: len(self.generators)]
        check = self.ambient.zero_vector()
        for c, g in zip(total, self.working_generators):
            if c.terms:
                check = check + g.mul_poly(c)
        if not (check - v).is_zero():
            raise StarTransError("witness recombination failed (internal)")
        return tuple(witness)

    def __repr__(self):
        gens = "; ".join(repr(g) for g in self.gb)
        return f"SubmoduleGB[{len(self.gb)} elements: {gens}]"


def _spair_data(ring, lead_i, lead_j):
    lcm = ring.mono_lcm(lead_i[1], lead_j[1])
    return lcm


def buchberger(ambient, gens, *, adjoin_quotient=True):
    """Reduced Groebner basis of the submodule generated by ``gens``.

    Deterministic: pairs are processed by (twisted lcm degree, i, j); the
    reduced basis is sorted by decreasing lead term.
    """
    ring = ambient.ring
    f = ring.field
    gens = tuple(gens)
    for g in gens:
        if not g.module.same_shape(ambient):
            raise DimensionMismatch("generator outside the ambient module")
    adjoined = (
        tuple(_adjoined_generators(ambient))
        if (adjoin_quotient and ring.quotient)
        else ()
    )
    working = list(gens) + list(adjoined)

    basis = []
    rows = []
    leads = []
    for j, g in enumerate(working):
        if g.is_zero():
            continue
        row = [ring.zero()] * len(working)
        row[j] = ring.one()
        basis.append(g)
        rows.append(row)
        leads.append(g.lead())

    rank_one = ambient.rank == 1

    def pair_degree(i, j):
        lcm = ring.mono_lcm(leads[i][1], leads[j][1])
        return ring.mono_degree(lcm) + ambient.twists[leads[i][0]]

    pairs = []
    done = set()
    for i in range(len(basis)):
        for j in range(i):
            if leads[i][0] == leads[j][0]:
                pairs.append((pair_degree(j, i), j, i))
    pairs.sort()

    while pairs:
        _, i, j = pairs.pop(0)
        if (i, j) in done:
            continue
        done.add((i, j))
        li, lj = leads[i], leads[j]
        lcm = ring.mono_lcm(li[1], lj[1])
        if rank_one and ring.mono_mul(li[1], lj[1]) == lcm:
            continue  # coprime leads; valid only for ideals
        chained = False
        for k in range(len(basis)):
            if k in (i, j) or leads[k][0] != li[0]:
                continue
            if ring.mono_divides(leads[k][1], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a in done and b in done:
                    chained = True
                    break
        if chained:
            continue
        ui = ring.mono_div(lcm, li[1])
        uj = ring.mono_div(lcm, lj[1])
        ci = f.invert(li[2])
        cj = f.invert(lj[2])
        s = basis[i].mul_term(ci, ui) - basis[j].mul_term(cj, uj)
        if s.is_zero():
            continue
        quots, rem = _divide(s, basis, leads, track=True)
        if rem.is_zero():
            continue
        row = [ring.zero()] * len(working)
        srow_i = rows[i]
        srow_j = rows[j]
        for t in range(len(working)):
            acc = srow_i[t].mul_term(ci, ui) - srow_j[t].mul_term(cj, uj)
            for q, ro in zip(quots, rows):
                if q.terms and ro[t].terms:
                    acc = acc - q * ro[t]
            row[t] = acc
        new_index = len(basis)
        basis.append(rem)
        rows.append(row)
        leads.append(rem.lead())
        for k in range(new_index):
            if leads[k][0] == leads[new_index][0]:
                pairs.append((pair_degree(k, new_index), k, new_index))
        pairs.sort()

    return _reduce_basis(ambient, gens, adjoined, basis, rows)


def _reduce_basis(ambient, gens, adjoined, basis, rows):
    ring = ambient.ring
    f = ring.field
    order = sorted(
        range(len(basis)),
        key=lambda k: term_key(ambient, basis[k].lead()[0], basis[k].lead()[1]),
    )
    kept = []
    for idx in order:
        lead = basis[idx].lead()
        redundant = False
        for kidx in kept:
            kl = basis[kidx].lead()
            if kl[0] == lead[0] and ring.mono_divides(kl[1], lead[1]):
                redundant = True
                break
        if not redundant:
            kept.append(idx)

    final = []
    final_rows = []
    for pos, idx in enumerate(kept):
        others = [basis[k] for k in kept if k != idx]
        other_rows = [rows[k] for k in kept if k != idx]
        other_leads = [g.lead() for g in others]
        quots, rem = _divide(basis[idx], others, other_leads, track=True)
        if rem.is_zero():
            continue
        row = list(rows[idx])
        for q, ro in zip(quots, other_rows):
            if q.is_zero():
                continue
            for t in range(len(row)):
                if ro[t].terms:
                    row[t] = row[t] - q * ro[t]
        lc = rem.lead()[2]
        inv = f.invert(lc)
        rem = rem.scale(inv)
        row = [c.scale(inv) for c in row]
        final.append(rem)
        final_rows.append(row)

    ordering = sorted(
        range(len(final)),
        key=lambda k: term_key(ambient, final[k].lead()[0], final[k].lead()[1]),
        reverse=True,
    )
    final = [final[k] for k in ordering]
    final_rows = [final_rows[k] for k in ordering]
    return SubmoduleGB(ambient, gens, adjoined, final, final_rows)


# -- public operations -------------------------------------------------------


def normal_form(v, gb):
    """Remainder of v on division by the reduced basis; v minus the result
    lies in the submodule."""
    if not v.module.same_shape(gb.ambient):
        raise DimensionMismatch("vector outside the ambient module")
    return gb.normal_form(v)


def lift_witness(v, gens, ambient=None, gb=None):
    """Coefficients c with v = sum c_i gens_i, canonical via the reduced
    basis; raises NotInModule when v is outside the span."""
    if ambient is None:
        if not gens:
            raise DimensionMismatch("ambient required for empty generator list")
        ambient = gens[0].module
    if gb is None:
        gb = buchberger(ambient, gens)
    return gb.lift(v)


def syzygies(gens, ambient=None):
    """Generators of the relation module {c : sum c_i gens_i = 0}.

    Returned as the reduced basis of the syzygy module inside a fresh free
    module of rank len(gens) whose twists are the generator degrees.
    """
    gens = tuple(gens)
    if ambient is None:
        if not gens:
            raise DimensionMismatch("ambient required for empty generator list")
        ambient = gens[0].module
    ring = ambient.ring
    twists = []
    for g in gens:
        d = g.homogeneous_degree()
        twists.append(d if isinstance(d, int) else 0)
    syz_module = GradedFreeModule(ring, len(gens), tuple(twists))

    unit_syzygies = []
    for j, g in enumerate(gens):
        if g.is_zero():
            unit_syzygies.append(syz_module.basis_vector(j))

    gb = buchberger(ambient, gens)
    working = gb.working_generators
    n_orig = len(gens)
    t = len(gb.gb)

    candidates = list(unit_syzygies)

    if t:
        # relations among the reduced basis elements, from every same-position
        # pair; then pushed down to the working generators through the rows
        leads = gb.leads()
        f = ring.field
        gb_relations = []
        for j in range(t):
            for i in range(j):
                li, lj = leads[i], leads[j]
                if li[0] != lj[0]:
                    continue
                lcm = ring.mono_lcm(li[1], lj[1])
                ui = ring.mono_div(lcm, li[1])
                uj = ring.mono_div(lcm, lj[1])
                ci = f.invert(li[2])
                cj = f.invert(lj[2])
                s = gb.gb[i].mul_term(ci, ui) - gb.gb[j].mul_term(cj, uj)
                quots, rem = _divide(s, list(gb.gb), leads, track=True)
                if not rem.is_zero():
                    raise StarTransError(
                        "reduced basis failed an S-vector reduction (internal)"
                    )
                rel = [ring.zero()] * t
                rel[i] = rel[i] + ring.monomial(ui, ci)
                rel[j] = rel[j] - ring.monomial(uj, cj)
                for k, q in enumerate(quots):
                    if q.terms:
                        rel[k] = rel[k] - q
                gb_relations.append(rel)

        # expressions of the working generators in the reduced basis
        b_rows = []
        for g in working:
            quots, rem = _divide(g, list(gb.gb), leads, track=True)
            if not rem.is_zero():
                raise StarTransError("generator not reduced by own basis (internal)")
            b_rows.append(quots)

        for rel in gb_relations:
            coords = [ring.zero()] * n_orig
            for k, c in enumerate(rel):
                if not c.terms:
                    continue
                for j in range(n_orig):
                    a = gb.rows[k][j]
                    if a.terms:
                        coords[j] = coords[j] + c * a
            candidates.append(syz_module.vector(coords))

        # rows of (identity - B*A) restricted to the original generators
        for j in range(n_orig):
            coords = [ring.zero()] * n_orig
            coords[j] = ring.one()
            for k in range(t):
                q = b_rows[j][k]
                if not q.terms:
                    continue
                for jj in range(n_orig):
                    a = gb.rows[k][jj]
                    if a.terms:
                        coords[jj] = coords[jj] - q * a
            candidates.append(syz_module.vector(coords))

    result = buchberger(syz_module, candidates)
    quotient_gb = (
        buchberger(ambient, [], adjoin_quotient=True) if ring.quotient else None
    )
    for s in result.gb:
        acc = ambient.zero_vector()
        for c, g in zip(s.coords, gens):
            if c.terms:
                acc = acc + g.mul_poly(c)
        if quotient_gb is not None:
            acc = quotient_gb.normal_form(acc)
        if not acc.is_zero():
            raise StarTransError("syzygy failed to annihilate (internal)")
    return list(result.gb)


def submodule_equal(a, b):
    """True iff the two submodules coincide (reduced bases identical)."""
    if not a.ambient.same_shape(b.ambient):
        raise DimensionMismatch("submodules of different ambient modules")
    if len(a.gb) != len(b.gb):
        return False
    return all(x == y for x, y in zip(a.gb, b.gb))


def colon(m_gb, q_polys):
    """Generators of {f in F0 : q f in M for all q in Q}, as a SubmoduleGB.

    Per-element colons via syzygies of [q*basis | basis of M], intersected.
    """
    ambient = m_gb.ambient
    q_polys = [q for q in q_polys if not q.is_zero()]
    if not q_polys:
        raise DimensionMismatch("colon by an empty ideal")
    result = None
    for q in q_polys:
        combined = [ambient.basis_vector(i).mul_poly(q) for i in range(ambient.rank)]
        m_gens = list(m_gb.gb) if m_gb.gb else list(m_gb.working_generators)
        combined += m_gens
        rels = syzygies(combined, ambient)
        projected = []
        for rel in rels:
            coords = rel.coords[: ambient.rank]
            v = ambient.vector(coords)
            if not v.is_zero():
                projected.append(v)
        part = buchberger(ambient, projected)
        result = part if result is None else intersect(result, part)
    return result


def intersect(a, b):
    """Intersection of two submodules via tag-variable elimination."""
    if not a.ambient.same_shape(b.ambient):
        raise DimensionMismatch("intersection requires a common ambient module")
    ambient = a.ambient
    ring = ambient.ring
    tag_ring = PolyRing(
        ring.field,
        ("#t",) + ring.names,
        (1,) + ring.weights,
        MonomialOrder(elim_first=True),
        tuple(_lift_poly_to_tag(None, g) for g in ring.quotient),
    )
    tag_ambient = GradedFreeModule(tag_ring, ambient.rank, ambient.twists)

    def lift_vec(v):
        return tag_ambient.vector(
            tuple(_lift_poly_to_tag(tag_ring, c) for c in v.coords)
        )

    t = tag_ring.var(0)
    one = tag_ring.one()
    gens = []
    for g in a.gb or a.working_generators:
        gens.append(lift_vec(g).mul_poly(t))
    for g in b.gb or b.working_generators:
        gens.append(lift_vec(g).mul_poly(one - t))
    tag_gb = buchberger(tag_ambient, gens)

    down = []
    for g in tag_gb.gb:
        if all(all(m[0] == 0 for m in c.terms) for c in g.coords):
            coords = tuple(
                Polynomial(ring, {m[1:]: c for m, c in poly.terms.items()})
                for poly in g.coords
            )
            down.append(ambient.vector(coords))
    return buchberger(ambient, down)


def _lift_poly_to_tag(tag_ring, p):
    if tag_ring is None:
        tag_ring = PolyRing(
            p.ring.field,
            ("#t",) + p.ring.names,
            (1,) + p.ring.weights,
            MonomialOrder(elim_first=True),
        )
    return Polynomial(tag_ring, {(0,) + m: c for m, c in p.terms.items()})


# -- Hilbert series ----------------------------------------------------------


@dataclass(frozen=True)
class HilbertSeries:
    """Exact rational series: numerator over prod_i (1 - t^{w_i})."""

    numer: tuple
    weights: tuple

    @staticmethod
    def from_dict(coeffs, weights):
        items = tuple(sorted((d, c) for d, c in coeffs.items() if c != 0))
        return HilbertSeries(items, tuple(weights))

    def numer_dict(self):
        return dict(self.numer)

    def sub(self, other):
        if self.weights != other.weights:
            raise DimensionMismatch("series over different denominators")
        out = self.numer_dict()
        for d, c in other.numer:
            out[d] = out.get(d, 0) - c
        return HilbertSeries.from_dict(out, self.weights)

    def add(self, other):
        if self.weights != other.weights:
            raise DimensionMismatch("series over different denominators")
        out = self.numer_dict()
        for d, c in other.numer:
            out[d] = out.get(d, 0) + c
        return HilbertSeries.from_dict(out, self.weights)

    def as_polynomial(self):
        """Coefficient dict if the series is a (Laurent) polynomial, else None."""
        cur = self.numer_dict()
        for w in self.weights:
            cur = _divide_by_one_minus_tw(cur, w)
            if cur is None:
                return None
        return cur

    def dimension(self):
        """Total k-dimension when finite, else None."""
        p = self.as_polynomial()
        if p is None:
            return None
        return sum(p.values())

    def expand(self, upto):
        """Hilbert function values by degree, for degrees <= upto."""
        if not self.numer:
            return {}
        lo = min(d for d, _ in self.numer)
        cur = self.numer_dict()
        for w in self.weights:
            nxt = {}
            for d in range(lo, upto + 1):
                nxt[d] = cur.get(d, 0) + nxt.get(d - w, 0)
            cur = nxt
        return {d: c for d, c in cur.items() if c}

    def __str__(self):
        num = " + ".join(f"{c}*t^{d}" for d, c in self.numer) or "0"
        den = "".join(f"(1-t^{w})" for w in self.weights) or "1"
        return f"({num}) / {den}"


def _divide_by_one_minus_tw(coeffs, w):
    """Exact division of a Laurent polynomial by (1 - t^w); None if inexact."""
    if not coeffs:
        return {}
    lo = min(coeffs)
    hi = max(coeffs)
    q = {}
    for d in range(lo, hi + 1):
        c = coeffs.get(d, 0) + q.get(d - w, 0)
        if c:
            q[d] = c
    for d in range(hi - w + 1, hi + 1):
        if q.get(d, 0) != 0:
            return None
    return {d: c for d, c in q.items() if c and d <= hi - w}


def _interreduce_monomials(gens):
    gens = sorted(set(gens))
    out = []
    for g in gens:
        if not any(
            all(a <= b for a, b in zip(h, g)) for h in out
        ):
            out.append(g)
    return out


def _monomial_quotient_numerator(ring, gens):
    """Numerator of the Hilbert series of R/(gens) over prod (1 - t^w)."""
    gens = _interreduce_monomials(gens)
    if not gens:
        return {0: 1}
    if any(all(e == 0 for e in g) for g in gens):
        return {}
    gens = sorted(gens, key=lambda m: (ring.mono_degree(m), m))
    pivot = gens[-1]
    rest = gens[:-1]
    base = _monomial_quotient_numerator(ring, rest)
    coloned = [
        tuple(max(e - p, 0) for e, p in zip(g, pivot)) for g in rest
    ]
    tail = _monomial_quotient_numerator(ring, coloned)
    d = ring.mono_degree(pivot)
    out = dict(base)
    for deg, c in tail.items():
        out[deg + d] = out.get(deg + d, 0) - c
    return {deg: c for deg, c in out.items() if c}


@dataclass(frozen=True)
class HilbertData:
    series: HilbertSeries
    dimension: object  # int when finite, None when infinite

    @property
    def finite(self):
        return self.dimension is not None


def hilbert_data(m_gb):
    """Hilbert series and total dimension of ambient/M, from lead terms."""
    ambient = m_gb.ambient
    ring = ambient.ring
    by_pos = {i: [] for i in range(ambient.rank)}
    for g in m_gb.gb:
        pos, exps, _ = g.lead()
        by_pos[pos].append(exps)
    total = {}
    for i in range(ambient.rank):
        numer = _monomial_quotient_numerator(ring, by_pos[i])
        shift = ambient.twists[i]
        for d, c in numer.items():
            total[d + shift] = total.get(d + shift, 0) + c
    series = HilbertSeries.from_dict(total, ring.weights)
    return HilbertData(series, series.dimension())
