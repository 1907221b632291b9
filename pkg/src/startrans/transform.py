"""Construction of the output complex: the chain map from (top module (x)
Koszul complex) into the input complex, its mapping cone, the top split,
basis selection, and the minimal top map.

The chain map drops every degree by the total parameter degree, so the
tensor blocks carry that shift in their twists; with it, every map built
here is homogeneous of degree zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    FreeComplex,
    check_complex,
    check_qf_containment,
    certify_acyclic,
    complement,
    co_singleton,
    count_below,
    decompose_images,
    offset_sum,
    sign_scalar,
    subsets,
    tensor_boundary,
    tensor_module,
)
from .errors import (
    BasisSelectionError,
    LiftError,
    NotInModule,
    PreconditionFailed,
    TopMapMismatch,
)
from .modules import GradedFreeModule, buchberger
from .poly import PolyMatrix, block_matrix


@dataclass(frozen=True)
class ChainMap:
    """Chain map from (top module (x) Koszul complex) to the input complex.

    ``elements[(lam, S)]`` is the image of v_lam (x) e_S in F_p (p = |S|);
    ``matrices[p]`` is that map assembled on the lambda-major tensor basis,
    with source twists lowered by ``shift`` (the total parameter degree).
    """

    complex: FreeComplex
    sop: object
    decomposition: tuple
    shift: int
    source_modules: tuple
    matrices: tuple
    elements: dict

    @property
    def n(self):
        return self.complex.length

    @property
    def top_rank(self):
        return self.complex.top_rank()

    def level(self, p):
        return self.matrices[p]

    def top_is_signed_identity(self):
        """The top level must be (-1)^n times the identity."""
        ring = self.complex.ring
        n = self.n
        expected = PolyMatrix.identity(ring, self.top_rank).scale(
            sign_scalar(ring.field, n)
        )
        return self.matrices[n] == expected

    def squares_commute(self):
        """phi_p composed with level p equals level p-1 composed with the
        Koszul-direction boundary."""
        comp = self.complex
        top = comp.module(self.n)
        for p in range(1, self.n + 1):
            lhs = comp.phi(p) @ self.matrices[p]
            rhs = self.matrices[p - 1] @ tensor_boundary(
                top, self.sop, p, self.shift
            )
            if lhs != rhs:
                return False
        return True

    def step_identity_holds(self, lam, subset):
        """The defining identity at one basis element: phi(w_(lam,S)) =
        sum over i in S of (-1)^(below count) x_i w_(lam, S minus i)."""
        comp = self.complex
        ring = comp.ring
        p = len(subset)
        w = self.elements[(lam, subset)]
        lhs = comp.module(p - 1).vector(comp.phi(p).apply(w.coords))
        rhs = comp.module(p - 1).zero_vector()
        for i in subset:
            rest = tuple(k for k in subset if k != i)
            term = self.elements[(lam, rest)].mul_poly(
                self.sop.gens[i - 1].scale(
                    sign_scalar(ring.field, count_below(i, subset))
                )
            )
            rhs = rhs + term
        return (lhs - rhs).is_zero()


def build_chain_map(comp, sop, decomposition=None):
    """Construct the chain map by descending level by level.

    The two top levels are prescribed; below them, each level is one lift
    through the Koszul-direction boundary of the previous free module,
    which is solvable because that direction is exact and the square one
    level up already commutes.
    """
    n = comp.length
    if n != sop.n:
        raise PreconditionFailed("complex length must equal the parameter count")
    ring = comp.ring
    f = ring.field
    top = comp.module(n)
    if decomposition is None:
        decomposition = decompose_images(comp, sop)
    shift = sum(sop.degrees)
    full = tuple(range(1, n + 1))

    elements = {}
    for lam in range(top.rank):
        elements[(lam, full)] = top.basis_vector(lam).scale(sign_scalar(f, n))
        for i in range(1, n + 1):
            elements[(lam, co_singleton(i, n))] = decomposition[lam][i - 1].scale(
                sign_scalar(f, n + i - 1)
            )

    for p in range(n - 1, 0, -1):
        prev = comp.module(p - 1)
        ambient = tensor_module(prev, sop, n - p, 0)
        bmat = tensor_boundary(prev, sop, n - p + 1, 0)
        cols = [ambient.vector(bmat.column(j)) for j in range(bmat.ncols)]
        gb = buchberger(ambient, cols)
        phi = comp.phi(p)
        level_subs = subsets(n, p)
        blk_subs = subsets(n, n - p)
        blk_index = {s: k for k, s in enumerate(blk_subs)}
        src_subs = subsets(n, n - p + 1)
        src_index = {s: k for k, s in enumerate(src_subs)}
        for lam in range(top.rank):
            target = [ring.zero()] * ambient.rank
            for s in level_subs:
                w = elements[(lam, s)]
                sgn = sign_scalar(f, p * (p + 1) // 2 + offset_sum(s))
                image = phi.apply(w.coords)
                blk = blk_index[complement(s, n)]
                for u in range(prev.rank):
                    if image[u].terms:
                        idx = u * len(blk_subs) + blk
                        target[idx] = target[idx] + image[u].scale(sgn)
            goal = ambient.vector(target).scale(sign_scalar(f, p))
            try:
                witness = gb.lift(goal)
            except NotInModule as exc:
                raise LiftError(
                    f"level {p} descent has no lift; the input complex is "
                    "not acyclic"
                ) from exc
            for sub in subsets(n, p - 1):
                a_idx = src_index[complement(sub, n)]
                coords = tuple(
                    witness[u * len(src_subs) + a_idx] for u in range(prev.rank)
                )
                sgn = sign_scalar(f, (p - 1) * p // 2 + offset_sum(sub))
                elements[(lam, sub)] = prev.vector(coords).scale(sgn)

    source_modules = tuple(
        tensor_module(top, sop, p, shift) for p in range(n + 1)
    )
    matrices = []
    for p in range(n + 1):
        subs = subsets(n, p)
        tgt = comp.module(p)
        cols = []
        for lam in range(top.rank):
            for s in subs:
                cols.append(elements[(lam, s)].coords)
        entries = [
            [cols[j][i] for j in range(len(cols))] for i in range(tgt.rank)
        ]
        matrices.append(PolyMatrix(ring, entries, tgt.rank, len(cols)))

    cm = ChainMap(
        comp, sop, decomposition, shift, source_modules, tuple(matrices), elements
    )
    if not cm.squares_commute():
        raise LiftError("constructed chain map fails to commute (internal)")
    if not cm.top_is_signed_identity():
        raise LiftError("top level of the chain map is not signed identity")
    return cm


def chain_map_image_checks(cm, m_gb, colon_gb=None):
    """Image-level facts about the degree-zero end of the chain map.

    Returns (name, passed, detail) triples: the span of the level-0 images
    together with M equals the colon module, every image of the first
    Koszul boundary lands in M, and the quotient dimension count matches.
    """
    from .modules import colon as colon_op, submodule_equal
    from .verify import colon_quotient_count

    comp, sop = cm.complex, cm.sop
    ambient = comp.module(0)
    results = []

    level0 = cm.level(0)
    image_gens = [
        ambient.vector(level0.column(j)) for j in range(level0.ncols)
    ]
    span = buchberger(ambient, image_gens + list(m_gb.gb))
    if colon_gb is None:
        colon_gb = colon_op(m_gb, sop.gens)
    ok = submodule_equal(span, colon_gb)
    results.append(
        (
            "image_plus_M_equals_colon",
            ok,
            "image of level 0 plus M compared with (M : Q) by reduced bases",
        )
    )

    top = comp.module(cm.n)
    first_boundary = tensor_boundary(top, sop, 1, cm.shift)
    inside = True
    for j in range(first_boundary.ncols):
        img = ambient.vector(level0.apply(first_boundary.column(j)))
        if not m_gb.contains(img):
            inside = False
            break
    results.append(
        (
            "koszul_boundary_maps_into_M",
            inside,
            "level 0 maps every first-boundary image into M",
        )
    )

    count = colon_quotient_count(m_gb, sop, top.rank, colon_gb=colon_gb)
    results.append(
        (
            "colon_quotient_count",
            count.passed,
            f"dim (M:Q)/M = {count.lhs}, rank*colength = {count.rhs}",
        )
    )
    return results


def mapping_cone(cm):
    """The cone of the chain map: an acyclic complex of length n+1 whose
    degree-zero image is the colon module."""
    comp, sop = cm.complex, cm.sop
    n = comp.length
    ring = comp.ring
    f = ring.field
    top = comp.module(n)

    modules = [comp.module(0)]
    labels = [tuple(("angle", i) for i in range(comp.module(0).rank))]
    for p in range(1, n + 1):
        tm = cm.source_modules[p - 1]
        fm = comp.module(p)
        modules.append(
            GradedFreeModule(ring, tm.rank + fm.rank, tm.twists + fm.twists)
        )
        labels.append(
            tuple(
                ("bracket", lam, s)
                for lam in range(top.rank)
                for s in subsets(n, p - 1)
            )
            + tuple(("angle", i) for i in range(fm.rank))
        )
    modules.append(cm.source_modules[n])
    labels.append(
        tuple(("bracket", lam, tuple(range(1, n + 1))) for lam in range(top.rank))
    )

    maps = [cm.level(0).hstack(comp.phi(1))]
    for p in range(2, n + 1):
        tb = tensor_boundary(top, sop, p - 1, cm.shift)
        sg = cm.level(p - 1).scale(sign_scalar(f, p - 1))
        blocks = [[tb, None], [sg, comp.phi(p)]]
        maps.append(
            block_matrix(
                ring,
                blocks,
                [tb.nrows, comp.module(p - 1).rank],
                [tb.ncols, comp.module(p).rank],
            )
        )
    top_boundary = tensor_boundary(top, sop, n, cm.shift)
    maps.append(top_boundary.vstack(cm.level(n).scale(sign_scalar(f, n))))

    return FreeComplex(ring, tuple(modules), tuple(maps), tuple(labels))


def split_top(cone, cm):
    """Split the invertible top of the cone off, leaving a complex of
    length n whose top module is the (n-1)-st tensor block."""
    n = cm.complex.length
    ring = cone.ring
    top_rank = cm.top_rank
    tensor_prev = cm.source_modules[n - 1]

    psi_n = cone.maps[n - 1]
    restricted = PolyMatrix(
        ring,
        [row[: tensor_prev.rank] for row in psi_n.entries],
        psi_n.nrows,
        tensor_prev.rank,
    )
    modules = cone.modules[:n] + (tensor_prev,)
    labels = cone.labels[:n] + (
        tuple(
            ("bracket", lam, s)
            for lam in range(top_rank)
            for s in subsets(n, n - 1)
        ),
    )
    maps = cone.maps[: n - 1] + (restricted,)
    return FreeComplex(ring, tuple(modules), tuple(maps), tuple(labels))


def split_identity_matrix(cone, cm):
    """The splitting projection composed with the last cone map; equals
    the identity on the top tensor block."""
    ring = cone.ring
    f = ring.field
    n = cm.complex.length
    if not cm.top_is_signed_identity():
        raise LiftError("top level is not signed identity; cannot split")
    tensor_prev = cm.source_modules[n - 1]
    top_rank = cm.top_rank
    # the top level is (-1)^n I, so the signed inverse block is I
    proj = PolyMatrix.zeros(ring, top_rank, tensor_prev.rank).hstack(
        PolyMatrix.identity(ring, top_rank)
    )
    return proj @ cone.maps[n]


@dataclass(frozen=True)
class BasisSelection:
    """Result of the greedy residue pivot search on the decomposition
    vectors: pairs selected into the free basis, leftover standard basis
    indices, and the coefficients of the unselected vectors in that basis."""

    module: GradedFreeModule
    pairs: tuple
    selected_pairs: tuple
    retained_basis: tuple
    star_pairs: tuple
    a_coeffs: dict
    b_coeffs: dict

    def basis_vectors(self, decomposition):
        chosen = [
            decomposition[lam][i - 1] for (lam, i) in self.selected_pairs
        ]
        chosen += [self.module.basis_vector(u) for u in self.retained_basis]
        return chosen


def select_basis(decomposition, module_prev, n):
    """Greedy pivot selection making {v_(lam,i)} for selected pairs plus a
    subset of the standard basis a free basis of F_(n-1).

    Columns are scanned in (lam, i) order; a column becomes a pivot when
    its residue (the constant parts) is independent of the pivots so far.
    """
    ring = module_prev.ring
    f = ring.field
    pairs = [
        (lam, i)
        for lam in range(len(decomposition))
        for i in range(1, n + 1)
    ]
    pivots = {}
    selected_pairs = []
    for pair in pairs:
        lam, i = pair
        vec = list(decomposition[lam][i - 1].constant_parts())
        for r in sorted(pivots):
            if not f.is_zero(vec[r]):
                _, pv = pivots[r]
                factor = f.div(vec[r], pv[r])
                for k in range(len(vec)):
                    vec[k] = f.sub(vec[k], f.mul(factor, pv[k]))
        pivot_row = None
        for r, c in enumerate(vec):
            if not f.is_zero(c):
                pivot_row = r
                break
        if pivot_row is not None:
            pivots[pivot_row] = (pair, vec)
            selected_pairs.append(pair)
    retained_basis = tuple(r for r in range(module_prev.rank) if r not in pivots)
    selected_pairs = tuple(selected_pairs)
    star_pairs = tuple(p for p in pairs if p not in set(selected_pairs))

    chosen = [decomposition[lam][i - 1] for (lam, i) in selected_pairs]
    chosen += [module_prev.basis_vector(u) for u in retained_basis]
    a_coeffs = {}
    b_coeffs = {}
    if star_pairs:
        trans_gb = buchberger(module_prev, chosen)
        for (mu, j) in star_pairs:
            try:
                witness = trans_gb.lift(decomposition[mu][j - 1])
            except NotInModule as exc:
                raise BasisSelectionError(
                    "selected set fails to span the module (internal)"
                ) from exc
            a_part = {
                pair: c
                for pair, c in zip(selected_pairs, witness[: len(selected_pairs)])
                if c.terms
            }
            b_part = {}
            for u, c in zip(retained_basis, witness[len(selected_pairs):]):
                if c.terms:
                    if not f.is_zero(c.constant_coeff()):
                        raise BasisSelectionError(
                            f"coefficient of basis element {u} for pair "
                            f"{(mu, j)} has a unit part; selection not maximal"
                        )
                    b_part[u] = c
            a_coeffs[(mu, j)] = a_part
            b_coeffs[(mu, j)] = b_part
    return BasisSelection(
        module_prev,
        tuple(pairs),
        selected_pairs,
        retained_basis,
        star_pairs,
        a_coeffs,
        b_coeffs,
    )


@dataclass(frozen=True)
class StarTop:
    """Top two positions of the output complex."""

    top_module: GradedFreeModule
    top_map: PolyMatrix
    prev_module: GradedFreeModule
    prev_map: PolyMatrix
    bracket_count: int
    top_labels: tuple
    prev_labels: tuple


def build_star_top(selection, split_complex, cm):
    """Assemble the new top module, its map (restricted then re-expressed
    in the selected basis and cross-checked against the closed form), and
    the shrunken position n-1."""
    comp, sop = cm.complex, cm.sop
    n = comp.length
    ring = comp.ring
    f = ring.field
    top = comp.module(n)
    prev = comp.module(n - 1)
    dec = cm.decomposition

    prev_subs = subsets(n, n - 1)
    prev_sub_index = {s: k for k, s in enumerate(prev_subs)}
    bracket_subs = subsets(n, n - 2)
    bracket_index = {s: k for k, s in enumerate(bracket_subs)}
    nb = top.rank * len(bracket_subs)

    split_top_map = split_complex.maps[n - 1]
    tensor_prev_rank = cm.source_modules[n - 1].rank

    chosen = selection.basis_vectors(dec)
    trans_gb = buchberger(prev, chosen) if chosen else None
    lp_count = len(selection.selected_pairs)
    u_list = list(selection.retained_basis)
    u_pos = {u: k for k, u in enumerate(u_list)}

    star_columns = []
    star_twists = []
    for (mu, j) in selection.star_pairs:
        coords = [ring.zero()] * tensor_prev_rank
        idx = mu * len(prev_subs) + prev_sub_index[co_singleton(j, n)]
        coords[idx] = coords[idx] + ring.constant(sign_scalar(f, j))
        a_part = selection.a_coeffs.get((mu, j), {})
        for (lam, i), a in a_part.items():
            idx = lam * len(prev_subs) + prev_sub_index[co_singleton(i, n)]
            coords[idx] = coords[idx] + a.scale(sign_scalar(f, i - 1))
        star_vec = cm.source_modules[n - 1].vector(coords)
        deg = star_vec.homogeneous_degree()
        if deg is None:
            raise TopMapMismatch("new top basis vector is not homogeneous")
        star_twists.append(deg)

        image = split_top_map.apply(coords)
        bracket_part = list(image[:nb])
        angle_part = prev.vector(image[nb:])

        if trans_gb is not None:
            witness = trans_gb.lift(angle_part)
        else:
            witness = ()
        for c in witness[:lp_count]:
            if c.terms:
                raise TopMapMismatch(
                    "restricted top image leaks onto a selected pair"
                )
        u_coords = list(witness[lp_count:])

        # closed form: the bracket part is (-1)^j [v_mu (x) boundary of the
        # j-th co-singleton] plus, for each selected pair, the a-weighted
        # (-1)^(i-1)-signed analogue; the angle part is exactly the b's
        cf_bracket = [ring.zero()] * nb
        contributions = [(mu, j, ring.one(), sign_scalar(f, j))]
        for (lam, i), a in a_part.items():
            contributions.append((lam, i, a, sign_scalar(f, i - 1)))
        for lam, i, coeff, base_sign in contributions:
            cos = co_singleton(i, n)
            for a_idx in cos:
                sgn = sign_scalar(f, count_below(a_idx, cos))
                sub = tuple(k for k in cos if k != a_idx)
                row = lam * len(bracket_subs) + bracket_index[sub]
                term = coeff * sop.gens[a_idx - 1].scale(f.mul(base_sign, sgn))
                cf_bracket[row] = cf_bracket[row] + term
        cf_angles = [ring.zero()] * len(u_list)
        for u, b in selection.b_coeffs.get((mu, j), {}).items():
            cf_angles[u_pos[u]] = b

        if list(bracket_part) != cf_bracket or u_coords != cf_angles:
            raise TopMapMismatch(
                "closed-form top map disagrees with the restricted map"
            )
        star_columns.append(list(bracket_part) + u_coords)

    prev_bracket_twists = cm.source_modules[n - 2].twists
    prev_u_twists = tuple(prev.twists[u] for u in u_list)
    prev_module = GradedFreeModule(
        ring, nb + len(u_list), tuple(prev_bracket_twists) + prev_u_twists
    )
    top_module = GradedFreeModule(
        ring, len(star_columns), tuple(star_twists)
    )
    rows = nb + len(u_list)
    entries = [
        [star_columns[j][i] for j in range(len(star_columns))]
        for i in range(rows)
    ]
    top_map = PolyMatrix(ring, entries, rows, len(star_columns))

    # position n-1: restrict the next map of the split complex to the
    # bracket columns plus the selected <u> columns
    lower = split_complex.maps[n - 2]
    keep = list(range(nb)) + [nb + u for u in u_list]
    prev_map = PolyMatrix(
        ring,
        [[row[c] for c in keep] for row in lower.entries],
        lower.nrows,
        len(keep),
    )

    top_labels = tuple(("star", mu, j) for (mu, j) in selection.star_pairs)
    prev_labels = tuple(
        ("bracket", lam, s)
        for lam in range(top.rank)
        for s in bracket_subs
    ) + tuple(("angle", u) for u in u_list)
    return StarTop(
        top_module, top_map, prev_module, prev_map, nb, top_labels, prev_labels
    )


@dataclass(frozen=True)
class StarComplex:
    """The output complex with basis provenance labels."""

    complex: FreeComplex
    star_pairs: tuple
    selected_pairs: tuple
    retained_basis: tuple
    depth_positive_fastpath: bool

    @property
    def labels(self):
        return self.complex.labels

    def top_rank(self):
        return self.complex.top_rank()


@dataclass
class StarResult:
    star: StarComplex
    chain_map: object
    cone: object
    split: object
    selection: object
    input_complex: FreeComplex
    sop: object
    report: object = None


def star_transform(comp, sop, decomposition=None, with_report=True):
    """Full pipeline from an acyclic complex to the complex resolving the
    colon module, with a minimal top map.

    Preconditions (PreconditionFailed otherwise): at least two parameters,
    the complex is well formed and acyclic, and the top image lies inside
    Q times F_(n-1).  A rank-zero top module short-circuits to the input.
    """
    n = comp.length
    if n < 2:
        raise PreconditionFailed("need a complex of length at least 2")
    if n != sop.n:
        raise PreconditionFailed(
            "complex length must equal the number of parameters"
        )
    defect = check_complex(comp)
    if defect is not None:
        raise PreconditionFailed(f"input is not a complex: {defect.message}")
    cert = certify_acyclic(comp)
    if not cert.ok:
        raise PreconditionFailed(
            f"input complex is not acyclic: {cert.detail}"
        )
    if not check_qf_containment(comp, sop):
        raise PreconditionFailed(
            "Im phi_n is not contained in Q*F_(n-1)"
        )

    if comp.top_rank() == 0:
        labels = _identity_labels(comp)
        star = StarComplex(
            FreeComplex(comp.ring, comp.modules, comp.maps, labels),
            (),
            (),
            tuple(range(comp.module(n - 1).rank)),
            True,
        )
        result = StarResult(star, None, None, None, None, comp, sop)
    else:
        cm = build_chain_map(comp, sop, decomposition)
        cone = mapping_cone(cm)
        split = split_top(cone, cm)
        selection = select_basis(cm.decomposition, comp.module(n - 1), n)
        startop = build_star_top(selection, split, cm)

        modules = list(split.modules[: n - 1])
        maps = list(split.maps[: n - 2])
        labels = list(split.labels[: n - 1])
        modules += [startop.prev_module, startop.top_module]
        maps += [startop.prev_map, startop.top_map]
        labels += [startop.prev_labels, startop.top_labels]
        out = FreeComplex(
            comp.ring, tuple(modules), tuple(maps), tuple(labels)
        )
        star = StarComplex(
            out,
            selection.star_pairs,
            selection.selected_pairs,
            selection.retained_basis,
            not selection.star_pairs,
        )
        result = StarResult(star, cm, cone, split, selection, comp, sop)

    if with_report:
        from .verify import verify_star

        result.report = verify_star(comp, sop, result.star)
    return result


def _identity_labels(comp):
    return tuple(
        tuple(("angle", i) for i in range(m.rank)) for m in comp.modules
    )
