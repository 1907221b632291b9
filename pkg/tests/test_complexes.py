from math import comb

import pytest

from startrans import (
    FreeComplex,
    GradedFreeModule,
    NotASop,
    PolyMatrix,
    PolyRing,
    PreconditionFailed,
    RationalField,
    ValidationError,
    certify_acyclic,
    check_complex,
    check_qf_containment,
    decompose_images,
    koszul,
    validate_sop,
)
from startrans.complexes import (
    complement,
    co_singleton,
    count_below,
    offset_sum,
    subsets,
)
from startrans.instances import exa_instance


@pytest.fixture
def ring():
    return PolyRing(RationalField(), ("x", "y"))


def test_subset_helpers():
    assert subsets(3, 2) == [(1, 2), (1, 3), (2, 3)]
    assert count_below(2, (1, 2)) == 1
    assert count_below(1, (1, 2)) == 0
    assert offset_sum(()) == 0
    assert offset_sum((1, 3)) == 2
    assert complement((1,), 3) == (2, 3)
    assert co_singleton(1, 2) == (2,)


# -- validate_sop -----------------------------------------------------------


def test_validate_sop_variables(ring):
    sop = validate_sop(ring, [ring.var(0), ring.var(1)])
    assert sop.colength == 1
    assert sop.degrees == (1, 1)


def test_validate_sop_rejects_infinite_colength(ring):
    with pytest.raises(NotASop) as err:
        validate_sop(ring, [ring.parse("x^2"), ring.parse("x*y")])
    assert err.value.series is not None
    # all powers of y survive
    values = err.value.series.expand(6)
    assert all(values.get(d, 0) >= 1 for d in range(7))


def test_validate_sop_colength_count(ring):
    sop = validate_sop(ring, [ring.parse("x^2"), ring.parse("y^3")])
    assert sop.colength == 6


def test_validate_sop_structural_errors(ring):
    with pytest.raises(ValidationError):
        validate_sop(ring, [ring.parse("x")])
    with pytest.raises(ValidationError):
        validate_sop(ring, [ring.parse("x^2+x"), ring.parse("y")])
    with pytest.raises(ValidationError):
        validate_sop(ring, [ring.one(), ring.parse("y")])


# -- koszul -----------------------------------------------------------------


def test_koszul_two_variables_signs(ring):
    sop = validate_sop(ring, [ring.var(0), ring.var(1)])
    k = koszul(sop)
    # boundary of e_{12} is x*e_2 - y*e_1, the column (-y, x)
    assert k.phi(2).column(0) == (ring.parse("-y"), ring.parse("x"))
    assert k.phi(1).row(0) == (ring.parse("x"), ring.parse("y"))


def test_koszul_first_boundary_row(ring):
    ring3 = PolyRing(RationalField(), ("x", "y", "z"))
    sop = validate_sop(
        ring3, [ring3.parse("x^2"), ring3.parse("y"), ring3.parse("z^3")]
    )
    k = koszul(sop)
    assert k.phi(1).row(0) == (
        ring3.parse("x^2"),
        ring3.parse("y"),
        ring3.parse("z^3"),
    )


def test_koszul_ranks_and_composition_up_to_four_variables():
    for n in (2, 3, 4):
        names = tuple("abcd"[:n])
        ring = PolyRing(RationalField(), names)
        sop = validate_sop(ring, [ring.var(i) for i in range(n)])
        k = koszul(sop)
        assert [m.rank for m in k.modules] == [comb(n, p) for p in range(n + 1)]
        assert sum(m.rank for m in k.modules) == 2 ** n
        assert check_complex(k) is None


def test_koszul_twists_accumulate_degrees(ring):
    sop = validate_sop(ring, [ring.parse("x^2"), ring.parse("y^3")])
    k = koszul(sop)
    assert k.module(0).twists == (0,)
    assert k.module(1).twists == (2, 3)
    assert k.module(2).twists == (5,)


def test_koszul_requires_validated_sop(ring):
    from startrans.complexes import SopData

    fake = SopData(ring, (ring.var(0), ring.var(1)), (1, 1), 1, validated=False)
    with pytest.raises(PreconditionFailed):
        koszul(fake)


# -- check_complex -----------------------------------------------------------


def test_check_complex_passes_on_exa():
    comp, _ = exa_instance()
    assert check_complex(comp) is None


def test_check_complex_detects_sign_flip():
    comp, _ = exa_instance()
    ring = comp.ring
    bad_phi2 = PolyMatrix(ring, [[ring.parse("y^2")], [ring.parse("x^2")]])
    bad = FreeComplex(ring, comp.modules, (comp.phi(1), bad_phi2))
    defect = check_complex(bad)
    assert defect is not None and defect.kind == "composition"
    assert defect.position == 2


def test_check_complex_detects_inhomogeneous_entry():
    comp, _ = exa_instance()
    ring = comp.ring
    bad_phi1 = PolyMatrix(ring, [[ring.parse("x^2"), ring.parse("x+1")]])
    bad = FreeComplex(ring, comp.modules, (bad_phi1, comp.phi(2)))
    defect = check_complex(bad)
    assert defect is not None and defect.kind == "homogeneity"
    assert (defect.position, defect.row, defect.col) == (1, 0, 1)


# -- certify_acyclic ----------------------------------------------------------


def test_koszul_complexes_certified_acyclic():
    for n in (2, 3, 4):
        names = tuple("abcd"[:n])
        ring = PolyRing(RationalField(), names)
        sop = validate_sop(ring, [ring.var(i) for i in range(n)])
        assert certify_acyclic(koszul(sop)).ok


def test_random_monomial_koszul_acyclic():
    import random

    rng = random.Random(42)
    for n in (2, 2, 3, 3, 3, 4):
        names = ("x", "y", "z", "w")[:n]
        ring = PolyRing(RationalField(), names)
        gens = []
        for i in range(n):
            exps = [0] * n
            exps[i] = rng.randint(1, 2 if n == 4 else 3)
            gens.append(ring.monomial(tuple(exps)))
        sop = validate_sop(ring, gens)
        assert certify_acyclic(koszul(sop)).ok


def test_exa_certified_with_witnesses():
    comp, _ = exa_instance()
    cert = certify_acyclic(comp)
    assert cert.ok
    # one syzygy at position 1, lifted through phi_2
    assert len(cert.witnesses[0]) == 1


def test_zero_map_not_acyclic(ring):
    # 0 -> R -> R with the zero map: the top map is not injective
    modules = (
        GradedFreeModule(ring, 1, (0,)),
        GradedFreeModule(ring, 1, (0,)),
    )
    maps = (PolyMatrix.zeros(ring, 1, 1),)
    cert = certify_acyclic(FreeComplex(ring, modules, maps))
    assert not cert.ok
    assert cert.failed_position == 1
    assert "kernel" in cert.detail


def test_exactness_defect_located(ring):
    # 0 -> R --0--> R --x--> R: exact at the right of position 1 fails
    modules = (
        GradedFreeModule(ring, 1, (0,)),
        GradedFreeModule(ring, 1, (1,)),
        GradedFreeModule(ring, 1, (1,)),
    )
    maps = (
        PolyMatrix(ring, [[ring.var(0)]]),
        PolyMatrix.zeros(ring, 1, 1),
    )
    cert = certify_acyclic(FreeComplex(ring, modules, maps))
    assert not cert.ok
    assert cert.failed_position == 2


# -- containment --------------------------------------------------------------


def test_exa_containment_true():
    comp, sop = exa_instance()
    assert check_qf_containment(comp, sop)


def test_containment_false_on_constant_entry(ring):
    modules = (
        GradedFreeModule(ring, 1, (0,)),
        GradedFreeModule(ring, 2, (1, 0)),
        GradedFreeModule(ring, 1, (0,)),
    )
    x = ring.var(0)
    maps = (
        PolyMatrix(ring, [[x, ring.zero()]]),
        PolyMatrix(ring, [[ring.zero()], [ring.one()]]),
    )
    comp = FreeComplex(ring, modules, maps)
    sop = validate_sop(ring, [ring.var(0), ring.var(1)])
    assert not check_qf_containment(comp, sop)


def test_containment_zero_top_map(ring):
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
    assert check_qf_containment(comp, sop)


def test_koszul_always_contained():
    for n in (2, 3):
        names = ("x", "y", "z")[:n]
        ring = PolyRing(RationalField(), names)
        sop = validate_sop(ring, [ring.var(i) for i in range(n)])
        assert check_qf_containment(koszul(sop), sop)


# -- decompose_images ----------------------------------------------------------


def test_decompose_exa_canonical():
    comp, sop = exa_instance()
    ring = comp.ring
    dec = decompose_images(comp, sop)
    assert dec[0][0].coords == (ring.zero(), ring.parse("x"))
    assert dec[0][1].coords == (ring.parse("-y"), ring.zero())


def test_decompose_recombines_on_corpus():
    from startrans.instances import corpus

    for name, comp, sop in corpus(count=6):
        if comp.top_rank() == 0:
            continue
        dec = decompose_images(comp, sop)
        n = comp.length
        target = comp.module(n - 1)
        for lam in range(comp.top_rank()):
            acc = target.zero_vector()
            for x, v in zip(sop.gens, dec[lam]):
                acc = acc + v.mul_poly(x)
            assert acc == target.vector(comp.phi(n).column(lam)), name


def test_decompose_zero_column(ring):
    modules = (
        GradedFreeModule(ring, 1, (0,)),
        GradedFreeModule(ring, 2, (1, 2)),
        GradedFreeModule(ring, 1, (2,)),
    )
    x, y = ring.var(0), ring.var(1)
    maps = (
        PolyMatrix(ring, [[x, ring.zero()]]),
        PolyMatrix(ring, [[ring.zero()], [x * y - x * y]]),
    )
    comp = FreeComplex(ring, modules, maps)
    sop = validate_sop(ring, [x, y])
    dec = decompose_images(comp, sop)
    assert all(v.is_zero() for v in dec[0])


def test_decompose_requires_containment(ring):
    modules = (
        GradedFreeModule(ring, 1, (0,)),
        GradedFreeModule(ring, 2, (1, 0)),
        GradedFreeModule(ring, 1, (0,)),
    )
    x = ring.var(0)
    maps = (
        PolyMatrix(ring, [[x, ring.zero()]]),
        PolyMatrix(ring, [[ring.zero()], [ring.one()]]),
    )
    comp = FreeComplex(ring, modules, maps)
    sop = validate_sop(ring, [ring.var(0), ring.var(1)])
    with pytest.raises(PreconditionFailed):
        decompose_images(comp, sop)
