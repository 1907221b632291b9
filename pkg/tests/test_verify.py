import pytest

from startrans import (
    FreeComplex,
    GradedFreeModule,
    IterationLimit,
    NonPolynomialDifference,
    PolyMatrix,
    PolyRing,
    PreconditionFailed,
    RationalField,
    StarComplex,
    buchberger,
    colon,
    colon_quotient_count,
    depth_positive_check,
    saturate,
    star_iteration_driver,
    star_transform,
    submodule_equal,
    validate_sop,
    verify_star,
)
from startrans.verify import FIXED_CHECKS
from startrans.instances import (
    complete_intersection_instance,
    exa_instance,
    padded_zero_top_instance,
    vanishing_top_instance,
)


@pytest.fixture
def ring():
    return PolyRing(RationalField(), ("x", "y"))


@pytest.fixture
def R1(ring):
    return GradedFreeModule(ring, 1, (0,))


def ideal(R1, *texts):
    return buchberger(R1, [R1.vector((R1.ring.parse(t),)) for t in texts])


# -- verify_star ---------------------------------------------------------


def test_verify_passes_on_exa():
    comp, sop = exa_instance()
    res = star_transform(comp, sop, with_report=False)
    report = verify_star(comp, sop, res.star)
    assert report.overall
    assert list(FIXED_CHECKS) == report.names()[: len(FIXED_CHECKS)]


def test_verify_fails_on_unit_entry():
    comp, sop = exa_instance()
    res = star_transform(comp, sop, with_report=False)
    star = res.star
    out = star.complex
    ring = comp.ring
    # replace one entry of the top map by a nonzero scalar
    entries = [list(row) for row in out.phi(2).entries]
    entries[0][0] = ring.one()
    bad_map = PolyMatrix(ring, entries)
    bad = FreeComplex(
        ring, out.modules, (out.phi(1), bad_map), out.labels
    )
    tampered = StarComplex(
        bad, star.star_pairs, star.selected_pairs, star.retained_basis, False
    )
    report = verify_star(comp, sop, tampered)
    assert not report.overall
    failed = {c.name for c in report.checks if not c.passed}
    assert "top_minimality" in failed


def test_verify_fails_on_sign_tamper():
    comp, sop = exa_instance()
    res = star_transform(comp, sop, with_report=False)
    star = res.star
    out = star.complex
    ring = comp.ring
    entries = [list(row) for row in out.phi(2).entries]
    entries[0][0] = -entries[0][0]
    bad_map = PolyMatrix(ring, entries)
    bad = FreeComplex(ring, out.modules, (out.phi(1), bad_map), out.labels)
    tampered = StarComplex(
        bad, star.star_pairs, star.selected_pairs, star.retained_basis, False
    )
    report = verify_star(comp, sop, tampered)
    assert not report.overall
    failed = {c.name for c in report.checks if not c.passed}
    assert failed & {"composition_zero", "acyclicity"}


def test_report_lines_format():
    comp, sop = exa_instance()
    res = star_transform(comp, sop)
    lines = res.report.lines()
    assert lines[-1] == "PASS overall"
    assert all(line.startswith(("PASS", "FAIL")) for line in lines)


def test_report_json_round_trip():
    from startrans import VerificationReport

    comp, sop = exa_instance()
    res = star_transform(comp, sop)
    data = res.report.to_jsonable()
    back = VerificationReport.from_jsonable(data)
    assert back.overall == res.report.overall
    assert back.names() == res.report.names()


# -- quotient dimension count ----------------------------------------------


def test_count_exa():
    comp, sop = exa_instance()
    result = colon_quotient_count(comp.image_gb(1), sop, comp.top_rank())
    assert result.passed and result.lhs == result.rhs == 1


def test_count_zero_top():
    comp, sop = padded_zero_top_instance()
    result = colon_quotient_count(comp.image_gb(1), sop, 0)
    assert result.passed and result.lhs == 0


def test_count_complete_intersection():
    comp, sop = complete_intersection_instance((2, 2, 2))
    result = colon_quotient_count(comp.image_gb(1), sop, 1)
    assert result.passed and result.lhs == 1 == 1 * sop.colength


def test_count_detects_wrong_rank():
    comp, sop = exa_instance()
    result = colon_quotient_count(comp.image_gb(1), sop, 5)
    assert not result.passed


def test_count_stable_colon(R1, ring):
    # M = (x) against Q = (x, y): (M : Q) = M, so the count is 0 = 0
    m = ideal(R1, "x")
    sop = validate_sop(ring, [ring.var(0), ring.var(1)])
    result = colon_quotient_count(m, sop, 0)
    assert result.passed and result.lhs == 0


def test_count_non_polynomial_difference(R1, ring):
    # a broken upstream precondition: "parameters" that are not a sop make
    # (M:Q)/M infinite-dimensional
    from startrans.complexes import SopData

    fake_sop = SopData(ring, (ring.var(0),), (1,), colength=1)
    m = ideal(R1, "x^2")
    with pytest.raises(NonPolynomialDifference):
        colon_quotient_count(m, fake_sop, 1)


# -- depth ----------------------------------------------------------------


def test_depth_positive_principal(R1):
    assert depth_positive_check(ideal(R1, "x"))


def test_depth_zero_for_socle(R1):
    assert not depth_positive_check(ideal(R1, "x^2", "x*y", "y^2"))


def test_depth_zero_for_irrelevant_ideal(R1):
    assert not depth_positive_check(ideal(R1, "x", "y"))


def test_depth_flag_consistent_with_fast_path():
    comp, sop = vanishing_top_instance()
    res = star_transform(comp, sop)
    assert res.star.depth_positive_fastpath
    assert depth_positive_check(res.star.complex.image_gb(1))
    assert any(
        c.name == "depth_positive" and c.passed for c in res.report.checks
    )


# -- saturate ---------------------------------------------------------------


def test_saturate_m_primary_to_unit(R1, ring):
    m_vars = [ring.var(0), ring.var(1)]
    sat, updates = saturate(ideal(R1, "x^2", "x*y", "y^2"), m_vars)
    assert submodule_equal(sat, ideal(R1, "1"))
    assert updates == 2


def test_saturate_strips_primary_component(R1, ring):
    m_vars = [ring.var(0), ring.var(1)]
    sat, updates = saturate(ideal(R1, "x^2", "x*y"), m_vars)
    assert submodule_equal(sat, ideal(R1, "x"))
    assert updates == 1


def test_saturate_already_stable(R1, ring):
    m_vars = [ring.var(0), ring.var(1)]
    sat, updates = saturate(ideal(R1, "x"), m_vars)
    assert updates == 0
    assert submodule_equal(sat, ideal(R1, "x"))


def test_saturate_idempotent(R1, ring):
    m_vars = [ring.var(0), ring.var(1)]
    once, _ = saturate(ideal(R1, "x^3", "x*y^2"), m_vars)
    twice, updates = saturate(once, m_vars)
    assert updates == 0
    assert submodule_equal(once, twice)


def test_saturate_iteration_limit(R1, ring):
    with pytest.raises(IterationLimit):
        saturate(ideal(R1, "x^2", "x*y", "y^2"), [ring.var(0), ring.var(1)], 1)


def test_colon_contains_module(R1, ring):
    m = ideal(R1, "x^3", "x*y", "y^2")
    c = colon(m, [ring.var(0), ring.var(1)])
    for g in m.gb:
        assert c.contains(g)


# -- iteration driver ----------------------------------------------------------


def test_driver_exa_two_rounds():
    comp, sop = exa_instance()
    driver = star_iteration_driver(comp, sop, 2)
    assert len(driver.rounds) == 2
    assert driver.all_match
    ring = comp.ring
    R1 = GradedFreeModule(ring, 1, (0,))
    expected_round2 = buchberger(
        R1, [R1.vector((ring.var(0),)), R1.vector((ring.var(1),))]
    )
    assert submodule_equal(driver.rounds[1].oracle_gb, expected_round2)
    assert driver.rounds[1].result.report.overall
    # round-1 output top map entries lie in Q, which let round 2 run
    round1 = driver.rounds[0].result.star.complex
    from startrans import check_qf_containment

    assert check_qf_containment(round1, sop)


def test_driver_stops_on_vanished_top():
    comp, sop = vanishing_top_instance()
    driver = star_iteration_driver(comp, sop, 5)
    assert len(driver.rounds) == 1
    assert "vanished" in driver.stop_reason


def test_driver_zero_rounds():
    comp, sop = exa_instance()
    driver = star_iteration_driver(comp, sop, 0)
    assert driver.rounds == []
    assert driver.final_complex is comp


def test_driver_precondition_round_one():
    ring = PolyRing(RationalField(), ("x", "y"))
    x = ring.var(0)
    modules = (
        GradedFreeModule(ring, 1, (0,)),
        GradedFreeModule(ring, 2, (1, 0)),
        GradedFreeModule(ring, 1, (0,)),
    )
    maps = (
        PolyMatrix(ring, [[x, ring.zero()]]),
        PolyMatrix(ring, [[ring.zero()], [ring.one()]]),
    )
    comp = FreeComplex(ring, modules, maps)
    sop = validate_sop(ring, [ring.var(0), ring.var(1)])
    with pytest.raises(PreconditionFailed):
        star_iteration_driver(comp, sop, 1)


def test_driver_matches_iterated_oracle():
    comp, sop = complete_intersection_instance((2, 2, 2))
    driver = star_iteration_driver(comp, sop, 2)
    assert driver.all_match
    oracle = comp.image_gb(1)
    for rnd in driver.rounds:
        oracle = colon(oracle, sop.gens)
        assert submodule_equal(rnd.oracle_gb, oracle)
