"""Independent verification: the colon oracle, dimension counting, depth
probes, saturation, and the round-by-round iteration driver.

Everything here re-derives its facts from Groebner bases of the inputs,
never from the construction internals, so a passing report is an
independent certificate of the pipeline output.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb

from .complexes import certify_acyclic, check_qf_containment, composition_defect, homogeneity_defect
from .errors import NonPolynomialDifference, IterationLimit, PreconditionFailed
from .modules import colon, hilbert_data, submodule_equal


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def overall(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, detail=""):
        self.checks.append(CheckResult(name, bool(passed), detail, 0.0))

    def run(self, name, fn, detail=""):
        start = time.perf_counter()
        try:
            passed, extra = fn()
        except Exception as exc:  # a crashed check is a failed check
            passed, extra = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        note = extra if extra else detail
        self.checks.append(CheckResult(name, bool(passed), note, elapsed))
        return passed

    def names(self):
        return [c.name for c in self.checks]

    def lines(self):
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            detail = f"  ({c.detail})" if c.detail else ""
            out.append(f"{status} {c.name}{detail}")
        out.append(f"{'PASS' if self.overall else 'FAIL'} overall")
        return out

    def to_jsonable(self):
        return {
            "overall": self.overall,
            "checks": [
                {
                    "name": c.name,
                    "pass": c.passed,
                    "detail": c.detail,
                    "seconds": round(c.seconds, 6),
                }
                for c in self.checks
            ],
        }

    @staticmethod
    def from_jsonable(data):
        rep = VerificationReport()
        for c in data.get("checks", []):
            rep.checks.append(
                CheckResult(
                    c["name"], bool(c["pass"]), c.get("detail", ""),
                    float(c.get("seconds", 0.0)),
                )
            )
        return rep


FIXED_CHECKS = (
    "composition_zero",
    "homogeneity",
    "acyclicity",
    "colon_equality",
    "top_minimality",
    "rank_accounting",
    "colon_quotient_count",
)


@dataclass(frozen=True)
class CountResult:
    passed: bool
    lhs: int
    rhs: int


def colon_quotient_count(m_gb, sop, rank_top, colon_gb=None):
    """dim_k (M:Q)/M against rank(top) * dim_k R/Q.

    The left side is the difference of the two quotient Hilbert series,
    which must be a polynomial; NonPolynomialDifference otherwise.
    """
    if colon_gb is None:
        colon_gb = colon(m_gb, sop.gens)
    series_m = hilbert_data(m_gb).series
    series_c = hilbert_data(colon_gb).series
    diff = series_m.sub(series_c)
    poly = diff.as_polynomial()
    if poly is None:
        raise NonPolynomialDifference(
            "Hilbert series of (M:Q)/M is not a polynomial; an upstream "
            "precondition is broken"
        )
    lhs = sum(poly.values())
    rhs = rank_top * sop.colength
    return CountResult(lhs == rhs, lhs, rhs)


def depth_positive_check(m_gb):
    """True iff M : m = M, i.e. the irrelevant ideal is not associated to
    the quotient, i.e. the quotient has positive depth."""
    ring = m_gb.ambient.ring
    variables = [ring.var(i) for i in range(ring.nvars)]
    return submodule_equal(colon(m_gb, variables), m_gb)


def saturate(m_gb, ideal_polys, max_iter=32):
    """Iterate M <- (M : J) until stable; returns (module, updates)."""
    current = m_gb
    for updates in range(max_iter + 1):
        nxt = colon(current, ideal_polys)
        if submodule_equal(nxt, current):
            return current, updates
        current = nxt
    raise IterationLimit(
        f"saturation did not stabilize within {max_iter} iterations"
    )


def verify_star(comp, sop, star):
    """Re-check a constructed output complex against the input.

    Runs the fixed list of checks (composition, homogeneity, acyclicity,
    colon equality against the oracle, top-map minimality, rank accounting,
    quotient dimension count) plus the conditional depth probe when the
    top module vanished.
    """
    report = VerificationReport()
    out = star.complex
    n = comp.length

    report.run(
        "composition_zero",
        lambda: (composition_defect(out) is None, ""),
    )
    report.run(
        "homogeneity",
        lambda: (homogeneity_defect(out) is None, ""),
    )
    report.run(
        "acyclicity",
        lambda: _acyclicity_check(out),
    )

    m_gb = comp.image_gb(1)
    colon_gb = colon(m_gb, sop.gens)

    report.run(
        "colon_equality",
        lambda: (
            submodule_equal(out.image_gb(1), colon_gb),
            "Im of the first output map against the colon oracle",
        ),
    )
    report.run("top_minimality", lambda: _top_minimality(out))
    report.run(
        "rank_accounting",
        lambda: _rank_accounting(comp, star, n),
    )

    def _count():
        res = colon_quotient_count(
            m_gb, sop, comp.top_rank(), colon_gb=colon_gb
        )
        return res.passed, f"dim (M:Q)/M = {res.lhs}, expected {res.rhs}"

    report.run("colon_quotient_count", _count)

    if star.depth_positive_fastpath:
        report.run(
            "depth_positive",
            lambda: (
                depth_positive_check(colon_gb),
                "top module vanished; colon by the irrelevant ideal is stable",
            ),
        )
    if comp.ring.quotient:
        report.add(
            "quotient_assumption",
            True,
            "quotient ring assumed Cohen-Macaulay of dimension equal to the "
            "parameter count (user-asserted, not certified)",
        )
    return report


def _acyclicity_check(out):
    cert = certify_acyclic(out)
    return cert.ok, (cert.detail if not cert.ok else "")


def _top_minimality(out):
    top_map = out.phi(out.length)
    f = out.ring.field
    for i in range(top_map.nrows):
        for j in range(top_map.ncols):
            if not f.is_zero(top_map.entry(i, j).constant_coeff()):
                return False, f"entry ({i},{j}) of the top map has a unit part"
    return True, ""


def _rank_accounting(comp, star, n):
    out = star.complex
    top_rank = comp.top_rank()
    problems = []
    for p in range(1, n - 1):
        expected = top_rank * comb(n, p - 1) + comp.module(p).rank
        if out.module(p).rank != expected:
            problems.append(f"rank at {p}: {out.module(p).rank} != {expected}")
    expected_prev = top_rank * comb(n, n - 2) + len(star.retained_basis)
    if out.module(n - 1).rank != expected_prev:
        problems.append(
            f"rank at {n - 1}: {out.module(n - 1).rank} != {expected_prev}"
        )
    expected_top = n * top_rank - len(star.selected_pairs)
    if out.module(n).rank != expected_top or out.module(n).rank != len(
        star.star_pairs
    ):
        problems.append(
            f"rank at {n}: {out.module(n).rank} != {expected_top}"
        )
    return not problems, "; ".join(problems)


@dataclass
class DriverRound:
    index: int
    result: object
    oracle_gb: object
    matches: bool


@dataclass
class DriverResult:
    rounds: list
    stop_reason: str
    final_complex: object

    @property
    def all_match(self):
        return all(r.matches for r in self.rounds)


def star_iteration_driver(comp, sop, rounds):
    """Apply the transform repeatedly, checking each round's image against
    the oracle's iterated colon; stops early when the next round's
    precondition fails or the top module vanishes."""
    from .transform import star_transform

    if rounds == 0:
        return DriverResult([], "no rounds requested", comp)
    current = comp
    oracle = comp.image_gb(1)
    out = []
    stop_reason = "completed"
    for k in range(1, rounds + 1):
        if not check_qf_containment(current, sop):
            if k == 1:
                raise PreconditionFailed(
                    "round 1: Im phi_n is not contained in Q*F_(n-1)"
                )
            stop_reason = f"precondition failed before round {k}"
            break
        result = star_transform(current, sop)
        oracle = colon(oracle, sop.gens)
        matches = submodule_equal(result.star.complex.image_gb(1), oracle)
        out.append(DriverRound(k, result, oracle, matches))
        current = result.star.complex
        if result.star.top_rank() == 0:
            stop_reason = f"top module vanished after round {k}"
            break
    return DriverResult(out, stop_reason, current)
