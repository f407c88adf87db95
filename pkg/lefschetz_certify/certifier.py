"""
Certifier - evaluates the Szpiro-type inequality battery against a fibration.

Every inequality is kept in the normal form "slack = LHS - RHS >= 0" with an
exact Fraction slack. A violated inequality is a proof that the data cannot
come from a semistable (= relatively minimal) symplectic Lefschetz
fibration of the asserted class.

Usage:
    cert = certify(fd)
    cert.overall                    # Overall.REFUTED, ...
    cert.verdict("EQ18").slack      # Fraction(54)

    evaluate_inequality("EQ26@1/2", compute_invariants(fd))
    minimal_commutator_genus(h=2, k=31)   # 3

Applicability:
  - base genus >= 1 battery: EQ6, EQ9, EQ10, EQ11
  - pencil battery (base genus 0, k >= 1): EQ16-EQ19, THM21, EQ26@0, EQ26@1
  - only with the not-rational-or-ruled assertion: EQ21, EQ22
  - only with ruled parameters (a, b): EQ13, EQ14, EQ15
  - always: EQ4, EQ5; with all fibers stable: REM7-K, REM7-N
  - supplementary, need exact b1 / signature: KNESER-B1, BETTI-K2, LI-B1, TAUBES-B1
  - supplementary, need exact K^2: K2@TAUBES, K2@KNESER, K2@LI, K2@STIPSICZ
  - the homological monodromy relation depends on the cycle order, so it is
    reported by compute_invariants, never as a verdict
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

from .base import (
    GenusTooSmall,
    InvalidCounts,
    NotSemistable,
    ParameterOutOfRange,
    TrivialPencil,
    UnknownInequalityId,
    parse_fraction,
)
from .invariants import (
    FibrationDescription,
    InvariantReport,
    compute_invariants,
    component_bounds_check,
    total_counts,
    validate_fibration,
)
from .surface_config import check_semistable
from .utils import ceil_div
from .verdicts import (
    CertificateReport,
    InequalityVerdict,
    Status,
    judge,
    pending,
)

logger = logging.getLogger(__name__)

Params = Mapping[str, object]
SlackFn = Callable[[InvariantReport, Params], Optional[Fraction]]


# --- scopes ---

def _positive_genus(r: InvariantReport, p: Params) -> bool:
    return r.g >= 1


def _pencil(r: InvariantReport, p: Params) -> bool:
    return r.g == 0


def _non_ruled_pencil(r: InvariantReport, p: Params) -> bool:
    return r.g == 0 and r.asserts_not_rational_or_ruled


def _ruled_pencil(r: InvariantReport, p: Params) -> bool:
    return r.g == 0 and (r.ruled_params is not None or ("a" in p and "b" in p))


def _non_ruled(r: InvariantReport, p: Params) -> bool:
    # Positive base genus forces minimal and not ruled; pencils need the assertion.
    return r.g >= 1 or r.asserts_not_rational_or_ruled


def _always(r: InvariantReport, p: Params) -> bool:
    return True


def _all_stable(r: InvariantReport, p: Params) -> bool:
    return r.all_stable and r.h >= 2


# --- slack helpers ---

def _genus_term(r: InvariantReport) -> int:
    return 6 * (3 * r.h - 1) * (r.g - 1)


def _ruled(r: InvariantReport, p: Params) -> Tuple[int, int]:
    if "a" in p and "b" in p:
        return int(p["a"]), int(p["b"])
    return r.ruled_params.a, r.ruled_params.b


def _exact_b1(r: InvariantReport) -> Optional[int]:
    return r.b1.value


def _eq26(r: InvariantReport, p: Params) -> Fraction:
    t = p["t"]
    return 5 * r.n - t * r.s - (8 - 2 * t) * r.h - 3 * (t - 1)


def _kneser_b1(r: InvariantReport, p: Params) -> Optional[Fraction]:
    b1 = _exact_b1(r)
    if b1 is None:
        return None
    return Fraction(18 * (r.h - 1) * (r.g - 1) + 5 * r.k - 12 + 6 * b1 - 6 * (r.N - r.D))


def _betti_k2(r: InvariantReport, p: Params) -> Optional[Fraction]:
    """
    K^2 >= 0 in Betti form when X is minimal (g >= 1). A pencil's total
    space may be blown up, so only the blowup-invariant part survives:
    5 b2+ - 4 b1 + 4 >= 0.
    """
    b1 = _exact_b1(r)
    if b1 is None or r.b2_plus is None:
        return None
    if r.g >= 1:
        return r.b2_plus - Fraction(r.b2_minus + 4 * b1 - 4, 5)
    return Fraction(5 * r.b2_plus - 4 * b1 + 4)


def _li_b1(r: InvariantReport, p: Params) -> Optional[Fraction]:
    b1 = _exact_b1(r)
    if b1 is None:
        return None
    return Fraction(5 * r.k - 18 * r.h + 6 + 6 * b1 - 6 * (r.N - r.D))


def _taubes_b1(r: InvariantReport, p: Params) -> Optional[Fraction]:
    b1 = _exact_b1(r)
    if b1 is None:
        return None
    b2_minus = r.b2_minus if r.b2_minus is not None else r.b2_minus_lower
    return Fraction(5 * r.k - 20 * r.h + 14 + 6 * b1 - 5 * b2_minus)


def _k2_against(source: str) -> SlackFn:
    def slack(r: InvariantReport, p: Params) -> Optional[Fraction]:
        bound = dict(_k2_bounds(r)).get(source)
        if r.k_squared is None or bound is None:
            return None
        return Fraction(r.k_squared - bound)
    return slack


@dataclass(frozen=True)
class Inequality:
    id: str
    reference: str
    applies: Callable[[InvariantReport, Params], bool]
    slack: SlackFn
    required: bool = True
    parametric: bool = False


def _count_based(fn: Callable[[InvariantReport], int]) -> SlackFn:
    return lambda r, p: Fraction(fn(r))


_INEQUALITIES: Tuple[Inequality, ...] = (
    Inequality("EQ4", "Prop. 6, Eq. (4)", _always, _count_based(lambda r: r.N - r.s - r.D)),
    Inequality("EQ5", "Prop. 6, Eq. (5)", _always,
               _count_based(lambda r: r.N - r.k + (r.h - 1) * r.D)),
    Inequality("REM7-K", "Remark 7, k <= 3(h-1)D", _all_stable,
               _count_based(lambda r: 3 * (r.h - 1) * r.D - r.k)),
    Inequality("REM7-N", "Remark 7, N <= 2(h-1)D", _all_stable,
               _count_based(lambda r: 2 * (r.h - 1) * r.D - r.N)),
    # base genus >= 1
    Inequality("EQ6", "Thm. 8, Eq. (6)", _positive_genus,
               _count_based(lambda r: 5 * r.k + _genus_term(r) - 6 * (r.N - r.D))),
    Inequality("EQ9", "Cor. 9, Eq. (9)", _positive_genus,
               _count_based(lambda r: _genus_term(r) + 5 * r.n - r.s)),
    Inequality("EQ10", "Cor. 9, Eq. (10)", _positive_genus,
               _count_based(lambda r: _genus_term(r) + 6 * r.h * r.D - r.k)),
    Inequality("EQ11", "Cor. 9, Eq. (11)", _positive_genus,
               _count_based(lambda r: _genus_term(r) + (5 * r.h + 1) * r.D - r.N)),
    Inequality("KNESER-B1", "Thm. 8 proof, Kneser estimate with exact b1", _positive_genus,
               _kneser_b1, required=False),
    # pencils
    Inequality("EQ16", "Thm. 15, Eq. (16)", _pencil,
               _count_based(lambda r: 5 * r.k - 6 * r.h - 6 * (r.N - r.D))),
    Inequality("EQ17", "Thm. 15, Eq. (17)", _pencil,
               _count_based(lambda r: 5 * r.n - 6 * r.h - r.s)),
    Inequality("EQ18", "Thm. 15, Eq. (18)", _pencil,
               _count_based(lambda r: 6 * r.h * (r.D - 1) - r.k)),
    Inequality("EQ19", "Thm. 15, Eq. (19)", _pencil,
               _count_based(lambda r: (5 * r.h + 1) * (r.D - 1) - (r.h - 1) - r.N)),
    Inequality("THM21", "Thm. 21", _pencil, _count_based(lambda r: 5 * r.n - (8 * r.h - 3))),
    Inequality("EQ26", "Remark 23, Eq. (26)", _pencil, _eq26, parametric=True),
    Inequality("EQ21", "Thm. 20, Eq. (21)", _non_ruled_pencil,
               _count_based(lambda r: 5 * r.k - (8 * r.h - 3) - 5 * (r.N - r.D))),
    Inequality("EQ22", "Thm. 20, Eq. (22)", _non_ruled_pencil,
               _count_based(lambda r: 5 * r.n - (8 * r.h - 3))),
    Inequality("LI-B1", "Remark 19, Eq. (20) with exact b1", _non_ruled_pencil,
               _li_b1, required=False),
    Inequality("TAUBES-B1", "Thm. 20 proof, Eq. (25) with exact b1", _non_ruled_pencil,
               _taubes_b1, required=False),
    Inequality("BETTI-K2", "Eq. (7) for g >= 1, Eq. (24) for pencils", _non_ruled,
               _betti_k2, required=False),
    Inequality("EQ13", "Prop. 14, Eq. (13)", _ruled_pencil,
               lambda r, p: r.k - (2 * r.h - 2) - Fraction(3, 2) * (r.N - r.D)),
    Inequality("EQ14", "Prop. 14, Eq. (14)", _ruled_pencil,
               lambda r, p: r.n - (2 * r.h - 2) - Fraction(1, 2) * (r.N - r.D)),
    Inequality("EQ15", "Prop. 14 proof, Eq. (15)", _ruled_pencil,
               lambda r, p: 2 + 2 * r.h - Fraction(_ruled(r, p)[1], 2) - 4 * _ruled(r, p)[0]),
    # exact K^2 against the named lower bounds
    Inequality("K2@TAUBES", "Thm. 8 proof, K^2 >= 0", lambda r, p: "TAUBES" in dict(_k2_bounds(r)),
               _k2_against("TAUBES"), required=False),
    Inequality("K2@KNESER", "Thm. 8 proof, K^2 >= 2(h-1)(g-1)",
               lambda r, p: "KNESER" in dict(_k2_bounds(r)), _k2_against("KNESER"), required=False),
    Inequality("K2@LI", "Eq. (20), K^2 >= 2 - 2h", lambda r, p: "LI" in dict(_k2_bounds(r)),
               _k2_against("LI"), required=False),
    Inequality("K2@STIPSICZ", "Prop. 14 proof, K^2 >= 4(1 - h)",
               lambda r, p: "STIPSICZ" in dict(_k2_bounds(r)), _k2_against("STIPSICZ"),
               required=False),
)

INEQUALITIES: Dict[str, Inequality] = {ineq.id: ineq for ineq in _INEQUALITIES}


def _split_id(inequality_id: str, params: Params) -> Tuple[str, Dict[str, object]]:
    params = dict(params or {})
    base, _, parameter = inequality_id.partition("@")
    if base in INEQUALITIES and INEQUALITIES[base].parametric:
        if parameter:
            params["t"] = parameter
        if "t" not in params:
            raise ParameterOutOfRange(f"{base} needs a parameter t in [0, 1]")
        try:
            t = parse_fraction(params["t"])
        except ValueError as e:
            raise ParameterOutOfRange(str(e))
        if not 0 <= t <= 1:
            raise ParameterOutOfRange(f"t = {t} is outside [0, 1]")
        params["t"] = t
        return base, params
    if inequality_id not in INEQUALITIES:
        raise UnknownInequalityId(f"Unknown inequality id: {inequality_id}")
    return inequality_id, params


def evaluate_inequality(inequality_id: str, report: InvariantReport,
                        params: Optional[Params] = None) -> InequalityVerdict:
    """
    Evaluate one inequality against a report.

    params may carry t (for EQ26, also accepted as "EQ26@t") and the ruled
    parameters a, b (for EQ13-EQ15, overriding the report's).
    """
    base, params = _split_id(inequality_id, params)
    ineq = INEQUALITIES[base]
    parameter = params.get("t") if ineq.parametric else None
    verdict_id = f"{base}@{parameter}" if ineq.parametric else base

    if not ineq.applies(report, params):
        return pending(verdict_id, ineq.reference, Status.NOT_APPLICABLE, ineq.required, parameter)
    slack = ineq.slack(report, params)
    if slack is None:
        return pending(verdict_id, ineq.reference, Status.UNKNOWN, ineq.required, parameter)
    verdict = judge(verdict_id, ineq.reference, slack, ineq.required, parameter)
    logger.debug("%s: %s slack=%s", verdict.id, verdict.status.value, verdict.slack)
    return verdict


# --- K^2 lower bounds ---

def _k2_bounds(r: InvariantReport) -> List[Tuple[str, int]]:
    if r.D == 0:
        return []
    bounds = []
    if r.g >= 1:
        bounds.append(("TAUBES", 0))
        # Kneser needs b2+ >= 2, which N > D already forces.
        if (r.b2_plus is not None and r.b2_plus >= 2) or (r.b2_plus is None and r.N > r.D):
            bounds.append(("KNESER", 2 * (r.h - 1) * (r.g - 1)))
    else:
        if r.asserts_not_rational_or_ruled:
            bounds.append(("LI", 2 - 2 * r.h))
        bounds.append(("STIPSICZ", 4 * (1 - r.h)))
    return bounds


def k2_lower_bounds(fd: Union[FibrationDescription, InvariantReport]) -> List[Tuple[str, int]]:
    """Named lower bounds for K^2 whose hypotheses the description meets."""
    report = fd if isinstance(fd, InvariantReport) else compute_invariants(fd)
    return _k2_bounds(report)


def k2_cross_checks(report: InvariantReport) -> List[InequalityVerdict]:
    """Exact K^2 against every applicable lower bound; empty when K^2 is not exact."""
    if report.k_squared is None:
        return []
    return [evaluate_inequality(f"K2@{source}", report) for source, _ in _k2_bounds(report)]


def minimal_commutator_genus(h: int, k: int) -> int:
    """Least g with g >= 1 + k / (6(3h - 1)): no smaller g writes t_a^k as g commutators."""
    if h < 2:
        raise GenusTooSmall(f"Commutator bound needs fiber genus >= 2, got {h}")
    if k < 1:
        raise InvalidCounts(f"Twist power must be >= 1, got {k}")
    return 1 + ceil_div(k, 6 * (3 * h - 1))


# --- certification ---

_POSITIVE_GENUS_BATTERY = ("EQ6", "EQ9", "EQ10", "EQ11", "KNESER-B1", "BETTI-K2")
_PENCIL_BATTERY = (
    "EQ16", "EQ17", "EQ18", "EQ19", "THM21", "EQ26@0", "EQ26@1",
    "EQ21", "EQ22", "LI-B1", "TAUBES-B1", "BETTI-K2",
    "EQ13", "EQ14", "EQ15",
)


def certify_report(report: InvariantReport) -> CertificateReport:
    """Run the full battery on an already computed report."""
    verdicts = component_bounds_check(
        report.k, report.n, report.s, report.D, report.N, report.h, report.all_stable
    )
    battery = _POSITIVE_GENUS_BATTERY if report.g >= 1 else _PENCIL_BATTERY
    verdicts.extend(evaluate_inequality(i, report) for i in battery)
    verdicts.extend(k2_cross_checks(report))
    cert = CertificateReport.from_verdicts(verdicts)
    logger.info("certificate: %s (%d verdicts)", cert.overall.value, len(cert.verdicts))
    return cert


def certify_with_invariants(fd: FibrationDescription) -> Tuple[InvariantReport, CertificateReport]:
    """certify(), also returning the invariant report the battery ran on."""
    fd = validate_fibration(fd)
    for i, fiber in enumerate(fd.fibers):
        if not check_semistable(fiber):
            raise NotSemistable(
                "Fiber has a sphere component with a single node; the fibration is not "
                "relatively minimal, so no inequality applies",
                fiber_index=i,
                path=f"fibers/{i}",
            )
    if fd.is_pencil and total_counts(fd).k == 0:
        raise TrivialPencil("A pencil needs at least one critical point")
    report = compute_invariants(fd)
    return report, certify_report(report)


def certify(fd: FibrationDescription) -> CertificateReport:
    return certify_with_invariants(fd)[1]
