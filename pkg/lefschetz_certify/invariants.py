"""
Global numerical invariants of a Lefschetz fibration description.

Notation: fiber genus h, base genus g, k = n + s vanishing cycles (n
nonseparating, s separating), D singular fibers, N irreducible components of
singular fibers.

Usage:
    fd = validate_fibration(FibrationDescription(fiber_genus=1, base_genus=0, fibers=...))
    report = compute_invariants(fd)
    report.chi, report.k, report.b1, report.k_squared
"""

import logging
from dataclasses import dataclass, field, replace
from typing import List, NamedTuple, Optional, Tuple

from .base import (
    DimensionMismatch,
    InconsistentFlags,
    InvalidCounts,
    LefschetzError,
    MatrixNotSymplectic,
    MissingHomologyData,
    NegativeBetti,
    ParityMismatch,
)
from .homology import (
    MonodromyVerdict,
    SymplecticLattice,
    as_integer_matrix,
    first_homology,
    matrix_key,
    monodromy_shadow_check,
)
from .surface_config import (
    FiberConfiguration,
    check_semistable,
    check_stable,
    is_separating_curve,
    validate_fiber_configuration,
)
from .verdicts import InequalityVerdict, Status, judge, pending

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RuledParameters:
    """X is a 2-sphere bundle over a genus-a surface blown up in b points."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise InconsistentFlags(f"Ruled parameters must be >= 0, got a={self.a}, b={self.b}")


@dataclass(frozen=True)
class FibrationDescription:
    """
    Combinatorial description of a Lefschetz fibration.

    handle_monodromy holds the 2g symplectic matrices A_1, B_1, ..., A_g, B_g
    (as nested tuples) when known. cycle_order lists (fiber, curve) pairs in
    the global monodromy order; None means fiber by fiber, curves in order.
    """

    fiber_genus: int
    base_genus: int
    fibers: Tuple[FiberConfiguration, ...] = ()
    cycle_order: Optional[Tuple[Tuple[int, int], ...]] = None
    handle_monodromy: Optional[Tuple[Tuple[Tuple[int, ...], ...], ...]] = None
    signature: Optional[int] = None
    asserts_not_rational_or_ruled: bool = False
    ruled_params: Optional[RuledParameters] = None

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(self.fibers))
        if self.cycle_order is not None:
            object.__setattr__(
                self, "cycle_order", tuple((int(f), int(c)) for f, c in self.cycle_order)
            )
        if self.handle_monodromy is not None:
            object.__setattr__(
                self,
                "handle_monodromy",
                tuple(matrix_key(as_integer_matrix(M)) for M in self.handle_monodromy),
            )

    @property
    def h(self) -> int:
        return self.fiber_genus

    @property
    def g(self) -> int:
        return self.base_genus

    @property
    def is_pencil(self) -> bool:
        return self.base_genus == 0

    def ordered_cycles(self) -> List[Tuple[int, int]]:
        if self.cycle_order is not None:
            return list(self.cycle_order)
        return [(f, c) for f, fiber in enumerate(self.fibers) for c in range(fiber.curve_count)]


@dataclass(frozen=True)
class BettiRange:
    """b1 as a closed interval; exact when the ends agree."""

    low: int
    high: int

    @property
    def exact(self) -> bool:
        return self.low == self.high

    @property
    def value(self) -> Optional[int]:
        return self.low if self.exact else None


class FiberCounts(NamedTuple):
    k: int
    n: int
    s: int
    D: int
    N: int


@dataclass(frozen=True)
class InvariantReport:
    h: int
    g: int
    chi: int
    k: int
    n: int
    s: int
    D: int
    N: int
    b1: BettiRange
    b2_minus_lower: int
    b2_plus: Optional[int] = None
    b2_minus: Optional[int] = None
    k_squared: Optional[int] = None
    k_squared_upper: Optional[int] = None
    torsion: Optional[Tuple[int, ...]] = None
    signature: Optional[int] = None
    all_semistable: bool = True
    all_stable: bool = False
    monodromy: Optional[MonodromyVerdict] = None
    asserts_not_rational_or_ruled: bool = False
    ruled_params: Optional[RuledParameters] = None
    warnings: Tuple[str, ...] = field(default=())

    @property
    def counts(self) -> FiberCounts:
        return FiberCounts(self.k, self.n, self.s, self.D, self.N)


def euler_characteristic(g: int, h: int, k: int) -> int:
    return 4 * (g - 1) * (h - 1) + k


def _separating_count(fiber: FiberConfiguration) -> int:
    if fiber.is_validated:
        return fiber.separating_count
    return sum(1 for i in range(fiber.curve_count) if is_separating_curve(fiber, i))


def total_counts(fd: FibrationDescription) -> FiberCounts:
    k = sum(f.curve_count for f in fd.fibers)
    s = sum(_separating_count(f) for f in fd.fibers)
    N = sum(len(f.pieces) for f in fd.fibers)
    return FiberCounts(k=k, n=k - s, s=s, D=len(fd.fibers), N=N)


def b2_minus_lower_bound(N: int, D: int) -> int:
    """1 + N - D when there are singular fibers, 0 otherwise."""
    if N < D:
        raise InvalidCounts(f"N = {N} components cannot be fewer than D = {D} singular fibers")
    if D == 0:
        return 0
    return 1 + N - D


def component_bounds_check(k: int, n: int, s: int, D: int, N: int, h: int,
                           all_stable: bool) -> List[InequalityVerdict]:
    """
    Component-count estimates valid for every fibration, plus the two
    bounds that hold when every singular fiber is stable.
    """
    verdicts = [
        judge("EQ4", "Prop. 6, Eq. (4)", N - s - D),
        judge("EQ5", "Prop. 6, Eq. (5)", N - k + (h - 1) * D),
    ]
    if all_stable and h >= 2:
        verdicts.append(judge("REM7-K", "Remark 7, k <= 3(h-1)D", 3 * (h - 1) * D - k))
        verdicts.append(judge("REM7-N", "Remark 7, N <= 2(h-1)D", 2 * (h - 1) * D - N))
    else:
        verdicts.append(pending("REM7-K", "Remark 7, k <= 3(h-1)D", Status.NOT_APPLICABLE))
        verdicts.append(pending("REM7-N", "Remark 7, N <= 2(h-1)D", Status.NOT_APPLICABLE))
    return verdicts


def betti_resolution(chi: int, b1: int, sigma: int) -> Tuple[int, int]:
    """(b2+, b2-) from chi, an exact b1 and the signature."""
    b2 = chi - 2 + 2 * b1
    if (b2 + sigma) % 2 != 0:
        raise ParityMismatch(
            f"chi - 2 + 2b1 = {b2} and signature {sigma} have different parity", path="signature"
        )
    b2_plus, b2_minus = (b2 + sigma) // 2, (b2 - sigma) // 2
    if b2_plus < 0 or b2_minus < 0:
        raise NegativeBetti(
            f"Signature {sigma} gives b2+ = {b2_plus}, b2- = {b2_minus}", path="signature"
        )
    return b2_plus, b2_minus


def canonical_square(chi: int, b1: int, b2_minus: int) -> int:
    """K^2 = 5 chi - 6 + 6 b1 - 6 b2-."""
    return 5 * chi - 6 + 6 * b1 - 6 * b2_minus


def structural_betti_range(fd: FibrationDescription, n: Optional[int] = None) -> BettiRange:
    """b1 bounds that hold without any homology data."""
    h, g = fd.h, fd.g
    if g >= 1:
        return BettiRange(2 * g, 2 * g + 2 * h)
    if n is None:
        n = total_counts(fd).n
    if n > 0:
        return BettiRange(0, 2 * h - 1)
    return BettiRange(0, 2 * h)


def first_betti_range(fd: FibrationDescription) -> BettiRange:
    """Exact b1 when homology data is complete, else the structural interval."""
    try:
        b1 = first_homology(fd).b1
    except MissingHomologyData:
        return structural_betti_range(fd)
    return BettiRange(b1, b1)


def canonical_square_upper_bound(fd: FibrationDescription) -> int:
    """K^2 with b1 at its upper value and b2- at its lower bound 1 + N - D."""
    counts = total_counts(fd)
    if counts.D == 0:
        raise InvalidCounts("Upper bound for K^2 needs at least one singular fiber")
    chi = euler_characteristic(fd.g, fd.h, counts.k)
    b1_high = first_betti_range(fd).high
    return canonical_square(chi, b1_high, b2_minus_lower_bound(counts.N, counts.D))


def _prefix_path(err: LefschetzError, index: int) -> LefschetzError:
    err.fiber_index = index
    err.path = f"fibers/{index}/{err.path}" if err.path else f"fibers/{index}"
    return err


def validate_fibration(fd: FibrationDescription) -> FibrationDescription:
    """
    Validate a description and return a copy with validated fibers.

    Errors carry fiber_index and a field path where one applies.
    """
    h, g = fd.h, fd.g
    if h < 1:
        raise InvalidCounts(f"Fiber genus must be >= 1, got {h}", path="fiber_genus")
    if g < 0:
        raise InvalidCounts(f"Base genus must be >= 0, got {g}", path="base_genus")

    fibers = []
    for i, fiber in enumerate(fd.fibers):
        try:
            fibers.append(validate_fiber_configuration(fiber, h))
        except LefschetzError as err:
            raise _prefix_path(err, i)
    fd = replace(fd, fibers=tuple(fibers))

    if fd.asserts_not_rational_or_ruled and fd.ruled_params is not None:
        raise InconsistentFlags(
            "A description cannot be both asserted non-ruled and given ruled parameters",
            path="flags",
        )
    _check_handles(fd)
    _check_cycle_order(fd)

    counts = total_counts(fd)
    chi = euler_characteristic(g, h, counts.k)
    b1 = first_betti_range(fd)
    if fd.signature is not None:
        if (chi + fd.signature) % 2 != 0:
            raise ParityMismatch(
                f"chi = {chi} and signature {fd.signature} have different parity",
                path="signature",
            )
        if b1.exact:
            betti_resolution(chi, b1.value, fd.signature)
    if fd.ruled_params is not None:
        _check_ruled(fd, chi, b1)
    logger.debug("validated fibration h=%d g=%d counts=%s", h, g, tuple(counts))
    return fd


def _check_handles(fd: FibrationDescription):
    if fd.handle_monodromy is None:
        return
    if len(fd.handle_monodromy) != 2 * fd.g:
        raise DimensionMismatch(
            f"Expected {2 * fd.g} handle monodromy matrices, got {len(fd.handle_monodromy)}",
            path="handle_monodromy",
        )
    lattice = SymplecticLattice(fd.h)
    for j, M in enumerate(fd.handle_monodromy):
        try:
            symplectic = lattice.is_symplectic(M)
        except LefschetzError as err:
            raise err.located(path=f"handle_monodromy/{j}")
        if not symplectic:
            raise MatrixNotSymplectic(
                f"Handle monodromy {j} is not symplectic", path=f"handle_monodromy/{j}"
            )


def _check_cycle_order(fd: FibrationDescription):
    if fd.cycle_order is None:
        return
    expected = {(f, c) for f, fiber in enumerate(fd.fibers) for c in range(fiber.curve_count)}
    given = list(fd.cycle_order)
    if len(given) != len(expected) or set(given) != expected:
        raise InvalidCounts(
            "cycle_order must list every (fiber, curve) pair exactly once", path="cycle_order"
        )


def _check_ruled(fd: FibrationDescription, chi: int, b1: BettiRange):
    a, b = fd.ruled_params.a, fd.ruled_params.b
    if not fd.is_pencil:
        raise InconsistentFlags("Ruled parameters only apply to pencils", path="flags/ruled")
    if chi != 4 * (1 - a) + b:
        raise InconsistentFlags(
            f"chi = {chi} but a {b}-fold blowup of a sphere bundle over genus {a} "
            f"has chi = {4 * (1 - a) + b}",
            path="flags/ruled",
        )
    if b1.exact and b1.value != 2 * a:
        raise InconsistentFlags(
            f"b1 = {b1.value} but a ruled surface over genus {a} has b1 = {2 * a}",
            path="flags/ruled",
        )
    if b1.exact and fd.signature is not None:
        _, b2_minus = betti_resolution(chi, b1.value, fd.signature)
        if b2_minus != 1 + b:
            raise InconsistentFlags(
                f"b2- = {b2_minus} but {b} blowups give b2- = {1 + b}", path="flags/ruled"
            )


def _monodromy_state(fd: FibrationDescription, warnings: List[str]) -> Optional[MonodromyVerdict]:
    curves = [c for fiber in fd.fibers for c in fiber.curves]
    with_class = sum(1 for c in curves if c.homology is not None)
    if with_class == 0 and (curves or fd.handle_monodromy is None):
        return None
    if with_class < len(curves):
        warnings.append(
            f"homology classes given for {with_class} of {len(curves)} vanishing cycles; "
            "monodromy and b1 not computed from them"
        )
        return None
    verdict = monodromy_shadow_check(fd)
    if verdict is MonodromyVerdict.INDETERMINATE:
        warnings.append("Sp-check indeterminate: handle monodromy matrices not supplied")
    elif verdict is MonodromyVerdict.NONIDENTITY:
        warnings.append(
            "Sp-check: the monodromy product in this cycle order is not the identity; "
            "reorder the cycles or supply handle matrices that close it up"
        )
    return verdict


def compute_invariants(fd: FibrationDescription) -> InvariantReport:
    fd = validate_fibration(fd)
    h, g = fd.h, fd.g
    counts = total_counts(fd)
    chi = euler_characteristic(g, h, counts.k)
    warnings: List[str] = []

    torsion = None
    try:
        summary = first_homology(fd)
        b1 = BettiRange(summary.b1, summary.b1)
        torsion = summary.torsion
        if torsion:
            warnings.append(
                f"H1 torsion {list(torsion)} reported for information; no certified inequality uses it"
            )
        structural = structural_betti_range(fd, counts.n)
        if not structural.low <= b1.value <= structural.high:
            warnings.append(
                f"exact b1 = {b1.value} lies outside the structural range "
                f"[{structural.low}, {structural.high}]; description is inconsistent"
            )
    except MissingHomologyData:
        b1 = structural_betti_range(fd, counts.n)
        warnings.append(f"b1 known only as interval [{b1.low}, {b1.high}]")

    b2_plus = b2_minus = k_squared = None
    if fd.signature is not None and b1.exact:
        b2_plus, b2_minus = betti_resolution(chi, b1.value, fd.signature)
        k_squared = canonical_square(chi, b1.value, b2_minus)

    k_squared_upper = None
    if counts.D >= 1:
        k_squared_upper = canonical_square(chi, b1.high, b2_minus_lower_bound(counts.N, counts.D))

    return InvariantReport(
        h=h,
        g=g,
        chi=chi,
        k=counts.k,
        n=counts.n,
        s=counts.s,
        D=counts.D,
        N=counts.N,
        b1=b1,
        b2_minus_lower=b2_minus_lower_bound(counts.N, counts.D),
        b2_plus=b2_plus,
        b2_minus=b2_minus,
        k_squared=k_squared,
        k_squared_upper=k_squared_upper,
        torsion=torsion,
        signature=fd.signature,
        all_semistable=all(check_semistable(f) for f in fd.fibers),
        all_stable=all(check_stable(f) for f in fd.fibers),
        monodromy=_monodromy_state(fd, warnings),
        asserts_not_rational_or_ruled=fd.asserts_not_rational_or_ruled,
        ruled_params=fd.ruled_params,
        warnings=tuple(warnings),
    )
