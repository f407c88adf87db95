"""
Verdict value types shared by the invariants and certifier modules.

Every inequality is stored in the normal form "LHS - RHS >= 0"; its slack is
that difference as an exact Fraction.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple


class Status(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not-applicable"
    UNKNOWN = "unknown"


class Overall(str, Enum):
    REALIZABLE_CONSISTENT = "realizable-consistent"
    REFUTED = "refuted"
    INCOMPLETE = "incomplete"


@dataclass(frozen=True)
class InequalityVerdict:
    """
    id:        stable identifier, e.g. "EQ18" or "EQ26@1/2"
    reference: citation string
    status:    see Status
    slack:     exact LHS - RHS, None unless the inequality was evaluated
    required:  part of the fixed battery (always decidable for valid input)
    parameter: the t of the EQ26 family, None otherwise
    """

    id: str
    reference: str
    status: Status
    slack: Optional[Fraction] = None
    required: bool = True
    parameter: Optional[Fraction] = None


def judge(id: str, reference: str, slack, required: bool = True,
          parameter: Optional[Fraction] = None) -> InequalityVerdict:
    """Verdict from an evaluated slack: holds iff slack >= 0."""
    slack = Fraction(slack)
    status = Status.HOLDS if slack >= 0 else Status.VIOLATED
    return InequalityVerdict(id, reference, status, slack, required, parameter)


def pending(id: str, reference: str, status: Status, required: bool = True,
            parameter: Optional[Fraction] = None) -> InequalityVerdict:
    """Verdict that could not be evaluated (not-applicable or unknown)."""
    return InequalityVerdict(id, reference, status, None, required, parameter)


@dataclass(frozen=True)
class CertificateReport:
    verdicts: Tuple[InequalityVerdict, ...]
    overall: Overall

    @classmethod
    def from_verdicts(cls, verdicts: Sequence[InequalityVerdict]) -> "CertificateReport":
        verdicts = tuple(verdicts)
        return cls(verdicts=verdicts, overall=overall_status(verdicts))

    @property
    def violations(self) -> Tuple[InequalityVerdict, ...]:
        return tuple(v for v in self.verdicts if v.status is Status.VIOLATED)

    def verdict(self, id: str) -> InequalityVerdict:
        for v in self.verdicts:
            if v.id == id:
                return v
        raise KeyError(id)


def overall_status(verdicts: Sequence[InequalityVerdict]) -> Overall:
    """
    refuted:               some verdict is violated
    incomplete:            otherwise, some required verdict is unknown
    realizable-consistent: otherwise
    """
    if any(v.status is Status.VIOLATED for v in verdicts):
        return Overall.REFUTED
    if any(v.required and v.status is Status.UNKNOWN for v in verdicts):
        return Overall.INCOMPLETE
    return Overall.REALIZABLE_CONSISTENT
