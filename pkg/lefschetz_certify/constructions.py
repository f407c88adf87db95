"""
Constructions - building and transforming fibration descriptions.

    parallel_twist_fiber   singular fiber of k parallel copies of one curve
    fiber_sum_trivial_bundle  raise the base genus by gluing in a product
    pullback_cover         unbranched degree-d cover of the base
    catalog / catalog_entry   named seed descriptions
    degenerate_fiber / random_fibration  random semistable (or stable) data

Usage:
    fiber = parallel_twist_fiber(CurveKind.separating(1, 1), k=2, h=2)
    fd = catalog_entry("TWIST_POWER_H2_NONSEP_K5").fibration
    cover = pullback_cover(fd, 3)

All transformations return new, validated descriptions.
"""

import logging
import random
import re
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from .base import (
    BaseSphereNoCover,
    GenusTooSmall,
    InvalidCounts,
    InvalidPartition,
)
from .certifier import minimal_commutator_genus
from .homology import identity_matrix, matrix_key
from .invariants import FibrationDescription, RuledParameters, validate_fibration
from .surface_config import FiberConfiguration, make_fiber, validate_fiber_configuration

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurveKind:
    """Nonseparating curve, or separating curve splitting the fiber into genera g1 + g2."""

    separating_split: Optional[Tuple[int, int]] = None

    @classmethod
    def nonseparating(cls) -> "CurveKind":
        return cls()

    @classmethod
    def separating(cls, g1: int, g2: int) -> "CurveKind":
        return cls((int(g1), int(g2)))

    @property
    def is_separating(self) -> bool:
        return self.separating_split is not None

    @property
    def label(self) -> str:
        if self.separating_split is None:
            return "NONSEP"
        return "SEP{}_{}".format(*self.separating_split)


def parallel_twist_fiber(kind: CurveKind, k: int, h: int) -> FiberConfiguration:
    """
    The fiber left after pulling back a single-twist fiber under z -> z^k
    and resolving: k parallel copies of the curve, with k - 1 annuli between
    them.

    Nonseparating: piece (h-1, 2) and k-1 annuli in a cycle of k curves, every
    curve in class a_1. Separating: pieces (g1, 1) and (g2, 1) at the two ends
    of a chain through k-1 annuli, every curve in class 0.
    """
    if k < 1:
        raise InvalidPartition(f"Need at least one copy of the curve, got k={k}")
    if h < 1:
        raise InvalidPartition(f"Fiber genus must be >= 1, got {h}")

    zero = (0,) * (2 * h)
    if not kind.is_separating:
        a1 = (1,) + (0,) * (2 * h - 1)
        pieces = [(h - 1, 2)] + [(0, 2)] * (k - 1)
        curves = [(i, (i + 1) % k, a1) for i in range(k)]
    else:
        g1, g2 = kind.separating_split
        if g1 < 1 or g2 < 1 or g1 + g2 != h:
            raise InvalidPartition(
                f"Separating split ({g1}, {g2}) must have both genera >= 1 and sum {h}"
            )
        pieces = [(g1, 1)] + [(0, 2)] * (k - 1) + [(g2, 1)]
        curves = [(i, i + 1, zero) for i in range(k)]

    return validate_fiber_configuration(make_fiber(pieces, curves), h)


def _identity_handles(count: int, h: int) -> Tuple:
    return tuple(matrix_key(identity_matrix(2 * h)) for _ in range(count))


def fiber_sum_trivial_bundle(fd: FibrationDescription, extra_base_genus: int = 1) -> FibrationDescription:
    """
    Fiber sum with the product bundle over a closed genus-e surface.

    Counts and fibers are unchanged; the base genus grows by e. Identity
    handle matrices are appended when the old ones are known (a pencil has
    none to know). Signature and rational/ruled flags are cleared.
    """
    if extra_base_genus < 1:
        raise InvalidCounts(f"Extra base genus must be >= 1, got {extra_base_genus}")
    fd = validate_fibration(fd)

    handles = None
    if fd.handle_monodromy is not None or fd.g == 0:
        handles = tuple(fd.handle_monodromy or ()) + _identity_handles(2 * extra_base_genus, fd.h)

    out = replace(
        fd,
        base_genus=fd.g + extra_base_genus,
        handle_monodromy=handles,
        signature=None,
        asserts_not_rational_or_ruled=False,
        ruled_params=None,
    )
    return validate_fibration(out)


def pullback_cover(fd: FibrationDescription, d: int) -> FibrationDescription:
    """
    Pull back along an unbranched degree-d cover of the base.

    g' = d(g - 1) + 1, each singular fiber appears d times. Handle matrices
    are dropped for d > 1; the signature scales by d.
    """
    if d < 1:
        raise InvalidCounts(f"Cover degree must be >= 1, got {d}")
    fd = validate_fibration(fd)
    if d == 1:
        return fd
    if fd.g == 0:
        raise BaseSphereNoCover(f"The sphere has no connected unbranched cover of degree {d}")

    D = len(fd.fibers)
    cycle_order = None
    if fd.cycle_order is not None:
        cycle_order = tuple(
            (f + copy * D, c) for copy in range(d) for f, c in fd.cycle_order
        )
    out = replace(
        fd,
        base_genus=d * (fd.g - 1) + 1,
        fibers=fd.fibers * d,
        cycle_order=cycle_order,
        handle_monodromy=None,
        signature=None if fd.signature is None else d * fd.signature,
        asserts_not_rational_or_ruled=False,
        ruled_params=None,
    )
    logger.debug("pullback of degree %d: base genus %d -> %d", d, fd.g, out.g)
    return validate_fibration(out)


# --- catalog ---

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    fibration: FibrationDescription
    provenance: str


def elliptic_12() -> FibrationDescription:
    a, b = (1, 0), (0, 1)
    fibers = [make_fiber([(0, 2)], [(0, 0, a if i % 2 == 0 else b)]) for i in range(12)]
    return validate_fibration(FibrationDescription(
        fiber_genus=1,
        base_genus=0,
        fibers=fibers,
        signature=-8,
        ruled_params=RuledParameters(a=0, b=8),
    ))


def twist_power(h: int, kind: CurveKind, k: int, pencil: bool = False) -> FibrationDescription:
    """
    One fiber of k parallel twists, closed up over the smallest base genus
    the commutator bound does not exclude (or over the sphere when pencil).
    The base genus is a lower bound, not a claim of realizability.
    """
    fiber = parallel_twist_fiber(kind, k, h)
    g = 0 if pencil else minimal_commutator_genus(h, k)
    return validate_fibration(FibrationDescription(fiber_genus=h, base_genus=g, fibers=(fiber,)))


def trivial_bundle(g: int, h: int) -> FibrationDescription:
    if g < 1:
        raise InvalidCounts(
            f"The catalog only builds product bundles over base genus >= 1, got {g}; "
            "a pencil without singular fibers is rejected by certify"
        )
    return validate_fibration(FibrationDescription(
        fiber_genus=h,
        base_genus=g,
        handle_monodromy=_identity_handles(2 * g, h),
        signature=0,
    ))


def _twist_entry(h: int, kind: CurveKind, k: int) -> CatalogEntry:
    fd = twist_power(h, kind, k)
    return CatalogEntry(
        name=f"TWIST_POWER_H{h}_{kind.label}_K{k}",
        description=(
            f"{k} parallel twists about a {'separating' if kind.is_separating else 'nonseparating'} "
            f"curve on genus {h}, closed up over base genus {fd.g}"
        ),
        fibration=fd,
        provenance=(
            "base change z -> z^k of a single-twist fiber; base genus is the smallest "
            "not excluded by the commutator-length bound"
        ),
    )


def catalog() -> List[CatalogEntry]:
    """Fixed seed entries. catalog_entry() also builds other members of each family."""
    entries = [
        CatalogEntry(
            name="ELLIPTIC_12",
            description="rational elliptic surface E(1) over the sphere, monodromy (t_a t_b)^6",
            fibration=elliptic_12(),
            provenance="classical: CP2 blown up in nine points; sigma = -8, ruled as (0, 8)",
        ),
        _twist_entry(2, CurveKind.nonseparating(), 5),
        _twist_entry(2, CurveKind.separating(1, 1), 5),
        _twist_entry(3, CurveKind.nonseparating(), 49),
    ]
    for g, h in ((1, 1), (2, 1), (2, 2)):
        entries.append(CatalogEntry(
            name=f"TRIVIAL_BUNDLE_G{g}_H{h}",
            description=f"product of genus {g} and genus {h} surfaces, no singular fibers",
            fibration=trivial_bundle(g, h),
            provenance="product bundle",
        ))
    return entries


_TWIST_NAME = re.compile(r"TWIST_POWER_H(\d+)_(NONSEP|SEP(\d+)_(\d+))_K(\d+)")
_TRIVIAL_NAME = re.compile(r"TRIVIAL_BUNDLE_G(\d+)_H(\d+)")


def catalog_entry(name: str) -> CatalogEntry:
    """Look up an entry by canonical name; family names are built on demand."""
    for entry in catalog():
        if entry.name == name:
            return entry
    match = _TWIST_NAME.fullmatch(name)
    if match:
        h, k = int(match.group(1)), int(match.group(5))
        kind = (
            CurveKind.nonseparating()
            if match.group(2) == "NONSEP"
            else CurveKind.separating(int(match.group(3)), int(match.group(4)))
        )
        return _twist_entry(h, kind, k)
    match = _TRIVIAL_NAME.fullmatch(name)
    if match:
        g, h = int(match.group(1)), int(match.group(2))
        return CatalogEntry(
            name=name,
            description=f"product of genus {g} and genus {h} surfaces, no singular fibers",
            fibration=trivial_bundle(g, h),
            provenance="product bundle",
        )
    raise KeyError(f"No catalog entry named {name!r}")


# --- random degenerations ---

def _admissible(genus: int, boundary: int, stable: bool) -> bool:
    if boundary < 1:
        return False
    return genus > 0 or boundary >= (3 if stable else 2)


def _moves(pieces: List[List[int]], stable: bool) -> List[Tuple]:
    moves = []
    for p, (genus, boundary) in enumerate(pieces):
        if genus >= 1 and _admissible(genus - 1, boundary + 2, stable):
            moves.append(("cut", p))
        for g1 in range(genus + 1):
            for b1 in range(boundary + 1):
                if _admissible(g1, b1 + 1, stable) and _admissible(genus - g1, boundary - b1 + 1, stable):
                    moves.append(("split", p, g1, b1))
    return moves


def degenerate_fiber(h: int, rng: random.Random, max_curves: int = 6,
                     stable: bool = False) -> FiberConfiguration:
    """
    A random singular fiber on a genus-h surface.

    Starts from the smooth fiber and pinches curves one at a time: either a
    curve nonseparating in its piece (genus drops, two new boundary circles)
    or one splitting the piece in two, handing the existing boundary circles
    to either side. Every intermediate piece obeys the semistable (or
    stable) rule, so the result does too.
    """
    if h < 1:
        raise InvalidCounts(f"Fiber genus must be >= 1, got {h}")
    if stable and h < 2:
        raise GenusTooSmall("Stable singular fibers need fiber genus >= 2")
    if max_curves < 1:
        raise InvalidCounts(f"max_curves must be >= 1, got {max_curves}")

    # boundary counts start at 0; the first move always adds a curve
    pieces: List[List[int]] = [[h, 0]]
    curves: List[List[int]] = []
    target = rng.randint(1, max_curves)

    while len(curves) < target:
        moves = _moves(pieces, stable)
        if not moves:
            break
        move = rng.choice(moves)
        if move[0] == "cut":
            p = move[1]
            pieces[p] = [pieces[p][0] - 1, pieces[p][1] + 2]
            curves.append([p, p])
            continue

        _, p, g1, b1 = move
        genus, boundary = pieces[p]
        q = len(pieces)
        slots = [(i, side) for i, c in enumerate(curves) for side in (0, 1) if c[side] == p]
        for i, side in rng.sample(slots, boundary - b1):
            curves[i][side] = q
        pieces[p] = [g1, b1 + 1]
        pieces.append([genus - g1, boundary - b1 + 1])
        curves.append([p, q])

    cfg = make_fiber([tuple(p) for p in pieces], [tuple(c) for c in curves])
    return validate_fiber_configuration(cfg, h)


def random_fibration(rng: random.Random, h: int, g: int = 0, max_fibers: int = 6,
                     max_curves: int = 6, stable: bool = False) -> FibrationDescription:
    """Random description with 1..max_fibers singular fibers from degenerate_fiber."""
    D = rng.randint(1, max_fibers)
    fibers = [degenerate_fiber(h, rng, max_curves, stable) for _ in range(D)]
    return validate_fibration(FibrationDescription(fiber_genus=h, base_genus=g, fibers=fibers))
