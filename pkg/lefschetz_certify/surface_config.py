"""
Singular fibers as cut surfaces.

A singular fiber is encoded by cutting the generic genus-h fiber along its
(disjoint) vanishing cycles. Each connected piece of the cut surface is one
irreducible component of the nodal fiber; each vanishing cycle glues two
boundary circles back together and becomes an edge of the piece/curve
incidence multigraph (a self-loop when both sides lie on the same piece).

Usage:
    cfg = make_fiber([(1, 1), (1, 1)], [(0, 1)])
    cfg = validate_fiber_configuration(cfg, h=2)
    cfg.curves[0].separating          # True
    fiber_euler_characteristic(cfg, 2)  # -1
"""

import logging
from collections import Counter
from dataclasses import dataclass, replace
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

import networkx as nx

from .base import (
    BoundaryMismatch,
    DimensionMismatch,
    Disconnected,
    EmptyCurveSet,
    EulerMismatch,
    HomologyInconsistent,
    IndexOutOfRange,
    InvalidCounts,
    InvalidPiece,
    NonPrimitiveCurveClass,
)
from .utils import int_vector, is_primitive, is_zero_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Piece:
    """One irreducible component: a compact surface of given genus with boundary circles."""

    genus: int
    boundary_count: int

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidPiece(f"Piece genus must be >= 0, got {self.genus}")
        if self.boundary_count < 1:
            raise InvalidPiece(
                f"Piece must have at least one boundary circle, got {self.boundary_count}"
            )

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_count


@dataclass(frozen=True)
class Curve:
    """
    A vanishing cycle as an edge between the pieces on its two sides.

    ends are stored sorted. separating is None until the configuration has
    been validated.
    """

    ends: Tuple[int, int]
    homology: Optional[Tuple[int, ...]] = None
    separating: Optional[bool] = None

    def __post_init__(self):
        u, v = self.ends
        object.__setattr__(self, "ends", (min(u, v), max(u, v)))
        if self.homology is not None:
            object.__setattr__(self, "homology", int_vector(self.homology))

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class FiberConfiguration:
    pieces: Tuple[Piece, ...]
    curves: Tuple[Curve, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "curves", tuple(self.curves))

    @property
    def curve_count(self) -> int:
        return len(self.curves)

    @property
    def is_validated(self) -> bool:
        return all(c.separating is not None for c in self.curves)

    @property
    def separating_count(self) -> int:
        return sum(1 for c in self.curves if c.separating)

    @property
    def nonseparating_count(self) -> int:
        return self.curve_count - self.separating_count

    @property
    def has_homology(self) -> bool:
        """True iff every curve carries a homology class."""
        return all(c.homology is not None for c in self.curves)


def make_fiber(pieces: Iterable, curves: Iterable) -> FiberConfiguration:
    """
    Build an (unvalidated) configuration from plain tuples.

    Args:
        pieces: (genus, boundary_count) pairs
        curves: (u, v) or (u, v, homology) tuples of piece indices
    """
    built = []
    for c in curves:
        c = tuple(c)
        homology = c[2] if len(c) > 2 else None
        built.append(Curve(ends=(c[0], c[1]), homology=homology))
    return FiberConfiguration(
        pieces=tuple(Piece(int(g), int(b)) for g, b in pieces),
        curves=tuple(built),
    )


def incidence_graph(cfg: FiberConfiguration) -> nx.MultiGraph:
    """Pieces as nodes, one keyed edge per curve (key = curve index)."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(len(cfg.pieces)))
    for i, curve in enumerate(cfg.curves):
        graph.add_edge(*curve.ends, key=i)
    return graph


def _bridge_curves(cfg: FiberConfiguration) -> FrozenSet[int]:
    # Bridges of the underlying simple graph; a parallel class of size > 1 is never a bridge.
    simple = nx.Graph()
    simple.add_nodes_from(range(len(cfg.pieces)))
    multiplicity = Counter()
    for curve in cfg.curves:
        if curve.is_loop:
            continue
        multiplicity[curve.ends] += 1
        simple.add_edge(*curve.ends)
    bridges = {tuple(sorted(edge)) for edge in nx.bridges(simple)}
    return frozenset(
        i
        for i, curve in enumerate(cfg.curves)
        if not curve.is_loop and curve.ends in bridges and multiplicity[curve.ends] == 1
    )


def _check_curve_ends(cfg: FiberConfiguration):
    for i, curve in enumerate(cfg.curves):
        for end in curve.ends:
            if not 0 <= end < len(cfg.pieces):
                raise IndexOutOfRange(
                    f"Curve {i} refers to piece {end}, but there are {len(cfg.pieces)} pieces",
                    path=f"curves/{i}",
                )


def validate_fiber_configuration(cfg: FiberConfiguration, h: int) -> FiberConfiguration:
    """
    Check the topological consistency of a singular fiber on a genus-h surface
    and return a copy with the per-curve separating flags filled in.

    Raises EmptyCurveSet, IndexOutOfRange, BoundaryMismatch, EulerMismatch,
    Disconnected, DimensionMismatch, NonPrimitiveCurveClass or
    HomologyInconsistent.
    """
    if h < 1:
        raise InvalidCounts(f"Fiber genus must be >= 1, got {h}")
    m = cfg.curve_count
    if m == 0:
        raise EmptyCurveSet("A singular fiber needs at least one vanishing cycle")
    _check_curve_ends(cfg)

    boundary_total = sum(p.boundary_count for p in cfg.pieces)
    if boundary_total != 2 * m:
        raise BoundaryMismatch(
            f"Pieces have {boundary_total} boundary circles but {m} curves need {2 * m}"
        )
    # a self-loop uses two boundary circles of its piece
    degrees = incidence_graph(cfg).degree
    for j, p in enumerate(cfg.pieces):
        if p.boundary_count != degrees[j]:
            raise BoundaryMismatch(
                f"Piece {j} has {p.boundary_count} boundary circles but {degrees[j]} curve ends",
                path=f"pieces/{j}",
            )

    chi = sum(p.euler_characteristic for p in cfg.pieces)
    if chi != 2 - 2 * h:
        raise EulerMismatch(
            f"Cut surface has Euler characteristic {chi}, expected {2 - 2 * h} for genus {h}"
        )

    if not nx.is_connected(incidence_graph(cfg)):
        raise Disconnected("Piece/curve incidence graph is not connected")

    bridges = _bridge_curves(cfg)
    curves = []
    for i, curve in enumerate(cfg.curves):
        separating = i in bridges
        if curve.homology is not None:
            _check_curve_homology(curve.homology, separating, h, i)
        curves.append(replace(curve, separating=separating))

    logger.debug(
        "validated fiber: %d pieces, %d curves, %d separating",
        len(cfg.pieces), m, len(bridges),
    )
    return FiberConfiguration(pieces=cfg.pieces, curves=tuple(curves))


def _check_curve_homology(vector: Sequence[int], separating: bool, h: int, index: int):
    path = f"curves/{index}/homology"
    if len(vector) != 2 * h:
        raise DimensionMismatch(
            f"Homology class has length {len(vector)}, expected {2 * h}", path=path
        )
    zero = is_zero_vector(vector)
    if separating and not zero:
        raise HomologyInconsistent(
            f"Curve {index} is separating but has nonzero class {list(vector)}", path=path
        )
    if not separating and zero:
        raise HomologyInconsistent(
            f"Curve {index} is nonseparating but has zero class", path=path
        )
    if not zero and not is_primitive(vector):
        raise NonPrimitiveCurveClass(
            f"Curve {index} has non-primitive class {list(vector)}", path=path
        )


def is_separating_curve(cfg: FiberConfiguration, index: int) -> bool:
    """True iff deleting the curve disconnects the incidence multigraph."""
    if not 0 <= index < cfg.curve_count:
        raise IndexOutOfRange(f"Curve index {index} out of range 0..{cfg.curve_count - 1}")
    if cfg.curves[index].is_loop:
        return False
    return index in _bridge_curves(cfg)


def fiber_component_count(cfg: FiberConfiguration) -> int:
    return len(cfg.pieces)


def check_semistable(cfg: FiberConfiguration) -> bool:
    """Every sphere component carries at least two nodes."""
    return all(p.boundary_count >= 2 for p in cfg.pieces if p.genus == 0)


def check_stable(cfg: FiberConfiguration) -> bool:
    """Every sphere component carries at least three nodes."""
    return all(p.boundary_count >= 3 for p in cfg.pieces if p.genus == 0)


def fiber_euler_characteristic(cfg: FiberConfiguration, h: int) -> int:
    """
    Euler characteristic of the nodal fiber: the closed-up pieces minus one
    point per node. Equals (2 - 2h) + m for a valid configuration.
    """
    return sum(2 - 2 * p.genus for p in cfg.pieces) - cfg.curve_count
