"""
Integer symplectic linear algebra for fiber homology.

Basis convention: a_1, b_1, ..., a_h, b_h with <a_i, b_i> = +1 and all other
basis pairings zero. A right-handed Dehn twist about a curve of class c acts
on H_1 of the fiber by the transvection

    T_c(x) = x + <x, c> c

Products of matrices are taken left to right in the declared order, and the
commutator of handle monodromies is [A, B] = A B A^-1 B^-1.

All matrices are numpy arrays with dtype=object holding Python ints, so
arithmetic is exact at any size. Fixed-width input is widened on entry and
floats are rejected.

The monodromy check here is the homological shadow of the monodromy
relation: "identity" is a necessary condition for a genuine factorization in
the mapping class group, never a proof of one.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional, Sequence, Tuple

import numpy as np

from .base import (
    DimensionMismatch,
    InvalidCounts,
    MatrixNotSymplectic,
    MissingHomologyData,
    NonPrimitiveCurveClass,
)
from .utils import int_vector, is_primitive, is_zero_vector

if TYPE_CHECKING:
    from .invariants import FibrationDescription

logger = logging.getLogger(__name__)


def as_integer_matrix(data) -> np.ndarray:
    """Copy data into a 2-D object array of Python ints. Rejects floats."""
    raw = np.array(data, dtype=object)
    if raw.ndim != 2:
        raise DimensionMismatch(f"Expected a 2-D integer matrix, got shape {raw.shape}")
    out = np.zeros(raw.shape, dtype=object)
    for idx, value in np.ndenumerate(raw):
        out[idx] = int_vector([value])[0]
    return out


def identity_matrix(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def matrix_key(matrix: np.ndarray) -> Tuple[Tuple[int, ...], ...]:
    """Hashable, comparable form of an integer matrix."""
    return tuple(tuple(int(v) for v in row) for row in matrix)


@dataclass(frozen=True)
class SymplecticLattice:
    """H_1 of a closed genus-h surface with its intersection pairing."""

    h: int

    def __post_init__(self):
        if self.h < 1:
            raise InvalidCounts(f"Fiber genus must be >= 1, got {self.h}")

    @property
    def dimension(self) -> int:
        return 2 * self.h

    @property
    def form(self) -> np.ndarray:
        J = np.zeros((self.dimension, self.dimension), dtype=object)
        for i in range(self.h):
            J[2 * i, 2 * i + 1] = 1
            J[2 * i + 1, 2 * i] = -1
        return J

    def basis_vector(self, index: int) -> Tuple[int, ...]:
        return tuple(1 if j == index else 0 for j in range(self.dimension))

    def _vector(self, x) -> Tuple[int, ...]:
        x = int_vector(x)
        if len(x) != self.dimension:
            raise DimensionMismatch(f"Vector has length {len(x)}, expected {self.dimension}")
        return x

    def pairing(self, x, y) -> int:
        x, y = self._vector(x), self._vector(y)
        return sum(x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i] for i in range(self.h))

    def transvection(self, c) -> np.ndarray:
        """Matrix (acting on column vectors) of x -> x + <x, c> c."""
        c = self._vector(c)
        if not is_zero_vector(c) and not is_primitive(c):
            raise NonPrimitiveCurveClass(f"Curve class {list(c)} is not primitive")
        T = identity_matrix(self.dimension)
        for j in range(self.dimension):
            coefficient = self.pairing(self.basis_vector(j), c)
            if coefficient:
                for i in range(self.dimension):
                    T[i, j] += coefficient * c[i]
        return T

    def _square(self, M) -> np.ndarray:
        M = as_integer_matrix(M)
        if M.shape != (self.dimension, self.dimension):
            raise DimensionMismatch(
                f"Matrix has shape {M.shape}, expected {(self.dimension, self.dimension)}"
            )
        return M

    def is_symplectic(self, M) -> bool:
        M = self._square(M)
        J = self.form
        return np.array_equal(M.T.dot(J).dot(M), J)

    def inverse(self, M) -> np.ndarray:
        """Inverse of a symplectic matrix: M^-1 = -J M^T J."""
        M = self._square(M)
        if not self.is_symplectic(M):
            raise MatrixNotSymplectic("Matrix does not preserve the intersection form")
        J = self.form
        return -J.dot(M.T).dot(J)

    def commutator(self, A, B) -> np.ndarray:
        A, B = self._square(A), self._square(B)
        return A.dot(B).dot(self.inverse(A)).dot(self.inverse(B))


def symplectic_pairing(x: Sequence[int], y: Sequence[int], h: int) -> int:
    return SymplecticLattice(h).pairing(x, y)


def transvection_matrix(c: Sequence[int], h: int) -> np.ndarray:
    return SymplecticLattice(h).transvection(c)


def is_symplectic_matrix(M, h: int) -> bool:
    return SymplecticLattice(h).is_symplectic(M)


# --- monodromy shadow ---

class MonodromyVerdict(str, Enum):
    IDENTITY = "identity"
    NONIDENTITY = "nonidentity"
    INDETERMINATE = "indeterminate"


def _require_curve_classes(fd: "FibrationDescription"):
    for fiber_index, fiber in enumerate(fd.fibers):
        for curve_index, curve in enumerate(fiber.curves):
            if curve.homology is None:
                raise MissingHomologyData(
                    f"Curve {curve_index} has no homology class",
                    fiber_index=fiber_index,
                    path=f"fibers/{fiber_index}/curves/{curve_index}/homology",
                )


def monodromy_product(fd: "FibrationDescription") -> Optional[np.ndarray]:
    """
    The ordered product prod_j [A_j, B_j] * prod_i T_{c_i}, or None when the
    base has positive genus and no handle monodromies are known.
    """
    _require_curve_classes(fd)
    lattice = SymplecticLattice(fd.h)
    product = identity_matrix(lattice.dimension)
    if fd.g >= 1:
        if fd.handle_monodromy is None:
            return None
        handles = [as_integer_matrix(M) for M in fd.handle_monodromy]
        for j, M in enumerate(handles):
            if not lattice.is_symplectic(M):
                raise MatrixNotSymplectic(
                    f"Handle monodromy {j} is not symplectic", path=f"handle_monodromy/{j}"
                )
        for j in range(fd.g):
            product = product.dot(lattice.commutator(handles[2 * j], handles[2 * j + 1]))
    for fiber_index, curve_index in fd.ordered_cycles():
        c = fd.fibers[fiber_index].curves[curve_index].homology
        product = product.dot(lattice.transvection(c))
    return product


def monodromy_shadow_check(fd: "FibrationDescription") -> MonodromyVerdict:
    product = monodromy_product(fd)
    if product is None:
        logger.warning("monodromy check indeterminate: base genus %d without handle matrices", fd.g)
        return MonodromyVerdict.INDETERMINATE
    if np.array_equal(product, identity_matrix(2 * fd.h)):
        return MonodromyVerdict.IDENTITY
    return MonodromyVerdict.NONIDENTITY


# --- Smith normal form ---

def _min_abs_entry(A: np.ndarray, s: int):
    best, where = None, None
    for i in range(s, A.shape[0]):
        for j in range(s, A.shape[1]):
            v = A[i, j]
            if v != 0 and (best is None or abs(v) < best):
                best, where = abs(v), (i, j)
    return where


def smith_normal_form(matrix) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Return (U, S, V) with S = U M V diagonal, d_1 | d_2 | ..., d_i >= 0 and
    U, V unimodular.

    Row/column gcd reduction, always pivoting on the entry of least absolute
    value in the remaining block.
    """
    A = as_integer_matrix(matrix)
    m, n = A.shape
    U, V = identity_matrix(m), identity_matrix(n)

    for s in range(min(m, n)):
        while True:
            pivot = _min_abs_entry(A, s)
            if pivot is None:
                logger.debug("smith form: rank %d of %dx%d", s, m, n)
                return U, A, V
            i, j = pivot
            A[[s, i], :] = A[[i, s], :]
            U[[s, i], :] = U[[i, s], :]
            A[:, [s, j]] = A[:, [j, s]]
            V[:, [s, j]] = V[:, [j, s]]
            p = A[s, s]

            for i in range(s + 1, m):
                q = A[i, s] // p
                if q:
                    A[i, :] -= q * A[s, :]
                    U[i, :] -= q * U[s, :]
            for j in range(s + 1, n):
                q = A[s, j] // p
                if q:
                    A[:, j] -= q * A[:, s]
                    V[:, j] -= q * V[:, s]

            if any(A[i, s] != 0 for i in range(s + 1, m)) or any(
                A[s, j] != 0 for j in range(s + 1, n)
            ):
                continue

            # Pivot must divide the rest of the block.
            offending = next(
                (i for i in range(s + 1, m) for j in range(s + 1, n) if A[i, j] % p != 0),
                None,
            )
            if offending is None:
                break
            A[s, :] += A[offending, :]
            U[s, :] += U[offending, :]

        if A[s, s] < 0:
            A[s, :] *= -1
            U[s, :] *= -1

    return U, A, V


def invariant_factors(matrix) -> Tuple[int, ...]:
    """Nonzero diagonal entries of the Smith normal form, in divisibility order."""
    _, S, _ = smith_normal_form(matrix)
    return tuple(int(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0)


def integer_determinant(matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = as_integer_matrix(matrix)
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionMismatch(f"Determinant needs a square matrix, got {M.shape}")
    if n == 0:
        return 1
    A = [[int(v) for v in row] for row in M]
    sign, previous = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // previous
        previous = A[k][k]
    return sign * A[n - 1][n - 1]


# --- first homology of the total space ---

@dataclass(frozen=True)
class HomologySummary:
    """
    H_1(X) = Z^b1 + torsion. Torsion is reported for completeness; none of
    the certified inequalities use it.
    """

    b1: int
    torsion: Tuple[int, ...] = ()


def relation_matrix(fd: "FibrationDescription") -> np.ndarray:
    """
    Columns: every vanishing-cycle class, then the columns of (phi - I) for
    every handle monodromy phi.
    """
    _require_curve_classes(fd)
    dim = 2 * fd.h
    columns = [c.homology for fiber in fd.fibers for c in fiber.curves]
    if fd.g >= 1:
        if fd.handle_monodromy is None:
            raise MissingHomologyData(
                "Handle monodromy matrices are needed for b1 over a base of positive genus",
                path="handle_monodromy",
            )
        for M in fd.handle_monodromy:
            shifted = as_integer_matrix(M) - identity_matrix(dim)
            columns.extend(tuple(shifted[:, j]) for j in range(dim))
    R = np.zeros((dim, len(columns)), dtype=object)
    for j, column in enumerate(columns):
        for i in range(dim):
            R[i, j] = int(column[i])
    return R


def first_homology(fd: "FibrationDescription") -> HomologySummary:
    factors = invariant_factors(relation_matrix(fd))
    b1 = 2 * fd.g + (2 * fd.h - len(factors))
    return HomologySummary(b1=b1, torsion=tuple(d for d in factors if d > 1))
