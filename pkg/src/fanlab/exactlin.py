"""Exact rational linear algebra over lattices.

Vectors are tuples of ``fractions.Fraction`` (or plain ``int`` where a
lattice vector is meant); matrices are sequences of row vectors.  Nothing
in this module ever touches floating point: every predicate downstream is
a sign or zero test and must be decided exactly.

Subspaces are stored in reduced row echelon form, so two equal subspaces
have identical representations and compare equal structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class ExactLinError(Exception):
    pass


class SingularMatrixError(ExactLinError):
    pass


class DependentVectorsError(ExactLinError):
    pass


class NotExtendableError(ExactLinError):
    """The given lattice vectors do not extend to a basis of Z^d."""


def frac_vec(v):
    """Coerce an iterable to a tuple of Fractions."""
    return tuple(Fraction(x) for x in v)


def dot(u, v):
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(Fraction(a) - Fraction(b) for a, b in zip(u, v))


def vec_scale(c, v):
    c = Fraction(c)
    return tuple(c * a for a in v)


def is_zero_vec(v):
    return all(a == 0 for a in v)


def rref(rows, width=None):
    """Reduced row echelon form of a matrix, dropping zero rows.

    Pivots are scaled to 1 and eliminated above and below, so the result
    is the canonical basis of the row space.
    """
    mat = [list(map(Fraction, r)) for r in rows]
    if width is None:
        if not mat:
            raise ValueError("width required for an empty matrix")
        width = len(mat[0])
    for r in mat:
        if len(r) != width:
            raise ValueError("ragged matrix")
    pivot_row = 0
    for col in range(width):
        sel = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        inv = 1 / mat[pivot_row][col]
        mat[pivot_row] = [x * inv for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:pivot_row])


def rank(rows, width=None):
    """Rank over the rationals."""
    return len(rref(rows, width=width))


def solve_square(rows, rhs):
    """Solve A x = rhs for square nonsingular A given by rows."""
    n = len(rows)
    if n == 0:
        return ()
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    reduced = rref(aug, width=n + 1)
    if len(reduced) != n or any(reduced[i][i] != 1 for i in range(n)):
        raise SingularMatrixError("matrix is singular")
    return tuple(reduced[i][n] for i in range(n))


def invert(rows):
    """Inverse of a square nonsingular matrix, as a tuple of rows."""
    n = len(rows)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    reduced = rref(aug, width=2 * n)
    if len(reduced) != n or any(reduced[i][i] != 1 for i in range(n)):
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(reduced[i][n:]) for i in range(n))


def kernel_basis(rows, width):
    """Canonical basis of the right kernel {x : A x = 0}."""
    reduced = rref(rows, width=width) if rows else ()
    pivots = []
    for r in reduced:
        for j, x in enumerate(r):
            if x != 0:
                pivots.append(j)
                break
    free = [j for j in range(width) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * width
        v[f] = Fraction(1)
        for r, p in zip(reduced, pivots):
            v[p] = -r[f]
        basis.append(tuple(v))
    return tuple(basis)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n, stored as a canonical rref basis."""

    ambient_dim: int
    basis: tuple

    @staticmethod
    def from_vectors(vs, ambient_dim):
        vs = list(vs)
        for v in vs:
            if len(v) != ambient_dim:
                raise ValueError("vector/ambient dimension mismatch")
        rows = rref(vs, width=ambient_dim) if vs else ()
        return Subspace(ambient_dim, rows)

    @staticmethod
    def zero(ambient_dim):
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim):
        eye = tuple(
            tuple(Fraction(int(i == j)) for j in range(ambient_dim))
            for i in range(ambient_dim)
        )
        return Subspace(ambient_dim, eye)

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise ValueError("vector/ambient dimension mismatch")
        if is_zero_vec(v):
            return True
        if not self.basis:
            return False
        return rank(list(self.basis) + [frac_vec(v)], width=self.ambient_dim) == self.dim

    def add(self, other):
        """Sum of subspaces."""
        self._check_ambient(other)
        return Subspace.from_vectors(list(self.basis) + list(other.basis), self.ambient_dim)

    def intersect(self, other):
        """Intersection of subspaces, canonical basis."""
        self._check_ambient(other)
        if self.dim == self.ambient_dim:
            return other
        if other.dim == other.ambient_dim:
            return self
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        # x in both row spaces: x = a.A = b.B, so solve A^T a - B^T b = 0.
        ka, kb = self.dim, other.dim
        rows = []
        for i in range(self.ambient_dim):
            rows.append(tuple(self.basis[j][i] for j in range(ka))
                        + tuple(-other.basis[j][i] for j in range(kb)))
        vectors = []
        for k in kernel_basis(rows, ka + kb):
            v = [Fraction(0)] * self.ambient_dim
            for j in range(ka):
                if k[j] != 0:
                    v = [x + k[j] * y for x, y in zip(v, self.basis[j])]
            vectors.append(tuple(v))
        return Subspace.from_vectors([v for v in vectors if not is_zero_vec(v)],
                                     self.ambient_dim)

    def _check_ambient(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")


def primitive(v):
    """Scale a nonzero rational vector to its primitive integer form.

    The direction is preserved: (2, 4) -> (1, 2) and (-3, 6, -9) -> (-1, 2, -3).
    """
    if all(x == 0 for x in v):
        raise ValueError("zero vector has no primitive form")
    fracs = [Fraction(x) for x in v]
    mult = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * mult) for f in fracs]
    g = gcd(*(abs(x) for x in ints))
    return tuple(x // g for x in ints)


def lattice_basis_extend(vs, dim):
    """Complete integer vectors to a basis of Z^dim, first vectors unchanged.

    Returns ``(basis, duals)`` where ``basis`` is a tuple of dim integer
    rows whose first ``len(vs)`` members are exactly ``vs``, with
    determinant +-1, and ``duals[k]`` is the rational covector pairing to 1
    with ``basis[k]`` and to 0 with the others.  The completion is the
    deterministic Hermite-style column reduction, so repeated calls agree.

    Raises DependentVectorsError for dependent input and NotExtendableError
    when the vectors do not generate a saturated sublattice (e.g. ``(2, 0)``
    in Z^2).
    """
    vs = [tuple(int(x) for x in v) for v in vs]
    p = len(vs)
    for v in vs:
        if len(v) != dim:
            raise ValueError("vector/ambient dimension mismatch")
    if p > dim:
        raise DependentVectorsError("more vectors than the ambient rank")

    work = [list(v) for v in vs]
    # uinv tracks U^{-1} for the accumulated column operations V <- V.U,
    # via the matching row operations on the left.
    uinv = [[int(i == j) for j in range(dim)] for i in range(dim)]

    def col_addmul(dst, src, q):
        for row in work:
            row[dst] -= q * row[src]
        uinv[src] = [a + q * b for a, b in zip(uinv[src], uinv[dst])]

    def col_swap(a, b):
        for row in work:
            row[a], row[b] = row[b], row[a]
        uinv[a], uinv[b] = uinv[b], uinv[a]

    def col_negate(a):
        for row in work:
            row[a] = -row[a]
        uinv[a] = [-x for x in uinv[a]]

    det = 1
    for i in range(p):
        while True:
            nonzero = [j for j in range(i, dim) if work[i][j] != 0]
            if not nonzero:
                raise DependentVectorsError("input vectors are linearly dependent")
            if len(nonzero) == 1:
                j = nonzero[0]
                if j != i:
                    col_swap(i, j)
                break
            piv = min(nonzero, key=lambda j: (abs(work[i][j]), j))
            for j in nonzero:
                if j != piv:
                    q = work[i][j] // work[i][piv]
                    if q:
                        col_addmul(j, piv, q)
        if work[i][i] < 0:
            col_negate(i)
        det *= work[i][i]
    if abs(det) != 1:
        raise NotExtendableError(
            f"vectors generate an index-{abs(det)} sublattice of their saturation")

    basis = [tuple(v) for v in vs] + [tuple(uinv[k]) for k in range(p, dim)]
    duals_cols = invert(basis)
    duals = tuple(tuple(duals_cols[i][k] for i in range(dim)) for k in range(dim))
    return tuple(basis), duals
