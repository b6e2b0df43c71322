"""Exact rational linear algebra on plain nested tuples of ``Fraction``.

Matrices are immutable tuples of row tuples.  Everything here is exact; the
floating-point estimation paths live in :mod:`dyndeg.spectral`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ShapeMismatch

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def as_fraction(x) -> Fraction:
    """Coerce ints, strings like ``"3/2"``, and Fractions to ``Fraction``.

    Floats are rejected: the exact layer never silently absorbs rounding.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ShapeMismatch(f"boolean is not a rational scalar: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, dict) and set(x) == {"num", "den"}:
        return Fraction(int(x["num"]), int(x["den"]))
    raise ShapeMismatch(f"not an exact rational scalar: {x!r}")


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    mat = tuple(tuple(as_fraction(x) for x in row) for row in rows)
    if mat and any(len(row) != len(mat[0]) for row in mat):
        raise ShapeMismatch("ragged matrix rows")
    return mat


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def mat_vec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    if m and len(m[0]) != len(v):
        raise ShapeMismatch(f"matrix is {len(m)}x{len(m[0])}, vector has {len(v)}")
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ShapeMismatch("inner dimensions differ")
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum(arow[k] * b[k][j] for k in range(len(b))) for j in range(cols))
        for arow in a
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def transpose(a: Matrix) -> Matrix:
    if not a:
        return ()
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


class PowerLadder:
    """Cache of matrix powers backed by repeated squaring.

    ``power(m)`` assembles ``M^m`` from the stored squarings; assembled powers
    are memoised, so sweeping m = 1, 2, 3, ... costs one multiplication each.
    """

    def __init__(self, m: Matrix):
        n = len(m)
        if any(len(row) != n for row in m):
            raise ShapeMismatch("power ladder needs a square matrix")
        self._squarings = [m]
        self._memo = {0: identity(n), 1: m}

    def power(self, m: int) -> Matrix:
        if m < 0:
            raise ShapeMismatch("negative matrix power")
        got = self._memo.get(m)
        if got is not None:
            return got
        while (1 << len(self._squarings)) <= m:
            top = self._squarings[-1]
            self._squarings.append(mat_mul(top, top))
        if m & (m - 1) == 0:
            result = self._squarings[m.bit_length() - 1]
        else:
            low = 1 << (m.bit_length() - 1)
            result = mat_mul(self.power(m - low), self._squarings[m.bit_length() - 1])
        self._memo[m] = result
        return result

    def prune(self, keep: int):
        """Drop assembled powers other than ``keep``; squarings stay cached.

        Long consecutive sweeps (trace sequences) only ever reuse the previous
        power, and exact entries grow with m, so unbounded memoisation would
        hold onto arbitrarily large integers for no benefit.
        """
        self._memo = {
            m: mat for m, mat in self._memo.items()
            if m <= 1 or m == keep or m & (m - 1) == 0
        }


def mat_pow(m: Matrix, k: int) -> Matrix:
    return PowerLadder(m).power(k)


def det(a: Matrix) -> Fraction:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in a):
        raise ShapeMismatch("determinant of a non-square matrix")
    m = [list(row) for row in a]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(a: Matrix) -> Matrix | None:
    """Exact inverse by Gauss-Jordan; ``None`` when singular."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ShapeMismatch("inverse of a non-square matrix")
    m = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return tuple(tuple(row[n:]) for row in m)


class Echelon:
    """Incrementally maintained reduced row echelon form with provenance.

    Each inserted vector carries an opaque ``tag`` combo (mapping generator
    index -> coefficient).  Row operations update the combos, so a surviving
    row always knows the exact linear combination of inserted generators that
    produced it.  The row set is kept fully reduced and sorted by pivot, which
    makes the basis the canonical RREF of the spanned subspace regardless of
    insertion order.
    """

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []
        self.combos: list[dict[int, Fraction]] = []

    def _reduce(self, vec, combo):
        for row, piv, rcombo in zip(self.rows, self.pivots, self.combos):
            c = vec[piv]
            if c != 0:
                for j in range(piv, self.width):
                    vec[j] -= c * row[j]
                for g, coeff in rcombo.items():
                    combo[g] = combo.get(g, Fraction(0)) - c * coeff
        return vec, combo

    def contains(self, vector: Sequence[Fraction]) -> bool:
        vec, _ = self._reduce(list(vector), {})
        return all(x == 0 for x in vec)

    def insert(self, vector: Sequence[Fraction], combo: dict[int, Fraction]) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        if len(vector) != self.width:
            raise ShapeMismatch("echelon width mismatch")
        vec, combo = self._reduce(list(vector), dict(combo))
        pivot = next((j for j, x in enumerate(vec) if x != 0), None)
        if pivot is None:
            return False
        lead = vec[pivot]
        vec = [x / lead for x in vec]
        combo = {g: c / lead for g, c in combo.items() if c != 0}
        # back-substitute into existing rows to stay fully reduced
        for i, row in enumerate(self.rows):
            c = row[pivot]
            if c != 0:
                self.rows[i] = [x - c * y for x, y in zip(row, vec)]
                rc = self.combos[i]
                for g, coeff in combo.items():
                    rc[g] = rc.get(g, Fraction(0)) - c * coeff
                self.combos[i] = {g: v for g, v in rc.items() if v != 0}
        at = next((i for i, p in enumerate(self.pivots) if p > pivot),
                  len(self.pivots))
        self.rows.insert(at, vec)
        self.pivots.insert(at, pivot)
        self.combos.insert(at, combo)
        return True

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def basis(self) -> list[tuple[Fraction, ...]]:
        return [tuple(row) for row in self.rows]

    def coordinates(self, vector: Sequence[Fraction]) -> list[Fraction] | None:
        """Coordinates of ``vector`` in the echelon basis, or None if outside."""
        vec = list(vector)
        coords = [Fraction(0)] * len(self.rows)
        for i, (row, piv) in enumerate(zip(self.rows, self.pivots)):
            c = vec[piv]
            if c != 0:
                coords[i] = c
                for j in range(piv, self.width):
                    vec[j] -= c * row[j]
        if any(x != 0 for x in vec):
            return None
        return coords
