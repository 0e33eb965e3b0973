"""Exact integer and rational linear algebra.

Everything in this package that looks like a number is an exact integer or a
``fractions.Fraction``; no floating point exists anywhere.  Matrices are tiny
(a few hundred rows at the very worst), so the implementations favour clarity
over asymptotics: Smith normal form by elementary operations with a minimal
absolute value pivot, and plain fraction-free-ish Gauss elimination over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Optional, Sequence

Rat = Fraction


def _as_int_rows(entries: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in row) for row in entries)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def _as_rat_rows(entries: Iterable[Iterable[Rat | int]]) -> tuple[tuple[Rat, ...], ...]:
    rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


@dataclass(frozen=True)
class IntMatrix:
    """Dense matrix over Z."""

    entries: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return IntMatrix(_as_int_rows(rows))

    @staticmethod
    def from_columns(cols: Iterable[Iterable[int]]) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        if not cols:
            return IntMatrix(())
        if any(len(c) != len(cols[0]) for c in cols):
            raise ValueError("columns of unequal length")
        return IntMatrix(tuple(zip(*cols)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0


@dataclass(frozen=True)
class RatMatrix:
    """Dense matrix over Q with reduced fractions (Fraction keeps them reduced)."""

    entries: tuple[tuple[Rat, ...], ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable[Rat | int]]) -> "RatMatrix":
        return RatMatrix(_as_rat_rows(rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0


@dataclass(frozen=True)
class SmithForm:
    """Nonzero invariant factors in divisibility order; rank = their count."""

    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def __post_init__(self) -> None:
        facs = self.invariant_factors
        if any(f <= 0 for f in facs):
            raise ValueError("invariant factors must be positive")
        for a, b in zip(facs, facs[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must divide in order")


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Diagonalize by elementary row/column operations over Z.

    Pivot selection: the nonzero entry of minimal absolute value in the
    remaining block.  After diagonalization the divisibility chain is repaired
    with gcd/lcm passes.
    """
    a = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    diag: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        pivot = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = abs(a[i][j])
                if v != 0 and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        # Clear the row and column of the pivot; reselecting a smaller pivot
        # whenever a reduction leaves a nonzero remainder.
        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    for j in range(t, ncols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    for i in range(t, nrows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j] != 0:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if not dirty:
                break
        diag.append(abs(a[t][t]))
        t += 1
    diag = [d for d in diag if d != 0]
    # Repair divisibility: replace (d_i, d_j) by (gcd, lcm).
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            if diag[j] % diag[i] != 0:
                g = gcd(diag[i], diag[j])
                diag[i], diag[j] = g, diag[i] * diag[j] // g
    return SmithForm(tuple(sorted(diag)))


def minors_gcd(m: IntMatrix, size: int) -> int:
    """gcd of all size x size minors (brute force; oracle for tests)."""
    if size == 0:
        return 1
    g = 0
    for rows in combinations(range(m.rows), size):
        for cols in combinations(range(m.cols), size):
            sub = [[m.entries[i][j] for j in cols] for i in rows]
            g = gcd(g, _int_det(sub))
    return abs(g)


def _int_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        total += (-1) ** j * a[0][j] * _int_det(minor)
    return total


def is_direct_summand(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the span of the given Z^n columns is a full-rank direct summand.

    Equivalently the n x k matrix of the vectors has Smith form with k
    invariant factors, all equal to 1.
    """
    vecs = [tuple(int(x) for x in v) for v in vectors]
    if not vecs:
        return True
    n = len(vecs[0])
    if any(len(v) != n for v in vecs):
        raise ValueError("vectors of unequal length")
    if len(vecs) > n:
        return False
    sf = smith_normal_form(IntMatrix.from_columns(vecs))
    return sf.rank == len(vecs) and all(f == 1 for f in sf.invariant_factors)


# ---------------------------------------------------------------------------
# Rational elimination


def rref(rows: Sequence[Sequence[Rat | int]]) -> tuple[list[list[Rat]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    a = [list(map(Fraction, row)) for row in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return [row for row in a if any(x != 0 for x in row)], pivots


def rank_and_kernel(m: RatMatrix) -> tuple[int, list[tuple[Rat, ...]]]:
    """Exact rank and a basis of the null space (rref-canonical basis)."""
    red, pivots = rref(m.entries)
    ncols = m.cols
    rank = len(pivots)
    free = [c for c in range(ncols) if c not in pivots]
    kernel: list[tuple[Rat, ...]] = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        kernel.append(tuple(v))
    return rank, kernel


def matrix_rank(rows: Sequence[Sequence[Rat | int]]) -> int:
    return len(rref(rows)[1])


class LinearSolver:
    """Expresses vectors in terms of a fixed spanning list, exactly.

    Keeps the rref of ``[v_i | e_i]`` so membership tests and coordinates with
    respect to the original (possibly dependent) list come out of one
    elimination.  Supports incremental extension, which the ideal-closure
    fixpoint uses heavily.
    """

    def __init__(self, dim: int, vectors: Iterable[Sequence[Rat | int]] = ()):
        self.dim = dim
        self.count = 0
        self._rows: list[list[Rat]] = []  # augmented rows, length dim + count
        self._pivots: list[int] = []  # pivot col per row, all < dim
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, row: list[Rat]) -> list[Rat]:
        for r, p in zip(self._rows, self._pivots):
            if row[p] != 0:
                f = row[p]
                for j in range(len(r)):
                    row[j] -= f * r[j]
        return row

    def add(self, vector: Sequence[Rat | int]) -> bool:
        """Add a vector to the list; True if it enlarged the span."""
        if len(vector) != self.dim:
            raise ValueError("dimension mismatch")
        row = [Fraction(x) for x in vector]
        row.extend(Fraction(0) for _ in range(self.count))
        for r in self._rows:
            r.append(Fraction(0))
        row.append(Fraction(1))
        self.count += 1
        self._reduce(row)
        pivot = next((j for j in range(self.dim) if row[j] != 0), None)
        if pivot is None:
            return False
        inv = row[pivot]
        row = [x / inv for x in row]
        for r in self._rows:
            if r[pivot] != 0:
                f = r[pivot]
                for j in range(len(row)):
                    r[j] -= f * row[j]
        self._rows.append(row)
        self._pivots.append(pivot)
        order = sorted(range(len(self._rows)), key=lambda i: self._pivots[i])
        self._rows = [self._rows[i] for i in order]
        self._pivots = [self._pivots[i] for i in order]
        return True

    def contains(self, vector: Sequence[Rat | int]) -> bool:
        return self.coordinates(vector) is not None

    def coordinates(self, vector: Sequence[Rat | int]) -> Optional[list[Rat]]:
        """Coefficients over the added vectors, or None if outside the span."""
        if len(vector) != self.dim:
            raise ValueError("dimension mismatch")
        row = [Fraction(x) for x in vector]
        row.extend(Fraction(0) for _ in range(self.count))
        self._reduce(row)
        if any(row[j] != 0 for j in range(self.dim)):
            return None
        return [-row[self.dim + i] for i in range(self.count)]

    def basis_pivots(self) -> list[int]:
        """Pivot coordinates of the span, in increasing order."""
        return list(self._pivots)
