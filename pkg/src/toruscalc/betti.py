"""Graded Betti vectors of torus orbit complements and sphere sums.

Three independent routes to the homology of the equivariant double sphere
glued along a k-dimensional orbit:

* ``conn_sum_betti_closed``: the tabulated closed form, transcribed case by
  case (including its n=2 row, recorded verbatim even where it disagrees with
  the oracles; see ``KNOWN_DISCREPANCIES`` in :mod:`toruscalc.verify`).
* ``conn_sum_betti_mv``: a Mayer-Vietoris assembly from a contractible piece,
  a (2n-1)-sphere intersection, and the wedge ``suspended torus v orbit
  complement``, with the top connecting map zero by orientability.
* the zero-differential model of :mod:`toruscalc.cdga.models`, whose degree
  census is checked against both elsewhere.

Orbit complements themselves come in two flavours: the closed-form wedge of
spheres and a homotopy push-out recursion; they must agree (Pascal's rule).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping


def _normalized(ranks: Mapping[int, int]) -> tuple[tuple[int, int], ...]:
    items = tuple(sorted((d, r) for d, r in ranks.items() if r != 0))
    if any(d < 0 or r < 0 for d, r in items):
        raise ValueError("degrees and ranks must be nonnegative")
    return items


@dataclass(frozen=True)
class BettiVector:
    """Map degree -> rank, zero outside [0, top_degree]."""

    items: tuple[tuple[int, int], ...]
    top_degree: int

    @staticmethod
    def from_ranks(ranks: Mapping[int, int], top_degree: int) -> "BettiVector":
        items = _normalized(ranks)
        if items and items[-1][0] > top_degree:
            raise ValueError("rank above top degree")
        return BettiVector(items, top_degree)

    @staticmethod
    def from_list(ranks: list[int]) -> "BettiVector":
        return BettiVector.from_ranks(dict(enumerate(ranks)), len(ranks) - 1)

    def rank(self, degree: int) -> int:
        return dict(self.items).get(degree, 0)

    def as_list(self) -> list[int]:
        return [self.rank(d) for d in range(self.top_degree + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * r for d, r in self.items)

    def is_poincare_symmetric(self, dim: int | None = None) -> bool:
        n = self.top_degree if dim is None else dim
        return all(self.rank(d) == self.rank(n - d) for d in range(n + 1))


def euler_characteristic(b: BettiVector) -> int:
    return b.euler_characteristic()


def poincare_symmetric(b: BettiVector, dim: int) -> bool:
    return b.is_poincare_symmetric(dim)


@dataclass(frozen=True)
class WedgeDecomposition:
    """Multiset of spheres (dimension, multiplicity), dimensions >= 1."""

    summands: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if any(d < 1 or m < 1 for d, m in self.summands):
            raise ValueError("sphere dimensions and multiplicities must be >= 1")

    def betti(self) -> BettiVector:
        ranks: dict[int, int] = {0: 1}
        for d, m in self.summands:
            ranks[d] = ranks.get(d, 0) + m
        top = max(d for d, _ in self.summands) if self.summands else 0
        return BettiVector.from_ranks(ranks, top)

    def reduced_ranks(self) -> dict[int, int]:
        ranks: dict[int, int] = {}
        for d, m in self.summands:
            ranks[d] = ranks.get(d, 0) + m
        return ranks


def torus_betti(k: int) -> BettiVector:
    """Betti vector of the k-torus: C(k, i) in degree i."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return BettiVector.from_ranks({i: comb(k, i) for i in range(k + 1)}, k)


def orbit_complement_wedge(n: int, orbit_dim: int) -> WedgeDecomposition:
    """Sphere wedge homotopy type of the 2n-sphere minus a j-orbit.

    The complement deformation-retracts onto a union of faces' preimages;
    inductively it is a wedge of C(j, i) spheres of dimension 2n-1-i for
    i = 1..j.
    """
    if not 1 <= orbit_dim <= n:
        raise ValueError("orbit dimension out of range")
    j = orbit_dim
    summands = tuple((2 * n - 1 - i, comb(j, i)) for i in range(1, j + 1))
    return WedgeDecomposition(summands)


def _shift(ranks: Mapping[int, int], by: int) -> dict[int, int]:
    return {d + by: r for d, r in ranks.items()}


def _add(*many: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for ranks in many:
        for d, r in ranks.items():
            out[d] = out.get(d, 0) + r
    return {d: r for d, r in out.items() if r}


def _reduced_recursive(n: int, k: int) -> dict[int, int]:
    if not 1 <= k <= n:
        raise ValueError("indices out of range")
    if k == n:
        return {2 * n - 2: 1}
    # Push-out with both legs null homotopic: the next space down the lattice
    # splits as wedge of the previous one, a suspension of the smaller-sphere
    # complement, and one (2n-2)-sphere.
    return _add(
        _reduced_recursive(n, k + 1),
        _shift(_reduced_recursive(n - 1, k), 1),
        {2 * n - 2: 1},
    )


def orbit_complement_recursive(n: int, k: int) -> BettiVector:
    """Reduced-homology recursion for the orbit-complement filtration.

    Independent oracle for :func:`orbit_complement_wedge` at matching indices
    (lattice index k corresponds to orbit dimension n - k + 1).
    """
    ranks = _add({0: 1}, _reduced_recursive(n, k))
    return BettiVector.from_ranks(ranks, max(ranks))


def conn_sum_betti_closed(n: int, k: int) -> BettiVector:
    """Tabulated closed form for the glued double sphere, verbatim."""
    if n < 2 or not 1 <= k <= n:
        raise ValueError("(n, k) out of range")
    if n == 2:
        ranks = {0: 1, 1: k - 1, 2: 2, 3: k - 1, 4: 1}
        return BettiVector.from_ranks(ranks, 4)
    kp = min(k, n - 3)
    q = 1 if k == n else 0
    ranks: dict[int, int] = {0: 1, 2 * n: 1}
    for j in range(1, kp + 1):
        ranks[2 * n - 1 - j] = ranks.get(2 * n - 1 - j, 0) + comb(k, j)
        ranks[j + 1] = ranks.get(j + 1, 0) + comb(k, j)
    if k in (n - 2, n - 1, n):
        ranks[n + 1] = ranks.get(n + 1, 0) + q + comb(k, n - 2)
        ranks[n - 1] = ranks.get(n - 1, 0) + comb(k, n - 2) + q
    if k > n - 2:
        ranks[n] = ranks.get(n, 0) + 2 * comb(k, n - 1)
    return BettiVector.from_ranks(ranks, 2 * n)


def conn_sum_betti_mv(n: int, k: int) -> BettiVector:
    """Mayer-Vietoris assembly for the glued double sphere.

    Cover by the preimage of a collapsed corner (contractible) and the
    complement of one fixed point; the intersection is a (2n-1)-sphere and the
    second piece retracts onto (suspended k-torus) v (orbit complement).  In
    degrees 0 < m < 2n-1 the glued space inherits the ranks of that wedge; in
    degree 2n-1 only the suspension can contribute; the top connecting map is
    zero because a closed orientable 2n-manifold has b_{2n} = 1.
    """
    if n < 2 or not 1 <= k <= n:
        raise ValueError("(n, k) out of range")
    susp = _shift({d: r for d, r in dict(torus_betti(k).items).items() if d >= 1}, 1)
    wedge = orbit_complement_wedge(n, k).reduced_ranks()
    piece = _add(susp, wedge)
    ranks: dict[int, int] = {0: 1, 2 * n: 1}
    for m in range(1, 2 * n - 1):
        ranks[m] = ranks.get(m, 0) + piece.get(m, 0)
    ranks[2 * n - 1] = ranks.get(2 * n - 1, 0) + susp.get(2 * n - 1, 0)
    return BettiVector.from_ranks(ranks, 2 * n)
