"""Cohomology rings of quasitoric manifolds and their connected sums.

The ring of a characteristic pair over a simple polytope is the face ring of
the polytope's boundary complex modulo the linear system read off the vector
assignment, computed degreewise by exact rank (no term orders: everything is
homogeneous and vanishes above the middle algebra degree).  Connected sums
glue two rings along matched units and fundamental classes with vanishing
cross products; the equivariant version also absorbs the small model of the
glued double sphere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Mapping

from .betti import BettiVector
from .charfun import CharacteristicFunction, CharFunError, validate_characteristic
from .cdga.models import model_A
from .gradedring import FiniteGradedRing, sphere_ring
from .polytope import FaceLattice

__all__ = [
    "FiniteGradedRing",
    "RingPresentation",
    "sphere_ring",
    "quasitoric_ring",
    "ring_presentation",
    "connected_sum_ring",
    "equivariant_connected_sum_ring",
    "h_vector",
    "pairing_matrix",
    "betti_of_ring",
]


@dataclass(frozen=True)
class RingPresentation:
    """Generators-and-relations description of a quasitoric ring.

    One degree-two generator per facet; the monomial relations are the
    minimal facet sets with empty intersection, the linear relations the
    coordinate rows of the vector assignment.
    """

    generator_count: int
    monomial_relations: tuple[tuple[int, ...], ...]
    linear_relations: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if any(len(set(s)) != len(s) for s in self.monomial_relations):
            raise ValueError("monomial relations must be squarefree facet sets")
        if any(len(row) != self.generator_count for row in self.linear_relations):
            raise ValueError("linear relations must be rows over the generators")


def ring_presentation(P: FaceLattice, xi: CharacteristicFunction) -> RingPresentation:
    if not P.is_simple_polytope:
        raise ValueError("presentations need a simple polytope")
    n = P.ambient_dim
    facets = list(P.facet_ids)
    face_sets = {frozenset(f.facets) for f in P.faces}
    minimal: list[tuple[int, ...]] = []
    for size in range(2, len(facets) + 1):
        for combo in combinations(facets, size):
            s = frozenset(combo)
            if s in face_sets:
                continue
            if all(frozenset(sub) in face_sets for sub in combinations(combo, size - 1)):
                minimal.append(tuple(sorted(combo)))
    linear = tuple(tuple(xi.vector(fid)[j] for fid in facets) for j in range(n))
    return RingPresentation(len(facets), tuple(sorted(minimal)), linear)


def h_vector(P: FaceLattice) -> list[int]:
    """h-vector of a simple polytope from its face counts (dual convention)."""
    if not P.is_simple_polytope:
        raise ValueError("h-vector needs a simple polytope")
    n = P.ambient_dim
    f = P.f_vector()
    # dual simplicial f-vector: number of (j-1)-simplices = faces of codim j
    dual = [1] + [f[n - 1 - j] for j in range(n)]
    # sum_j dual[j] (t-1)^(n-j) expanded; coefficient of t^(n-i) is h_i
    coeffs = [Fraction(0)] * (n + 1)
    for j, count in enumerate(dual):
        power = n - j
        sign = 1
        binom = 1
        for t_exp in range(power, -1, -1):
            idx = power - t_exp
            coeffs[t_exp] += count * binom * (-1) ** idx
            binom = binom * (power - idx) // (idx + 1)
    h = [int(coeffs[n - i]) for i in range(n + 1)]
    return h


def _monomials(m: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree ``degree`` in m variables."""
    out = []
    for combo in combinations_with_replacement(range(m), degree):
        e = [0] * m
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def quasitoric_ring(P: FaceLattice, xi: CharacteristicFunction) -> FiniteGradedRing:
    """Rational cohomology ring of the quasitoric manifold over (P, xi).

    One degree-2 generator per facet; relations are the non-face monomials of
    the boundary complex and the n linear forms transposing the vector
    assignment.  The fundamental class is the monomial of the first vertex
    (smallest facet set), normalized to +mu.
    """
    if not P.is_simple_polytope:
        raise ValueError("quasitoric rings need a simple polytope base")
    report = validate_characteristic(P, xi)
    if not report.ok:
        raise CharFunError(f"characteristic function invalid at faces {list(report.violations)}")
    n = P.ambient_dim
    facets = list(P.facet_ids)
    m = len(facets)
    face_sets = {frozenset(f.facets) for f in P.faces}

    def is_face_support(e: tuple[int, ...]) -> bool:
        support = frozenset(facets[i] for i, p in enumerate(e) if p)
        return support in face_sets

    linear = [[Fraction(xi.vector(fid)[j]) for fid in facets] for j in range(n)]

    # degree-d graded pieces: monomials modulo (non-face monomials) + (linear)
    basis_by_deg: dict[int, list[tuple[int, ...]]] = {0: [tuple([0] * m)]}
    reducers: dict[int, "_Reducer"] = {}
    for d in range(1, n + 1):
        monos = _monomials(m, d)
        pos = {e: p for p, e in enumerate(monos)}
        relations: list[list[Fraction]] = []
        for e in monos:
            if not is_face_support(e):
                row = [Fraction(0)] * len(monos)
                row[pos[e]] = Fraction(1)
                relations.append(row)
        for prev in _monomials(m, d - 1):
            for j in range(n):
                row = [Fraction(0)] * len(monos)
                for i in range(m):
                    if linear[j][i]:
                        e = list(prev)
                        e[i] += 1
                        row[pos[tuple(e)]] += linear[j][i]
                if any(row):
                    relations.append(row)
        reducer = _Reducer(monos, relations)
        reducers[d] = reducer
        basis_by_deg[d] = reducer.basis_monomials()

    expected = h_vector(P)
    dims = [len(basis_by_deg.get(d, [])) for d in range(n + 1)]
    if dims != expected:
        raise ValueError(f"graded dimensions {dims} do not match the h-vector {expected}")
    if dims[n] != 1:
        raise ValueError("top degree is not one dimensional")

    # normalize the top monomial basis to the designated vertex monomial
    first_vertex = min(P.vertex_ids, key=lambda v: tuple(sorted(P.faces[v].facets)))
    vertex_mono = [0] * m
    for fid in P.faces[first_vertex].facets:
        vertex_mono[facets.index(fid)] += 1
    top_coords = reducers[n].reduce(tuple(vertex_mono))
    if not any(top_coords.values()):
        raise ValueError("vertex monomial vanishes in the top degree")
    (mu_mono, mu_coeff) = next(iter(top_coords.items()))

    labels = []
    degrees = []
    mono_index: dict[tuple[int, tuple[int, ...]], int] = {}
    for d in range(n + 1):
        for e in basis_by_deg[d]:
            mono_index[(d, e)] = len(labels)
            labels.append("mu" if d == n else (_mono_label(e, facets) if d else "1"))
            degrees.append(2 * d)

    def class_of(d: int, reduced: Mapping[tuple[int, ...], Fraction], scale: Fraction) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for e, c in reduced.items():
            coeff = c * scale
            if d == n:
                # the top basis element is the (rescaled) vertex monomial class
                coeff = coeff / mu_coeff
            idx = mono_index[(d, e)]
            out[idx] = out.get(idx, Fraction(0)) + coeff
        return {i: c for i, c in out.items() if c}

    def rep_scale(d: int, e: tuple[int, ...]) -> Fraction:
        return mu_coeff if (d == n and e == mu_mono) else Fraction(1)

    products: dict[tuple[int, int], dict[int, Fraction]] = {}
    items = [(d, e) for d in range(n + 1) for e in basis_by_deg[d]]
    for d1, e1 in items:
        for d2, e2 in items:
            d = d1 + d2
            p1, p2 = mono_index[(d1, e1)], mono_index[(d2, e2)]
            if d > n:
                continue  # zero above the top degree
            prod = tuple(a + b for a, b in zip(e1, e2))
            reduced = reducers[d].reduce(prod) if d else {tuple([0] * m): Fraction(1)}
            row = class_of(d, reduced, rep_scale(d1, e1) * rep_scale(d2, e2))
            if row:
                products[(p1, p2)] = row
    mu_index = mono_index[(n, mu_mono)]
    ring = FiniteGradedRing.make(
        labels=labels,
        degrees=degrees,
        unit=mono_index[(0, tuple([0] * m))],
        products=products,
        top_degree=2 * n,
        fundamental_class=mu_index,
    )
    return ring


def _mono_label(e: tuple[int, ...], facets: list[int]) -> str:
    parts = []
    for i, p in enumerate(e):
        if p == 1:
            parts.append(f"v{facets[i]}")
        elif p > 1:
            parts.append(f"v{facets[i]}^{p}")
    return "*".join(parts)


class _Reducer:
    """Reduction of degree-d monomial combinations modulo a relation span."""

    def __init__(self, monomials: list[tuple[int, ...]], relations: list[list[Fraction]]):
        from .exactla import rref

        self.monomials = monomials
        self.pos = {e: p for p, e in enumerate(monomials)}
        rows, pivots = rref(relations) if relations else ([], [])
        self.rows = rows
        self.pivots = pivots
        self.free = [p for p in range(len(monomials)) if p not in pivots]

    def basis_monomials(self) -> list[tuple[int, ...]]:
        return [self.monomials[p] for p in self.free]

    def reduce(self, monomial: tuple[int, ...] | None = None, coords: list[Fraction] | None = None) -> dict[tuple[int, ...], Fraction]:
        if coords is None:
            coords = [Fraction(0)] * len(self.monomials)
            coords[self.pos[monomial]] = Fraction(1)
        for pivot, row in zip(self.pivots, self.rows):
            if coords[pivot]:
                f = coords[pivot]
                coords = [c - f * r for c, r in zip(coords, row)]
        return {self.monomials[p]: coords[p] for p in self.free if coords[p]}


def connected_sum_ring(R1: FiniteGradedRing, R2: FiniteGradedRing) -> FiniteGradedRing:
    """Ring of a connected sum: matched units and top classes, middle parts
    side by side, cross products of positive-degree classes zero."""
    if R1.top_degree != R2.top_degree:
        raise ValueError("top degrees differ")
    if R1.fundamental_class is None or R2.fundamental_class is None:
        raise ValueError("both rings need fundamental classes")
    top = R1.top_degree
    labels = ["1"]
    degrees = [0]
    lpos: dict[int, int] = {}
    rpos: dict[int, int] = {}
    for i, (lab, d) in enumerate(zip(R1.labels, R1.degrees)):
        if i in (R1.unit, R1.fundamental_class):
            continue
        if d == 0 or d == top:
            raise ValueError("unit or top degree is not one dimensional")
        lpos[i] = len(labels)
        labels.append(f"L.{lab}")
        degrees.append(d)
    for j, (lab, d) in enumerate(zip(R2.labels, R2.degrees)):
        if j in (R2.unit, R2.fundamental_class):
            continue
        if d == 0 or d == top:
            raise ValueError("unit or top degree is not one dimensional")
        rpos[j] = len(labels)
        labels.append(f"R.{lab}")
        degrees.append(d)
    mu = len(labels)
    labels.append("mu")
    degrees.append(top)

    def convert(row: Mapping[int, Fraction], pos: dict[int, int], ring: FiniteGradedRing) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for t, c in row.items():
            if t == ring.fundamental_class:
                out[mu] = out.get(mu, Fraction(0)) + c
            elif t == ring.unit:
                out[0] = out.get(0, Fraction(0)) + c
            else:
                out[pos[t]] = out.get(pos[t], Fraction(0)) + c
        return {t: c for t, c in out.items() if c}

    products: dict[tuple[int, int], dict[int, Fraction]] = {(0, 0): {0: Fraction(1)}}
    for p in range(1, mu + 1):
        products[(0, p)] = {p: Fraction(1)}
        products[(p, 0)] = {p: Fraction(1)}
    for i, p1 in lpos.items():
        for i2, p2 in lpos.items():
            row = convert(R1.multiply_basis(i, i2), lpos, R1)
            if row:
                products[(p1, p2)] = row
    for j, p1 in rpos.items():
        for j2, p2 in rpos.items():
            row = convert(R2.multiply_basis(j, j2), rpos, R2)
            if row:
                products[(p1, p2)] = row
    return FiniteGradedRing.make(
        labels=labels, degrees=degrees, unit=0, products=products, top_degree=top, fundamental_class=mu
    )


def equivariant_connected_sum_ring(
    R1: FiniteGradedRing, R2: FiniteGradedRing, n: int, k: int
) -> FiniteGradedRing:
    """Ring of the equivariant gluing: the plain sum of the two rings summed
    once more with the small model of the glued double sphere."""
    A = model_A(n, k).cohomology_ring()
    return connected_sum_ring(connected_sum_ring(R1, R2), A)


def pairing_matrix(R: FiniteGradedRing, degree: int):
    return R.pairing_matrix(degree)


def betti_of_ring(R: FiniteGradedRing) -> BettiVector:
    return R.betti_of_ring()
