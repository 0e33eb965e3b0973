"""Finite graded commutative rings with unit, augmentation and top class.

The common output form of every cohomology computation in the package: a
labeled basis with sparse structure constants over exact rationals, a
distinguished degree-0 unit, and (for closed-manifold rings) a fundamental
class spanning the top degree whose pairing matrices are nondegenerate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .betti import BettiVector
from .exactla import RatMatrix, matrix_rank


@dataclass(frozen=True)
class FiniteGradedRing:
    labels: tuple[str, ...]
    degrees: tuple[int, ...]
    unit: int
    products: Mapping[tuple[int, int], Mapping[int, Fraction]]
    top_degree: int
    fundamental_class: Optional[int]

    @staticmethod
    def make(
        labels: Sequence[str],
        degrees: Sequence[int],
        unit: int,
        products: Mapping[tuple[int, int], Mapping[int, Fraction]],
        top_degree: int,
        fundamental_class: Optional[int] = None,
    ) -> "FiniteGradedRing":
        clean = {
            key: {j: Fraction(c) for j, c in row.items() if c} for key, row in products.items()
        }
        clean = {key: row for key, row in clean.items() if row}
        ring = FiniteGradedRing(tuple(labels), tuple(degrees), unit, clean, top_degree, fundamental_class)
        ring._validate()
        return ring

    def _validate(self) -> None:
        if len(self.labels) != len(self.degrees) or len(set(self.labels)) != len(self.labels):
            raise ValueError("labels and degrees must match and be unique")
        if self.degrees[self.unit] != 0:
            raise ValueError("unit must live in degree 0")
        if self.fundamental_class is not None:
            if self.degrees[self.fundamental_class] != self.top_degree:
                raise ValueError("fundamental class must span the top degree")
            if sum(1 for d in self.degrees if d == self.top_degree) != 1:
                raise ValueError("top degree must be one dimensional")
        for (i, j), row in self.products.items():
            want = self.degrees[i] + self.degrees[j]
            if any(self.degrees[t] != want for t in row):
                raise ValueError("products must be graded")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def degree_indices(self, d: int) -> list[int]:
        return [i for i, deg in enumerate(self.degrees) if deg == d]

    def multiply_basis(self, i: int, j: int) -> dict[int, Fraction]:
        return dict(self.products.get((i, j), {}))

    def multiply(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                for t, c in self.products.get((i, j), {}).items():
                    v = out.get(t, Fraction(0)) + a * b * c
                    if v:
                        out[t] = v
                    else:
                        out.pop(t, None)
        return out

    def augmentation(self, x: Mapping[int, Fraction]) -> Fraction:
        return Fraction(x.get(self.unit, 0))

    def betti_of_ring(self) -> BettiVector:
        ranks: dict[int, int] = {}
        for d in self.degrees:
            ranks[d] = ranks.get(d, 0) + 1
        return BettiVector.from_ranks(ranks, max(self.top_degree, max(self.degrees, default=0)))

    # -- ring checks ----------------------------------------------------------

    def check_axioms(self) -> list[str]:
        out = []
        n = self.dim
        for i in range(n):
            if self.multiply_basis(self.unit, i) != {i: Fraction(1)}:
                out.append(f"unit fails at {self.labels[i]}")
        for i in range(n):
            for j in range(n):
                sign = -1 if (self.degrees[i] * self.degrees[j]) % 2 else 1
                lhs = self.multiply_basis(i, j)
                rhs = {t: sign * c for t, c in self.multiply_basis(j, i).items()}
                if lhs != rhs:
                    out.append(f"commutativity fails at ({self.labels[i]}, {self.labels[j]})")
        for i in range(n):
            for j in range(n):
                pij = self.products.get((i, j))
                for t in range(n):
                    pjt = self.products.get((j, t))
                    if not pij and not pjt:
                        continue
                    lhs = self.multiply(pij or {}, {t: Fraction(1)})
                    rhs = self.multiply({i: Fraction(1)}, pjt or {})
                    if lhs != rhs:
                        out.append(
                            f"associativity fails at ({self.labels[i]}, {self.labels[j]}, {self.labels[t]})"
                        )
                        if len(out) > 10:
                            return out
        return out

    # -- duality --------------------------------------------------------------

    def pairing_matrix(self, degree: int) -> RatMatrix:
        """Matrix of fundamental-class coefficients of products between the
        degree and its complementary degree."""
        if self.fundamental_class is None:
            raise ValueError("ring has no fundamental class")
        rows = self.degree_indices(degree)
        cols = self.degree_indices(self.top_degree - degree)
        mu = self.fundamental_class
        return RatMatrix.from_rows(
            [[self.multiply_basis(i, j).get(mu, Fraction(0)) for j in cols] for i in rows]
        )

    def pairing_nondegenerate(self) -> bool:
        for d in range(self.top_degree + 1):
            rows = self.degree_indices(d)
            cols = self.degree_indices(self.top_degree - d)
            if len(rows) != len(cols):
                return False
            if not rows:
                continue
            m = self.pairing_matrix(d)
            if matrix_rank(m.entries) != len(rows):
                return False
        return True

    # -- serialization ----------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "basis": [{"label": l, "degree": d} for l, d in zip(self.labels, self.degrees)],
            "product": [
                [i, j, t, str(c)]
                for (i, j) in sorted(self.products)
                for t, c in sorted(self.products[(i, j)].items())
            ],
            "unit": self.unit,
            "top_degree": self.top_degree,
            "fundamental_class": None
            if self.fundamental_class is None
            else self.labels[self.fundamental_class],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @staticmethod
    def from_json_obj(obj: Mapping) -> "FiniteGradedRing":
        try:
            labels = [str(b["label"]) for b in obj["basis"]]
            degrees = [int(b["degree"]) for b in obj["basis"]]
            products: dict[tuple[int, int], dict[int, Fraction]] = {}
            for i, j, t, c in obj["product"]:
                products.setdefault((int(i), int(j)), {})[int(t)] = Fraction(str(c))
            unit = int(obj["unit"])
            top = int(obj["top_degree"])
            fc = obj.get("fundamental_class")
            fundamental = None if fc is None else labels.index(str(fc))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ValueError(f"malformed ring JSON: {exc}") from exc
        return FiniteGradedRing.make(labels, degrees, unit, products, top, fundamental)

    @staticmethod
    def from_json(text: str) -> "FiniteGradedRing":
        return FiniteGradedRing.from_json_obj(json.loads(text))


def sphere_ring(n: int) -> FiniteGradedRing:
    """Cohomology ring of the 2n-sphere: unit and fundamental class only."""
    return FiniteGradedRing.make(
        labels=["1", "mu"],
        degrees=[0, 2 * n],
        unit=0,
        products={(0, 0): {0: Fraction(1)}, (0, 1): {1: Fraction(1)}, (1, 0): {1: Fraction(1)}},
        top_degree=2 * n,
        fundamental_class=1,
    )
