"""Characteristic functions on face lattices and torus-manifold descriptors.

An assignment of primitive integer vectors to facets is admissible when, at
every face, the vectors of the facets through it span a direct summand of the
integer lattice.  The identification space built from such a pair is kept
only as a descriptor (lattice, assignment); no point-set model exists here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Mapping, Sequence

from .exactla import is_direct_summand
from .polytope import FaceLattice, FaceSumPlan, LatticeError, SurgerySpec, face_connected_sum_plan


class CharFunError(ValueError):
    pass


def _primitive(vector: Sequence[int]) -> tuple[int, ...]:
    v = tuple(int(x) for x in vector)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g != 1:
        raise CharFunError(f"vector {v} is not primitive")
    return v


@dataclass(frozen=True)
class CharacteristicFunction:
    """Total assignment facet id -> primitive vector in Z^n."""

    target_rank: int
    assignment: tuple[tuple[int, tuple[int, ...]], ...]

    @staticmethod
    def make(target_rank: int, assignment: Mapping[int, Sequence[int]]) -> "CharacteristicFunction":
        items = []
        for fid in sorted(assignment):
            v = _primitive(assignment[fid])
            if len(v) != target_rank:
                raise CharFunError(f"vector for facet {fid} has length {len(v)}, expected {target_rank}")
            items.append((int(fid), v))
        return CharacteristicFunction(target_rank, tuple(items))

    def as_dict(self) -> dict[int, tuple[int, ...]]:
        return dict(self.assignment)

    def vector(self, facet_id: int) -> tuple[int, ...]:
        try:
            return self.as_dict()[facet_id]
        except KeyError:
            raise CharFunError(f"no vector assigned to facet {facet_id}") from None

    def to_json_obj(self) -> dict:
        return {"n": self.target_rank, "xi": {str(fid): list(v) for fid, v in self.assignment}}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @staticmethod
    def from_json_obj(obj: Mapping) -> "CharacteristicFunction":
        try:
            n = int(obj["n"])
            xi = {int(k): [int(x) for x in v] for k, v in obj["xi"].items()}
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise CharFunError(f"malformed characteristic function JSON: {exc}") from exc
        return CharacteristicFunction.make(n, xi)

    @staticmethod
    def from_json(text: str) -> "CharacteristicFunction":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CharFunError(f"invalid JSON: {exc}") from exc
        return CharacteristicFunction.from_json_obj(obj)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[int, ...]  # face ids whose facet vectors fail the summand test

    def to_json_obj(self) -> dict:
        return {"ok": self.ok, "violations": list(self.violations)}


def validate_characteristic(P: FaceLattice, xi: CharacteristicFunction) -> ValidationReport:
    """Check the direct-summand condition at every face of the lattice."""
    if xi.target_rank != P.ambient_dim:
        raise CharFunError("target rank must equal the ambient dimension")
    assigned = set(xi.as_dict())
    if assigned != set(P.facet_ids):
        raise CharFunError("assignment must be total on the facets")
    bad = []
    for i, face in enumerate(P.faces):
        vectors = [xi.vector(f) for f in sorted(face.facets)]
        if not is_direct_summand(vectors):
            bad.append(i)
    return ValidationReport(not bad, tuple(bad))


def standard_orbit_charfun(n: int) -> CharacteristicFunction:
    """Coordinate circles: facet i carries the i-th standard basis vector."""
    return CharacteristicFunction.make(
        n, {i: tuple(1 if j == i else 0 for j in range(n)) for i in range(n)}
    )


def merge_characteristic(
    P1: FaceLattice,
    xi1: CharacteristicFunction,
    P2: FaceLattice,
    xi2: CharacteristicFunction,
    spec: SurgerySpec,
) -> tuple[FaceLattice, CharacteristicFunction]:
    """Characteristic function on the face connected sum.

    Paired facets must already carry equal vectors (any lattice automorphism
    matching the two actions is the caller's job); merged facets inherit the
    common vector and everything else keeps its own.
    """
    plan: FaceSumPlan = face_connected_sum_plan(P1, P2, spec)
    pairing = spec.pairing_dict()
    for lf, rf in pairing.items():
        if xi1.vector(lf) != xi2.vector(rf):
            raise CharFunError(
                f"paired facets {lf} and {rf} carry different vectors; "
                "apply a lattice automorphism first"
            )
    merged: dict[int, tuple[int, ...]] = {}
    for lf, new in plan.left_facet_map.items():
        merged[new] = xi1.vector(lf)
    for rf, new in plan.right_facet_map.items():
        if new in merged and new not in plan.merged_facets:
            raise LatticeError("facet map collision")
        merged.setdefault(new, xi2.vector(rf))
    xi = CharacteristicFunction.make(P1.ambient_dim, merged)
    report = validate_characteristic(plan.lattice, xi)
    if not report.ok:
        raise CharFunError(f"merged assignment fails validation at faces {list(report.violations)}")
    return plan.lattice, xi


@dataclass(frozen=True)
class TorusManifoldDescriptor:
    """A validated characteristic pair plus the per-face submodule generators."""

    lattice: FaceLattice
    xi: CharacteristicFunction
    face_submodules: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]

    @staticmethod
    def make(lattice: FaceLattice, xi: CharacteristicFunction) -> "TorusManifoldDescriptor":
        report = validate_characteristic(lattice, xi)
        if not report.ok:
            raise CharFunError(f"invalid characteristic pair, violations at {list(report.violations)}")
        subs = tuple(
            (i, tuple(xi.vector(f) for f in sorted(face.facets))) for i, face in enumerate(lattice.faces)
        )
        return TorusManifoldDescriptor(lattice, xi, subs)


def fixed_point_count(d: TorusManifoldDescriptor) -> int:
    """Fixed points correspond bijectively to the vertices of the orbit space."""
    return d.lattice.vertex_count()


def characteristic_submanifolds(d: TorusManifoldDescriptor) -> list[tuple[int, tuple[int, ...]]]:
    """One codimension-two submanifold per facet, tagged by its circle vector."""
    return [(fid, d.xi.vector(fid)) for fid in d.lattice.facet_ids]
