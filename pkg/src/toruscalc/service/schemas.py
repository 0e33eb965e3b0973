"""Pydantic request/response models for the service (and the CLI client)."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class FaceModel(BaseModel):
    id: int
    dim: int
    facets: list[int]
    component: int


class LatticeModel(BaseModel):
    ambient_dim: int
    facets: list[int]
    faces: list[FaceModel]
    holes: int = 0


class PolytopeBuildRequest(BaseModel):
    type: Literal["qn", "simplex", "cube"]
    # the cube lattice grows as 3^n with quadratic containment bookkeeping;
    # n = 8 (6561 faces) builds in seconds, which is where a request stops
    n: int = Field(ge=1, le=8)


class LatticeResponse(BaseModel):
    lattice: LatticeModel
    f_vector: list[int]
    vertex_count: int
    is_simple_polytope: bool
    is_nice_corners: bool
    holes: int


class SurgerySpecModel(BaseModel):
    left_face_id: int
    right_face_id: int
    facet_pairing: dict[int, int] = Field(default_factory=dict)


class PolytopeConnectRequest(BaseModel):
    lhs: LatticeModel
    rhs: LatticeModel
    spec: SurgerySpecModel
    face_dim: Optional[int] = None  # checked against the chosen faces when given


class CharFunModel(BaseModel):
    n: int
    xi: dict[str, list[int]]


class CharFunValidateRequest(BaseModel):
    polytope: LatticeModel
    xi: CharFunModel


class CharFunValidateResponse(BaseModel):
    ok: bool
    violations: list[int]
    violating_faces: list[FaceModel]


BettiMethod = Literal["closed", "mv", "model", "all"]


class BettiConnSumRequest(BaseModel):
    n: int = Field(ge=2, le=8)
    k: int = Field(ge=1)
    method: BettiMethod = "all"


class BettiConnSumResponse(BaseModel):
    n: int
    k: int
    method: BettiMethod
    results: dict[str, list[int]]
    agree: bool
    registered_discrepancy: bool
    note: Optional[str] = None


class BettiComplementRequest(BaseModel):
    n: int = Field(ge=1, le=10)
    orbit_dim: int = Field(ge=1)
    method: Literal["wedge", "recursive"] = "wedge"


class BettiComplementResponse(BaseModel):
    n: int
    orbit_dim: int
    method: str
    betti: list[int]
    wedge: Optional[list[list[int]]] = None  # (sphere dimension, multiplicity)


CdgaCheckName = Literal["axioms", "models", "pullback", "ideal", "quotient", "pi-xi", "eta"]


class CdgaVerifyRequest(BaseModel):
    n: int = Field(ge=2, le=6)
    # k = 4 already means a 544-dimensional pullback; larger towers belong in
    # a batch job against the library, not a request/response cycle
    k: int = Field(ge=1, le=4)
    checks: list[CdgaCheckName] = Field(
        default_factory=lambda: ["axioms", "models", "pullback", "ideal", "quotient", "pi-xi", "eta"]
    )


class CheckResultModel(BaseModel):
    ok: bool
    details: str


class CdgaVerifyResponse(BaseModel):
    n: int
    k: int
    ok: bool
    results: dict[str, CheckResultModel]


class CdgaDumpRequest(BaseModel):
    n: int = Field(ge=2, le=6)
    k: int = Field(ge=1, le=4)
    model: Literal["a", "c", "b", "eprime", "bprime", "d", "dj"] = "a"


class BasisElementModel(BaseModel):
    label: str
    degree: int


class CdgaDumpResponse(BaseModel):
    model: str
    basis: list[BasisElementModel]
    d: list[tuple[int, int, str]]
    product: list[tuple[int, int, int, str]]


class RingModel(BaseModel):
    basis: list[BasisElementModel]
    product: list[tuple[int, int, int, str]]
    unit: int
    top_degree: int
    fundamental_class: Optional[str] = None


class RingQuasitoricRequest(BaseModel):
    polytope: LatticeModel
    xi: CharFunModel


class RingConnectRequest(BaseModel):
    lhs: RingModel
    rhs: RingModel


class RingEquivariantRequest(BaseModel):
    lhs: RingModel
    rhs: RingModel
    n: int = Field(ge=2, le=6)
    k: int = Field(ge=1)


class RingResponse(BaseModel):
    ring: RingModel
    betti: list[int]
    pairing_nondegenerate: bool


class VerifyAllRequest(BaseModel):
    max_n: int = Field(default=6, ge=2, le=6)
    allow_known_discrepancies: bool = False


class VerifyCheckModel(BaseModel):
    name: str
    ok: bool
    details: str = ""


class VerifyAllResponse(BaseModel):
    ok: bool
    checks: list[VerifyCheckModel]
    failures: list[str]
    known_discrepancies: list[dict]
