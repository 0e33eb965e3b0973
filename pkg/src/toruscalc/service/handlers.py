"""Request handlers shared by the HTTP routes and the thin-client CLI.

Each handler takes a validated request model and returns a response model;
domain errors surface as ``InputError`` (bad input: HTTP 422, CLI exit 2).
Verification failures are data, not errors.
"""

from __future__ import annotations

from ..betti import orbit_complement_recursive, orbit_complement_wedge
from ..charfun import CharacteristicFunction, CharFunError, validate_characteristic
from ..cdga.models import build_models, model_A
from ..gradedring import FiniteGradedRing
from ..polytope import (
    FaceLattice,
    LatticeError,
    SurgerySpec,
    cube_lattice,
    face_connected_sum,
    orbit_space_lattice,
    simplex_lattice,
)
from ..toricring import connected_sum_ring, equivariant_connected_sum_ring, quasitoric_ring
from ..verify import betti_methods, registered_discrepancy, run_all
from . import schemas as S


class InputError(ValueError):
    """Malformed or inconsistent input (maps to 422 / exit code 2)."""


def _lattice_to_model(lattice: FaceLattice) -> S.LatticeModel:
    return S.LatticeModel.model_validate(lattice.to_json_obj())


def _lattice_from_model(model: S.LatticeModel) -> FaceLattice:
    try:
        return FaceLattice.from_json_obj(model.model_dump())
    except LatticeError as exc:
        raise InputError(str(exc)) from exc


def _lattice_response(lattice: FaceLattice) -> S.LatticeResponse:
    return S.LatticeResponse(
        lattice=_lattice_to_model(lattice),
        f_vector=lattice.f_vector(),
        vertex_count=lattice.vertex_count(),
        is_simple_polytope=lattice.is_simple_polytope,
        is_nice_corners=lattice.is_nice_corners,
        holes=lattice.holes,
    )


def build_polytope(req: S.PolytopeBuildRequest) -> S.LatticeResponse:
    try:
        if req.type == "qn":
            lattice = orbit_space_lattice(req.n)
        elif req.type == "simplex":
            lattice = simplex_lattice(req.n)
        else:
            lattice = cube_lattice(req.n)
    except LatticeError as exc:
        raise InputError(str(exc)) from exc
    return _lattice_response(lattice)


def connect_polytopes(req: S.PolytopeConnectRequest) -> S.LatticeResponse:
    lhs = _lattice_from_model(req.lhs)
    rhs = _lattice_from_model(req.rhs)
    spec = SurgerySpec.make(req.spec.left_face_id, req.spec.right_face_id, req.spec.facet_pairing)
    try:
        if not 0 <= spec.left_face_id < len(lhs.faces) or not 0 <= spec.right_face_id < len(rhs.faces):
            raise InputError("face id out of range")
        if req.face_dim is not None and lhs.faces[spec.left_face_id].dim != req.face_dim:
            raise InputError(
                f"left face has dimension {lhs.faces[spec.left_face_id].dim}, expected {req.face_dim}"
            )
        out = face_connected_sum(lhs, rhs, spec)
    except LatticeError as exc:
        raise InputError(str(exc)) from exc
    return _lattice_response(out)


def _charfun_from_model(model: S.CharFunModel) -> CharacteristicFunction:
    try:
        return CharacteristicFunction.from_json_obj(model.model_dump())
    except CharFunError as exc:
        raise InputError(str(exc)) from exc


def validate_charfun(req: S.CharFunValidateRequest) -> S.CharFunValidateResponse:
    lattice = _lattice_from_model(req.polytope)
    xi = _charfun_from_model(req.xi)
    try:
        report = validate_characteristic(lattice, xi)
    except CharFunError as exc:
        raise InputError(str(exc)) from exc
    faces = [
        S.FaceModel(id=i, dim=lattice.faces[i].dim, facets=sorted(lattice.faces[i].facets), component=lattice.faces[i].component)
        for i in report.violations
    ]
    return S.CharFunValidateResponse(ok=report.ok, violations=list(report.violations), violating_faces=faces)


def betti_conn_sum(req: S.BettiConnSumRequest) -> S.BettiConnSumResponse:
    if not 1 <= req.k <= req.n:
        raise InputError("need 1 <= k <= n")
    all_methods = betti_methods(req.n, req.k)
    if req.method == "all":
        results = all_methods
    else:
        results = {req.method: all_methods[req.method]}
    agree = len({tuple(v) for v in all_methods.values()}) == 1
    entry = registered_discrepancy(req.n, req.k)
    registered = bool(entry) and not agree and all_methods == entry["values"]
    return S.BettiConnSumResponse(
        n=req.n,
        k=req.k,
        method=req.method,
        results=results,
        agree=agree,
        registered_discrepancy=registered,
        note=entry["note"] if registered else None,
    )


def betti_complement(req: S.BettiComplementRequest) -> S.BettiComplementResponse:
    if not 1 <= req.orbit_dim <= req.n:
        raise InputError("need 1 <= orbit_dim <= n")
    if req.method == "wedge":
        wedge = orbit_complement_wedge(req.n, req.orbit_dim)
        betti = wedge.betti()
        return S.BettiComplementResponse(
            n=req.n,
            orbit_dim=req.orbit_dim,
            method="wedge",
            betti=betti.as_list(),
            wedge=[[d, m] for d, m in wedge.summands],
        )
    betti = orbit_complement_recursive(req.n, req.n - req.orbit_dim + 1)
    return S.BettiComplementResponse(
        n=req.n, orbit_dim=req.orbit_dim, method="recursive", betti=betti.as_list()
    )


def cdga_verify(req: S.CdgaVerifyRequest) -> S.CdgaVerifyResponse:
    if not 1 <= req.k <= req.n:
        raise InputError("need 1 <= k <= n")
    if 2 * req.n - req.k - 1 < 1:
        raise InputError("degenerate parameters")
    models = build_models(req.n, req.k)
    results = {
        name: S.CheckResultModel(ok=r.ok, details=r.details)
        for name, r in models.check(req.checks).items()
    }
    return S.CdgaVerifyResponse(
        n=req.n, k=req.k, ok=all(r.ok for r in results.values()), results=results
    )


def cdga_dump(req: S.CdgaDumpRequest) -> S.CdgaDumpResponse:
    if not 1 <= req.k <= req.n:
        raise InputError("need 1 <= k <= n")
    if req.model == "a":
        alg = model_A(req.n, req.k)
    else:
        models = build_models(req.n, req.k)
        alg = {
            "c": models.C,
            "b": models.B,
            "eprime": models.E,
            "bprime": models.Bp,
            "d": models.D,
            "dj": models.DJ,
        }[req.model]
    return S.CdgaDumpResponse(
        model=req.model,
        basis=[S.BasisElementModel(label=l, degree=d) for l, d in zip(alg.labels, alg.degrees)],
        d=[(i, j, str(c)) for i in sorted(alg.differential) for j, c in sorted(alg.differential[i].items())],
        product=[
            (i, j, t, str(c))
            for (i, j) in sorted(alg.products)
            for t, c in sorted(alg.products[(i, j)].items())
        ],
    )


def _ring_to_model(ring: FiniteGradedRing) -> S.RingModel:
    return S.RingModel.model_validate(ring.to_json_obj())


def _ring_from_model(model: S.RingModel) -> FiniteGradedRing:
    try:
        return FiniteGradedRing.from_json_obj(model.model_dump())
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _ring_response(ring: FiniteGradedRing) -> S.RingResponse:
    return S.RingResponse(
        ring=_ring_to_model(ring),
        betti=ring.betti_of_ring().as_list(),
        pairing_nondegenerate=ring.pairing_nondegenerate() if ring.fundamental_class is not None else False,
    )


def ring_quasitoric(req: S.RingQuasitoricRequest) -> S.RingResponse:
    lattice = _lattice_from_model(req.polytope)
    xi = _charfun_from_model(req.xi)
    try:
        ring = quasitoric_ring(lattice, xi)
    except (ValueError, CharFunError) as exc:
        raise InputError(str(exc)) from exc
    return _ring_response(ring)


def ring_connect(req: S.RingConnectRequest) -> S.RingResponse:
    try:
        ring = connected_sum_ring(_ring_from_model(req.lhs), _ring_from_model(req.rhs))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return _ring_response(ring)


def ring_equivariant(req: S.RingEquivariantRequest) -> S.RingResponse:
    if not 1 <= req.k <= req.n:
        raise InputError("need 1 <= k <= n")
    try:
        ring = equivariant_connected_sum_ring(
            _ring_from_model(req.lhs), _ring_from_model(req.rhs), req.n, req.k
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return _ring_response(ring)


def verify_all(req: S.VerifyAllRequest) -> S.VerifyAllResponse:
    report = run_all(max_n=req.max_n)
    obj = report.to_json_obj(allow_known_discrepancies=req.allow_known_discrepancies)
    return S.VerifyAllResponse.model_validate(obj)
