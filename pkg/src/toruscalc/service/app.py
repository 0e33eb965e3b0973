"""FastAPI application wrapping the calculator."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import handlers as H
from . import schemas as S


def create_app() -> FastAPI:
    app = FastAPI(
        title="toruscalc",
        description=(
            "Exact calculator for orbit-space surgery, equivariant sphere sums, "
            "their graded models and cohomology rings."
        ),
        version="0.1.0",
    )

    def run(handler, request):
        try:
            return handler(request)
        except H.InputError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/polytope/build", response_model=S.LatticeResponse)
    def polytope_build(req: S.PolytopeBuildRequest) -> S.LatticeResponse:
        return run(H.build_polytope, req)

    @app.post("/polytope/connect", response_model=S.LatticeResponse)
    def polytope_connect(req: S.PolytopeConnectRequest) -> S.LatticeResponse:
        return run(H.connect_polytopes, req)

    @app.post("/charfun/validate", response_model=S.CharFunValidateResponse)
    def charfun_validate(req: S.CharFunValidateRequest) -> S.CharFunValidateResponse:
        return run(H.validate_charfun, req)

    @app.post("/betti/conn-sum", response_model=S.BettiConnSumResponse)
    def betti_conn_sum(req: S.BettiConnSumRequest) -> S.BettiConnSumResponse:
        return run(H.betti_conn_sum, req)

    @app.post("/betti/complement", response_model=S.BettiComplementResponse)
    def betti_complement(req: S.BettiComplementRequest) -> S.BettiComplementResponse:
        return run(H.betti_complement, req)

    @app.post("/cdga/verify", response_model=S.CdgaVerifyResponse)
    def cdga_verify(req: S.CdgaVerifyRequest) -> S.CdgaVerifyResponse:
        return run(H.cdga_verify, req)

    @app.post("/cdga/dump", response_model=S.CdgaDumpResponse)
    def cdga_dump(req: S.CdgaDumpRequest) -> S.CdgaDumpResponse:
        return run(H.cdga_dump, req)

    @app.post("/ring/quasitoric", response_model=S.RingResponse)
    def ring_quasitoric(req: S.RingQuasitoricRequest) -> S.RingResponse:
        return run(H.ring_quasitoric, req)

    @app.post("/ring/connect", response_model=S.RingResponse)
    def ring_connect(req: S.RingConnectRequest) -> S.RingResponse:
        return run(H.ring_connect, req)

    @app.post("/ring/equivariant-connect", response_model=S.RingResponse)
    def ring_equivariant(req: S.RingEquivariantRequest) -> S.RingResponse:
        return run(H.ring_equivariant, req)

    @app.post("/verify/all", response_model=S.VerifyAllResponse)
    def verify_all(req: S.VerifyAllRequest) -> S.VerifyAllResponse:
        return run(H.verify_all, req)

    return app


app = create_app()
