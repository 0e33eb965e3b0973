"""Command-line client for the calculator.

Every subcommand builds the same request model the HTTP service accepts and
either calls the handler in process (the default; no server needed) or posts
it to a running service given with --server.  Output is deterministic: JSON
with sorted keys, or a flat TSV rendering.

Exit codes: 0 success, 1 failed verification (with a machine-readable
report on stdout), 2 malformed input.  TORUSCALC_SEED is ignored: every
computation here is exact and fully deterministic.
"""

from __future__ import annotations

import json
from typing import Callable, Optional, Type

import click
import httpx
from pydantic import BaseModel, ValidationError

from .service import handlers as H
from .service import schemas as S


def _render(obj: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, indent=2)
    lines = []

    def flatten(prefix: str, value) -> None:
        if isinstance(value, dict):
            for key in sorted(value, key=str):
                flatten(f"{prefix}.{key}" if prefix else str(key), value[key])
        elif isinstance(value, list):
            if all(not isinstance(v, (dict, list)) for v in value):
                lines.append(f"{prefix}\t{' '.join(str(v) for v in value)}")
            else:
                for i, v in enumerate(value):
                    flatten(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix}\t{value}")

    flatten("", obj)
    return "\n".join(lines)


def _dispatch(
    handler: Callable,
    route: str,
    request: BaseModel,
    response_type: Type[BaseModel],
    server: Optional[str],
) -> BaseModel:
    if server is None:
        try:
            return handler(request)
        except H.InputError as exc:
            raise click.UsageError(str(exc)) from exc
    try:
        resp = httpx.post(f"{server.rstrip('/')}{route}", json=request.model_dump(mode="json"), timeout=600.0)
    except httpx.HTTPError as exc:
        raise click.ClickException(f"server unreachable: {exc}") from exc
    if resp.status_code == 422:
        raise click.UsageError(f"server rejected the input: {resp.text}")
    if resp.status_code != 200:
        raise click.ClickException(f"server error {resp.status_code}: {resp.text}")
    return response_type.model_validate(resp.json())


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read {path}: {exc}") from exc


def _parse(model: Type[BaseModel], obj: dict, what: str) -> BaseModel:
    try:
        return model.model_validate(obj)
    except ValidationError as exc:
        raise click.UsageError(f"malformed {what}: {exc}") from exc


def common_options(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["json", "tsv"]), default="json", show_default=True)(fn)
    fn = click.option("--server", default=None, help="Base URL of a running service; defaults to in-process execution.")(fn)
    return fn


def _emit(ctx: click.Context, response: BaseModel, fmt: str, exit_code: int = 0) -> None:
    click.echo(_render(response.model_dump(mode="json"), fmt))
    ctx.exit(exit_code)


@click.group()
def main() -> None:
    """Exact calculator for orbit-space surgery, equivariant sphere sums,
    their graded models and cohomology rings."""


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("toruscalc.service.app:app", host=host, port=port)


# -- polytope ----------------------------------------------------------------


@main.group()
def polytope() -> None:
    """Face lattices and surgeries."""


@polytope.command("build")
@click.option("--type", "kind", type=click.Choice(["qn", "simplex", "cube"]), required=True)
@click.option("--n", type=int, required=True)
@common_options
@click.pass_context
def polytope_build(ctx, kind: str, n: int, fmt: str, server: Optional[str]) -> None:
    req = _parse(S.PolytopeBuildRequest, {"type": kind, "n": n}, "request")
    resp = _dispatch(H.build_polytope, "/polytope/build", req, S.LatticeResponse, server)
    _emit(ctx, resp, fmt)


@polytope.command("connect")
@click.option("--lhs", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--rhs", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--pairing", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--face-dim", type=int, default=None)
@common_options
@click.pass_context
def polytope_connect(ctx, lhs, rhs, pairing, face_dim, fmt, server) -> None:
    """Glue two lattices along faces, per a surgery spec JSON file."""
    req = _parse(
        S.PolytopeConnectRequest,
        {
            "lhs": _load_json(lhs),
            "rhs": _load_json(rhs),
            "spec": _load_json(pairing),
            "face_dim": face_dim,
        },
        "surgery request",
    )
    resp = _dispatch(H.connect_polytopes, "/polytope/connect", req, S.LatticeResponse, server)
    _emit(ctx, resp, fmt)


# -- charfun -----------------------------------------------------------------


@main.group()
def charfun() -> None:
    """Characteristic functions."""


@charfun.command("validate")
@click.option("--polytope", "polytope_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--xi", "xi_path", required=True, type=click.Path(exists=True, dir_okay=False))
@common_options
@click.pass_context
def charfun_validate(ctx, polytope_path, xi_path, fmt, server) -> None:
    req = _parse(
        S.CharFunValidateRequest,
        {"polytope": _load_json(polytope_path), "xi": _load_json(xi_path)},
        "validation request",
    )
    resp = _dispatch(H.validate_charfun, "/charfun/validate", req, S.CharFunValidateResponse, server)
    _emit(ctx, resp, fmt, exit_code=0 if resp.ok else 1)


# -- betti -------------------------------------------------------------------


@main.group()
def betti() -> None:
    """Betti numbers of sphere sums and orbit complements."""


@betti.command("conn-sum")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--method", type=click.Choice(["closed", "mv", "model", "all"]), default="all", show_default=True)
@common_options
@click.pass_context
def betti_conn_sum(ctx, n, k, method, fmt, server) -> None:
    req = _parse(S.BettiConnSumRequest, {"n": n, "k": k, "method": method}, "request")
    resp = _dispatch(H.betti_conn_sum, "/betti/conn-sum", req, S.BettiConnSumResponse, server)
    code = 0 if (method != "all" or resp.agree) else 1
    _emit(ctx, resp, fmt, exit_code=code)


@betti.command("complement")
@click.option("--n", type=int, required=True)
@click.option("--orbit-dim", type=int, required=True)
@click.option("--method", type=click.Choice(["wedge", "recursive"]), default="wedge", show_default=True)
@common_options
@click.pass_context
def betti_complement(ctx, n, orbit_dim, method, fmt, server) -> None:
    req = _parse(S.BettiComplementRequest, {"n": n, "orbit_dim": orbit_dim, "method": method}, "request")
    resp = _dispatch(H.betti_complement, "/betti/complement", req, S.BettiComplementResponse, server)
    _emit(ctx, resp, fmt)


# -- cdga --------------------------------------------------------------------


@main.group()
def cdga() -> None:
    """Graded models of the glued double sphere."""


@cdga.command("verify")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option(
    "--checks",
    default="axioms,models,pullback,ideal,quotient,pi-xi,eta",
    show_default=True,
    help="Comma-separated subset of the checks to run.",
)
@common_options
@click.pass_context
def cdga_verify(ctx, n, k, checks, fmt, server) -> None:
    names = [c.strip() for c in checks.split(",") if c.strip()]
    req = _parse(S.CdgaVerifyRequest, {"n": n, "k": k, "checks": names}, "request")
    resp = _dispatch(H.cdga_verify, "/cdga/verify", req, S.CdgaVerifyResponse, server)
    _emit(ctx, resp, fmt, exit_code=0 if resp.ok else 1)


@cdga.command("dump")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--model", type=click.Choice(["a", "c", "b", "eprime", "bprime", "d", "dj"]), default="a", show_default=True)
@common_options
@click.pass_context
def cdga_dump(ctx, n, k, model, fmt, server) -> None:
    req = _parse(S.CdgaDumpRequest, {"n": n, "k": k, "model": model}, "request")
    resp = _dispatch(H.cdga_dump, "/cdga/dump", req, S.CdgaDumpResponse, server)
    _emit(ctx, resp, fmt)


# -- ring --------------------------------------------------------------------


@main.group()
def ring() -> None:
    """Cohomology rings of quasitoric manifolds and connected sums."""


@ring.command("quasitoric")
@click.option("--polytope", "polytope_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--xi", "xi_path", required=True, type=click.Path(exists=True, dir_okay=False))
@common_options
@click.pass_context
def ring_quasitoric(ctx, polytope_path, xi_path, fmt, server) -> None:
    req = _parse(
        S.RingQuasitoricRequest,
        {"polytope": _load_json(polytope_path), "xi": _load_json(xi_path)},
        "request",
    )
    resp = _dispatch(H.ring_quasitoric, "/ring/quasitoric", req, S.RingResponse, server)
    _emit(ctx, resp, fmt)


@ring.command("connect")
@click.option("--lhs", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--rhs", required=True, type=click.Path(exists=True, dir_okay=False))
@common_options
@click.pass_context
def ring_connect(ctx, lhs, rhs, fmt, server) -> None:
    req = _parse(S.RingConnectRequest, {"lhs": _load_json(lhs), "rhs": _load_json(rhs)}, "request")
    resp = _dispatch(H.ring_connect, "/ring/connect", req, S.RingResponse, server)
    _emit(ctx, resp, fmt)


@ring.command("equivariant-connect")
@click.option("--lhs", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--rhs", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@common_options
@click.pass_context
def ring_equivariant(ctx, lhs, rhs, n, k, fmt, server) -> None:
    req = _parse(
        S.RingEquivariantRequest,
        {"lhs": _load_json(lhs), "rhs": _load_json(rhs), "n": n, "k": k},
        "request",
    )
    resp = _dispatch(H.ring_equivariant, "/ring/equivariant-connect", req, S.RingResponse, server)
    _emit(ctx, resp, fmt)


# -- verify ------------------------------------------------------------------


@main.group()
def verify() -> None:
    """Regression suites."""


@verify.command("all")
@click.option("--max-n", type=int, default=6, show_default=True)
@click.option("--allow-known-discrepancies", is_flag=True, default=False)
@common_options
@click.pass_context
def verify_all(ctx, max_n, allow_known_discrepancies, fmt, server) -> None:
    """Run every invariant check up to the size bound; nonzero exit on any
    failure, including registered discrepancies unless allowed."""
    req = _parse(
        S.VerifyAllRequest,
        {"max_n": max_n, "allow_known_discrepancies": allow_known_discrepancies},
        "request",
    )
    resp = _dispatch(H.verify_all, "/verify/all", req, S.VerifyAllResponse, server)
    _emit(ctx, resp, fmt, exit_code=0 if resp.ok else 1)


if __name__ == "__main__":
    main()
