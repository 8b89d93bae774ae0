"""FastAPI application exposing the five run modes.

Runs are stateless and idempotent: the same request body (same seed)
returns a byte-identical report outside the ``metadata`` section. Invalid
configurations come back as 400 with a message naming the offending field
or value; request-shape errors are FastAPI's usual 422.

Serve with ``uvicorn spingame.service.app:app``.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import SpinGameError
from ..runner import RunResult, run
from ..runspec import MODES, RunSpec
from .schemas import (
    ChshGameRequest,
    CvalTableRequest,
    GameRequest,
    GameRunResponse,
    LhvRequest,
    RunReport,
    ServiceInfo,
    Theorem1Request,
)

app = FastAPI(
    title="spingame",
    version=__version__,
    description=(
        "Two-qubit spin simulations: exact correlation-conservation "
        "verification, the correlation-conserving mapping game with "
        "classical and quantum players, local-hidden-variable searches, "
        "and the arithmetic CHSH game."
    ),
)


def _execute(spec: RunSpec) -> RunResult:
    try:
        return run(spec)
    except SpinGameError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/", response_model=ServiceInfo)
def info() -> ServiceInfo:
    return ServiceInfo(name="spingame", version=__version__, modes=list(MODES))


@app.post("/theorem1", response_model=RunReport)
def verify_theorem1(request: Theorem1Request) -> dict:
    spec = RunSpec(mode="verify-theorem1", state="singlet", basis=request.basis,
                   xi=request.xi, rounds=request.trials, seed=request.seed,
                   workers=request.workers)
    return _execute(spec).report


@app.post("/game", response_model=GameRunResponse)
def play_game(request: GameRequest) -> dict:
    spec = RunSpec(mode="run-game", state=request.state, basis=request.basis,
                   xi=request.xi, angles=request.angles, rounds=request.rounds,
                   seed=request.seed, strategy_a=request.strategy_a,
                   strategy_b=request.strategy_b, sigma_k=request.sigma_k,
                   workers=request.workers)
    result = _execute(spec)
    return {"report": result.report, "transcript_csv": result.transcript_csv}


@app.post("/lhv", response_model=RunReport)
def lhv_search(request: LhvRequest) -> dict:
    spec = RunSpec(mode="lhv-search", state=request.state, basis=request.basis,
                   xi=request.xi, angles=request.angles, seed=request.seed,
                   workers=request.workers)
    return _execute(spec).report


@app.post("/chsh", response_model=RunReport)
def arithmetic_chsh_game(request: ChshGameRequest) -> dict:
    spec = RunSpec(mode="chsh-game", state=request.state, rounds=request.rounds,
                   seed=request.seed, strategy_a=request.strategy_a,
                   strategy_b=request.strategy_b, workers=request.workers)
    return _execute(spec).report


@app.post("/cval-table", response_model=RunReport)
def cval_table(request: CvalTableRequest) -> dict:
    spec = RunSpec(mode="cval-table", state=request.state, basis=request.basis,
                   xi=request.xi, angles=request.angles, seed=request.seed,
                   particle=request.particle, workers=request.workers)
    return _execute(spec).report
