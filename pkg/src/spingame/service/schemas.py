"""Request and response models for the HTTP API.

String fields (state, basis, xi) follow the conventions documented in
``spingame.runspec``. Responses wrap the runner's report verbatim; the
game endpoint additionally carries the CSV transcript.
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class CommonOptions(BaseModel):
    state: str = "singlet"
    basis: str = "yx"
    xi: str = "two-point"
    seed: int = 0
    workers: str = "auto"


class Theorem1Request(CommonOptions):
    trials: int = Field(100, ge=1, le=100_000)


class GameRequest(CommonOptions):
    angles: Optional[tuple[float, float, float, float]] = None
    rounds: int = Field(20_000, ge=1, le=2_000_000)
    strategy_a: str = "quantum"
    strategy_b: str = "quantum"
    sigma_k: float = Field(3.0, gt=0)


class LhvRequest(CommonOptions):
    angles: Optional[tuple[float, float, float, float]] = None


class ChshGameRequest(BaseModel):
    state: str = "singlet"
    rounds: int = Field(20_000, ge=1, le=2_000_000)
    seed: int = 0
    strategy_a: str = "quantum"
    strategy_b: str = "quantum"
    workers: str = "auto"


class CvalTableRequest(CommonOptions):
    angles: Optional[list[float]] = None
    particle: int = Field(1, ge=1, le=2)


class RunReport(BaseModel):
    mode: str
    config: dict[str, Any]
    config_digest: str
    results: dict[str, Any]
    metadata: dict[str, Any]


class GameRunResponse(BaseModel):
    report: RunReport
    transcript_csv: str


class ServiceInfo(BaseModel):
    name: str
    version: str
    modes: list[str]
