# --- eiscong_lib/schema.py ---
"""
eiscong_lib/schema.py: Wire models for every JSON payload the CLI prints.

Exact values travel as "p/q" strings so that no float ever touches them.
Library objects expose to_json(); the models here validate those dicts on the
way out and provide the published JSON Schemas.
"""
import json
import logging
from pathlib import Path
from typing import Annotated, Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

log = logging.getLogger("eiscong.schema")

RATIONAL_PATTERN = r"^-?\d+/\d+$"

RationalText = Annotated[str, Field(pattern=RATIONAL_PATTERN)]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CyclotomicModel(_Strict):
    order: int = Field(ge=1)
    coeffs: List[RationalText]


class CharacterModel(_Strict):
    modulus: int = Field(ge=1)
    order: int = Field(ge=1)
    values: List[Optional[int]]


class PlaceModel(_Strict):
    ell: int = Field(ge=2)
    m: int = Field(ge=1)
    min_poly: List[int]


class QExpansionModel(_Strict):
    level: int = Field(ge=1)
    weight: int = Field(ge=2)
    nebentypus: CharacterModel
    precision: int = Field(ge=0)
    coeffs: List[CyclotomicModel]


class ReducedQExpansionModel(_Strict):
    place: PlaceModel
    coeffs: List[List[int]]


class CuspMatrixModel(_Strict):
    u: int
    beta: int
    v: int
    delta: int


class BernoulliModel(_Strict):
    k: int
    character: CharacterModel
    value: CyclotomicModel


class GaussSumModel(_Strict):
    character: CharacterModel
    value: CyclotomicModel


class CuspConstantModel(_Strict):
    k: int
    M: int
    variant: str
    gamma: CuspMatrixModel
    value: CyclotomicModel


class EigenvaluesModel(_Strict):
    place: PlaceModel
    eigenvalues: Dict[str, List[int]]


class DecisionModel(_Strict):
    verdict: bool
    condition: str
    witness: Optional[int]
    place: PlaceModel
    exact_values: Dict[str, List[int]]


class ScanModel(_Strict):
    place: PlaceModel
    bound: int
    primes: List[int]


class VerifyModel(_Strict):
    variant: str
    M: int
    place: PlaceModel
    cuspidal: bool


class BatteryRowModel(_Strict):
    name: str
    cases: int
    max_gap: float
    tolerance: float
    passed: bool
    failures: List[str]


class BatteryModel(_Strict):
    seed: int
    passed: bool
    rows: List[BatteryRowModel]


class ErrorModel(_Strict):
    error: str
    detail: str = ""
    index: Optional[int] = None


PAYLOADS: Dict[str, type[BaseModel]] = {
    "cyclotomic": CyclotomicModel,
    "character": CharacterModel,
    "place": PlaceModel,
    "bernoulli": BernoulliModel,
    "gauss": GaussSumModel,
    "qexpansion": QExpansionModel,
    "reduced-qexpansion": ReducedQExpansionModel,
    "cusp-constant": CuspConstantModel,
    "eigenvalues": EigenvaluesModel,
    "decision": DecisionModel,
    "scan": ScanModel,
    "verify": VerifyModel,
    "battery": BatteryModel,
    "error": ErrorModel,
}


def validate(kind: str, data: Any) -> dict:
    """Validates a payload against its model and returns the canonical dict."""
    model = PAYLOADS[kind]
    return model.model_validate(data).model_dump(exclude_none=kind == "error")


def dumps(data: Any) -> str:
    """Deterministic JSON text: sorted keys, fixed separators."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def json_schemas() -> dict:
    return {name: model.model_json_schema() for name, model in sorted(PAYLOADS.items())}


def write_schemas(directory: str | Path) -> list[Path]:
    """Writes one <kind>.json file per payload into directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in json_schemas().items():
        path = directory / f"{name}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        written.append(path)
    log.info("Wrote %d schemas to %s", len(written), directory)
    return written
