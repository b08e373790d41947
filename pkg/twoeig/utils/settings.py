"""
Search parameters and their sources.

Precedence when assembling SearchParams: explicit overrides (CLI flags) >
config file > environment (.env is loaded once) > built-in defaults.
"""
import os
from typing import Any, Dict, Optional

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from twoeig.utils.errors import InvalidParameterError
from twoeig.utils.logger import get_logger

# Load environment variables from .env file
load_dotenv()

logger = get_logger(__name__)


class SearchParams(BaseModel):
    """
    Budget and tolerances of the orthogonal-matrix search.
    """
    model_config = ConfigDict(frozen=True)

    max_iterations: int = Field(5000, ge=1, description="Projection iterations per restart.")
    restarts: int = Field(200, ge=1, description="Independent seeded restarts.")
    tolerance: float = Field(1e-9, gt=0, description="Target for max|X^2 - I| and the strict-pattern threshold.")
    seed: int = Field(0, description="Restart r draws from seed + r.")
    polish: bool = Field(True, description="Run Gauss-Newton steps on pattern coordinates near convergence.")
    workers: int = Field(1, ge=1, description="Threads running restarts concurrently.")
    census_restarts: int = Field(20, ge=1, description="First-pass restarts during a census.")
    escalation_restarts: int = Field(200, ge=1, description="Restarts of the census escalation pass.")


# Config-file key -> SearchParams field
CONFIG_KEYS: Dict[str, str] = {
    "max-iter": "max_iterations",
    "restarts": "restarts",
    "tol": "tolerance",
    "seed": "seed",
    "polish": "polish",
}

# Environment variable -> SearchParams field
ENV_KEYS: Dict[str, str] = {
    "TWOEIG_MAX_ITER": "max_iterations",
    "TWOEIG_RESTARTS": "restarts",
    "TWOEIG_TOL": "tolerance",
    "TWOEIG_SEED": "seed",
    "TWOEIG_POLISH": "polish",
    "TWOEIG_WORKERS": "workers",
    "TWOEIG_CENSUS_RESTARTS": "census_restarts",
    "TWOEIG_ESCALATION_RESTARTS": "escalation_restarts",
}


def _from_environment() -> Dict[str, Any]:
    values = {}
    for env_name, field in ENV_KEYS.items():
        raw = os.getenv(env_name)
        if raw is not None and raw.strip() != "":
            values[field] = raw.strip()
    return values


def _from_config_file(path: str) -> Dict[str, Any]:
    if not os.path.exists(path):
        raise InvalidParameterError(f"config file not found: {path}")
    values = {}
    for key, raw in dotenv_values(path).items():
        if key not in CONFIG_KEYS:
            raise InvalidParameterError(
                f"unknown config key '{key}' in {path}; expected one of {sorted(CONFIG_KEYS)}"
            )
        if raw is not None:
            values[CONFIG_KEYS[key]] = raw
    logger.debug(f"Loaded {len(values)} search settings from {path}")
    return values


def build_search_params(
    config_path: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> SearchParams:
    """
    Layers environment, config file and explicit overrides (None values are
    skipped) over the defaults and validates the result.
    """
    merged: Dict[str, Any] = _from_environment()
    if config_path:
        merged.update(_from_config_file(config_path))
    if overrides:
        merged.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return SearchParams(**merged)
    except ValidationError as e:
        raise InvalidParameterError(f"invalid search parameters: {e}") from e


def census_pass(params: SearchParams, escalation: bool = False) -> SearchParams:
    """The same budget with restarts replaced by the census (or escalation) count."""
    restarts = params.escalation_restarts if escalation else params.census_restarts
    return params.model_copy(update={"restarts": restarts})
