"""
Run configuration shared by the CLI and the pipeline
Defaults < LEXIGRAPH_SEED environment variable < --config JSON file < command-line flags
"""

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path

from src.shared.errors.errors import ParameterError

SEED_ENV_VAR = "LEXIGRAPH_SEED"


@dataclass(frozen=True)
class RunConfig:
    corpus: str = None
    text_field: str = "text"
    label_field: str = None
    id_field: str = "id"
    stopwords: str = None
    categories: str = None
    min_df: float = 1
    max_df: float = 1.0
    top_n: int = 50
    n_perm: int = 0
    alpha: float = 0.05
    min_pmi: float = 0.0
    min_count: int = 2
    seed: int = 0
    tau: float = 0.5
    tol: float = 1e-10
    max_iter: int = 10000
    damping: float = 1.0
    radius: int = 1
    cut_k: int = 2
    out_dir: str = "artifacts"


def parse_df_bound(value):
    """
    Parses a document-frequency bound.
    Integers are absolute document counts; reals in [0, 1] are corpus fractions.
    """
    if isinstance(value, bool):
        raise ParameterError(f"invalid document-frequency bound: {value!r}")
    if isinstance(value, (int, float)):
        return value
    text = str(value).strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError as e:
        raise ParameterError(f"invalid document-frequency bound: {value!r}") from e


def _check(condition: bool, message: str):
    """Raises ParameterError with message when condition is false."""
    if not condition:
        raise ParameterError(message)


def _check_df_bound(name: str, bound):
    """Validates one document-frequency bound."""
    if isinstance(bound, int):
        _check(bound >= 0, f"{name} must be >= 0, got {bound}")
    else:
        _check(0.0 <= bound <= 1.0, f"{name} as a fraction must lie in [0, 1], got {bound}")


def validate_run_config(config: RunConfig) -> RunConfig:
    """Checks every numeric parameter against its operation's precondition range."""
    _check_df_bound("min_df", config.min_df)
    _check_df_bound("max_df", config.max_df)
    if type(config.min_df) is type(config.max_df):
        _check(config.min_df <= config.max_df, "min_df must not exceed max_df")
    _check(config.top_n >= 1, "top_n must be >= 1")
    _check(config.n_perm >= 0, "n_perm must be >= 0")
    _check(0.0 < config.alpha <= 1.0, "alpha must lie in (0, 1]")
    _check(config.min_count >= 1, "min_count must be >= 1")
    _check(0.0 < config.tau <= 1.0, "tau must lie in (0, 1]")
    _check(config.tol > 0.0, "tol must be > 0")
    _check(config.max_iter >= 1, "max_iter must be >= 1")
    _check(config.damping >= 0.0, "damping must be >= 0")
    _check(config.radius >= 1, "radius must be >= 1")
    _check(config.cut_k >= 1, "cut_k must be >= 1")
    return config


def _field_names() -> set:
    """Returns the names of all RunConfig fields."""
    return {f.name for f in dataclasses.fields(RunConfig)}


def _coerce(values: dict) -> dict:
    """Normalises value types that arrive as strings from files or the environment."""
    coerced = dict(values)
    for key in ("min_df", "max_df"):
        if key in coerced:
            coerced[key] = parse_df_bound(coerced[key])
    if "seed" in coerced:
        try:
            coerced["seed"] = int(coerced["seed"])
        except (TypeError, ValueError) as e:
            raise ParameterError(f"seed must be an integer, got {coerced['seed']!r}") from e
    return coerced


def load_config_file(path) -> dict:
    """Reads a flat JSON object of RunConfig field values."""
    try:
        values = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParameterError(f"config {path}: invalid JSON ({e.msg})") from e
    except UnicodeDecodeError as e:
        raise ParameterError(f"config {path}: not valid UTF-8") from e
    if not isinstance(values, dict):
        raise ParameterError(f"config {path}: expected a JSON object")
    unknown = sorted(set(values) - _field_names())
    if unknown:
        raise ParameterError(f"config {path}: unknown keys {', '.join(unknown)}")
    return values


def environment_overrides(environ=None) -> dict:
    """Returns the seed from the environment when set."""
    environ = os.environ if environ is None else environ
    value = environ.get(SEED_ENV_VAR)
    return {"seed": value} if value not in (None, "") else {}


def build_run_config(file_values: dict = None, flag_values: dict = None,
                     environ=None) -> RunConfig:
    """
    Layers defaults, environment, config file and flags into a validated RunConfig.
    Flags whose value is None are treated as not given.
    """
    values = environment_overrides(environ)
    values.update(file_values or {})
    values.update({k: v for k, v in (flag_values or {}).items() if v is not None})
    return validate_run_config(RunConfig(**_coerce(values)))
