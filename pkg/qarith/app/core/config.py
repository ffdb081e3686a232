"""Application configuration loading for the arithmetic toolkit."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, Field, validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .toffoli import DecompKind

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "app.yaml"
DEFAULT_TOPOLOGY_DIR = Path(__file__).resolve().parents[2] / "data" / "topologies"


class SimulatorConfig(BaseModel):
    width_cap: int = Field(default=24, gt=0, le=30)
    fidelity_tolerance: float = Field(default=1e-9, gt=0)
    norm_tolerance: float = Field(default=1e-12, gt=0)
    probability_tolerance: float = Field(default=1e-10, gt=0)


class ExpansionConfig(BaseModel):
    default_decomp: DecompKind = DecompKind.A4T1
    legacy_0at3: bool = True
    odb_kind: DecompKind = DecompKind.RT3
    odb_phase_fix: bool = False

    @validator("default_decomp")
    def validate_default(cls, value: DecompKind) -> DecompKind:
        if not value.exact:
            raise ValueError("default decomposition must be exact (st, 0at3, 4at1)")
        return value

    @validator("odb_kind")
    def validate_odb_kind(cls, value: DecompKind) -> DecompKind:
        if value not in (DecompKind.RT3, DecompKind.RT4, DecompKind.AND):
            raise ValueError("ODB compute must be rt3, rt4 or and")
        return value


class ScenarioConfig(BaseModel):
    n_min: int = Field(default=2, ge=2)
    n_max: int = Field(default=128, ge=2)
    n_step: int = Field(default=2, gt=0)

    @validator("n_max")
    def validate_range(cls, value: int, values: Dict[str, Any]) -> int:
        if value < values.get("n_min", 2):
            raise ValueError("n_max must not be below n_min")
        return value


class TradeoffConfig(BaseModel):
    meas_error: float = Field(default=0.4, ge=0, le=1)
    cnot_error: float = Field(default=0.01, ge=0, le=1)
    cnot_overhead: float = Field(default=5, ge=1)


class TopologyConfig(BaseModel):
    data_dir: Path = DEFAULT_TOPOLOGY_DIR


class AppConfig(BaseModel):
    simulator: SimulatorConfig = Field(default_factory=SimulatorConfig)
    expansion: ExpansionConfig = Field(default_factory=ExpansionConfig)
    scenarios: ScenarioConfig = Field(default_factory=ScenarioConfig)
    tradeoff: TradeoffConfig = Field(default_factory=TradeoffConfig)
    topology: TopologyConfig = Field(default_factory=TopologyConfig)

    @classmethod
    def from_yaml(cls, path: Path) -> "AppConfig":
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        return cls.parse_obj(deep_update(data, EnvOverrides().as_patch()))


class EnvOverrides(BaseSettings):
    """``QARITH_*`` environment variables layered over the YAML file."""

    model_config = SettingsConfigDict(env_prefix="QARITH_")

    width_cap: Optional[int] = None
    topology_dir: Optional[Path] = None

    def as_patch(self) -> Dict[str, Any]:
        patch: Dict[str, Any] = {}
        if self.width_cap is not None:
            patch["simulator"] = {"width_cap": self.width_cap}
        if self.topology_dir is not None:
            patch["topology"] = {"data_dir": str(self.topology_dir)}
        return patch


def load_config(path: Optional[Path] = None) -> AppConfig:
    """Load ``path``, or the packaged defaults when no path is given.

    An explicit path that does not exist is an error; a missing packaged file
    falls back to the model defaults.
    """

    if path is not None:
        return AppConfig.from_yaml(path)
    if DEFAULT_CONFIG_PATH.exists():
        return AppConfig.from_yaml(DEFAULT_CONFIG_PATH)
    return AppConfig.parse_obj(EnvOverrides().as_patch())


def deep_update(original: Dict[str, Any], new_values: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively update ``original`` with ``new_values`` returning a new dict."""

    result: Dict[str, Any] = json.loads(json.dumps(original))
    for key, value in new_values.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = deep_update(result[key], value)
        else:
            result[key] = value
    return result
