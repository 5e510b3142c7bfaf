# config.py
from fractions import Fraction
import json
from pydantic import BaseModel, Field, ValidationError, PositiveInt, field_validator


class VerificationConfig(BaseModel):
    seed: int = Field(
        20240101, ge=0, lt=2**64, description="Seed of every random draw in the suite"
    )
    depth: PositiveInt = Field(64, description="Depth of countable family checks")
    sample_count: PositiveInt = Field(
        1000, description="Random pairs drawn when additivity is sampled"
    )
    property_cases: PositiveInt = Field(
        1000, description="Cases per randomized invariant in the acceptance suite"
    )
    ls_functions: PositiveInt = Field(
        100, description="Random step functions in the countable additivity suite"
    )
    ls_families: PositiveInt = Field(
        100, description="Telescoping families per step function"
    )
    workers: PositiveInt = Field(4, description="Worker threads running checks")


class LimitsConfig(BaseModel):
    universe_cap: PositiveInt = Field(
        24, description="Largest finite universe accepted by set_ring"
    )
    dimension_cap: PositiveInt = Field(3, description="Largest box dimension")


class ProbeConfig(BaseModel):
    tolerance: str = Field(
        "1/1000000", description="Probe box width for tabulated derivatives"
    )
    samples: PositiveInt = Field(200, description="Boxes drawn per derivability probe")

    @field_validator("tolerance")
    @classmethod
    def positive_rational(cls, value: str) -> str:
        try:
            parsed = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational: {value}")
        if parsed <= 0:
            raise ValueError("tolerance must be positive")
        return value

    @property
    def tolerance_value(self) -> Fraction:
        return Fraction(self.tolerance)


class CliConfig(BaseModel):
    verification: VerificationConfig = Field(default_factory=VerificationConfig)
    limits: LimitsConfig = Field(default_factory=LimitsConfig)
    probe: ProbeConfig = Field(default_factory=ProbeConfig)


def load_config(config_path: str) -> CliConfig:
    """Load and validate configuration from file"""
    try:
        with open(config_path, "rb") as f:
            data = json.load(f)
        return CliConfig.model_validate(data)
    except FileNotFoundError:
        raise ValueError(f"Configuration file not found at {config_path}")
    except json.JSONDecodeError:
        raise ValueError(f"Invalid JSON in configuration file {config_path}")
    except ValidationError as e:
        raise ValueError(f"Configuration validation failed:\n{e}")


def with_overrides(
    config: CliConfig,
    seed: int | None = None,
    depth: int | None = None,
    samples: int | None = None,
) -> CliConfig:
    """Apply command-line flags on top of a loaded configuration."""
    changes = {}
    if seed is not None:
        changes["seed"] = seed
    if depth is not None:
        changes["depth"] = depth
    if samples is not None:
        changes["sample_count"] = samples
    if not changes:
        return config
    try:
        verification = VerificationConfig.model_validate(
            {**config.verification.model_dump(), **changes}
        )
    except ValidationError as e:
        raise ValueError(f"Configuration validation failed:\n{e}")
    return config.model_copy(update={"verification": verification})
