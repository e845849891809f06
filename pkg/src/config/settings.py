"""Configuration settings for the representation engine."""
from typing import Literal

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class ComputeDefaults(BaseModel):
    """Default truncation windows and check parameters."""

    depth: int = Field(2, ge=0, description="d1-depth window D")
    height: int = Field(2, ge=0, description="weight-depth window H")
    t2_degree: int = Field(2, ge=0, description="t2-degree window K")
    loop_window: int = Field(3, ge=1, description="Laurent window S for loop modules")
    fusion_degree: int = Field(6, ge=0, description="filtration degree bound R")
    series_order: int = Field(4, ge=0, description="order of Lambda series checks")
    jacobi_trials: int = Field(500, ge=1)
    random_vectors: int = Field(20, ge=1)
    seed: int = 42
    max_basis_size: int = Field(50000, ge=1, description="resource bound on window bases")
    max_closure_steps: int = Field(200000, ge=1, description="resource bound on letter applications in Weyl relations")


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Output settings
    output_format: Literal["json", "csv", "both"] = "json"
    output_dir: str = "./data"

    # Logging
    log_level: str = "WARNING"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False
    )


# Global settings instance
settings = Settings()

# Computation defaults are fixed in code, never read from the environment
compute_defaults = ComputeDefaults()
