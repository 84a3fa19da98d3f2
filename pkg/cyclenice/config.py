"""
Runtime settings.

Defaults can be overridden through ``CYCLENICE_<FIELD>`` environment
variables; command-line flags override per call.
"""
import os
import logging
from functools import lru_cache
from typing import Any, Dict

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

ENV_PREFIX = "CYCLENICE_"


class Settings(BaseModel):
    """Search limits and logging defaults."""
    cycle_cap: int = Field(1_000_000, description="Maximum number of even cycles the oracle enumerates", ge=1)
    ear_budget: int = Field(200_000, description="Maximum search nodes for an ear decomposition", ge=1)
    claim_path_cap: int = Field(20_000, description="Maximum uv-paths inspected when building a parity witness", ge=1)
    max_proposals: int = Field(500, description="Generator proposals per step before giving up", ge=1)
    log_level: str = Field("INFO", description="Root logging level")

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Build settings from defaults plus environment overrides.

        Returns:
            Validated Settings instance

        Raises:
            pydantic.ValidationError: If an override has the wrong type
        """
        overrides: Dict[str, Any] = {}
        for name in cls.model_fields:
            value = os.environ.get(f"{ENV_PREFIX}{name.upper()}")
            if value is not None:
                overrides[name] = value
        if overrides:
            logger.debug(f"Settings overrides from environment: {sorted(overrides)}")
        return cls(**overrides)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()
