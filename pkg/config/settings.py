from pathlib import Path
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configuration settings for the median toolkit."""

    # Project paths
    BASE_DIR: Path = Path(__file__).parent.parent
    FIXTURES_DIR: Path = BASE_DIR / "tests" / "fixtures"

    # Guards (exceeding any of them is an explicit error)
    MAX_ULTRAFILTER_WALLS: int = Field(default=24, description="Wall count accepted by ultrafilter backtracking")
    MAX_DUAL_POINTS: int = Field(default=256, description="Point count accepted by double dual and medianization")
    MAX_COMPLETION_POINTS: int = Field(default=64, description="Point count accepted by the zero-completion")
    MAX_CONVEX_SETS: int = Field(default=20000, description="Cap on enumerated convex sets")

    # Brute-force oracles
    INVERSE_LIMIT_CROSSCHECK_POINTS: int = 8
    ANTICHAIN_ORACLE_LIMIT: int = 16
    BIPARTITION_ORACLE_LIMIT: int = 12

    # Harness
    GATE_PAIR_SAMPLES: int = 200
    DEFAULT_SEED: int = 0
    RECORD_TIMINGS: bool = False  # wall-clock breaks byte-reproducibility

    # Documents
    FORMAT_VERSION: str = "1"

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="MEDIAN_",
        case_sensitive=True,
        extra="ignore",
    )


# Global settings instance
settings = Settings()
