import pathlib
from typing import Optional
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    """Engine settings and configuration"""
    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="DYCKGRASS_",
        case_sensitive=False,
        extra="ignore"
    )

    # App settings
    app_name: str = "dyckgrass"
    app_version: str = "1.0.0"
    app_description: str = "Dyck partition combinatorics for Grassmannian Schubert varieties"

    # Verification scope
    max_n: int = Field(default=6, ge=2, description="Largest n covered by selftest")
    neat_order_cap: int = Field(default=50, ge=1, description="Neat orders checked per path")
    default_seed: int = 0
    jobs: int = Field(default=1, ge=1)
    demaformula_trials: int = Field(default=100, ge=1)
    demaformula_max_length: int = Field(default=4, ge=1)
    braid_exhaustive_max_n: int = Field(default=5, ge=2)
    braid_samples: int = Field(default=20, ge=1)
    braid_sample_max_length: int = Field(default=6, ge=1)
    positivity_max_n: int = Field(default=6, ge=2)
    commutativity_trials: int = Field(default=50, ge=1)

    # Output
    fixture_dir: str = "fixtures"
    log_level: str = "WARNING"

    # Table persistence, disabled when unset
    database_url: Optional[str] = None

    @property
    def fixture_path(self) -> pathlib.Path:
        """Directory receiving golden fixture files"""
        return pathlib.Path(self.fixture_dir)

    @property
    def engine_url(self) -> str:
        """SQLAlchemy URL, a local SQLite file when none is configured"""
        return self.database_url or "sqlite:///./dyckgrass.db"

    @property
    def persistence_enabled(self) -> bool:
        """Whether computed tables are written to the database"""
        return bool(self.database_url)

# Global settings instance
settings = Settings()
