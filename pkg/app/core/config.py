from typing import Optional
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings."""

    # Project information
    PROJECT_NAME: str = "prohecke-workbench"
    VERSION: str = "0.1.0"
    DESCRIPTION: str = "Pro-p Iwahori-Hecke modules in characteristic p"
    DEBUG: bool = False

    # Files
    PRESET_DIR: str = "presets"
    OUTPUT_DIR: str = "out"

    # Desk-scale bounds
    FIELD_SIZE_LIMIT: int = 2**20
    MAX_UPPER_SET_GROUND: int = 4
    MAX_MODULE_DIM: int = 64
    MAX_DIM_BOUND: int = 8

    # Affine Weyl group
    LENGTH_ORACLE_RADIUS: int = 6
    OMEGA_LIFT_RADIUS: int = 3

    # Hecke algebra
    CENTRAL_SUPPORT_SLACK: int = 0
    CENTRAL_SUPPORT_BOUND: Optional[int] = None

    # Induction
    REDUCTION_MAX_POWER: int = 32
    DEEP_TRANSLATION_BOX: int = 3

    # Randomized searches
    DEFAULT_SEED: int = 20240601
    ISOMORPHISM_TRIALS: int = 32

    # Concurrency
    MAX_WORKERS: int = 1

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


settings = Settings()
