from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env.local",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Runtime
    ENVIRONMENT: str = "development"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

    # Output
    JSON_INDENT: int = 2

    # Ambient projective dimension used when a command does not say
    DEFAULT_DIMENSION: int = 3

    # Exhaustive search window
    ORACLE_WINDOW_LO: int = 0
    ORACLE_WINDOW_HI: int = 5
    ORACLE_MAX_ABS: int = 3
    ORACLE_MAX_HEIGHT: int = 3
    ORACLE_MAX_COUNTEREXAMPLES: int = 20

    # Input files
    MAX_INPUT_BYTES: int = 1024 * 1024
    ALLOWED_INPUT_EXTENSIONS: str = ".json"

    # Chain builders refuse to recurse past this many steps
    CHAIN_MAX_STEPS: int = 10000

    def allowed_extensions(self) -> set:
        return {
            ext.strip().lower()
            for ext in self.ALLOWED_INPUT_EXTENSIONS.split(",")
            if ext.strip()
        }


@lru_cache()
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
