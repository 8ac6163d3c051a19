from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    # Application
    project_name: str = "barnette-hamilton"
    log_level: str = "WARNING"
    trace: bool = False

    # Oracle caps
    hamilton_vertex_cap: int = 32
    forest_vertex_cap: int = 20
    hamilton_cycle_cap: int = 100_000
    # BARNETTE_CAP overrides both vertex caps when set
    cap_override: Optional[int] = Field(
        default=None, validation_alias=AliasChoices("barnette_cap", "cap_override")
    )

    # Colouring engine
    iteration_cap_factor: int = 4
    exhaustive_cycle_limit: int = 20

    # Runtime
    workers: int = 4
    seed: int = 0
    svg_dir: Optional[str] = None

    @property
    def hamilton_cap(self) -> int:
        return self.cap_override if self.cap_override else self.hamilton_vertex_cap

    @property
    def forest_cap(self) -> int:
        return self.cap_override if self.cap_override else self.forest_vertex_cap

    @property
    def oracle_caps(self) -> dict:
        return {"hamilton": self.hamilton_cap, "forest": self.forest_cap}

    @property
    def is_tracing(self) -> bool:
        return self.trace or self.log_level.upper() == "DEBUG"

    def iteration_cap(self, vertex_count: int) -> int:
        """Step budget of the colouring engine for a graph of the given order."""
        return max(1, self.iteration_cap_factor * vertex_count)

    class Config:
        env_file = ".env"
        case_sensitive = False
        populate_by_name = True


settings = Settings()
