"""Job configuration shared by the CLI and the experiment scripts."""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .coxeter import CoxeterWord, InvalidWord
from .rootsys import FAMILIES, IndexOutOfRange, RootSystemContext, UnsupportedType, build_root_system

FORMATS = ("json", "text")
LEVELS = ("none", "structural", "symbolic")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class JobConfig:
    family: str
    rank: int
    coxeter: str = "all"
    seed: int = 0
    format: str = "json"
    level: str = "structural"
    out: str | None = None
    limit: int | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown type {self.family!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.level not in LEVELS:
            raise ConfigError(f"level must be one of {LEVELS}")
        if self.jobs < 1:
            raise ConfigError("jobs must be positive")
        if self.limit is not None and self.limit < 1:
            raise ConfigError("limit must be positive")

    def context(self) -> RootSystemContext:
        try:
            return build_root_system(self.family, self.rank)
        except (UnsupportedType, IndexOutOfRange) as e:
            raise ConfigError(str(e)) from e

    def words(self) -> list[CoxeterWord]:
        from .verify import parse_coxeter

        ctx = self.context()
        try:
            return parse_coxeter(ctx, self.coxeter, self.seed)
        except (InvalidWord, ValueError) as e:
            raise ConfigError(f"bad coxeter word {self.coxeter!r}: {e}") from e

    def as_dict(self) -> dict:
        return asdict(self)
