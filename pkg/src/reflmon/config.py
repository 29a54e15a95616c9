"""Run configuration shared by the command line and the experiment scripts."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from .quiver import FAMILIES, MIN_RANK

SUBCOMMANDS = ("mutate", "class", "present", "verify", "autos", "green", "oracle")
FORMATS = ("json", "dot", "text")
THREADS_ENV = "REFLMON_THREADS"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    family: str = "A"
    rank: int = 3
    pivots: tuple[str, ...] = ()
    word: tuple[str, ...] = ()
    input: Path | None = None
    output: Path | None = None
    format: str = "json"
    max_len: int = 14
    congruence: bool = False
    seed: int = 0
    reference: bool = False
    threads: int = field(default_factory=lambda: int(os.environ.get(THREADS_ENV, "1") or 1))

    def validate(self) -> "RunConfig":
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        if self.family not in FAMILIES:
            raise ConfigError(f"family must be one of {', '.join(FAMILIES)}")
        if self.rank < MIN_RANK[self.family]:
            raise ConfigError(f"rank for {self.family} must be at least {MIN_RANK[self.family]}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
        if self.max_len < 1:
            raise ConfigError("max length must be positive")
        if self.threads < 1:
            raise ConfigError(f"{THREADS_ENV} must be a positive integer")
        return self
