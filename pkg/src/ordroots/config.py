"""Run configuration: size caps, seeds and search bounds with their defaults."""

from __future__ import annotations

from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class RunConfig:
    degree_cap: int = 8
    rank_cap: int = 24
    enumeration_cap: int = 10**6
    seed: int = 0
    xbound: int = 10**5
    lmax: int = 6
    output: str | None = None
    verbosity: int = 0

    def __post_init__(self):
        for name in ("degree_cap", "rank_cap", "enumeration_cap", "xbound", "lmax"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def with_overrides(self, **kw) -> "RunConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


DEFAULT = RunConfig()
