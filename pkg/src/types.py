from typing import Literal

from pydantic import BaseModel, Field, model_validator

DriverName = Literal[
    "k4star",
    "k4star-clique",
    "k4star-biclique",
    "subdivision",
    "tw",
    "theorem12",
    "biclique",
    "ev-biclique",
]


class Config(BaseModel):
    C: int = Field(default=64, ge=1)
    C0: int = Field(default=3, ge=1)
    C1: int = Field(default=32, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    nmax: int = Field(default=8, ge=1, le=12)
    trials: int = Field(default=100, ge=1)
    max_vertices: int = Field(default=4096, ge=1)
    restarts: int = Field(default=64, ge=0)
    swap_budget: int = Field(default=10_000, ge=0)
    search_budget: int = Field(default=200_000, ge=1)
    exact_alpha_max_n: int = Field(default=12, ge=0)
    exact_alpha_max_vertices: int = Field(default=128, ge=0)
    peel_attempts: int = Field(default=4, ge=1)
    jobs: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _ordered_constants(self):
        if self.C1 < self.C0:
            raise ValueError(f"C1 ({self.C1}) must be at least C0 ({self.C0})")
        if self.C < self.C1:
            raise ValueError(f"C ({self.C}) must be at least C1 ({self.C1})")
        return self


class InstanceSpec(BaseModel):
    """Host/pattern generation knobs for stress campaigns."""

    vertices: int = Field(default=48, ge=1, le=512)
    density: float = Field(default=0.1, ge=0.0, le=1.0)
    n: int = Field(default=3, ge=1, le=16)
    k: int = Field(default=3, ge=1, le=6)
    planted: bool = False
    pattern: str | None = Field(default=None, max_length=200)
    target: str | None = Field(default=None, max_length=200)


class DetectRequest(BaseModel):
    pattern: str = Field(min_length=1, max_length=2000)
    host: str = Field(min_length=1, max_length=200_000)


class DichotomyRequest(BaseModel):
    host: str = Field(min_length=1, max_length=200_000)
    pattern: str | None = Field(default=None, max_length=2000)
    target: str | None = Field(default=None, max_length=2000)
    n: int | None = Field(default=None, ge=1, le=64)
    k: int | None = Field(default=None, ge=1, le=8)
    config: Config = Field(default_factory=Config)


class RamseyRequest(BaseModel):
    pattern: str = Field(min_length=1, max_length=2000)
    target: str = Field(min_length=1, max_length=2000)
    nmax: int = Field(default=8, ge=1, le=9)


class StressRequest(BaseModel):
    driver: DriverName
    trials: int = Field(default=20, ge=1, le=1000)
    seed: int = Field(default=0, ge=0, lt=2**64)
    spec: InstanceSpec = Field(default_factory=InstanceSpec)
    config: Config = Field(default_factory=Config)


class StressReport(BaseModel):
    driver: str
    trials: int
    seed: int
    per_tag: dict[str, int]
    witness_failures: int
    failure_reasons: dict[str, int]
    wall_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.witness_failures == 0


class RamseyReport(BaseModel):
    pattern: str
    target: str
    nmax: int
    value: int | None
    exceeded: bool
    witness: str | None = None


class CliqueRatioReport(BaseModel):
    r: int
    n: int
    constant: int
    lhs: int
    rhs_numerator: int
    rhs_denominator: int
    satisfied: bool
    alpha: int
    precondition: bool


class IndependentSetReport(BaseModel):
    vertices: tuple[int, ...]
    target: float | None
    target_met: bool
    source: str
