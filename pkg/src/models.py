"""
Pydantic models shared by the graph layer, the solvers and the benchmark harness
"""

import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

import yaml  # type: ignore
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

WEIGHT_TOLERANCE = 1e-12
SEED_MAX = 2**64 - 1

# Solver ids understood by the CLI, the harness and the API
SOLVER_IDS: Tuple[str, ...] = ("qa", "sa", "mfpb", "hmcop", "oracle")


def _blank_to_none(value: Any) -> Any:
    if isinstance(value, str) and value.strip() == "":
        return None
    return value


# =============================================================================
# Graph records
# =============================================================================


class Participant(BaseModel):
    """A participant of the social network with its role-impact factor"""

    model_config = ConfigDict(frozen=True)

    id: str = Field(min_length=1)
    rho: float = Field(ge=0.0, le=1.0)


class TrustEdge(BaseModel):
    """Trust and social intimacy between two participants (symmetric)"""

    model_config = ConfigDict(frozen=True)

    source: str = Field(min_length=1)
    target: str = Field(min_length=1)
    trust: float = Field(gt=0.0, le=1.0)
    intimacy: float = Field(gt=0.0, le=1.0)

    @model_validator(mode="after")
    def _reject_self_loop(self) -> "TrustEdge":
        if self.source == self.target:
            raise ValueError(f"self-loop on participant {self.source!r}")
        return self

    def reversed(self) -> "TrustEdge":
        return TrustEdge(
            source=self.target,
            target=self.source,
            trust=self.trust,
            intimacy=self.intimacy,
        )


class UniformRange(BaseModel):
    """Closed description of a uniform draw between ``low`` and ``high``"""

    model_config = ConfigDict(frozen=True)

    low: float = Field(ge=0.0, le=1.0)
    high: float = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _ordered(self) -> "UniformRange":
        if self.low > self.high:
            raise ValueError(f"range low {self.low} exceeds high {self.high}")
        return self


class QoTDistribution(BaseModel):
    """Uniform ranges used to draw QoT values for synthetic graphs.

    Trust and intimacy are drawn in ``(low, high]`` so they stay strictly
    positive; rho is drawn in ``[low, high)``.
    """

    model_config = ConfigDict(frozen=True)

    trust: UniformRange = UniformRange(low=0.0, high=1.0)
    intimacy: UniformRange = UniformRange(low=0.0, high=1.0)
    rho: UniformRange = UniformRange(low=0.0, high=1.0)

    @model_validator(mode="after")
    def _positive_edges(self) -> "QoTDistribution":
        for name in ("trust", "intimacy"):
            if getattr(self, name).high <= 0.0:
                raise ValueError(f"{name} range must allow values above 0")
        return self


class GeneratorSpec(BaseModel):
    """Parameters of a seeded synthetic trust graph"""

    node_count: int = Field(gt=0)
    edge_count: int = Field(gt=0)
    qot_distribution: QoTDistribution = Field(default_factory=QoTDistribution)
    seed: int = Field(default=0, ge=0, le=SEED_MAX)

    @property
    def max_pairs(self) -> int:
        return self.node_count * (self.node_count - 1) // 2

    @model_validator(mode="after")
    def _feasible_edge_count(self) -> "GeneratorSpec":
        if self.edge_count > self.max_pairs:
            raise ValueError(
                f"edge_count {self.edge_count} exceeds the {self.max_pairs} "
                f"symmetric pairs available for {self.node_count} nodes"
            )
        return self


# =============================================================================
# Quality of trust
# =============================================================================


class QoTVector(BaseModel):
    """Aggregated quality-of-trust values of a path"""

    model_config = ConfigDict(frozen=True)

    T_p: float = Field(gt=0.0, le=1.0)
    r_p: float = Field(gt=0.0, le=1.0)
    rho_p: float = Field(ge=0.0, le=1.0)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.T_p, self.r_p, self.rho_p)


class QoTWeights(BaseModel):
    """Weights of the utility function; they must sum to one"""

    model_config = ConfigDict(frozen=True)

    w_T: float = Field(ge=0.0, le=1.0)
    w_r: float = Field(ge=0.0, le=1.0)
    w_rho: float = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _sums_to_one(self) -> "QoTWeights":
        total = self.w_T + self.w_r + self.w_rho
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise ValueError(f"weights must sum to 1 (got {total!r})")
        return self

    @classmethod
    def normalized(cls, w_T: float, w_r: float, w_rho: float) -> "QoTWeights":
        """Build weights from any nonnegative triple by dividing by its sum"""
        total = w_T + w_r + w_rho
        if total <= 0:
            raise ValueError("at least one weight must be positive")
        return cls(w_T=w_T / total, w_r=w_r / total, w_rho=w_rho / total)

    @classmethod
    def parse(cls, text: str) -> "QoTWeights":
        """Parse ``"wT,wr,wrho"``"""
        w_T, w_r, w_rho = _parse_triple(text, "weights")
        return cls(w_T=w_T, w_r=w_r, w_rho=w_rho)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.w_T, self.w_r, self.w_rho)


class QoTConstraints(BaseModel):
    """End-to-end lower bounds on the aggregated QoT values"""

    model_config = ConfigDict(frozen=True)

    c_T: float = Field(ge=0.0, lt=1.0)
    c_r: float = Field(ge=0.0, lt=1.0)
    c_rho: float = Field(ge=0.0, lt=1.0)

    @classmethod
    def parse(cls, text: str) -> "QoTConstraints":
        """Parse ``"cT,cr,crho"``"""
        c_T, c_r, c_rho = _parse_triple(text, "constraints")
        return cls(c_T=c_T, c_r=c_r, c_rho=c_rho)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.c_T, self.c_r, self.c_rho)


def _parse_triple(text: str, what: str) -> Tuple[float, float, float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"{what} need exactly three comma-separated values, got {text!r}")
    try:
        a, b, c = (float(p) for p in parts)
    except ValueError:
        raise ValueError(f"{what} must be numbers, got {text!r}") from None
    return a, b, c


DEFAULT_CONSTRAINTS = QoTConstraints(c_T=0.05, c_r=0.001, c_rho=0.3)
DEFAULT_WEIGHTS = QoTWeights(w_T=0.3, w_r=0.3, w_rho=0.4)

# Weight IDs 1-4 of the utility comparison
DEFAULT_WEIGHT_GROUPS: Tuple[QoTWeights, ...] = (
    QoTWeights(w_T=0.25, w_r=0.25, w_rho=0.5),
    QoTWeights(w_T=0.25, w_r=0.5, w_rho=0.25),
    QoTWeights(w_T=0.5, w_r=0.25, w_rho=0.25),
    QoTWeights(w_T=0.3, w_r=0.3, w_rho=0.4),
)


# =============================================================================
# Solver results
# =============================================================================


class PathStatus(str, Enum):
    OPTIMAL_FOUND = "optimal-found"
    INFEASIBLE_INSTANCE = "infeasible-instance"
    NO_PATH = "no-path"
    ERROR = "error"


class OptResult(BaseModel):
    """Outcome of a path selection.

    ``optimal-found`` means a feasible path was selected; it is the exact
    optimum only when produced by the oracle.
    """

    path: Optional[List[str]] = None
    utility: Optional[float] = None
    feasible: bool = False
    status: PathStatus

    @model_validator(mode="after")
    def _consistent(self) -> "OptResult":
        found = self.status == PathStatus.OPTIMAL_FOUND
        if found != (self.path is not None):
            raise ValueError("path must be present exactly when status is optimal-found")
        if found and (not self.feasible or self.utility is None):
            raise ValueError("an optimal-found result must be feasible and carry its utility")
        return self

    @classmethod
    def found(cls, path: Any, utility: float) -> "OptResult":
        return cls(path=list(path), utility=utility, feasible=True, status=PathStatus.OPTIMAL_FOUND)

    @classmethod
    def infeasible(cls) -> "OptResult":
        return cls(status=PathStatus.INFEASIBLE_INSTANCE)

    @classmethod
    def no_path(cls) -> "OptResult":
        return cls(status=PathStatus.NO_PATH)


class StepTrace(BaseModel):
    """Per-step telemetry of an annealing run"""

    step: int
    temperature: float
    best_utility: Optional[float] = None
    gamma: Optional[float] = None
    jt: Optional[float] = None
    mean_overlap: Optional[float] = None


class SolveOutcome(BaseModel):
    result: OptResult
    solver_id: str
    steps_executed: int = Field(default=0, ge=0)
    moves_attempted: int = Field(default=0, ge=0)
    moves_accepted: int = Field(default=0, ge=0)
    warmup_moves: int = Field(default=0, ge=0)
    wall_time: float = Field(default=0.0, ge=0.0)
    trace: List[StepTrace] = Field(default_factory=list)

    @model_validator(mode="after")
    def _accepted_within_attempted(self) -> "SolveOutcome":
        if self.moves_accepted > self.moves_attempted:
            raise ValueError("moves_accepted cannot exceed moves_attempted")
        return self


# =============================================================================
# Solver parameters
# =============================================================================


class SaParams(BaseModel):
    """Simulated annealing parameters (geometric cooling)"""

    t0: float = Field(default=1.0, gt=0.0)
    cooling: float = Field(default=0.98, gt=0.0, lt=1.0)
    max_steps: int = Field(default=500, gt=0)
    moves_per_step: int = Field(default=50, gt=0)
    M: int = Field(default=20, ge=1)
    penalty_beta: float = Field(default=1.0, ge=0.0)
    seed: int = Field(default=0, ge=0, le=SEED_MAX)
    init_attempts: int = Field(default=1000, gt=0)
    init_samples: int = Field(default=32, ge=1)
    record_trace: bool = False


class QaParams(BaseModel):
    """Path-integral quantum annealing parameters.

    ``moves_multiplier`` times the subnetwork size N gives the attempted moves
    per Monte Carlo step, either in total (``move_budget="total"``) or for each
    replica (``"per_replica"``).
    """

    P: int = Field(default=30, ge=2)
    T: float = Field(default=10.0 / 3.0, gt=0.0)
    gamma0: float = Field(default=300.0, gt=0.0)
    xi: float = Field(default=0.1, gt=0.0)
    max_steps: int = Field(default=500, gt=0)
    M: int = Field(default=20, ge=1)
    moves_multiplier: int = Field(default=20, ge=1)
    penalty_beta: float = Field(default=1.0, ge=0.0)
    jt_cap: float = Field(default=1e6, gt=0.0)
    temperature_schedule: Literal["fixed", "linear"] = "fixed"
    T0: Optional[float] = Field(default=None, gt=0.0)
    move_budget: Literal["total", "per_replica"] = "total"
    warmup_sweeps: int = Field(default=50, ge=0)
    seed: int = Field(default=0, ge=0, le=SEED_MAX)
    init_attempts: int = Field(default=1000, gt=0)
    record_trace: bool = False

    @property
    def zeta(self) -> float:
        return self.gamma0 * self.xi

    @property
    def initial_temperature(self) -> float:
        """Start of the linear schedule; defaults to the equilibration temperature P*T"""
        return self.T0 if self.T0 is not None else self.P * self.T


class SolverConfig(BaseModel):
    sa: SaParams = Field(default_factory=SaParams)
    qa: QaParams = Field(default_factory=QaParams)
    hmcop_lambda: float = Field(default=1.0, ge=1.0)
    path_limit: Optional[int] = Field(default=None, gt=0)


# =============================================================================
# Benchmark suite and result records
# =============================================================================


def interpolate_scales(
    count: int = 25,
    nodes: Tuple[int, int] = (50, 400),
    edges: Tuple[int, int] = (63, 2356),
) -> List[Tuple[int, int]]:
    """Linear interpolation of network scales between two endpoints (round half up)"""
    if count == 1:
        return [(nodes[0], edges[0])]
    scales = []
    for i in range(count):
        frac = i / (count - 1)
        n = math.floor(nodes[0] + (nodes[1] - nodes[0]) * frac + 0.5)
        e = math.floor(edges[0] + (edges[1] - edges[0]) * frac + 0.5)
        scales.append((int(n), int(e)))
    return scales


class BenchSuite(BaseModel):
    """Benchmark suite file schema.

    Example YAML structure:
      master_seed: 2024
      scales: [[50, 63], [65, 159]]
      weight_groups:
        - {w_T: 0.3, w_r: 0.3, w_rho: 0.4}
      constraints: {c_T: 0.05, c_r: 0.001, c_rho: 0.3}
      pairs_per_scale: 4
      solvers: [qa, mfpb]
      restarts: 1
      max_hops: 6
      solver_config:
        qa: {max_steps: 200}
    """

    scales: List[Tuple[int, int]] = Field(default_factory=interpolate_scales)
    weight_groups: List[QoTWeights] = Field(default_factory=lambda: list(DEFAULT_WEIGHT_GROUPS))
    constraints: QoTConstraints = DEFAULT_CONSTRAINTS
    pairs_per_scale: int = Field(default=4, gt=0)
    solvers: List[str] = Field(default_factory=lambda: ["qa", "mfpb"])
    restarts: int = Field(default=1, gt=0)
    master_seed: int = Field(default=0, ge=0, le=SEED_MAX)
    max_hops: int = Field(default=6, gt=0)
    qot_distribution: QoTDistribution = Field(default_factory=QoTDistribution)
    solver_config: SolverConfig = Field(default_factory=SolverConfig)

    @field_validator("solvers")
    @classmethod
    def _known_solvers(cls, solvers: List[str]) -> List[str]:
        unknown = [s for s in solvers if s not in SOLVER_IDS]
        if unknown:
            raise ValueError(f"unknown solvers {unknown}; expected any of {list(SOLVER_IDS)}")
        if not solvers:
            raise ValueError("a suite needs at least one solver")
        return solvers

    @field_validator("scales")
    @classmethod
    def _valid_scales(cls, scales: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
        if not scales:
            raise ValueError("a suite needs at least one scale")
        for n, e in scales:
            if n < 2 or e < 1 or e > n * (n - 1) // 2:
                raise ValueError(f"infeasible scale ({n} nodes, {e} edges)")
        return scales

    @classmethod
    def load(cls, path: Any) -> "BenchSuite":
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Suite file not found: {path}")
        text = path.read_text(encoding="utf-8")
        data: Dict[str, Any]
        if path.suffix.lower() in {".yaml", ".yml"}:
            data = yaml.safe_load(text)  # type: ignore
        else:
            data = json.loads(text)
        return cls(**(data or {}))


class ResultRow(BaseModel):
    """One solver run of the benchmark"""

    scale_id: int
    nodes: int
    edges: int
    weight_id: int
    pair_id: int
    source: str
    target: str
    solver_id: str
    restart_id: int
    seed: int
    status: PathStatus
    feasible: bool
    utility: Optional[float] = None
    path: Optional[List[str]] = None
    wall_time: float = 0.0
    steps: int = 0
    error: Optional[str] = None

    @field_validator("utility", "error", mode="before")
    @classmethod
    def _blank(cls, value: Any) -> Any:
        return _blank_to_none(value)

    @field_validator("path", mode="before")
    @classmethod
    def _split_path(cls, value: Any) -> Any:
        value = _blank_to_none(value)
        if isinstance(value, str):
            return value.split()
        return value

    @model_validator(mode="after")
    def _utility_iff_found(self) -> "ResultRow":
        found = self.status == PathStatus.OPTIMAL_FOUND and self.feasible
        if found != (self.utility is not None):
            raise ValueError("utility must be present exactly for feasible optimal-found rows")
        return self

    def key(self) -> Tuple[int, int, int, str, int]:
        return (self.scale_id, self.weight_id, self.pair_id, self.solver_id, self.restart_id)


class SummaryRecord(BaseModel):
    """One metric of the long-format summary table"""

    scale_id: Optional[int] = None
    weight_id: int
    solver_id: str
    baseline_id: Optional[str] = None
    metric: str
    value: Optional[float] = None

    @field_validator("scale_id", "baseline_id", "value", mode="before")
    @classmethod
    def _blank(cls, value: Any) -> Any:
        return _blank_to_none(value)
