import enum
from dataclasses import dataclass, field


class Outcome(str, enum.Enum):
    GOAL = "goal"
    LOST = "lost"
    MAX_STEPS = "max_steps"


@dataclass(frozen=True)
class StepRecord:
    """State after applying the step's control; cost fields are NaN on hold steps."""
    t: int
    x: float
    y: float
    theta: float
    v: float
    w: float
    events: tuple[str, ...] = ()
    node: int = -1
    subgoal_node: int = -1
    subgoal_u: float = float("nan")
    subgoal_v: float = float("nan")
    cost_obstacle: float = float("nan")
    cost_subgoal: float = float("nan")
    cost_control: float = float("nan")
    expected_cost: float = float("nan")

    @property
    def event(self) -> str:
        return ";".join(self.events)


@dataclass(frozen=True)
class EpisodeMetrics:
    dc_count: int = 0
    ic_count: int = 0
    target_dc_count: int = 0
    freeze_count: int = 0
    goal_reached: bool = False
    steps: int = 0
    outcome: Outcome = Outcome.MAX_STEPS
    trajectory: list[StepRecord] = field(default_factory=list)

    @property
    def collision_count(self) -> int:
        return self.dc_count + self.ic_count


@dataclass(frozen=True)
class SuiteMetrics:
    adc: float
    aic: float
    af: float
    tdcr: float
    grr: float
    runs: int
    perturbation_runs: int


@dataclass(frozen=True)
class RunSummary:
    """One suite run: where it ran, under which perturbation, and its metrics."""
    location: str
    trial: int
    seed: int
    perturbation: int | None  # index into SuiteConfig.perturbations
    metrics: EpisodeMetrics

    @property
    def perturbed(self) -> bool:
        return self.perturbation is not None


@dataclass(frozen=True)
class SuiteResult:
    metrics: SuiteMetrics
    per_location: dict[str, SuiteMetrics]
    runs: list[RunSummary]
