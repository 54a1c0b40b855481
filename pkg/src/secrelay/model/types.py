"""This module defines basic types that store problem data."""

import dataclasses
import enum
import math
from typing import Any, ClassVar, Self

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import model_validator
from pydantic.dataclasses import dataclass as pydantic_dataclass

from .exceptions import ConstraintError

type FloatArray = npt.NDArray[np.float64]
type IntArray = npt.NDArray[np.int64]

REFERENCE_DISTANCE = 1.0
"""Distance of the reference channel gain, meters."""


@pydantic_dataclass(frozen=True)
class Vec3:
    """Point in the 3-D Cartesian frame, meters."""

    x: float = Field(allow_inf_nan=False)
    y: float = Field(allow_inf_nan=False)
    z: float = Field(default=0.0, ge=0, allow_inf_nan=False)

    def as_array(self) -> FloatArray:
        """Returns the point as a `(3,)` array."""
        return np.array([self.x, self.y, self.z], dtype=np.float64)


class ScenarioConfig(BaseModel):
    """Parameters of a randomly generated scenario."""

    model_config = ConfigDict(frozen=True, extra='forbid')

    num_users: int = Field(default=4, ge=1)
    """Number of users M in the cluster."""

    num_eavesdroppers: int = Field(default=3, ge=1)
    """Number of ground eavesdroppers K."""

    num_slots: int = Field(default=10, ge=1)
    """Number of time slots N."""

    cluster_radius: float = Field(default=50.0, ge=0, allow_inf_nan=False)
    """Radius of the disk users are scattered in, meters."""

    uav_disk_radius: float = Field(default=100.0, gt=0, allow_inf_nan=False)
    """Maximum UAV offset from the cluster center, meters."""

    uav_altitude: float = Field(default=100.0, gt=0, allow_inf_nan=False)
    """Fixed UAV altitude, meters."""

    field_size: float = Field(default=600.0, gt=0, allow_inf_nan=False)
    """Side of the square eavesdroppers are placed in, meters."""

    cluster_start: Vec3 = Vec3(0.0, 0.0, 0.0)
    """Cluster center at slot 0, its height equals `user_height`."""

    cluster_velocity: tuple[float, float] = (5.0, 0.0)
    """Cluster drift per slot, meters."""

    user_height: float = Field(default=0.0, ge=0, allow_inf_nan=False)
    """Height of user antennas, meters."""

    eaves_height: float = Field(default=0.0, ge=0, allow_inf_nan=False)
    """Height of eavesdropper antennas, meters."""

    rng_seed: int = Field(default=0, ge=0, lt=2**64)
    """Seed of the random generator."""

    @model_validator(mode='before')
    @classmethod
    def _default_start_height(cls, data: Any) -> Any:
        # An omitted cluster start or start height sits at user height
        if not isinstance(data, dict):
            return data
        height = data.get('user_height', 0.0)
        start = data.get('cluster_start')
        if start is None:
            return {**data, 'cluster_start': {'x': 0.0, 'y': 0.0, 'z': height}}
        if isinstance(start, dict) and 'z' not in start:
            return {**data, 'cluster_start': {**start, 'z': height}}
        return data

    @model_validator(mode='after')
    def _check_geometry(self) -> Self:
        if not all(math.isfinite(v) for v in self.cluster_velocity):
            raise ValueError('cluster_velocity must be finite')
        if self.uav_altitude <= max(self.user_height, self.eaves_height):
            raise ValueError(
                'uav_altitude must exceed user_height and eaves_height',
            )
        if self.cluster_start.z != self.user_height:
            raise ValueError('cluster_start.z must equal user_height')
        return self


@dataclasses.dataclass(eq=False)
class Scenario:
    """Geometry of one problem instance over all time slots."""

    users: FloatArray
    """User positions, shape `(M, N, 3)`."""

    eavesdroppers: FloatArray
    """Static eavesdropper positions, shape `(K, 3)`."""

    cluster_center: FloatArray
    """Cluster center per slot, shape `(N, 2)`."""

    radius: float
    """Disk radius R of the UAV position constraint, meters."""

    altitude: float
    """UAV altitude H, meters."""

    seed: int | None = None
    """Seed the scenario was generated with, if any."""

    @property
    def num_users(self) -> int:
        return self.users.shape[0]

    @property
    def num_slots(self) -> int:
        return self.users.shape[1]

    @property
    def num_eavesdroppers(self) -> int:
        return self.eavesdroppers.shape[0]


@dataclasses.dataclass(frozen=True)
class ChannelParams:
    """Line-of-sight path-loss channel parameters."""

    A2G_EXPONENT: ClassVar[int] = 2
    """Path-loss exponent of the user to UAV link."""

    G2G_EXPONENT: ClassVar[int] = 4
    """Path-loss exponent of the user to eavesdropper link."""

    beta0: float
    """Linear power gain at the reference distance."""

    sigma2: float
    """Noise power, watts."""

    d_min: float = REFERENCE_DISTANCE
    """Shorter distances are clamped to this value, meters."""

    def __post_init__(self) -> None:
        for name in ('beta0', 'sigma2', 'd_min'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConstraintError(f'{name} must be positive, got {value}')

    @classmethod
    def from_lambda0(
        cls,
        lambda0: float,
        d_min: float = REFERENCE_DISTANCE,
    ) -> Self:
        """Builds parameters with unit noise so that `lambda0 == beta0`.

        Args:
            lambda0 (float): Reference SNR (linear).
            d_min (float, optional): Minimum distance. Defaults to 1 m.

        Returns:
            ChannelParams: Channel parameters.
        """
        return cls(beta0=lambda0, sigma2=1.0, d_min=d_min)

    @property
    def lambda0(self) -> float:
        """Reference SNR, `beta0 / sigma2`."""
        return self.beta0 / self.sigma2


@dataclasses.dataclass(eq=False)
class LinkGains:
    """Normalized gains of all links in all slots."""

    mu: FloatArray
    """User to UAV gains `lambda0 / d^2`, shape `(M, N)`."""

    eta: FloatArray
    """User to eavesdropper gains `lambda0 / d^4`, shape `(M, K, N)`."""


@dataclasses.dataclass(frozen=True)
class PowerConstraints:
    """Average and peak transmit power limits applied to every user."""

    p_avg: float
    """Average power over the slots, watts."""

    p_max: float
    """Peak power in any slot, watts."""

    def __post_init__(self) -> None:
        if not (math.isfinite(self.p_avg) and math.isfinite(self.p_max)):
            raise ConstraintError('Power limits must be finite')
        if not 0 <= self.p_avg <= self.p_max:
            raise ConstraintError(
                f'Expected 0 <= p_avg <= p_max, '
                f'got p_avg={self.p_avg}, p_max={self.p_max}',
            )

    @property
    def uniform_power(self) -> float:
        """Largest constant power satisfying both limits."""
        return min(self.p_avg, self.p_max)


@dataclasses.dataclass(eq=False)
class PowerPolicy:
    """Transmit powers of all users in all slots."""

    powers: FloatArray
    """Powers `P_i[n]`, shape `(M, N)`, watts."""

    constraints: PowerConstraints

    @classmethod
    def uniform(
        cls,
        constraints: PowerConstraints,
        num_users: int,
        num_slots: int,
    ) -> Self:
        """Builds a policy using the same feasible power everywhere."""
        powers = np.full((num_users, num_slots), constraints.uniform_power)
        return cls(powers, constraints)

    def is_feasible(self, rtol: float = 1e-9) -> bool:
        """Checks the peak and average power limits.

        Args:
            rtol (float, optional): Tolerance relative to the limit.
                Defaults to 1e-9.

        Returns:
            bool: `True` if both limits hold for every user.
        """
        p_max = self.constraints.p_max
        p_avg = self.constraints.p_avg
        if np.any(self.powers < 0) or np.any(
            self.powers > p_max * (1 + rtol),
        ):
            return False
        average = self.powers.mean(axis=1)
        return bool(np.all(average <= p_avg * (1 + rtol) + 1e-15))


@dataclasses.dataclass(frozen=True)
class DualSolve:
    """Outcome of the dual bisection for one user."""

    rho: float
    """Price of the average power constraint."""

    avg_power_achieved: float
    """Average power of `powers`, watts."""

    iterations: int
    """Bisection steps performed."""

    residual: float
    """Gap `p_avg - avg_power_achieved` when the constraint binds."""

    powers: FloatArray
    """Per-slot powers at `rho`, shape `(N,)`."""


@dataclasses.dataclass(eq=False)
class UavTrajectory:
    """UAV horizontal positions per slot at a fixed altitude."""

    positions: FloatArray
    """Horizontal positions, shape `(N, 2)`."""

    altitude: float

    @classmethod
    def at_cluster_centers(cls, scenario: Scenario) -> Self:
        """Places the UAV above the cluster center in every slot."""
        return cls(scenario.cluster_center.astype(np.float64), scenario.altitude)

    def points(self) -> FloatArray:
        """Returns 3-D positions, shape `(N, 3)`."""
        heights = np.full((self.positions.shape[0], 1), self.altitude)
        return np.hstack((self.positions, heights))

    def copy(self) -> 'UavTrajectory':
        return UavTrajectory(self.positions.copy(), self.altitude)


@dataclasses.dataclass(frozen=True, eq=False)
class DiskConstraint:
    """Admissible UAV positions of one slot."""

    center: FloatArray
    """Disk center, shape `(2,)`."""

    radius: float

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise ConstraintError(f'Disk radius must be positive: {self.radius}')

    def contains(self, point: FloatArray, tol: float = 1e-9) -> bool:
        """Tests whether a horizontal position satisfies the constraint."""
        offset = np.asarray(point) - self.center
        return bool(math.hypot(offset[0], offset[1]) <= self.radius + tol)


@dataclasses.dataclass(frozen=True, eq=False)
class SurrogateCoefficients:
    """Concave lower bound of one slot's legitimate sum rate.

    The bound is `sum_i const_i - alpha_i * d_i^2(x, y)` where `d_i` is
    the distance from user `i` to a UAV at `(x, y, altitude)`.
    """

    alpha: FloatArray
    """Curvature weights, shape `(M,)`."""

    const: FloatArray
    """Offsets, shape `(M,)`, bits/s/Hz."""

    users: FloatArray
    """User positions of the slot, shape `(M, 3)`."""

    altitude: float

    expansion_point: FloatArray
    """Horizontal UAV position the bound is tight at, shape `(2,)`."""

    def evaluate(
        self,
        x: float | FloatArray,
        y: float | FloatArray,
    ) -> float | FloatArray:
        """Evaluates the bound at one or many horizontal positions.

        Args:
            x (float | FloatArray): UAV x coordinate(s).
            y (float | FloatArray): UAV y coordinate(s), same shape as `x`.

        Returns:
            float | FloatArray: Bound value(s), same shape as `x`.
        """
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        total = np.zeros(np.broadcast(x, y).shape)
        for (ux, uy, uz), a, c in zip(self.users, self.alpha, self.const):
            d2 = (x - ux) ** 2 + (y - uy) ** 2 + (self.altitude - uz) ** 2
            total = total + c - a * d2
        return total if total.ndim else float(total)


@enum.unique
class Strategy(enum.StrEnum):
    """Mitigation strategies compared against each other."""

    FIXED_FULL = enum.auto()
    """UAV above the cluster center, constant power."""

    POSITION_ONLY = enum.auto()
    """Only the UAV trajectory is optimized."""

    POWER_ONLY = enum.auto()
    """Only the transmit powers are optimized."""

    JOINT = enum.auto()
    """Trajectory and powers are optimized alternately."""


@enum.unique
class InitialTrajectory(enum.StrEnum):
    """Starting trajectory of the alternating optimization."""

    CLUSTER_CENTER = enum.auto()
    CUSTOM = enum.auto()


@enum.unique
class InitialPowers(enum.StrEnum):
    """Starting powers of the alternating optimization."""

    UNIFORM_FEASIBLE = enum.auto()
    CUSTOM = enum.auto()


@dataclasses.dataclass(frozen=True, eq=False)
class SolverConfig:
    """Stopping rule and starting point of the alternating optimization."""

    chi: float = 1e-4
    """Relative-improvement threshold."""

    max_iterations: int = 100

    initial_trajectory: InitialTrajectory = InitialTrajectory.CLUSTER_CENTER
    initial_powers: InitialPowers = InitialPowers.UNIFORM_FEASIBLE

    custom_trajectory: UavTrajectory | None = None
    """Used when `initial_trajectory` is `CUSTOM`."""

    custom_powers: PowerPolicy | None = None
    """Used when `initial_powers` is `CUSTOM`."""

    def __post_init__(self) -> None:
        if not (math.isfinite(self.chi) and self.chi > 0):
            raise ConstraintError(f'chi must be positive and finite: {self.chi}')
        if self.max_iterations < 1:
            raise ConstraintError(
                f'max_iterations must be at least 1: {self.max_iterations}',
            )
        if (
            self.initial_trajectory is InitialTrajectory.CUSTOM
            and self.custom_trajectory is None
        ):
            raise ConstraintError('Custom initial trajectory is missing')
        if (
            self.initial_powers is InitialPowers.CUSTOM
            and self.custom_powers is None
        ):
            raise ConstraintError('Custom initial powers are missing')


@dataclasses.dataclass(eq=False)
class SolveResult:
    """Final iterate and convergence record of one strategy run."""

    trajectory: UavTrajectory
    powers: PowerPolicy

    objective_trace: list[float]
    """Average unclamped secrecy rate after every iteration, starting at
    the initial point."""

    p1_objective: float
    """Average clamped secrecy rate of the returned policy."""

    iterations: int
    converged: bool

    zeroed_slots: list[tuple[int, int]]
    """`(user, slot)` pairs switched off by the negative-slot zeroing."""

    strategy: Strategy
    num_eavesdroppers: int

    guard_rejections: int = 0
    """Power updates discarded because they lowered the objective."""

    warm_start: Strategy | None = None
    """Strategy whose end point seeded this run, if any."""

    clamped: int = 0
    """Link distances raised to `d_min` at the returned point."""

    @property
    def p2_objective(self) -> float:
        """Last unclamped objective of the trace."""
        return self.objective_trace[-1]

    @property
    def complexity_bound(self) -> float:
        """Operation count bound `J * ((2M + K) N)^3.5` of the run."""
        num_users, num_slots = self.powers.powers.shape
        size = (2 * num_users + self.num_eavesdroppers) * num_slots
        return max(self.iterations, 1) * float(size) ** 3.5


@dataclasses.dataclass(frozen=True)
class GridSpec:
    """Resolution of the brute-force reference search."""

    position_resolution: int = 101
    """Grid points per axis."""

    power_levels: int = 201
    """Power levels in `[0, p_max]`."""

    def __post_init__(self) -> None:
        if self.position_resolution < 2 or self.power_levels < 2:
            raise ConstraintError('Grid resolutions must be at least 2')
