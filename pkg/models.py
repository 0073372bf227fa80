"""
Domain Models

Value types shared by the services: lattice and exchange states, model
parameters, samples, fits and sweep results.
"""

import math
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from configs import config
from utils.exceptions import DomainError
from utils.validation_utils import validate_protocol_data, validate_wealth_vector

ParamValue = Union[float, np.ndarray]


def _frozen_array(values) -> np.ndarray:
    array = np.array(values, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


class ExchangeVariant(str, Enum):
    DY = 'DY'
    ANGLE = 'ANGLE'
    ANGLE_HETEROGENEOUS = 'ANGLE_HETEROGENEOUS'


class Binning(str, Enum):
    LINEAR = 'LINEAR'
    LOG = 'LOG'


class FitKind(str, Enum):
    EXPONENTIAL = 'EXPONENTIAL'
    PARETO = 'PARETO'


class Regime(str, Enum):
    BOLTZMANN_GIBBS = 'BOLTZMANN_GIBBS'
    PARETO = 'PARETO'
    COLLAPSED = 'COLLAPSED'
    UNCLASSIFIED = 'UNCLASSIFIED'


# Lattice

@dataclass(frozen=True)
class LatticeState:
    """Wealth of N agents on a ring at iteration `time`"""

    wealth: np.ndarray
    time: int = 0

    def __post_init__(self):
        wealth = _frozen_array(self.wealth)
        if wealth.ndim != 1 or wealth.size < 2:
            raise DomainError("Lattice needs a 1-D wealth vector with N >= 2", n=int(wealth.size))
        if not validate_wealth_vector(wealth):
            raise DomainError("Lattice wealth must be finite and non-negative", time=self.time)
        if self.time < 0:
            raise DomainError("Lattice time must be non-negative", time=self.time)
        object.__setattr__(self, 'wealth', wealth)

    @property
    def n(self) -> int:
        return int(self.wealth.size)


@dataclass(frozen=True)
class ModelParams:
    """Growth capacity r and environmental pressure a, scalar or per site"""

    r: ParamValue
    a: ParamValue

    def __post_init__(self):
        for name in ('r', 'a'):
            value = getattr(self, name)
            if np.ndim(value) == 0:
                object.__setattr__(self, name, float(value))
            else:
                object.__setattr__(self, name, _frozen_array(value))

        r = np.asarray(self.r)
        a = np.asarray(self.a)
        if not (np.all(np.isfinite(r)) and np.all(r > 0)):
            raise DomainError("Growth capacity r must be positive and finite")
        if not (np.all(np.isfinite(a)) and np.all(a >= 0)):
            raise DomainError("Environmental pressure a must be non-negative and finite")

    @property
    def is_homogeneous(self) -> bool:
        return np.ndim(self.r) == 0 and np.ndim(self.a) == 0

    def check_dimension(self, n: int):
        """Per-site sequences must match the lattice size"""
        for name in ('r', 'a'):
            value = getattr(self, name)
            if np.ndim(value) == 1 and value.size != n:
                raise DomainError(f"Parameter {name} has {value.size} entries for a lattice of {n}",
                                  parameter=name, n=n)

    def to_dict(self) -> Dict[str, Any]:
        def plain(value):
            return value if np.ndim(value) == 0 else value.tolist()
        return {'r': plain(self.r), 'a': plain(self.a)}


# Uniform map

@dataclass(frozen=True)
class ScalarMapParams:
    """Parameters of the uniform map x -> r x exp(-|1-a| x)"""

    r: float
    a: float

    def __post_init__(self):
        object.__setattr__(self, 'r', float(self.r))
        object.__setattr__(self, 'a', float(self.a))
        if not (math.isfinite(self.r) and self.r > 0):
            raise DomainError("Growth capacity r must be positive", r=self.r)
        if not (math.isfinite(self.a) and self.a >= 0):
            raise DomainError("Environmental pressure a must be non-negative", a=self.a)

    @property
    def c(self) -> float:
        return abs(1.0 - self.a)

    @property
    def is_singular(self) -> bool:
        return self.a == 1.0


@dataclass(frozen=True)
class Orbit:
    """Post-transient iterates of the uniform map at one parameter point"""

    samples: np.ndarray
    params: ScalarMapParams
    transient: int
    kept: int

    def __post_init__(self):
        samples = _frozen_array(self.samples)
        if samples.size != self.kept:
            raise DomainError("Orbit sample count must equal kept", kept=self.kept)
        if not validate_wealth_vector(samples):
            raise DomainError("Orbit samples must be finite and non-negative")
        object.__setattr__(self, 'samples', samples)


# Exchange models

@dataclass(frozen=True)
class ExchangeRule:
    """Exchange rule variant and its parameters"""

    variant: ExchangeVariant
    omega: Optional[float] = None
    omega_per_agent: Optional[np.ndarray] = None

    def __post_init__(self):
        variant = ExchangeVariant(self.variant)
        object.__setattr__(self, 'variant', variant)

        if variant is ExchangeVariant.ANGLE:
            if self.omega is None or not 0.0 < float(self.omega) < 1.0:
                raise DomainError("ANGLE exchange requires omega in (0, 1)", omega=self.omega)
            object.__setattr__(self, 'omega', float(self.omega))
        elif self.omega is not None:
            raise DomainError(f"omega is only used by the ANGLE variant, not {variant.value}")

        if variant is ExchangeVariant.ANGLE_HETEROGENEOUS:
            if self.omega_per_agent is None:
                raise DomainError("ANGLE_HETEROGENEOUS exchange requires omega_per_agent")
            omegas = _frozen_array(self.omega_per_agent)
            if omegas.ndim != 1 or not np.all((omegas > 0) & (omegas < 1)):
                raise DomainError("omega_per_agent entries must lie in (0, 1)")
            object.__setattr__(self, 'omega_per_agent', omegas)
        elif self.omega_per_agent is not None:
            raise DomainError(f"omega_per_agent is only used by ANGLE_HETEROGENEOUS, not {variant.value}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'variant': self.variant.value,
            'omega': self.omega,
            'omega_per_agent': None if self.omega_per_agent is None else 'per-agent'
        }


@dataclass
class ExchangeState:
    """Money held by each agent; run_exchange replaces `money` after every block"""

    money: np.ndarray
    total: float

    @classmethod
    def equal(cls, n: int, endowment: float) -> 'ExchangeState':
        money = np.full(n, float(endowment))
        return cls(money=money, total=float(money.sum()))

    def conservation_error(self) -> float:
        """Relative drift of total money"""
        if self.total == 0:
            return 0.0
        return abs(float(self.money.sum()) - self.total) / self.total


# Samples and fits

@dataclass(frozen=True)
class WealthSample:
    """Pooled wealth values with provenance metadata"""

    values: np.ndarray
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        values = _frozen_array(np.ravel(self.values))
        if values.size == 0:
            raise DomainError("Wealth sample must be non-empty")
        if not validate_wealth_vector(values):
            raise DomainError("Wealth sample values must be finite and non-negative")
        object.__setattr__(self, 'values', values)

    @property
    def size(self) -> int:
        return int(self.values.size)

    def scaled(self, factor: float) -> 'WealthSample':
        return WealthSample(self.values * factor, dict(self.meta, scaled_by=factor))


@dataclass(frozen=True)
class BinningSpec:
    """How to bin a sample: explicit edges, or `bins` bins over [lo, hi]"""

    kind: Binning = Binning.LINEAR
    bins: int = 50
    lo: Optional[float] = None
    hi: Optional[float] = None
    edges: Optional[Sequence[float]] = None


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    binning: Binning
    out_of_range: int = 0

    @property
    def total(self) -> int:
        return int(self.counts.sum()) + self.out_of_range


@dataclass(frozen=True)
class FitResult:
    """Exponential or Pareto fit of a sample tail"""

    kind: FitKind
    xmin: float
    ks_distance: float
    n_tail: int
    mu: Optional[float] = None
    h: Optional[float] = None
    alpha: Optional[float] = None
    alpha_bar: Optional[float] = None

    @classmethod
    def exponential(cls, mu: float, xmin: float, ks_distance: float, n_tail: int) -> 'FitResult':
        return cls(kind=FitKind.EXPONENTIAL, xmin=xmin, ks_distance=ks_distance,
                   n_tail=n_tail, mu=mu, h=1.0 / mu)

    @classmethod
    def pareto(cls, alpha: float, xmin: float, ks_distance: float, n_tail: int) -> 'FitResult':
        return cls(kind=FitKind.PARETO, xmin=xmin, ks_distance=ks_distance,
                   n_tail=n_tail, alpha=alpha, alpha_bar=alpha - 1.0)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['kind'] = self.kind.value
        return data


@dataclass(frozen=True)
class RegimeThresholds:
    collapse_threshold: float = config.COLLAPSE_THRESHOLD
    ks_accept: float = config.KS_ACCEPT
    margin: float = config.CLASSIFY_MARGIN
    exponential_xmin: float = config.CLASSIFY_EXPONENTIAL_XMIN
    pareto_quantile: float = config.PARETO_QUANTILE
    pareto_xmin: Optional[float] = None


@dataclass(frozen=True)
class RegimeReport:
    label: Regime
    mean: float
    exponential: Optional[FitResult] = None
    pareto: Optional[FitResult] = None

    @property
    def preferred_fit(self) -> Optional[FitResult]:
        """The fit matching the label, else whichever fit exists"""
        if self.label is Regime.PARETO:
            return self.pareto
        if self.label is Regime.BOLTZMANN_GIBBS:
            return self.exponential
        candidates = [f for f in (self.exponential, self.pareto) if f is not None]
        return min(candidates, key=lambda f: f.ks_distance) if candidates else None


# Protocol and sweep

@dataclass(frozen=True)
class ProtocolConfig:
    """Measurement protocol: transient, averaging window and realizations"""

    n: int = config.N_AGENTS
    init_lo: float = config.INIT_LO
    init_hi: float = config.INIT_HI
    transient: int = config.TRANSIENT
    measure_iters: int = config.MEASURE_ITERS
    realizations: int = config.REALIZATIONS
    base_seed: int = config.BASE_SEED
    snapshot_only: bool = config.SNAPSHOT_ONLY
    workers: int = config.WORKERS
    progress: bool = False

    def __post_init__(self):
        errors = validate_protocol_data(asdict(self))
        if errors:
            raise DomainError(f"Invalid protocol: {'; '.join(errors)}", errors=errors)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class ScalarStats:
    mean: float
    std: float
    gini: Optional[float] = None


@dataclass(frozen=True)
class ProtocolResult:
    sample: WealthSample
    stats: ScalarStats


@dataclass(frozen=True)
class CellResult:
    a: float
    r: float
    label: Regime
    mu: Optional[float] = None
    h: Optional[float] = None
    alpha: Optional[float] = None
    gini: Optional[float] = None
    mean: Optional[float] = None
    std: Optional[float] = None
    n_pooled: int = 0
    error: Optional[str] = None

    def to_row(self) -> Dict[str, Any]:
        return {
            'a': self.a, 'r': self.r, 'label': self.label.value,
            'mu': self.mu, 'h': self.h, 'alpha': self.alpha, 'gini': self.gini,
            'mean': self.mean, 'std': self.std, 'n_pooled': self.n_pooled
        }


@dataclass(frozen=True)
class PhaseDiagram:
    """Cells over the (a, r) grid in a-major, r-minor order"""

    a_values: List[float]
    r_values: List[float]
    cells: List[CellResult]
    config: ProtocolConfig

    def __post_init__(self):
        if len(self.cells) != len(self.a_values) * len(self.r_values):
            raise DomainError("Phase diagram must cover the full (a, r) grid")

    def cell(self, a_index: int, r_index: int) -> CellResult:
        return self.cells[a_index * len(self.r_values) + r_index]


@dataclass
class RunManifest:
    command: str
    argv: List[str]
    config: Dict[str, Any]
    base_seed: Optional[int]
    version: Dict[str, Any]
    started_at: str
    duration_seconds: float = 0.0
    outputs: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
