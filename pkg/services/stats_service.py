"""
Stats Service

Distributional statistics for wealth samples: histograms, maximum-likelihood
exponential (Boltzmann-Gibbs) and Pareto (Hill) fits with KS distances,
Gini coefficient, Lorenz curve, complementary CDF and regime classification.
"""

from typing import Optional, Tuple

import numpy as np
from scipy import stats

from configs import config
from models import (
    Binning, BinningSpec, FitKind, FitResult, Histogram, Regime, RegimeReport,
    RegimeThresholds, WealthSample
)
from utils.exceptions import (
    DegenerateFitError, DomainError, FitError, InsufficientDataError, UndefinedGiniError
)
from utils.logging_utils import get_logger

logger = get_logger(__name__)


def _tail(sample: WealthSample, xmin: float, min_tail: int) -> np.ndarray:
    tail = sample.values[sample.values >= xmin]
    if tail.size < min_tail:
        raise InsufficientDataError(
            f"Only {tail.size} samples at or above xmin={xmin:.6g} (need {min_tail})",
            xmin=xmin, n_tail=int(tail.size))
    return tail


class StatsService:
    """Service class for wealth-distribution statistics"""

    @staticmethod
    def histogram(sample: WealthSample, binning: BinningSpec = BinningSpec()) -> Histogram:
        """Bin a sample; values outside the edges are counted in out_of_range"""
        kind = Binning(binning.kind)
        values = sample.values

        if binning.edges is not None:
            edges = np.asarray(binning.edges, dtype=np.float64)
            if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
                raise DomainError("Histogram edges must be strictly increasing")
            if kind is Binning.LOG and edges[0] <= 0:
                raise DomainError("LOG binning requires a positive lower edge", lower_edge=float(edges[0]))
        else:
            if binning.bins < 1:
                raise DomainError("Histogram needs at least one bin", bins=binning.bins)
            if kind is Binning.LOG:
                positive = values[values > 0]
                lo = binning.lo if binning.lo is not None else (positive.min() if positive.size else None)
                if lo is None or lo <= 0:
                    raise DomainError("LOG binning requires a positive lower edge", lower_edge=lo)
                hi = binning.hi if binning.hi is not None else values.max()
                if hi <= lo:
                    hi = lo * 10.0
                edges = np.geomspace(lo, hi, binning.bins + 1)
            else:
                lo = binning.lo if binning.lo is not None else values.min()
                hi = binning.hi if binning.hi is not None else values.max()
                if hi <= lo:
                    hi = lo + 1.0
                edges = np.linspace(lo, hi, binning.bins + 1)

        counts, _ = np.histogram(values, bins=edges)
        out_of_range = sample.size - int(counts.sum())
        return Histogram(edges=edges, counts=counts, binning=kind, out_of_range=out_of_range)

    @staticmethod
    def fit_exponential(sample: WealthSample, xmin: float = config.EXPONENTIAL_XMIN,
                        min_tail: int = config.MIN_TAIL) -> FitResult:
        """MLE rate of the shifted tail: mu = 1 / mean(x - xmin), x >= xmin"""
        tail = _tail(sample, xmin, min_tail)
        if np.ptp(tail) == 0:
            raise DegenerateFitError("Exponential fit of a zero-variance tail", xmin=xmin)

        shifted = tail - xmin
        mu = 1.0 / float(np.mean(shifted))
        ks = stats.kstest(shifted, 'expon', args=(0.0, 1.0 / mu)).statistic
        return FitResult.exponential(mu=mu, xmin=float(xmin), ks_distance=float(ks),
                                     n_tail=int(tail.size))

    @staticmethod
    def pareto_xmin(sample: WealthSample, quantile: float = config.PARETO_QUANTILE) -> float:
        """Default Pareto threshold: the given quantile of the sample"""
        if not 0.0 <= quantile < 1.0:
            raise DomainError("Pareto quantile must lie in [0, 1)", quantile=quantile)
        return float(np.quantile(sample.values, quantile))

    @staticmethod
    def fit_pareto(sample: WealthSample, xmin: Optional[float] = None,
                   min_tail: int = config.MIN_TAIL) -> FitResult:
        """Hill estimator alpha = 1 + n_tail / sum(ln(x / xmin)), x >= xmin"""
        if xmin is None:
            xmin = StatsService.pareto_xmin(sample)
        if not xmin > 0:
            raise DomainError(f"Pareto fit requires xmin > 0, got {xmin}", xmin=xmin)

        tail = _tail(sample, xmin, min_tail)
        log_ratio_sum = float(np.sum(np.log(tail / xmin)))
        if log_ratio_sum <= 0:
            raise DegenerateFitError("Every tail sample equals xmin", xmin=xmin)

        alpha = 1.0 + tail.size / log_ratio_sum
        ks = stats.kstest(tail, 'pareto', args=(alpha - 1.0, 0.0, xmin)).statistic
        return FitResult.pareto(alpha=alpha, xmin=float(xmin), ks_distance=float(ks),
                                n_tail=int(tail.size))

    @staticmethod
    def fit_histogram_regression(histogram: Histogram, kind: FitKind) -> FitResult:
        """Least-squares line through log density of the non-empty bins.

        Diagnostic only: semi-log slope gives -mu, log-log slope gives -alpha.
        Not a likelihood fit, so the KS distance is reported as NaN.
        """
        kind = FitKind(kind)
        edges, counts = histogram.edges, histogram.counts
        widths = np.diff(edges)
        if histogram.binning is Binning.LOG:
            centers = np.sqrt(edges[:-1] * edges[1:])
        else:
            centers = 0.5 * (edges[:-1] + edges[1:])

        filled = counts > 0
        if np.count_nonzero(filled) < 2:
            raise InsufficientDataError("Regression needs at least two non-empty bins")

        density = counts[filled] / (widths[filled] * counts.sum())
        n_tail = int(counts.sum())

        if kind is FitKind.EXPONENTIAL:
            slope, _ = np.polyfit(centers[filled], np.log(density), 1)
            if slope >= 0:
                raise DegenerateFitError("Semi-log regression slope is not negative", slope=float(slope))
            return FitResult.exponential(mu=float(-slope), xmin=float(edges[0]),
                                         ks_distance=float('nan'), n_tail=n_tail)

        if centers[filled].min() <= 0:
            raise DomainError("Log-log regression needs positive bin centers")
        slope, _ = np.polyfit(np.log(centers[filled]), np.log(density), 1)
        if -slope <= 1:
            raise DegenerateFitError("Log-log regression exponent is not above 1", slope=float(slope))
        return FitResult.pareto(alpha=float(-slope), xmin=float(edges[0]),
                                ks_distance=float('nan'), n_tail=n_tail)

    @staticmethod
    def gini(sample: WealthSample) -> float:
        """G = 2 sum(i x_(i)) / (n sum x) - (n+1)/n over the ascending sort"""
        values = np.sort(sample.values)
        n = values.size
        total = float(values.sum())
        if total <= 0:
            raise UndefinedGiniError("Gini coefficient is undefined for zero mean wealth")

        ranks = np.arange(1, n + 1, dtype=np.float64)
        weighted = float(np.dot(ranks, values))
        # Rounding can push perfect equality just below zero
        return max(0.0, 2.0 * weighted / (n * total) - (n + 1.0) / n)

    @staticmethod
    def lorenz_curve(sample: WealthSample) -> Tuple[np.ndarray, np.ndarray]:
        """(population share, wealth share), both from 0 to 1"""
        values = np.sort(sample.values)
        total = float(values.sum())
        if total <= 0:
            raise UndefinedGiniError("Lorenz curve is undefined for zero total wealth")
        wealth_share = np.insert(np.cumsum(values) / total, 0, 0.0)
        population_share = np.linspace(0.0, 1.0, values.size + 1)
        return population_share, wealth_share

    @staticmethod
    def ccdf(sample: WealthSample) -> Tuple[np.ndarray, np.ndarray]:
        """Distinct values x and the fraction of the sample at or above each"""
        ordered = np.sort(sample.values)
        distinct = np.unique(ordered)
        at_or_above = ordered.size - np.searchsorted(ordered, distinct, side='left')
        return distinct, at_or_above / ordered.size

    @staticmethod
    def mean_std(sample: WealthSample) -> Tuple[float, float]:
        """Arithmetic mean and population standard deviation"""
        return float(np.mean(sample.values)), float(np.std(sample.values))

    @staticmethod
    def regime_report(sample: WealthSample,
                      thresholds: RegimeThresholds = RegimeThresholds()) -> RegimeReport:
        """Fit both laws and pick the one with the clearly smaller KS distance"""
        mean = float(np.mean(sample.values))
        if mean < thresholds.collapse_threshold:
            return RegimeReport(label=Regime.COLLAPSED, mean=mean)

        exponential = pareto = None
        try:
            exponential = StatsService.fit_exponential(sample, thresholds.exponential_xmin)
        except (FitError, DomainError) as e:
            logger.debug(f"Exponential fit unavailable: {e}")

        try:
            xmin = thresholds.pareto_xmin
            if xmin is None:
                xmin = StatsService.pareto_xmin(sample, thresholds.pareto_quantile)
            pareto = StatsService.fit_pareto(sample, xmin)
        except (FitError, DomainError) as e:
            logger.debug(f"Pareto fit unavailable: {e}")

        candidates = [
            (fit.ks_distance, label, fit)
            for label, fit in ((Regime.BOLTZMANN_GIBBS, exponential), (Regime.PARETO, pareto))
            if fit is not None
        ]
        label = Regime.UNCLASSIFIED
        if candidates:
            candidates.sort(key=lambda candidate: candidate[0])
            best_ks, best_label, _ = candidates[0]
            clear_gap = len(candidates) == 1 or candidates[1][0] - best_ks > thresholds.margin
            if best_ks <= thresholds.ks_accept and clear_gap:
                label = best_label

        return RegimeReport(label=label, mean=mean, exponential=exponential, pareto=pareto)

    @staticmethod
    def classify_regime(sample: WealthSample,
                        thresholds: RegimeThresholds = RegimeThresholds()) -> Regime:
        return StatsService.regime_report(sample, thresholds).label
