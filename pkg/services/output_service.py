"""
Output Service

Serializes results to stable files: CSV for tabular and plot-ready data,
JSON for structured results and run manifests. Every file is written to a
temporary file in the destination directory and then renamed into place.
"""

import hashlib
import json
import math
import os
import tempfile
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from configs import config
from models import (
    FitResult, Histogram, Orbit, PhaseDiagram, RegimeReport, RunManifest, ScalarStats, WealthSample
)
from utils.exceptions import OutputError
from utils.logging_utils import get_logger

logger = get_logger(__name__)

PHASE_COLUMNS = ['a', 'r', 'label', 'mu', 'h', 'alpha', 'gini', 'mean', 'std', 'n_pooled']


def _plain(value: Any) -> Any:
    """JSON-safe copy: numpy scalars to Python, non-finite floats to null"""
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return [_plain(item) for item in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if hasattr(value, 'value') and isinstance(getattr(value, 'value'), str):
        return value.value
    return value


class OutputService:
    """Service class for result files and manifests"""

    @staticmethod
    def atomic_write(path: str, content: bytes) -> str:
        """Write bytes atomically and return their sha256 digest"""
        directory = os.path.dirname(os.path.abspath(path))
        try:
            os.makedirs(directory, exist_ok=True)
            fd, temp_path = tempfile.mkstemp(dir=directory, prefix='.tmp-', suffix=os.path.basename(path))
            try:
                with os.fdopen(fd, 'wb') as handle:
                    handle.write(content)
                    handle.flush()
                    os.fsync(handle.fileno())
                os.replace(temp_path, path)
            except BaseException:
                if os.path.exists(temp_path):
                    os.remove(temp_path)
                raise
        except OSError as e:
            raise OutputError(f"Failed to write {path}: {e}", path=path)

        logger.debug(f"Wrote {path} ({len(content)} bytes)")
        return hashlib.sha256(content).hexdigest()

    @staticmethod
    def write_csv(path: str, frame: pd.DataFrame) -> str:
        """Fixed column order, %.17g floats, empty cells for missing values"""
        text = frame.to_csv(index=False, float_format=config.FLOAT_FORMAT, na_rep='',
                            lineterminator='\n')
        return OutputService.atomic_write(path, text.encode('utf-8'))

    @staticmethod
    def write_json(path: str, data: Dict[str, Any]) -> str:
        text = json.dumps(_plain(data), indent=2) + '\n'
        return OutputService.atomic_write(path, text.encode('utf-8'))

    # Frames

    @staticmethod
    def sample_frame(sample: WealthSample) -> pd.DataFrame:
        return pd.DataFrame({'x': sample.values})

    @staticmethod
    def histogram_frame(histogram: Optional[Histogram]) -> pd.DataFrame:
        """bin_lo, bin_hi, count; header only when there is nothing to bin"""
        if histogram is None:
            return pd.DataFrame({
                'bin_lo': pd.Series(dtype=float),
                'bin_hi': pd.Series(dtype=float),
                'count': pd.Series(dtype=int)
            })
        return pd.DataFrame({
            'bin_lo': histogram.edges[:-1],
            'bin_hi': histogram.edges[1:],
            'count': histogram.counts.astype(int)
        })

    @staticmethod
    def curve_frame(columns: Sequence[str], curve: Optional[Tuple[np.ndarray, np.ndarray]]) -> pd.DataFrame:
        first, second = columns
        if curve is None:
            return pd.DataFrame({first: pd.Series(dtype=float), second: pd.Series(dtype=float)})
        return pd.DataFrame({first: curve[0], second: curve[1]})

    @staticmethod
    def phase_frame(diagram: PhaseDiagram) -> pd.DataFrame:
        frame = pd.DataFrame([cell.to_row() for cell in diagram.cells], columns=PHASE_COLUMNS)
        for column in ('mu', 'h', 'alpha', 'gini', 'mean', 'std'):
            frame[column] = pd.to_numeric(frame[column], errors='coerce').astype(float)
        frame['n_pooled'] = frame['n_pooled'].astype(int)
        return frame

    @staticmethod
    def bifurcation_frame(orbits: Sequence[Orbit]) -> pd.DataFrame:
        r = np.concatenate([np.full(orbit.kept, orbit.params.r) for orbit in orbits])
        x = np.concatenate([orbit.samples for orbit in orbits])
        return pd.DataFrame({'r': r, 'x': x})

    @staticmethod
    def periods_frame(periods: Sequence[Tuple[float, Optional[int]]]) -> pd.DataFrame:
        return pd.DataFrame({
            'r': [float(r) for r, _ in periods],
            'period': pd.array([p for _, p in periods], dtype='Int64')
        })

    @staticmethod
    def timeseries_frame(records: Sequence[Tuple[int, ScalarStats]]) -> pd.DataFrame:
        return pd.DataFrame({
            't': [t for t, _ in records],
            'mean': [stats.mean for _, stats in records],
            'std': [stats.std for _, stats in records],
            'gini': [np.nan if stats.gini is None else stats.gini for _, stats in records]
        })

    @staticmethod
    def instability_frame(deviations: Sequence[float]) -> pd.DataFrame:
        return pd.DataFrame({'t': np.arange(len(deviations)), 'deviation': np.asarray(deviations)})

    # Documents

    @staticmethod
    def fit_document(report: RegimeReport) -> Dict[str, Any]:
        """Fields of the fit matching the label, plus the label itself"""
        fit: Optional[FitResult] = report.preferred_fit
        document = {
            'kind': None, 'mu': None, 'h': None, 'alpha': None, 'alpha_bar': None,
            'xmin': None, 'ks_distance': None, 'n_tail': 0
        }
        if fit is not None:
            document.update(fit.to_dict())
        document['label'] = report.label.value
        return document

    @staticmethod
    def stats_document(stats: ScalarStats, report: RegimeReport, n: int) -> Dict[str, Any]:
        return {
            'mean': stats.mean,
            'std': stats.std,
            'gini': stats.gini,
            'h': report.exponential.h if report.exponential else None,
            'label': report.label.value,
            'n': n,
            'ks_exponential': report.exponential.ks_distance if report.exponential else None,
            'ks_pareto': report.pareto.ks_distance if report.pareto else None
        }

    @staticmethod
    def write_manifest(out_dir: str, manifest: RunManifest) -> str:
        return OutputService.write_json(os.path.join(out_dir, 'manifest.json'), manifest.to_dict())


class OutputWriter:
    """Writes one command's files into a directory and records their digests"""

    def __init__(self, out_dir: str):
        self.out_dir = out_dir
        self.outputs: Dict[str, str] = {}

    def csv(self, name: str, frame: pd.DataFrame):
        self.outputs[name] = OutputService.write_csv(os.path.join(self.out_dir, name), frame)

    def json(self, name: str, data: Dict[str, Any]):
        self.outputs[name] = OutputService.write_json(os.path.join(self.out_dir, name), data)

    @property
    def written(self) -> List[str]:
        return sorted(self.outputs)
