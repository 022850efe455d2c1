"""
Symulacje Monte Carlo - statystyczne wyrocznie dla pól przy ustalonym kierunku
oraz dla losowego rzutu elipsy, odcinka lub okręgu na sieć
"""
import logging
import math
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .closed_form_measures import ClosedFormMeasures, Lattice, SegmentSpec
from .config import Config
from .ellipse_geometry import Ellipse
from .errors import AssumptionError, InputError, OracleHealthError
from .intersection_oracle import (
    CIRCLE_INSIDE,
    DEGENERATE,
    DISJOINT,
    ELLIPSE_INSIDE,
    FOUR,
    TWO,
    IntersectionOracle,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
# Przesunięcia wierzchołków sieci wokół komórki zawierającej środek rzucanego ciała
_NEIGHBOURHOOD = np.array([(i, j) for i in range(-1, 3) for j in range(-1, 3)], dtype=float)

# Kolejność liczników zwracanych przez porcję obliczeń
AREA_CLASSES = ('A_e', 'A_i01', 'A_i10', 'A_2', 'A_4')
THROW_CLASSES = ('p_e', 'p_i', 'p_2', 'p_4')
SEGMENT_CLASSES = ('p_e', 'p_i', 'p_1', 'p_2')


class Pose(NamedTuple):
    """Położenia rzuconego ciała: środek (x1, y1) w równoległoboku i kąt psi"""

    x1: np.ndarray
    y1: np.ndarray
    psi: np.ndarray

    def in_cell(self, lat: Lattice) -> np.ndarray:
        """Czy środek leży w podstawowym równoległoboku sieci"""
        height = lat.t * math.sin(lat.sigma)
        shift = self.y1 / math.tan(lat.sigma)
        return (self.y1 >= 0) & (self.y1 <= height) & (self.x1 >= shift) & (self.x1 <= shift + lat.s)


@dataclass
class EstimateReport:
    """Estymatory z błędami standardowymi i porównaniem z wartościami zamkniętymi"""

    mode: str
    n: int
    seed: int
    n_valid: int
    degenerate: int
    counts: Dict[str, int]
    estimates: Dict[str, float]
    stderr: Dict[str, float]
    closed_form: Dict[str, float]
    z_scores: Dict[str, float]
    extra: Dict[str, float] = field(default_factory=dict)

    @property
    def max_abs_z(self) -> float:
        return max((abs(z) for z in self.z_scores.values()), default=0.0)

    def as_dict(self):
        return {
            'mode': self.mode,
            'n': self.n,
            'seed': self.seed,
            'n_valid': self.n_valid,
            'degenerate': self.degenerate,
            'counts': dict(self.counts),
            'estimates': dict(self.estimates),
            'stderr': dict(self.stderr),
            'closed_form': dict(self.closed_form),
            'z_scores': dict(self.z_scores),
            'max_abs_z': self.max_abs_z,
            **self.extra,
        }


def rng_stream(seed: int, chunk: int) -> np.random.Generator:
    """Deterministyczny strumień liczb losowych (PCG64) dla pary (seed, chunk)"""
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=(int(chunk),)))


def _lattice_vertices(lat: Lattice) -> Tuple[np.ndarray, np.ndarray]:
    vx = _NEIGHBOURHOOD[:, 0] * lat.s + _NEIGHBOURHOOD[:, 1] * lat.t * math.cos(lat.sigma)
    vy = _NEIGHBOURHOOD[:, 1] * lat.t * math.sin(lat.sigma)
    return vx, vy


def draw_poses(rng: np.random.Generator, lat: Lattice, m: int) -> Pose:
    """Jednostajne położenia w równoległoboku i jednostajny kąt obrotu"""
    y1 = rng.uniform(0.0, lat.t * math.sin(lat.sigma), m)
    x1 = rng.uniform(0.0, lat.s, m) + y1 / math.tan(lat.sigma)
    psi = rng.uniform(0.0, TWO_PI, m)
    return Pose(x1=x1, y1=y1, psi=psi)


def _single_hit(codes: np.ndarray) -> np.ndarray:
    """
    Wynik rzutu z kodów względem wszystkich wierzchołków sąsiedztwa

    Raises:
        AssumptionError: gdy jedno położenie trafia dwa okręgi sieci
    """
    hit = codes != DISJOINT
    hits = np.count_nonzero(hit, axis=0)
    if np.any(hits > 1):
        raise AssumptionError(
            f"Rzut trafił jednocześnie {int(hits.max())} okręgi sieci - naruszone 2(a+r) ≤ min(s,t)"
        )
    outcome = np.where(hits == 0, DISJOINT, np.max(np.where(hit, codes, -1), axis=0))
    return outcome


def _area_chunk(params: dict, seed: int, chunk: int, size: int) -> np.ndarray:
    e = Ellipse(params['a'], params['b'])
    r = params['r']
    rng = rng_stream(seed, chunk)
    half = e.a + r
    x0 = rng.uniform(-half, half, size)
    y0 = rng.uniform(-half, half, size)
    codes = IntersectionOracle.classify_batch(e, r, x0, y0)
    return np.array([
        np.count_nonzero(codes == DISJOINT),
        np.count_nonzero(codes == CIRCLE_INSIDE),
        np.count_nonzero(codes == ELLIPSE_INSIDE),
        np.count_nonzero(codes == TWO),
        np.count_nonzero(codes == FOUR),
        np.count_nonzero(codes == DEGENERATE),
        0,
        0,
    ], dtype=np.int64)


def _tally(outcome: np.ndarray) -> np.ndarray:
    z = np.select([outcome == TWO, outcome == FOUR], [2, 4], 0)
    valid = outcome != DEGENERATE
    return np.array([
        np.count_nonzero(outcome == DISJOINT),
        np.count_nonzero((outcome == CIRCLE_INSIDE) | (outcome == ELLIPSE_INSIDE)),
        np.count_nonzero(outcome == TWO),
        np.count_nonzero(outcome == FOUR),
        np.count_nonzero(~valid),
        0,
        int(np.sum(z[valid])),
        int(np.sum(z[valid] ** 2)),
    ], dtype=np.int64)


def _throw_chunk(params: dict, seed: int, chunk: int, size: int) -> np.ndarray:
    e = Ellipse(params['a'], params['b'])
    r = params['r']
    lat = Lattice(params['s'], params['t'], params['sigma'])
    pose = draw_poses(rng_stream(seed, chunk), lat, size)
    vx, vy = _lattice_vertices(lat)
    dx = vx[:, None] - pose.x1[None, :]
    dy = vy[:, None] - pose.y1[None, :]
    cos_psi = np.cos(pose.psi)[None, :]
    sin_psi = np.sin(pose.psi)[None, :]
    x0 = dx * cos_psi + dy * sin_psi
    y0 = -dx * sin_psi + dy * cos_psi
    codes = IntersectionOracle.classify_batch(e, r, x0.ravel(), y0.ravel()).reshape(x0.shape)
    outcome = _single_hit(codes)
    return _tally(outcome)


def _dual_chunk(params: dict, seed: int, chunk: int, size: int) -> np.ndarray:
    e = Ellipse(params['a'], params['b'])
    r = params['r']
    lat = Lattice(params['s'], params['t'], params['sigma'])
    pose = draw_poses(rng_stream(seed, chunk), lat, size)
    vx, vy = _lattice_vertices(lat)
    # Elipsy sieci mają wspólną orientację, więc okrąg widziany jest w ich układzie
    x0 = pose.x1[None, :] - vx[:, None]
    y0 = pose.y1[None, :] - vy[:, None]
    codes = IntersectionOracle.classify_batch(e, r, x0.ravel(), y0.ravel()).reshape(x0.shape)
    outcome = _single_hit(codes)
    return _tally(outcome)


def _segment_codes(l: float, r: float, x0: np.ndarray, y0: np.ndarray, tol: float) -> np.ndarray:  # noqa: E741
    """Relacja odcinka [(-l/2, 0), (l/2, 0)] z okręgiem o środku (x0, y0)"""
    half = l / 2.0
    d_left = np.hypot(x0 + half, y0)
    d_right = np.hypot(x0 - half, y0)
    d_line = np.where(np.abs(x0) <= half, np.abs(y0), np.minimum(d_left, d_right))
    inside_left = d_left < r
    inside_right = d_right < r
    codes = np.where(
        inside_left & inside_right,
        CIRCLE_INSIDE,
        np.where(inside_left ^ inside_right, TWO, np.where(d_line < r, FOUR, DISJOINT)),
    )
    tangent = (np.abs(d_left - r) < tol) | (np.abs(d_right - r) < tol) | (np.abs(d_line - r) < tol)
    return np.where(tangent, DEGENERATE, codes)


def _segment_chunk(params: dict, seed: int, chunk: int, size: int) -> np.ndarray:
    l, r = params['l'], params['r']  # noqa: E741
    lat = Lattice(params['s'], params['t'], params['sigma'])
    pose = draw_poses(rng_stream(seed, chunk), lat, size)
    vx, vy = _lattice_vertices(lat)
    dx = vx[:, None] - pose.x1[None, :]
    dy = vy[:, None] - pose.y1[None, :]
    cos_psi = np.cos(pose.psi)[None, :]
    sin_psi = np.sin(pose.psi)[None, :]
    x0 = dx * cos_psi + dy * sin_psi
    y0 = -dx * sin_psi + dy * cos_psi
    codes = _segment_codes(l, r, x0, y0, Config.get_tangency_tol())
    outcome = _single_hit(codes)
    # Kody TWO / FOUR oznaczają tu odpowiednio jedno i dwa przecięcia
    z = np.select([outcome == TWO, outcome == FOUR], [1, 2], 0)
    valid = outcome != DEGENERATE
    return np.array([
        np.count_nonzero(outcome == DISJOINT),
        np.count_nonzero(outcome == CIRCLE_INSIDE),
        np.count_nonzero(outcome == TWO),
        np.count_nonzero(outcome == FOUR),
        np.count_nonzero(~valid),
        0,
        int(np.sum(z[valid])),
        int(np.sum(z[valid] ** 2)),
    ], dtype=np.int64)


_CHUNK_FUNCTIONS = {
    'areas': _area_chunk,
    'throws': _throw_chunk,
    'dual-throws': _dual_chunk,
    'segment-throws': _segment_chunk,
}


def _run_task(task):
    mode, params, seed, chunk, size = task
    counts = _CHUNK_FUNCTIONS[mode](params, seed, chunk, size)
    logger.debug(f"Porcja {chunk} ({mode}): {size} prób, liczniki {counts.tolist()}")
    return counts


def _z_score(p_hat: float, p_ref: float, n: int) -> Tuple[float, float]:
    """(błąd standardowy, z) dla częstości; przy zerowej wariancji próby - wariancja wzorcowa"""
    se = math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / n)
    if se == 0.0:
        se = math.sqrt(max(p_ref * (1.0 - p_ref), 0.0) / n)
    if se == 0.0:
        return 0.0, 0.0
    return se, (p_hat - p_ref) / se


class MonteCarloSimulator:
    """Wyrocznie statystyczne dla wzorów zamkniętych"""

    @staticmethod
    def chunk_plan(n: int, chunk_size: Optional[int] = None) -> List[int]:
        """Podział n prób na porcje; ostatnia porcja może być krótsza"""
        chunk_size = chunk_size or Config.get_chunk_size()
        sizes = [chunk_size] * (n // chunk_size)
        if n % chunk_size:
            sizes.append(n % chunk_size)
        return sizes

    @staticmethod
    def _validate_samples(n: int) -> None:
        min_samples = Config.get_min_samples()
        if n < min_samples:
            raise InputError(f"Liczba prób {n} jest mniejsza niż minimum {min_samples}")

    @staticmethod
    def _run(mode: str, params: dict, n: int, seed: int, workers: Optional[int]) -> np.ndarray:
        """Wykonanie porcji (sekwencyjnie albo w puli procesów) i scalenie w kolejności indeksów"""
        workers = workers or Config.get_workers()
        sizes = MonteCarloSimulator.chunk_plan(n)
        tasks = [(mode, params, seed, chunk, size) for chunk, size in enumerate(sizes)]
        logger.info(f"Symulacja {mode}: {n} prób w {len(tasks)} porcjach, procesy: {workers}")
        if workers > 1 and len(tasks) > 1:
            with Pool(processes=workers) as pool:
                results = pool.map(_run_task, tasks)
        else:
            results = [_run_task(task) for task in tasks]
        total = np.zeros(8, dtype=np.int64)
        for counts in results:
            total += counts
        return total

    @staticmethod
    def _check_degenerate(degenerate: int, n: int) -> None:
        allowed = math.ceil(Config.get_degenerate_cap_per_million() * n / 1_000_000)
        if degenerate > allowed:
            raise OracleHealthError(
                f"Zbyt wiele pozycji zdegenerowanych: {degenerate} na {n} prób (dopuszczalne {allowed})"
            )
        if degenerate:
            logger.warning(f"Pominięto {degenerate} pozycji zdegenerowanych (stycznych)")

    @staticmethod
    def _frequency_report(mode: str, n: int, seed: int, names, counts: np.ndarray,
                          references: Dict[str, float], scale: float = 1.0) -> EstimateReport:
        degenerate = int(counts[4])
        MonteCarloSimulator._check_degenerate(degenerate, n)
        n_valid = n - degenerate
        report = EstimateReport(
            mode=mode, n=n, seed=seed, n_valid=n_valid, degenerate=degenerate,
            counts={}, estimates={}, stderr={}, closed_form={}, z_scores={},
        )
        for name, count in zip(names, counts[:4]):
            p_hat = int(count) / n_valid
            p_ref = references[name] / scale
            se, z = _z_score(p_hat, p_ref, n_valid)
            report.counts[name] = int(count)
            report.estimates[name] = p_hat * scale
            report.stderr[name] = se * scale
            report.closed_form[name] = references[name]
            report.z_scores[name] = z
        return report

    @staticmethod
    def _add_mean_intersections(report: EstimateReport, counts: np.ndarray, expected: float) -> None:
        n_valid = report.n_valid
        mean = int(counts[6]) / n_valid
        variance = max(int(counts[7]) / n_valid - mean * mean, 0.0)
        se = math.sqrt(variance / n_valid)
        report.estimates['Z'] = mean
        report.stderr['Z'] = se
        report.closed_form['Z'] = expected
        report.z_scores['Z'] = (mean - expected) / se if se > 0 else 0.0

    @staticmethod
    def estimate_fixed_direction_areas(e: Ellipse, r: float, n: int, seed: int,
                                       workers: Optional[int] = None) -> EstimateReport:
        """
        Estymacja pól A_i01, A_i10, A_2, A_4 przez losowanie środka okręgu w kwadracie

        Args:
            e: Elipsa (nieruchoma, osie wzdłuż osi układu)
            r: Promień okręgu
            n: Liczba prób, co najmniej MIN_SAMPLES
            seed: Ziarno generatora
            workers: Liczba procesów (domyślnie WORKERS)

        Returns:
            EstimateReport z polami przeskalowanymi przez pole kwadratu [-(a+r), a+r]²
        """
        MonteCarloSimulator._validate_samples(n)
        areas = ClosedFormMeasures.areas(e, r)
        box = (2.0 * (e.a + r)) ** 2
        references = {
            'A_e': box - areas.A_plus,
            'A_i01': areas.A_i01,
            'A_i10': areas.A_i10,
            'A_2': areas.A_2,
            'A_4': areas.A_4,
        }
        counts = MonteCarloSimulator._run('areas', {'a': e.a, 'b': e.b, 'r': r}, n, seed, workers)
        # Kolumny: rozłączne, okrąg w elipsie, elipsa w okręgu, 2, 4, zdegenerowane
        degenerate = int(counts[5])
        MonteCarloSimulator._check_degenerate(degenerate, n)
        n_valid = n - degenerate
        report = EstimateReport(
            mode='areas', n=n, seed=seed, n_valid=n_valid, degenerate=degenerate,
            counts={}, estimates={}, stderr={}, closed_form={}, z_scores={},
            extra={'box_area': box, 'case': int(areas.case)},
        )
        for name, count in zip(AREA_CLASSES, counts[:5]):
            p_hat = int(count) / n_valid
            se, z = _z_score(p_hat, references[name] / box, n_valid)
            report.counts[name] = int(count)
            report.estimates[name] = p_hat * box
            report.stderr[name] = se * box
            report.closed_form[name] = references[name]
            report.z_scores[name] = z
        logger.info(f"Pola a={e.a}, b={e.b}, r={r}: liczniki {report.counts}, degeneracje {degenerate}")
        return report

    @staticmethod
    def simulate_throws(e: Ellipse, r: float, lat: Lattice, n: int, seed: int,
                        workers: Optional[int] = None) -> EstimateReport:
        """
        Losowy rzut elipsy na sieć okręgów

        Raises:
            AssumptionError: gdy 2(a+r) > min(s,t) albo rzut trafił dwa okręgi
        """
        MonteCarloSimulator._validate_samples(n)
        probabilities = ClosedFormMeasures.probabilities(e, r, lat)
        params = {'a': e.a, 'b': e.b, 'r': r, 's': lat.s, 't': lat.t, 'sigma': lat.sigma}
        counts = MonteCarloSimulator._run('throws', params, n, seed, workers)
        references = {
            'p_e': probabilities.p_e, 'p_i': probabilities.p_i,
            'p_2': probabilities.p_2, 'p_4': probabilities.p_4,
        }
        report = MonteCarloSimulator._frequency_report('throws', n, seed, THROW_CLASSES, counts, references)
        MonteCarloSimulator._add_mean_intersections(
            report, counts, ClosedFormMeasures.expected_intersections(e, r, lat)
        )
        logger.info(f"Rzuty elipsy: liczniki {report.counts}, maks. |z| = {report.max_abs_z:.2f}")
        return report

    @staticmethod
    def simulate_dual_throws(e: Ellipse, r: float, lat: Lattice, n: int, seed: int,
                             workers: Optional[int] = None) -> EstimateReport:
        """Rzut okręgu na sieć jednakowo zorientowanych elips; wzorce jak w simulate_throws"""
        MonteCarloSimulator._validate_samples(n)
        probabilities = ClosedFormMeasures.probabilities(e, r, lat)
        params = {'a': e.a, 'b': e.b, 'r': r, 's': lat.s, 't': lat.t, 'sigma': lat.sigma}
        counts = MonteCarloSimulator._run('dual-throws', params, n, seed, workers)
        references = {
            'p_e': probabilities.p_e, 'p_i': probabilities.p_i,
            'p_2': probabilities.p_2, 'p_4': probabilities.p_4,
        }
        report = MonteCarloSimulator._frequency_report('dual-throws', n, seed, THROW_CLASSES, counts, references)
        MonteCarloSimulator._add_mean_intersections(
            report, counts, ClosedFormMeasures.expected_intersections(e, r, lat)
        )
        logger.info(f"Rzuty okręgu: liczniki {report.counts}, maks. |z| = {report.max_abs_z:.2f}")
        return report

    @staticmethod
    def simulate_segment_throws(seg: SegmentSpec, lat: Lattice, n: int, seed: int,
                                workers: Optional[int] = None) -> EstimateReport:
        """
        Losowy rzut odcinka na sieć okręgów; klasy: poza, wewnątrz, 1 i 2 przecięcia

        Raises:
            AssumptionError: gdy 2(l/2 + r) > min(s,t)
        """
        MonteCarloSimulator._validate_samples(n)
        probabilities = ClosedFormMeasures.segment_probabilities(seg, lat)
        params = {'l': seg.l, 'r': seg.r, 's': lat.s, 't': lat.t, 'sigma': lat.sigma}
        counts = MonteCarloSimulator._run('segment-throws', params, n, seed, workers)
        references = {
            'p_e': probabilities.p_e, 'p_i': probabilities.p_i,
            'p_1': probabilities.p_1, 'p_2': probabilities.p_2,
        }
        report = MonteCarloSimulator._frequency_report(
            'segment-throws', n, seed, SEGMENT_CLASSES, counts, references
        )
        # m_1 + 2m_2 = 8 pi r l
        expected = 8.0 * math.pi * seg.r * seg.l / lat.total_measure
        MonteCarloSimulator._add_mean_intersections(report, counts, expected)
        logger.info(f"Rzuty odcinka: liczniki {report.counts}, maks. |z| = {report.max_abs_z:.2f}")
        return report
