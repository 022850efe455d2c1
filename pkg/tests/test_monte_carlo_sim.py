"""
Testy dla symulacji Monte Carlo
"""
import math
import os
from unittest.mock import patch

import numpy as np
import pytest

from src.closed_form_measures import Lattice, SegmentSpec
from src.ellipse_geometry import Ellipse
from src.errors import AssumptionError, InputError, OracleHealthError
from src.intersection_oracle import CIRCLE_INSIDE, DEGENERATE, DISJOINT, FOUR, TWO
from src.monte_carlo_sim import (
    MonteCarloSimulator,
    _segment_codes,
    _single_hit,
    draw_poses,
    rng_stream,
)

# Próg |z| dla testów jednostkowych ze stałym ziarnem
Z_UNIT = 4.5


@pytest.fixture
def ellipse():
    return Ellipse(2.0, 1.0)


@pytest.fixture
def small_chunks():
    with patch.dict(os.environ, {'CHUNK_SIZE': '10000'}, clear=True):
        yield


class TestRngStream:
    """Testy strumieni liczb losowych"""

    def test_replay_is_identical(self):
        """Test powtarzalności strumienia (seed=1, chunk=0)"""
        first = rng_stream(1, 0).random(1000)
        second = rng_stream(1, 0).random(1000)
        assert np.array_equal(first, second)

    def test_chunks_differ(self):
        """Test różnych strumieni dla różnych porcji"""
        assert not np.array_equal(rng_stream(1, 0).random(1000), rng_stream(1, 1).random(1000))

    def test_poses_inside_cell(self):
        """Test losowania położeń w równoległoboku"""
        lat = Lattice(10.0, 8.0, math.pi / 3)
        pose = draw_poses(rng_stream(3, 0), lat, 5000)
        assert np.all(pose.in_cell(lat))
        assert np.all((pose.psi >= 0) & (pose.psi < 2 * math.pi))


class TestChunking:
    """Testy podziału pracy"""

    def test_chunk_plan(self):
        """Test rozmiarów porcji"""
        assert MonteCarloSimulator.chunk_plan(25_000, 10_000) == [10_000, 10_000, 5_000]
        assert MonteCarloSimulator.chunk_plan(20_000, 10_000) == [10_000, 10_000]

    def test_minimum_samples(self, ellipse):
        """Test odrzucenia zbyt małej liczby prób"""
        with pytest.raises(InputError):
            MonteCarloSimulator.estimate_fixed_direction_areas(ellipse, 1.5, 100, seed=0)


class TestFixedDirectionAreas:
    """Testy estymacji pól"""

    def test_concentric_circle_containment(self, small_chunks):
        """Test a = b = 1, r = 3: A_i10 = 4 pi"""
        report = MonteCarloSimulator.estimate_fixed_direction_areas(Ellipse(1.0, 1.0), 3.0, 50_000, seed=5)
        assert report.closed_form['A_i10'] == pytest.approx(4 * math.pi)
        assert abs(report.z_scores['A_i10']) <= Z_UNIT
        assert sum(report.counts.values()) == report.n_valid
        assert report.n_valid + report.degenerate == report.n

    @pytest.mark.parametrize('r', [0.3, 0.8, 1.5, 3.0])
    def test_estimates_match_closed_form(self, ellipse, small_chunks, r):
        """Test zgodności estymat z tabelą pól"""
        report = MonteCarloSimulator.estimate_fixed_direction_areas(ellipse, r, 40_000, seed=17)
        assert report.max_abs_z <= Z_UNIT
        assert report.extra['box_area'] == pytest.approx((2 * (2.0 + r)) ** 2)

    def test_degenerate_cap(self, ellipse, small_chunks):
        """Test limitu pozycji zdegenerowanych"""
        def all_degenerate(e, r, x0, y0, *args, **kwargs):
            return np.full(np.shape(x0), DEGENERATE, dtype=np.int8)

        with patch('src.monte_carlo_sim.IntersectionOracle.classify_batch', side_effect=all_degenerate):
            with pytest.raises(OracleHealthError):
                MonteCarloSimulator.estimate_fixed_direction_areas(ellipse, 1.5, 10_000, seed=0)


class TestThrows:
    """Testy losowego rzutu na sieć"""

    def test_throws_match_closed_form(self, ellipse, small_chunks):
        """Test rzutu elipsy (2, 1, 1.5) na sieć 10 x 10"""
        report = MonteCarloSimulator.simulate_throws(ellipse, 1.5, Lattice(10.0, 10.0), 50_000, seed=3)
        assert set(report.counts) == {'p_e', 'p_i', 'p_2', 'p_4'}
        assert report.counts['p_i'] == 0
        assert report.max_abs_z <= Z_UNIT
        assert 'Z' in report.z_scores

    def test_skewed_lattice(self, ellipse, small_chunks):
        """Test sieci skośnej sigma = pi/3"""
        report = MonteCarloSimulator.simulate_throws(ellipse, 0.8, Lattice(10.0, 10.0, math.pi / 3), 40_000, seed=9)
        assert report.max_abs_z <= Z_UNIT

    def test_deterministic_counts(self, ellipse, small_chunks):
        """Test identycznych wyników dla tego samego ziarna"""
        lat = Lattice(10.0, 10.0)
        first = MonteCarloSimulator.simulate_throws(ellipse, 1.5, lat, 20_000, seed=42)
        second = MonteCarloSimulator.simulate_throws(ellipse, 1.5, lat, 20_000, seed=42)
        assert first.as_dict() == second.as_dict()

    def test_parallel_matches_sequential(self, ellipse, small_chunks):
        """Test niezależności wyniku od liczby procesów"""
        lat = Lattice(10.0, 10.0)
        sequential = MonteCarloSimulator.simulate_throws(ellipse, 1.5, lat, 30_000, seed=1, workers=1)
        parallel = MonteCarloSimulator.simulate_throws(ellipse, 1.5, lat, 30_000, seed=1, workers=2)
        assert sequential.counts == parallel.counts
        assert sequential.as_dict() == parallel.as_dict()

    def test_lattice_assumption(self, ellipse):
        """Test sieci zbyt gęstej"""
        with pytest.raises(AssumptionError):
            MonteCarloSimulator.simulate_throws(ellipse, 1.5, Lattice(6.0, 10.0), 10_000, seed=0)

    def test_single_hit(self):
        """Test wyniku rzutu z kodów względem wierzchołków sąsiedztwa"""
        codes = np.array([[DISJOINT, TWO, DISJOINT], [FOUR, DISJOINT, DISJOINT]])
        assert _single_hit(codes).tolist() == [FOUR, TWO, DISJOINT]
        with pytest.raises(AssumptionError):
            _single_hit(np.array([[TWO], [CIRCLE_INSIDE]]))

    def test_circle_containment_throws(self, small_chunks):
        """Test p_i dla okręgu rzucanego na sieć okręgów"""
        report = MonteCarloSimulator.simulate_throws(Ellipse(1.0, 1.0), 3.0, Lattice(12.0, 12.0), 40_000, seed=21)
        assert report.closed_form['p_i'] == pytest.approx(4 * math.pi / 144)
        assert abs(report.z_scores['p_i']) <= Z_UNIT

    def test_dual_throws(self, ellipse, small_chunks):
        """Test rzutu okręgu na sieć elips"""
        report = MonteCarloSimulator.simulate_dual_throws(ellipse, 0.8, Lattice(10.0, 10.0), 40_000, seed=4)
        assert report.mode == 'dual-throws'
        assert report.max_abs_z <= Z_UNIT


class TestSegmentThrows:
    """Testy rzutu odcinka"""

    def test_segment_codes(self):
        """Test relacji odcinka z okręgiem"""
        x0 = np.array([0.0, 1.0, 0.0, 5.0, 0.0])
        y0 = np.array([0.0, 0.0, 0.5, 0.0, 2.0])
        codes = _segment_codes(2.0, 1.5, x0, y0, 1e-10)
        # wewnątrz, jedno przecięcie, dwa przecięcia, rozłączne, styczne
        assert codes.tolist()[:4] == [CIRCLE_INSIDE, TWO, CIRCLE_INSIDE, DISJOINT]
        assert _segment_codes(2.0, 0.4, np.array([0.0]), np.array([0.1]), 1e-10).tolist() == [FOUR]
        assert codes[4] == DISJOINT
        assert _segment_codes(2.0, 1.5, np.array([0.0]), np.array([1.5]), 1e-10).tolist() == [DEGENERATE]

    def test_segment_throws(self, small_chunks):
        """Test rzutu odcinka l = 2 na okręgi r = 1.5"""
        report = MonteCarloSimulator.simulate_segment_throws(SegmentSpec(2.0, 1.5), Lattice(10.0, 10.0), 40_000, seed=8)
        assert set(report.counts) == {'p_e', 'p_i', 'p_1', 'p_2'}
        assert report.max_abs_z <= Z_UNIT


@pytest.mark.slow
class TestAcceptanceScale:
    """Testy w pełnej skali (1e6 prób dla pól, 1e7 dla rzutów)"""

    @pytest.mark.parametrize('r', [0.3, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0])
    def test_area_table(self, ellipse, r):
        """Test tabeli pól: |z| <= 3 (z jednym powtórzeniem) i 1% względnie"""
        report = MonteCarloSimulator.estimate_fixed_direction_areas(ellipse, r, 1_000_000, seed=100)
        if report.max_abs_z > 3.0:
            report = MonteCarloSimulator.estimate_fixed_direction_areas(ellipse, r, 1_000_000, seed=101)
        assert report.max_abs_z <= 3.0
        for name in ('A_i01', 'A_i10', 'A_2', 'A_4'):
            reference = report.closed_form[name]
            if reference > 0.01:
                assert abs(report.estimates[name] - reference) <= 0.01 * reference

    @pytest.mark.parametrize('r,sigma', [(1.5, math.pi / 2), (0.8, math.pi / 3)])
    def test_throw_probabilities(self, ellipse, r, sigma):
        """Test prawdopodobieństw rzutu i średniej liczby przecięć"""
        lat = Lattice(10.0, 10.0, sigma)
        report = MonteCarloSimulator.simulate_throws(ellipse, r, lat, 10_000_000, seed=200)
        if report.max_abs_z > 3.0:
            report = MonteCarloSimulator.simulate_throws(ellipse, r, lat, 10_000_000, seed=201)
        assert report.max_abs_z <= 3.0
