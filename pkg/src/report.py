"""
Raporty JSON - zestawienie pól, miar, prawdopodobieństw, estymat i reszt tożsamości
"""
import json
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from . import __version__
from .closed_form_measures import ClosedFormMeasures, Lattice, SegmentSpec
from .config import Config
from .ellipse_geometry import Ellipse, EllipseGeometry
from .errors import DegeneratePoseError, InternalConsistencyError, MeasuresError, StatisticalFailure
from .intersection_oracle import CenterOffset, IntersectionOracle, Relation
from .monte_carlo_sim import EstimateReport, MonteCarloSimulator

logger = logging.getLogger(__name__)

SCHEMA_VERSION = '1.0'
TOOL_NAME = 'ellipse-circle-measures'

# Tolerancje reszt względem max(1, A+)
RESIDUAL_TOLERANCES = {
    'partition': 1e-9,
    'poincare': 1e-9,
    'inner_area': 1e-8,
    'outer_area': 1e-8,
}

VERIFY_RADII = (0.3, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0)


@dataclass
class Report:
    """Raport jednego polecenia"""

    command: str
    inputs: Dict[str, Any]
    sections: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': SCHEMA_VERSION,
            'tool': {'name': TOOL_NAME, 'version': __version__},
            'command': self.command,
            'input': self.inputs,
            **self.sections,
        }


def _plain(value: Any, path: str = '') -> Any:
    """Zamiana typów numpy i wyliczeń na typy JSON; wartości nieskończone są błędem"""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _plain(v, f"{path}.{k}") for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v, f"{path}[{i}]") for i, v in enumerate(value)]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        number = float(value)
        if not math.isfinite(number):
            raise InternalConsistencyError(f"Nieskończona wartość w raporcie: {path}")
        return number
    return value


def to_json(report: Report, indent: Optional[int] = None) -> str:
    """Deterministyczna serializacja: posortowane klucze, najkrótszy zapis liczb"""
    indent = Config.get_json_indent() if indent is None else indent
    return json.dumps(_plain(report.as_dict()), indent=indent, sort_keys=True, ensure_ascii=False, allow_nan=False)


def _error_section(error: Exception, exit_code: int) -> Dict[str, Any]:
    return {'type': type(error).__name__, 'message': str(error), 'exit_code': exit_code}


def error_payload(error: Exception, exit_code: int) -> str:
    """Maszynowo czytelny opis błędu"""
    return json.dumps(
        {'error': _error_section(error, exit_code)},
        sort_keys=True,
        ensure_ascii=False,
    )


def failure_output(error: MeasuresError, indent: Optional[int] = None) -> str:
    """
    Wyjście polecenia zakończonego błędem

    Jeśli raport zdążył powstać, wypisywany jest w całości z dodatkową sekcją error;
    w przeciwnym razie sam opis błędu.
    """
    if error.report is None:
        return error_payload(error, error.exit_code)
    error.report.sections['error'] = _error_section(error, error.exit_code)
    return to_json(error.report, indent)


class ReportService:
    """Budowanie raportów dla poleceń CLI"""

    @staticmethod
    def ellipse_inputs(e: Ellipse, r: float) -> Dict[str, float]:
        return {'a': e.a, 'b': e.b, 'r': r}

    @staticmethod
    def lattice_inputs(lat: Lattice) -> Dict[str, float]:
        return {'s': lat.s, 't': lat.t, 'sigma': lat.sigma}

    @staticmethod
    def residuals(e: Ellipse, r: float, areas) -> Dict[str, float]:
        """
        Reszty tożsamości dla tabeli pól

        Returns:
            partition, poincare, inner_area (kwadratura - A*), outer_area (kwadratura - A+)
        """
        return {
            'partition': ClosedFormMeasures.partition_residual(areas),
            'poincare': ClosedFormMeasures.poincare_residual(e, r, areas),
            'inner_area': ClosedFormMeasures.signed_inner_area_quadrature(e, r) - areas.A_star,
            'outer_area': ClosedFormMeasures.outer_area_quadrature(e, r) - areas.A_plus,
        }

    @staticmethod
    def residual_failures(residuals: Dict[str, float], a_plus: float) -> List[str]:
        scale = max(1.0, a_plus)
        return [
            f"{name}={value:.3e}"
            for name, value in residuals.items()
            if abs(value) > RESIDUAL_TOLERANCES[name] * scale
        ]

    @staticmethod
    def check_residuals(residuals: Dict[str, float], a_plus: float) -> None:
        """
        Raises:
            InternalConsistencyError: gdy któraś reszta przekracza tolerancję
        """
        failures = ReportService.residual_failures(residuals, a_plus)
        if failures:
            raise InternalConsistencyError(f"Reszty tożsamości poza tolerancją: {', '.join(failures)}")

    @staticmethod
    def measures_report(e: Ellipse, r: float) -> Report:
        areas = ClosedFormMeasures.areas(e, r)
        measures = ClosedFormMeasures.measures(e, r)
        residuals = ReportService.residuals(e, r, areas)
        ReportService.check_residuals(residuals, areas.A_plus)
        return Report(
            command='measures',
            inputs=ReportService.ellipse_inputs(e, r),
            sections={
                'case': int(areas.case),
                'areas': areas.as_dict(),
                'measures': measures.as_dict(),
                'hit_measure': ClosedFormMeasures.hit_measure(e, r),
                'cusp_angle': EllipseGeometry.cusp_angle(e, r),
                'residuals': residuals,
            },
        )

    @staticmethod
    def probabilities_report(e: Ellipse, r: float, lat: Lattice) -> Report:
        probabilities = ClosedFormMeasures.probabilities(e, r, lat)
        report = ReportService.measures_report(e, r)
        report.command = 'probabilities'
        report.inputs.update(ReportService.lattice_inputs(lat))
        report.sections['total_measure'] = lat.total_measure
        report.sections['probabilities'] = probabilities.as_dict()
        report.sections['expected_intersections'] = ClosedFormMeasures.expected_intersections(e, r, lat)
        return report

    @staticmethod
    def segment_report(seg: SegmentSpec, lat: Optional[Lattice] = None) -> Report:
        m_1, m_2 = ClosedFormMeasures.segment_measures(seg)
        sections = {
            'measures': {'m_i': ClosedFormMeasures.segment_m_i(seg), 'm_1': m_1, 'm_2': m_2},
            'residuals': {'poincare': m_1 + 2.0 * m_2 - 8.0 * math.pi * seg.r * seg.l},
        }
        inputs = {'l': seg.l, 'r': seg.r}
        if lat is not None:
            inputs.update(ReportService.lattice_inputs(lat))
            sections['probabilities'] = ClosedFormMeasures.segment_probabilities(seg, lat).as_dict()
        return Report(command='segment', inputs=inputs, sections=sections)

    @staticmethod
    def classify_report(e: Ellipse, r: float, c: CenterOffset) -> Report:
        """
        Werdykty obu klasyfikatorów dla jednej pozycji

        Raises:
            DegeneratePoseError: pozycja styczna albo zbyt blisko krzywej równoległej
            InternalConsistencyError: gdy klasyfikatory się nie zgadzają
        """
        oracle = IntersectionOracle.classify(e, r, c)
        if oracle == Relation.DEGENERATE:
            raise DegeneratePoseError(f"Pozycja M0=({c.x0}, {c.y0}) jest styczna do elipsy")
        region = IntersectionOracle.region_cross_check(e, r, c)
        if region != oracle:
            raise InternalConsistencyError(
                f"Klasyfikatory niezgodne dla M0=({c.x0}, {c.y0}): {oracle.value} vs {region.value}"
            )
        points = IntersectionOracle.intersection_points(e, r, c)
        inputs = ReportService.ellipse_inputs(e, r)
        inputs.update({'x0': c.x0, 'y0': c.y0})
        return Report(
            command='classify',
            inputs=inputs,
            sections={
                'case': int(EllipseGeometry.case_classify(e, r)),
                'relation': oracle,
                'verdicts': {'oracle': oracle, 'region': region},
                'intersection_points': [[p.x, p.y] for p in points],
            },
        )

    @staticmethod
    def simulation_report(inputs: Dict[str, Any], estimate: EstimateReport) -> Report:
        """
        Raport symulacji; odchylenie powyżej Z_FAIL kończy polecenie błędem

        Raises:
            StatisticalFailure: gdy max |z| > Z_FAIL; wyjątek niesie pełny raport
        """
        report = Report(command='simulate', inputs=inputs, sections={'estimate': estimate.as_dict()})
        z_fail = Config.get_z_fail()
        if estimate.max_abs_z > z_fail:
            raise StatisticalFailure(
                f"Tryb {estimate.mode}: max |z| = {estimate.max_abs_z:.2f} > {z_fail:g}",
                report=report,
            )
        return report

    @staticmethod
    def verify_grid(samples: int, seed: int, with_mc: bool, workers: Optional[int] = None) -> pd.DataFrame:
        """
        Siatka weryfikacyjna a=2, b=1 dla promieni VERIFY_RADII

        Każda konfiguracja Monte Carlo z |z| > Z_FAIL jest powtarzana raz z ziarnem seed+1.

        Returns:
            DataFrame z jednym wierszem na promień
        """
        e = Ellipse(2.0, 1.0)
        z_fail = Config.get_z_fail()
        rows = []
        for r in VERIFY_RADII:
            areas = ClosedFormMeasures.areas(e, r)
            residuals = ReportService.residuals(e, r, areas)
            row = {'r': r, **areas.as_dict()}
            row.update({f"residual_{k}": v for k, v in residuals.items()})
            row['residuals_ok'] = not ReportService.residual_failures(residuals, areas.A_plus)
            if with_mc:
                estimate = MonteCarloSimulator.estimate_fixed_direction_areas(e, r, samples, seed, workers)
                if estimate.max_abs_z > z_fail:
                    logger.warning(f"r={r}: max |z| = {estimate.max_abs_z:.2f}, powtórzenie z ziarnem {seed + 1}")
                    estimate = MonteCarloSimulator.estimate_fixed_direction_areas(e, r, samples, seed + 1, workers)
                row['max_abs_z'] = estimate.max_abs_z
                row['mc_seed'] = estimate.seed
                row.update({f"z_{k}": v for k, v in estimate.z_scores.items()})
            rows.append(row)
        return pd.DataFrame(rows)

    @staticmethod
    def verify_report(table: pd.DataFrame, samples: int, seed: int, with_mc: bool) -> Report:
        """
        Raises:
            InternalConsistencyError: gdy reszty tożsamości przekraczają tolerancje
            StatisticalFailure: gdy po powtórzeniu max |z| > Z_FAIL

        Oba wyjątki niosą pełny raport siatki.
        """
        report = Report(
            command='verify',
            inputs={'a': 2.0, 'b': 1.0, 'samples': samples, 'seed': seed, 'monte_carlo': with_mc},
            sections={'grid': table.to_dict(orient='records')},
        )
        if not bool(table['residuals_ok'].all()):
            failing = table.loc[~table['residuals_ok'], 'r'].tolist()
            raise InternalConsistencyError(f"Reszty tożsamości poza tolerancją dla r = {failing}", report=report)
        if with_mc and float(table['max_abs_z'].max()) > Config.get_z_fail():
            failing = table.loc[table['max_abs_z'] > Config.get_z_fail(), 'r'].tolist()
            raise StatisticalFailure(f"Estymaty Monte Carlo odbiegają od wzorów dla r = {failing}", report=report)
        return report
