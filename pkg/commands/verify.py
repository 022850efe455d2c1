"""
Polecenie verify - siatka weryfikacyjna tożsamości i estymat Monte Carlo
"""
import logging
import sys

from src.config import Config
from src.errors import MeasuresError
from src.report import ReportService

from .common import emit, seed_from_args

logger = logging.getLogger(__name__)


def run_verify_command(args) -> int:
    seed = seed_from_args(args)
    samples = args.samples if args.samples is not None else Config.get_area_samples()
    table = ReportService.verify_grid(samples, seed, args.monte_carlo, args.workers)
    if args.format == 'table':
        sys.stdout.write(table.to_string(index=False) + '\n')
        try:
            ReportService.verify_report(table, samples, seed, args.monte_carlo)
        except MeasuresError as e:
            # tabela jest już na wyjściu, zostaje sam opis błędu
            e.report = None
            raise
        return 0
    return emit(ReportService.verify_report(table, samples, seed, args.monte_carlo), args)
