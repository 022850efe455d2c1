"""
Polecenie probabilities - prawdopodobieństwa rzutu elipsy na sieć okręgów
"""
import logging

from src.report import ReportService

from .common import ellipse_from_args, emit, lattice_from_args

logger = logging.getLogger(__name__)


def run_probabilities_command(args) -> int:
    e = ellipse_from_args(args)
    lat = lattice_from_args(args)
    logger.info(f"probabilities: a={e.a}, b={e.b}, r={args.r}, s={lat.s}, t={lat.t}, sigma={lat.sigma}")
    return emit(ReportService.probabilities_report(e, args.r, lat), args)
