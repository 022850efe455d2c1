"""
Polecenie measures - tabela pól i miary kinematyczne
"""
import logging

from src.report import ReportService

from .common import ellipse_from_args, emit

logger = logging.getLogger(__name__)


def run_measures_command(args) -> int:
    """Pola, miary i reszty tożsamości dla (a, b, r)"""
    e = ellipse_from_args(args)
    logger.info(f"measures: a={e.a}, b={e.b}, r={args.r}")
    return emit(ReportService.measures_report(e, args.r), args)
