"""
Polecenie classify - położenie jednego okręgu względem elipsy
"""
import logging

from src.intersection_oracle import CenterOffset
from src.report import ReportService

from .common import ellipse_from_args, emit, require

logger = logging.getLogger(__name__)


def run_classify_command(args) -> int:
    e = ellipse_from_args(args)
    require(args, 'x0', 'y0')
    c = CenterOffset(args.x0, args.y0)
    logger.info(f"classify: a={e.a}, b={e.b}, r={args.r}, M0=({c.x0}, {c.y0})")
    return emit(ReportService.classify_report(e, args.r, c), args)
