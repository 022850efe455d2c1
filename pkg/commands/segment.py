"""
Polecenie segment - miary i prawdopodobieństwa dla odcinka
"""
import logging

from src.closed_form_measures import SegmentSpec
from src.report import ReportService

from .common import emit, lattice_from_args, require

logger = logging.getLogger(__name__)


def run_segment_command(args) -> int:
    require(args, 'l', 'r')
    seg = SegmentSpec(args.l, args.r)
    lat = lattice_from_args(args, required=False)
    logger.info(f"segment: l={seg.l}, r={seg.r}, sieć: {lat}")
    return emit(ReportService.segment_report(seg, lat), args)
