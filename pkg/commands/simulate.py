"""
Polecenie simulate - estymaty Monte Carlo z porównaniem do wzorów zamkniętych
"""
import logging

from src.closed_form_measures import SegmentSpec
from src.config import Config
from src.ellipse_geometry import Ellipse
from src.monte_carlo_sim import MonteCarloSimulator
from src.report import ReportService

from .common import emit, lattice_from_args, require, seed_from_args

logger = logging.getLogger(__name__)

MODES = ('areas', 'throws', 'segment-throws', 'dual-throws')


def run_simulate_command(args) -> int:
    """Uruchamia symulację w trybie --mode; max |z| > Z_FAIL kończy się kodem 4"""
    seed = seed_from_args(args)
    if args.samples is not None:
        samples = args.samples
    elif args.mode == 'areas':
        samples = Config.get_area_samples()
    else:
        samples = Config.get_throw_samples()
    workers = args.workers
    inputs = {'mode': args.mode, 'samples': samples, 'seed': seed}

    if args.mode == 'segment-throws':
        require(args, 'l', 'r')
        seg = SegmentSpec(args.l, args.r)
        lat = lattice_from_args(args)
        inputs.update({'l': seg.l, 'r': seg.r, 's': lat.s, 't': lat.t, 'sigma': lat.sigma})
        estimate = MonteCarloSimulator.simulate_segment_throws(seg, lat, samples, seed, workers)
    else:
        require(args, 'a', 'b', 'r')
        e = Ellipse(args.a, args.b)
        inputs.update({'a': e.a, 'b': e.b, 'r': args.r})
        if args.mode == 'areas':
            estimate = MonteCarloSimulator.estimate_fixed_direction_areas(e, args.r, samples, seed, workers)
        else:
            lat = lattice_from_args(args)
            inputs.update({'s': lat.s, 't': lat.t, 'sigma': lat.sigma})
            if args.mode == 'throws':
                estimate = MonteCarloSimulator.simulate_throws(e, args.r, lat, samples, seed, workers)
            else:
                estimate = MonteCarloSimulator.simulate_dual_throws(e, args.r, lat, samples, seed, workers)

    return emit(ReportService.simulation_report(inputs, estimate), args)
