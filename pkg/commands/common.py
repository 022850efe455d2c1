"""
Wspólne elementy poleceń - budowanie obiektów z argumentów i wypisywanie raportów
"""
import logging
import math
import sys
from typing import Optional

from src.closed_form_measures import Lattice
from src.config import Config
from src.ellipse_geometry import Ellipse
from src.errors import InputError
from src.report import Report, to_json

logger = logging.getLogger(__name__)


def require(args, *names):
    """Sprawdza, czy podano wymagane opcje"""
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name, None) is None]
    if missing:
        raise InputError(f"Brak wymaganych opcji: {', '.join(missing)}")


def ellipse_from_args(args) -> Ellipse:
    require(args, 'a', 'b', 'r')
    return Ellipse(args.a, args.b)


def lattice_from_args(args, required: bool = True) -> Optional[Lattice]:
    """
    Sieć z opcji --s, --t oraz --sigma albo --sigma-deg (domyślnie pi/2)

    Returns:
        Lattice albo None, gdy sieć nie jest wymagana i nie podano --s ani --t
    """
    if not required and args.s is None and args.t is None:
        return None
    require(args, 's', 't')
    if args.sigma is not None and args.sigma_deg is not None:
        raise InputError("Podaj --sigma albo --sigma-deg, nie oba naraz")
    if args.sigma_deg is not None:
        sigma = math.radians(args.sigma_deg)
    elif args.sigma is not None:
        sigma = args.sigma
    else:
        sigma = math.pi / 2
    return Lattice(args.s, args.t, sigma)


def seed_from_args(args) -> int:
    return Config.get_default_seed() if args.seed is None else args.seed


def emit(report: Report, args) -> int:
    """Wypisuje raport na standardowe wyjście"""
    indent = getattr(args, 'json_indent', None)
    sys.stdout.write(to_json(report, indent) + '\n')
    logger.info(f"Polecenie {report.command} zakończone")
    return 0
