"""
Główna aplikacja CLI z modularną strukturą poleceń
"""
import argparse
import logging
import sys

from src import __version__
from src.config import Config
from src.errors import MeasuresError
from src.report import error_payload, failure_output

logger = logging.getLogger(__name__)


def add_ellipse_arguments(parser):
    parser.add_argument('--a', type=float, help='Półoś wielka elipsy')
    parser.add_argument('--b', type=float, help='Półoś mała elipsy')
    parser.add_argument('--r', type=float, help='Promień okręgu')


def add_lattice_arguments(parser):
    parser.add_argument('--s', type=float, help='Bok s równoległoboku sieci')
    parser.add_argument('--t', type=float, help='Bok t równoległoboku sieci')
    parser.add_argument('--sigma', type=float, help='Kąt sieci w radianach (domyślnie pi/2)')
    parser.add_argument('--sigma-deg', type=float, help='Kąt sieci w stopniach')


def add_run_arguments(parser):
    parser.add_argument('--samples', type=int, help='Liczba prób Monte Carlo')
    parser.add_argument('--seed', type=int, help='Ziarno generatora (domyślnie DEFAULT_SEED)')
    parser.add_argument('--workers', type=int, help='Liczba procesów (domyślnie WORKERS)')


def build_parser() -> argparse.ArgumentParser:
    """Parser linii poleceń ze wszystkimi poleceniami"""
    parser = argparse.ArgumentParser(prog='app.py', description=Config.get_app_name())
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json-indent', type=int, help='Wcięcie JSON (domyślnie JSON_INDENT)')

    measures = subparsers.add_parser('measures', parents=[common], help='Pola i miary kinematyczne')
    add_ellipse_arguments(measures)

    probabilities = subparsers.add_parser('probabilities', parents=[common], help='Prawdopodobieństwa rzutu')
    add_ellipse_arguments(probabilities)
    add_lattice_arguments(probabilities)

    simulate = subparsers.add_parser('simulate', parents=[common], help='Symulacje Monte Carlo')
    add_ellipse_arguments(simulate)
    add_lattice_arguments(simulate)
    add_run_arguments(simulate)
    simulate.add_argument('--l', type=float, help='Długość odcinka (tryb segment-throws)')
    simulate.add_argument(
        '--mode', choices=('areas', 'throws', 'segment-throws', 'dual-throws'), default='throws'
    )

    segment = subparsers.add_parser('segment', parents=[common], help='Odcinek rzucany na okrąg')
    segment.add_argument('--l', type=float, help='Długość odcinka')
    segment.add_argument('--r', type=float, help='Promień okręgu')
    add_lattice_arguments(segment)

    classify = subparsers.add_parser('classify', parents=[common], help='Klasyfikacja jednej pozycji')
    add_ellipse_arguments(classify)
    classify.add_argument('--x0', type=float, help='Środek okręgu, współrzędna x')
    classify.add_argument('--y0', type=float, help='Środek okręgu, współrzędna y')

    curves = subparsers.add_parser('curves', help='Rysunek SVG krzywych')
    add_ellipse_arguments(curves)
    curves.add_argument('--n', type=int, default=1024, help='Liczba punktów na krzywą (>= 64)')
    curves.add_argument('--out', help='Plik wyjściowy SVG')

    verify = subparsers.add_parser('verify', parents=[common], help='Siatka weryfikacyjna')
    add_run_arguments(verify)
    verify.add_argument('--monte-carlo', action='store_true', help='Dołącz estymaty Monte Carlo')
    verify.add_argument('--format', choices=('json', 'table'), default='json')
    return parser


def get_command(name):
    """Funkcja polecenia; import tutaj, żeby uniknąć cyklicznych importów"""
    if name == 'measures':
        from commands.measures import run_measures_command
        return run_measures_command
    if name == 'probabilities':
        from commands.probabilities import run_probabilities_command
        return run_probabilities_command
    if name == 'simulate':
        from commands.simulate import run_simulate_command
        return run_simulate_command
    if name == 'segment':
        from commands.segment import run_segment_command
        return run_segment_command
    if name == 'classify':
        from commands.classify import run_classify_command
        return run_classify_command
    if name == 'curves':
        from commands.curves import run_curves_command
        return run_curves_command
    from commands.verify import run_verify_command
    return run_verify_command


def main(argv=None) -> int:
    """Główna funkcja aplikacji"""
    args = build_parser().parse_args(argv)
    Config.setup_logging()

    try:
        # Walidacja konfiguracji
        Config.validate_config()
        logger.info(f"Polecenie {args.command} - start")
        return get_command(args.command)(args)

    except MeasuresError as e:
        logger.error(f"{type(e).__name__}: {e}")
        sys.stdout.write(failure_output(e, getattr(args, 'json_indent', None)) + '\n')
        return e.exit_code
    except ValueError as e:
        logger.error(f"Błąd konfiguracji: {e}")
        sys.stdout.write(error_payload(e, 2) + '\n')
        return 2
    except Exception as e:
        logger.exception(f"Nieoczekiwany błąd: {e}")
        sys.stdout.write(error_payload(e, 5) + '\n')
        return 5


if __name__ == "__main__":
    sys.exit(main())
