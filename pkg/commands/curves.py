"""
Polecenie curves - rysunek SVG elipsy, krzywych równoległych i ewoluty
"""
import logging
import sys

from src.svg_scene import SvgScene

from .common import ellipse_from_args, require

logger = logging.getLogger(__name__)


def run_curves_command(args) -> int:
    e = ellipse_from_args(args)
    require(args, 'out')
    scene = SvgScene.build(e, args.r, args.n)
    path = SvgScene.save(scene, args.out)
    sys.stdout.write(f"{path}\n")
    return 0
