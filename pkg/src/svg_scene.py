"""
Galeria krzywych w SVG 1.1: elipsa, krzywe równoległe C1+ i C1-, ewoluta i ostrza
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Tuple

import numpy as np

from .ellipse_geometry import Ellipse, EllipseGeometry, LoopKind, OffsetSign, PlanePoint
from .errors import DomainError, InputError

logger = logging.getLogger(__name__)

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg width="%(width)fmm" height="%(height)fmm" viewBox="%(min_x)f %(min_y)f %(width)f %(height)f" version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<rect x="%(min_x)f" y="%(min_y)f" width="%(width)f" height="%(height)f" style="fill:#ffffff"/>
<g transform="scale(1,-1)">
"""

POSTAMBLE = """\
</g>
</svg>
"""

# Kolor i grubość linii; grubość jako ułamek większego wymiaru widoku
STYLES = {
    'ellipse': ('#000000', 0.003),
    'outer': ('#1f77b4', 0.002),
    'inner-containment': ('#2ca02c', 0.002),
    'inner-four-point': ('#d62728', 0.002),
    'evolute': ('#7f7f7f', 0.001),
}

# Margines widoku jako ułamek większego wymiaru rysunku
PADDING = 0.1
MIN_POINTS = 64


@dataclass(frozen=True)
class StyledPolyline:
    tag: str
    points: np.ndarray
    closed: bool = True


@dataclass
class CurveScene:
    """Łamane z etykietami stylu, znaczniki ostrzy i granice widoku"""

    polylines: List[StyledPolyline] = field(default_factory=list)
    cusps: List[PlanePoint] = field(default_factory=list)

    def bounds(self) -> Tuple[float, float, float, float]:
        """(min_x, min_y, max_x, max_y) wszystkich punktów sceny"""
        stacks = [p.points for p in self.polylines]
        if self.cusps:
            stacks.append(np.array([[c.x, c.y] for c in self.cusps], dtype=float))
        points = np.vstack(stacks)
        return (
            float(points[:, 0].min()), float(points[:, 1].min()),
            float(points[:, 0].max()), float(points[:, 1].max()),
        )

    def viewport(self) -> Tuple[float, float, float, float]:
        """Widok w układzie SVG (oś y odwrócona) z marginesem PADDING"""
        min_x, min_y, max_x, max_y = self.bounds()
        pad = max(max_x - min_x, max_y - min_y) * PADDING
        return (min_x - pad, -max_y - pad, max_x - min_x + 2 * pad, max_y - min_y + 2 * pad)


class SvgScene:
    """Budowanie sceny krzywych i zapis do pliku SVG"""

    @staticmethod
    def build(e: Ellipse, r: float, n: int) -> CurveScene:
        """
        Scena dla elipsy i promienia r

        Args:
            e: Elipsa
            r: Promień okręgu (odległość krzywych równoległych)
            n: Liczba punktów na krzywą, co najmniej 64

        Returns:
            CurveScene z pętlami C1- rozdzielonymi według rodzaju
        """
        if n < MIN_POINTS:
            raise InputError(f"Liczba punktów krzywej musi wynosić co najmniej {MIN_POINTS}, otrzymano {n}")
        scene = CurveScene()
        scene.polylines.append(StyledPolyline('ellipse', EllipseGeometry.sample_ellipse(e, n)))
        scene.polylines.append(
            StyledPolyline('outer', EllipseGeometry.sample_offset_curve(e, r, OffsetSign.OUTER, n))
        )
        for loop in EllipseGeometry.inner_offset_loops(e, r):
            tag = 'inner-containment' if loop.kind == LoopKind.CONTAINMENT else 'inner-four-point'
            scene.polylines.append(StyledPolyline(tag, EllipseGeometry.loop_polygon(e, r, loop, n)))
        if not e.is_circle:
            scene.polylines.append(StyledPolyline('evolute', EllipseGeometry.sample_evolute(e, n)))
        for phi in EllipseGeometry.cusp_angles(e, r):
            point = EllipseGeometry.offset_point(e, r, OffsetSign.INNER, phi)
            scene.cusps.append(PlanePoint(float(point.x), float(point.y)))

        for polyline in scene.polylines:
            if not np.all(np.isfinite(polyline.points)):
                raise DomainError(f"Nieskończone współrzędne w krzywej {polyline.tag}")
        logger.debug(f"Scena: {len(scene.polylines)} łamanych, {len(scene.cusps)} ostrzy")
        return scene

    @staticmethod
    def render(scene: CurveScene) -> str:
        """Tekst dokumentu SVG 1.1"""
        min_x, min_y, width, height = scene.viewport()
        extent = max(width, height)
        marker = extent * 0.006
        parts = [PREAMBLE % {'min_x': min_x, 'min_y': min_y, 'width': width, 'height': height}]
        for polyline in scene.polylines:
            color, fraction = STYLES[polyline.tag]
            element = 'polygon' if polyline.closed else 'polyline'
            points = ' '.join(f"{x:.6f},{y:.6f}" for x, y in polyline.points)
            parts.append(
                f'<{element} class="{polyline.tag}" points="{points}" '
                f'style="fill:none;stroke:{color};stroke-width:{fraction * extent:.6g}"/>\n'
            )
        for cusp in scene.cusps:
            parts.append(
                f'<circle class="cusp" cx="{cusp.x:.6f}" cy="{cusp.y:.6f}" r="{marker:.6f}" '
                f'style="fill:#ff7f0e;stroke:none"/>\n'
            )
        parts.append(POSTAMBLE)
        return ''.join(parts)

    @staticmethod
    def save(scene: CurveScene, path: str) -> Path:
        """
        Zapis sceny do pliku

        Raises:
            InputError: gdy pliku nie da się zapisać (komunikat zawiera ścieżkę)
        """
        target = Path(path)
        try:
            target.write_text(SvgScene.render(scene), encoding='utf-8')
        except OSError as e:
            raise InputError(f"Nie można zapisać pliku SVG {target}: {e}") from e
        logger.info(f"Zapisano rysunek: {target}")
        return target

