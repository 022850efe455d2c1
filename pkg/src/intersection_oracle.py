"""
Wyrocznia przecięć okręgu z elipsą - liczenie rzeczywistych punktów przecięcia
i niezależne sprawdzenie przez położenie środka względem krzywych równoległych
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from scipy import optimize

from .config import Config
from .ellipse_geometry import CircleSpec, Ellipse, EllipseGeometry, LoopKind, OffsetSign, PlanePoint
from .errors import DegeneratePoseError, DomainError, IndeterminateRegionError, ResolutionError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
# Maksymalna liczba elementów tablicy pomocniczej na jedną porcję obliczeń
_MAX_CELLS = 4_000_000
_NEWTON_STEPS = 6


class Relation(str, Enum):
    """Położenie okręgu względem elipsy"""

    DISJOINT_OUTSIDE = "DisjointOutside"
    ELLIPSE_INSIDE_CIRCLE = "EllipseInsideCircle"
    CIRCLE_INSIDE_ELLIPSE = "CircleInsideEllipse"
    TWO_POINTS = "TwoPoints"
    FOUR_POINTS = "FourPoints"
    DEGENERATE = "Degenerate"


# Kody liczbowe relacji w obliczeniach wektorowych
RELATIONS: Tuple[Relation, ...] = tuple(Relation)
CODE = {relation: code for code, relation in enumerate(RELATIONS)}
DISJOINT = CODE[Relation.DISJOINT_OUTSIDE]
ELLIPSE_INSIDE = CODE[Relation.ELLIPSE_INSIDE_CIRCLE]
CIRCLE_INSIDE = CODE[Relation.CIRCLE_INSIDE_ELLIPSE]
TWO = CODE[Relation.TWO_POINTS]
FOUR = CODE[Relation.FOUR_POINTS]
DEGENERATE = CODE[Relation.DEGENERATE]

INTERSECTION_COUNT = {
    Relation.DISJOINT_OUTSIDE: 0,
    Relation.ELLIPSE_INSIDE_CIRCLE: 0,
    Relation.CIRCLE_INSIDE_ELLIPSE: 0,
    Relation.TWO_POINTS: 2,
    Relation.FOUR_POINTS: 4,
}


class CenterOffset(NamedTuple):
    """Środek okręgu M0 względem środka elipsy, w układzie elipsy"""

    x0: float
    y0: float


@dataclass(frozen=True)
class AgreementReport:
    """Wynik porównania obu klasyfikatorów na losowych pozycjach"""

    poses: int
    compared: int
    agreements: int
    near_boundary_skipped: int
    max_disagreement_distance: float

    @property
    def rate(self) -> float:
        return self.agreements / self.compared if self.compared else 1.0

    def as_dict(self):
        return {
            'poses': self.poses,
            'compared': self.compared,
            'agreements': self.agreements,
            'near_boundary_skipped': self.near_boundary_skipped,
            'max_disagreement_distance': self.max_disagreement_distance,
            'rate': self.rate,
        }


def _g(e: Ellipse, r: float, x0, y0, t):
    """g(t) = ((x0 + r cos t)/a)² + ((y0 + r sin t)/b)² - 1"""
    X = x0 + r * np.cos(t)
    Y = y0 + r * np.sin(t)
    return (X / e.a) ** 2 + (Y / e.b) ** 2 - 1.0


def _g_d1(e: Ellipse, r: float, x0, y0, t):
    c = np.cos(t)
    s = np.sin(t)
    return -2.0 * r * (x0 + r * c) * s / e.a ** 2 + 2.0 * r * (y0 + r * s) * c / e.b ** 2


def _g_d2(e: Ellipse, r: float, x0, y0, t):
    c = np.cos(t)
    s = np.sin(t)
    a2 = e.a ** 2
    b2 = e.b ** 2
    return (
        2.0 * r * r * s * s / a2 - 2.0 * r * (x0 + r * c) * c / a2
        + 2.0 * r * r * c * c / b2 - 2.0 * r * (y0 + r * s) * s / b2
    )


def _validate_pose(e: Ellipse, r: float) -> None:
    CircleSpec(r)


class IntersectionOracle:
    """Klasyfikacja pojedynczej pozycji okręgu oraz jej wersja wektorowa"""

    @staticmethod
    def _scan(e: Ellipse, r: float, x0: np.ndarray, y0: np.ndarray, grid: int, tol: float):
        """
        Zmiany znaku g na siatce plus pary pierwiastków ukryte między węzłami

        Każde dyskretne ekstremum g jest doprecyzowane metodą Newtona na g' = 0;
        minimum dodatnie w węzłach, a ujemne po doprecyzowaniu, oznacza dwa
        przecięcia w jednym oczku siatki (analogicznie dla maksimum).

        Returns:
            (liczba przecięć, flaga styczności, g w t = 0, dane ekstremów)
        """
        dt = TWO_PI / grid
        t = np.arange(grid) * dt
        G = _g(e, r, x0[:, None], y0[:, None], t[None, :])
        positive = G > 0
        sign_changes = np.count_nonzero(positive != np.roll(positive, -1, axis=1), axis=1)

        prev = np.roll(G, 1, axis=1)
        nxt = np.roll(G, -1, axis=1)
        is_min = (G <= prev) & (G < nxt)
        is_max = (G >= prev) & (G > nxt)
        rows, cols = np.nonzero(is_min | is_max)
        node_value = G[rows, cols]
        row_is_min = is_min[rows, cols]

        t_ext = t[cols].copy()
        lo = t_ext - dt
        hi = t_ext + dt
        xr = x0[rows]
        yr = y0[rows]
        for _ in range(_NEWTON_STEPS):
            d1 = _g_d1(e, r, xr, yr, t_ext)
            d2 = _g_d2(e, r, xr, yr, t_ext)
            usable = np.where(row_is_min, d2 > 0, d2 < 0)
            step = np.divide(d1, d2, out=np.zeros_like(d1), where=usable)
            t_ext = np.clip(t_ext - step, lo, hi)
        refined = _g(e, r, xr, yr, t_ext)
        refined = np.where(row_is_min, np.minimum(refined, node_value), np.maximum(refined, node_value))

        hidden = np.where(row_is_min, (node_value > 0) & (refined < 0), (node_value <= 0) & (refined > 0))
        n = x0.shape[0]
        extra = 2 * np.bincount(rows[hidden], minlength=n)
        tangent = np.bincount(rows[np.abs(refined) < tol], minlength=n) > 0
        tangent |= np.min(np.abs(G), axis=1) < tol
        crossings = sign_changes + extra
        return crossings, tangent, G[:, 0], (rows, t_ext, hidden, t[cols])

    @staticmethod
    def _resolve(e: Ellipse, r: float, x0, y0, crossings, tangent, g_first):
        """Zamiana liczby przecięć na kody relacji (rozstrzyganie zawierania)"""
        vertex_in_circle = (e.a - x0) ** 2 + y0 ** 2 < r * r
        no_cross = np.where(
            g_first < 0,
            CIRCLE_INSIDE,
            np.where(vertex_in_circle, ELLIPSE_INSIDE, DISJOINT),
        )
        codes = np.select([crossings == 0, crossings == 2, crossings == 4], [no_cross, TWO, FOUR], DEGENERATE)
        codes = np.where(tangent, DEGENERATE, codes)
        return codes.astype(np.int8)

    @staticmethod
    def classify_batch(e: Ellipse, r: float, x0, y0, grid: Optional[int] = None,
                       tol: Optional[float] = None) -> np.ndarray:
        """
        Wektorowa klasyfikacja wielu pozycji okręgu

        Pozycje daleko od elipsy są rozstrzygane bez siatki: d > a + r (rozłączne),
        d + r < b (okrąg w elipsie), d + a < r (elipsa w okręgu).

        Args:
            e: Elipsa
            r: Promień okręgu
            x0, y0: Tablice współrzędnych środków okręgu w układzie elipsy
            grid: Liczba węzłów siatki t (domyślnie BATCH_GRID)
            tol: Próg styczności w jednostkach g (domyślnie TANGENCY_TOL)

        Returns:
            Tablica kodów relacji (indeksy w RELATIONS)
        """
        _validate_pose(e, r)
        grid = grid or Config.get_batch_grid()
        tol = tol if tol is not None else Config.get_tangency_tol()
        x0 = np.atleast_1d(np.asarray(x0, dtype=float))
        y0 = np.atleast_1d(np.asarray(y0, dtype=float))
        d = np.hypot(x0, y0)
        codes = np.full(x0.shape, -1, dtype=np.int8)
        codes[d > e.a + r] = DISJOINT
        codes[d + r < e.b] = CIRCLE_INSIDE
        codes[d + e.a < r] = ELLIPSE_INSIDE

        pending = np.nonzero(codes < 0)[0]
        rows_per_chunk = max(1, _MAX_CELLS // grid)
        for start in range(0, pending.size, rows_per_chunk):
            idx = pending[start:start + rows_per_chunk]
            crossings, tangent, g_first, _ = IntersectionOracle._scan(e, r, x0[idx], y0[idx], grid, tol)
            codes[idx] = IntersectionOracle._resolve(e, r, x0[idx], y0[idx], crossings, tangent, g_first)
        return codes

    @staticmethod
    def classify(e: Ellipse, r: float, c: CenterOffset, tol: Optional[float] = None,
                 grid: Optional[int] = None) -> Relation:
        """
        Klasyfikacja jednej pozycji okręgu na gęstej siatce (domyślnie ORACLE_GRID)

        Raises:
            ResolutionError: gdy po doprecyzowaniu liczba przecięć jest nieparzysta
        """
        _validate_pose(e, r)
        if not (tol is None or tol > 0):
            raise DomainError(f"Tolerancja musi być dodatnia, otrzymano {tol}")
        grid = grid or Config.get_oracle_grid()
        tol = tol if tol is not None else Config.get_tangency_tol()
        x0 = np.array([float(c[0])])
        y0 = np.array([float(c[1])])
        crossings, tangent, g_first, _ = IntersectionOracle._scan(e, r, x0, y0, grid, tol)
        count = int(crossings[0])
        if not tangent[0] and (count % 2 == 1 or count > 4):
            raise ResolutionError(
                f"Liczba przecięć {count} po doprecyzowaniu dla M0=({c[0]}, {c[1]}) - niezgodność siatki i tolerancji"
            )
        code = int(IntersectionOracle._resolve(e, r, x0, y0, crossings, tangent, g_first)[0])
        relation = RELATIONS[code]
        logger.debug(f"Klasyfikacja a={e.a}, b={e.b}, r={r}, M0=({c[0]}, {c[1]}): {relation.value}")
        return relation

    @staticmethod
    def count_intersections(e: Ellipse, r: float, c: CenterOffset) -> int:
        """
        Liczba różnych przecięć transwersalnych: 0, 2 albo 4

        Raises:
            DegeneratePoseError: dla pozycji stycznej
        """
        relation = IntersectionOracle.classify(e, r, c)
        if relation == Relation.DEGENERATE:
            raise DegeneratePoseError(f"Pozycja M0=({c[0]}, {c[1]}) jest styczna")
        return INTERSECTION_COUNT[relation]

    @staticmethod
    def intersection_points(e: Ellipse, r: float, c: CenterOffset,
                            grid: Optional[int] = None) -> List[PlanePoint]:
        """
        Rzeczywiste punkty przecięcia doprecyzowane metodą Brenta

        Raises:
            DegeneratePoseError: dla pozycji stycznej
        """
        _validate_pose(e, r)
        grid = grid or Config.get_oracle_grid()
        tol = Config.get_tangency_tol()
        x0 = float(c[0])
        y0 = float(c[1])
        crossings, tangent, _, extrema = IntersectionOracle._scan(
            e, r, np.array([x0]), np.array([y0]), grid, tol
        )
        if tangent[0]:
            raise DegeneratePoseError(f"Pozycja M0=({x0}, {y0}) jest styczna")

        def g(t: float) -> float:
            return float(_g(e, r, x0, y0, t))

        dt = TWO_PI / grid
        t = np.arange(grid) * dt
        values = _g(e, r, x0, y0, t)
        roots = []
        for i in range(grid):
            if (values[i] > 0) != (values[(i + 1) % grid] > 0):
                roots.append(optimize.brentq(g, t[i], t[i] + dt, xtol=1e-14))
        _, t_ext, hidden, t_node = extrema
        for t_star, node in zip(t_ext[hidden], t_node[hidden]):
            roots.append(optimize.brentq(g, node - dt, t_star, xtol=1e-14))
            roots.append(optimize.brentq(g, t_star, node + dt, xtol=1e-14))
        roots = sorted(root % TWO_PI for root in roots)
        return [PlanePoint(x0 + r * math.cos(root), y0 + r * math.sin(root)) for root in roots]

    @staticmethod
    def _winding_numbers(px: np.ndarray, py: np.ndarray, polygon: np.ndarray) -> np.ndarray:
        """Indeks punktów względem zamkniętej łamanej (suma kątów skierowanych)"""
        vx = polygon[None, :, 0] - px[:, None]
        vy = polygon[None, :, 1] - py[:, None]
        nx = np.roll(vx, -1, axis=1)
        ny = np.roll(vy, -1, axis=1)
        angles = np.arctan2(vx * ny - vy * nx, vx * nx + vy * ny)
        return np.rint(np.sum(angles, axis=1) / TWO_PI).astype(int)

    @staticmethod
    def _polyline_distance(px: np.ndarray, py: np.ndarray, polygon: np.ndarray) -> np.ndarray:
        """Odległość punktów od zamkniętej łamanej"""
        ax = polygon[:, 0][None, :]
        ay = polygon[:, 1][None, :]
        bx = np.roll(polygon[:, 0], -1)[None, :]
        by = np.roll(polygon[:, 1], -1)[None, :]
        ex = bx - ax
        ey = by - ay
        length2 = ex * ex + ey * ey
        wx = px[:, None] - ax
        wy = py[:, None] - ay
        u = np.divide(wx * ex + wy * ey, length2, out=np.zeros((px.size, ex.shape[1])), where=length2 > 0)
        u = np.clip(u, 0.0, 1.0)
        return np.min(np.hypot(wx - u * ex, wy - u * ey), axis=1)

    @staticmethod
    def region_classify_batch(e: Ellipse, r: float, x0, y0,
                              n: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
        """
        Klasyfikacja przez położenie M0 względem C1+ i pętli C1-

        Poza C1+ - rozłączne; wewnątrz pętli czteropunktowej - cztery przecięcia;
        wewnątrz pętli zawierania - zawieranie; w pozostałej części - dwa przecięcia.

        Returns:
            (kody relacji, odległość M0 od najbliższej krzywej równoległej)
        """
        _validate_pose(e, r)
        n = n or Config.get_region_grid()
        x0 = np.atleast_1d(np.asarray(x0, dtype=float))
        y0 = np.atleast_1d(np.asarray(y0, dtype=float))
        outer = EllipseGeometry.sample_offset_curve(e, r, OffsetSign.OUTER, n)
        loops = [
            (loop.kind, EllipseGeometry.loop_polygon(e, r, loop, n))
            for loop in EllipseGeometry.inner_offset_loops(e, r)
        ]
        containment = CIRCLE_INSIDE if r < e.b else ELLIPSE_INSIDE

        codes = np.empty(x0.shape, dtype=np.int8)
        distance = np.empty(x0.shape)
        points_per_chunk = max(1, _MAX_CELLS // (2 * n))
        for start in range(0, x0.size, points_per_chunk):
            px = x0[start:start + points_per_chunk]
            py = y0[start:start + points_per_chunk]
            chunk = np.full(px.shape, TWO, dtype=np.int8)
            dist = IntersectionOracle._polyline_distance(px, py, outer)
            in_four = np.zeros(px.shape, dtype=bool)
            in_containment = np.zeros(px.shape, dtype=bool)
            for kind, polygon in loops:
                inside = np.abs(IntersectionOracle._winding_numbers(px, py, polygon)) >= 1
                if kind == LoopKind.FOUR_POINT:
                    in_four |= inside
                else:
                    in_containment |= inside
                dist = np.minimum(dist, IntersectionOracle._polyline_distance(px, py, polygon))
            chunk[in_containment] = containment
            chunk[in_four] = FOUR
            outside = IntersectionOracle._winding_numbers(px, py, outer) == 0
            chunk[outside] = DISJOINT
            codes[start:start + points_per_chunk] = chunk
            distance[start:start + points_per_chunk] = dist
        return codes, distance

    @staticmethod
    def region_cross_check(e: Ellipse, r: float, c: CenterOffset,
                           boundary_tol: Optional[float] = None) -> Relation:
        """
        Niezależna klasyfikacja jednej pozycji przez krzywe równoległe

        Raises:
            IndeterminateRegionError: gdy M0 leży bliżej niż boundary_tol od krzywej
        """
        boundary_tol = boundary_tol if boundary_tol is not None else Config.get_boundary_tol()
        codes, distance = IntersectionOracle.region_classify_batch(e, r, [c[0]], [c[1]])
        if distance[0] <= boundary_tol:
            raise IndeterminateRegionError(
                f"M0=({c[0]}, {c[1]}) leży {distance[0]:.2e} od krzywej równoległej (próg {boundary_tol:g})"
            )
        return RELATIONS[int(codes[0])]

    @staticmethod
    def agreement_experiment(e: Ellipse, r: float, n_poses: int, seed: int,
                             boundary_tol: Optional[float] = None,
                             skip_distance: float = 0.0) -> AgreementReport:
        """
        Porównanie obu klasyfikatorów na losowych pozycjach z kwadratu [-(a+r), a+r]²

        Pozycje zdegenerowane oraz leżące bliżej niż skip_distance od krzywych są
        pomijane; niezgodności raportowane są przez największą odległość od krzywej.
        """
        boundary_tol = boundary_tol if boundary_tol is not None else Config.get_boundary_tol()
        rng = np.random.default_rng(np.random.SeedSequence(seed))
        half = e.a + r
        x0 = rng.uniform(-half, half, n_poses)
        y0 = rng.uniform(-half, half, n_poses)
        oracle = IntersectionOracle.classify_batch(e, r, x0, y0, grid=Config.get_oracle_grid())
        region, distance = IntersectionOracle.region_classify_batch(e, r, x0, y0)

        considered = (oracle != DEGENERATE) & (distance > max(skip_distance, 0.0))
        agree = considered & (oracle == region)
        disagree = considered & (oracle != region)
        max_distance = float(np.max(distance[disagree])) if np.any(disagree) else 0.0
        report = AgreementReport(
            poses=n_poses,
            compared=int(np.count_nonzero(considered)),
            agreements=int(np.count_nonzero(agree)),
            near_boundary_skipped=int(n_poses - np.count_nonzero(considered)),
            max_disagreement_distance=max_distance,
        )
        if np.any(disagree):
            logger.warning(
                f"Niezgodność klasyfikatorów dla {int(np.count_nonzero(disagree))} pozycji, "
                f"maks. odległość od krzywej {max_distance:.2e} (próg {boundary_tol:g})"
            )
        return report
