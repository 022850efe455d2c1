"""
Geometria elipsy oparta na funkcji podparcia: krzywe równoległe, ewoluta, ostrza
i klasyfikacja pięciu przypadków względem promienia okręgu
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import List, NamedTuple, Optional, Tuple, Union

import numpy as np

from .errors import CaseError, DomainError
from .special_functions import EllipticIntegrals

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Ellipse:
    """Elipsa o półosiach a >= b > 0, środek w początku układu, oś wielka na osi x"""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("Półosie elipsy muszą być skończone")
        if not (self.a >= self.b > 0):
            raise DomainError(f"Wymagane a >= b > 0, otrzymano a={self.a}, b={self.b}")

    @property
    def eccentricity(self) -> float:
        return math.sqrt(max(0.0, self.a ** 2 - self.b ** 2)) / self.a

    @property
    def is_circle(self) -> bool:
        return self.a == self.b

    @property
    def area(self) -> float:
        return math.pi * self.a * self.b

    @property
    def perimeter(self) -> float:
        return 4.0 * self.a * EllipticIntegrals.complete_E(self.eccentricity)


@dataclass(frozen=True)
class CircleSpec:
    """Nieruchomy okrąg C0 o promieniu r"""

    r: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0):
            raise DomainError(f"Promień okręgu musi być dodatni, otrzymano r={self.r}")


class OffsetSign(IntEnum):
    """Wybór krzywej równoległej: +1 zewnętrzna C1+, -1 wewnętrzna C1-"""

    OUTER = 1
    INNER = -1


class PlanePoint(NamedTuple):
    x: ArrayLike
    y: ArrayLike


class CaseId(IntEnum):
    """Pięć zakresów r: (0, b²/a], (b²/a, b), [b, a], (a, a²/b), [a²/b, inf)"""

    SMOOTH_INNER = 1
    SIDE_SWALLOWTAILS = 2
    ASTROIDAL = 3
    POLAR_SWALLOWTAILS = 4
    REVERSED_INNER = 5


class LoopKind(str, Enum):
    """Rodzaj pętli krzywej C1- według liczby przecięć dla środka wewnątrz pętli"""

    CONTAINMENT = "containment"
    FOUR_POINT = "four-point"


@dataclass(frozen=True)
class OffsetLoop:
    """Pętla krzywej C1- jako suma łuków parametru phi"""

    kind: LoopKind
    arcs: Tuple[Tuple[float, float], ...]


def _check_radius(r: float) -> None:
    CircleSpec(r)


class EllipseGeometry:
    """Funkcja podparcia, krzywe równoległe i kąty charakterystyczne elipsy"""

    @staticmethod
    def support(e: Ellipse, phi: ArrayLike) -> ArrayLike:
        """Funkcja podparcia p(phi) = sqrt(a² cos² phi + b² sin² phi)"""
        phi = np.asarray(phi, dtype=float)
        value = np.sqrt(e.a ** 2 * np.cos(phi) ** 2 + e.b ** 2 * np.sin(phi) ** 2)
        return float(value) if value.ndim == 0 else value

    @staticmethod
    def support_d1(e: Ellipse, phi: ArrayLike) -> ArrayLike:
        """Pierwsza pochodna p'(phi)"""
        phi = np.asarray(phi, dtype=float)
        p = np.sqrt(e.a ** 2 * np.cos(phi) ** 2 + e.b ** 2 * np.sin(phi) ** 2)
        value = -(e.a ** 2 - e.b ** 2) * np.cos(phi) * np.sin(phi) / p
        return float(value) if value.ndim == 0 else value

    @staticmethod
    def support_d2(e: Ellipse, phi: ArrayLike) -> ArrayLike:
        """Druga pochodna p''(phi)"""
        phi = np.asarray(phi, dtype=float)
        c = np.cos(phi)
        s = np.sin(phi)
        p2 = e.a ** 2 * c ** 2 + e.b ** 2 * s ** 2
        value = -(e.a ** 2 - e.b ** 2) * (e.a ** 2 * c ** 4 - e.b ** 2 * s ** 4) / p2 ** 1.5
        return float(value) if value.ndim == 0 else value

    @staticmethod
    def ellipse_point(e: Ellipse, phi: ArrayLike) -> PlanePoint:
        """Punkt elipsy o normalnej zewnętrznej (cos phi, sin phi)"""
        phi = np.asarray(phi, dtype=float)
        p = EllipseGeometry.support(e, phi)
        x = e.a ** 2 * np.cos(phi) / p
        y = e.b ** 2 * np.sin(phi) / p
        if np.ndim(x) == 0:
            return PlanePoint(float(x), float(y))
        return PlanePoint(x, y)

    @staticmethod
    def offset_point(e: Ellipse, r: float, k: OffsetSign, phi: ArrayLike) -> PlanePoint:
        """
        Punkt krzywej równoległej w odległości r

        Args:
            e: Elipsa
            r: Odległość (promień okręgu)
            k: +1 dla C1+, -1 dla C1-
            phi: Kierunek normalnej

        Returns:
            ((a²/p + k r) cos phi, (b²/p + k r) sin phi)
        """
        _check_radius(r)
        k = int(k)
        if k not in (1, -1):
            raise DomainError(f"k musi wynosić +1 lub -1, otrzymano {k}")
        phi = np.asarray(phi, dtype=float)
        p = EllipseGeometry.support(e, phi)
        x = (e.a ** 2 / p + k * r) * np.cos(phi)
        y = (e.b ** 2 / p + k * r) * np.sin(phi)
        if np.ndim(x) == 0:
            return PlanePoint(float(x), float(y))
        return PlanePoint(x, y)

    @staticmethod
    def evolute_point(e: Ellipse, phi: ArrayLike) -> PlanePoint:
        """Punkt ewoluty (środek krzywizny) odpowiadający normalnej phi"""
        phi = np.asarray(phi, dtype=float)
        p = EllipseGeometry.support(e, phi)
        x = e.a ** 2 * np.cos(phi) / p * (1.0 - e.b ** 2 / p ** 2)
        y = e.b ** 2 * np.sin(phi) / p * (1.0 - e.a ** 2 / p ** 2)
        if np.ndim(x) == 0:
            return PlanePoint(float(x), float(y))
        return PlanePoint(x, y)

    @staticmethod
    def curvature_radius_bounds(e: Ellipse) -> Tuple[float, float]:
        """Najmniejszy i największy promień krzywizny: (b²/a, a²/b)"""
        return e.b ** 2 / e.a, e.a ** 2 / e.b

    @staticmethod
    def cusp_angle(e: Ellipse, r: float) -> Optional[float]:
        """
        Kąt lambda ostrza krzywej C1-

        Returns:
            lambda z [0, pi/2] gdy b²/a <= r <= a²/b, w przeciwnym razie None;
            dla okręgu (a = b) zawsze None
        """
        _check_radius(r)
        if e.is_circle:
            return None
        r_min, r_max = EllipseGeometry.curvature_radius_bounds(e)
        if r < r_min or r > r_max:
            return None
        arg = (2.0 * (e.a ** 2 * e.b ** 2 / r) ** (2.0 / 3.0) - e.a ** 2 - e.b ** 2) / (
            e.a ** 2 - e.b ** 2
        )
        return 0.5 * math.acos(min(1.0, max(-1.0, arg)))

    @staticmethod
    def cusp_angles(e: Ellipse, r: float) -> Tuple[float, ...]:
        """Wszystkie ostrza w [0, 2pi): lambda, pi - lambda, pi + lambda, 2pi - lambda"""
        lam = EllipseGeometry.cusp_angle(e, r)
        if lam is None:
            return ()
        return (lam, math.pi - lam, math.pi + lam, TWO_PI - lam)

    @staticmethod
    def case_classify(e: Ellipse, r: float) -> CaseId:
        """Przypadek 1-5 wyznaczony wyłącznie przez położenie r"""
        _check_radius(r)
        if e.is_circle:
            # Przedziały 2 i 4 są puste, r = a = b należy do przypadku 3
            if r < e.a:
                return CaseId.SMOOTH_INNER
            if r == e.a:
                return CaseId.ASTROIDAL
            return CaseId.REVERSED_INNER
        r_min, r_max = EllipseGeometry.curvature_radius_bounds(e)
        if r <= r_min:
            return CaseId.SMOOTH_INNER
        if r < e.b:
            return CaseId.SIDE_SWALLOWTAILS
        if r <= e.a:
            return CaseId.ASTROIDAL
        if r < r_max:
            return CaseId.POLAR_SWALLOWTAILS
        return CaseId.REVERSED_INNER

    @staticmethod
    def alpha_from_formula(e: Ellipse, r: float) -> float:
        """Wzór na alpha bez sprawdzania przypadku (także na krańcach przedziału)"""
        num = math.sqrt(max(0.0, r * r * e.a * e.a - e.b ** 4))
        den = e.b * math.sqrt(max(0.0, e.b * e.b - r * r))
        return math.atan2(num, den)

    @staticmethod
    def beta_from_formula(e: Ellipse, r: float) -> float:
        """Wzór na beta bez sprawdzania przypadku (także na krańcach przedziału)"""
        num = e.a * math.sqrt(max(0.0, r * r - e.a * e.a))
        den = math.sqrt(max(0.0, e.a ** 4 - r * r * e.b * e.b))
        return math.atan2(num, den)

    @staticmethod
    def alpha_angle(e: Ellipse, r: float) -> float:
        """
        Pierwszy kąt punktu podwójnego C1- na osi x (przypadek 2)

        Raises:
            CaseError: gdy r nie leży w (b²/a, b)
        """
        case = EllipseGeometry.case_classify(e, r)
        if case != CaseId.SIDE_SWALLOWTAILS:
            raise CaseError(f"alpha jest zdefiniowane tylko w przypadku 2, a r={r} daje przypadek {int(case)}")
        return EllipseGeometry.alpha_from_formula(e, r)

    @staticmethod
    def beta_angle(e: Ellipse, r: float) -> float:
        """
        Pierwszy kąt punktu podwójnego C1- na osi y (przypadek 4)

        Raises:
            CaseError: gdy r nie leży w (a, a²/b)
        """
        case = EllipseGeometry.case_classify(e, r)
        if case != CaseId.POLAR_SWALLOWTAILS:
            raise CaseError(f"beta jest zdefiniowane tylko w przypadku 4, a r={r} daje przypadek {int(case)}")
        return EllipseGeometry.beta_from_formula(e, r)

    @staticmethod
    def sample_offset_curve(e: Ellipse, r: float, k: OffsetSign, n: int) -> np.ndarray:
        """
        Łamana krzywej równoległej: n punktów dla phi równomiernie w [0, 2pi)

        Returns:
            Tablica (n, 2) w orientacji wynikającej z parametryzacji
        """
        if n < 4:
            raise DomainError(f"Liczba punktów musi wynosić co najmniej 4, otrzymano {n}")
        phi = np.arange(n) * (TWO_PI / n)
        point = EllipseGeometry.offset_point(e, r, k, phi)
        return np.column_stack([point.x, point.y])

    @staticmethod
    def sample_arc(e: Ellipse, r: float, k: OffsetSign, phi_start: float,
                   phi_end: float, n: int) -> np.ndarray:
        """Łamana jednego łuku parametru, z oboma końcami"""
        phi = np.linspace(phi_start, phi_end, max(int(n), 2))
        point = EllipseGeometry.offset_point(e, r, k, phi)
        return np.column_stack([point.x, point.y])

    @staticmethod
    def sample_ellipse(e: Ellipse, n: int) -> np.ndarray:
        phi = np.arange(n) * (TWO_PI / n)
        point = EllipseGeometry.ellipse_point(e, phi)
        return np.column_stack([point.x, point.y])

    @staticmethod
    def sample_evolute(e: Ellipse, n: int) -> np.ndarray:
        phi = np.arange(n) * (TWO_PI / n)
        point = EllipseGeometry.evolute_point(e, phi)
        return np.column_stack([point.x, point.y])

    @staticmethod
    def inner_offset_loops(e: Ellipse, r: float) -> List[OffsetLoop]:
        """
        Rozkład C1- na pętle w punktach samoprzecięcia

        Pętla CONTAINMENT otacza środki, dla których zachodzi zawieranie,
        pętle FOUR_POINT - środki z czterema punktami przecięcia.
        """
        case = EllipseGeometry.case_classify(e, r)
        pi = math.pi
        if case in (CaseId.SMOOTH_INNER, CaseId.REVERSED_INNER):
            return [OffsetLoop(LoopKind.CONTAINMENT, ((0.0, TWO_PI),))]
        if case == CaseId.ASTROIDAL:
            return [OffsetLoop(LoopKind.FOUR_POINT, ((0.0, TWO_PI),))]
        if case == CaseId.SIDE_SWALLOWTAILS:
            alpha = EllipseGeometry.alpha_from_formula(e, r)
            return [
                OffsetLoop(LoopKind.CONTAINMENT, ((alpha, pi - alpha), (pi + alpha, TWO_PI - alpha))),
                OffsetLoop(LoopKind.FOUR_POINT, ((-alpha, alpha),)),
                OffsetLoop(LoopKind.FOUR_POINT, ((pi - alpha, pi + alpha),)),
            ]
        beta = EllipseGeometry.beta_from_formula(e, r)
        return [
            OffsetLoop(LoopKind.CONTAINMENT, ((-beta, beta), (pi - beta, pi + beta))),
            OffsetLoop(LoopKind.FOUR_POINT, ((beta, pi - beta),)),
            OffsetLoop(LoopKind.FOUR_POINT, ((pi + beta, TWO_PI - beta),)),
        ]

    @staticmethod
    def loop_polygon(e: Ellipse, r: float, loop: OffsetLoop, n: int) -> np.ndarray:
        """Zamknięta łamana pętli; liczba punktów łuku proporcjonalna do jego długości w phi"""
        pieces = []
        for phi_start, phi_end in loop.arcs:
            share = max(8, int(math.ceil(n * (phi_end - phi_start) / TWO_PI)))
            pieces.append(EllipseGeometry.sample_arc(e, r, OffsetSign.INNER, phi_start, phi_end, share))
        return np.vstack(pieces)
