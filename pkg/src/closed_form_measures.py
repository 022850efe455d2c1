"""
Wzory zamknięte: pola dla elipsy o ustalonym kierunku, miary kinematyczne,
prawdopodobieństwa trafienia w sieć okręgów oraz graniczny przypadek odcinka
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, Tuple

from scipy import integrate

from .config import Config
from .ellipse_geometry import CaseId, CircleSpec, Ellipse, EllipseGeometry
from .errors import AssumptionError, DomainError, InternalConsistencyError, QuadratureError
from .special_functions import EllipticIntegrals

logger = logging.getLogger(__name__)

PI = math.pi
HALF_PI = math.pi / 2


@dataclass(frozen=True)
class Lattice:
    """Sieć okręgów w wierzchołkach równoległoboków o bokach s, t i kącie sigma"""

    s: float
    t: float
    sigma: float = HALF_PI

    def __post_init__(self):
        if not (self.s > 0 and self.t > 0):
            raise DomainError(f"Boki sieci muszą być dodatnie, otrzymano s={self.s}, t={self.t}")
        if not (0 < self.sigma <= HALF_PI + 1e-15):
            raise DomainError(f"Kąt sieci musi należeć do (0, pi/2], otrzymano {self.sigma}")

    @property
    def cell_area(self) -> float:
        return self.s * self.t * math.sin(self.sigma)

    @property
    def total_measure(self) -> float:
        """m_t = 2 pi s t sin(sigma)"""
        return 2.0 * PI * self.cell_area


@dataclass(frozen=True)
class AreaSet:
    """Pola zbiorów położeń środka dla ustalonego kierunku elipsy"""

    case: CaseId
    A_i01: float
    A_i10: float
    A_2: float
    A_4: float
    A_plus: float
    A_star: float

    def as_dict(self) -> Dict[str, float]:
        return {
            'case': int(self.case),
            'A_i01': self.A_i01,
            'A_i10': self.A_i10,
            'A_2': self.A_2,
            'A_4': self.A_4,
            'A_plus': self.A_plus,
            'A_star': self.A_star,
        }


@dataclass(frozen=True)
class MeasureSet:
    """Miary kinematyczne; flavor mówi, które zawieranie reprezentuje m_i"""

    m_i: float
    m_2: float
    m_4: float
    flavor: str

    def as_dict(self) -> Dict[str, float]:
        return {'m_i': self.m_i, 'm_2': self.m_2, 'm_4': self.m_4, 'flavor': self.flavor}


@dataclass(frozen=True)
class ProbabilitySet:
    p_0: float
    p_2: float
    p_4: float
    p_i: float
    p_e: float

    def as_dict(self) -> Dict[str, float]:
        return {'p_0': self.p_0, 'p_2': self.p_2, 'p_4': self.p_4, 'p_i': self.p_i, 'p_e': self.p_e}


@dataclass(frozen=True)
class SegmentSpec:
    """Odcinek długości l rzucany na okrąg o promieniu r"""

    l: float  # noqa: E741
    r: float

    def __post_init__(self):
        if not (self.l > 0 and self.r > 0):
            raise DomainError(f"Wymagane l > 0 i r > 0, otrzymano l={self.l}, r={self.r}")


@dataclass(frozen=True)
class SegmentProbabilitySet:
    p_0: float
    p_1: float
    p_2: float
    p_i: float
    p_e: float

    def as_dict(self) -> Dict[str, float]:
        return {'p_0': self.p_0, 'p_1': self.p_1, 'p_2': self.p_2, 'p_i': self.p_i, 'p_e': self.p_e}


def _check_radius(r: float) -> None:
    CircleSpec(r)


class ClosedFormMeasures:
    """Pola, miary i prawdopodobieństwa w postaci zamkniętej"""

    @staticmethod
    def F_antiderivative(e: Ellipse, r: float, phi: float) -> float:
        """
        Funkcja pierwotna F(phi) ze znakowanego pola pętli C1-

        Składnik z arctan liczony w sposób ciągły na [0, pi/2] (atan2),
        dzięki czemu F(pi/2) = A*.

        Args:
            e: Elipsa
            r: Promień okręgu
            phi: Kąt z [0, pi/2]

        Returns:
            2r²phi + 2ab arctan((b/a) tan phi) - 4raE(phi, eps)
            + r a eps² sin 2phi / sqrt(1 - eps² sin² phi)
        """
        _check_radius(r)
        if not (0.0 <= phi <= HALF_PI + 1e-15):
            raise DomainError(f"phi musi należeć do [0, pi/2], otrzymano {phi}")
        phi = min(phi, HALF_PI)
        eps = e.eccentricity
        s = math.sin(phi)
        arctan_term = math.atan2(e.b * s, e.a * math.cos(phi))
        root = math.sqrt(1.0 - (eps * s) ** 2)
        last = r * e.a * eps * eps * math.sin(2.0 * phi) / root if root > 0 else 0.0
        return (
            2.0 * r * r * phi
            + 2.0 * e.a * e.b * arctan_term
            - 4.0 * r * e.a * EllipticIntegrals.incomplete_E(phi, eps)
            + last
        )

    @staticmethod
    def A_star(e: Ellipse, r: float) -> float:
        """A* = F(pi/2) = pi r² + pi ab - 4raE(eps)"""
        _check_radius(r)
        return PI * r * r + PI * e.a * e.b - 4.0 * r * e.a * EllipticIntegrals.complete_E(e.eccentricity)

    @staticmethod
    def A_plus(e: Ellipse, r: float) -> float:
        """Pole wnętrza zewnętrznej krzywej równoległej: pi r² + pi ab + 4raE(eps)"""
        _check_radius(r)
        return PI * r * r + PI * e.a * e.b + 4.0 * r * e.a * EllipticIntegrals.complete_E(e.eccentricity)

    @staticmethod
    def _clamp(value: float, name: str) -> float:
        tol = Config.get_negative_area_tol()
        if value >= 0.0:
            return value
        if value >= -tol:
            logger.warning(f"Ujemne pole {name}={value:.3e} w granicach tolerancji - przycięte do 0")
            return 0.0
        raise InternalConsistencyError(f"Ujemne pole {name}={value:.6e} poniżej -{tol:g}")

    @staticmethod
    def areas_for_case(e: Ellipse, r: float, case: CaseId) -> AreaSet:
        """
        Wiersz tabeli pól dla wskazanego przypadku (bez sprawdzania przedziału)

        Pozwala porównać sąsiednie wzory dokładnie na granicy przedziałów.
        """
        _check_radius(r)
        a_star = ClosedFormMeasures.A_star(e, r)
        a_plus = ClosedFormMeasures.A_plus(e, r)
        full = 2.0 * PI * r * r + 2.0 * PI * e.a * e.b
        eight_rae = 8.0 * r * e.a * EllipticIntegrals.complete_E(e.eccentricity)
        A_i01 = A_i10 = 0.0

        if case == CaseId.SMOOTH_INNER:
            A_i01, A_2, A_4 = a_star, eight_rae, 0.0
        elif case == CaseId.SIDE_SWALLOWTAILS:
            alpha = EllipseGeometry.alpha_from_formula(e, r)
            f_tilde = a_star - ClosedFormMeasures.F_antiderivative(e, r, alpha)
            A_i01, A_2, A_4 = f_tilde, full - 2.0 * f_tilde, f_tilde - a_star
        elif case == CaseId.ASTROIDAL:
            A_2, A_4 = full, -a_star
        elif case == CaseId.POLAR_SWALLOWTAILS:
            beta = EllipseGeometry.beta_from_formula(e, r)
            f_beta = ClosedFormMeasures.F_antiderivative(e, r, beta)
            A_i10, A_2, A_4 = f_beta, full - 2.0 * f_beta, f_beta - a_star
        else:
            A_i10, A_2, A_4 = a_star, eight_rae, 0.0

        return AreaSet(
            case=CaseId(case),
            A_i01=ClosedFormMeasures._clamp(A_i01, 'A_i01'),
            A_i10=ClosedFormMeasures._clamp(A_i10, 'A_i10'),
            A_2=ClosedFormMeasures._clamp(A_2, 'A_2'),
            A_4=ClosedFormMeasures._clamp(A_4, 'A_4'),
            A_plus=a_plus,
            A_star=a_star,
        )

    @staticmethod
    def areas(e: Ellipse, r: float) -> AreaSet:
        """Tabela pól dla przypadku wynikającego z r"""
        case = EllipseGeometry.case_classify(e, r)
        result = ClosedFormMeasures.areas_for_case(e, r, case)
        logger.debug(f"Pola dla a={e.a}, b={e.b}, r={r}: {result}")
        return result

    @staticmethod
    def partition_residual(areas: AreaSet) -> float:
        """A_i01 + A_i10 + A_2 + A_4 - A+"""
        return areas.A_i01 + areas.A_i10 + areas.A_2 + areas.A_4 - areas.A_plus

    @staticmethod
    def poincare_residual(e: Ellipse, r: float, areas: AreaSet) -> float:
        """2A_2 + 4A_4 - 16raE(eps)"""
        return 2.0 * areas.A_2 + 4.0 * areas.A_4 - 16.0 * r * e.a * EllipticIntegrals.complete_E(e.eccentricity)

    @staticmethod
    def measures(e: Ellipse, r: float) -> MeasureSet:
        """
        Miary kinematyczne dla elipsy o dowolnej orientacji

        Returns:
            m_i (zawieranie), m_2 i m_4 ze wzorów z m_i
        """
        areas = ClosedFormMeasures.areas(e, r)
        if areas.case in (CaseId.POLAR_SWALLOWTAILS, CaseId.REVERSED_INNER):
            m_i, flavor = 2.0 * PI * areas.A_i10, '10'
        elif areas.case == CaseId.ASTROIDAL:
            m_i, flavor = 0.0, 'zero'
        else:
            m_i, flavor = 2.0 * PI * areas.A_i01, '01'

        pi2 = PI * PI
        m_2 = 4.0 * pi2 * r * r + 4.0 * pi2 * e.a * e.b - 2.0 * m_i
        m_4 = (
            8.0 * PI * r * e.a * EllipticIntegrals.complete_E(e.eccentricity)
            - 2.0 * pi2 * r * r
            - 2.0 * pi2 * e.a * e.b
            + m_i
        )
        scale = max(1.0, 2.0 * PI * areas.A_plus)
        tol = Config.get_negative_area_tol()
        if abs(m_2 - 2.0 * PI * areas.A_2) > tol * scale or abs(m_4 - 2.0 * PI * areas.A_4) > tol * scale:
            raise InternalConsistencyError(
                f"Miary niezgodne z polami: m_2={m_2}, 2piA_2={2 * PI * areas.A_2}, "
                f"m_4={m_4}, 2piA_4={2 * PI * areas.A_4}"
            )
        return MeasureSet(m_i=m_i, m_2=max(0.0, m_2), m_4=max(0.0, m_4), flavor=flavor)

    @staticmethod
    def hit_measure(e: Ellipse, r: float) -> float:
        """Miara położeń z K0 ∩ K1 != ∅: 2pi²r² + 2pi²ab + 8pi r a E(eps)"""
        _check_radius(r)
        pi2 = PI * PI
        return (
            2.0 * pi2 * r * r
            + 2.0 * pi2 * e.a * e.b
            + 8.0 * PI * r * e.a * EllipticIntegrals.complete_E(e.eccentricity)
        )

    @staticmethod
    def check_lattice(extent: float, r: float, lat: Lattice) -> None:
        """
        Sprawdza założenie jednego okręgu 2(extent + r) <= min(s, t)

        Raises:
            AssumptionError: gdy rzucone ciało może trafić dwa okręgi naraz
        """
        if 2.0 * (extent + r) > min(lat.s, lat.t):
            raise AssumptionError(
                f"Naruszone założenie 2(a+r) ≤ min(s,t): 2({extent}+{r}) = {2.0 * (extent + r)} "
                f"> min({lat.s}, {lat.t})"
            )

    @staticmethod
    def probabilities(e: Ellipse, r: float, lat: Lattice) -> ProbabilitySet:
        """
        Prawdopodobieństwa trafienia dla elipsy rzuconej na sieć okręgów

        Raises:
            AssumptionError: gdy 2(a+r) > min(s,t)
        """
        ClosedFormMeasures.check_lattice(e.a, r, lat)
        m = ClosedFormMeasures.measures(e, r)
        m_t = lat.total_measure
        p_2 = m.m_2 / m_t
        p_4 = m.m_4 / m_t
        p_i = m.m_i / m_t
        p_e = 1.0 - ClosedFormMeasures.hit_measure(e, r) / m_t
        p_0 = 1.0 - p_2 - p_4
        return ProbabilitySet(p_0=p_0, p_2=p_2, p_4=p_4, p_i=p_i, p_e=p_e)

    @staticmethod
    def expected_intersections(e: Ellipse, r: float, lat: Lattice) -> float:
        """Wartość oczekiwana liczby punktów przecięcia: 16raE(eps) / (s t sin sigma)"""
        ClosedFormMeasures.check_lattice(e.a, r, lat)
        return 16.0 * r * e.a * EllipticIntegrals.complete_E(e.eccentricity) / lat.cell_area

    @staticmethod
    def segment_m_i(seg: SegmentSpec) -> float:
        """Miara odcinków zawartych w kole; 0 gdy l >= 2r"""
        l, r = seg.l, seg.r  # noqa: E741
        if l >= 2.0 * r:
            return 0.0
        return 2.0 * PI * (
            PI * r * r
            - 2.0 * r * r * math.asin(l / (2.0 * r))
            - l * math.sqrt(r * r - l * l / 4.0)
        )

    @staticmethod
    def segment_measures(seg: SegmentSpec) -> Tuple[float, float]:
        """(m_1, m_2) - miary odcinków przecinających okrąg w jednym i dwóch punktach"""
        m_i = ClosedFormMeasures.segment_m_i(seg)
        m_1 = 4.0 * PI * PI * seg.r ** 2 - 2.0 * m_i
        m_2 = 4.0 * PI * seg.r * seg.l - 2.0 * PI * PI * seg.r ** 2 + m_i
        return m_1, m_2

    @staticmethod
    def segment_probabilities(seg: SegmentSpec, lat: Lattice) -> SegmentProbabilitySet:
        """
        Prawdopodobieństwa dla odcinka rzuconego na sieć okręgów

        Raises:
            AssumptionError: gdy 2(l/2 + r) > min(s,t)
        """
        ClosedFormMeasures.check_lattice(seg.l / 2.0, seg.r, lat)
        m_i = ClosedFormMeasures.segment_m_i(seg)
        m_t = lat.total_measure
        r, l = seg.r, seg.l  # noqa: E741
        pi2 = PI * PI
        return SegmentProbabilitySet(
            p_0=1.0 - (2.0 * pi2 * r * r + 4.0 * PI * r * l - m_i) / m_t,
            p_1=(2.0 * pi2 * r * r - m_i) / (m_t / 2.0),
            p_2=(4.0 * PI * r * l - 2.0 * pi2 * r * r + m_i) / m_t,
            p_i=m_i / m_t,
            p_e=1.0 - (2.0 * pi2 * r * r + 4.0 * PI * r * l) / m_t,
        )

    @staticmethod
    def _periodic_quadrature(integrand, name: str, tol: float = 1e-9, limit: int = 500) -> float:
        """
        Adaptacyjna kwadratura na [0, 2pi] rozbita na ćwiartki

        Końce ćwiartek pokrywają się z wąskimi maksimami p'' w phi = pi/2 i 3pi/2,
        które przy b << a wymagają silnego zagęszczenia podziału.

        Raises:
            QuadratureError: gdy szacowany błąd przekracza tol * max(1, |wynik|)
        """
        total = 0.0
        error = 0.0
        for k in range(4):
            result = integrate.quad(
                integrand, k * HALF_PI, (k + 1) * HALF_PI,
                epsabs=1e-13, epsrel=1e-13, limit=limit, full_output=1,
            )
            total += result[0]
            error += result[1]
            if len(result) > 3:
                logger.debug(f"Kwadratura {name}, ćwiartka {k}: {result[3]}")
        if error > tol * max(1.0, abs(total)):
            raise QuadratureError(
                f"Kwadratura {name} nie osiągnęła dokładności: błąd {error:.2e} przy limicie {limit} podziałów"
            )
        logger.debug(f"Kwadratura {name}: {total:.15g}, szacowany błąd {error:.2e}")
        return total

    @staticmethod
    def signed_inner_area_quadrature(e: Ellipse, r: float) -> float:
        """Numeryczne ½∫(p - r)(p - r + p'')dphi - suma znakowanych pól pętli C1-"""
        _check_radius(r)

        def integrand(phi):
            p = EllipseGeometry.support(e, phi)
            return 0.5 * (p - r) * (p - r + EllipseGeometry.support_d2(e, phi))

        return ClosedFormMeasures._periodic_quadrature(integrand, 'A-')

    @staticmethod
    def outer_area_quadrature(e: Ellipse, r: float) -> float:
        """Numeryczne ½∫(p + r)(p + r + p'')dphi - pole wnętrza C1+"""
        _check_radius(r)

        def integrand(phi):
            p = EllipseGeometry.support(e, phi)
            return 0.5 * (p + r) * (p + r + EllipseGeometry.support_d2(e, phi))

        return ClosedFormMeasures._periodic_quadrature(integrand, 'A+')
