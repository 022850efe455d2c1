"""
Testy dla geometrii elipsy i krzywych równoległych
"""
import math

import numpy as np
import pytest
from scipy import optimize

from src.ellipse_geometry import (
    CaseId,
    CircleSpec,
    Ellipse,
    EllipseGeometry,
    LoopKind,
    OffsetSign,
)
from src.errors import CaseError, DomainError


@pytest.fixture
def ellipse():
    return Ellipse(2.0, 1.0)


class TestEllipse:
    """Testy typów wartości"""

    @pytest.mark.parametrize('a,b', [(1.0, 2.0), (1.0, 0.0), (1.0, -1.0), (float('inf'), 1.0)])
    def test_invalid_axes(self, a, b):
        """Test odrzucenia niepoprawnych półosi"""
        with pytest.raises(DomainError):
            Ellipse(a, b)

    def test_derived_quantities(self, ellipse):
        """Test mimośrodu, pola i obwodu"""
        assert ellipse.eccentricity == pytest.approx(math.sqrt(3) / 2)
        assert ellipse.area == pytest.approx(2 * math.pi)
        assert ellipse.perimeter == pytest.approx(9.688448220547675, rel=1e-12)

    def test_circle(self):
        """Test okręgu jako elipsy"""
        circle = Ellipse(1.5, 1.5)
        assert circle.is_circle
        assert circle.eccentricity == 0.0
        assert circle.perimeter == pytest.approx(3 * math.pi)

    def test_circle_spec(self):
        """Test walidacji promienia"""
        assert CircleSpec(0.5).r == 0.5
        with pytest.raises(DomainError):
            CircleSpec(0.0)
        with pytest.raises(DomainError):
            EllipseGeometry.offset_point(Ellipse(1.0, 0.5), -1.0, OffsetSign.OUTER, 0.3)


class TestEllipseGeometry:
    """Testy klasy EllipseGeometry"""

    def test_support_function(self, ellipse):
        """Test funkcji podparcia i jej pochodnych"""
        assert EllipseGeometry.support(ellipse, 0.0) == pytest.approx(2.0)
        assert EllipseGeometry.support(ellipse, math.pi / 2) == pytest.approx(1.0)
        phi, h = 0.7, 1e-5
        numeric_d1 = (EllipseGeometry.support(ellipse, phi + h) - EllipseGeometry.support(ellipse, phi - h)) / (2 * h)
        assert EllipseGeometry.support_d1(ellipse, phi) == pytest.approx(numeric_d1, rel=1e-8)
        numeric_d2 = (
            EllipseGeometry.support_d1(ellipse, phi + h) - EllipseGeometry.support_d1(ellipse, phi - h)
        ) / (2 * h)
        assert EllipseGeometry.support_d2(ellipse, phi) == pytest.approx(numeric_d2, rel=1e-7)

    def test_radius_of_curvature(self, ellipse):
        """Test p + p'' = a²b²/p³"""
        phi = np.linspace(0.0, 2 * math.pi, 17)
        p = EllipseGeometry.support(ellipse, phi)
        rho = p + EllipseGeometry.support_d2(ellipse, phi)
        np.testing.assert_allclose(rho, 4.0 / p ** 3, rtol=1e-12)

    def test_offset_points_on_axes(self, ellipse):
        """Test punktów krzywych równoległych na osiach"""
        assert EllipseGeometry.offset_point(ellipse, 0.5, OffsetSign.OUTER, 0.0) == pytest.approx((2.5, 0.0))
        assert EllipseGeometry.offset_point(ellipse, 0.5, OffsetSign.INNER, 0.0) == pytest.approx((1.5, 0.0))
        point = EllipseGeometry.offset_point(ellipse, 0.5, OffsetSign.INNER, math.pi / 2)
        assert point.x == pytest.approx(0.0, abs=1e-15)
        assert point.y == pytest.approx(0.5)

    def test_offset_distance(self, ellipse):
        """Test odległości r od elipsy wzdłuż normalnej"""
        phi = 0.9
        base = EllipseGeometry.ellipse_point(ellipse, phi)
        outer = EllipseGeometry.offset_point(ellipse, 0.7, OffsetSign.OUTER, phi)
        assert math.hypot(outer.x - base.x, outer.y - base.y) == pytest.approx(0.7)

    def test_offset_invalid(self, ellipse):
        """Test niepoprawnego znaku i promienia"""
        with pytest.raises(DomainError):
            EllipseGeometry.offset_point(ellipse, 0.5, 0, 0.1)
        with pytest.raises(DomainError):
            EllipseGeometry.offset_point(ellipse, -0.5, OffsetSign.OUTER, 0.1)

    def test_ellipse_point_on_curve(self, ellipse):
        """Test punktu elipsy dla normalnej phi"""
        point = EllipseGeometry.ellipse_point(ellipse, 1.1)
        assert point.x ** 2 / 4 + point.y ** 2 == pytest.approx(1.0)

    @pytest.mark.parametrize('r,expected', [
        (0.3, CaseId.SMOOTH_INNER),
        (0.5, CaseId.SMOOTH_INNER),
        (0.8, CaseId.SIDE_SWALLOWTAILS),
        (1.0, CaseId.ASTROIDAL),
        (1.5, CaseId.ASTROIDAL),
        (2.0, CaseId.ASTROIDAL),
        (3.0, CaseId.POLAR_SWALLOWTAILS),
        (4.0, CaseId.REVERSED_INNER),
        (5.0, CaseId.REVERSED_INNER),
    ])
    def test_case_classify(self, ellipse, r, expected):
        """Test klasyfikacji przypadków na siatce weryfikacyjnej"""
        assert EllipseGeometry.case_classify(ellipse, r) == expected

    @pytest.mark.parametrize('r,expected', [(0.5, CaseId.SMOOTH_INNER), (1.0, CaseId.ASTROIDAL), (3.0, CaseId.REVERSED_INNER)])
    def test_case_classify_circle(self, r, expected):
        """Test przypadków dla okręgu"""
        assert EllipseGeometry.case_classify(Ellipse(1.0, 1.0), r) == expected

    def test_case_classify_invalid_radius(self, ellipse):
        """Test r <= 0"""
        with pytest.raises(DomainError):
            EllipseGeometry.case_classify(ellipse, 0.0)

    def test_cusp_angle_range(self, ellipse):
        """Test zakresu kąta ostrza"""
        assert EllipseGeometry.cusp_angle(ellipse, 0.4) is None
        assert EllipseGeometry.cusp_angle(ellipse, 4.5) is None
        assert EllipseGeometry.cusp_angle(ellipse, 0.5) == pytest.approx(0.0, abs=1e-7)
        assert EllipseGeometry.cusp_angle(ellipse, 4.0) == pytest.approx(math.pi / 2, abs=1e-7)
        assert EllipseGeometry.cusp_angle(Ellipse(1.0, 1.0), 1.0) is None

    @pytest.mark.parametrize('r', [0.6, 1.0, 1.5, 2.5, 3.5])
    def test_cusp_where_curvature_radius_equals_r(self, ellipse, r):
        """Test ostrza: promień krzywizny w lambda równy r"""
        lam = EllipseGeometry.cusp_angle(ellipse, r)
        p = EllipseGeometry.support(ellipse, lam)
        assert 4.0 / p ** 3 == pytest.approx(r, rel=1e-10)

    def test_cusp_angles(self, ellipse):
        """Test czterech ostrzy"""
        angles = EllipseGeometry.cusp_angles(ellipse, 1.5)
        lam = angles[0]
        assert angles == pytest.approx((lam, math.pi - lam, math.pi + lam, 2 * math.pi - lam))
        assert EllipseGeometry.cusp_angles(ellipse, 0.3) == ()

    def test_alpha_double_point(self, ellipse):
        """Test alpha: punkt podwójny na osi x"""
        r = 0.8
        alpha = EllipseGeometry.alpha_angle(ellipse, r)
        assert 0.0 < alpha < math.pi / 2
        assert EllipseGeometry.support(ellipse, alpha) == pytest.approx(1.0 / r)
        point = EllipseGeometry.offset_point(ellipse, r, OffsetSign.INNER, alpha)
        assert point.y == pytest.approx(0.0, abs=1e-12)
        mirror = EllipseGeometry.offset_point(ellipse, r, OffsetSign.INNER, -alpha)
        assert point.x == pytest.approx(mirror.x)

    def test_beta_double_point(self, ellipse):
        """Test beta: punkt podwójny na osi y"""
        r = 3.0
        beta = EllipseGeometry.beta_angle(ellipse, r)
        assert EllipseGeometry.support(ellipse, beta) == pytest.approx(4.0 / r)
        point = EllipseGeometry.offset_point(ellipse, r, OffsetSign.INNER, beta)
        assert point.x == pytest.approx(0.0, abs=1e-12)

    def test_alpha_beta_wrong_case(self, ellipse):
        """Test kątów poza ich przypadkiem"""
        with pytest.raises(CaseError):
            EllipseGeometry.alpha_angle(ellipse, 1.5)
        with pytest.raises(CaseError):
            EllipseGeometry.beta_angle(ellipse, 0.8)

    def test_alpha_beta_against_root_finding(self, ellipse):
        """Test wzorów na alpha i beta względem metody Brenta"""
        alpha = optimize.brentq(
            lambda phi: EllipseGeometry.support(ellipse, phi) - 1.0 / 0.8, 1e-9, math.pi / 2
        )
        assert EllipseGeometry.alpha_angle(ellipse, 0.8) == pytest.approx(alpha, abs=1e-10)
        beta = optimize.brentq(
            lambda phi: EllipseGeometry.support(ellipse, phi) - 4.0 / 3.0, 0.0, math.pi / 2
        )
        assert EllipseGeometry.beta_angle(ellipse, 3.0) == pytest.approx(beta, abs=1e-10)

    def test_sample_offset_curve(self, ellipse):
        """Test łamanej krzywej równoległej"""
        points = EllipseGeometry.sample_offset_curve(ellipse, 0.5, OffsetSign.OUTER, 64)
        assert points.shape == (64, 2)
        assert np.all(np.isfinite(points))
        with pytest.raises(DomainError):
            EllipseGeometry.sample_offset_curve(ellipse, 0.5, OffsetSign.OUTER, 3)

    def test_evolute_cusps_on_axes(self, ellipse):
        """Test ewoluty: ostrza w (±c²/a, 0) i (0, ±c²/b)"""
        assert EllipseGeometry.evolute_point(ellipse, 0.0) == pytest.approx((1.5, 0.0))
        point = EllipseGeometry.evolute_point(ellipse, math.pi / 2)
        assert point.y == pytest.approx(-3.0)

    @pytest.mark.parametrize('r,kinds', [
        (0.3, [LoopKind.CONTAINMENT]),
        (0.8, [LoopKind.CONTAINMENT, LoopKind.FOUR_POINT, LoopKind.FOUR_POINT]),
        (1.5, [LoopKind.FOUR_POINT]),
        (3.0, [LoopKind.CONTAINMENT, LoopKind.FOUR_POINT, LoopKind.FOUR_POINT]),
        (5.0, [LoopKind.CONTAINMENT]),
    ])
    def test_inner_offset_loops(self, ellipse, r, kinds):
        """Test rozkładu C1- na pętle"""
        loops = EllipseGeometry.inner_offset_loops(ellipse, r)
        assert [loop.kind for loop in loops] == kinds
        total = sum(end - start for loop in loops for start, end in loop.arcs)
        assert total == pytest.approx(2 * math.pi)

    def test_loop_polygon_closes(self, ellipse):
        """Test domknięcia pętli w punkcie podwójnym"""
        for loop in EllipseGeometry.inner_offset_loops(ellipse, 0.8):
            polygon = EllipseGeometry.loop_polygon(ellipse, 0.8, loop, 512)
            assert np.allclose(polygon[0], polygon[-1], atol=1e-9)
