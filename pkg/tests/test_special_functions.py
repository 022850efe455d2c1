"""
Testy dla całek eliptycznych
"""
import math

import numpy as np
import pytest

from src.errors import DomainError
from src.special_functions import EllipticIntegrals


class TestEllipticIntegrals:
    """Testy klasy EllipticIntegrals"""

    def test_known_values(self):
        """Test wartości znanych analitycznie"""
        assert EllipticIntegrals.incomplete_E(math.pi / 2, 0.0) == pytest.approx(math.pi / 2, abs=1e-15)
        assert EllipticIntegrals.incomplete_E(0.7, 0.0) == pytest.approx(0.7, abs=1e-15)
        assert EllipticIntegrals.incomplete_E(0.0, 0.5) == 0.0
        assert EllipticIntegrals.complete_E(0.5) == pytest.approx(1.4674622093394272, abs=1e-14)

    def test_eps_one(self):
        """Test E(pi/2, 1) = 1 oraz E(phi, 1) = sin(phi)"""
        assert abs(EllipticIntegrals.incomplete_E(math.pi / 2, 1.0) - 1.0) <= 1e-14
        assert abs(EllipticIntegrals.complete_E(1.0) - 1.0) <= 1e-14
        assert EllipticIntegrals.incomplete_E(0.4, 1.0) == pytest.approx(math.sin(0.4), abs=1e-15)

    def test_agrees_with_quadrature_on_grid(self):
        """Test zgodności z kwadraturą na siatce 50x50"""
        worst = 0.0
        for phi in np.linspace(0.0, math.pi / 2, 50):
            for eps in np.linspace(0.0, 1.0, 50):
                value = EllipticIntegrals.incomplete_E(phi, eps)
                reference = EllipticIntegrals.incomplete_E_quadrature(phi, eps)
                worst = max(worst, abs(value - reference))
        assert worst <= 1e-10

    @pytest.mark.parametrize('phi,eps', [(0.3, 0.1), (1.0, 0.5), (1.5, 0.99), (math.pi / 2, 0.8660254037844386)])
    def test_carlson_form(self, phi, eps):
        """Test zgodności z postacią Carlsona"""
        assert EllipticIntegrals.incomplete_E_carlson(phi, eps) == pytest.approx(
            EllipticIntegrals.incomplete_E(phi, eps), abs=1e-13
        )

    def test_vectorized(self):
        """Test obliczeń na tablicach"""
        phi = np.array([0.1, 0.5, 1.0])
        values = EllipticIntegrals.incomplete_E(phi, 0.5)
        assert isinstance(values, np.ndarray)
        assert values.shape == (3,)
        assert values[1] == pytest.approx(EllipticIntegrals.incomplete_E(0.5, 0.5))

    def test_monotone_in_phi(self):
        """Test monotoniczności względem amplitudy"""
        values = EllipticIntegrals.incomplete_E(np.linspace(0.0, math.pi / 2, 200), 0.9)
        assert np.all(np.diff(values) > 0)

    @pytest.fixture
    def grid(self):
        phi, eps = np.meshgrid(np.linspace(0.0, math.pi / 2, 50), np.linspace(0.0, 1.0, 50), indexing='ij')
        return phi, eps, EllipticIntegrals.incomplete_E(phi, eps)

    def test_non_increasing_in_eps(self, grid):
        """Test monotoniczności względem modułu przy ustalonej amplitudzie"""
        _, _, values = grid
        assert np.all(np.diff(values, axis=1) <= 1e-15)

    def test_bounds_on_grid(self, grid):
        """Test oszacowania phi * sqrt(1 - eps²) <= E(phi, eps) <= phi"""
        phi, eps, values = grid
        assert np.all(values <= phi + 1e-15)
        assert np.all(values >= phi * np.sqrt(1.0 - eps ** 2) - 1e-15)

    @pytest.mark.parametrize('phi,eps', [(-0.1, 0.5), (2.0, 0.5), (1.0, 1.5), (1.0, -0.2), (float('nan'), 0.5)])
    def test_domain_errors(self, phi, eps):
        """Test argumentów spoza dziedziny"""
        with pytest.raises(DomainError):
            EllipticIntegrals.incomplete_E(phi, eps)

    def test_complete_domain_error(self):
        """Test zupełnej całki dla eps > 1"""
        with pytest.raises(DomainError):
            EllipticIntegrals.complete_E(1.2)
