"""
Całki eliptyczne drugiego rodzaju - jedyna funkcja przestępna we wzorach zamkniętych
"""
import logging
import math
from typing import Union

import numpy as np
from scipy import integrate, special

from .errors import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

HALF_PI = math.pi / 2
# Zapas na błąd zaokrąglenia przy porównaniu z pi/2 i 1
_EDGE_SLACK = 1e-15


class EllipticIntegrals:
    """Całki eliptyczne E(phi, eps) i E(eps) w parametryzacji mimośrodem"""

    @staticmethod
    def _validate(phi: ArrayLike, eps: ArrayLike) -> None:
        phi_arr = np.asarray(phi, dtype=float)
        eps_arr = np.asarray(eps, dtype=float)
        if not (np.all(np.isfinite(phi_arr)) and np.all(np.isfinite(eps_arr))):
            raise DomainError("phi i eps muszą być skończone")
        if np.any(phi_arr < 0) or np.any(phi_arr > HALF_PI + _EDGE_SLACK):
            raise DomainError(f"phi musi należeć do [0, pi/2], otrzymano {phi}")
        if np.any(eps_arr < 0) or np.any(eps_arr > 1 + _EDGE_SLACK):
            raise DomainError(f"eps musi należeć do [0, 1], otrzymano {eps}")

    @staticmethod
    def incomplete_E(phi: ArrayLike, eps: ArrayLike) -> ArrayLike:
        """
        Niezupełna całka eliptyczna drugiego rodzaju

        Args:
            phi: Amplituda w radianach, 0 <= phi <= pi/2
            eps: Moduł (mimośród), 0 <= eps <= 1

        Returns:
            Całka od 0 do phi z sqrt(1 - eps^2 sin^2 theta)
        """
        EllipticIntegrals._validate(phi, eps)
        phi_arr = np.clip(np.asarray(phi, dtype=float), 0.0, HALF_PI)
        eps_arr = np.clip(np.asarray(eps, dtype=float), 0.0, 1.0)

        # Dla eps = 1 funkcja podcałkowa to cos(theta), więc E = sin(phi)
        value = np.where(
            eps_arr >= 1.0,
            np.sin(phi_arr),
            special.ellipeinc(phi_arr, np.minimum(eps_arr, 1.0) ** 2),
        )
        if value.ndim == 0:
            return float(value)
        return value

    @staticmethod
    def complete_E(eps: ArrayLike) -> ArrayLike:
        """Zupełna całka eliptyczna drugiego rodzaju E(eps) = E(pi/2, eps)"""
        EllipticIntegrals._validate(HALF_PI, eps)
        eps_arr = np.clip(np.asarray(eps, dtype=float), 0.0, 1.0)
        value = np.where(eps_arr >= 1.0, 1.0, special.ellipe(eps_arr ** 2))
        if value.ndim == 0:
            return float(value)
        return value

    @staticmethod
    def incomplete_E_carlson(phi: float, eps: float) -> float:
        """
        Ta sama całka przez symetryczne całki Carlsona R_F i R_D

        Niezależna druga ścieżka obliczeń, używana w weryfikacji.
        """
        EllipticIntegrals._validate(phi, eps)
        if eps >= 1.0:
            return math.sin(phi)
        s = math.sin(phi)
        c = math.cos(phi)
        x = c * c
        y = 1.0 - eps * eps * s * s
        rf = float(special.elliprf(x, y, 1.0))
        rd = float(special.elliprd(x, y, 1.0))
        return s * rf - eps * eps * s ** 3 * rd / 3.0

    @staticmethod
    def incomplete_E_quadrature(phi: float, eps: float, epsabs: float = 1e-14) -> float:
        """
        Wyrocznia: bezpośrednia adaptacyjna kwadratura całki definiującej

        Args:
            phi: Amplituda
            eps: Moduł
            epsabs: Tolerancja bezwzględna kwadratury

        Returns:
            Wartość całki obliczona przez scipy.integrate.quad
        """
        EllipticIntegrals._validate(phi, eps)
        value, error = integrate.quad(
            lambda theta: math.sqrt(max(0.0, 1.0 - (eps * math.sin(theta)) ** 2)),
            0.0,
            phi,
            epsabs=epsabs,
            epsrel=1e-14,
            limit=200,
        )
        logger.debug(f"Kwadratura E({phi}, {eps}) = {value} (szacowany błąd {error:.1e})")
        return value
