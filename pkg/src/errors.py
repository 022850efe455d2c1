"""
Hierarchia wyjątków - każdy błąd domenowy niesie własny kod wyjścia CLI
"""


class MeasuresError(Exception):
    """Bazowy wyjątek aplikacji; report to gotowy raport, jeśli błąd wykryto po jego zbudowaniu"""

    exit_code = 5

    def __init__(self, message: str = "", report=None):
        super().__init__(message)
        self.report = report


class DomainError(MeasuresError, ValueError):
    """Argument poza dziedziną funkcji (np. eps > 1, phi poza [0, pi/2])"""

    exit_code = 2


class InputError(MeasuresError, ValueError):
    """Niepoprawne dane wejściowe z linii poleceń"""

    exit_code = 2


class CaseError(DomainError):
    """Operacja wywołana poza przypadkiem, dla którego jest zdefiniowana"""


class AssumptionError(MeasuresError):
    """Naruszone założenie jednego okręgu: 2(a+r) <= min(s,t)"""

    exit_code = 3


class StatisticalFailure(MeasuresError):
    """Estymata Monte Carlo odbiega od wartości zamkniętej o więcej niż Z_FAIL"""

    exit_code = 4


class InternalConsistencyError(MeasuresError):
    """Złamana tożsamość lub niezmiennik wewnętrzny"""

    exit_code = 5


class QuadratureError(InternalConsistencyError):
    """Kwadratura nie osiągnęła zadanej dokładności"""


class ResolutionError(InternalConsistencyError):
    """Nieparzysta liczba przecięć po doprecyzowaniu siatki"""


class OracleHealthError(InternalConsistencyError):
    """Zbyt wiele pozycji zdegenerowanych w próbie Monte Carlo"""


class DegeneratePoseError(MeasuresError):
    """Pozycja styczna - liczba przecięć nie jest określona"""

    exit_code = 6


class IndeterminateRegionError(DegeneratePoseError):
    """Środek okręgu leży zbyt blisko krzywej równoległej"""
