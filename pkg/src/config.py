"""
Konfiguracja aplikacji - centralne zarządzanie ustawieniami z pliku .env
"""
import os
from dotenv import load_dotenv
import logging

# Załaduj zmienne środowiskowe z pliku .env
load_dotenv()

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


class Config:
    """Klasa konfiguracyjna aplikacji"""

    @classmethod
    def get_app_name(cls):
        return os.getenv('APP_NAME', 'Ellipse Circle Measures')

    @classmethod
    def get_debug(cls):
        return os.getenv('DEBUG', 'False').lower() == 'true'

    @classmethod
    def get_log_level(cls):
        return os.getenv('LOG_LEVEL', 'INFO')

    @classmethod
    def get_log_file(cls):
        return os.getenv('LOG_FILE', 'measures.log')

    @classmethod
    def get_default_seed(cls):
        return int(os.getenv('DEFAULT_SEED', 0))

    @classmethod
    def get_area_samples(cls):
        return int(os.getenv('AREA_SAMPLES', 1_000_000))

    @classmethod
    def get_throw_samples(cls):
        return int(os.getenv('THROW_SAMPLES', 10_000_000))

    @classmethod
    def get_min_samples(cls):
        return int(os.getenv('MIN_SAMPLES', 10_000))

    @classmethod
    def get_chunk_size(cls):
        return int(os.getenv('CHUNK_SIZE', 100_000))

    @classmethod
    def get_workers(cls):
        return int(os.getenv('WORKERS', 1))

    @classmethod
    def get_oracle_grid(cls):
        return int(os.getenv('ORACLE_GRID', 4096))

    @classmethod
    def get_batch_grid(cls):
        return int(os.getenv('BATCH_GRID', 256))

    @classmethod
    def get_region_grid(cls):
        return int(os.getenv('REGION_GRID', 8192))

    @classmethod
    def get_tangency_tol(cls):
        return float(os.getenv('TANGENCY_TOL', 1e-10))

    @classmethod
    def get_boundary_tol(cls):
        return float(os.getenv('BOUNDARY_TOL', 1e-6))

    @classmethod
    def get_negative_area_tol(cls):
        return float(os.getenv('NEGATIVE_AREA_TOL', 1e-9))

    @classmethod
    def get_degenerate_cap_per_million(cls):
        return int(os.getenv('DEGENERATE_CAP_PER_MILLION', 10))

    @classmethod
    def get_z_fail(cls):
        return float(os.getenv('Z_FAIL', 4.0))

    @classmethod
    def get_json_indent(cls):
        return int(os.getenv('JSON_INDENT', 2))

    # Właściwości dla najczęściej używanych ustawień
    @property
    def APP_NAME(self):
        return self.get_app_name()

    @property
    def DEBUG(self):
        return self.get_debug()

    @property
    def LOG_LEVEL(self):
        return self.get_log_level()

    @property
    def LOG_FILE(self):
        return self.get_log_file()

    @property
    def DEFAULT_SEED(self):
        return self.get_default_seed()

    @property
    def WORKERS(self):
        return self.get_workers()

    @classmethod
    def setup_logging(cls):
        """Konfiguracja systemu logowania (stderr + opcjonalnie plik); DEBUG=true wymusza poziom DEBUG"""
        handlers = [logging.StreamHandler()]
        log_file = cls.get_log_file()
        if log_file:
            handlers.append(logging.FileHandler(log_file))

        if cls.get_debug():
            level = logging.DEBUG
        else:
            level = getattr(logging, cls.get_log_level().upper(), logging.INFO)
        logging.basicConfig(
            level=level,
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=handlers
        )
        return logging.getLogger(__name__)

    @classmethod
    def validate_config(cls):
        """Walidacja konfiguracji aplikacji"""
        errors = []

        try:
            min_samples = cls.get_min_samples()
            if min_samples < 10_000:
                errors.append("MIN_SAMPLES musi wynosić co najmniej 10000")
            if cls.get_area_samples() < min_samples:
                errors.append("AREA_SAMPLES jest mniejsze niż MIN_SAMPLES")
            if cls.get_throw_samples() < min_samples:
                errors.append("THROW_SAMPLES jest mniejsze niż MIN_SAMPLES")
            if cls.get_chunk_size() <= 0:
                errors.append("CHUNK_SIZE musi być dodatnie")
            if cls.get_workers() < 1:
                errors.append("WORKERS musi wynosić co najmniej 1")
            if cls.get_oracle_grid() < 64:
                errors.append("ORACLE_GRID musi wynosić co najmniej 64")
            if cls.get_batch_grid() < 16:
                errors.append("BATCH_GRID musi wynosić co najmniej 16")
            if cls.get_region_grid() < 64:
                errors.append("REGION_GRID musi wynosić co najmniej 64")
            for name, value in (
                ('TANGENCY_TOL', cls.get_tangency_tol()),
                ('BOUNDARY_TOL', cls.get_boundary_tol()),
                ('NEGATIVE_AREA_TOL', cls.get_negative_area_tol()),
                ('Z_FAIL', cls.get_z_fail()),
            ):
                if not value > 0:
                    errors.append(f"{name} musi być dodatnie")
            if cls.get_degenerate_cap_per_million() < 0:
                errors.append("DEGENERATE_CAP_PER_MILLION nie może być ujemne")
            if cls.get_json_indent() < 0:
                errors.append("JSON_INDENT nie może być ujemne")
        except ValueError as e:
            errors.append(f"Niepoprawna wartość liczbowa: {e}")

        if cls.get_log_level().upper() not in LOG_LEVELS:
            errors.append(f"LOG_LEVEL musi być jednym z {', '.join(LOG_LEVELS)}")

        if errors:
            raise ValueError(f"Błędy konfiguracji: {'; '.join(errors)}")

        return True
