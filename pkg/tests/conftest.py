import sys
import os
import pytest

# Ensure 'src' is importable
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))


@pytest.fixture
def mock_config(tmp_path):
    """
    Patches the global app_config to use a temporary config file.
    """
    config_file = tmp_path / "test_config.json"

    # Imports inside fixture to avoid circular issues or early init
    from src.core.config import app_config

    with pytest.MonkeyPatch.context() as m:
        m.setattr("src.core.config.CONFIG_FILE", str(config_file))

        # Force a reload so it reads from (and creates) the new temp file
        app_config.reload()

        yield app_config

    app_config.reload()


@pytest.fixture
def temp_log_file(tmp_path):
    """ErrorHandler writing to a fresh log file for one test."""
    from src.utils.error_handler import ErrorHandler

    log_file = tmp_path / "test_errors.log"
    ErrorHandler._initialized = False
    ErrorHandler.initialize(str(log_file))
    yield log_file
    ErrorHandler._initialized = False
    ErrorHandler._log_file = None


@pytest.fixture(scope="session")
def examples():
    from src.models.problem import builtin_examples
    return builtin_examples()


@pytest.fixture(scope="session")
def solver():
    from src.services.solver_service import SolverService
    return SolverService()
