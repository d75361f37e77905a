"""
Helpers shared by the command modules: RunConfig from argparse, exit codes,
validation reporting and error routing.
"""

import os
from typing import Callable

from src.core.config import app_config
from src.core.errors import (
    DomainError,
    ExpressionError,
    FactorizationError,
    GridError,
    QuadratureError,
)
from src.core.grid import QuadratureRule
from src.models.run_config import OutputFormat, RunConfig
from src.utils.error_handler import ErrorHandler, ErrorSeverity
from src.validators.run_config_validator import RunConfigValidator
from src.validators.validation_result import ValidationResult

EXIT_OK = 0
EXIT_NOT_CONVERGED = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3


class UsageError(Exception):
    """Bad command-line input detected after argparse."""


def _pick(value, default):
    return default if value is None else value


def run_config_from_args(args) -> RunConfig:
    """Fill anything the user did not pass from app_config."""
    return RunConfig(
        example_id=getattr(args, 'example', None),
        expression=getattr(args, 'f', None),
        epsilon=_pick(getattr(args, 'epsilon', None), app_config.epsilon),
        n_max=_pick(args.n_max, app_config.n_max),
        rule=QuadratureRule.from_name(_pick(args.rule, app_config.rule)),
        M=_pick(args.M, app_config.M),
        out=args.out,
        output_format=OutputFormat(_pick(args.format, app_config.output_format)),
        oracle=bool(getattr(args, 'oracle', False)),
        workers=_pick(getattr(args, 'workers', None), app_config.workers),
    )


def report_validation(result: ValidationResult, context: str) -> bool:
    """Echo issues; True when the run may proceed."""
    for issue in result.warnings:
        ErrorHandler.show_warning(issue.message, context=context)
    for issue in result.errors:
        ErrorHandler.show_error(issue.message, context=context)
    return result.is_valid


def validate(cfg: RunConfig, context: str) -> bool:
    return report_validation(RunConfigValidator().validate(cfg), context)


def default_output_path(command: str, cfg: RunConfig) -> str:
    name = f"{command}_example{cfg.example_id}" if cfg.example_id is not None else f"{command}_expr"
    return os.path.join(app_config.output_dir, f"{name}.{cfg.output_format.value}")


def run_guarded(action: Callable[[], int], context: str) -> int:
    """
    Run a command body, mapping failures to exit codes through ErrorHandler.
    """
    try:
        return action()
    except (UsageError, ExpressionError) as e:
        if isinstance(e, DomainError):
            ErrorHandler.handle_error(e, f"Evaluation failed: {e}", ErrorSeverity.ERROR, context=context)
            return EXIT_SOLVER
        ErrorHandler.handle_error(e, str(e), ErrorSeverity.ERROR, context=context)
        return EXIT_USAGE
    except (GridError, ValueError) as e:
        ErrorHandler.handle_error(e, str(e), ErrorSeverity.ERROR, context=context)
        return EXIT_USAGE
    except (FactorizationError, QuadratureError) as e:
        ErrorHandler.handle_error(e, f"Solver failed: {e}", ErrorSeverity.ERROR, context=context)
        return EXIT_SOLVER
    except OSError as e:
        ErrorHandler.handle_error(e, f"Could not write output: {e}", ErrorSeverity.ERROR, context=context)
        return EXIT_USAGE
