from src.core.errors import ExpressionError
from src.core.expr import parse
from src.core.grid import MIN_POINTS
from src.models.problem import builtin_examples
from src.models.run_config import RunConfig
from src.validators.validation_result import ValidationResult


class RunConfigValidator:
    def validate(self, cfg: RunConfig) -> ValidationResult:
        """
        Checks a RunConfig before any solve starts.
        Every problem is collected; the caller decides how to report them.
        """
        result = ValidationResult()
        self._validate_source(cfg, result)
        self._validate_epsilon(cfg, result)
        self._validate_n_max(cfg, result)
        self._validate_output(cfg, result)
        return result

    def _validate_source(self, cfg: RunConfig, result: ValidationResult):
        if (cfg.example_id is None) == (cfg.expression is None):
            result.add_error("Exactly one of --example and --f must be given", "source")
            return

        if cfg.example_id is not None:
            count = len(builtin_examples())
            if not 1 <= cfg.example_id <= count:
                result.add_error(f"Example id must be in 1..{count}, got {cfg.example_id}", "example")
            if cfg.oracle:
                result.add_warning("--oracle has no effect on built-in examples", "oracle")
            return

        try:
            parse(cfg.expression)
        except ExpressionError as e:
            result.add_error(f"Invalid expression: {e}", "f")

    def _validate_epsilon(self, cfg: RunConfig, result: ValidationResult):
        if not cfg.epsilon > 0.0:
            result.add_error(f"epsilon must be positive, got {cfg.epsilon}", "epsilon")
        elif cfg.epsilon >= 1.0:
            result.add_warning(f"epsilon {cfg.epsilon:g} >= 1 stops at the first grid", "epsilon")

    def _validate_n_max(self, cfg: RunConfig, result: ValidationResult):
        if cfg.n_max < MIN_POINTS or cfg.n_max % 2:
            result.add_error(f"n_max must be an even integer >= {MIN_POINTS}, got {cfg.n_max}", "n_max")

    def _validate_output(self, cfg: RunConfig, result: ValidationResult):
        if cfg.M < 2:
            result.add_error(f"M must be at least 2, got {cfg.M}", "M")
        if cfg.workers < 1:
            result.add_error(f"workers must be at least 1, got {cfg.workers}", "workers")
