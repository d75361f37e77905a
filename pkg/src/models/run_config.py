from dataclasses import dataclass
from enum import Enum
from typing import Optional

from src.core.grid import QuadratureRule
from src.models.problem import Problem, builtin_example


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"


@dataclass
class RunConfig:
    """One CLI run: where f comes from and how to solve and report it."""
    example_id: Optional[int] = None
    expression: Optional[str] = None
    epsilon: float = 1e-6
    n_max: int = 512
    rule: QuadratureRule = QuadratureRule.LEFT
    M: int = 200
    out: Optional[str] = None
    output_format: OutputFormat = OutputFormat.CSV
    oracle: bool = False
    workers: int = 1

    @property
    def source_label(self) -> str:
        if self.example_id is not None:
            return f"example {self.example_id}"
        return self.expression or ""

    def problem(self) -> Problem:
        """
        The built-in example, or the parsed expression; --oracle attaches
        the analytic solution to an expression.
        """
        if self.example_id is not None:
            return builtin_example(self.example_id)
        return Problem.from_text(self.expression, with_oracle=self.oracle)
