"""Services module - use-case orchestrators."""

from src.services.export_service import ExportService
from src.services.metrics_service import MetricsService
from src.services.solver_service import SolverService

__all__ = ['ExportService', 'MetricsService', 'SolverService']
