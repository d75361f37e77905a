"""
Centralized error handling with severity-based notifications.

This module provides the ErrorHandler class for managing all solver errors
with appropriate logging and console notifications.
"""

import json
import sys
import traceback
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Optional, List, Dict


class ErrorSeverity(Enum):
    """Error severity levels determining user notification behavior."""
    CRITICAL = "critical"    # Echo to stderr + count + log with stack
    ERROR = "error"          # Echo to stderr + count + log with stack
    WARNING = "warning"      # Echo to stderr + log
    INFO = "info"            # Echo only (no count, no log)
    SILENT = "silent"        # Log only + count (no echo)


class ErrorHandler:
    """
    Centralized error handling with severity-based notifications.

    Features:
    - Severity-based error handling (CRITICAL, ERROR, WARNING, INFO, SILENT)
    - Logs errors to a JSON Lines file
    - Echoes user-facing messages to stderr so stdout stays machine readable
    - Tracks error count since start-up
    - Silent logging for non-critical errors
    """

    # Class variables
    _log_file = None
    _error_count = 0
    _critical_count = 0
    _initialized = False

    @classmethod
    def initialize(cls, log_file: str = "solver_runs.log"):
        """
        Initialize the error handler with log file.

        Args:
            log_file: Path to log file (default: solver_runs.log in current directory)
        """
        if cls._initialized:
            return

        cls._log_file = Path(log_file)
        cls._error_count = 0
        cls._critical_count = 0
        cls._initialized = True

    # ============ Main Error Handling ============

    @classmethod
    def handle_error(
        cls,
        error: Exception,
        user_message: str,
        severity: ErrorSeverity = ErrorSeverity.ERROR,
        context: str = "",
        details: Optional[str] = None
    ):
        """
        Handle error based on severity level.

        Args:
            error: The exception that occurred
            user_message: User-friendly error message
            severity: Error severity level
            context: Context information (e.g., "Solving example 3")
            details: Additional details appended to the console message
        """
        if not cls._initialized:
            cls.initialize()

        if severity != ErrorSeverity.INFO:
            cls._log_error_internal(error, context, severity)
            cls._increment_error_count(severity)

        if severity != ErrorSeverity.SILENT:
            prefix = {
                ErrorSeverity.CRITICAL: "Critical error",
                ErrorSeverity.ERROR: "Error",
                ErrorSeverity.WARNING: "Warning",
                ErrorSeverity.INFO: "Info",
            }[severity]
            message = user_message + (f" ({details})" if details else "")
            print(f"{prefix}: {message}", file=sys.stderr)

    # ============ Convenience Methods ============

    @classmethod
    def show_error(cls, message: str, details: Optional[str] = None, context: str = ""):
        """Echo error and log."""
        cls.handle_error(Exception(message), message, ErrorSeverity.ERROR,
                         context=context, details=details)

    @classmethod
    def show_warning(cls, message: str, context: str = ""):
        """Echo warning and log."""
        cls.handle_error(Exception(message), message, ErrorSeverity.WARNING, context=context)

    @classmethod
    def log_silent(cls, error: Exception, context: str = ""):
        """Log error silently without echoing it."""
        cls.handle_error(error, str(error), ErrorSeverity.SILENT, context=context)

    # ============ Logging Methods ============

    @classmethod
    def _log_error_internal(cls, error: Exception, context: str, severity: ErrorSeverity):
        """Internal method to log error to file."""
        if not cls._log_file:
            return

        log_entry = {
            "timestamp": datetime.now().isoformat(),
            "level": severity.value.upper(),
            "context": context,
            "message": str(error),
            "exception": type(error).__name__,
            "stack_trace": traceback.format_exc() if severity in [ErrorSeverity.CRITICAL, ErrorSeverity.ERROR] else None
        }
        cls._append(log_entry, error)

    @classmethod
    def log_info(cls, message: str, context: str = ""):
        """Log info message (no echo, no count)."""
        if not cls._initialized:
            cls.initialize()

        log_entry = {
            "timestamp": datetime.now().isoformat(),
            "level": "INFO",
            "context": context,
            "message": message,
            "exception": None,
            "stack_trace": None
        }
        cls._append(log_entry)

    @classmethod
    def _append(cls, log_entry: Dict, error: Optional[Exception] = None):
        try:
            with open(cls._log_file, 'a', encoding='utf-8') as f:
                f.write(json.dumps(log_entry) + '\n')
        except Exception as e:
            # If logging fails, fall back to the console
            print(f"Failed to write to log file: {e}", file=sys.stderr)
            if error is not None:
                print(f"Original error: {error}", file=sys.stderr)

    # ============ Counters ============

    @classmethod
    def _increment_error_count(cls, severity: ErrorSeverity):
        cls._error_count += 1
        if severity == ErrorSeverity.CRITICAL:
            cls._critical_count += 1

    @classmethod
    def get_error_count(cls) -> int:
        """Get count of errors since start-up."""
        return cls._error_count

    @classmethod
    def get_critical_count(cls) -> int:
        """Get count of critical errors."""
        return cls._critical_count

    @classmethod
    def clear_error_count(cls):
        cls._error_count = 0
        cls._critical_count = 0

    # ============ Log Access ============

    @classmethod
    def get_recent_errors(cls, limit: int = 50) -> List[Dict]:
        """
        Get recent log entries.

        Args:
            limit: Maximum number of entries to return

        Returns:
            List of entry dictionaries, oldest first
        """
        if not cls._initialized:
            cls.initialize()

        if not cls._log_file or not cls._log_file.exists():
            return []

        errors = []
        try:
            with open(cls._log_file, 'r', encoding='utf-8') as f:
                lines = f.readlines()
                for line in lines[-limit:]:
                    try:
                        errors.append(json.loads(line.strip()))
                    except json.JSONDecodeError:
                        continue
        except Exception as e:
            return [{
                "timestamp": datetime.now().isoformat(),
                "level": "ERROR",
                "context": "System",
                "message": f"Failed to read log file: {e}",
                "exception": "IOError"
            }]

        return errors

    @classmethod
    def clear_log_file(cls):
        """Clear the log file."""
        if not cls._log_file:
            return
        try:
            with open(cls._log_file, 'w', encoding='utf-8') as f:
                f.write("")
        except Exception:
            pass
