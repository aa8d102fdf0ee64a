"""
Validation utilities for partdist.
Checks command parameters before any computation starts.
"""

import os
from typing import Iterable, List, Optional, Sequence

from .env_config import config

OUTPUT_FORMATS = ('json', 'csv', 'pretty')


class ValidationError:
    """Represents a validation error or warning."""

    def __init__(self, message: str, level: str = "ERROR", field: str = None):
        """
        Initialize validation error.

        Args:
            message: Error message.
            level: Severity level (ERROR, WARNING, INFO).
            field: Field name that caused the error.
        """
        self.message = message
        self.level = level
        self.field = field

    def __str__(self):
        if self.field:
            return f"[{self.level}] {self.field}: {self.message}"
        return f"[{self.level}] {self.message}"

    def __repr__(self):
        return f"ValidationError(message='{self.message}', level='{self.level}', field='{self.field}')"


class ValidationResult:
    """Container for validation results."""

    def __init__(self):
        self.errors: List[ValidationError] = []
        self.warnings: List[ValidationError] = []
        self.info: List[ValidationError] = []

    def add_error(self, message: str, field: str = None):
        """Add an error message."""
        self.errors.append(ValidationError(message, "ERROR", field))

    def add_warning(self, message: str, field: str = None):
        """Add a warning message."""
        self.warnings.append(ValidationError(message, "WARNING", field))

    def add_info(self, message: str, field: str = None):
        """Add an info message."""
        self.info.append(ValidationError(message, "INFO", field))

    def merge(self, other: "ValidationResult") -> "ValidationResult":
        """Append the messages of another result; returns self."""
        self.errors.extend(other.errors)
        self.warnings.extend(other.warnings)
        self.info.extend(other.info)
        return self

    def is_valid(self) -> bool:
        """Check if validation passed (no errors)."""
        return len(self.errors) == 0


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class ParameterValidator:
    """Validates command parameters."""

    @staticmethod
    def validate_exact_n(n, field: str = "n", minimum: int = 1) -> ValidationResult:
        """
        Validate a size for exact enumeration against the effective ceiling.

        Args:
            n: Value to validate.
            field: Parameter name used in messages.
            minimum: Smallest accepted value.
        """
        result = ValidationResult()
        ceiling = config.exact_max_n()
        if not _is_int(n):
            result.add_error(f"must be an integer, got {n!r}", field)
        elif n < minimum:
            result.add_error(f"must be at least {minimum}, got {n}", field)
        elif n > ceiling:
            result.add_error(
                f"{n} exceeds the exact-enumeration limit of {ceiling} (PARTDIST_MAX_N may only lower it)",
                field
            )
        return result

    @staticmethod
    def validate_sampler_n(n) -> ValidationResult:
        result = ValidationResult()
        if not _is_int(n) or not 1 <= n <= config.SAMPLER_MAX_N:
            result.add_error(f"must be an integer in 1..{config.SAMPLER_MAX_N}, got {n!r}", "n")
        elif n > config.exact_max_n():
            result.add_info(
                f"n above {config.exact_max_n()}: exact X moments and the chi-square test are skipped", "n"
            )
        return result

    @staticmethod
    def validate_trials(trials) -> ValidationResult:
        result = ValidationResult()
        if not _is_int(trials) or trials < 1:
            result.add_error(f"must be a positive integer, got {trials!r}", "trials")
        return result

    @staticmethod
    def validate_seed(seed) -> ValidationResult:
        result = ValidationResult()
        if not _is_int(seed) or not 0 <= seed < 2 ** 64:
            result.add_error(f"must be an integer in 0..2^64-1, got {seed!r}", "seed")
        return result

    @staticmethod
    def validate_workers(workers) -> ValidationResult:
        result = ValidationResult()
        if not _is_int(workers) or workers < 1:
            result.add_error(f"must be a positive integer, got {workers!r}", "workers")
        elif workers > (os.cpu_count() or 1):
            result.add_warning(f"{workers} workers exceeds the {os.cpu_count()} available CPUs", "workers")
        return result

    @staticmethod
    def validate_component(component, max_n) -> ValidationResult:
        result = ValidationResult()
        if not _is_int(component) or component < 1:
            result.add_error(f"must be a positive integer, got {component!r}", "component")
        elif _is_int(max_n) and component > max_n:
            result.add_error(f"component {component} does not exist for any n <= {max_n}", "component")
        return result

    @staticmethod
    def validate_samples(j, samples: Optional[Sequence[int]]) -> ValidationResult:
        """
        Validate fit samples for offset j.

        Needs 2j - 1 distinct values, each at least 2j + 1; the two holdouts
        after the largest sample must stay within the enumeration limit.
        """
        result = ValidationResult()
        if not _is_int(j) or j < 1:
            result.add_error(f"must be a positive integer, got {j!r}", "j")
            return result
        if samples is None:
            return result
        distinct = sorted(set(samples))
        if len(distinct) < 2 * j - 1:
            result.add_error(f"j={j} needs at least {2 * j - 1} distinct samples, got {len(distinct)}", "samples")
        if distinct and distinct[0] < 2 * j + 1:
            result.add_error(f"samples must be at least {2 * j + 1} for j={j}, got {distinct[0]}", "samples")
        if distinct:
            result.merge(ParameterValidator.validate_exact_n(distinct[-1] + 2, field="samples"))
        return result

    @staticmethod
    def validate_format(fmt) -> ValidationResult:
        result = ValidationResult()
        if fmt not in OUTPUT_FORMATS:
            result.add_error(f"must be one of {', '.join(OUTPUT_FORMATS)}, got {fmt!r}", "format")
        return result

    @staticmethod
    def combine(results: Iterable[ValidationResult]) -> ValidationResult:
        combined = ValidationResult()
        for result in results:
            combined.merge(result)
        return combined
