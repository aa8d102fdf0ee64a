"""
Reference values printed in the source material, loaded from YAML.

Used for provenance flags ("reference" vs "computed") and as golden data.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from .exactnum import parse_rational
from .partitions import Partition

logger = logging.getLogger(__name__)

REFERENCE_FILE = Path(__file__).parent / "data" / "reference_values.yml"


@lru_cache(maxsize=None)
def load_reference_values(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load the reference YAML.

    Args:
        path: Optional alternative file; defaults to the packaged one.

    Returns:
        The parsed mapping.
    """
    reference_path = Path(path) if path else REFERENCE_FILE
    with open(reference_path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    logger.debug(f"Loaded reference values from {reference_path}")
    return data


def reference_sequence(name: str) -> Dict[int, int]:
    """Printed sequence ``name`` ("x1" or "x2") as {n: value}."""
    entry = load_reference_values()["sequences"][name]
    first = int(entry["first_n"])
    return {first + offset: int(value) for offset, value in enumerate(entry["values"])}


def is_reference_value(component: int, n: int) -> bool:
    """Whether n! E(X_component^(n)) was printed in the source material."""
    name = f"x{component}"
    if name not in load_reference_values()["sequences"]:
        return False
    return n in reference_sequence(name)


def reference_coefficients(j: int) -> Optional[List[int]]:
    """Printed a_2 .. a_2j for offset j, or None when none were printed."""
    coefficients = load_reference_values()["conjectured_coefficients"].get(j)
    return [int(a) for a in coefficients] if coefficients is not None else None


def reference_polynomial(j: int) -> Optional[List[Fraction]]:
    """Printed monomial coefficients (constant first) for offset j."""
    entry = load_reference_values()["conjectured_polynomials"].get(j)
    if entry is None:
        return None
    denominator = int(entry["denominator"])
    return [Fraction(int(c), denominator) for c in entry["coefficients"]]


def conjecture_min_n(j: int) -> Optional[int]:
    return load_reference_values()["conjecture_ranges"].get(j)


def reference_pmf(n: int) -> Dict[Partition, Fraction]:
    table = load_reference_values()["pmf_tables"][n]
    return {Partition.parse(key): parse_rational(value) for key, value in table.items()}


def reference_covariance(n: int) -> List[List[Fraction]]:
    rows = load_reference_values()["covariance"][n]
    return [[parse_rational(value) for value in row] for row in rows]
