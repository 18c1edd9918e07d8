"""JSON rendering helpers shared by the reports."""
from __future__ import annotations

import math
from fractions import Fraction

SCHEMA = "graphscan/1"


def exact(x) -> dict:
    """Render a number with its exact rational form when there is one."""
    if isinstance(x, Fraction):
        return {"num": str(x.numerator), "den": str(x.denominator), "float": float(x)}
    if isinstance(x, int):
        return {"num": str(x), "den": "1", "float": float(x)}
    return {"float": None if x is None else float(x)}


def finite(obj):
    """Copy of a report tree with numpy scalars unwrapped and non-finite
    floats replaced by ``None``, so it serializes as strict JSON."""
    if isinstance(obj, dict):
        return {str(k): finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [finite(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (int, float, str)):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj
