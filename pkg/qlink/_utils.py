import json
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

import numpy as np

NAN_SENTINEL = "nan"

T = TypeVar("T")
R = TypeVar("R")


class FloatEncoder(json.JSONEncoder):
    def default(self, obj):
        # numpy scalars are not JSON serializable, convert
        # them to the builtin type, otherwise use the
        # default behavior
        return (
            obj.item()
            if isinstance(obj, np.generic)
            else json.JSONEncoder.default(self, obj)
        )


def sentinel(value: float) -> float | str:
    """Return the value itself, or the "nan" sentinel for no-key and degenerate cells."""
    value = float(value)
    return value if math.isfinite(value) else NAN_SENTINEL


def format_cell(value: float) -> str:
    """Format a table cell so identical floats always give identical text."""
    cell = sentinel(value)
    return cell if isinstance(cell, str) else repr(cell)


def parallel_map(function: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """
    Apply `function` to every item, on `jobs` worker processes when `jobs > 1`.

    Results keep the order of `items` whatever the number of workers, so concurrent runs
    write the same tables as sequential ones. `function` must be picklable.
    """
    pending = list(items)

    if jobs == 1 or len(pending) <= 1:
        return [function(item) for item in pending]

    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(function, pending))
