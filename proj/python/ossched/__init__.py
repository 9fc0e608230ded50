"""Order scheduling with family setup times.

Thin wrappers over the C++ core; instances and schedules are the plain
dicts of the JSON formats used by the command-line tool.
"""

import json

from . import _core
from ._core import (
    SQRT2,
    Error,
    GuardExceededError,
    InfeasibleScheduleError,
    InstanceError,
    MalformedScheduleError,
    ParameterError,
    ShapeError,
    wspt_order,
)

__all__ = [
    "SQRT2",
    "Error",
    "GuardExceededError",
    "InfeasibleScheduleError",
    "InstanceError",
    "MalformedScheduleError",
    "ParameterError",
    "ShapeError",
    "bench",
    "evaluate",
    "evaluate_os",
    "generate",
    "reduce",
    "solve",
    "tightness",
    "transform",
    "wspt_order",
]


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def evaluate(instance, order):
    """Cost of an operation order under the original model."""
    if not isinstance(order, (dict, str)):
        order = {"order": list(order)}
    return json.loads(_core.evaluate(_dump(instance), _dump(order)))


def evaluate_os(instance, os_schedule):
    return json.loads(_core.evaluate_os(_dump(instance), _dump(os_schedule)))


def solve(instance, algorithm="exact-k", beta=SQRT2, max_exact_families=10):
    return json.loads(_core.solve(_dump(instance), algorithm, beta, max_exact_families))


def transform(instance, os_schedule, beta=SQRT2):
    return json.loads(_core.transform(_dump(instance), _dump(os_schedule), beta))


def generate(jobs, families, setup_factor=5.0, prob=0.3, dist="normal", seed=1):
    return json.loads(_core.generate(jobs, families, setup_factor, prob, dist, seed))


def tightness(m, eps, beta=SQRT2):
    os_cost, cost, ratio = _core.tightness(m, eps, beta)
    return {"os_cost": os_cost, "transformed_cost": cost, "ratio": ratio}


def reduce(prec):
    return json.loads(_core.reduce(_dump(prec)))


def bench(config):
    """Runs a benchmark sweep and returns the CSV text."""
    return _core.bench(_dump(config))
