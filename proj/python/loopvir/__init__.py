"""Python access to the loopvir engine.

Exact values come back as canonical text ("6*L^-2*(u1^2 - u2)", "1/24");
reports come back as parsed JSON.
"""

import json

from . import _core
from ._core import (
    LoopvirError,
    central_charge,
    eval_P,
    eval_P_float,
    finite_difference_generator,
    pq_tau_check,
    suite_names,
    witt_generator,
)

__all__ = [
    "LoopvirError",
    "central_charge",
    "cli",
    "eval_P",
    "eval_P_float",
    "finite_difference_generator",
    "neretin_table",
    "pq_tau_check",
    "run_suite",
    "suite_names",
    "witt_generator",
]


def neretin_table(K, N=-1):
    return json.loads(_core.neretin_table(K, N))


def run_suite(name, range=5, order=None, threads=0, corrupt_phi=False):
    return json.loads(_core.run_suite(name, range, order, threads, corrupt_phi))


def cli(*args):
    """Runs the command line in-process; returns (exit_code, stdout, stderr)."""
    return _core.cli([str(a) for a in args])
