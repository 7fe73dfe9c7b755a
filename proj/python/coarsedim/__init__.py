"""Coarse dimension tools: exact s-covers, dimension trees and the cover game."""

import json

from . import _core
from ._core import CoarsedimError

__all__ = [
    "CoarsedimError",
    "Service",
    "check_cover",
    "coords_space",
    "empirical_tree",
    "grid_space",
    "oracle",
    "play",
    "run_cli",
    "run_suite",
    "solve",
    "tree_rank",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def grid_space(n, k, s, metric="taxicab"):
    return json.loads(_core.grid_space(n, k, s, metric))


def coords_space(label, coords, metric="taxicab"):
    return json.loads(_core.coords_space(label, [list(c) for c in coords], metric))


def solve(space, s, D, budget_nodes=20_000_000):
    return json.loads(_core.solve(_dump(space), list(s), D, budget_nodes))


def oracle(space, s, D):
    return _core.oracle(_dump(space), list(s), D)


def check_cover(space, cover):
    """Returns (ok, predicate) where predicate names the first failed check."""
    ok, predicate = _core.check_cover(_dump(space), _dump(cover))
    return ok, predicate or None


def tree_rank(tree, method="recursive"):
    if not isinstance(tree, (str, dict)):
        tree = {"nodes": [list(s) for s in tree]}
    return json.loads(_core.tree_rank(_dump(tree), method))


def empirical_tree(space, rmax, lmax, bound, variant="nondecreasing"):
    return json.loads(_core.empirical_tree(_dump(space), rmax, lmax, bound, variant))


def play(space, bound, kcap, rmax, script):
    return json.loads(_core.play(_dump(space), bound, kcap, rmax, list(script)))


def run_suite(name, seed=7, trials=50):
    return json.loads(_core.run_suite(name, seed, trials))


def run_cli(args, stdin=""):
    """Runs the command line in-process. Returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args], stdin)


class Service:
    """In-process session service; responses are (status, decoded JSON)."""

    def __init__(self, preload=True):
        self._svc = _core.Service(preload)

    def request(self, method, path, query=None, body=None):
        status, text = self._svc.handle(method, path, dict(query or {}), "" if body is None else _dump(body))
        return status, json.loads(text)
