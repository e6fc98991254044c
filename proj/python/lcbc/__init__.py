"""Linear computation broadcast toolkit.

Thin JSON-translating wrapper around the compiled core module. Every
function accepts and returns plain Python objects; the heavy lifting
(exact rational LP, finite-field linear algebra, scheme synthesis) happens
in C++.
"""

import json

import _lcbc

__all__ = [
    "decompose",
    "solve",
    "build",
    "verify",
    "simulate",
    "caching_sweep",
    "caching_csv",
    "fixture",
    "fixture_names",
]


def _as_text(instance):
    if isinstance(instance, str):
        return instance
    return json.dumps(instance)


def decompose(instance):
    """Subspace atlas of an instance (dict or JSON string)."""
    return json.loads(_lcbc.decompose(_as_text(instance)))


def solve(instance, subset_cap=0):
    """Exact width LP solution: load, profile, tight constraints."""
    return json.loads(_lcbc.solve(_as_text(instance), subset_cap))


def build(instance, seed=0):
    """Broadcast plan and its verification report."""
    return json.loads(_lcbc.build(_as_text(instance), seed))


def verify(instance, seed=0):
    """Decodability report for the planned scheme."""
    return json.loads(_lcbc.verify(_as_text(instance), seed))


def simulate(instance, seed=0, trials=1, block=0, transcript=False):
    """End-to-end delivery rounds with exact decode comparison."""
    return json.loads(_lcbc.simulate(_as_text(instance), seed, trials, block, transcript))


def caching_sweep(step="1/20", jobs=1):
    """Memory-load tradeoff points for the three-file, three-user setup."""
    return json.loads(_lcbc.caching_sweep(step, jobs))


def caching_csv(step="1/20", jobs=1):
    """Same sweep as CSV text."""
    return _lcbc.caching_csv(step, jobs)


def fixture(name):
    """Bundled example instance by name."""
    return json.loads(_lcbc.fixture(name))


def fixture_names():
    """Names of the bundled example instances."""
    return list(_lcbc.fixture_names())
