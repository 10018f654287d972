"""Multi-fluid percolation on the hexagonal patch M_s.

Exact results come back as fractions.Fraction; Monte Carlo tallies and
reports as plain dicts (the same JSON the CLI writes).
"""

import json as _json
from fractions import Fraction

from . import _core
from ._core import (
    Lattice,
    Refusal,
    berry_esseen_bound,
    binomial_ks_reference,
    build_lattice,
    builtin_graph_names,
    hex_distance,
    ks_distance_pmf,
    normal_cdf,
)

__all__ = [
    "Lattice",
    "Refusal",
    "berry_esseen_bound",
    "binomial_ks_reference",
    "brute_force_prob",
    "build_lattice",
    "builtin_graph_names",
    "cli",
    "count_paths",
    "enumerate_paths",
    "estimate",
    "exact",
    "hex_distance",
    "ks_distance_pmf",
    "fraction_gap",
    "normal_cdf",
    "run",
    "single_fluid_sum",
    "to_fraction",
    "triple_fluid_sum",
    "version",
]

__version__ = _core.version()


def version():
    return _core.version()


def _graph(g):
    # builtin name, or a CellGraph dict {"cells", "edges", "sources", "targets"}
    return g if isinstance(g, str) else _json.dumps(g)


def _fraction(parts):
    num, den = parts
    return Fraction(int(num), int(den))


def to_fraction(r):
    """Decode a rational from a report ({"num", "den", "decimal"})."""
    return Fraction(int(r["num"]), int(r["den"]))


def run(s, n, samples, seed=0, workers=1):
    return _json.loads(_core.run_json(s, n, samples, seed, workers))


def estimate(tally, z=1.959963984540054):
    return _json.loads(_core.estimate_json(_json.dumps(tally), z))


def exact(s, n, budget=30):
    return _json.loads(_core.exact_json(s, n, budget))


def count_paths(graph, cap=1_000_000):
    return _core.count_paths(_graph(graph), cap)


def enumerate_paths(graph, cap=1_000_000):
    return _core.enumerate_paths(_graph(graph), cap)


def single_fluid_sum(graph, subset_cap=1 << 24):
    return _fraction(_core.single_fluid_sum_parts(_graph(graph), subset_cap))


def triple_fluid_sum(graph, subset_cap=1 << 24):
    return _fraction(_core.triple_fluid_sum_parts(_graph(graph), subset_cap))


def brute_force_prob(graph, n, all_fluids=False, budget=30):
    return _fraction(_core.brute_force_parts(_graph(graph), n, all_fluids, budget))


def fraction_gap(tally):
    return _core.fraction_gap(_json.dumps(tally))


def cli(argv):
    """Run a CLI command in-process; returns (exit_code, summary, files)."""
    code, summary, files = _core.cli_json(list(argv))
    return code, _json.loads(summary), files
