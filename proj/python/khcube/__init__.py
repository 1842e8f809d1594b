"""Khovanov homology from the cube of resolutions."""

import json

from ._khcube import (
    Diagram,
    KhcubeError,
    alexander,
    braid_closure,
    corpus_diagram,
    corpus_names,
    khovanov_homology,
    mod4_betti,
    parse_pd,
    rank_lower_bound,
    rational_ranks,
    torus_4_5,
)
from . import _khcube


def spectral_sequence(diagram, weight=(1, 0), seed=None, reduced=False):
    """Pages of the spectral sequence for the filtration a*h + b*q, as parsed JSON."""
    a, b = weight
    return json.loads(_khcube.spectral_sequence_json(diagram, a, b, seed, reduced))


def feasibility(ranks, target_rank, filtration="h", alexander_of=None):
    return json.loads(_khcube.feasibility_json(ranks, target_rank, filtration, alexander_of))


__all__ = [
    "Diagram",
    "KhcubeError",
    "alexander",
    "braid_closure",
    "corpus_diagram",
    "corpus_names",
    "feasibility",
    "khovanov_homology",
    "mod4_betti",
    "parse_pd",
    "rank_lower_bound",
    "rational_ranks",
    "spectral_sequence",
    "torus_4_5",
]
