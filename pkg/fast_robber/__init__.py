"""Cops and Robbers with a fast robber: exact solving, witness strategy and bounds."""

from .bounds import BoundParams, lemma1_bound
from .catalog import build, list_entries, projective_plane_incidence
from .graph import girth, is_regular, load_graph, moore_bound, pad_with_path, paths_of_length
from .simulation import replay_transcript, run_simulation
from .solver import cop_number, cops_win_with
from .strategy import WitnessRobber, find_initial_witness, strategy_step
from .types import Graph, MooreBoundQuery

__all__ = [
    "BoundParams",
    "Graph",
    "WitnessRobber",
    "MooreBoundQuery",
    "build",
    "cop_number",
    "cops_win_with",
    "find_initial_witness",
    "girth",
    "is_regular",
    "lemma1_bound",
    "list_entries",
    "load_graph",
    "moore_bound",
    "pad_with_path",
    "paths_of_length",
    "projective_plane_incidence",
    "replay_transcript",
    "run_simulation",
    "strategy_step",
]
