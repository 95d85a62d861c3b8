"""Detectability analysis for labeled weighted automata over (Q^k, +)."""

from .epset import (
    EPSet,
    eps_complement,
    eps_difference,
    eps_intersect,
    eps_is_empty,
    eps_min_abs_witness,
    eps_reflect,
    eps_shift,
    eps_sumset,
    eps_union,
    eps_witness,
    nspan,
)
from .epl import EplAnswer, WeightedDigraph, digraph, has_path_with_weight, weight_set
from .model import (
    StructureReport,
    ValidationError,
    WeightedAutomaton,
    instantaneous_closure,
    normalize,
    scale_to_integers,
    scale_weights,
    structure_report,
    validate,
)
from .selfcomp import SelfComposition, build_self_composition, check_sd
from .estimator import (
    EstimatorAutomaton,
    build_detector,
    build_observer,
    successor_cells,
)
from .verify import AnalysisResult, check_all, check_spd, check_wd, check_wpd
from .verdict import Verdict
from .oracle import (
    BoundedRun,
    oracle_estimate,
    oracle_estimate_enum,
    oracle_falsify,
    oracle_runs,
)
from .corpus import (
    Fixture,
    load_fixture,
    random_automaton,
    subset_sum_automaton,
)

__version__ = "0.1.0"
