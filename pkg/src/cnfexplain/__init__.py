"""Cost-optimal step-wise explanations for satisfiable CNF problems.

The central primitive is the optimal constrained unsatisfiable subset: the
cheapest unsatisfiable subset of a weighted formula that satisfies a
structural side constraint, found through the hitting-set duality between
unsatisfiable subsets and correction subsets.  On top of it sit one-step
explanation searches and a sequence driver that explains the full maximal
consequence of a constraint set, plus instance ingestion, a sudoku encoder
and benchmark reporting.
"""

from .engine import OcusResult, OcusStats, OcusStatus, bootstrap_sets, ocus, ocus_bounded, ocus_split
from .errors import ContradictionError, ParseError, SolveTimeout
from .formula import (
    INF,
    CostModel,
    ElementKind,
    WeightedFormula,
    build_literal_formula,
    build_sequence_formula,
    build_sequence_literal_formula,
    build_step_formula,
    negated_remaining,
    subset_cost,
)
from .growing import GrowKind, GrowStrategy, corr_subsets, grow
from .hitting import (
    And,
    CostBound,
    ExactlyOne,
    HittingSetSolver,
    SetsToHit,
    StructuralConstraint,
    TriviallyTrue,
    hs_add_set,
    hs_new,
    hs_set_weight,
    hs_solve,
)
from .instances import InstanceFile, load_instance, parse_instance, save_instance, serialize_instance
from .maxsat import MaxSatProblem, MaxSatSolution, maxsat_solve
from .mus import mus_deletion
from .oracle import FormulaOracle, SatResult, check_clauses, polarity_from, propagate
from .runner import RunConfig, RunReport, report_suite, run, serialize_sequence, write_run
from .sequence import (
    CostPolicy,
    ExplanationSequence,
    ExplanationStep,
    OneStepStrategy,
    explain_sequence,
    onestep_bounded,
    onestep_mus,
    onestep_ocus,
    onestep_split,
    update_weights_after_step,
)
from .sudoku import encode_sudoku, load_grid, parse_grid

__all__ = [name for name in dir() if not name.startswith("_")]
