from .expressions import Monomial, Posynomial, Signomial, condense, evaluate, variable
from .gp import VAR_FLOOR, GpProblem, GpSolution, solve_gp
from .lp import solve_lp
from .mrc_terms import (MrcConstraint, alpha_name, build_mrc_constraint,
                        build_mrc_constraints, p_name, pair_gain, phase_condition)
from .sp import SpOutcome, successive_condensation
