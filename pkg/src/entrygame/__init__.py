"""Subgame-perfect equilibria of a data-market entry game with economies of scope."""

from .diagnostics import (IllConditioned, IndeterminateStrategy, StrategicDiagnostics, Taxonomy,
                          classify_strategy, strategic_effects)
from .model import (AgentProfits, MarketParams, ParameterError, ScaleCurve, aggregator_profits,
                    challenger_revenue, derive_dm, incumbent_revenue, inverse_supply,
                    producer_profit, scale_value, scope_value, scope_value_normalized)
from .solve import (FixedPointReport, SolverError, SolveSettings, best_response_fixed_point,
                    maximize_scalar)
from .spne import (AccommodationResult, DeterrenceResult, DuopsonyEquilibrium, MonopsonyOutcome,
                   Regime, StageZeroOutcome, entry_decision, solve_accommodation,
                   solve_deterrence, solve_duopsony, solve_monopsony, solve_spne)
from .statics import F_LEVELS, SweepRow, SweepSpec, dense_grid, run_sweep, welfare_comparison

__version__ = "0.1.0"
