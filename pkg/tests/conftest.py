import pytest

from entrygame.model import MarketParams
from entrygame.spne import solve_spne
from entrygame.statics import F_LEVELS, SweepSpec, run_sweep

LEVELS = (F_LEVELS["low"], F_LEVELS["medium"], F_LEVELS["high"])


def _sweep(parameter):
    rows = run_sweep(SweepSpec(parameter=parameter, f_levels=LEVELS))
    return {F: [r for r in rows if r.F == F] for F in LEVELS}


@pytest.fixture(scope="session")
def c0_sweep():
    """Default c0 grid {3/6..6/6} at low/medium/high entry cost, keyed by F."""
    return _sweep("c0")


@pytest.fixture(scope="session")
def delta_sweep():
    return _sweep("delta")


@pytest.fixture(scope="session")
def default_spne():
    return solve_spne(MarketParams())
