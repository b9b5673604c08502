"""Shared fixtures: the expensive scaling sweeps are computed once per session."""

import pytest

from adiasearch import ModelParams, Schedule, SweepTable, sweep


def pow2(lo: int, hi: int) -> list[int]:
    return [2 ** k for k in range(lo, hi + 1)]


def restrict(table: SweepTable, n_max: int) -> SweepTable:
    return SweepTable(rows=tuple(r for r in table.rows if r.n_items <= n_max))


@pytest.fixture(scope="session")
def wo_global_sweeps():
    """Wide-open global sigma=1 sweeps keyed by target p.

    p=0.5 extends to 2^16 (used by the headline scaling criterion); the other
    targets stop at 2^14 (p-independence checks).
    """
    base = ModelParams.from_omega(2, 1.0, sigma=1.0)
    tables = {0.5: sweep(pow2(6, 16), 0.5, base)}
    for p in (0.4, 0.6, 0.7, 0.8):
        tables[p] = sweep(pow2(6, 14), p, base)
    return tables


@pytest.fixture(scope="session")
def wo_local_sweep():
    base = ModelParams.from_omega(2, 1.0, sigma=1.0, schedule=Schedule.LOCAL)
    return sweep(pow2(6, 16), 0.5, base)


@pytest.fixture(scope="session")
def so_global_sweep():
    return sweep(pow2(6, 14), 0.5, ModelParams.from_omega(2, 0.5, sigma=1.0))


@pytest.fixture(scope="session")
def so_local_sweep():
    base = ModelParams.from_omega(2, 0.5, sigma=1.0, schedule=Schedule.LOCAL)
    return sweep(pow2(6, 14), 0.5, base)


@pytest.fixture(scope="session")
def closed_local_sweep():
    base = ModelParams.from_omega(2, 0.0, sigma=1.0, schedule=Schedule.LOCAL)
    return sweep(pow2(6, 14), 0.5, base)
