import time

import pytest

from polarscf.hfcore import AtomConfig, scf_solve


def _timed_solve(cfg):
    t0 = time.monotonic()
    state = scf_solve(cfg)
    return state, time.monotonic() - t0


@pytest.fixture(scope="session")
def h_run():
    """Hydrogen 1s^1 ground state and its wall-clock solve time."""
    return _timed_solve(AtomConfig(z=1.0, shells=((1, 0, 1),)))


@pytest.fixture(scope="session")
def he_run():
    """Helium 1s^2 closed shell and its wall-clock solve time."""
    return _timed_solve(AtomConfig(z=2.0, shells=((1, 0, 2),)))


@pytest.fixture(scope="session")
def li_run():
    """Lithium 1s^2 2s^1 and its wall-clock solve time."""
    return _timed_solve(AtomConfig(z=3.0, shells=((1, 0, 2), (2, 0, 1))))
