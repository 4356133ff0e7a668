#!/usr/bin/env python3
"""Regenerate the committed high-resolution reference fixtures.

The helium ground-state fixture pins the mean-field total energy at four
times the default radial resolution.  The test suite compares ordinary
default-resolution runs against this file, so it only needs regenerating
when the discretization or the mean-field physics intentionally changes.

Run from the repository root:

    python3 tools/make_reference_fixtures.py

Takes on the order of ten minutes: the fine grid makes every shift-invert
factorization dense and large.
"""

import json
import pathlib
import time

from polarscf.hfcore import AtomConfig, GridParams, scf_solve

FIXTURE_DIR = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

RESOLUTION_FACTOR = 4
BASE_POINTS = 2000


def helium_reference() -> dict:
    n_points = RESOLUTION_FACTOR * BASE_POINTS
    cfg = AtomConfig(
        z=2.0,
        shells=((1, 0, 2),),
        grid=GridParams(n_points=n_points),
    )
    t0 = time.time()
    state = scf_solve(cfg)
    elapsed = time.time() - t0
    print(
        f"helium: E = {state.total_energy:.12f} Ha, eps_1s = "
        f"{state.eigenvalues[0]:.12f} Ha, {state.iterations} iterations, "
        f"{elapsed:.0f}s"
    )
    return {
        "system": "helium 1s^2 restricted mean field",
        "z": 2.0,
        "shells": "1s:2",
        "resolution_factor": RESOLUTION_FACTOR,
        "n_points": n_points,
        "r_min": 1e-6 / 2.0,
        "r_max": 50.0,
        "converged": bool(state.converged),
        "iterations": int(state.iterations),
        "eigenvalue_1s_hartree": float(state.eigenvalues[0]),
        "total_energy_hartree": float(state.total_energy),
    }


def main():
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    path = FIXTURE_DIR / "he_reference.json"
    data = helium_reference()
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
