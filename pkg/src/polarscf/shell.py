"""Command-line front end: config files, canonical output, dispatch.

Configs are flat key=value files (blank lines and # comments allowed).
Every key has a default, so a config only states what it changes; the CLI
can override single keys with trailing key=value arguments, and the
subcommand itself comes either from a `command=` line or the positional
argument.  Rendering a config and parsing it back is an exact round trip,
which is what makes the "resolved config" block embedded in every output
trustworthy: it reruns to the same result.

Outputs are deterministic down to the byte: fixed field order, floats
printed with 17 significant digits, no timestamps or environment echoes.
JSON for the solver commands, CSV (with the resolved config in # comments)
for the sweep commands.

Exit codes: 0 success, 2 non-convergence, 3 domain/config errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import ConfigError, ConvergenceError, PolarSCFError
from .fockspace import anticommutator_table
from .hfcore import (
    AtomConfig,
    GridParams,
    L_LETTERS,
    SCFParams,
    scf_solve,
    state_summary,
)
from .pseudopot import pk_solve, pseudo_summary
from .quasiparticle import (
    SelfEnergyModel,
    mass_operator_eigen,
    pair_quantities,
    resolvent_sweep,
)
from .relspectrum import (
    FINE_STRUCTURE_ALPHA,
    SpectrumParams,
    boson_energy,
    k_values_for_l,
)

COMMANDS = ("scf", "pseudo", "qp", "spectrum", "verify")


@dataclass(frozen=True)
class RunConfig:
    command: str = ""
    # atom and mean field
    z: float = 1.0
    shells: str = "1s:1"
    r_min: float | None = None
    r_max: float = 50.0
    n_points: int = 2000
    max_iter: int = 200
    mixing: float = 0.3
    tol_energy: float = 1e-8
    tol_orbital: float = 1e-6
    # frozen-core pseudo-orbital
    valence: str = ""
    # quasiparticle sweep
    qp_levels: str = "-1.0,-0.5,0.5"
    qp_eta: float = 0.01
    qp_e_min: float = -2.0
    qp_e_max: float = 2.0
    qp_e_points: int = 201
    sigma_kind: str = "zero"
    sigma_shift: float = 0.0
    sigma_coefficients: str = ""
    n_quanta: int = 1
    pair_epsilon0: float = 0.0
    pair_constant: float = 0.0
    # boson level series
    mass: float = 1.0
    gamma: float = FINE_STRUCTURE_ALPHA
    n_max: int = 5
    l_max: int = 1
    # algebra check
    modes: int = 4


_FLOAT_KEYS = {
    "z", "r_max", "mixing", "tol_energy", "tol_orbital", "qp_eta",
    "qp_e_min", "qp_e_max", "sigma_shift", "pair_epsilon0", "pair_constant",
    "mass", "gamma",
}
_INT_KEYS = {"n_points", "max_iter", "qp_e_points", "n_quanta", "n_max", "l_max", "modes"}
_STR_KEYS = {"command", "shells", "valence", "qp_levels", "sigma_kind", "sigma_coefficients"}
_OPT_FLOAT_KEYS = {"r_min"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | _OPT_FLOAT_KEYS


def _coerce(key: str, raw: str, where: str):
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key in _OPT_FLOAT_KEYS:
            return None if raw == "auto" else float(raw)
        return raw
    except ValueError:
        raise ConfigError(f"{where}: cannot parse {key}={raw!r}") from None


def _format_value(value) -> str:
    if value is None:
        return "auto"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_config(text: str, command: str | None = None, overrides=()) -> RunConfig:
    """Build a RunConfig from file text, positional command, and overrides.

    The positional command wins over a `command=` line; overrides win over
    the file.  Unknown keys and malformed lines are rejected with their
    location, and a run without a command from either source cannot
    proceed.
    """
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(
                f"line {lineno}: expected key=value, got {stripped!r}", line=lineno
            )
        key, raw = stripped.split("=", 1)
        key, raw = key.strip(), raw.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}", line=lineno, key=key)
        values[key] = _coerce(key, raw, f"line {lineno}")
    for i, item in enumerate(overrides, start=1):
        if "=" not in item:
            raise ConfigError(f"override {i}: expected key=value, got {item!r}")
        key, raw = item.split("=", 1)
        if key not in _ALL_KEYS:
            raise ConfigError(f"override {i}: unknown key {key!r}", key=key)
        values[key] = _coerce(key, raw, f"override {i}")
    if command:
        values["command"] = command
    if not values.get("command"):
        raise ConfigError("missing command: give one on the CLI or a command= line")
    cfg = RunConfig(**values)
    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command {cfg.command!r}; expected one of {COMMANDS}")
    return cfg


def render_config(cfg: RunConfig) -> str:
    """Canonical key=value text; parse_config(render_config(cfg)) == cfg."""
    return "".join(
        f"{f.name}={_format_value(getattr(cfg, f.name))}\n" for f in fields(cfg)
    )


def parse_shells(spec: str):
    """Occupied-shell notation '1s:2,2s:1' -> ((n, l, occupation), ...)."""
    out = []
    for token in spec.split(","):
        token = token.strip()
        m = re.fullmatch(r"(\d+)([a-z]):(\d+)", token)
        if not m or m.group(2) not in L_LETTERS:
            raise ConfigError(f"bad shell token {token!r}; expected like '2p:3'")
        out.append((int(m.group(1)), L_LETTERS.index(m.group(2)), int(m.group(3))))
    return tuple(out)


def _parse_level(label: str):
    m = re.fullmatch(r"(\d+)([a-z])", label.strip())
    if not m or m.group(2) not in L_LETTERS:
        raise ConfigError(f"bad level label {label!r}; expected like '2s'")
    return int(m.group(1)), L_LETTERS.index(m.group(2))


# ---------------------------------------------------------------------------
# canonical serialization


def _fmt(x) -> str:
    return format(float(x), ".17g")


def canonical_json(obj) -> str:
    """Deterministic JSON: insertion order, 17-significant-digit floats."""
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(k)}: {canonical_json(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(canonical_json(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    return json.dumps(obj)


def config_block(cfg: RunConfig) -> dict:
    """Resolved config as plain data, in declaration order."""
    return {f.name: _format_value(getattr(cfg, f.name)) if getattr(cfg, f.name) is None
            else getattr(cfg, f.name) for f in fields(cfg)}


def _config_comments(cfg: RunConfig) -> str:
    return "".join(
        f"# {f.name}={_format_value(getattr(cfg, f.name))}\n" for f in fields(cfg)
    )


# ---------------------------------------------------------------------------
# commands


def _atom_config(cfg: RunConfig) -> AtomConfig:
    return AtomConfig(
        z=cfg.z,
        shells=parse_shells(cfg.shells),
        grid=GridParams(r_min=cfg.r_min, r_max=cfg.r_max, n_points=cfg.n_points),
        scf=SCFParams(
            max_iter=cfg.max_iter,
            mixing=cfg.mixing,
            tol_energy=cfg.tol_energy,
            tol_orbital=cfg.tol_orbital,
        ),
    )


def _run_scf(cfg: RunConfig) -> str:
    state = scf_solve(_atom_config(cfg))
    doc = {"config": config_block(cfg), "result": state_summary(state)}
    return canonical_json(doc) + "\n"


def _run_pseudo(cfg: RunConfig) -> str:
    if not cfg.valence:
        raise ConfigError("pseudo needs a valence level, e.g. valence=2s")
    state = scf_solve(_atom_config(cfg))
    pseudo = pk_solve(state, _parse_level(cfg.valence))
    doc = {"config": config_block(cfg), "result": pseudo_summary(pseudo)}
    return canonical_json(doc) + "\n"


def _sigma_model(cfg: RunConfig) -> SelfEnergyModel:
    if cfg.sigma_kind == "user_matrix":
        raise ConfigError("sigma_kind=user_matrix is library-only; no file syntax")
    coeffs = tuple(
        float(c) for c in cfg.sigma_coefficients.split(",") if c.strip() != ""
    )
    return SelfEnergyModel(kind=cfg.sigma_kind, shift=cfg.sigma_shift, coefficients=coeffs)


def _run_qp(cfg: RunConfig) -> str:
    try:
        levels = [float(t) for t in cfg.qp_levels.split(",") if t.strip() != ""]
    except ValueError:
        raise ConfigError(f"cannot parse qp_levels={cfg.qp_levels!r}") from None
    if not levels:
        raise ConfigError("qp_levels is empty")
    h = np.diag(levels)
    model = _sigma_model(cfg)
    sigma = None
    if model.kind != "zero":
        sigma = model.matrix_at(h.shape[0], k=0.0)
    energies = np.linspace(cfg.qp_e_min, cfg.qp_e_max, cfg.qp_e_points)
    trace_imag, poles = resolvent_sweep(h, energies, eta=cfg.qp_eta, sigma=sigma)
    mo = mass_operator_eigen(model)
    pq = pair_quantities(mo.delta_m0, cfg.pair_epsilon0, cfg.n_quanta, cfg.pair_constant)

    lines = [_config_comments(cfg)]
    lines.append(f"# delta_m0={_fmt(pq.delta_m0)}\n")
    lines.append(f"# eps_plus={_fmt(pq.eps_plus)}\n")
    lines.append(f"# eps_minus={_fmt(pq.eps_minus)}\n")
    lines.append(f"# gap={_fmt(pq.gap)}\n")
    lines.append(f"# regime={pq.regime}\n")
    lines.append(f"# schrodinger_limit={str(pq.schrodinger_limit).lower()}\n")
    lines.append("E,trace_imag_G,pole_estimates\n")
    pole_set = set(poles)
    for E, t in zip(energies, trace_imag):
        pole_field = _fmt(E) if float(E) in pole_set else ""
        lines.append(f"{_fmt(E)},{_fmt(t)},{pole_field}\n")
    return "".join(lines)


def _run_spectrum(cfg: RunConfig) -> str:
    lines = [_config_comments(cfg)]
    filtered_any = False
    rows = []
    for n in range(1, cfg.n_max + 1):
        for l in range(0, min(cfg.l_max, n - 1) + 1):
            kv = k_values_for_l(l)
            filtered_any = filtered_any or kv.filtered_zero
            for k in kv.values:
                b = boson_energy(SpectrumParams(cfg.mass, cfg.gamma, n, k))
                rows.append(
                    f"{n},{k},{_fmt(cfg.gamma)},{_fmt(b.term2)},"
                    f"{_fmt(b.term4)},{_fmt(b.term6)},{_fmt(b.total)}\n"
                )
    if filtered_any:
        lines.append("# note: k=0 label filtered for l=0 (non-physical)\n")
    lines.append("n,k,gamma,term2,term4,term6,total\n")
    lines.extend(rows)
    return "".join(lines)


def _run_verify(cfg: RunConfig, target: str) -> str:
    if target != "fock":
        raise ConfigError(f"unknown verify target {target!r}; only 'fock' exists")
    tables = anticommutator_table(cfg.modes)
    dev = tables.max_deviation()
    if dev != 0.0:
        raise PolarSCFError(f"anticommutator deviation {dev!r} on {cfg.modes} modes")
    return f"all anticommutators exact (modes={cfg.modes})\n"


def run_command(cfg: RunConfig, target: str = "fock") -> str:
    if cfg.command == "scf":
        return _run_scf(cfg)
    if cfg.command == "pseudo":
        return _run_pseudo(cfg)
    if cfg.command == "qp":
        return _run_qp(cfg)
    if cfg.command == "spectrum":
        return _run_spectrum(cfg)
    return _run_verify(cfg, target)


# ---------------------------------------------------------------------------
# entry point


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="polar-scf",
        description="Atomic mean-field solver with frozen-core, quasiparticle "
        "and boson-level tools.",
    )
    parser.add_argument("command", help=f"one of {', '.join(COMMANDS)}")
    parser.add_argument(
        "args", nargs="*",
        help="key=value overrides; for verify, the target name (fock)",
    )
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--modes", type=int, help="verify: number of fermion modes")
    # intermixed: key=value overrides may come before or after --config/--out
    ns = parser.parse_intermixed_args(argv)

    try:
        target = "fock"
        overrides = []
        for token in ns.args:
            if "=" in token:
                overrides.append(token)
            elif ns.command == "verify":
                target = token
            else:
                raise ConfigError(f"unexpected argument {token!r}")
        text = ""
        if ns.config:
            with open(ns.config, "r", encoding="utf-8") as fh:
                text = fh.read()
        cfg = parse_config(text, command=ns.command, overrides=overrides)
        if ns.modes is not None:
            cfg = replace(cfg, modes=ns.modes)
        payload = run_command(cfg, target)
    except ConvergenceError as exc:
        print(f"polar-scf: not converged: {exc}", file=sys.stderr)
        return 2
    except PolarSCFError as exc:
        print(f"polar-scf: {exc}", file=sys.stderr)
        return 3

    if ns.out:
        with open(ns.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
