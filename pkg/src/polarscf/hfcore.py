"""Self-consistent mean-field engine for spherically averaged atoms.

Everything runs on the logarithmic radial mesh from :mod:`polarscf.radial`.
The moving parts are:

* density assembly split into paired / unpaired radial densities,
* the direct (Hartree) potential of the total electron density,
* nonlocal exchange kernels per angular channel, built from multipole
  Slater potentials and parity-filtered angular weights,
* one symmetric Fock matrix per occupied l-channel, diagonalized in the
  z = sqrt(r)·u coordinates where the mesh measure is flat,
* fixed-point iteration with linear mixing of the mean field, and
* trace bookkeeping that confronts the eigenvalue sum with the matrix
  quadratic form of the same converged operator.

Exchange kernels carry weight q/2 per source shell (exact for closed
shells).  Shells holding an odd electron additionally get a symmetric
rank-two correction pinning the kernel's action on its own orbital to the
monopole self-potential, so a lone electron's direct and exchange terms
cancel at the operator level, not just in expectation values.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.sparse.linalg as spla

from .errors import (
    CapacityError,
    ConsistencyError,
    ConvergenceError,
    ParameterError,
    PreconditionError,
    ShapeError,
)
from .radial import (
    RadialGrid,
    RadialOrbital,
    hydrogenic_orbital,
    integrate,
    kinetic_tridiagonal,
    make_grid,
    u_to_z,
    z_to_u,
)

# The angular coupling table is tabulated exactly for s..f shells.
MAX_COUPLING_L = 3
L_LETTERS = "spdf"

DEFAULT_MAX_ITER = 200
DEFAULT_MIXING = 0.3
DEFAULT_TOL_ENERGY = 1e-8
DEFAULT_TOL_ORBITAL = 1e-6
DEFAULT_R_MAX = 50.0
DEFAULT_N_POINTS = 2000


# ---------------------------------------------------------------------------
# configuration types


@dataclass(frozen=True)
class ShellSpec:
    """One occupied (n, l) shell with an integer electron count."""

    n: int
    l: int
    occupation: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"principal quantum number must be >= 1, got {self.n}")
        if not (0 <= self.l < self.n):
            raise ParameterError(f"need 0 <= l < n, got l={self.l}, n={self.n}")
        if self.occupation < 0:
            raise ParameterError(f"negative occupation {self.occupation} for shell {self.label}")
        if self.occupation == 0:
            raise ParameterError(f"empty shell {self.label} serves no purpose; drop it")
        if self.occupation > 2 * (2 * self.l + 1):
            raise ParameterError(
                f"shell {self.label} holds at most {2 * (2 * self.l + 1)} electrons, "
                f"got {self.occupation}"
            )

    @property
    def label(self) -> str:
        return shell_label(self.n, self.l)


def shell_label(n: int, l: int) -> str:
    if l >= len(L_LETTERS):
        raise CapacityError(f"no letter for l={l}; supported shells are s..f")
    return f"{n}{L_LETTERS[l]}"


@dataclass(frozen=True)
class GridParams:
    r_min: float | None = None  # None -> 1e-6 / Z
    r_max: float = DEFAULT_R_MAX
    n_points: int = DEFAULT_N_POINTS


@dataclass(frozen=True)
class SCFParams:
    max_iter: int = DEFAULT_MAX_ITER
    mixing: float = DEFAULT_MIXING
    tol_energy: float = DEFAULT_TOL_ENERGY
    tol_orbital: float = DEFAULT_TOL_ORBITAL

    def __post_init__(self):
        if not (0.0 < self.mixing <= 1.0):
            raise ParameterError(f"mixing factor must lie in (0, 1], got {self.mixing}")
        if self.max_iter < 1:
            raise ParameterError(f"max_iter must be positive, got {self.max_iter}")
        if self.tol_energy <= 0 or self.tol_orbital <= 0:
            raise ParameterError("convergence tolerances must be positive")


@dataclass(frozen=True)
class AtomConfig:
    z: float
    shells: tuple[ShellSpec, ...]
    grid: GridParams = GridParams()
    scf: SCFParams = SCFParams()

    def __post_init__(self):
        if self.z <= 0:
            raise ParameterError(f"nuclear charge must be positive, got {self.z}")
        if not self.shells:
            raise ParameterError("at least one occupied shell is required")
        shells = tuple(
            s if isinstance(s, ShellSpec) else ShellSpec(*s) for s in self.shells
        )
        object.__setattr__(self, "shells", shells)
        seen = set()
        for s in shells:
            if (s.n, s.l) in seen:
                raise ParameterError(f"shell {s.label} listed twice")
            seen.add((s.n, s.l))

    @property
    def electron_count(self) -> int:
        return sum(s.occupation for s in self.shells)

    def resolved_grid(self) -> RadialGrid:
        r_min = self.grid.r_min if self.grid.r_min is not None else 1e-6 / self.z
        return make_grid(r_min, self.grid.r_max, self.grid.n_points)


# ---------------------------------------------------------------------------
# angular coupling weights


def _threej000_squared(l1: int, L: int, l2: int) -> float:
    """Squared (l1 L l2; 0 0 0) coupling symbol, exact rational arithmetic."""
    J = l1 + L + l2
    if J % 2 == 1:
        return 0.0
    if not (abs(l1 - l2) <= L <= l1 + l2):
        return 0.0
    g = J // 2
    pref = Fraction(
        math.factorial(J - 2 * l1) * math.factorial(J - 2 * L) * math.factorial(J - 2 * l2),
        math.factorial(J + 1),
    )
    binom = Fraction(
        math.factorial(g),
        math.factorial(g - l1) * math.factorial(g - L) * math.factorial(g - l2),
    )
    return float(pref * binom * binom)


def angular_weight(l_target: int, L: int, l_source: int) -> float:
    """Multipole weight of the exchange coupling between two l-channels."""
    if l_target < 0 or l_source < 0 or L < 0:
        raise ParameterError("angular momenta must be nonnegative")
    if l_target > MAX_COUPLING_L or l_source > MAX_COUPLING_L:
        raise CapacityError(
            f"angular coupling table covers l <= {MAX_COUPLING_L}, "
            f"got ({l_target}, {l_source})"
        )
    return _threej000_squared(l_target, L, l_source)


def _multipoles(l_target: int, l_source: int):
    """Multipole orders with nonzero weight (parity + triangle filtered)."""
    lo, hi = abs(l_target - l_source), l_target + l_source
    return [L for L in range(lo, hi + 1) if (l_target + L + l_source) % 2 == 0]


# ---------------------------------------------------------------------------
# Slater potentials (radial Poisson-like transforms)


def slater_potential(f, L: int, g: RadialGrid):
    """Potential of the radial source f for multipole order L.

    Returns V(r) = r^{-(L+1)} ∫_0^r f s^L ds + r^L ∫_r^∞ f s^{-(L+1)} ds,
    in hartree for a density-like f (integral of f = enclosed charge).
    Running integrals use the trapezoid rule in the log variable; the inner
    tail below r_min is closed with the leading r² power of physical radial
    densities.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != g.points.shape:
        raise ShapeError(f"source has shape {f.shape}, grid has {g.points.shape}")
    r = g.points
    h = g.log_step
    # ds = s dx on the log mesh
    inner = f * r ** (L + 1)
    outer = f * r ** (-L) if L else f.copy()
    A = np.empty_like(f)
    A[0] = f[0] * r[0] ** (L + 1) / (L + 3)
    np.cumsum(0.5 * h * (inner[1:] + inner[:-1]), out=A[1:])
    A[1:] += A[0]
    Q = np.concatenate(([0.0], np.cumsum(0.5 * h * (outer[1:] + outer[:-1]))))
    B = Q[-1] - Q
    return A * r ** (-(L + 1)) + B * r**L


# ---------------------------------------------------------------------------
# density


@dataclass(frozen=True)
class DensityMatrix:
    """Radial density split into paired and unpaired parts.

    `diagonal` is the paired ("pair") radial density Σ_b floor(q_b/2)·u_b²,
    integrating to the pair count; `unpaired` holds the leftover odd
    electrons.  `offdiag` optionally carries the dense per-channel kernel
    Σ_b floor(q_b/2)·u_b(r)u_b(r'), symmetric by construction.
    """

    diagonal: np.ndarray
    unpaired: np.ndarray
    pair_count: int
    offdiag: dict | None = None

    def total(self):
        return 2.0 * self.diagonal + self.unpaired


def build_density(orbitals, g: RadialGrid, include_offdiagonal: bool = False) -> DensityMatrix:
    """Assemble the radial density from occupied orbitals.

    Each orbital must be normalized on g; its `occupation` counts electrons.
    """
    diag = np.zeros(g.N)
    unpaired = np.zeros(g.N)
    offdiag: dict[int, np.ndarray] = {}
    pairs = 0
    for o in orbitals:
        nrm = integrate(o.u * o.u, g)
        if abs(nrm - 1.0) > 1e-6:
            raise PreconditionError(
                f"orbital {shell_label(o.n, o.l)} is not normalized: <u|u> = {nrm!r}"
            )
        q = int(round(o.occupation))
        p = q // 2
        pairs += p
        diag += p * o.u**2
        unpaired += (q - 2 * p) * o.u**2
        if include_offdiagonal and p:
            block = offdiag.setdefault(o.l, np.zeros((g.N, g.N)))
            block += p * np.outer(o.u, o.u)
    return DensityMatrix(
        diagonal=diag,
        unpaired=unpaired,
        pair_count=pairs,
        offdiag=offdiag if include_offdiagonal else None,
    )


def hartree_potential(rho, g: RadialGrid):
    """Direct electrostatic potential of the electron density (hartree).

    Accepts a DensityMatrix (pair part enters twice, once per electron of
    each pair, plus the unpaired remainder) or a plain sampled density.
    r·V tends to the enclosed electron charge at large r.
    """
    if isinstance(rho, DensityMatrix):
        source = rho.total()
    else:
        source = np.asarray(rho, dtype=float)
    if source.shape != g.points.shape:
        raise ShapeError(f"density has shape {source.shape}, grid has {g.points.shape}")
    return slater_potential(source, 0, g)


def weighted_trace(rho, op) -> float:
    """Trace of rho·op for dense matrices (density-matrix averaging)."""
    rho = np.asarray(rho)
    op = np.asarray(op)
    if rho.shape != op.shape or rho.ndim != 2:
        raise ShapeError(f"incompatible shapes {rho.shape} and {op.shape}")
    return float(np.einsum("ij,ji->", rho, op))


# ---------------------------------------------------------------------------
# exchange kernels


class _Workspace:
    """Per-solve cache of the N×N multipole kernel factors."""

    def __init__(self, g: RadialGrid):
        self.g = g
        r = g.points
        self.r_lo = np.minimum.outer(r, r)
        self.r_hi = np.maximum.outer(r, r)
        self._kernels: dict[int, np.ndarray] = {}

    def kernel(self, L: int):
        if L not in self._kernels:
            self._kernels[L] = self.r_lo**L / self.r_hi ** (L + 1)
        return self._kernels[L]


def _pair_weights(q_a: int, l_a: int, q_b: int, l_b: int) -> float:
    """Same-spin pairing count between two shells for the exchange energy."""
    w_a = min(q_a, 2 * l_a + 1)
    w_b = min(q_b, 2 * l_b + 1)
    return w_a * w_b + (q_a - w_a) * (q_b - w_b)


def _exchange_z_matrix(channel_l, sources, g: RadialGrid, ws: _Workspace | None = None):
    """Symmetric z-space exchange matrix for one angular channel.

    sources: iterable of (u, l, q) for the occupied shells feeding the
    kernel.  Weight q/2 per source reproduces the closed-shell operator;
    odd shells get the rank-two self-action correction described in the
    module docstring.
    """
    if channel_l > MAX_COUPLING_L:
        raise CapacityError(
            f"angular coupling table covers l <= {MAX_COUPLING_L}, got {channel_l}"
        )
    if ws is None:
        ws = _Workspace(g)
    h = g.log_step
    e = g.weights / (h * g.points)  # end-corrected quadrature factors
    X = np.zeros((g.N, g.N))
    for u_b, l_b, q_b in sources:
        if l_b > MAX_COUPLING_L:
            raise CapacityError(
                f"angular coupling table covers l <= {MAX_COUPLING_L}, got {l_b}"
            )
        kacc = None
        for L in _multipoles(channel_l, l_b):
            lam = angular_weight(channel_l, L, l_b)
            if lam == 0.0:
                continue
            term = lam * ws.kernel(L)
            kacc = term if kacc is None else kacc + term
        if kacc is None:
            continue
        z_b = u_to_z(u_b, g)
        M = (h * np.outer(z_b, z_b)) * kacc
        M = 0.5 * (M * e[None, :] + e[:, None] * M)
        X += (0.5 * q_b) * M
        if q_b % 2 == 1 and l_b == channel_l:
            # Pin the kernel's action on its own orbital: for q=1 the target
            # is the bare monopole self-potential (so direct and exchange
            # cancel exactly); for odd q>=3 it is the energy-consistent
            # diagonal weight.
            base_action = (0.5 * q_b) * (M @ z_b)
            if q_b == 1:
                t = slater_potential(u_b * u_b, 0, g) * z_b
            else:
                s_bb = _pair_weights(q_b, l_b, q_b, l_b)
                t = (s_bb / q_b) * (M @ z_b)
            d = t - base_action
            znorm = float(np.linalg.norm(z_b))
            zh = z_b / znorm
            dh = d / znorm
            rho = dh - 0.5 * zh * float(zh @ dh)
            X += np.outer(rho, zh) + np.outer(zh, rho)
    return X


def exchange_apply(orbitals, target: RadialOrbital, g: RadialGrid):
    """Apply the nonlocal exchange of the occupied orbitals to a target."""
    if np.asarray(target.u).shape != g.points.shape:
        raise ShapeError("target orbital is not sampled on the given grid")
    sources = [(o.u, o.l, int(round(o.occupation))) for o in orbitals]
    X = _exchange_z_matrix(target.l, sources, g)
    return z_to_u(X @ u_to_z(target.u, g), g)


# ---------------------------------------------------------------------------
# energy bookkeeping


def _coulomb_integral(fa, fb, L, g, ws=None):
    return integrate(fa * slater_potential(fb, L, g), g)


def _tridiag_apply(diag, off, z):
    out = diag * z
    out[:-1] += off * z[1:]
    out[1:] += off * z[:-1]
    return out


def _kinetic_expectation(u, l, g: RadialGrid) -> float:
    z = u_to_z(u, g)
    diag, off = kinetic_tridiagonal(g, l)
    he = g.weights / g.points
    return float(np.sum(he * z * _tridiag_apply(diag, off, z)))


def _total_energy(z_nuc, shells, g: RadialGrid) -> float:
    """Mean-field total energy of the current orbital set.

    shells: list of dicts with u, l, q.  Direct term pairs all electrons;
    the exchange term weights each shell pair by its same-spin count, with
    the bare monopole for a lone electron's self term so one-electron
    systems reduce exactly to the bare Hamiltonian.
    """
    E = 0.0
    for s in shells:
        h_b = _kinetic_expectation(s["u"], s["l"], g) + integrate(
            -z_nuc / g.points * s["u"] ** 2, g
        )
        E += s["q"] * h_b
    for a in shells:
        for b in shells:
            F0 = _coulomb_integral(a["u"] ** 2, b["u"] ** 2, 0, g)
            E += 0.5 * a["q"] * b["q"] * F0
    for a in shells:
        for b in shells:
            s_ab = _pair_weights(a["q"], a["l"], b["q"], b["l"])
            if s_ab == 0:
                continue
            if a is b and a["q"] == 1:
                E -= 0.5 * _coulomb_integral(a["u"] ** 2, a["u"] ** 2, 0, g)
                continue
            acc = 0.0
            for L in _multipoles(a["l"], b["l"]):
                lam = angular_weight(a["l"], L, b["l"])
                if lam == 0.0:
                    continue
                cross = a["u"] * b["u"]
                acc += lam * _coulomb_integral(cross, cross, L, g)
            E -= 0.5 * s_ab * acc
    return E


# ---------------------------------------------------------------------------
# SCF state


@dataclass
class SCFState:
    """Converged (or abandoned) mean-field solution.

    epsilon0 is the eigenvalue offset constant of the trace relation; the
    plain SCF works in the gauge where it is exactly zero, and downstream
    quasiparticle bookkeeping may carry a nonzero value.
    """

    z: float
    orbitals: list
    eigenvalues: list
    total_energy: float
    converged: bool
    iterations: int
    grid: RadialGrid
    config: AtomConfig
    epsilon0: float = 0.0
    _vsc: np.ndarray = field(default=None, repr=False)
    _xz: dict = field(default_factory=dict, repr=False)
    _token: str = field(default="", repr=False)

    def channel_matrix(self, l: int):
        """Dense z-space Fock matrix of one angular channel.

        Occupied channels return the exact operator whose eigenvectors are
        the stored orbitals; other channels are assembled on demand from the
        converged field.
        """
        self._check_token()
        diag, off = kinetic_tridiagonal(self.grid, l)
        C = np.zeros((self.grid.N, self.grid.N))
        idx = np.arange(self.grid.N)
        C[idx, idx] = diag + (-self.z / self.grid.points + self._vsc)
        C[idx[:-1], idx[1:]] += off
        C[idx[1:], idx[:-1]] += off
        if l in self._xz:
            C -= self._xz[l]
        else:
            sources = [
                (o.u, o.l, int(round(o.occupation))) for o in self.orbitals
            ]
            C -= _exchange_z_matrix(l, sources, self.grid)
        return C

    def _check_token(self):
        if self._token and _orbital_token(self.orbitals, self._vsc) != self._token:
            raise ConsistencyError(
                "SCF state caches are stale: orbitals or fields were modified "
                "after the solve"
            )


def _orbital_token(orbitals, vsc) -> str:
    hsh = hashlib.sha256()
    for o in orbitals:
        hsh.update(np.ascontiguousarray(o.u).tobytes())
    if vsc is not None:
        hsh.update(np.ascontiguousarray(vsc).tobytes())
    return hsh.hexdigest()


def fock_apply(state: SCFState, target: RadialOrbital):
    """Apply the converged Fock operator (kinetic − Z/r + field) to a target."""
    g = state.grid
    if np.asarray(target.u).shape != g.points.shape:
        raise ShapeError("target orbital is not sampled on the state's grid")
    C = state.channel_matrix(target.l)
    return z_to_u(C @ u_to_z(target.u, g), g)


def trace_energy(state: SCFState):
    """Eigenvalue sum vs. density-matrix trace of the same operator.

    Returns (sum_eigen, trace_lhs) over the paired orbitals: the first from
    the solver's eigenvalues, the second from the matrix quadratic form.
    Equal up to the epsilon0·N offset convention (zero in the SCF gauge).
    """
    if not state.converged:
        raise PreconditionError("trace_energy needs a converged SCF state")
    state._check_token()
    g = state.grid
    he = g.weights / g.points
    sum_eigen = 0.0
    trace_lhs = 0.0
    for o, eps in zip(state.orbitals, state.eigenvalues):
        pairs = int(round(o.occupation)) // 2
        if pairs == 0:
            continue
        sum_eigen += pairs * (eps + state.epsilon0)
        C = state.channel_matrix(o.l)
        z = u_to_z(o.u, g)
        trace_lhs += pairs * float(np.sum(he * z * (C @ z)))
    return sum_eigen, trace_lhs


# ---------------------------------------------------------------------------
# the SCF loop


def _solve_channel(C, count, z_nuc, N):
    """Lowest eigenpairs of a dense symmetric z-space Fock matrix.

    Shift-invert with a shift provably below the spectrum; the fixed start
    vector keeps ARPACK bit-reproducible across runs.
    """
    k = count + 2
    sigma = -(0.5 * z_nuc**2 + 2.0)
    v0 = np.ones(N)
    vals, vecs = spla.eigsh(C, k=k, sigma=sigma, which="LM", v0=v0)
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


def scf_solve(cfg: AtomConfig) -> SCFState:
    """Self-consistent solve of the mean-field equations for one atom.

    Fixed point of: build density → build direct/exchange field →
    diagonalize each occupied l-channel → reoccupy in eigenvalue order →
    linear field mixing.  Raises ConvergenceError (with the iteration
    trace attached) if max_iter passes without meeting both tolerances.
    """
    g = cfg.resolved_grid()
    ws = _Workspace(g)
    channels: dict[int, list[ShellSpec]] = {}
    for s in sorted(cfg.shells, key=lambda s: (s.l, s.n)):
        channels.setdefault(s.l, []).append(s)

    # bare-nucleus starting guess
    shells = []
    for s in cfg.shells:
        o = hydrogenic_orbital(cfg.z, s.n, s.l, g)
        shells.append({"n": s.n, "l": s.l, "q": s.occupation, "u": o.u})

    diag_kin = {l: kinetic_tridiagonal(g, l) for l in channels}
    idx = np.arange(g.N)
    vsc_mix = None
    xz_mix: dict[int, np.ndarray] = {}
    E_prev = None
    prev_u = {((s["n"], s["l"])): s["u"] for s in shells}
    trace = []
    alpha = cfg.scf.mixing
    converged = False
    iterations = 0

    for it in range(1, cfg.scf.max_iter + 1):
        iterations = it
        total = np.zeros(g.N)
        for s in shells:
            total += s["q"] * s["u"] ** 2
        vsc_new = slater_potential(total, 0, g)
        sources = [(s["u"], s["l"], s["q"]) for s in shells]
        xz_new = {l: _exchange_z_matrix(l, sources, g, ws) for l in channels}
        if vsc_mix is None:
            vsc_mix = vsc_new
            xz_mix = xz_new
        else:
            vsc_mix = (1.0 - alpha) * vsc_mix + alpha * vsc_new
            xz_mix = {
                l: (1.0 - alpha) * xz_mix[l] + alpha * xz_new[l] for l in channels
            }

        eig_by_shell = {}
        new_u = {}
        for l, ch_shells in channels.items():
            diag, off = diag_kin[l]
            C = np.zeros((g.N, g.N))
            C[idx, idx] = diag + (-cfg.z / g.points + vsc_mix)
            C[idx[:-1], idx[1:]] += off
            C[idx[1:], idx[:-1]] += off
            C -= xz_mix[l]
            vals, vecs = _solve_channel(C, len(ch_shells), cfg.z, g.N)
            for rank, s in enumerate(ch_shells):
                z = vecs[:, rank]
                if z[np.argmax(np.abs(z))] < 0:
                    z = -z
                u = z_to_u(z, g)
                u = u / math.sqrt(integrate(u * u, g))
                eig_by_shell[(s.n, s.l)] = float(vals[rank])
                new_u[(s.n, s.l)] = u

        delta_u = 0.0
        for s in shells:
            key = (s["n"], s["l"])
            delta_u = max(delta_u, float(np.max(np.abs(new_u[key] - prev_u[key]))))
            s["u"] = new_u[key]
        prev_u = new_u

        E_new = _total_energy(cfg.z, shells, g)
        delta_E = abs(E_new - E_prev) if E_prev is not None else float("inf")
        trace.append(
            {
                "iteration": it,
                "total_energy": E_new,
                "delta_energy": delta_E if math.isfinite(delta_E) else None,
                "max_orbital_delta": delta_u,
            }
        )
        E_prev = E_new
        if delta_E < cfg.scf.tol_energy and delta_u < cfg.scf.tol_orbital:
            converged = True
            break

    if not converged:
        raise ConvergenceError(
            f"SCF did not converge within {cfg.scf.max_iter} iterations "
            f"(last dE = {trace[-1]['delta_energy']!r}, "
            f"last du = {trace[-1]['max_orbital_delta']:.3e})",
            trace=trace,
        )

    orbitals = []
    eigenvalues = []
    for l, ch_shells in sorted(channels.items()):
        for s in ch_shells:
            key = (s.n, s.l)
            orbitals.append(
                RadialOrbital(
                    u=prev_u[key], n=s.n, l=s.l, spin="paired", occupation=s.occupation
                )
            )
            eigenvalues.append(eig_by_shell[key])

    state = SCFState(
        z=cfg.z,
        orbitals=orbitals,
        eigenvalues=eigenvalues,
        total_energy=E_prev,
        converged=True,
        iterations=iterations,
        grid=g,
        config=cfg,
        _vsc=vsc_mix,
        _xz=xz_mix,
    )
    state._token = _orbital_token(orbitals, vsc_mix)
    return state


def state_summary(state: SCFState) -> dict:
    """Plain-data summary of a solve, in the stable field order."""
    return {
        "z": state.z,
        "shells": [
            f"{shell_label(o.n, o.l)}:{int(round(o.occupation))}"
            for o in state.orbitals
        ],
        "eigenvalues_hartree": [float(e) for e in state.eigenvalues],
        "total_energy_hartree": float(state.total_energy),
        "iterations": state.iterations,
        "converged": state.converged,
    }
