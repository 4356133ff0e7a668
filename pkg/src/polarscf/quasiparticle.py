"""Finite-basis quasiparticle layer: projectors, resolvents, pair gaps.

Everything here works on small dense matrices (basis dimension a few
hundred at most).  The pieces chain together: a hermitian single-particle
matrix yields a free resolvent, a self-energy model dresses it through the
Dyson equation, the even part of the self-energy's momentum dependence
gives the mass-operator shift ΔM(k), and ΔM(0) finally feeds the two-level
pair quantities whose half-splitting is the pairing gap.

Sign bookkeeping for the mass operator: the sampled self-energy eigenvalue
f(k) carries the shift with a minus sign, f(k) = −(ΔM(0) + ΔM(k)) with
ΔM(0) the k-independent part.  So ΔM(0) = −f(0) and the k-dependent
remainder is symmetrized explicitly; any odd component is surfaced, never
silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ParameterError,
    ShapeError,
    SingularityError,
    SymmetryViolationError,
)

DEFAULT_ETA = 1e-6
DEFAULT_BORN_TERMS = 30
DEFAULT_K_SAMPLES = 129
LIGHT_THRESHOLD = 1e-3
HEAVY_THRESHOLD = 1.0
GAP_TOLERANCE = 1e-12

SELF_ENERGY_KINDS = ("zero", "constant_shift", "diagonal_polynomial", "user_matrix")


@dataclass(frozen=True)
class ProjectorRho:
    """Rank-one density operator |m⟩⟨n| between basis states."""

    matrix: np.ndarray

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))


def projector(m_state, n_state=None) -> ProjectorRho:
    """Outer product |m⟩⟨n| (or |m⟩⟨m| when n is omitted).

    States are expected normalized; a numerically zero vector has no
    direction to project onto and is rejected.
    """
    m = np.asarray(m_state, dtype=complex)
    n = m if n_state is None else np.asarray(n_state, dtype=complex)
    if m.ndim != 1 or n.ndim != 1 or m.shape != n.shape:
        raise ShapeError("projector states must be vectors of equal length")
    for v in (m, n):
        if np.linalg.norm(v) < 1e-14:
            raise ParameterError("zero-norm state has no projector")
    return ProjectorRho(matrix=np.outer(m, n.conj()))


# ---------------------------------------------------------------------------
# resolvents


@dataclass(frozen=True)
class GreenValue:
    """Resolvent matrix G(E + iη) of a hermitian operator."""

    energy: float
    eta: float
    matrix: np.ndarray


def _check_hermitian(h, what: str):
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ShapeError(f"{what} must be a square matrix")
    scale = max(1.0, float(np.max(np.abs(h))))
    dev = float(np.max(np.abs(h - h.conj().T)))
    if dev > 1e-10 * scale:
        raise SymmetryViolationError(f"{what} is not hermitian", asymmetry=dev)
    return h


def green0(h, energy: float, eta: float = DEFAULT_ETA) -> GreenValue:
    """Free resolvent ((E + iη)I − h)⁻¹.

    η < 0 is rejected outright.  η = 0 is allowed on the real axis as long
    as E is not an eigenvalue; hitting one there is a genuine pole.
    """
    h = _check_hermitian(h, "hamiltonian")
    if eta < 0.0:
        raise ParameterError(f"broadening eta must be non-negative, got {eta}")
    dim = h.shape[0]
    if eta == 0.0:
        eigs = np.linalg.eigvalsh(h)
        scale = max(1.0, float(np.max(np.abs(eigs))))
        if np.min(np.abs(energy - eigs)) < 1e-12 * scale:
            raise SingularityError(
                f"resolvent pole: E={energy} lies on the spectrum with eta=0"
            )
    A = (energy + 1j * eta) * np.eye(dim) - h
    try:
        G = np.linalg.solve(A, np.eye(dim, dtype=complex))
    except np.linalg.LinAlgError as exc:
        raise SingularityError(f"resolvent solve failed at E={energy}") from exc
    return GreenValue(energy=float(energy), eta=float(eta), matrix=G)


def dyson_solve(g0: GreenValue, sigma) -> GreenValue:
    """Dressed resolvent from the closed Dyson form (G₀⁻¹ − Σ)⁻¹."""
    sigma = np.asarray(sigma, dtype=complex)
    if sigma.shape != g0.matrix.shape:
        raise ShapeError("self-energy shape does not match the resolvent")
    try:
        g0_inv = np.linalg.inv(g0.matrix)
        G = np.linalg.inv(g0_inv - sigma)
    except np.linalg.LinAlgError as exc:
        raise SingularityError("Dyson inversion hit a singular matrix") from exc
    return GreenValue(energy=g0.energy, eta=g0.eta, matrix=G)


def dyson_born(g0: GreenValue, sigma, terms: int = DEFAULT_BORN_TERMS) -> GreenValue:
    """Born-series resolvent Σ_j (G₀Σ)ʲ G₀, the independent route to Dyson.

    Converges only for spectral radius ρ(G₀Σ) < 1; the caller owns that
    judgement, this routine just sums the requested number of terms.
    """
    sigma = np.asarray(sigma, dtype=complex)
    if sigma.shape != g0.matrix.shape:
        raise ShapeError("self-energy shape does not match the resolvent")
    if terms < 1:
        raise ParameterError("Born series needs at least one term")
    acc = g0.matrix.copy()
    term = g0.matrix.copy()
    step = g0.matrix @ sigma
    for _ in range(terms - 1):
        term = step @ term
        acc += term
    return GreenValue(energy=g0.energy, eta=g0.eta, matrix=acc)


# ---------------------------------------------------------------------------
# self-energy models and the mass operator


@dataclass(frozen=True)
class SelfEnergyModel:
    """Self-energy Σ in one of four shapes.

    kind:
      zero                 no interaction correction
      constant_shift       c·I with c = `shift`
      diagonal_polynomial  p(k)·I with p given by `coefficients` (powers of
                           k, ascending); odd powers are rejected because a
                           mass operator must be even in k
      user_matrix          an explicit hermitian matrix, constant in k
    """

    kind: str
    shift: float = 0.0
    coefficients: tuple = ()
    matrix: np.ndarray | None = field(default=None)

    def __post_init__(self):
        if self.kind not in SELF_ENERGY_KINDS:
            raise ParameterError(
                f"unknown self-energy kind {self.kind!r}; expected one of "
                f"{SELF_ENERGY_KINDS}"
            )
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        if self.kind == "diagonal_polynomial":
            for p, c in enumerate(self.coefficients):
                if p % 2 == 1 and c != 0.0:
                    raise ParameterError(
                        f"odd power k^{p} breaks mass-operator evenness"
                    )
        if self.kind == "user_matrix":
            if self.matrix is None:
                raise ParameterError("user_matrix kind needs an explicit matrix")
            m = np.asarray(self.matrix, dtype=complex)
            _check_hermitian(m, "user self-energy matrix")
            object.__setattr__(self, "matrix", m)

    def eigenvalue_at(self, k: float) -> float:
        """Scalar eigenvalue branch f(k) of the model."""
        if self.kind == "zero":
            return 0.0
        if self.kind == "constant_shift":
            return self.shift
        if self.kind == "diagonal_polynomial":
            total = 0.0
            for c in reversed(self.coefficients):
                total = total * k + c
            return total
        return float(np.min(np.linalg.eigvalsh(self.matrix)))

    def matrix_at(self, dim: int, k: float = 0.0) -> np.ndarray:
        """Dense Σ for a basis of the given dimension."""
        if self.kind == "user_matrix":
            if self.matrix.shape[0] != dim:
                raise ShapeError(
                    f"user matrix is {self.matrix.shape[0]}-dimensional, "
                    f"basis is {dim}"
                )
            return self.matrix
        if self.kind == "zero":
            return np.zeros((dim, dim), dtype=complex)
        return self.eigenvalue_at(k) * np.eye(dim, dtype=complex)


DEFAULT_K_GRID = np.linspace(-2.0, 2.0, DEFAULT_K_SAMPLES)


@dataclass(frozen=True)
class MassOperatorResult:
    """k-resolved mass-operator shift split into ΔM(0) and even remainder."""

    delta_m0: float
    k_samples: np.ndarray
    delta_m: np.ndarray
    asymmetry: float
    curvature: float


def _symmetric_grid(k_samples):
    k = np.asarray(k_samples, dtype=float)
    if k.ndim != 1 or k.size < 3 or k.size % 2 == 0:
        raise ParameterError("k grid must be a 1-d array of odd length >= 3")
    if np.any(np.diff(k) <= 0):
        raise ParameterError("k grid must be strictly increasing")
    if np.max(np.abs(k + k[::-1])) > 1e-12:
        raise ParameterError("k grid must be symmetric about k = 0")
    return k


def mass_operator_eigen(sigma, k_samples=None) -> MassOperatorResult:
    """Extract ΔM(0) and the even shift ΔM(k) from a self-energy branch.

    `sigma` is either a SelfEnergyModel or a pre-diagonalized sequence of
    eigenvalue samples f(k_i) aligned with the grid.  The samples stand for
    −(ΔM(0) + ΔM(k)); the remainder after removing −f(0) is forced even by
    symmetrization, and for user-supplied samples an odd part beyond 1e-8
    is an error rather than something to paper over.
    """
    k = _symmetric_grid(DEFAULT_K_GRID if k_samples is None else k_samples)
    user_samples = not isinstance(sigma, SelfEnergyModel)
    if user_samples:
        f = np.asarray(sigma, dtype=float)
        if f.shape != k.shape:
            raise ShapeError("self-energy samples do not line up with the k grid")
    else:
        f = np.array([sigma.eigenvalue_at(ki) for ki in k])

    mid = k.size // 2
    delta_m0 = -f[mid]
    remainder = -f - delta_m0
    delta_m = 0.5 * (remainder + remainder[::-1])
    asymmetry = 0.5 * float(np.max(np.abs(remainder - remainder[::-1])))
    if user_samples and asymmetry > 1e-8:
        raise SymmetryViolationError(
            f"self-energy samples have odd component {asymmetry:.3e} "
            "(> 1e-8); a mass operator must be even in k",
            asymmetry=asymmetry,
        )
    dk = k[mid + 1] - k[mid]
    curvature = float(delta_m[mid + 1] - 2.0 * delta_m[mid] + delta_m[mid - 1]) / dk**2
    return MassOperatorResult(
        delta_m0=float(delta_m0),
        k_samples=k,
        delta_m=delta_m,
        asymmetry=asymmetry,
        curvature=curvature,
    )


# ---------------------------------------------------------------------------
# pair quantities


@dataclass(frozen=True)
class PairQuantities:
    """Two-branch pair levels and their half-splitting gap."""

    delta_m0: float
    extremum: float
    extremum_tilde: float
    eps_plus: float
    eps_minus: float
    gap: float
    regime: str
    schrodinger_limit: bool


def pair_quantities(
    delta_m0: float,
    epsilon0: float,
    n_quanta: int,
    constant: float = 0.0,
) -> PairQuantities:
    """Pair extremum, branch energies and gap from the mass-operator shift.

    The gap is computed as (ε₊ − ε₋)/2 — from the branches, not from the
    algebraic shortcut −ΔM(0)/2 — so the identity between the two is a
    checkable consequence rather than a definition.
    """
    if n_quanta < 1:
        raise ParameterError(f"pair quantum number must be >= 1, got {n_quanta}")
    extremum = (delta_m0 + epsilon0) * n_quanta
    extremum_tilde = extremum - constant
    eps_plus = (extremum_tilde - delta_m0) / 2.0
    eps_minus = (extremum_tilde + delta_m0) / 2.0
    gap = (eps_plus - eps_minus) / 2.0
    if abs(delta_m0) < LIGHT_THRESHOLD and abs(gap) < LIGHT_THRESHOLD:
        regime = "light"
    elif delta_m0 >= HEAVY_THRESHOLD:
        regime = "heavy"
    else:
        regime = "indeterminate"
    return PairQuantities(
        delta_m0=float(delta_m0),
        extremum=float(extremum),
        extremum_tilde=float(extremum_tilde),
        eps_plus=float(eps_plus),
        eps_minus=float(eps_minus),
        gap=float(gap),
        regime=regime,
        schrodinger_limit=bool(abs(gap) < GAP_TOLERANCE),
    )


# ---------------------------------------------------------------------------
# spectral sweep (feeds the CSV report)


def resolvent_sweep(h, energies, eta: float = DEFAULT_ETA, sigma=None):
    """Im Tr G along an energy grid, with pole estimates at the dips.

    Returns (trace_imag, pole_estimates): the imaginary trace per energy,
    and the energies of its strict local minima — with broadening η the
    trace dips to −(something)/η at each spectral point.
    """
    energies = np.asarray(energies, dtype=float)
    trace_imag = np.empty(energies.size)
    for i, E in enumerate(energies):
        G = green0(h, float(E), eta)
        if sigma is not None:
            G = dyson_solve(G, sigma)
        trace_imag[i] = float(np.trace(G.matrix).imag)
    poles = []
    for i in range(1, energies.size - 1):
        if trace_imag[i] < trace_imag[i - 1] and trace_imag[i] < trace_imag[i + 1]:
            poles.append(float(energies[i]))
    return trace_imag, poles
