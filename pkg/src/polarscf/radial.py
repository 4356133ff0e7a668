"""Logarithmic radial mesh, quadrature, analytic hydrogen-like orbitals and
the kinetic-energy stencil in the log variable.

Conventions (Hartree atomic units): orbitals are stored as the reduced radial
function u(r) = r*R(r); all integrals are plain sums against the grid weights.
The mesh is geometric, r_i = r_min * ratio^i, so the log variable x = ln r is
uniform with step h and trapezoid weights become w_i = h * r_i (half at the
ends).  The first weight carries an extra inner-tail patch r_min covering
[0, r_min] for integrands finite at the origin.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import eval_genlaguerre

from .errors import CapacityError, ParameterError, ShapeError

MIN_SOLVER_POINTS = 16


@dataclass(frozen=True)
class RadialGrid:
    points: np.ndarray
    weights: np.ndarray
    spacing: float  # geometric ratio r_{i+1}/r_i
    log_step: float = field(repr=False, default=0.0)

    def __post_init__(self):
        r = self.points
        if r.ndim != 1 or len(r) < 2:
            raise ParameterError("grid needs at least 2 increasing points")
        if r[0] <= 0.0 or np.any(np.diff(r) <= 0.0):
            raise ParameterError("grid points must be positive and strictly increasing")
        ratios = r[1:] / r[:-1]
        if np.max(np.abs(ratios - self.spacing)) > 1e-12 * self.spacing:
            raise ParameterError("grid is not geometric (ratio drift exceeds 1e-12)")
        if np.any(self.weights <= 0.0):
            raise ParameterError("quadrature weights must be positive")

    @property
    def N(self):
        return len(self.points)

    @property
    def r_min(self):
        return float(self.points[0])

    @property
    def r_max(self):
        return float(self.points[-1])


def make_grid(r_min: float, r_max: float, N: int) -> RadialGrid:
    """Geometric mesh on [r_min, r_max] with trapezoid-in-log weights.

    Parameters
    ----------
    r_min, r_max : float
        Positive interval bounds in bohr, r_min < r_max.
    N : int
        Point count (>= 2; the SCF / kinetic path additionally requires
        N >= 16 and raises its own capacity error below that).
    """
    if not (0.0 < r_min < r_max):
        raise ParameterError(f"need 0 < r_min < r_max, got ({r_min}, {r_max})")
    if N < 2:
        raise ParameterError(f"need N >= 2 grid points, got {N}")
    h = math.log(r_max / r_min) / (N - 1)
    r = r_min * np.exp(h * np.arange(N))
    r[-1] = r_max  # exact endpoint
    w = h * r.copy()
    if N >= 4:
        # Gregory end correction (second order): kills the h^2 Euler-Maclaurin
        # boundary term of the plain trapezoid, which slowly-decaying
        # integrands such as f = 1 would otherwise feel at the 1e-4 level.
        w[0] *= 5.0 / 12.0
        w[-1] *= 5.0 / 12.0
        w[1] *= 13.0 / 12.0
        w[-2] *= 13.0 / 12.0
    else:
        w[0] *= 0.5
        w[-1] *= 0.5
    # Inner-tail patch: rectangle over [0, r_min] so that integrands finite at
    # the origin are not silently truncated.
    w[0] += r_min
    return RadialGrid(points=r, weights=w, spacing=math.exp(h), log_step=h)


def integrate(f, g: RadialGrid) -> float:
    f = np.asarray(f)
    if f.shape != g.points.shape:
        raise ShapeError(f"sample length {f.shape} does not match grid {g.points.shape}")
    return float(np.dot(f, g.weights))


def inner(f1, f2, g: RadialGrid) -> float:
    return integrate(np.asarray(f1) * np.asarray(f2), g)


@dataclass(frozen=True)
class RadialOrbital:
    """Sampled u(r) = r*R(r) with quantum numbers and occupation."""

    u: np.ndarray
    n: int
    l: int
    spin: str = "paired"
    occupation: float = 0.0

    def __post_init__(self):
        if self.spin not in ("up", "down", "paired"):
            raise ParameterError(f"spin must be up/down/paired, got {self.spin!r}")
        if self.occupation < 0.0:
            raise ParameterError("occupation must be nonnegative")

    def normalized(self, g: RadialGrid):
        nrm = math.sqrt(inner(self.u, self.u, g))
        if nrm == 0.0:
            raise ParameterError("cannot normalize a zero orbital")
        return RadialOrbital(
            u=self.u / nrm, n=self.n, l=self.l, spin=self.spin, occupation=self.occupation
        )


def hydrogenic_orbital(Z: float, n: int, l: int, g: RadialGrid) -> RadialOrbital:
    """Analytic hydrogen-like u_{nl} sampled on the grid.

    u(r) = r * R_nl(r) with the textbook Laguerre form
    R_nl = (2Z/n)^{3/2} sqrt((n-l-1)!/(2n (n+l)!)) e^{-x/2} x^l L^{2l+1}_{n-l-1}(x),
    x = 2Zr/n.  Renormalized on the grid so <u|u> = 1 to quadrature accuracy.
    """
    if Z <= 0:
        raise ParameterError(f"Z must be positive, got {Z}")
    if n < 1 or not (0 <= l < n):
        raise ParameterError(f"invalid quantum numbers (n={n}, l={l})")
    r = g.points
    x = 2.0 * Z * r / n
    norm = (2.0 * Z / n) ** 1.5 * math.sqrt(
        math.factorial(n - l - 1) / (2.0 * n * math.factorial(n + l))
    )
    R = norm * np.exp(-x / 2.0) * x**l * eval_genlaguerre(n - l - 1, 2 * l + 1, x)
    orb = RadialOrbital(u=r * R, n=n, l=l)
    return orb.normalized(g)


def kinetic_apply(o: RadialOrbital, g: RadialGrid):
    """Radial kinetic operator -1/2 [u'' - l(l+1) u / r^2] on the log mesh.

    Implemented through the symmetric substitution u = sqrt(r) y, where the
    operator becomes (1/r^2)[-1/2 d^2/dx^2 + (l+1/2)^2/2] y in the uniform log
    variable x; a three-point stencil discretizes d^2/dx^2.  The end rows use
    quadratically extrapolated ghost values rather than hard zeros: y ~ sqrt(r)
    at small r, so a Dirichlet clamp would inject an O(sqrt(r_min)) defect that
    the 1/r^2 prefactor then amplifies catastrophically.
    """
    if g.N < MIN_SOLVER_POINTS:
        raise CapacityError(f"kinetic stencil needs N >= {MIN_SOLVER_POINTS}, got {g.N}")
    r = g.points
    h = g.log_step
    y = np.asarray(o.u) / np.sqrt(r)
    lap = np.empty_like(y)
    lap[1:-1] = y[2:] - 2.0 * y[1:-1] + y[:-2]
    ghost_lo = 3.0 * y[0] - 3.0 * y[1] + y[2]
    ghost_hi = 3.0 * y[-1] - 3.0 * y[-2] + y[-3]
    lap[0] = y[1] - 2.0 * y[0] + ghost_lo
    lap[-1] = ghost_hi - 2.0 * y[-1] + y[-2]
    Ay = -0.5 * lap / h**2 + 0.5 * (o.l + 0.5) ** 2 * y
    return Ay * np.sqrt(r) / r**2


def kinetic_tridiagonal(g: RadialGrid, l: int):
    """Diagonal and off-diagonal of the kinetic+centrifugal matrix in z-space.

    z = sqrt(r) u diagonalizes the measure; the matrix is
    C_ij = A_ij / (r_i r_j) with A = -1/2 D2 + (l+1/2)^2/2, symmetric
    tridiagonal.  Local potentials add to the diagonal as plain V(r_i).
    """
    if g.N < MIN_SOLVER_POINTS:
        raise CapacityError(f"solver grid needs N >= {MIN_SOLVER_POINTS}, got {g.N}")
    r = g.points
    h = g.log_step
    diag = (1.0 / h**2 + 0.5 * (l + 0.5) ** 2) / r**2
    off = (-0.5 / h**2) / (r[:-1] * r[1:])
    return diag, off


def u_to_z(u, g: RadialGrid):
    return np.asarray(u) * np.sqrt(g.points)


def z_to_u(z, g: RadialGrid):
    return np.asarray(z) / np.sqrt(g.points)


def node_count(u, rel_threshold=1e-8) -> int:
    """Sign changes of u over samples with magnitude above the noise floor."""
    u = np.asarray(u)
    peak = np.max(np.abs(u))
    if peak == 0.0:
        return 0
    sig = u[np.abs(u) > rel_threshold * peak]
    return int(np.sum(np.sign(sig[1:]) != np.sign(sig[:-1])))


def dump_orbital_csv(path, o: RadialOrbital, g: RadialGrid):
    """Write the orbital as CSV with header `r,u`, 17 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("r,u\n")
        for ri, ui in zip(g.points, o.u):
            fh.write(f"{ri:.17g},{ui:.17g}\n")
