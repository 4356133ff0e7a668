"""Quasirelativistic level series for a bound vector particle.

The energy of a spin-1 particle of mass m bound in a Coulomb field, with
coupling γ = Zα, expands in even powers of γ around the rest-plus-binding
value.  Each order is kept as a separate term so the composition of the
level — rest energy, Balmer term, fine structure, and the γ⁶ correction —
stays inspectable, and so a comparison against the plain hydrogenic series
can isolate exactly the relativistic part.

Levels are labeled by the principal number n and an integer k that encodes
the angular momentum coupling; k = 0 never occurs (the formulas divide by
it, and the physical label set for orbital momentum l is {−l, l+1}, whose
l = 0 case sheds the zero entry).
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Integral

from .errors import DomainError

FINE_STRUCTURE_ALPHA = 7.2973525693e-3


@dataclass(frozen=True)
class SpectrumParams:
    """Inputs of one level: mass scale m, coupling γ, labels (n, k)."""

    m: float
    gamma: float
    n: int
    k: int

    def __post_init__(self):
        if self.m <= 0:
            raise DomainError(f"mass scale must be positive, got {self.m}")
        if self.gamma < 0:
            raise DomainError(f"coupling gamma must be non-negative, got {self.gamma}")
        if not isinstance(self.n, Integral) or self.n < 1:
            raise DomainError(f"principal number must be an integer >= 1, got {self.n}")
        if not isinstance(self.k, Integral) or self.k == 0:
            raise DomainError(f"angular label k must be a non-zero integer, got {self.k}")


@dataclass(frozen=True)
class SpectrumBreakdown:
    """One level split by order in γ; total is the plain sum of the parts."""

    leading: float
    term2: float
    term4: float
    term6: float
    total: float


def boson_energy(p: SpectrumParams) -> SpectrumBreakdown:
    """Level energy through order γ⁶ (in units where the rest term is m/2)."""
    m, g, n, k = p.m, p.gamma, p.n, abs(p.k)
    leading = m / 2.0
    term2 = -m * g**2 / (2.0 * n**2)
    term4 = -m * g**4 / (8.0 * n**3) * (4.0 / k - 3.0 / n)
    term6 = -m * g**6 / (8.0 * n**4) * (3.0 / n**2 - 8.0 / (n * k) + 4.0 / p.k**2)
    total = leading + term2 + term4 + term6
    return SpectrumBreakdown(
        leading=leading, term2=term2, term4=term4, term6=term6, total=total
    )


@dataclass(frozen=True)
class HydrogenicComparison:
    """Boson binding against the nonrelativistic hydrogenic Balmer term."""

    binding_boson: float
    binding_hydrogenic: float
    difference: float
    leading_coefficient: float


def compare_hydrogenic(p: SpectrumParams) -> HydrogenicComparison:
    """Relativistic excess of the boson binding over the Balmer series.

    The difference starts at order γ⁴; its coefficient −m/(8n³)(4/|k| − 3/n)
    is reported alongside so small-γ behavior can be checked directly.
    """
    b = boson_energy(p)
    binding_boson = b.term2 + b.term4 + b.term6
    binding_hydrogenic = b.term2
    return HydrogenicComparison(
        binding_boson=binding_boson,
        binding_hydrogenic=binding_hydrogenic,
        difference=binding_boson - binding_hydrogenic,
        leading_coefficient=-p.m / (8.0 * p.n**3) * (4.0 / abs(p.k) - 3.0 / p.n),
    )


@dataclass(frozen=True)
class KValues:
    """Physical k labels for one orbital momentum, with the k=0 cut noted."""

    l: int
    values: tuple
    filtered_zero: bool


def k_values_for_l(l: int) -> KValues:
    """Allowed angular labels {−l, l+1} for orbital momentum l.

    For l = 0 the −l entry would be the forbidden k = 0; it is dropped and
    the drop is recorded in the result rather than applied silently.
    """
    if not isinstance(l, Integral) or l < 0:
        raise DomainError(f"orbital momentum must be an integer >= 0, got {l}")
    raw = (-l, l + 1)
    values = tuple(k for k in raw if k != 0)
    return KValues(l=int(l), values=values, filtered_zero=len(values) != len(raw))
