"""Exact enumeration-based fermionic algebra on small Fock spaces.

Everything here is brute force on purpose: tensors are dense rank-n arrays,
operators are applied term by term over explicit bit patterns, and identities
are checked by exhausting the full 2^M basis.  That makes this module the
trusted oracle the rest of the package is tested against.

Canonical slot ordering: spin-orbital slots are numbered 0..M-1,
orbital-major with spin-up before spin-down, i.e. slot 2*(orb-1) is
(orb, up) and slot 2*(orb-1)+1 is (orb, down).  All fermionic signs follow
from this order.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CapacityError,
    InvalidPermutationError,
    ParameterError,
    PreconditionError,
)

ENUMERATION_CAP = 8
ATOL = 1e-12


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """A bijection on {1..n}, stored as the image tuple (bottom row)."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", imgs)
        n = len(imgs)
        if sorted(imgs) != list(range(1, n + 1)):
            raise InvalidPermutationError(
                f"images {imgs} are not a bijection on 1..{n}"
            )

    @property
    def n(self):
        return len(self.images)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n, i, j):
        """The permutation exchanging positions i and j (1-based)."""
        if not (1 <= i <= n and 1 <= j <= n and i != j):
            raise ParameterError(f"transposition indices ({i},{j}) invalid for n={n}")
        imgs = list(range(1, n + 1))
        imgs[i - 1], imgs[j - 1] = imgs[j - 1], imgs[i - 1]
        return cls(tuple(imgs))

    @classmethod
    def cyclic_insertion(cls, n, k, l):
        """Reinsertion permutation used by the cyclic-symmetry residual.

        Exchanges slot k with slot k+l (1-based); l ranges over 1..n-k.
        """
        if not (1 <= k < n and 1 <= l <= n - k):
            raise ParameterError(f"cyclic insertion (k={k}, l={l}) invalid for n={n}")
        return cls.transposition(n, k, k + l)

    def compose(self, other):
        """self after other: (self∘other)(i) = self(other(i))."""
        if self.n != other.n:
            raise ParameterError("cannot compose permutations of different size")
        return Permutation(tuple(self.images[other.images[i] - 1] for i in range(self.n)))

    def inverse(self):
        inv = [0] * self.n
        for pos, img in enumerate(self.images):
            inv[img - 1] = pos + 1
        return Permutation(tuple(inv))


def parity(p: Permutation) -> int:
    """Sign of a permutation: +1 for even, -1 for odd.

    Counted as (-1)^(number of inversions); multiplicative under compose.
    """
    imgs = p.images
    inversions = 0
    for a in range(len(imgs)):
        for b in range(a + 1, len(imgs)):
            if imgs[a] > imgs[b]:
                inversions += 1
    return -1 if inversions % 2 else +1


# ---------------------------------------------------------------------------
# antisymmetric tensors


@dataclass(frozen=True)
class AntisymTensor:
    """Dense rank-n amplitude tensor over a dim-sized one-particle basis."""

    n: int
    dim: int
    amplitudes: np.ndarray

    def norm(self):
        return float(np.linalg.norm(self.amplitudes.ravel()))

    def max_abs(self):
        return float(np.max(np.abs(self.amplitudes)))


def permute_tensor(amplitudes: np.ndarray, p: Permutation) -> np.ndarray:
    """Amplitudes with arguments reordered by p: result(i_1..i_n) = t(i_p(1)..i_p(n))."""
    axes = tuple(i - 1 for i in p.images)
    return np.transpose(amplitudes, axes)


def antisymmetrize(amplitudes: np.ndarray) -> AntisymTensor:
    """Project a dense rank-n tensor onto its antisymmetric part and normalize.

    Returns (1/n!) sum_P sign(P) * permuted(t), rescaled to unit norm when the
    projection is nonzero.  A symmetric input (e.g. e1⊗e1) projects to zero
    and is returned as the zero tensor.
    """
    t = np.asarray(amplitudes, dtype=complex)
    n = t.ndim
    if n > ENUMERATION_CAP:
        raise CapacityError(f"rank {n} exceeds enumeration cap {ENUMERATION_CAP}")
    if t.shape != (t.shape[0],) * n:
        raise ParameterError(f"tensor shape {t.shape} is not cubic")
    if not np.all(np.isfinite(t)):
        raise ParameterError("tensor amplitudes must be finite")
    acc = np.zeros_like(t)
    for images in itertools.permutations(range(1, n + 1)):
        p = Permutation(images)
        acc += parity(p) * permute_tensor(t, p)
    acc /= math.factorial(n)
    nrm = np.linalg.norm(acc.ravel())
    if nrm > 0.0:
        acc = acc / nrm
    return AntisymTensor(n=n, dim=t.shape[0], amplitudes=acc)


def _worst_swap_violation(t: AntisymTensor):
    worst = 0.0
    worst_pair = (1, 2)
    for i in range(1, t.n + 1):
        for j in range(i + 1, t.n + 1):
            swapped = permute_tensor(t.amplitudes, Permutation.transposition(t.n, i, j))
            dev = float(np.max(np.abs(t.amplitudes + swapped)))
            if dev > worst:
                worst, worst_pair = dev, (i, j)
    return worst, worst_pair


def cyclic_residual(t: AntisymTensor, k: int) -> float:
    """Max-norm residual of the cyclic reinsertion identity at split index k.

    For an antisymmetric tensor the amplitude equals the mean of its n-k
    reinsertion images with alternating sign:
        psi = sum_{l=1..n-k} (-1/(n-k)) * psi∘tau_{k,k+l}.
    The returned value is the max-norm of (psi - that sum); it vanishes
    identically on antisymmetric input.
    """
    if not (1 <= k < t.n):
        raise ParameterError(f"split index k={k} out of range for n={t.n}")
    worst, pair = _worst_swap_violation(t)
    if worst > ATOL * max(1.0, t.max_abs()):
        raise PreconditionError(
            f"input not antisymmetric: swapping arguments {pair[0]},{pair[1]} "
            f"leaves residual {worst:.3e}"
        )
    m = t.n - k
    acc = np.zeros_like(t.amplitudes)
    for l in range(1, m + 1):
        p = Permutation.cyclic_insertion(t.n, k, l)
        acc += (-1.0 / m) * permute_tensor(t.amplitudes, p)
    return float(np.max(np.abs(t.amplitudes - acc)))


def cycle_sum_residual(t: AntisymTensor) -> float:
    """Max-norm of the unsigned sum of psi over all argument permutations.

    Transposition pairs cancel on antisymmetric input, so this vanishes.
    Exposed alongside cyclic_residual as the full-sum variant of the same
    symmetry check.
    """
    acc = np.zeros_like(t.amplitudes)
    for images in itertools.permutations(range(1, t.n + 1)):
        acc += permute_tensor(t.amplitudes, Permutation(images))
    return float(np.max(np.abs(acc)))


# ---------------------------------------------------------------------------
# occupation-number states and ladder operators


def slot_index(orbital: int, spin: str) -> int:
    """Canonical slot of (orbital, spin): orbital-major, up before down."""
    if orbital < 1:
        raise ParameterError(f"orbital index must be >= 1, got {orbital}")
    if spin not in ("up", "down"):
        raise ParameterError(f"spin must be 'up' or 'down', got {spin!r}")
    return 2 * (orbital - 1) + (0 if spin == "up" else 1)


def slot_label(slot: int):
    """Inverse of slot_index."""
    return slot // 2 + 1, ("up" if slot % 2 == 0 else "down")


@dataclass(frozen=True)
class OccupationVector:
    """Ordered bit pattern over M spin-orbital slots."""

    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ParameterError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @property
    def M(self):
        return len(self.bits)

    @property
    def population(self):
        return sum(self.bits)

    @classmethod
    def vacuum(cls, M):
        return cls((0,) * M)


class FockVector:
    """Sparse linear combination of OccupationVector basis states."""

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @classmethod
    def basis_state(cls, occ, amplitude=1.0):
        if not isinstance(occ, OccupationVector):
            occ = OccupationVector(tuple(occ))
        return cls({occ: complex(amplitude)})

    def __add__(self, other):
        out = dict(self.terms)
        for occ, amp in other.terms.items():
            out[occ] = out.get(occ, 0.0) + amp
        return FockVector(out)

    def scale(self, c):
        return FockVector({occ: c * amp for occ, amp in self.terms.items()})

    def inner(self, other) -> complex:
        """<self|other>, conjugate-linear in self."""
        acc = 0.0 + 0.0j
        for occ, amp in self.terms.items():
            if occ in other.terms:
                acc += np.conj(amp) * other.terms[occ]
        return complex(acc)

    def norm(self) -> float:
        return math.sqrt(abs(self.inner(self)))

    def pruned(self, tol=0.0):
        """Drop terms with |amplitude| <= tol (exact zeros by default)."""
        return FockVector({o: a for o, a in self.terms.items() if abs(a) > tol})

    def normalized(self):
        nrm = self.norm()
        if nrm == 0.0:
            return FockVector()
        return self.scale(1.0 / nrm).pruned()

    def populations(self):
        return {occ.population for occ in self.pruned().terms}

    def is_zero(self, tol=0.0):
        return all(abs(a) <= tol for a in self.terms.values())


@dataclass(frozen=True)
class LadderOperator:
    """A single fermionic creation or annihilation operator on one slot."""

    kind: str
    slot: int

    def __post_init__(self):
        if self.kind not in ("create", "annihilate"):
            raise ParameterError(f"kind must be create/annihilate, got {self.kind!r}")
        if self.slot < 0:
            raise ParameterError("slot must be nonnegative")


def create(slot):
    return LadderOperator("create", slot)


def annihilate(slot):
    return LadderOperator("annihilate", slot)


def ladder_apply(op: LadderOperator, v: FockVector) -> FockVector:
    """Signed fermionic action of a ladder operator on a Fock vector.

    The sign is (-1)^(number of occupied slots preceding op.slot in the
    canonical order).  Creating on an occupied slot or annihilating an empty
    one kills the term.
    """
    out = {}
    for occ, amp in v.terms.items():
        if op.slot >= occ.M:
            raise ParameterError(f"slot {op.slot} out of range for M={occ.M}")
        bits = occ.bits
        occupied = bits[op.slot] == 1
        if (op.kind == "create") == occupied:
            continue
        sign = -1.0 if sum(bits[: op.slot]) % 2 else 1.0
        new_bits = bits[: op.slot] + ((1 if op.kind == "create" else 0),) + bits[op.slot + 1 :]
        key = OccupationVector(new_bits)
        out[key] = out.get(key, 0.0) + sign * amp
    return FockVector(out).pruned()


def product_state(occupied_slots, M) -> FockVector:
    """a^dag_{s1} ... a^dag_{sk} |0>, applied left to right as listed."""
    v = FockVector.basis_state(OccupationVector.vacuum(M))
    for slot in reversed(list(occupied_slots)):
        v = ladder_apply(create(slot), v)
    return v


# ---------------------------------------------------------------------------
# exhaustive identity tables


@dataclass(frozen=True)
class AnticommutatorTables:
    """Operator norms of {a_i, a†_j} - δ_ij I and {a_i, a_j} over all pairs."""

    create_annihilate: np.ndarray
    annihilate_annihilate: np.ndarray

    def max_deviation(self):
        return float(
            max(np.max(self.create_annihilate), np.max(self.annihilate_annihilate))
        )


def anticommutator_table(M: int) -> AnticommutatorTables:
    """Exhaustively verify the fermionic anticommutation relations on 2^M states.

    For every pair (i, j) and every basis state |b>, both operator orderings
    are applied and summed; the tables record the worst resulting vector norm
    (with the δ_ij identity subtracted in the mixed table).  All entries are
    exactly zero for a correct sign convention.
    """
    if M > ENUMERATION_CAP:
        raise CapacityError(f"M={M} exceeds enumeration cap {ENUMERATION_CAP}")
    if M < 1:
        raise ParameterError("M must be >= 1")
    basis = [OccupationVector(bits) for bits in itertools.product((0, 1), repeat=M)]
    mixed = np.zeros((M, M))
    same = np.zeros((M, M))
    for i in range(M):
        for j in range(M):
            worst_mixed = 0.0
            worst_same = 0.0
            for b in basis:
                v = FockVector.basis_state(b)
                # {a_i, a†_j} |b> - δ_ij |b>
                t1 = ladder_apply(annihilate(i), ladder_apply(create(j), v))
                t2 = ladder_apply(create(j), ladder_apply(annihilate(i), v))
                acc = t1 + t2
                if i == j:
                    acc = acc + v.scale(-1.0)
                worst_mixed = max(worst_mixed, acc.norm())
                # {a_i, a_j} |b>
                s1 = ladder_apply(annihilate(i), ladder_apply(annihilate(j), v))
                s2 = ladder_apply(annihilate(j), ladder_apply(annihilate(i), v))
                worst_same = max(worst_same, (s1 + s2).norm())
            mixed[i, j] = worst_mixed
            same[i, j] = worst_same
    return AnticommutatorTables(create_annihilate=mixed, annihilate_annihilate=same)


# ---------------------------------------------------------------------------
# hole creation


def hole_create(state: FockVector, n: int, spin_config) -> FockVector:
    """Apply the hole-creation combination [a_(n,down) + a_(n+1,up)].

    `state` is expected to be an (n+1)-electron vector over the canonical
    slot layout with n = 2k+1 (one unpaired electron); spin_config = (k, n-k)
    declares the (up, down) electron counts of the target n-electron sector.
    The two annihilators land in different spin sectors, so the result is a
    coherent two-term superposition for a filled reference.
    """
    k_up, n_down = spin_config
    if n != 2 * k_up + 1 or k_up + n_down != n:
        raise ParameterError(
            f"invalid configuration: n={n} incompatible with spin_config={spin_config!r}"
        )
    pops = state.populations()
    if len(pops) > 1:
        raise ParameterError(
            f"invalid configuration: state mixes populations {sorted(pops)}"
        )
    down_op = annihilate(slot_index(n, "down"))
    up_op = annihilate(slot_index(n + 1, "up"))
    return (ladder_apply(down_op, state) + ladder_apply(up_op, state)).pruned()
