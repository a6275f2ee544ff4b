"""Walk measures constant on conjugacy classes and their exact spectra.

For a class measure q the convolution operator on l2(G) acts on each
lambda-isotypic block as the scalar

    beta_lambda = sum_j q(C_j) * chi_lambda(c_j) / d_lambda,

with multiplicity d_lambda^2.  Eigenvalues are kept as exact rationals all
the way; only the distance evaluation layer converts to reals.

Alternating-group spectra merge each pair {lambda, lambda'} (conjugate
diagrams agree on even classes) by halving multiplicities: the trivial and
sign diagrams collapse to the single trivial block of A_n, and every other
diagram keeps eigenvalue beta_lambda with multiplicity d_lambda^2 / 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .characters import (
    CycleType,
    char_ratio,
    check_cycle_type,
    is_even_class,
    support,
)
from .partitions import Partition, check_partition, dimension, partitions


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassMeasure:
    """A probability measure on S_n constant on conjugacy classes.

    ``atoms`` maps each cycle type to the total weight of its class.  Class
    measures are automatically symmetric (every class is closed under
    inversion), so the walks they drive are reversible.
    """

    n: int
    atoms: tuple[tuple[CycleType, Fraction], ...]
    name: str = "walk"

    def __post_init__(self) -> None:
        total = Fraction(0)
        for cycles, weight in self.atoms:
            check_cycle_type(cycles)
            if sum(cycles) != self.n:
                raise ValueError(f"atom {cycles} has degree {sum(cycles)} != {self.n}")
            if weight < 0:
                raise ValueError("weights must be non-negative")
            total += weight
        if total != 1:
            raise ValueError(f"weights sum to {total}, expected 1")

    @property
    def even_support(self) -> bool:
        """True iff every atom class lies in A_n (the identity counts as even)."""
        return all(is_even_class(c) for c, w in self.atoms if w > 0)


def random_transposition_measure(n: int) -> ClassMeasure:
    """Pick two positions independently uniformly and swap: mass 1/n at the
    identity, 2/n^2 at each transposition (class weight (n-1)/n)."""
    if n < 2:
        raise ValueError("random transposition needs n >= 2")
    atoms = (
        ((1,) * n, Fraction(1, n)),
        ((2,) + (1,) * (n - 2), Fraction(n - 1, n)),
    )
    return ClassMeasure(n, atoms, name="rt")


def uniform_class_measure(cycles: CycleType) -> ClassMeasure:
    """Uniform measure on one non-identity conjugacy class."""
    cycles = check_cycle_type(cycles)
    if support(cycles) == 0:
        raise ValueError("the identity class does not drive a walk")
    name = "class:" + ",".join(str(c) for c in cycles if c > 1)
    return ClassMeasure(sum(cycles), ((cycles, Fraction(1)),), name=name)


def lazy_class_measure(cycles: CycleType, eps: Fraction) -> ClassMeasure:
    """Hold with probability eps, otherwise take a uniform class step."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie strictly between 0 and 1")
    cycles = check_cycle_type(cycles)
    if support(cycles) == 0:
        raise ValueError("the identity class does not drive a walk")
    n = sum(cycles)
    name = "lazy:" + ",".join(str(c) for c in cycles if c > 1) + f":{eps}"
    return ClassMeasure(n, (((1,) * n, eps), (cycles, 1 - eps)), name=name)


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

def walk_eigenvalue(q: ClassMeasure, parts: Partition) -> Fraction:
    """Exact eigenvalue of convolution by q on the lambda-isotypic block."""
    parts = check_partition(parts)
    if sum(parts) != q.n:
        raise ValueError(f"partition of {sum(parts)} does not match degree {q.n}")
    beta = Fraction(0)
    for cycles, weight in q.atoms:
        if weight == 0:
            continue
        if support(cycles) == 0:
            beta += weight
        else:
            beta += weight * char_ratio(parts, cycles)
    return beta


@dataclass(frozen=True)
class SpectrumEntry:
    eigenvalue: Fraction
    multiplicity: Fraction
    partition: Partition


@dataclass
class Spectrum:
    """Full eigenvalue data of a class-measure walk on S_n or A_n."""

    n: int
    group: str  # "sn" | "an"
    name: str
    entries: list[SpectrumEntry] = field(default_factory=list)

    def nontrivial(self) -> Iterator[SpectrumEntry]:
        """Entries excluding the trivial block lambda = (n)."""
        trivial = (self.n,)
        return (e for e in self.entries if e.partition != trivial)

    @property
    def total_multiplicity(self) -> Fraction:
        return sum((e.multiplicity for e in self.entries), Fraction(0))


def spectrum(q: ClassMeasure, group: str = "sn") -> Spectrum:
    """Eigenvalue/multiplicity list over all diagrams lambda of n.

    ``group="an"`` requires a measure supported on even classes; the sign
    diagram folds into the trivial block and all other multiplicities are
    halved, so the multiplicities sum to n!/2.
    """
    if group not in ("sn", "an"):
        raise ValueError(f"unknown group {group!r}")
    if group == "an" and not q.even_support:
        raise ValueError("A_n spectra need a measure supported on even classes")
    n = q.n
    sign = (1,) * n
    entries = []
    for lam in partitions(n):
        beta = walk_eigenvalue(q, lam)
        if group == "sn":
            mult = Fraction(dimension(lam) ** 2)
        elif lam == (n,):
            mult = Fraction(1)  # trivial and sign collapse to one A_n block
        elif lam == sign:
            continue
        else:
            mult = Fraction(dimension(lam) ** 2, 2)
        entries.append(SpectrumEntry(beta, mult, lam))
    return Spectrum(n, group, q.name, entries)


# ---------------------------------------------------------------------------
# transpose top with random
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransposeTopData:
    """Eigenvalues of the transpose-top operator restricted to one diagram.

    sigma_i = lam_i - i are the eigenvalues of M = sum_i rho((1, i)); the walk
    operator (M + I)/n then has eigenvalues alpha_i = (sigma_i + 1)/n, with
    dominant alpha_1 = lam_1/n.  Multiplicities are not tracked here; exact
    transpose-top distances go through the brute-force oracle instead.
    """

    partition: Partition
    sigma: tuple[int, ...]
    alpha: tuple[Fraction, ...]

    @property
    def alpha1(self) -> Fraction:
        return self.alpha[0]


def transpose_top_sigma(parts: Partition) -> TransposeTopData:
    parts = check_partition(parts)
    if not parts:
        raise ValueError("need a non-empty partition")
    n = sum(parts)
    sigma = tuple(lam_i - i for i, lam_i in enumerate(parts, start=1))
    alpha = tuple(Fraction(s + 1, n) for s in sigma)
    return TransposeTopData(parts, sigma, alpha)
