"""l2 (chi-square) distance profiles from exact spectra.

For a walk with eigenvalues beta_i (trivial block excluded),

    d2(q^(t), u)^2 = sum_i m_i beta_i^(2t)          (discrete time)
    d2(h_t, u)^2   = sum_i m_i exp(-2t(1 - beta_i)) (continuous time)

Terms span hundreds of orders of magnitude (multiplicities d_lambda^2
against exp(-2t)), so each term is assembled in log space and summed as
arbitrary-exponent mpmath reals under a caller-chosen working precision
(default 128 bits, i.e. well past the 80-bit requirement; per-term relative
error is ~2^-prec, far below the documented 1e-12 budget).  Values are
returned as mpf so profile tails below the float64 underflow threshold
survive to the output layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mp

from .characters import is_even_class
from .group_oracle import GroupDistribution
from .partitions import Partition, check_partition, dimension
from .spectra import ClassMeasure, Spectrum, spectrum, walk_eigenvalue

DEFAULT_PREC = 128

#: exact-rational fast path kicks in below these sizes
_EXACT_MAX_N = 6
_EXACT_MAX_T = 30


def _frac(x: Fraction) -> mpmath.mpf:
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)


def l2_discrete(spec: Spectrum, t: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """d2(q^(t), u) from the spectrum at integer time t >= 0."""
    if t < 0 or t != int(t):
        raise ValueError("discrete time must be a non-negative integer")
    t = int(t)
    with mp.workprec(prec):
        if spec.n <= _EXACT_MAX_N and t <= _EXACT_MAX_T:
            total_exact = Fraction(0)
            for e in spec.nontrivial():
                total_exact += e.multiplicity * e.eigenvalue ** (2 * t)
            return mp.sqrt(_frac(total_exact))
        total = mp.mpf(0)
        for e in spec.nontrivial():
            beta = e.eigenvalue
            if beta == 0:
                if t == 0:
                    total += _frac(e.multiplicity)
                continue
            log_term = (
                mp.log(_frac(e.multiplicity))
                + 2 * t * (mp.log(abs(beta.numerator)) - mp.log(beta.denominator))
            )
            total += mp.exp(log_term)
        return mp.sqrt(total)


def l2_continuous(spec: Spectrum, t, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """d2(h_t, u) from the spectrum at real time t >= 0.

    A beta = -1 block (odd-class periodicity witness) contributes e^(-4t),
    which the spectral gap 1 - beta handles with no special casing.
    """
    if t < 0:
        raise ValueError("continuous time must be non-negative")
    with mp.workprec(prec):
        tt = mp.mpf(t)
        total = mp.mpf(0)
        for e in spec.nontrivial():
            gap = 1 - e.eigenvalue
            log_term = mp.log(_frac(e.multiplicity)) - 2 * tt * _frac(gap)
            total += mp.exp(log_term)
        return mp.sqrt(total)


def l2_single_term_lower(
    parts: Partition,
    q: ClassMeasure,
    t,
    mode: str = "continuous",
    prec: int = DEFAULT_PREC,
) -> mpmath.mpf:
    """One representation's contribution d * |beta|^t (discrete) or
    d * exp(-t(1-beta)) (continuous); always a lower bound for the full d2."""
    parts = check_partition(parts)
    if parts == (q.n,):
        raise ValueError("the trivial block is excluded from distance bounds")
    beta = walk_eigenvalue(q, parts)
    d = dimension(parts)
    with mp.workprec(prec):
        if mode == "discrete":
            if t != int(t) or t < 0:
                raise ValueError("discrete time must be a non-negative integer")
            t = int(t)
            if beta == 0:
                return mp.mpf(d if t == 0 else 0)
            return mp.exp(
                mp.log(d) + t * (mp.log(abs(beta.numerator)) - mp.log(beta.denominator))
            )
        if mode == "continuous":
            return mp.exp(mp.log(d) - mp.mpf(t) * _frac(1 - beta))
        raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# definitional distances for oracle-scale distributions
# ---------------------------------------------------------------------------

def _check_normalized(dist: GroupDistribution) -> None:
    if dist.exact:
        if dist.total() != 1:
            raise ValueError(f"distribution sums to {dist.total()}, expected 1")
    elif abs(dist.total() - 1.0) > 1e-12:
        raise ValueError(f"distribution sums to {dist.total()!r}, expected 1")


def chi_square_of(dist: GroupDistribution, normalized: bool = True) -> float:
    """Definitional d2: sqrt(|G| * sum_x |q(x) - 1/|G||^2).

    Pass ``normalized=False`` for sub-probability inputs such as truncated
    Poisson mixtures (the tiny mass defect is part of the approximation).
    """
    if normalized:
        _check_normalized(dist)
    g = math.factorial(dist.n)
    if dist.exact:
        u = Fraction(1, g)
        total = sum(((v - u) ** 2 for v in dist.values), Fraction(0))
        return math.sqrt(g * total.numerator / total.denominator)
    arr = np.asarray(dist.values)
    return float(math.sqrt(g * float(np.sum((arr - 1.0 / g) ** 2))))


def tv_of(dist: GroupDistribution, normalized: bool = True) -> float:
    """Total variation distance to uniform: (1/2) sum |q(x) - 1/|G||."""
    if normalized:
        _check_normalized(dist)
    g = math.factorial(dist.n)
    if dist.exact:
        u = Fraction(1, g)
        total = sum((abs(v - u) for v in dist.values), Fraction(0))
        return float(total) / 2.0
    arr = np.asarray(dist.values)
    return float(np.sum(np.abs(arr - 1.0 / g))) / 2.0


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProfileRow:
    walk: str
    group: str
    n: int
    t: float
    d2: mpmath.mpf

    @property
    def log10_d2_sq(self) -> mpmath.mpf:
        if self.d2 == 0:
            return mp.mpf("-inf")
        return 2 * mp.log10(self.d2)


@dataclass
class DistanceProfile:
    walk: str
    group: str
    n: int
    mode: str
    rows: list[ProfileRow]


def class_walk_profile(
    q: ClassMeasure,
    group: str,
    mode: str,
    times,
    prec: int = DEFAULT_PREC,
) -> DistanceProfile:
    """Distance curve of a class-measure walk over a time grid.

    Conventions for odd classes (walks that alternate between cosets of A_n):

    * continuous time is aperiodic, so the distance is always taken on the
      full symmetric group and rows are labelled ``sn`` whatever was asked;
    * discrete time with ``group="an"`` reports the walk driven by q*q on
      A_n (row time t means 2t raw steps), followed by the raw alternating
      S_n sequence at the same grid for transparency.
    """
    if mode not in ("discrete", "continuous"):
        raise ValueError(f"unknown mode {mode!r}")
    if group not in ("sn", "an"):
        raise ValueError(f"unknown group {group!r}")
    rows: list[ProfileRow] = []
    odd_walk = not q.even_support
    if group == "an" and odd_walk:
        spec_sn = spectrum(q, "sn")
        if mode == "continuous":
            for t in times:
                rows.append(ProfileRow(q.name, "sn", q.n, float(t), l2_continuous(spec_sn, t, prec)))
            return DistanceProfile(q.name, "sn", q.n, mode, rows)
        if any(is_even_class(c) for c, w in q.atoms if w > 0):
            # a mixed measure (identity or even atoms) never confines the
            # walk to one coset, so the q*q restriction does not apply
            raise ValueError("A_n discrete profiles need a pure odd-class measure")
        # squared walk on A_n: same eigenvalue data, doubled exponent,
        # trivial+sign folded and multiplicities halved
        for t in times:
            t = int(t)
            with mp.workprec(prec):
                total = Fraction(0) if q.n <= _EXACT_MAX_N and t <= _EXACT_MAX_T else None
                acc = mp.mpf(0)
                for e in spec_sn.nontrivial():
                    if e.partition == (1,) * q.n:
                        continue
                    beta = e.eigenvalue
                    if total is not None:
                        total += Fraction(e.multiplicity, 2) * beta ** (4 * t)
                    elif beta == 0:
                        if t == 0:
                            acc += _frac(e.multiplicity) / 2
                    else:
                        acc += mp.exp(
                            mp.log(_frac(e.multiplicity) / 2)
                            + 4 * t * (mp.log(abs(beta.numerator)) - mp.log(beta.denominator))
                        )
                val = mp.sqrt(_frac(total)) if total is not None else mp.sqrt(acc)
            rows.append(ProfileRow(q.name, "an", q.n, t, val))
        for t in times:
            rows.append(ProfileRow(q.name, "sn", q.n, int(t), l2_discrete(spec_sn, int(t), prec)))
        return DistanceProfile(q.name, "an", q.n, mode, rows)

    spec = spectrum(q, group)
    for t in times:
        if mode == "discrete":
            val = l2_discrete(spec, int(t), prec)
            rows.append(ProfileRow(q.name, group, q.n, int(t), val))
        else:
            val = l2_continuous(spec, t, prec)
            rows.append(ProfileRow(q.name, group, q.n, float(t), val))
    return DistanceProfile(q.name, group, q.n, mode, rows)
