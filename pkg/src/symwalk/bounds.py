"""Term-by-term evaluation of the explicit analytic bounds.

Each theorem's inequality chain is split into its named summands (the
bound terms A_j, B_j and their partial sums phi_0, phi_1, phi_2, gamma) so
every link can be checked numerically.  Factorial ratios are evaluated as
log-gamma differences at the working precision; the exact big-integer
cross-check for small n lives in the test suite.

Naming note: the fixed-point sets {phi >= j} and the bound summands are
both called A_j in the usual notation; here the sets live behind
``matching_tail`` and the summands behind ``a_terms``/``b_terms``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp

from .distances import DEFAULT_PREC, l2_continuous, l2_discrete
from .spectra import random_transposition_measure, spectrum, uniform_class_measure


def _log_ratio_sq_over_fact(n: int, j: int) -> mpmath.mpf:
    """log of (n!/(n-j)!)^2 / j!."""
    return 2 * (mp.loggamma(n + 1) - mp.loggamma(n - j + 1)) - mp.loggamma(j + 1)


def _log_frac(x: Fraction) -> mpmath.mpf:
    if x <= 0:
        raise ValueError("log of non-positive rational")
    return mp.log(x.numerator) - mp.log(x.denominator)


# ---------------------------------------------------------------------------
# random transposition, discrete time
# ---------------------------------------------------------------------------

@dataclass
class RtDiscreteTerms:
    """Discrete-time bound terms at the reference exponent n*log(n).

    a_terms[j] = (n!/(n-j)!)^2 (1/j!) (1 - (2j/n)(1-(j-1)/n))^(n log n) for
    1 <= j <= n/2, b_terms[j] analogous with base (1 - j/n), n/2 <= j <= n.
    phi_0 sums a over j <= floor(n/4), phi_1 over ceil(n/4)..floor(n/2),
    phi_2 sums b; a shared boundary index is counted in both ranges.
    """

    n: int
    a_terms: dict = field(default_factory=dict)
    b_terms: dict = field(default_factory=dict)
    phi0: mpmath.mpf = mp.mpf(0)
    phi1: mpmath.mpf = mp.mpf(0)
    phi2: mpmath.mpf = mp.mpf(0)
    #: 2 + phi1 + phi2, the computable stand-in for the B^2 constant
    b_square_bound: mpmath.mpf = mp.mpf(2)


def rt_discrete_terms(n: int, prec: int = DEFAULT_PREC) -> RtDiscreteTerms:
    if n < 14:
        raise ValueError("discrete-time term bounds are stated for n >= 14")
    out = RtDiscreteTerms(n)
    with mp.workprec(prec):
        exponent = n * mp.log(n)
        for j in range(1, n // 2 + 1):
            base = 1 - Fraction(2 * j, n) * (1 - Fraction(j - 1, n))
            out.a_terms[j] = mp.exp(
                _log_ratio_sq_over_fact(n, j) + exponent * _log_frac(base)
            )
        for j in range(-(-n // 2), n + 1):
            if j == n:
                out.b_terms[j] = mp.mpf(0)
                continue
            out.b_terms[j] = mp.exp(
                _log_ratio_sq_over_fact(n, j) + exponent * _log_frac(Fraction(n - j, n))
            )
        out.phi0 = mp.fsum(out.a_terms[j] for j in range(1, n // 4 + 1))
        out.phi1 = mp.fsum(out.a_terms[j] for j in range(-(-n // 4), n // 2 + 1))
        out.phi2 = mp.fsum(out.b_terms.values())
        out.b_square_bound = 2 + out.phi1 + out.phi2
    return out


# ---------------------------------------------------------------------------
# random transposition, continuous time
# ---------------------------------------------------------------------------

@dataclass
class RtContinuousTerms:
    """Continuous-time analogues with exponent -2j log(n) (1 - j/n) - 2j.

    b_terms carry the squared factorial ratio (n!/(n-j)!)^2 exactly like
    a_terms; the consecutive-term ratio (n-j)^2/(j+1) * e^(-log n - 2) used
    to sum them, and the boundary identity b[n/2] = a[n/2] at even n, both
    require the square.
    """

    n: int
    a_terms: dict = field(default_factory=dict)
    b_terms: dict = field(default_factory=dict)
    sum_a_low: mpmath.mpf = mp.mpf(0)   # j = 1 .. floor(n/4)
    sum_a_mid: mpmath.mpf = mp.mpf(0)   # j = ceil(n/4) .. floor(n/2)
    gamma: mpmath.mpf = mp.mpf(0)       # j = ceil(n/2) .. n


def rt_continuous_terms(n: int, prec: int = DEFAULT_PREC) -> RtContinuousTerms:
    if n < 10:
        raise ValueError("continuous-time term bounds are stated for n >= 10")
    out = RtContinuousTerms(n)
    with mp.workprec(prec):
        logn = mp.log(n)
        for j in range(1, n // 2 + 1):
            out.a_terms[j] = mp.exp(
                _log_ratio_sq_over_fact(n, j) - 2 * j * logn * (1 - mp.mpf(j) / n) - 2 * j
            )
        for j in range(-(-n // 2), n + 1):
            out.b_terms[j] = mp.exp(
                _log_ratio_sq_over_fact(n, j) - j * logn - 2 * j
            )
        out.sum_a_low = mp.fsum(out.a_terms[j] for j in range(1, n // 4 + 1))
        out.sum_a_mid = mp.fsum(out.a_terms[j] for j in range(-(-n // 4), n // 2 + 1))
        out.gamma = mp.fsum(out.b_terms.values())
    return out


# ---------------------------------------------------------------------------
# transpose top with random
# ---------------------------------------------------------------------------

def ttr_bound_sum(n: int, t, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """sum_{j=1}^{n-1} (n!/(n-j)!)^2 (1/j!) (1 - j/n)^(2t), a bound on d2^2."""
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    with mp.workprec(prec):
        return mp.fsum(
            mp.exp(_log_ratio_sq_over_fact(n, j) + 2 * mp.mpf(t) * _log_frac(Fraction(n - j, n)))
            for j in range(1, n)
        )


def ttr_bound_sum_continuous(n: int, t, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Continuous-time variant: sum_j (n!/(n-j)!)^2 (1/j!) e^(-2tj/n)."""
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    with mp.workprec(prec):
        return mp.fsum(
            mp.exp(_log_ratio_sq_over_fact(n, j) - 2 * mp.mpf(t) * j / n)
            for j in range(1, n)
        )


# ---------------------------------------------------------------------------
# theorem reproduction
# ---------------------------------------------------------------------------

@dataclass
class BoundReport:
    name: str
    n: int
    c: float
    t: float
    guaranteed: mpmath.mpf
    computed: mpmath.mpf
    passed: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "n": self.n,
            "c": self.c,
            "t": self.t,
            "guaranteed": float(self.guaranteed),
            "computed": float(self.computed),
            "pass": self.passed,
        }
        if self.details:
            out["details"] = {k: (float(v) if isinstance(v, (int, float, mpmath.mpf)) else v)
                              for k, v in self.details.items()}
        return out


WALK_BOUNDS = ("rt_discrete", "rt_continuous", "ttr", "four_cycle", "random_insertion")


def theorem_bound(walk: str, n: int, c: float, prec: int = DEFAULT_PREC) -> BoundReport:
    """Exact distance (or bound sum) at a theorem's time threshold vs its constant.

    rt_discrete (n > 14, c >= 0):      d2(q_rt^(t), u) <= 2 e^-c at t = ceil((n/2)(log n + c))
    ttr (n >= 1, c >= 0):              bound sum on d2^2 <= 2 e^-2c at t = ceil(n(log n + c))
    rt_continuous (n >= 10, c >= 2):   d2(h_rt,t, u) <= e^-(c-2) at t = (n/2)(log n + c)
    four_cycle (n >= 11, c >= 2):      d2(h_c4,t, u) <= e^-(c-2) at the same threshold
    random_insertion (n >= 10, c >= 2): d2(q_ri^(t), u)^2 <= e^-(c-2) at t = 2n(log n + c),
        evaluated through the Dirichlet comparison as d2(h_rt, t/4)^2.
    """
    with mp.workprec(prec):
        if walk == "rt_discrete":
            if n <= 14 or c < 0:
                raise ValueError("rt_discrete needs n > 14 and c >= 0")
            t = math.ceil((n / 2) * (math.log(n) + c))
            computed = l2_discrete(spectrum(random_transposition_measure(n)), t, prec)
            guaranteed = 2 * mp.exp(-c)
        elif walk == "ttr":
            if n < 1 or c < 0:
                raise ValueError("ttr needs n >= 1 and c >= 0")
            t = math.ceil(n * (math.log(n) + c))
            computed = ttr_bound_sum(n, t, prec)
            guaranteed = 2 * mp.exp(-2 * c)
        elif walk == "rt_continuous":
            if n < 10 or c < 2:
                raise ValueError("rt_continuous needs n >= 10 and c >= 2")
            t = (n / 2) * (math.log(n) + c)
            computed = l2_continuous(spectrum(random_transposition_measure(n)), t, prec)
            guaranteed = mp.exp(-(c - 2))
        elif walk == "four_cycle":
            if n < 11 or c < 2:
                raise ValueError("four_cycle needs n >= 11 and c >= 2")
            t = (n / 2) * (math.log(n) + c)
            q = uniform_class_measure((4,) + (1,) * (n - 4))
            computed = l2_continuous(spectrum(q, "sn"), t, prec)
            guaranteed = mp.exp(-(c - 2))
        elif walk == "random_insertion":
            if n < 10 or c < 2:
                raise ValueError("random_insertion needs n >= 10 and c >= 2")
            t = 2 * n * (math.log(n) + c)
            computed = l2_continuous(spectrum(random_transposition_measure(n)), t / 4, prec) ** 2
            guaranteed = mp.exp(-(c - 2))
        else:
            raise ValueError(f"unknown bound {walk!r}")
        return BoundReport(
            name=walk,
            n=n,
            c=c,
            t=float(t),
            guaranteed=guaranteed,
            computed=computed,
            passed=bool(computed <= guaranteed),
            details={"threshold_time": float(t)},
        )


# ---------------------------------------------------------------------------
# matching problem, Stirling, calculus helper
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatchingTail:
    """u(A_j): uniform mass of permutations with at least j fixed points."""

    value: Fraction
    bound: float | None  # e^-1 / (j-1)! for j >= 2


def matching_tail(n: int, j: int) -> MatchingTail:
    """Exact u(A_j) = sum_{m=j}^n (1/m!) sum_{v=0}^{n-m} (-1)^v / v!."""
    if not 1 <= j <= n:
        raise ValueError("need 1 <= j <= n")
    total = Fraction(0)
    for m in range(j, n + 1):
        inner = sum(Fraction((-1) ** v, math.factorial(v)) for v in range(n - m + 1))
        total += Fraction(1, math.factorial(m)) * inner
    bound = math.exp(-1) / math.factorial(j - 1) if j >= 2 else None
    return MatchingTail(total, bound)


def stirling_envelope(n: int, prec: int = DEFAULT_PREC) -> tuple[mpmath.mpf, mpmath.mpf]:
    """(sqrt(2 pi n)(n/e)^n, e^(1/12n) sqrt(2 pi n)(n/e)^n), bracketing n!."""
    if n < 1:
        raise ValueError("n must be positive")
    with mp.workprec(prec):
        lower = mp.sqrt(2 * mp.pi * n) * mp.exp(n * (mp.log(n) - 1))
        return lower, mp.exp(mp.mpf(1) / (12 * n)) * lower


def calculus_claim(w: float, x: float) -> bool:
    """Whether 2 log(1-x) >= -w x; true on 0 <= x <= 1 - 1/w for w >= 4."""
    if x >= 1:
        return False
    if x == 0:
        return True
    return 2 * math.log1p(-x) >= -w * x
