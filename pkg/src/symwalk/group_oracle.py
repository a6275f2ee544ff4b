"""Brute-force ground truth on small symmetric groups.

Elements of S_n are enumerated in Lehmer-code order, i.e. lexicographic
order of one-line notation, with the identity at index 0.  Composition is
fixed once and for all as (s*t)(i) = s(t(i)); every formula in this module
is transcribed against that convention, and the convolution used everywhere
is f*q(x) = sum_y f(x y^-1) q(y), matching the walk X_t = xi_1 ... xi_t.

Size guards (n! growth): per-element measures up to n = 8, dense
convolutions in float mode up to n = 7, exact-rational mode up to n = 5,
and dense operator/Dirichlet-form matrices up to n = 6.  Exceeding a guard
raises ResourceGuardError rather than attempting the computation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .characters import CycleType, check_cycle_type, class_size, support

Perm = tuple[int, ...]

MAX_MEASURE_N = 8
MAX_FLOAT_N = 7
MAX_EXACT_N = 5
MAX_DENSE_N = 6


class ResourceGuardError(RuntimeError):
    """A requested oracle computation exceeds the desk-scale size caps."""


def _guard(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise ResourceGuardError(f"{what} is capped at n <= {cap}, got n = {n}")


# ---------------------------------------------------------------------------
# permutation plumbing
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _perm_data(n: int) -> tuple[tuple[Perm, ...], dict[Perm, int]]:
    perms = tuple(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    return perms, index


def all_permutations(n: int) -> tuple[Perm, ...]:
    """All of S_n in Lehmer-code (lexicographic one-line) order."""
    _guard(n, MAX_MEASURE_N, "permutation enumeration")
    return _perm_data(n)[0]


def perm_index(p: Perm) -> int:
    return _perm_data(len(p))[1][tuple(p)]


def compose(s: Perm, t: Perm) -> Perm:
    """(s*t)(i) = s(t(i))."""
    return tuple(s[t[i]] for i in range(len(s)))


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def cycle_type_of(p: Perm) -> CycleType:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def fixed_point_counts(n: int) -> np.ndarray:
    """phi(sigma) for every sigma, indexed by enumeration order."""
    perms = all_permutations(n)
    return np.array([sum(1 for i, v in enumerate(p) if i == v) for p in perms])


@lru_cache(maxsize=None)
def _translation_map(n: int, s: Perm) -> np.ndarray:
    """idx(x * s) for every x; right translation as an index gather table."""
    perms, index = _perm_data(n)
    return np.array([index[compose(x, s)] for x in perms], dtype=np.int64)


# ---------------------------------------------------------------------------
# distributions
# ---------------------------------------------------------------------------

@dataclass
class GroupDistribution:
    """Dense probability vector over S_n in enumeration order.

    ``exact`` distributions hold Fractions (n <= 5), otherwise float64.
    """

    n: int
    values: object  # np.ndarray | list[Fraction]
    exact: bool = False

    def total(self):
        if self.exact:
            return sum(self.values, Fraction(0))
        return float(np.sum(self.values))

    def as_float(self) -> "GroupDistribution":
        if not self.exact:
            return self
        arr = np.array([float(v) for v in self.values], dtype=np.float64)
        return GroupDistribution(self.n, arr, exact=False)

    def support(self) -> list[int]:
        if self.exact:
            return [i for i, v in enumerate(self.values) if v != 0]
        return [int(i) for i in np.nonzero(self.values)[0]]


def point_mass(n: int, exact: bool = False) -> GroupDistribution:
    size = math.factorial(n)
    if exact:
        vals = [Fraction(0)] * size
        vals[0] = Fraction(1)
        return GroupDistribution(n, vals, exact=True)
    arr = np.zeros(size)
    arr[0] = 1.0
    return GroupDistribution(n, arr, exact=False)


def insertion_cycle(n: int, i: int, j: int) -> Perm:
    """The cycle c_{i,j} moved by taking the card at position i to position j.

    For i < j this is the cycle (j, j-1, ..., i+1, i); for j < i the cycle
    (j, j+1, ..., i-1, i); i = j gives the identity.  Positions are 0-based.
    """
    p = list(range(n))
    if i < j:
        for k in range(i + 1, j + 1):
            p[k] = k - 1
        p[i] = j
    elif j < i:
        for k in range(j, i):
            p[k] = k + 1
        p[i] = j
    return tuple(p)


def element_measure(walk, n: int, exact: bool = False) -> GroupDistribution:
    """Per-element step distribution of a named walk.

    ``walk`` is one of "rt", "ttr", "ri", or a cycle type (uniform measure on
    that conjugacy class).  Weights: rt puts 1/n on e and 2/n^2 on each
    transposition; ttr puts 1/n on e and on each (1, i); ri puts 1/n^2 on
    c_{i,j} for every ordered pair, which folds to 1/n on e and 2/n^2 on the
    adjacent (transposition) cycles.
    """
    _guard(n, MAX_MEASURE_N, "per-element measures")
    if exact:
        _guard(n, MAX_EXACT_N, "exact-rational oracle mode")
    perms, index = _perm_data(n)
    size = len(perms)
    acc: dict[int, Fraction] = {}

    def add(p: Perm, w: Fraction) -> None:
        idx = index[p]
        acc[idx] = acc.get(idx, Fraction(0)) + w

    if walk == "rt":
        if n < 2:
            raise ValueError("rt needs n >= 2")
        add(tuple(range(n)), Fraction(1, n))
        w = Fraction(2, n * n)
        for i in range(n):
            for j in range(i + 1, n):
                p = list(range(n))
                p[i], p[j] = p[j], p[i]
                add(tuple(p), w)
    elif walk == "ttr":
        if n < 2:
            raise ValueError("ttr needs n >= 2")
        w = Fraction(1, n)
        add(tuple(range(n)), w)
        for i in range(1, n):
            p = list(range(n))
            p[0], p[i] = p[i], p[0]
            add(tuple(p), w)
    elif walk == "ri":
        w = Fraction(1, n * n)
        for i in range(n):
            for j in range(n):
                add(insertion_cycle(n, i, j), w)
    else:
        cycles = check_cycle_type(walk)
        if sum(cycles) != n:
            raise ValueError(f"class {cycles} has degree {sum(cycles)} != {n}")
        if support(cycles) == 0:
            raise ValueError("the identity class does not drive a walk")
        w = Fraction(1, class_size(cycles))
        for p in perms:
            if cycle_type_of(p) == cycles:
                add(p, w)

    if exact:
        vals = [Fraction(0)] * size
        for idx, w in acc.items():
            vals[idx] = w
        return GroupDistribution(n, vals, exact=True)
    arr = np.zeros(size)
    for idx, w in acc.items():
        arr[idx] = float(w)
    return GroupDistribution(n, arr, exact=False)


def lazy_mix(q: GroupDistribution, eps: Fraction) -> GroupDistribution:
    """eps * (point mass at e) + (1 - eps) * q."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie strictly between 0 and 1")
    if q.exact:
        vals = [(1 - eps) * v for v in q.values]
        vals[0] += eps
        return GroupDistribution(q.n, vals, exact=True)
    arr = (1.0 - float(eps)) * np.asarray(q.values)
    arr[0] += float(eps)
    return GroupDistribution(q.n, arr, exact=False)


def _support_maps(q: GroupDistribution, inverse: bool) -> list[tuple[np.ndarray, object]]:
    """Pairs (gather table, weight) for y in supp(q): table[x] = idx(x*y^±1)."""
    perms, _ = _perm_data(q.n)
    out = []
    for idx in q.support():
        s = perms[idx]
        target = invert(s) if inverse else s
        out.append((_translation_map(q.n, target), q.values[idx]))
    return out


def convolve(f_values, q: GroupDistribution, maps=None):
    """(f*q)(x) = sum_y f(x y^-1) q(y) for a dense vector of f-values."""
    if maps is None:
        maps = _support_maps(q, inverse=True)
    if isinstance(f_values, list):  # exact mode
        size = len(f_values)
        out = [Fraction(0)] * size
        for table, w in maps:
            for x in range(size):
                out[x] += w * f_values[table[x]]
        return out
    f_arr = np.asarray(f_values)
    out = np.zeros_like(f_arr)
    for table, w in maps:
        out += float(w) * f_arr[table]
    return out


def convolution_power(q: GroupDistribution, t: int) -> GroupDistribution:
    """Exact t-fold convolution q^(t); q^(0) is the point mass at e."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if not q.exact:
        _guard(q.n, MAX_FLOAT_N, "dense convolutions")
    maps = _support_maps(q, inverse=True)
    current = point_mass(q.n, exact=q.exact)
    for _ in range(t):
        current = GroupDistribution(q.n, convolve(current.values, q, maps), q.exact)
    return current


def convolution_powers_upto(q: GroupDistribution, t_max: int) -> list[GroupDistribution]:
    """[q^(0), q^(1), ..., q^(t_max)] sharing one pass of convolutions."""
    if not q.exact:
        _guard(q.n, MAX_FLOAT_N, "dense convolutions")
    maps = _support_maps(q, inverse=True)
    powers = [point_mass(q.n, exact=q.exact)]
    for _ in range(t_max):
        powers.append(
            GroupDistribution(q.n, convolve(powers[-1].values, q, maps), q.exact)
        )
    return powers


def continuous_law(
    q: GroupDistribution, t: float, tail_tol: float = 1e-14
) -> tuple[GroupDistribution, int]:
    """Poisson mixture h_t = e^-t sum_s t^s/s! q^(s), truncated at tail < tail_tol.

    Returns the (sub-probability) mixture and the truncation point T; the
    omitted Poisson tail mass beyond T is below ``tail_tol``.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    q = q.as_float()
    _guard(q.n, MAX_FLOAT_N, "dense convolutions")
    if t == 0:
        return point_mass(q.n), 0
    # log pmf recurrence keeps this stable for all oracle-scale t
    log_pmf = -t
    cum = math.exp(log_pmf)
    T = 0
    while 1.0 - cum > tail_tol:
        T += 1
        log_pmf += math.log(t) - math.log(T)
        cum += math.exp(log_pmf)
        if T > 100000:
            raise RuntimeError("Poisson truncation failed to converge")
    maps = _support_maps(q, inverse=True)
    mix = np.zeros(math.factorial(q.n))
    current = point_mass(q.n).values
    log_pmf = -t
    mix += math.exp(log_pmf) * current
    for s in range(1, T + 1):
        current = convolve(current, q, maps)
        log_pmf += math.log(t) - math.log(s)
        mix += math.exp(log_pmf) * current
    return GroupDistribution(q.n, mix, exact=False), T


# ---------------------------------------------------------------------------
# functions on the group, eigen-checks, Dirichlet forms
# ---------------------------------------------------------------------------

@dataclass
class GroupFunction:
    n: int
    values: np.ndarray


def fixed_points_minus_one(n: int) -> GroupFunction:
    """phi(sigma) - 1, an eigenfunction of every class-measure convolution."""
    return GroupFunction(n, fixed_point_counts(n).astype(np.float64) - 1.0)


def ttr_remark_eigenfunction(n: int) -> GroupFunction:
    """The explicit transpose-top eigenfunction with eigenvalue 1 - 1/n.

    f(sigma) = sqrt((n-1)/(n-2)) * (phi(sigma) - 2) when sigma fixes the top
    position, and sqrt((n-1)/(n-2)) * (phi(sigma) - 1 + 1/(n-1)) otherwise;
    its value at the identity satisfies f(e)^2 = (n-1)(n-2).
    """
    if n < 3:
        raise ValueError("needs n >= 3")
    perms = all_permutations(n)
    phi = fixed_point_counts(n).astype(np.float64)
    scale = math.sqrt((n - 1) / (n - 2))
    fixes_top = np.array([p[0] == 0 for p in perms])
    vals = np.where(fixes_top, phi - 2.0, phi - 1.0 + 1.0 / (n - 1))
    return GroupFunction(n, scale * vals)


def position_weighted_sums(n: int) -> list[int]:
    """sum_j sigma(j) * j over positions j = 0..n-1, for every sigma."""
    perms = all_permutations(n)
    return [sum(v * j for j, v in enumerate(p)) for p in perms]


def ri_wilson_function(n: int) -> GroupFunction:
    """Wilson's random-insertion eigenfunction.

    f(sigma) = -n + 4/(n-1)^2 * sum_j sigma(j) j with positions 0..n-1.  It
    satisfies f * q_ri = (1 - 1/n) f and sum_sigma f(sigma)^2 = n! n^2/(n-1).
    """
    if n < 2:
        raise ValueError("needs n >= 2")
    sums = position_weighted_sums(n)
    vals = np.array([-n + 4.0 * s / (n - 1) ** 2 for s in sums])
    return GroupFunction(n, vals)


def eigenfunction_residual(f: GroupFunction, q: GroupDistribution, beta: float) -> float:
    """max_x |(f*q)(x) - beta f(x)|; ~0 certifies the eigenpair."""
    if f.n != q.n:
        raise ValueError("degree mismatch")
    conv = convolve(f.values, q.as_float())
    return float(np.max(np.abs(conv - beta * f.values)))


def square_gradient_sup(f: GroupFunction, q: GroupDistribution) -> float:
    """sup_x (1/2) sum_y |f(x) - f(y)|^2 K(x, y) with K(x, y) = q(x^-1 y)."""
    if f.n != q.n:
        raise ValueError("degree mismatch")
    q = q.as_float()
    acc = np.zeros_like(f.values)
    for table, w in _support_maps(q, inverse=False):
        acc += float(w) * (f.values - f.values[table]) ** 2
    return float(np.max(acc)) / 2.0


def dirichlet_form(q: GroupDistribution, f: GroupFunction) -> float:
    """E(f, f) = (1/2) sum_{x,y} (f(x)-f(y))^2 u(x) q(x^-1 y), u uniform."""
    if f.n != q.n:
        raise ValueError("degree mismatch")
    q = q.as_float()
    size = math.factorial(q.n)
    total = 0.0
    for table, w in _support_maps(q, inverse=False):
        total += float(w) * float(np.sum((f.values - f.values[table]) ** 2))
    return total / (2.0 * size)


def kernel_matrix(q: GroupDistribution) -> np.ndarray:
    """Dense K(x, y) = q(x^-1 y); symmetric whenever q is."""
    _guard(q.n, MAX_DENSE_N, "dense operator matrices")
    q = q.as_float()
    size = math.factorial(q.n)
    K = np.zeros((size, size))
    rows = np.arange(size)
    for table, w in _support_maps(q, inverse=False):
        K[rows, table] += float(w)
    return K


def operator_eigenvalues(q: GroupDistribution) -> np.ndarray:
    """All n! eigenvalues of convolution by q, descending."""
    K = kernel_matrix(q)
    vals = np.linalg.eigvalsh((K + K.T) / 2.0)
    return vals[::-1]


def comparison_gap(q: GroupDistribution, q_tilde: GroupDistribution, a: float) -> float:
    """Minimum eigenvalue of the quadratic form a*E_q - E_{q_tilde}.

    A non-negative value certifies E_{q_tilde} <= a * E_q.  Both Dirichlet
    forms are taken with the uniform reversible measure, i.e. the form matrix
    of E_p is (I - K_p)/|G|.
    """
    if q.n != q_tilde.n:
        raise ValueError("degree mismatch")
    _guard(q.n, MAX_DENSE_N, "comparison-form eigenproblems")
    size = math.factorial(q.n)
    eye = np.eye(size)
    form = (a * (eye - kernel_matrix(q)) - (eye - kernel_matrix(q_tilde))) / size
    vals = np.linalg.eigvalsh((form + form.T) / 2.0)
    return float(vals[0])
