"""Renyi entropies, h-fold sums, second-order analysis of H_alpha(X+X) at the
uniform distribution, the two-point critical exponents, and the majorization
calculus used for the weighted-bit-sum power inequality.

Distributions are finitely supported with integer or integer-tuple points;
probabilities stay exact Fractions whenever the inputs are rational, with
floats entering only inside logarithms.  Unnormalized non-negative sequences
(plain tuples) are the currency of the majorization operators, which do not
preserve total mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import CapExceeded, InvalidDistribution, InvalidParams

DEFAULT_SUPPORT_CAP = 2**20
FLOAT_MASS_TOL = 1e-12
SHANNON_ALPHA_TOL = 1e-9


# ---------------------------------------------------------------------------
# distributions

@dataclass(frozen=True)
class Distribution:
    """Finitely supported distribution; points are ints or int tuples."""

    items: tuple  # tuple of (point, probability), points unique

    def __post_init__(self):
        pts = [a for a, _ in self.items]
        if len(set(pts)) != len(pts):
            raise InvalidDistribution("duplicate support points")
        total = sum(p for _, p in self.items)
        if any(p < 0 for _, p in self.items):
            raise InvalidDistribution("negative probability")
        if all(isinstance(p, (int, Fraction)) for _, p in self.items):
            if total != 1:
                raise InvalidDistribution(f"total mass {total} != 1")
        elif abs(total - 1) > FLOAT_MASS_TOL:
            raise InvalidDistribution(f"total mass {total} != 1")

    def probs(self):
        return tuple(p for _, p in self.items)

    def support(self):
        return tuple(a for a, _ in self.items)


def make_distribution(pairs) -> Distribution:
    """Drop zero-mass points, merge nothing, keep insertion-free sorted order."""
    items = tuple(sorted((a, p) for a, p in pairs if p != 0))
    return Distribution(items)


def uniform_bits(n0) -> Distribution:
    """Uniform distribution on {0,1}^n0; points are ints for n0=1, tuples else."""
    q = Fraction(1, 2**n0)
    if n0 == 1:
        return make_distribution([(0, q), (1, q)])
    return make_distribution([(tuple(b), q) for b in product((0, 1), repeat=n0)])


def from_probs(probs) -> Distribution:
    """Distribution on points 0..len-1 with the given probabilities."""
    return make_distribution(list(enumerate(probs)))


def _point_add(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


# ---------------------------------------------------------------------------
# entropy

def renyi(dist: Distribution, alpha) -> float:
    """H_alpha in bits; alpha in [0, inf], with limit branches at 1 and inf."""
    if alpha < 0:
        raise InvalidParams("alpha must be >= 0")
    probs = [p for p in dist.probs() if p > 0]
    if alpha == 0:
        return math.log2(len(probs))
    if alpha == math.inf:
        return -math.log2(float(max(probs)))
    if abs(alpha - 1) <= SHANNON_ALPHA_TOL:
        return -sum(float(p) * math.log2(float(p)) for p in probs)
    if alpha == int(alpha) and all(isinstance(p, (int, Fraction)) for p in probs):
        total = sum(Fraction(p) ** int(alpha) for p in probs)
        return (math.log2(total.numerator) - math.log2(total.denominator)) / (1 - alpha)
    total = sum(float(p) ** alpha for p in probs)
    return math.log2(total) / (1 - alpha)


def convolve(d1: Distribution, d2: Distribution, cap=DEFAULT_SUPPORT_CAP) -> Distribution:
    out = {}
    for a, pa in d1.items:
        for b, pb in d2.items:
            s = _point_add(a, b)
            out[s] = out.get(s, 0) + pa * pb
    if len(out) > cap:
        raise CapExceeded(f"support size {len(out)} exceeds cap {cap}")
    return make_distribution(out.items())


def hfold(dist: Distribution, h, cap=DEFAULT_SUPPORT_CAP) -> Distribution:
    """Distribution of the sum of h independent copies."""
    if h < 1:
        raise InvalidParams("h must be >= 1")
    out = dist
    for _ in range(h - 1):
        out = convolve(out, dist, cap=cap)
    return out


# ---------------------------------------------------------------------------
# second-order analysis of f(p) = sum_z c_z^alpha at the uniform distribution,
# where c_z = sum_{x+y=z} p_x p_y over x, y in {0,1}^n

def sum_powers_f(p, alpha, n) -> float:
    """f(p) for a probability vector p indexed by bitmasks 0..2^n-1."""
    size = 1 << n
    c = {}
    for x in range(size):
        px = p[x]
        for y in range(size):
            z = tuple(((x >> i) & 1) + ((y >> i) & 1) for i in range(n))
            c[z] = c.get(z, 0.0) + px * p[y]
    return sum(cz**alpha for cz in c.values())


def hessian_entry(n, alpha, d) -> float:
    """Second derivative of f at uniform for points at Hamming distance d."""
    if not 0 <= d <= n:
        raise InvalidParams(f"distance {d} outside 0..{n}")
    first = 4 * alpha * (alpha - 1) * (4 + 2.0**alpha) ** (n - d) * 2.0 ** (alpha * d - 2 * alpha * n)
    second = 2 * alpha * (2.0**d * 2.0 ** (-2 * n)) ** (alpha - 1)
    return first + second


def hessian_matrix(n, alpha) -> np.ndarray:
    size = 1 << n
    by_distance = [hessian_entry(n, alpha, d) for d in range(n + 1)]
    mat = np.empty((size, size))
    for x in range(size):
        for y in range(size):
            mat[x, y] = by_distance[(x ^ y).bit_count()]
    return mat


def g_alpha(n, alpha, m) -> float:
    """Definiteness margin of the parity quadratic form at m = n (the only
    weight where this two-term form equals the full shell sum)."""
    return (1 - 2.0 ** (alpha - 1)) ** m + (1 + 2.0 ** (alpha - 2)) ** (n - m) * (2 * alpha - 2)


def quadratic_form_closed(n, alpha, m) -> float:
    """v^t A v for the parity vector v_x = (-1)^{x_1+...+x_m}, in closed form.

    Summing A over Hamming shells against the parity character turns each
    coordinate into a factor (a - b) on the m parity coordinates and (a + b)
    elsewhere, for each of the two terms of the Hessian entry.
    """
    if not 1 <= m <= n:
        raise InvalidParams(f"m = {m} outside 1..{n}")
    first = (4 * alpha * (alpha - 1) * 2.0 ** (-2 * alpha * n)
             * 4.0**m * (4 + 2.0 ** (alpha + 1)) ** (n - m))
    second = (2 * alpha * 2.0 ** (-2 * n * (alpha - 1))
              * (1 - 2.0 ** (alpha - 1)) ** m * (1 + 2.0 ** (alpha - 1)) ** (n - m))
    return 2.0**n * (first + second)


def parity_vector(n, m) -> np.ndarray:
    size = 1 << n
    mask = (1 << m) - 1
    return np.array([(-1.0) ** (x & mask).bit_count() for x in range(size)])


def local_max_h(alpha) -> float:
    """h(alpha) = 2*alpha - 1 - 2^(alpha-1), the definiteness margin of g_alpha."""
    return 2 * alpha - 1 - 2.0 ** (alpha - 1)


# ---------------------------------------------------------------------------
# two-point critical exponents

def _bisect(func, lo, hi, tol=1e-10):
    flo = func(lo)
    if flo == 0:
        return lo
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if (func(mid) > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def critical_alphas(tol=1e-10):
    """Roots of 2^a*a - 4a + 2 in [1.1, 2] and 2^a - 4a + 2 in [3, 4]."""
    low = _bisect(lambda a: 2.0**a * a - 4 * a + 2, 1.1, 2.0, tol)
    high = _bisect(lambda a: 2.0**a - 4 * a + 2, 3.0, 4.0, tol)
    return low, high


def sidon_two_point(p, alpha):
    """(f(p), f'(1/2), f''(1/2)) for f(p) = p^{2a} + (2p(1-p))^a + (1-p)^{2a}."""
    if not 0 <= p <= 1:
        raise InvalidParams("p must lie in [0, 1]")
    value = p ** (2 * alpha) + (2 * p * (1 - p)) ** alpha + (1 - p) ** (2 * alpha)
    second = -(2.0 ** (3 - 2 * alpha)) * (2.0**alpha - 4 * alpha + 2) * alpha
    return value, 0.0, second


# ---------------------------------------------------------------------------
# searches for uniform-optimality of H_alpha(X^{(h)})

@dataclass(frozen=True)
class SearchReport:
    n0: int
    alpha: float
    h: int
    trials: int
    seed: int
    uniform_value: float
    best_value: float
    best_probs: tuple
    gap: float          # uniform_value - best non-uniform value found
    counterexample: bool
    sampling_law: str = "dirichlet-uniform-simplex"


def _bit_points(n0):
    if n0 == 1:
        return (0, 1)
    return tuple(tuple(b) for b in product((0, 1), repeat=n0))


def _entropy_of_probs(probs, points, alpha, h):
    dist = make_distribution([(a, p) for a, p in zip(points, probs) if p > 0])
    return renyi(hfold(dist, h), alpha)


def uniform_optimality_search(n0, alpha, h, trials, seed) -> SearchReport:
    """Dirichlet-uniform random distributions plus parity perturbations of
    uniform; reports the best H_alpha(h-fold sum) found against uniform's."""
    points = _bit_points(n0)
    size = len(points)
    uniform_value = _entropy_of_probs([1.0 / size] * size, points, alpha, h)
    rng = np.random.Generator(np.random.Philox(key=seed))
    best_value = -math.inf
    best_probs = None
    for _ in range(trials):
        probs = rng.dirichlet(np.ones(size))
        value = _entropy_of_probs(probs, points, alpha, h)
        if value > best_value:
            best_value, best_probs = value, tuple(probs)
    for m in range(1, n0 + 1):
        direction = parity_vector(n0, m) / size
        for eps in (1e-2, 1e-3, 1e-4):
            probs = np.full(size, 1.0 / size) + eps * direction
            if probs.min() < 0:
                continue
            value = _entropy_of_probs(probs, points, alpha, h)
            if value > best_value:
                best_value, best_probs = value, tuple(probs)
    gap = uniform_value - best_value
    return SearchReport(n0=n0, alpha=alpha, h=h, trials=trials, seed=seed,
                        uniform_value=uniform_value, best_value=best_value,
                        best_probs=best_probs, gap=gap,
                        counterexample=gap < -1e-12)


def perturbation_witness(n, alpha, tol=1e-12):
    """Golden-section line search for eps > 0 along the full parity direction
    that increases H_alpha(X+X) over uniform on {0,1}^n (exists for alpha > 2
    and odd n).  Returns (eps, uniform entropy, perturbed entropy)."""
    size = 1 << n
    direction = parity_vector(n, n)
    uniform = [1.0 / size] * size
    h_uniform = math.log2(sum_powers_f(uniform, alpha, n)) / (1 - alpha)

    def objective(eps):
        p = [1.0 / size + eps * v for v in direction]
        return math.log2(sum_powers_f(p, alpha, n)) / (1 - alpha)

    lo, hi = 0.0, 1.0 / size  # keep all coordinates non-negative
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = objective(c), objective(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = objective(d)
    eps = (a + b) / 2
    return eps, h_uniform, objective(eps)


# ---------------------------------------------------------------------------
# majorization calculus on non-negative finitely supported sequences (tuples)

def rearrange_T(s) -> tuple:
    """Nonincreasing sort."""
    return tuple(sorted(s, reverse=True))


def rearrange_S(s) -> tuple:
    """Symmetric decreasing rearrangement: ... T4 T2 T0 T1 T3 ..."""
    t = rearrange_T(s)
    return tuple(reversed(t[0::2])) + t[1::2]


def shift_add_C(s, c) -> tuple:
    """(p_a + p_{a-c})_{a>=0} with p_i = 0 outside the given range."""
    if c == 0:
        raise InvalidParams("c must be nonzero")
    s = tuple(s)
    length = len(s) + max(c, 0)
    out = []
    for a in range(length):
        val = s[a] if a < len(s) else 0
        shifted = a - c
        if 0 <= shifted < len(s):
            val = val + s[shifted]
        out.append(val)
    return tuple(out)


def majorized_by(p, q) -> bool:
    """True iff p is majorized by q: all prefix sums of T(p) are <= T(q)'s."""
    tp, tq = rearrange_T(p), rearrange_T(q)
    length = max(len(tp), len(tq))
    run_p = run_q = 0
    for i in range(length):
        run_p += tp[i] if i < len(tp) else 0
        run_q += tq[i] if i < len(tq) else 0
        if run_p > run_q:
            return False
    return True


def weighted_bit_sum(coeffs) -> tuple:
    """Exact law of sum(c_i * X_i) over iid uniform bits, as (P(=a))_{a>=0}."""
    total = sum(coeffs)
    probs = [Fraction(0)] * (total + 1)
    probs[0] = Fraction(1)
    for c in coeffs:
        if c < 1:
            raise InvalidParams("coefficients must be positive integers")
        nxt = [Fraction(0)] * (total + 1)
        for a, pr in enumerate(probs):
            if pr:
                nxt[a] += pr / 2
                nxt[a + c] += pr / 2
        probs = nxt
    return tuple(probs)
