"""Exact enumeration of configuration classes and their statistics d(C), p(C).

A configuration of shape (k, l) is stored as the multiset of per-variable
column-multiplicity vectors: variable v contributes vector (m_{v,1}, ...,
m_{v,l}) where m_{v,j} counts occurrences of v in column j.  This determines
the k x l symbol matrix up to variable relabeling, and canonicalizing under
simultaneous column permutation gives exact isomorph rejection.

Validity:
  * every column's multiplicities sum to k,
  * no vector is everywhere positive (no variable in all columns),
  * no two columns agree across every vector (columns are distinct multisets),
  * repetition within a column and sharing across columns never mix: either
    every variable lives in a single column (separable) or every variable
    appears at most once per column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial

from .errors import CapExceeded

DEFAULT_CELL_CAP = 18   # k*l
DEFAULT_EXACT_CAP = 24  # d(C) for exhaustive p(C)
DEFAULT_L_CAP = 8


@dataclass(frozen=True, order=True)
class Configuration:
    vectors: tuple  # canonical sorted multiset of multiplicity vectors

    @property
    def l(self):
        return len(self.vectors[0])

    @property
    def k(self):
        return sum(v[0] for v in self.vectors)

    @property
    def d(self):
        return len(self.vectors)

    def columns(self):
        """Columns as sorted tuples of variable ids (0-based by vector order)."""
        cols = []
        for j in range(self.l):
            col = []
            for var, vec in enumerate(self.vectors):
                col.extend([var] * vec[j])
            cols.append(tuple(col))
        return tuple(cols)

    def is_separable(self):
        return all(sum(1 for x in v if x) == 1 for v in self.vectors)

    def delete_column_distinct(self, j):
        """Number of distinct variables left after deleting column j."""
        return sum(1 for v in self.vectors if any(x for i, x in enumerate(v) if i != j))

    def __repr__(self):
        letters = "abcdefghijklmnopqrstuvwxyz"
        cols = ["".join(letters[v] if v < 26 else f"v{v}" for v in col)
                for col in self.columns()]
        return f"Conf({'|'.join(cols)})"


def canonical(vectors):
    """Least representative over simultaneous column permutations."""
    l = len(vectors[0])
    best = None
    for sigma in permutations(range(l)):
        cand = tuple(sorted(tuple(v[j] for j in sigma) for v in vectors))
        if best is None or cand < best:
            best = cand
    return Configuration(best)


@dataclass(frozen=True)
class ConfStats:
    d: int
    p: Fraction


# ---------------------------------------------------------------------------
# enumeration

def _allowed_vectors(k, l):
    out = []
    for v in product(range(k + 1), repeat=l):
        # vectors that repeat within a column *and* span several columns can
        # never appear in a valid configuration, so prune them upfront
        if any(v) and min(v) == 0 and (max(v) <= 1 or sum(1 for x in v if x) == 1):
            out.append(v)
    return out


def _mixing_free(vectors):
    """Separable (single-column variables only) or multiplicity-free."""
    if all(sum(1 for x in v if x) == 1 for v in vectors):
        return True
    return all(max(v) <= 1 for v in vectors)


def _columns_distinct(vectors, l):
    for j1 in range(l):
        for j2 in range(j1 + 1, l):
            if all(v[j1] == v[j2] for v in vectors):
                return False
    return True


def enumerate_conf(k, l, cap=DEFAULT_CELL_CAP, max_vectors=None):
    """All configuration classes of shape (k, l), sorted."""
    if k * l > cap:
        raise CapExceeded(f"k*l = {k * l} exceeds cap {cap}")
    allowed = _allowed_vectors(k, l)
    found = set()
    chosen = []
    limit = max_vectors if max_vectors is not None else k * l

    def rec(start, remaining):
        if not any(remaining):
            if _columns_distinct(chosen, l) and _mixing_free(chosen):
                found.add(canonical(tuple(chosen)))
            return
        if len(chosen) >= limit:
            return
        for i in range(start, len(allowed)):
            v = allowed[i]
            if all(v[j] <= remaining[j] for j in range(l)):
                chosen.append(v)
                rec(i, tuple(remaining[j] - v[j] for j in range(l)))
                chosen.pop()

    rec(0, (k,) * l)
    return sorted(found)


def enumerate_conf_upto(h, l, cap=DEFAULT_CELL_CAP):
    out = []
    for k in range(1, h + 1):
        out.extend(enumerate_conf(k, l, cap=cap))
    return sorted(out)


def enumerate_sconf(h, l, cap=DEFAULT_CELL_CAP):
    """Separable classes only: no variable shared between columns."""
    return [c for c in enumerate_conf_upto(h, l, cap=cap) if c.is_separable()]


def enumerate_conf_sharp(h, d, l_cap=DEFAULT_L_CAP, cap=DEFAULT_CELL_CAP):
    """Configurations driving B_h^#[d] random coding: shapes (k, l), k <= h,
    l >= 2, with d(C) >= d+1-h+k and every column deletion leaving at most
    d-h+k distinct variables.  Column count is capped at l_cap (the family is
    finite; d(C) <= d+k bounds the vector count during enumeration)."""
    out = []
    for k in range(1, h + 1):
        for l in range(2, l_cap + 1):
            if k * l > cap:
                break
            if l > d + k:
                break  # every column needs a private variable, so l <= d(C) <= d+k
            if d + 1 - h + k > k * l:
                continue  # even all-distinct columns cannot reach d(C)
            for c in enumerate_conf(k, l, cap=cap, max_vectors=d + k):
                if c.d < d + 1 - h + k:
                    continue
                if all(c.delete_column_distinct(j) <= d - h + k for j in range(l)):
                    out.append(c)
    return sorted(out, key=lambda c: (c.k, c.l, c.vectors))


def cmax(h, l):
    """The all-distinct configuration: d = h*l."""
    vectors = []
    for j in range(l):
        e = tuple(1 if i == j else 0 for i in range(l))
        vectors.extend([e] * h)
    return canonical(tuple(vectors))


# ---------------------------------------------------------------------------
# statistics

def conf_stats(c: Configuration, cap=DEFAULT_EXACT_CAP) -> ConfStats:
    """Exact p(C) over iid uniform bits, by DP on column partial sums."""
    if c.d > cap:
        raise CapExceeded(f"d(C) = {c.d} exceeds exact-computation cap {cap}")
    l = c.l
    states = {(0,) * l: 1}
    for vec in c.vectors:
        nxt = {}
        for s, cnt in states.items():
            nxt[s] = nxt.get(s, 0) + cnt
            s1 = tuple(s[j] + vec[j] for j in range(l))
            nxt[s1] = nxt.get(s1, 0) + cnt
        states = nxt
    good = sum(cnt for s, cnt in states.items() if len(set(s)) == 1)
    return ConfStats(d=c.d, p=Fraction(good, 2**c.d))


def conf_stats_exhaustive(c: Configuration, cap=DEFAULT_EXACT_CAP) -> ConfStats:
    """Reference path: direct sum over all 2^d variable assignments."""
    if c.d > cap:
        raise CapExceeded(f"d(C) = {c.d} exceeds exact-computation cap {cap}")
    l, d = c.l, c.d
    good = 0
    for bits in range(2**d):
        sums = [0] * l
        for var, vec in enumerate(c.vectors):
            if (bits >> var) & 1:
                for j in range(l):
                    sums[j] += vec[j]
        if len(set(sums)) == 1:
            good += 1
    return ConfStats(d=d, p=Fraction(good, 2**d))


def _as_point(a):
    return a if isinstance(a, tuple) else (a,)


def conf_stats_general(c: Configuration, dist, cap=DEFAULT_EXACT_CAP) -> ConfStats:
    """p(C) when variables are iid draws from a finitely supported dist.

    `dist` is a sequence of (point, probability) pairs; points are integers
    or integer tuples, probabilities rational or float.  Equivalence stays
    the combinatorial one; only p(C) depends on the distribution.
    """
    support = [(_as_point(a), p) for a, p in dist]
    n0 = len(support[0][0])
    if c.d * n0 > 2 * cap:
        raise CapExceeded(f"d(C)*n0 = {c.d * n0} exceeds cap")
    l = c.l
    zero = tuple((0,) * n0 for _ in range(l))
    states = {zero: Fraction(1)}
    for vec in c.vectors:
        nxt = {}
        for s, pr in states.items():
            for point, pa in support:
                s1 = tuple(
                    tuple(s[j][t] + vec[j] * point[t] for t in range(n0))
                    for j in range(l))
                key = s1
                nxt[key] = nxt.get(key, 0) + pr * pa
        states = nxt
    p = sum((pr for s, pr in states.items() if len(set(s)) == 1), start=Fraction(0))
    return ConfStats(d=c.d, p=p)


def cmax_p_closed(d, g) -> Fraction:
    """p(C_max(d, g+1)) = 2^{-d(g+1)} * sum_i binom(d,i)^{g+1}, exactly."""
    total = sum(comb(d, i) ** (g + 1) for i in range(d + 1))
    return Fraction(total, 2 ** (d * (g + 1)))


def automorphism_count(c: Configuration) -> int:
    """Symmetries of C: column permutations fixing the vector multiset,
    times consistent variable permutations.  Used to turn injective
    variable-to-index assignments into unordered violation counts."""
    from collections import Counter

    total = 0
    counts = Counter(c.vectors)
    base = 1
    for mult in counts.values():
        base *= factorial(mult)
    for sigma in permutations(range(c.l)):
        permuted = Counter(tuple(v[j] for j in sigma) for v in c.vectors)
        if permuted == counts:
            total += base
    return total


def conf_to_json(c: Configuration, stats: ConfStats | None = None):
    rec = {"k": c.k, "l": c.l, "columns": [list(col) for col in c.columns()]}
    if stats is not None:
        rec["d"] = stats.d
        rec["p"] = f"{stats.p.numerator}/{stats.p.denominator}"
    return rec
