"""Exact interval decomposition of the prime divisors of C(n, k).

The set {p prime : p divides C(n, k)} equals the primes p for which some
power p^i lands in one of finitely many half-open intervals with rational
endpoints.  Writing e_p for the exponent of p, the criterion

    p | C(n, k)  <=>  exists i with
        floor(k/p^i) = j - 1,  floor((n-k)/p^i) = f,  floor(n/p^i) = f + j

pins (j, f) per witness power and turns into two interval families per
root level i (all endpoint arithmetic exact):

  * branch A, indexed by (j, f) with
    f in [floor((n/k)(j-1)) - j + 1, floor((n/k)j) - j - 1]:
        interval  ((n-k)/(f+1), n/(f+j)]
  * branch B, indexed by j with n*j not divisible by k, f = floor(nj/k) - j:
        interval  (k/j, n/floor(nj/k)]

membership meaning lower < p^i <= upper.  For each fixed root level the
intervals are pairwise disjoint.

Everything here is exact: endpoints are `fractions.Fraction`s, membership
compares p^i against the un-rooted bounds by cross multiplication, and
floored "canonical" endpoints come from integer division.  A vectorised
integer-only fast path backs the bulk equivalence sweeps against the
sieve oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, OutOfRangeError
from .primes import PrimeTable, _binom_divisor_flags, integer_root

#: Exact rational endpoints; stored in lowest terms, compared exactly.
Rational = Fraction

BRANCH_A = "A"
BRANCH_B = "B"


@dataclass(frozen=True)
class DivisorInterval:
    """One half-open interval (lower, upper] at a given root level.

    A prime p belongs iff lower < p**root_index <= upper.  `f` is None
    for branch-B intervals, whose index is j alone.
    """
    lower: Fraction
    upper: Fraction
    root_index: int
    branch: str
    j: int
    f: int | None

    def __post_init__(self):
        if not self.lower < self.upper:
            raise DomainError(
                f"degenerate interval ({self.lower}, {self.upper}] emitted; "
                "this indicates an enumeration bug")

    def contains_power(self, p: int) -> bool:
        """Exact test lower < p**root_index <= upper."""
        q = p ** self.root_index
        return self.lower < q <= self.upper


@dataclass(frozen=True)
class CanonicalInterval:
    """Floored integer form (lower, upper]; prime-membership equivalent
    to the rational original.  `empty` flags floor(a) == floor(b), i.e.
    no integer at all lies inside."""
    lower: int
    upper: int
    empty: bool


class Decomposition:
    """The full interval family for one pair (n, k), grouped by root level.

    ``levels[i]`` (1-based mapping) holds the intervals at root level i,
    ordered by descending lower endpoint.  Intervals at a fixed level are
    disjoint; across levels the same prime may be witnessed repeatedly,
    so membership is the union over all levels.
    """

    def __init__(self, n: int, k: int, levels: dict[int, tuple[DivisorInterval, ...]]):
        self.n = n
        self.k = k
        self.levels = levels
        self.max_root_index = 0
        for i, ivs in levels.items():
            for iv in ivs:
                fl = iv.lower.numerator // iv.lower.denominator
                fu = iv.upper.numerator // iv.upper.denominator
                if fu >= 2 and fu > fl:
                    self.max_root_index = max(self.max_root_index, i)
                    break
        # ascending endpoint index per level, for log-time membership
        self._asc = {
            i: sorted(ivs, key=lambda iv: iv.lower)
            for i, ivs in levels.items()
        }

    def intervals_at(self, i: int) -> tuple[DivisorInterval, ...]:
        return self.levels.get(i, ())

    def all_intervals(self) -> list[DivisorInterval]:
        out: list[DivisorInterval] = []
        for i in sorted(self.levels):
            out.extend(self.levels[i])
        return out

    def prime_divides(self, p: int) -> bool:
        """True iff some interval at some root level contains p^i.

        Disjointness per level means at most one interval can contain a
        given power: binary search for the largest lower endpoint < p^i.
        """
        for i, asc in self._asc.items():
            if not asc:
                continue
            q = p ** i
            lo_idx, hi_idx = 0, len(asc)
            while lo_idx < hi_idx:
                mid = (lo_idx + hi_idx) // 2
                if asc[mid].lower < q:
                    lo_idx = mid + 1
                else:
                    hi_idx = mid
            if lo_idx and q <= asc[lo_idx - 1].upper:
                return True
        return False

    def to_json_dict(self) -> dict:
        """Wire format: {n, k, levels: [{i, intervals: [...]}]} with exact
        numerator/denominator endpoint pairs."""
        levels = []
        for i in sorted(self.levels):
            ivs = []
            for iv in self.levels[i]:
                rec = {
                    "lower": {"num": iv.lower.numerator, "den": iv.lower.denominator},
                    "upper": {"num": iv.upper.numerator, "den": iv.upper.denominator},
                    "branch": iv.branch,
                    "j": iv.j,
                }
                if iv.f is not None:
                    rec["f"] = iv.f
                ivs.append(rec)
            levels.append({"i": i, "intervals": ivs})
        return {"n": self.n, "k": self.k, "levels": levels}

    def __repr__(self) -> str:  # pragma: no cover
        total = sum(len(v) for v in self.levels.values())
        return (f"Decomposition(n={self.n}, k={self.k}, "
                f"levels={len(self.levels)}, intervals={total})")


# -- enumeration -------------------------------------------------------


def _branch_a_params(n: int, k: int, d_max: int):
    """Scalar (j, f) enumeration for branch A, keeping only pairs whose
    interval upper endpoint n/(f+j) can hold a power >= 2^i, i.e.
    f + j <= d_max = floor(n / 2^i)."""
    j = 1
    while True:
        f_lo = (n * (j - 1)) // k - j + 1
        if f_lo + j > d_max:      # minimal f+j for this j; nondecreasing in j
            return
        f_hi = min((n * j) // k - j - 1, d_max - j)
        for f in range(f_lo, f_hi + 1):
            yield j, f
        j += 1


def _branch_b_params(n: int, k: int, d_max: int):
    """Scalar (j, t) enumeration for branch B, t = floor(nj/k) <= d_max,
    restricted to n*j not divisible by k."""
    j = 1
    while True:
        t = (n * j) // k
        if t > d_max:             # t nondecreasing in j
            return
        if (n * j) % k:
            yield j, t
        j += 1


def decompose(n: int, k: int) -> Decomposition:
    """Materialise the interval decomposition of {p : p | C(n, k)}.

    Root levels run from 1 up to floor(log2 n); at level i intervals whose
    upper endpoint is below 2^i are omitted (no prime power fits).  The
    cases k = 0 and k = n yield an empty decomposition since C(n, k) = 1.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if k < 0 or k > n:
        raise DomainError(f"k must satisfy 0 <= k <= n, got k={k}, n={n}")
    if k == 0 or k == n:
        return Decomposition(n, k, {})
    levels: dict[int, tuple[DivisorInterval, ...]] = {}
    i = 1
    while (1 << i) <= n:
        d_max = n >> i
        ivs = [
            DivisorInterval(Fraction(n - k, f + 1), Fraction(n, f + j), i, BRANCH_A, j, f)
            for j, f in _branch_a_params(n, k, d_max)
        ]
        ivs.extend(
            DivisorInterval(Fraction(k, j), Fraction(n, t), i, BRANCH_B, j, None)
            for j, t in _branch_b_params(n, k, d_max)
        )
        ivs.sort(key=lambda iv: iv.lower, reverse=True)
        levels[i] = tuple(ivs)
        i += 1
    return Decomposition(n, k, levels)


def prime_divides(dec: Decomposition, p: int) -> bool:
    """Exact membership of the prime p in the decomposition (union over
    root levels)."""
    return dec.prime_divides(p)


def canonical_integer_form(dec: Decomposition) -> dict[int, list[CanonicalInterval]]:
    """Floored endpoint display form, per root level.

    (a, b] maps to (floor(a), floor(b)]; since primes are integers the two
    forms have identical prime membership.  Degenerate floored intervals
    are kept but flagged."""
    out: dict[int, list[CanonicalInterval]] = {}
    for i in sorted(dec.levels):
        rows = []
        for iv in dec.levels[i]:
            lo = iv.lower.numerator // iv.lower.denominator
            hi = iv.upper.numerator // iv.upper.denominator
            rows.append(CanonicalInterval(lo, hi, empty=lo == hi))
        out[i] = rows
    return out


def verify_disjoint(dec: Decomposition, i: int) -> tuple[DivisorInterval, DivisorInterval] | None:
    """None if the intervals at root level i are pairwise disjoint,
    otherwise the first overlapping pair in ascending order.  An overlap
    would be an implementation bug, so this never raises."""
    asc = sorted(dec.intervals_at(i), key=lambda iv: iv.lower)
    for a, b in zip(asc, asc[1:]):
        if not a.upper <= b.lower:
            return a, b
    return None


# -- vectorised integer fast path --------------------------------------


def _level_range_arrays(n: int, k: int, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Floored endpoints (lo, hi] of every interval at root level i,
    as int64 arrays.  Mirrors the scalar enumeration exactly."""
    empty = np.empty(0, dtype=np.int64)
    d_max = n >> i
    if d_max < 1 or k == 0 or k == n:
        return empty, empty
    jmax_a = (k * d_max - 1) // n + 1
    j = np.arange(1, jmax_a + 1, dtype=np.int64)
    f0 = (n * (j - 1)) // k - j + 1
    f1 = np.minimum((n * j) // k - j - 1, d_max - j)
    lengths = np.maximum(f1 - f0 + 1, 0)
    total = int(lengths.sum())
    j_rep = np.repeat(j, lengths)
    starts = np.concatenate(([0], np.cumsum(lengths)[:-1]))
    f = (np.arange(total, dtype=np.int64) - np.repeat(starts, lengths)) + np.repeat(f0, lengths)
    lo_a = (n - k) // (f + 1)
    hi_a = n // (f + j_rep)

    jmax_b = ((d_max + 1) * k - 1) // n
    jb = np.arange(1, jmax_b + 1, dtype=np.int64)
    nj = n * jb
    t = nj // k
    keep = (nj % k) != 0
    lo_b = k // jb[keep]
    hi_b = n // t[keep]
    return np.concatenate([lo_a, lo_b]), np.concatenate([hi_a, hi_b])


def _integer_root_vec(arr: np.ndarray, i: int) -> np.ndarray:
    """Vectorised exact floor of the i-th root of nonnegative int64s."""
    if i == 1:
        return arr
    r = np.floor(arr.astype(np.float64) ** (1.0 / i)).astype(np.int64)
    np.maximum(r, 0, out=r)
    for _ in range(3):
        r[(r > 0) & (r ** i > arr)] -= 1
        r[(r + 1) ** i <= arr] += 1
    return r


def integer_membership_mask(n: int, k: int, level: int | None = None) -> np.ndarray:
    """Boolean mask over [0, n]: which integers are witnessed as i-th
    roots of interval members.  ``level=None`` takes the union over all
    root levels; ``level=i`` restricts to one level.

    Restricted to primes this is exactly the divisor set of C(n, k)."""
    acc = np.zeros(n + 2, dtype=np.int64)
    levels = [level] if level is not None else range(1, max(n.bit_length() - 1, 0) + 1)
    for i in levels:
        if (1 << i) > n:
            continue
        lo, hi = _level_range_arrays(n, k, i)
        if len(lo) == 0:
            continue
        rlo = _integer_root_vec(lo, i)
        rhi = _integer_root_vec(hi, i)
        acc += np.bincount(rlo + 1, minlength=n + 2)[:n + 2]
        acc -= np.bincount(rhi + 1, minlength=n + 2)[:n + 2]
    return np.cumsum(acc)[:n + 1] > 0


def equivalence_check(n: int, k: int, table: PrimeTable) -> int | None:
    """Compare decomposition membership against the sieve oracle for every
    prime p <= n.  Returns None on agreement, otherwise the smallest
    disagreeing prime."""
    if n < 1 or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n with n >= 1, got n={n}, k={k}")
    if n > table.limit:
        raise OutOfRangeError(f"n={n} exceeds table limit {table.limit}")
    if k == 0 or k == n:
        member = np.zeros(n + 1, dtype=bool)
    else:
        member = integer_membership_mask(n, k)
    primes, oracle = _binom_divisor_flags(table, n, k)
    via_intervals = member[primes]
    disagree = via_intervals != oracle
    if disagree.any():
        return int(primes[int(np.argmax(disagree))])
    return None


def level_prime_count(table: PrimeTable, n: int, k: int, i: int) -> int:
    """Number of primes witnessed by the level-i intervals, via prime
    counts at the floored endpoints (exact: the level is disjoint)."""
    lo, hi = _level_range_arrays(n, k, i)
    if len(lo) == 0:
        return 0
    rlo = _integer_root_vec(lo, i)
    rhi = _integer_root_vec(hi, i)
    return int((table.pi_prefix[np.minimum(rhi, table.limit)]
                - table.pi_prefix[np.minimum(rlo, table.limit)]).sum())
