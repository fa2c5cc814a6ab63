"""Sieve-backed arithmetic oracles.

A :class:`PrimeTable` answers, for every integer up to a fixed limit:
primality, the prime counting function pi(x), the Chebyshev summatory
function psi(x) = sum of log p over prime powers p^j <= x, the Moebius
function mu(n), and the von Mangoldt weight Lambda(n).  On top of the
table this module provides Legendre's factorial exponents
e_p(n!) = sum_i floor(n/p^i), the derived exponent of a prime in a
binomial coefficient, and the brute-force "count the distinct prime
divisors of C(n, k)" oracle that every identity in the package is
validated against.

The table is immutable after construction and safe to share between
threads; every query is pure.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import DomainError, OutOfRangeError

#: Default sieve size; enough for prime counts at arguments up to 10^7.
DEFAULT_LIMIT = 10_000_000

#: Hard budget: the table costs roughly 30 bytes per integer, so this
#: ceiling keeps construction under ~6 GB.
MAX_LIMIT = 200_000_000

_CHUNK = 1 << 20


def _floor_real(x) -> int:
    """Exact floor of an int, Fraction, or float argument.

    Fractions are floored with integer arithmetic so that endpoints such
    as 2000/3 are classified without any float rounding.
    """
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return x.numerator // x.denominator
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"argument must be finite, got {x!r}")
        return math.floor(x)
    raise DomainError(f"unsupported argument type {type(x).__name__}")


def integer_root(x: int, i: int) -> int:
    """Largest r >= 0 with r**i <= x, computed exactly."""
    if x < 0:
        raise DomainError("integer_root of a negative number")
    if i == 1:
        return x
    if i == 2:
        return math.isqrt(x)
    if x == 0:
        return 0
    r = int(round(x ** (1.0 / i)))
    while r > 0 and r ** i > x:
        r -= 1
    while (r + 1) ** i <= x:
        r += 1
    return r


class PrimeTable:
    """Immutable sieve table over [0, limit].

    Attributes
    ----------
    limit : int
        Largest integer the table can answer queries about.
    primality : numpy bool array
        ``primality[n]`` is True iff n is prime.
    pi_prefix : numpy int64 array
        ``pi_prefix[n]`` = number of primes <= n.
    lambda_values : numpy float64 array
        von Mangoldt weights: log p at prime powers p^j, 0 elsewhere.
    mu_values : numpy int8 array
        Moebius function values in {-1, 0, 1}.
    primes : numpy int64 array
        Ascending list of all primes <= limit.
    """

    __slots__ = ("limit", "primality", "pi_prefix", "lambda_values",
                 "mu_values", "psi_prefix", "primes")

    def __init__(self, limit: int):
        if limit < 2:
            raise DomainError(f"sieve limit must be >= 2, got {limit}")
        if limit > MAX_LIMIT:
            raise DomainError(
                f"sieve limit {limit} exceeds the memory budget ({MAX_LIMIT})")
        self.limit = int(limit)
        self.primality = _sieve(self.limit)
        self.pi_prefix = np.cumsum(self.primality, dtype=np.int64)
        self.primes = np.flatnonzero(self.primality).astype(np.int64)
        self.lambda_values = _von_mangoldt(self.limit, self.primes)
        self.mu_values = _moebius(self.limit, self.primes)
        self.psi_prefix = _psi_prefix(self.lambda_values)

    # -- scalar queries ------------------------------------------------

    def pi(self, x) -> int:
        """Number of primes <= x.

        Accepts ints, floats, and exact Fractions; the floor is taken
        with exact arithmetic, never through a float conversion.
        """
        v = _floor_real(x)
        if v > self.limit:
            raise OutOfRangeError(f"pi({x}) exceeds table limit {self.limit}")
        if v < 2:
            return 0
        return int(self.pi_prefix[v])

    def psi(self, x) -> float:
        """Chebyshev psi(x) = sum of Lambda(n) over n <= x, natural logs."""
        v = _floor_real(x)
        if v > self.limit:
            raise OutOfRangeError(f"psi({x}) exceeds table limit {self.limit}")
        if v < 2:
            return 0.0
        return float(self.psi_prefix[v])

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise OutOfRangeError(f"is_prime({n}) exceeds table limit {self.limit}")
        return n >= 2 and bool(self.primality[n])

    def mu(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise OutOfRangeError(f"mu({n}) outside [1, {self.limit}]")
        return int(self.mu_values[n])

    def von_mangoldt(self, n: int) -> float:
        if not 1 <= n <= self.limit:
            raise OutOfRangeError(f"Lambda({n}) outside [1, {self.limit}]")
        return float(self.lambda_values[n])

    # -- bulk helpers ----------------------------------------------------

    def primes_up_to(self, n: int) -> np.ndarray:
        """View of all primes <= n (ascending)."""
        if n > self.limit:
            raise OutOfRangeError(f"primes_up_to({n}) exceeds table limit {self.limit}")
        idx = int(np.searchsorted(self.primes, n, side="right"))
        return self.primes[:idx]

    def prime_count_between(self, lo: int, hi: int) -> int:
        """Number of primes in the half-open interval (lo, hi]."""
        lo = max(lo, 0)
        hi = min(hi, self.limit)
        if hi <= lo:
            return 0
        return int(self.pi_prefix[hi] - self.pi_prefix[lo])

    def __repr__(self) -> str:  # pragma: no cover
        return f"PrimeTable(limit={self.limit}, primes={len(self.primes)})"


def build_table(limit: int = DEFAULT_LIMIT) -> PrimeTable:
    """Construct a :class:`PrimeTable` for [0, limit]."""
    return PrimeTable(limit)


def _sieve(limit: int) -> np.ndarray:
    """Segmented sieve of Eratosthenes returning the primality mask."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    root = math.isqrt(limit)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for p in range(2, math.isqrt(root) + 1):
        if base[p]:
            base[p * p::p] = False
    base_primes = np.flatnonzero(base).tolist()
    if limit + 1 <= _CHUNK:
        for p in base_primes:
            flags[p * p::p] = False
        return flags
    # segment the strike loop so each pass stays cache resident
    for lo in range(0, limit + 1, _CHUNK):
        hi = min(lo + _CHUNK, limit + 1)
        for p in base_primes:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start < hi:
                flags[start:hi:p] = False
    return flags


def _von_mangoldt(limit: int, primes: np.ndarray) -> np.ndarray:
    lam = np.zeros(limit + 1, dtype=np.float64)
    lam[primes] = np.log(primes.astype(np.float64))
    root = math.isqrt(limit)
    for p in primes[primes <= root].tolist():
        lp = math.log(p)
        q = p * p
        while q <= limit:
            lam[q] = lp
            q *= p
    return lam


def _moebius(limit: int, primes: np.ndarray) -> np.ndarray:
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes.tolist():
        mu[p::p] *= -1
    root = math.isqrt(limit)
    for p in primes[primes <= root].tolist():
        mu[p * p::p * p] = 0
    return mu


def _psi_prefix(lam: np.ndarray) -> np.ndarray:
    """Cumulative sums of Lambda, accumulated in 80-bit extended precision.

    The worst-case rounding of the chunked extended-precision cumsum is
    below 1e-13 relative, comfortably inside the 1e-12 contract for psi.
    """
    out = np.empty(lam.shape, dtype=np.float64)
    carry = np.longdouble(0.0)
    for lo in range(0, len(lam), _CHUNK):
        hi = min(lo + _CHUNK, len(lam))
        c = np.cumsum(lam[lo:hi], dtype=np.longdouble)
        c += carry
        out[lo:hi] = c
        carry = c[-1]
    return out


# -- factorial and binomial exponents ----------------------------------


def _is_prime_int(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def legendre_exponent(p: int, n: int) -> int:
    """Exponent of the prime p in n!, via e_p(n!) = sum_i floor(n / p^i)."""
    if not _is_prime_int(p):
        raise DomainError(f"{p} is not prime")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def _legendre_raw(p: int, n: int) -> int:
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def binom_exponent(p: int, n: int, k: int) -> int:
    """Exponent of the prime p in C(n, k).

    Computed as e_p(n!) - e_p(k!) - e_p((n-k)!); the result always
    satisfies p**e <= n, which is asserted.
    """
    if not _is_prime_int(p):
        raise DomainError(f"{p} is not prime")
    if not 0 <= k <= n or n < 1:
        raise DomainError(f"need 0 <= k <= n with n >= 1, got n={n}, k={k}")
    e = _legendre_raw(p, n) - _legendre_raw(p, k) - _legendre_raw(p, n - k)
    assert p ** e <= n, (p, n, k, e)
    return e


def _binom_divisor_flags(table: PrimeTable, n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """(primes <= n, boolean "divides C(n,k)" per prime), fully vectorised.

    Uses the carry criterion: p divides C(n, k) iff some power p^i has
    floor(n/p^i) - floor(k/p^i) - floor((n-k)/p^i) = 1.
    """
    primes = table.primes_up_to(n)
    divides = np.zeros(len(primes), dtype=bool)
    i = 1
    while True:
        bound = integer_root(n, i)
        if bound < 2:
            break
        idx = int(np.searchsorted(primes, bound, side="right"))
        if idx == 0:
            break
        q = primes[:idx] ** i
        carries = (n // q) - (k // q) - ((n - k) // q)
        divides[:idx] |= carries > 0
        i += 1
    return primes, divides


def omega_binom_oracle(table: PrimeTable, n: int, k: int) -> tuple[int, np.ndarray]:
    """Ground truth for omega(C(n, k)): the count and the sorted array of
    distinct primes dividing C(n, k).

    Only primes <= n are enumerated; the coefficient itself is never
    factored (C(2000, 1000) has around 600 digits).
    """
    if not 0 <= k <= n or n < 1:
        raise DomainError(f"need 0 <= k <= n with n >= 1, got n={n}, k={k}")
    if n > table.limit:
        raise OutOfRangeError(f"n={n} exceeds table limit {table.limit}")
    if k == 0 or k == n:
        return 0, np.empty(0, dtype=np.int64)
    primes, divides = _binom_divisor_flags(table, n, k)
    hits = primes[divides]
    return len(hits), hits


def mobius_partial_sums(table: PrimeTable, k0: int) -> tuple[float, float]:
    """(sum of mu(d)/d, sum of mu(d)*log(d)/d) over d <= k0."""
    if not 1 <= k0 <= table.limit:
        raise OutOfRangeError(f"k0={k0} outside [1, {table.limit}]")
    d = np.arange(1, k0 + 1, dtype=np.float64)
    mu = table.mu_values[1:k0 + 1].astype(np.float64)
    ratio = mu / d
    s_plain = float(np.sum(ratio.astype(np.longdouble)))
    s_log = float(np.sum((ratio * np.log(d)).astype(np.longdouble)))
    return s_plain, s_log
