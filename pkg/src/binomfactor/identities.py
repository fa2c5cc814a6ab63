"""Prime-count and psi-sum identities with exact residual accounting.

Two families of identities are evaluated here, always against the sieve
oracle:

* omega(C(nk, mk)) versus the prime-count series
  sum_j [pi(nk/j) - pi((n-m)k/j) - pi(mk/j)], whose difference is exactly
  the number of primes witnessed only at root levels >= 2 of the interval
  decomposition (plus a regrouping correction that the tests show to be
  identically zero);

* log of a balanced factorial ratio versus the psi series
  sum_i [psi(n1 k/i) + ... - psi(m1 k/i) - ...], an exact identity whose
  floating residual is pure rounding, and versus the linear-growth form
  k * log(prod n^n / prod m^m) whose residual is O(log k).

Also: the alternating sum sum_i (-1)^(i+1) pi(x/i), whose ratio against
x/log x tends to log 2, and the Bertrand sweep pi(2n) > pi(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .decomposition import integer_membership_mask, level_prime_count
from .errors import DomainError, OutOfRangeError
from .primes import PrimeTable, _binom_divisor_flags, _floor_real

IDENTITY_OMEGA_PI = "omega_pi"
IDENTITY_OMEGA_PI_GROUPED = "omega_pi_grouped"
IDENTITY_FACTORIAL_RATIO_PSI = "factorial_ratio_psi"
IDENTITY_ALTERNATING_PI = "alternating_pi"


@dataclass
class IdentityReport:
    """lhs/rhs/residual record for one identity instance.

    ``normalization`` names the scaling applied to ``normalized_residual``
    so the number is never reported bare.
    """
    identity_id: str
    params: dict
    lhs: float
    rhs: float
    residual: float
    normalized_residual: float | None = None
    normalization: str | None = None
    details: dict = field(default_factory=dict)

    def to_row(self) -> dict:
        row = {
            "identity_id": self.identity_id,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "normalized_residual": self.normalized_residual,
            "normalization": self.normalization,
        }
        row.update(self.details)
        return row


@dataclass(frozen=True)
class FactorialRatioSpec:
    """Multipliers (n_1..n_j ; m_1..m_l) for the balanced factorial ratio
    (n_1 k)! ... (n_j k)! / ((m_1 k)! ... (m_l k)!).  Balance means the
    two multiplier sums agree, which is validated at construction."""
    numerator_multipliers: tuple[int, ...]
    denominator_multipliers: tuple[int, ...]

    def __post_init__(self):
        ns, ms = self.numerator_multipliers, self.denominator_multipliers
        if not ns or not ms:
            raise DomainError("both multiplier lists must be nonempty")
        if any(v < 1 for v in ns + ms):
            raise DomainError("multipliers must be positive integers")
        if sum(ns) != sum(ms):
            raise DomainError(
                f"unbalanced spec: sum{ns} = {sum(ns)} != sum{ms} = {sum(ms)}")

    @property
    def max_multiplier(self) -> int:
        return max(self.numerator_multipliers + self.denominator_multipliers)


def _check_pair(n: int, m: int, k: int, table: PrimeTable) -> None:
    if not (n >= m >= 1):
        raise DomainError(f"need n >= m >= 1, got n={n}, m={m}")
    if k < 1:
        raise DomainError(f"need k >= 1, got k={k}")
    if n * k > table.limit:
        raise OutOfRangeError(f"n*k = {n * k} exceeds table limit {table.limit}")


def omega_pi_series(n: int, m: int, k: int, table: PrimeTable) -> int:
    """sum_j [pi(nk/j) - pi((n-m)k/j) - pi(mk/j)], summed until every
    argument drops below 2.  All pi arguments are exact rationals, floored
    by integer division."""
    _check_pair(n, m, k, table)
    big, small, gap = n * k, m * k, (n - m) * k
    j = np.arange(1, big // 2 + 1, dtype=np.int64)
    pp = table.pi_prefix
    return int((pp[big // j] - pp[gap // j] - pp[small // j]).sum())


def omega_pi_series_grouped(n: int, m: int, k: int, table: PrimeTable) -> int:
    """The same series in its grouped form: prime counts at the endpoints
    of the root-level-1 intervals of the decomposition of (nk, mk).  Equals
    the number of primes those intervals contain."""
    _check_pair(n, m, k, table)
    return level_prime_count(table, n * k, m * k, 1)


def omega_identity_report(n: int, m: int, k: int, table: PrimeTable) -> IdentityReport:
    """Oracle omega(C(nk, mk)) against the prime-count series, with the
    residual broken into exactly computed parts:

    * ``deep_level_primes``: primes dividing C(nk, mk) that no level-1
      interval witnesses (they sit in [1, sqrt(nk)]);
    * ``regroup_correction``: series minus grouped form (identically 0,
      since dropped terms all have pi-argument < 2).

    residual == deep_level_primes - regroup_correction holds exactly.
    """
    _check_pair(n, m, k, table)
    big, small = n * k, m * k
    primes, divides = _binom_divisor_flags(table, big, small)
    lhs = int(divides.sum())
    rhs = omega_pi_series(n, m, k, table)
    grouped = omega_pi_series_grouped(n, m, k, table)
    if small in (0, big):
        level1 = 0
    else:
        level1 = int(integer_membership_mask(big, small, level=1)[primes].sum())
    deep = lhs - level1
    regroup = rhs - grouped
    residual = lhs - rhs
    assert residual == deep - regroup, (n, m, k, residual, deep, regroup)
    return IdentityReport(
        identity_id=IDENTITY_OMEGA_PI,
        params={"n": n, "m": m, "k": k},
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        normalized_residual=residual / math.sqrt(k),
        normalization="residual/sqrt(k)",
        details={
            "grouped_rhs": grouped,
            "deep_level_primes": deep,
            "regroup_correction": regroup,
        },
    )


# -- factorial ratios ---------------------------------------------------

_LOGFACT = np.zeros(1, dtype=np.float64)


def log_factorial_prefix(limit: int) -> np.ndarray:
    """log(0!), log(1!), ..., log(limit!) as a float64 array.

    Accumulated from the logs themselves in 80-bit extended precision
    (never Stirling), so residuals of exact identities stay pure rounding.
    The array is cached and grown on demand; treat the view as read-only.
    """
    global _LOGFACT
    if len(_LOGFACT) <= limit:
        x = np.arange(0, limit + 1, dtype=np.float64)
        x[0] = 1.0
        _LOGFACT = np.cumsum(np.log(x.astype(np.longdouble))).astype(np.float64)
    return _LOGFACT[:limit + 1]


def _psi_series_one(table: PrimeTable, c: int) -> np.longdouble:
    """sum_i psi(c / i) over i >= 1 until the argument drops below 2."""
    if c < 2:
        return np.longdouble(0.0)
    i = np.arange(1, c // 2 + 1, dtype=np.int64)
    return np.sum(table.psi_prefix[c // i], dtype=np.longdouble)


def factorial_ratio_report(spec: FactorialRatioSpec, k: int, table: PrimeTable) -> IdentityReport:
    """Evaluate the balanced factorial ratio identity at k.

    lhs   = sum log(n_i k)! - sum log(m_i k)!   (compensated log sums)
    rhs   = the psi series; agrees with lhs up to float rounding
            (<= 1e-9 relative).
    Also records the linear-growth value k*log(prod n^n / prod m^m) and
    its residual, which grows like log k.
    """
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    if spec.max_multiplier * k > table.limit:
        raise OutOfRangeError(
            f"max argument {spec.max_multiplier * k} exceeds table limit {table.limit}")
    lf = log_factorial_prefix(spec.max_multiplier * k)
    lhs = math.fsum(
        [float(lf[v * k]) for v in spec.numerator_multipliers]
        + [-float(lf[v * k]) for v in spec.denominator_multipliers])
    acc = np.longdouble(0.0)
    for v in spec.numerator_multipliers:
        acc += _psi_series_one(table, v * k)
    for v in spec.denominator_multipliers:
        acc -= _psi_series_one(table, v * k)
    rhs = float(acc)
    growth = k * math.fsum(
        [v * math.log(v) for v in spec.numerator_multipliers]
        + [-v * math.log(v) for v in spec.denominator_multipliers])
    residual = lhs - rhs
    return IdentityReport(
        identity_id=IDENTITY_FACTORIAL_RATIO_PSI,
        params={
            "numerator_multipliers": list(spec.numerator_multipliers),
            "denominator_multipliers": list(spec.denominator_multipliers),
            "k": k,
        },
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        normalized_residual=residual / abs(lhs) if lhs else 0.0,
        normalization="residual/|lhs|",
        details={
            "asymptotic_rhs": growth,
            "asymptotic_residual": lhs - growth,
        },
    )


# -- alternating pi sum and Bertrand sweep -------------------------------


def alternating_pi_sum(x, table: PrimeTable) -> tuple[int, float]:
    """S(x) = sum_i (-1)^(i+1) pi(x/i) and the ratio S(x) / (x / log x).

    The ratio tends to log 2.  For x < 2 the sum is empty and the ratio
    is reported as 0."""
    v = _floor_real(x)
    if v > table.limit:
        raise OutOfRangeError(f"x={x} exceeds table limit {table.limit}")
    if v < 2:
        return 0, 0.0
    # floor(x/i) == floor(floor(x)/i) for integer i, so integer division
    # on the floored argument is exact for any real x
    j = np.arange(1, v // 2 + 1, dtype=np.int64)
    vals = table.pi_prefix[v // j]
    s = int(vals[0::2].sum() - vals[1::2].sum())
    xf = float(x)
    return s, s / (xf / math.log(xf))


def bertrand_check(limit: int, table: PrimeTable) -> int | None:
    """Verify pi(2n) - pi(n) > 0 for all n in [1, limit].  Returns None on
    success, else the first counterexample n."""
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    if 2 * limit > table.limit:
        raise OutOfRangeError(
            f"2*limit = {2 * limit} exceeds table limit {table.limit}")
    n = np.arange(1, limit + 1, dtype=np.int64)
    good = table.pi_prefix[2 * n] > table.pi_prefix[n]
    if good.all():
        return None
    return int(n[int(np.argmin(good))])
