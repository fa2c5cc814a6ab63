"""Elementary pi(x) and psi(x) bounds from signed omega combinations.

A combination like

    omega C(k/2, k/6) + omega C(k/3, k/12) - omega C(k/10, k/60)

expands, term by term, into prime counts pi(k/t) with a periodic integer
coefficient sequence a_t.  When that sequence alternates in sign, the
monotonicity of pi brackets the whole sum between its first one and two
terms, and combining with the growth constants of each omega term yields
Chebyshev-type bounds c1 * x/log x < pi(x) < c2 * x/log x.  The upper
constant is then sharpened by feeding the bound back into the anchor
term, a contraction with an explicit fixed point.

The psi(x) analogue replaces each omega expansion with the psi series of
a balanced factorial ratio (classically: multipliers 30, 1 over
15, 10, 6) and needs no error term at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .asymptotics import omega_growth_constant
from .errors import DomainError, NonAlternatingError, OutOfRangeError
from .identities import (FactorialRatioSpec, log_factorial_prefix,
                         omega_pi_series)
from .primes import PrimeTable, omega_binom_oracle


@dataclass(frozen=True)
class CombinationTerm:
    """sign * omega(C(k/a, k/b)) with a | b.

    Expands over pi(k/t) as +1 on multiples of a, -1 on multiples of
    a*b/(b-a), and -1 on multiples of b; the middle divisor must be an
    integer or the expansion leaves the pi(k/t) lattice.
    """
    sign: int
    a: int
    b: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        if self.a < 1 or self.b <= self.a:
            raise DomainError(f"need 1 <= a < b, got a={self.a}, b={self.b}")
        if self.b % self.a:
            raise DomainError(f"a={self.a} must divide b={self.b}")

    @property
    def ratio(self) -> int:
        return self.b // self.a

    def expansion_divisors(self) -> tuple[tuple[int, int], ...]:
        """((divisor, coefficient), ...) of the term's pi(k/t) expansion,
        before the overall sign."""
        gap = self.b - self.a
        if (self.a * self.b) % gap:
            raise DomainError(
                f"term (a={self.a}, b={self.b}): scaling a*b/(b-a) is not "
                "an integer, expansion has no pi(k/t) form")
        return ((self.a, 1), (self.a * self.b // gap, -1), (self.b, -1))


def _lcm(values) -> int:
    return reduce(math.lcm, values, 1)


@dataclass(frozen=True)
class CombinationSpec:
    """A signed combination of scaled omega terms."""
    terms: tuple[CombinationTerm, ...]

    @property
    def k_multiple(self) -> int:
        """Least L with every argument integral for k in L*N."""
        return _lcm(t.b for t in self.terms)


#: The combination behind the classical 0.92 / 1.11 pi(x) bounds.
PI_BOUNDS_SPEC = CombinationSpec((
    CombinationTerm(+1, 2, 6),
    CombinationTerm(+1, 3, 12),
    CombinationTerm(-1, 10, 60),
))

#: Same spec with the non-alternating fourth term appended.
PI_BOUNDS_SPEC_BROKEN = CombinationSpec(
    PI_BOUNDS_SPEC.terms + (CombinationTerm(+1, 12, 84),))

#: Classical multiplier set for the psi(x) variant.
PSI_RATIO_SPEC = FactorialRatioSpec((30, 1), (15, 10, 6))


class CoefficientSequence:
    """Periodic integer coefficients a_n of pi(k/n) (or psi(K/n)) in an
    expanded combination.  ``values[r - 1]`` is the coefficient for
    n congruent to r mod period, with r = period standing for 0."""

    def __init__(self, period: int, values: tuple[int, ...]):
        if period < 1 or len(values) != period:
            raise DomainError("period and value list length must agree")
        self.period = period
        self.values = values

    def coefficient(self, n: int) -> int:
        if n < 1:
            raise DomainError(f"index must be >= 1, got {n}")
        return self.values[(n - 1) % self.period]

    def residues_with_sign(self, sign: int) -> frozenset[int]:
        """Residues r in [1, period] (period standing for 0) whose
        coefficient has the given sign."""
        return frozenset(
            r for r in range(1, self.period + 1)
            if (self.values[r - 1] > 0) == (sign > 0) and self.values[r - 1] != 0)

    def first_index_with_sign(self, sign: int) -> int | None:
        for r in range(1, self.period + 1):
            v = self.values[r - 1]
            if v and (v > 0) == (sign > 0):
                return r
        return None

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def __repr__(self) -> str:  # pragma: no cover
        return f"CoefficientSequence(period={self.period})"


def _minimal_period(arr: np.ndarray) -> int:
    full = len(arr)
    for p in range(1, full + 1):
        if full % p:
            continue
        if (arr.reshape(full // p, p) == arr[:p]).all():
            return p
    return full


def _sequence_from_divisors(weighted_divisors) -> CoefficientSequence:
    """Build the periodic coefficient sequence from (divisor, weight)
    pairs: weight added at every multiple of divisor.  The period is the
    lcm of the divisors, then minimised (never assumed)."""
    pairs = list(weighted_divisors)
    if not pairs:
        return CoefficientSequence(1, (0,))
    length = _lcm(d for d, _ in pairs)
    arr = np.zeros(length + 1, dtype=np.int64)
    for d, w in pairs:
        arr[d::d] += w
    body = arr[1:]
    p = _minimal_period(body)
    return CoefficientSequence(p, tuple(int(v) for v in body[:p]))


def coefficient_sequence(spec: CombinationSpec) -> CoefficientSequence:
    """Expand every term of the combination over pi(k/t) and sum the
    coefficients."""
    weighted = []
    for term in spec.terms:
        for d, w in term.expansion_divisors():
            weighted.append((d, term.sign * w))
    return _sequence_from_divisors(weighted)


def psi_coefficient_sequence(ratio_spec: FactorialRatioSpec) -> CoefficientSequence:
    """Coefficient sequence of psi(Lk/t) in the psi series of a balanced
    factorial ratio, L = lcm of the multipliers: each multiplier v
    contributes +-1 at every multiple of L/v."""
    parts = (ratio_spec.numerator_multipliers, ratio_spec.denominator_multipliers)
    L = _lcm(parts[0] + parts[1])
    weighted = [(L // v, +1) for v in parts[0]] + [(L // v, -1) for v in parts[1]]
    return _sequence_from_divisors(weighted)


def verify_alternating(seq: CoefficientSequence) -> int | None:
    """Check that nonzero coefficients, scanned in increasing n, strictly
    alternate in sign starting with +1, with unit magnitude (a stacked
    coefficient of +-2 is two equal signs at one index).  Returns None on
    success, else the first violating index.

    Scanning two full periods also validates the wrap-around from one
    period into the next.
    """
    expected = 1
    for n in range(1, 2 * seq.period + 1):
        v = seq.coefficient(n)
        if v == 0:
            continue
        if abs(v) > 1 or (v > 0) != (expected > 0):
            return n
        expected = -expected
    return None


def combination_constant(spec: CombinationSpec) -> float:
    """Leading coefficient of the combination's k/log k growth:
    sum of sign * log(r^r / (r-1)^(r-1)) / b over terms, r = b/a."""
    for term in spec.terms:
        term.expansion_divisors()   # reject non-integral scalings
    return math.fsum(
        term.sign * omega_growth_constant(term.ratio, 1).value / term.b
        for term in spec.terms)


@dataclass(frozen=True)
class BoundsLedger:
    """Lower/upper pi(x)/(x/log x) (or psi(x)/x) bounds from one
    alternating combination.

    lead_index is the first positive coefficient (the bracketing head),
    anchor_index the first negative one (where the alternating tail is
    cut).  upper_iterations records each pass of the sharpening map
    U -> lead_index * (C + U / anchor_index), which contracts to
    fixed_point = lead_index * C / (1 - lead_index / anchor_index).
    """
    combination_constant: float
    lower_bound: float
    upper_iterations: tuple[float, ...]
    lead_index: int
    anchor_index: int
    fixed_point: float
    initial_upper: float


def _refine_bounds(constant: float, lead: int, anchor: int,
                   initial_upper: float, iterations: int) -> BoundsLedger:
    uppers = []
    u = initial_upper
    for _ in range(iterations):
        u = lead * (constant + u / anchor)
        uppers.append(u)
    return BoundsLedger(
        combination_constant=constant,
        lower_bound=lead * constant,
        upper_iterations=tuple(uppers),
        lead_index=lead,
        anchor_index=anchor,
        fixed_point=lead * constant / (1.0 - lead / anchor),
        initial_upper=initial_upper,
    )


def derive_bounds(spec: CombinationSpec, anchor_divisor: int | None = None,
                  initial_upper: float = 2.0, iterations: int = 3) -> BoundsLedger:
    """Bounds ledger for a pi(x) combination.

    Refuses non-alternating specs: the bracketing step needs monotone
    partial sums.  ``anchor_divisor``, if given, must match the first
    negative coefficient of the computed sequence (12 for the classical
    spec).  ``initial_upper`` defaults to the well-known pi(x) <= 2 x/log x.
    """
    seq = coefficient_sequence(spec)
    violation = verify_alternating(seq)
    if violation is not None:
        raise NonAlternatingError(violation)
    if seq.is_zero():
        return BoundsLedger(0.0, 0.0, tuple(0.0 for _ in range(iterations)),
                            0, 0, 0.0, initial_upper)
    lead = seq.first_index_with_sign(+1)
    anchor = seq.first_index_with_sign(-1)
    if anchor_divisor is not None and anchor_divisor != anchor:
        raise DomainError(
            f"anchor divisor {anchor_divisor} does not match the first "
            f"negative coefficient index {anchor}")
    constant = combination_constant(spec)
    return _refine_bounds(constant, lead, anchor, initial_upper, iterations)


@dataclass(frozen=True)
class BracketRow:
    k: int
    omega_combination: int
    series_combination: int
    correction: int
    lower: int
    upper: int
    holds: bool


def empirical_bracket_check(spec: CombinationSpec, k_grid,
                            table: PrimeTable) -> list[BracketRow]:
    """Numerically confirm the bracket at concrete k (multiples of the
    spec's k-multiple):

        pi(k/lead) - pi(k/anchor) <= sum sign*omega - D <= pi(k/lead)

    where every omega comes from the sieve oracle and D is the exactly
    accounted sum of sign * (omega - series) corrections per term.
    """
    seq = coefficient_sequence(spec)
    violation = verify_alternating(seq)
    if violation is not None:
        raise NonAlternatingError(violation)
    lead = seq.first_index_with_sign(+1)
    anchor = seq.first_index_with_sign(-1)
    rows = []
    for k in k_grid:
        if k % spec.k_multiple:
            raise DomainError(
                f"k={k} is not a multiple of the spec's k-multiple {spec.k_multiple}")
        if k // min(t.a for t in spec.terms) > table.limit:
            raise OutOfRangeError(f"k={k} needs arguments beyond table limit")
        omega_sum = 0
        series_sum = 0
        for term in spec.terms:
            w, _ = omega_binom_oracle(table, k // term.a, k // term.b)
            s = omega_pi_series(term.ratio, 1, k // term.b, table)
            omega_sum += term.sign * w
            series_sum += term.sign * s
        corr = omega_sum - series_sum
        lo = table.pi(k // lead) - table.pi(k // anchor)
        hi = table.pi(k // lead)
        rows.append(BracketRow(int(k), omega_sum, series_sum, corr, lo, hi,
                               holds=lo <= omega_sum - corr <= hi))
    return rows


def reconstruct_series_value(seq: CoefficientSequence, k: int,
                             table: PrimeTable) -> int:
    """sum over t of a_t * pi(k/t): the combination's series value
    recomputed directly from the coefficient sequence."""
    t = np.arange(1, k // 2 + 1, dtype=np.int64)
    coef = np.array(seq.values, dtype=np.int64)[(t - 1) % seq.period]
    nz = coef != 0
    return int((coef[nz] * table.pi_prefix[k // t[nz]]).sum())


@dataclass(frozen=True)
class PsiBracketRow:
    k: int
    ratio_log: float
    lower: float
    upper: float
    holds: bool


@dataclass(frozen=True)
class PsiBoundsReport:
    sequence: CoefficientSequence
    ledger: BoundsLedger
    rows: tuple[PsiBracketRow, ...]


def psi_variant_bounds(k_grid, table: PrimeTable,
                       ratio_spec: FactorialRatioSpec = PSI_RATIO_SPEC) -> PsiBoundsReport:
    """psi(x)/x bounds from the psi series of a balanced factorial ratio.

    Builds the coefficient sequence, requires alternation, derives the
    ledger (lead index 1 for the classical spec, so no doubling), and
    checks the exact bracket psi(Lk) - psi(Lk/anchor) <= log ratio
    <= psi(Lk) on the grid."""
    seq = psi_coefficient_sequence(ratio_spec)
    violation = verify_alternating(seq)
    if violation is not None:
        raise NonAlternatingError(violation)
    lead = seq.first_index_with_sign(+1)
    anchor = seq.first_index_with_sign(-1)
    L = _lcm(ratio_spec.numerator_multipliers + ratio_spec.denominator_multipliers)
    constant = math.fsum(
        [v * math.log(v) for v in ratio_spec.numerator_multipliers]
        + [-v * math.log(v) for v in ratio_spec.denominator_multipliers]) / L
    ledger = _refine_bounds(constant, lead, anchor, initial_upper=2.0, iterations=3)
    rows = []
    for k in k_grid:
        if L * k > table.limit:
            raise OutOfRangeError(f"k={k} needs psi beyond table limit")
        lf = log_factorial_prefix(ratio_spec.max_multiplier * k)
        ratio_log = math.fsum(
            [float(lf[v * k]) for v in ratio_spec.numerator_multipliers]
            + [-float(lf[v * k]) for v in ratio_spec.denominator_multipliers])
        lo = table.psi(L * k // lead) - table.psi(L * k // anchor)
        hi = table.psi(L * k // lead)
        slack = 1e-9 * max(abs(hi), 1.0)
        rows.append(PsiBracketRow(int(k), ratio_log, lo, hi,
                                  holds=lo - slack <= ratio_log <= hi + slack))
    return PsiBoundsReport(seq, ledger, tuple(rows))
