#!/usr/bin/env python3
"""A series for log k generalizing the alternating harmonic series.

Grouping k-1 harmonic terms against one correction per block,

    log k = (1 + 1/2 + ... + 1/(k-1) - (k-1)/k)
          + (1/(k+1) + ... + 1/(2k-1) - (k-1)/(2k)) + ...

k = 2 is exactly 1 - 1/2 + 1/3 - 1/4 + ... = log 2.  Blocks are summed
as written (the ungrouped series is only conditionally convergent), each
block is positive and below k/n^2, and the partial sums land on log k.
"""

import math

from binomfactor import (block_term, partial_sum, ratio_series_residual,
                         telescoping_check)

print("partial sums after 10^6 blocks:")
print(f"{'k':>3} {'partial sum':>14} {'log k':>12} {'error':>10} {'tail bound':>11}")
for k in (2, 3, 5, 10):
    s = partial_sum(k, 1_000_000)
    print(f"{k:>3} {s.partial_sum:>14.9f} {math.log(k):>12.9f} "
          f"{s.error:>10.2e} {s.tail_bound:>11.0e}")

print("\nthe k=3 blocks have the closed form (9j-4)/((3j-2)(3j-1)(3j)):")
for j in (1, 2, 3):
    closed = (9 * j - 4) / ((3 * j - 2) * (3 * j - 1) * (3 * j))
    print(f"  j={j}: block = {block_term(3, j):.12f}, closed form = {closed:.12f}")

print("\nper-step ratio identity behind the series "
      "(log(n^n/(n-1)^(n-1)) as a double sum):")
for J in (100, 200, 400, 800):
    r = ratio_series_residual(6, J)
    print(f"  truncation J={J:>4}: residual = {r:.6f}  (J * residual = {J * r:.3f})")
print("  halving with J confirms the ~1/(2J) tail")

assert telescoping_check(100) is None
print("\nratios telescope: sum of log(n^n/(n-1)^(n-1)) for n <= k equals "
      "k log k, checked for k <= 100")
