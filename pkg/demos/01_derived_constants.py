"""Derived constants across dimensions, and why the log domain is not optional.

Every admissibility constant of the shape-parameter theory contains the
factor e^{2 n gamma_n}, where gamma_n is an integer sequence that grows
roughly like (2n)! in character: 2, 12, 78, 632, ...  Already at n = 4 the
exponent is 2*4*632 = 5056, and e^5056 is far beyond anything a double can
hold.  This script prints the constants for n = 1..4 and shows that the
package keeps every field finite by storing logs.

Run:  python demos/01_derived_constants.py
"""

import math

from mqshape import Mode, ProblemSpec, derive_constants, gamma_seq

print(f"{'n':>2} {'gamma_n':>10} {'2n*gamma_n':>12} {'e^(2n gamma_n) representable?':>30}")
for n in range(1, 7):
    expo = 2 * n * gamma_seq(n)
    print(f"{n:>2} {gamma_seq(n):>10} {expo:>12} {'yes' if expo < 709 else 'no':>30}")

print()
print("Constants for sigma=1, delta=0.01, cube side b0=1:")
print(f"{'n':>2} {'m':>2} {'rho':>6} {'log c_min':>12} {'log c0':>12} {'eta(delta)':>14}")
for n in range(1, 5):
    spec = ProblemSpec(n=n, beta=-1.0, sigma=1.0, delta=0.01, b0=1.0, mode=Mode.FIXED_B0)
    dc = derive_constants(spec)
    print(
        f"{n:>2} {dc.m:>2} {dc.rho:>6.3f} {dc.log_c_min.log_value:>12.4f} "
        f"{dc.log_c0.log_value:>12.4f} {dc.eta:>14.6g}"
    )

print()
print("At n=1 the admissible interval is tangible:")
spec = ProblemSpec(n=1, beta=-1.0, sigma=1.0, delta=0.01, b0=1.0, mode=Mode.FIXED_B0)
dc = derive_constants(spec)
print(f"  c_min = 0.24 e^4 = {dc.log_c_min.value:.6f}")
print(f"  c0    = 3 e^4    = {dc.log_c0.value:.6f}")
print(f"  admissible fill-distance cap at c = c0: {math.exp(dc.log_fill_cap(dc.log_c0.value)):.6f}")

print()
print("At n=4 the same quantities only exist as logs:")
spec4 = ProblemSpec(n=4, beta=-1.0, sigma=1.0, delta=0.01, b0=1.0, mode=Mode.FIXED_B0)
dc4 = derive_constants(spec4)
print(f"  log c_min = {dc4.log_c_min.log_value:.2f}  (value would be e^{dc4.log_c_min.log_value:.0f})")
print(f"  log c0    = {dc4.log_c0.log_value:.2f}")
print(f"  eta(delta) underflows to {dc4.eta} but its log-magnitude {dc4.eta_log_abs:.2f} is exact")
