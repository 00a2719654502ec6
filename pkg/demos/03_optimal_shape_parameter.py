"""Pick the optimal shape parameter across regimes and modes.

The optimizer minimizes the criterion over the admissible interval
[c_min, infinity), clamping to the left endpoint when the curve never
descends, and exploiting two closed-form accelerators:

* for beta = -1 in n >= 2 dimensions the interior critical point solves a
  monotone scalar equation (and equals sqrt(n/(2 sigma)) exactly),
* for beta > 0 with 1 + beta - n < 0 the dip is at
  (n - 1 - beta)/sqrt(2 n sigma).

Run:  python demos/03_optimal_shape_parameter.py
"""

import math

from mqshape import (
    Mode,
    ProblemSpec,
    critical_point_case1,
    derive_constants,
    optimal_c,
)

CASES = [
    ("1D inverse MQ, coarse fill", ProblemSpec(n=1, beta=-1.0, sigma=1.0, delta=0.01)),
    ("1D inverse MQ, fine fill", ProblemSpec(n=1, beta=-1.0, sigma=1.0, delta=1e-5)),
    ("2D inverse MQ, practical", ProblemSpec(n=2, beta=-1.0, sigma=1.0, delta=1e-30)),
    ("3D MQ beta=1 (interior dip)", ProblemSpec(n=3, beta=1.0, sigma=1.0, delta=1e-208)),
    ("1D MQ beta=1 (always climbs)", ProblemSpec(n=1, beta=1.0, sigma=1.0, delta=0.01)),
    (
        "2D inverse MQ + factor, d=1e-26",
        ProblemSpec(n=2, beta=-1.0, sigma=1.0, delta=1e-26, b0=1.0, mode=Mode.FIXED_B0),
    ),
    (
        "1D dilation-invariant, d=1e-4",
        ProblemSpec(n=1, beta=-1.0, sigma=1.0, delta=1e-4, mode=Mode.DILATION_INVARIANT),
    ),
]

print(f"{'case':<34} {'c*':>14} {'log H(c*)':>14} {'clamped':>8}")
for label, spec in CASES:
    result = optimal_c(spec, derive_constants(spec))
    print(
        f"{label:<34} {result.c_star:>14.6g} {result.log_h_star:>14.6g} "
        f"{str(result.clamped_lower):>8}"
    )

print()
print("Closed-form cross-checks:")
print(f"  2D critical point at sigma=1: {critical_point_case1(2, 1.0):.9f} (sqrt(2/2) = 1)")
print(f"  3D critical point at sigma=1: {critical_point_case1(3, 1.0):.9f} (sqrt(3/2) = {math.sqrt(1.5):.9f})")
print(f"  3D MQ dip: (3-1-1)/sqrt(6) = {1.0 / math.sqrt(6.0):.9f}")
print()
print("The admissible interval matters: with delta = 0.01 in one dimension the")
print("left endpoint c_min = 0.24 e^4 = 13.1 already exceeds the bare optimum")
print("near 0.52, so the recommendation clamps to c_min.")
