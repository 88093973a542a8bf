#!/usr/bin/env python3
"""Triadic Cantor sets on the integers and their fractional density.

The construction keeps stage i inside [1, 3**i] with 2**i elements, so
counting alone pins the growth exponent at log 2 / log 3 even though the
set has ordinary density zero.  The density profile makes the exponent
visible: prefix ratios diverge below it and die above it.
"""

import math

from apspectra import cantor_build, density_profile, fractional_density_fit, scale_embed

TARGET = math.log(2) / math.log(3)

print("stage sets:")
for depth in range(4):
    s = cantor_build(depth)
    print(f"  depth {depth}: ambient {s.ambient:>3}  elements {list(s.elements)}")

print("\ngrowth exponent fit per depth (target log2/log3 = %.5f):" % TARGET)
for depth in (4, 6, 8, 10):
    est = fractional_density_fit(cantor_build(depth))
    print(f"  depth {depth:>2}: alpha_hat = {est.alpha_hat:.5f}   "
          f"cardinality {est.cardinality}")

s = cantor_build(8)
checkpoints = [3**i for i in range(9)]
print("\nprefix ratios |A cap [1,n]| / n**e at n = 3**i:")
print("  i     e=0.5        e=log2/log3   e=0.7")
for (n, lo), (_, mid), (_, hi) in zip(
    density_profile(s, 0.5, checkpoints),
    density_profile(s, TARGET, checkpoints),
    density_profile(s, 0.7, checkpoints),
):
    print(f"  {round(math.log(n, 3)):>1}   {lo:>9.4f}    {mid:>9.4f}     {hi:>8.4f}")
print("  (divergence below the exponent, a plateau at it, decay above it)")

# the same exponent survives quantization of the real middle-thirds set
pts = [0.0]
for k in range(1, 11):
    step = 2.0 / 3**k
    pts = pts + [p + step for p in pts]
embedded = scale_embed(pts, 3**10)
est = fractional_density_fit(embedded)
print(f"\nreal Cantor left endpoints quantized onto [0, 3**10): "
      f"{len(embedded)} points, alpha_hat = {est.alpha_hat:.5f}")
