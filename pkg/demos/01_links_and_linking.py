"""Build a rotation-orbit great circle link and inspect its structure.

The five-component link for the fraction 2/5 is the orbit of the real
great circle under the screw rotation (z, w) -> (e^{2 pi i/5} z,
e^{4 pi i/5} w).  Every component is a geodesic, every pair of
components links exactly once, and the link meets the two coordinate
axis circles in evenly spaced points whose indices satisfy a fixed
congruence.
"""

from gclink import (
    construct_dpq,
    axis_intersections,
    disjointness_report,
    gauss_linking_integral,
    linking_matrix,
    linking_number,
)

link = construct_dpq(2, 5)
print(f"D_{{2/5}}: {len(link.components)} components")
for i, c in enumerate(link.components):
    a, b = c.axis_tag
    print(f"  component {i}: z-angle {a}, w-angle {b}")

print("\naxis crossings (indices in units of pi/5, modulo 10):")
for rec in axis_intersections(link):
    print(f"  component {rec.component}: z {rec.z_indices}, w {rec.w_indices}"
          f"   check: w = 2*z mod 10 -> {(rec.w_indices[0] - 2 * rec.z_indices[0]) % 10 == 0}")

print("\nlinking matrix (every off-diagonal entry is +1 or -1):")
print(linking_matrix(link))

dist, pair = disjointness_report(link)
print(f"\nclosest pair of components: {pair} at geodesic distance {dist:.6f}")

print("\nGauss double integral cross-check of three linking numbers:")
for (i, j) in [(0, 1), (0, 2), (1, 4)]:
    det_sign = linking_number(link.components[i], link.components[j])
    integral = gauss_linking_integral(link.components[i], link.components[j], 512)
    print(f"  lk({i},{j}) = {det_sign:+d},  integral = {integral:+.6f}")
