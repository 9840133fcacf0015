"""A finitely presented ordered group that is neither unperforated nor Archimedean.

The monoid generated by (2,0), (1,1), (0,2), (3,0), (2,1), (1,2), (0,3) misses
exactly the points (1,0) and (0,1) of the quadrant.  Run with
``python3 demos/monoid_tour.py``.
"""

from ordcone import (NormalizedGroup, contains, interval, is_unperforated, minimal_elements,
                     non_archimedean_witness, saturation_hilbert_basis, verify_fp_conditions)
from ordcone.catalog import min_truncations, seven_gen

m = seven_gen()
print("irreducible elements:", minimal_elements(m))
ok, cert = contains(m, (4, 3))
print("(4,3) is a member:", ok, "coefficients", cert.coefficients)
print("interval [0, (2,2)]:", interval(m, (0, 0), (2, 2)))

res = is_unperforated(m)
print(f"unperforated: {res.unperforated}; {res.multiplier}*{res.witness} lies in M but {res.witness} does not")
print("saturation is generated by", saturation_hilbert_basis(m))

w = non_archimedean_witness(m, 6, 8)
print(f"n*{w.a} <= {w.b} for every n (period {w.d}), although {w.a} is not <= 0")

report = verify_fp_conditions(NormalizedGroup.from_monoid(m))
print("finite presentation checks:", report)

# Truncations of a non-finitely generated cone: the irreducible set keeps growing.
for k in range(1, 6):
    print(f"  truncation {k}: {len(minimal_elements(min_truncations(k)))} irreducible elements")
