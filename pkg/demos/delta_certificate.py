#!/usr/bin/env python3
# The divisibility certificate: three angle functions Delta_i.
#
# On solutions with no zero coordinate, Delta_i has a closed form; the
# functions satisfy Delta_1 + Delta_2 + Delta_3 = s pointwise and
# Delta_i(x) + Delta_i(m_i x) = s across every edge.  Summing over an
# orbit of size V gives s*V = (3/2) s*V, so s*V = 0 and p | V.
# On the locus x_i = 0 the two neighbouring values are not determined
# pointwise; they are propagated around dihedral cycles instead.

from markoff import (SurfaceParams, build_certificate, build_zero_cycle,
                     compute_orbits, delta_values, enumerate_solutions,
                     extend_delta, verify_certificate, zero_locus)
from markoff.delta import NoConsistentExtension

params = SurfaceParams.make(7, (1, 1, 1))
print(f"p=7, a=(1,1,1), s={params.s}")
print("closed form at (1,1,1):", delta_values(params, (1, 1, 1)),
      " (sums to s)")
print()

# The locus x_1 = 0 is a pair of lines; the moves m_2, m_3 act on it as
# a dihedral group whose rotation order is the order of r^2 for a root
# of r^2 + a_1 r + 1 = 0.
locus = zero_locus(params, 0)
print(f"locus x1=0: roots of the exchange quadratic {locus.roots},"
      f" {len(locus)} points")
cycle = build_zero_cycle(params, locus.points[0], 0)
print(f"one cycle: rotation order {cycle.rho_order},"
      f" {len(cycle.points())} points")
print("  rotation orbit:", cycle.zs)
print("  mirror image:  ", cycle.ws)

# Any starting value delta works; the identities force the rest.
for delta0 in (0, 3):
    filled = extend_delta(params, cycle, delta0)
    print(f"  extension from delta={delta0}:")
    for pt in cycle.zs:
        print(f"    {pt} -> {filled[pt]}")
print()

# Full certificate mod 13 for a special-form parameter set.
params = SurfaceParams.make(13, (2, 5, 5))
sol = enumerate_solutions(params)
part = compute_orbits(sol)
assign = build_certificate(sol)
report = verify_certificate(assign, part)
print(f"p=13, a=(2,5,5): certificate over {report.n_points} points,"
      f" {report.n_fixed_edges} fixed edges")
for check in report.orbit_checks:
    print(f"  orbit of size {check.size} (rep {check.rep}):"
          f" size mod p = {check.size % 13}")
print()

# Where the theorem's hypothesis fails, no consistent assignment exists:
# a double fixed point with x_i = 0 forces Delta_i = 0, which is false.
params = SurfaceParams.make(13, (2, 2, -2))
cycle = build_zero_cycle(params, zero_locus(params, 0).points[0], 0)
try:
    extend_delta(params, cycle, 0)
except NoConsistentExtension as exc:
    print(f"a=(2,2,-2): {exc}")
