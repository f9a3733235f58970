#!/usr/bin/env python3
# Orbits of the three Vieta moves, and when p divides their sizes.
#
# Each move m_i swaps x_i with the other root of the surface equation
# viewed as a quadratic in x_i.  Away from two degeneracies (s = 0, or
# some a_i = +-2 with the wrong companion parameters) every orbit except
# {(0,0,0)} has size divisible by p.

from markoff import (SurfaceParams, apply_move, classify_parameters,
                     compute_orbits, enumerate_solutions, size_table,
                     verify_divisibility)

# Start at the solution (1,1,1) that exists for every parameter choice
# and walk a few moves.
params = SurfaceParams.make(11, (1, 2, 3))
x = (1, 1, 1)
print("a walk from (1,1,1) mod 11, a=(1,2,3):")
for i in (0, 1, 2, 0, 1):
    x = apply_move(params, x, i)
    print(f"  m{i+1} -> {x}")
print()

# The full orbit picture for a few parameter sets mod 13.
for a in [(1, 1, 1), (2, 5, 5), (2, 2, -2), (0, 0, -3)]:
    params = SurfaceParams.make(13, a)
    cls = classify_parameters(params)
    part = compute_orbits(enumerate_solutions(params))
    report = verify_divisibility(part)
    verdict = {True: "divisible by p (asserted)",
               False: "NOT divisible (!!)",
               None: "no assertion for this class"}[report.passed]
    print(f"a={a}: class={cls.kind}")
    print(f"  sizes: {size_table(part)}   -> {verdict}")
print()

# The theorem classes never produce an exception across a whole sweep.
p = 7
bad = []
for a1 in range(p):
    for a2 in range(p):
        for a3 in range(p):
            params = SurfaceParams.make(p, (a1, a2, a3))
            if classify_parameters(params).kind not in ("all-nondegenerate",
                                                        "special-form"):
                continue
            part = compute_orbits(enumerate_solutions(params))
            if any(size % p for size in part.orbit_sizes()):
                bad.append((a1, a2, a3))
print(f"exhaustive sweep mod {p} over the theorem classes:",
      "every orbit size divisible by p" if not bad else f"failures: {bad}")
