"""
The topological zeta function of the cusp
=========================================

The germ x^3 + y^2 is resolved by three point blow-ups of the quadrant.
The local value of the integral of m*div(f) at the origin is a rational
function of m; its poles sit at -nu/N for the exceptional curves.
"""

from celeste import corpus
from celeste.celestial import fiber_strata
from celeste.invariants import candidate_poles, zeta_local
from celeste.models import (ConstructibleSet, HypersurfaceAtom, QUADRANT, SystemDivisor,
                            newton_resolution, resolve, restrict_to_point)
from celeste.scalar import Scalar

tower = newton_resolution(corpus.CUSP)
print("inserted rays:", tower.new_rays)

f = HypersurfaceAtom("f", corpus.CUSP)
rd = resolve(tower, SystemDivisor({f: Scalar.m()}), ConstructibleSet.ambient())
for atom in rd.atoms:
    print(f"{atom}: 1 + m_j = {rd.m[atom] + 1}")

# one line per stratum of the fiber over the origin
origin = QUADRANT.max_cones[0]
fiber = restrict_to_point(tower, ConstructibleSet.ambient(), origin)
for s in fiber_strata(rd, origin, fiber):
    print(s.atoms, "chi =", s.euler, "contributes", s.contribution)

z = zeta_local(tower, corpus.CUSP)
print(z)
print("candidate poles:", ", ".join(map(str, sorted(candidate_poles(tower, corpus.CUSP)))))
print("Z(0) =", z(0))
