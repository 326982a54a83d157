"""
Stringy Euler numbers of weighted projective planes
===================================================

P(1,1,2) has one singular point, resolved crepantly by the ray (0,-1).
Its stringy Euler number is the Euler number of the resolution, 4, and
adding further blow-ups does not change it.  P(1,1,3) has no crepant
resolution; the stringy Euler number 5 counts fixed points with weights
1/(1 + a) for the discrepancy a = -1/3.
"""

from celeste import corpus
from celeste.chow import format_class
from celeste.fan import Fan
from celeste.invariants import stringy_chern, stringy_classes_agree
from celeste.models import ResolutionTower

W112 = corpus.weighted_plane_112()
crepant = ResolutionTower.build(W112, [(0, -1)])
longer = crepant.extend((1, -1))

for t in (crepant, longer):
    s = stringy_chern(t)
    print("tower", t.new_rays, "stringy Euler number", s.euler)
print(format_class(stringy_chern(crepant).base_class))
print(stringy_classes_agree(crepant, longer).format())

W113 = Fan(2, [(1, 0), (0, 1), (-1, -3)],
           [[(1, 0), (0, 1)], [(0, 1), (-1, -3)], [(-1, -3), (1, 0)]])
t = ResolutionTower.build(W113, [(0, -1)])
print("P(1,1,3): discrepancy", t.steps[0].discrepancy,
      "stringy Euler number", stringy_chern(t).euler)
