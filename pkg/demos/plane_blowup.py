"""
Integrating zero over the plane and its blow-up
===============================================

The integral of the zero divisor over the whole space is the total Chern
class.  Evaluating it on the blow-up of P2 at a fixed point and pushing the
result down gives the same class as evaluating on P2 directly.
"""

from celeste import corpus
from celeste.celestial import check_change_of_variables, integrate
from celeste.chow import format_class, total_chern, equal
from celeste.models import ConstructibleSet, ResolutionTower, SystemDivisor

P2 = corpus.projective_plane()
tower = ResolutionTower.build(P2, [(1, 1)])
everything = ConstructibleSet.ambient()

# evaluated on the blow-up; the exceptional curve carries 1/(1 + 1)
cc = integrate(tower, SystemDivisor(), everything)
print("level 1:")
print(format_class(cc[1]))
print("level 0:")
print(format_class(cc[0]))
print("equals c(TP2):", equal(cc[0], total_chern(P2)))
print("degree:", cc.degree())

# the same statement as a report
print(check_change_of_variables(tower, SystemDivisor(), everything, 0, 1).format())
