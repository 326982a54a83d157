"""
CSM classes and Chern numbers of toric surfaces and threefolds
==============================================================

For a smooth complete toric variety the CSM class of the whole space is
the sum of all orbit closures, and the top Chern number counts fixed
points.  The CSM class of a union of invariant curves comes out of the
same integral, taken over the curves instead of the whole space.
"""

from celeste import corpus
from celeste.chow import degree, format_class
from celeste.invariants import chern_numbers, csm_class, toric_csm

for name, fan in corpus.smooth_complete_fans().items():
    same = csm_class(fan) == toric_csm(fan)
    print(f"{name:10s} chern numbers {tuple(map(str, chern_numbers(fan)))}  csm = sum of orbits: {same}")

P2 = corpus.projective_plane()
two_lines = csm_class(P2, [((1, 0),), ((0, 1),)])
print(format_class(two_lines))
print("Euler characteristic of two meeting lines:", degree(two_lines))
