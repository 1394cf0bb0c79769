# coding: utf-8

# # Measures on the triangle and what they count
#
# A problem (n, I, J, K) fixes the stub masses on the three sides of a
# triangle of side r = |I|.  The integer measures with that boundary are
# counted by the Littlewood-Richardson coefficient c_IJK.

# In[1]:

from lrsynth.hive_enum import enumerate_measures, lr_coeff
from lrsynth.measure import SetTriple, boundary, boundary_from_sets, sets_of
from lrsynth.rigidity import find_witness

# A small problem with exactly one measure: a Y-shaped vertex with legs to all three sides.

# In[2]:

s = SetTriple(3, (1, 3), (1, 3), (2, 3))
b = boundary_from_sets(s)
print(s, "->", b)
(m,) = enumerate_measures(b)
for e, d in m.densities.items():
    print(f"  edge {tuple(e.base)} axis {e.axis}: density {d}")
print("c =", lr_coeff(s), " weight =", b.omega, " round trip:", sets_of(m) == s)

# The classic case I = J = K = {2,4,6} in dimension 6 has two measures.

# In[3]:

big = SetTriple(6, (2, 4, 6), (2, 4, 6), (2, 4, 6))
ms = enumerate_measures(boundary_from_sets(big))
print("c =", lr_coeff(big), "with", len(ms), "measures")

# Neither of them is rigid.  The witness is either a point where all six edges
# meet or a closed loop whose every turn is "evil".

# In[4]:

for i, mm in enumerate(ms):
    w = find_witness(mm)
    print(f"measure {i}: weight {boundary(mm).omega}, {len(mm.densities)} edges, witness {w.kind} at {list(w.points)}")

# A unique measure never has such a witness.

# In[5]:

print("the Y-vertex measure is rigid:", find_witness(m) is None)
