# coding: utf-8

# # Splitting a rigid measure into extremal pieces
#
# Every rigid measure is a nonnegative integer combination of extremal
# measures.  Each piece is generated by a root edge: count descendance paths
# starting at the root.

# In[1]:

import os

from lrsynth.cli import render_svg
from lrsynth.hive_enum import unique_measure
from lrsynth.measure import SetTriple, boundary_from_sets, sets_of
from lrsynth.skeleton import decompose

# A problem whose measure has two pieces.

# In[2]:

s = SetTriple(4, (1, 3), (2, 4), (3, 4))
m = unique_measure(boundary_from_sets(s))
d = decompose(m)
for i, c in enumerate(d.components):
    print(f"piece {i}: coefficient {c.coeff}, root {tuple(c.root.base)}/{c.root.axis}, sets {sets_of(c.mu)}")
print("precedence pairs:", d.relation)

# Adding the pieces back gives the measure exactly.

# In[3]:

total = d.components[0].measure
for c in d.components[1:]:
    total = total + c.measure
print("exact:", total == m)

# A bigger example where the pieces are ordered by the clockwise precedence.

# In[4]:

s2 = SetTriple(5, (1, 3, 5), (2, 3, 5), (2, 4, 5))
m2 = unique_measure(boundary_from_sets(s2))
d2 = decompose(m2)
print(len(d2.components), "pieces, precedence pairs", d2.relation)

# Draw the support.  Stroke width grows with density.

# In[5]:

out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
os.makedirs(out, exist_ok=True)
path = os.path.join(out, "decomposition.svg")
with open(path, "w", encoding="utf-8") as fh:
    fh.write(render_svg(m2))
print("wrote", path)
