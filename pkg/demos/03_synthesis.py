# coding: utf-8

# # Lattice polynomials for problems with a single solution
#
# When c_IJK = 1 there is a polynomial in the flag subspaces E_j, F_j, G_j,
# built only from intersections and sums, whose value on generic flags is the
# unique subspace in the required position.

# In[1]:

from lrsynth.flagcheck import PrimeField, check_pattern, evaluate, random_flags
from lrsynth.hive_enum import all_triples, lr_coeff
from lrsynth.measure import SetTriple
from lrsynth.synth import Synthesizer

fld = PrimeField(1_000_003)

# Three small cases with familiar answers.

# In[2]:

for s in (SetTriple(3, (1, 2), (2, 3), (2, 3)),
          SetTriple(3, (1, 3), (1, 3), (2, 3)),
          SetTriple(4, (1, 3, 4), (1, 3, 4), (1, 3, 4))):
    print(s, "->", Synthesizer()(s))

# The recursion can be traced: weight zero, base case, dual step, reduction.

# In[3]:

synth = Synthesizer(trace=True)
p = synth(SetTriple(5, (2, 3, 5), (2, 3, 5), (2, 3, 5)))
print("\n".join(synth.stats.trace))
print("result:", p)

# Evaluate on random flags over GF(1000003) and compare every intersection
# dimension with the pattern the sets require.

# In[4]:

s = SetTriple(5, (2, 3, 5), (2, 3, 5), (2, 3, 5))
for seed in range(3):
    flags = random_flags(5, seed, fld)
    space = evaluate(p, flags)
    rep = check_pattern(space, flags, s)
    dims = [space.meet(flags["E"][i]).dim for i in range(6)]
    print(f"seed {seed}: dim {space.dim}, dims with E_i {dims}, pattern ok: {rep.passed}")

# Every c = 1 problem in dimension 5.

# In[5]:

synth = Synthesizer()
ok = total = 0
for s in all_triples(5):
    if s.r and lr_coeff(s) == 1:
        total += 1
        flags = random_flags(5, 0, fld)
        ok += check_pattern(evaluate(synth(s), flags), flags, s).passed
print(f"{ok}/{total} verified, deepest recursion {synth.stats.max_depth}")
