# coding: utf-8

# # Eigenvalue inequalities for sums of symmetric matrices
#
# For A + B + C = 0 and every problem with c = 1, the block-averaged
# eigenvalues of A, B, C summed over I, J, K are nonpositive.

# In[1]:

import numpy as np

from lrsynth.flagcheck import coarsen, horn_numeric_check, jacobi_eigenvalues

# The Jacobi solver against numpy on one 12 x 12 matrix.

# In[2]:

rng = np.random.default_rng(1)
x = rng.standard_normal((12, 12))
a = (x + x.T) / 2
lam = jacobi_eigenvalues(a)
print("max deviation from numpy:", np.abs(lam - np.sort(np.linalg.eigvalsh(a))[::-1]).max())

# Coarsening averages consecutive blocks and divides by N.

# In[3]:

print("coarsen to 3 blocks:", np.round(coarsen(lam, 3), 4))
print("block sums preserve the trace/N:", np.isclose(coarsen(lam, 3).sum(), lam.sum() / 12))

# Fifty random triples with N = 12.

# In[4]:

rep = horn_numeric_check(12, [2, 3, 4, 6], trials=50, seed=0)
print("inequalities per n:", rep["triples_checked"])
print("violations:", len(rep["violations"]), " largest relative value:", f"{rep['max_relative_margin']:.2e}")

# The largest value sits at rounding level: some inequalities are equalities,
# such as the one with I = J = K = {1..n} which is the trace of A + B + C.
