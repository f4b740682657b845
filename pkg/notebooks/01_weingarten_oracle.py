# %% [markdown]
# # Weingarten oracle
#
# Polynomial integrals over O_n computed from pair partitions. The Gram
# matrix of pairings has entries n to the number of join blocks; its inverse
# holds the Weingarten function.

# %%
from fractions import Fraction

from ortho_moments import gram_matrix, integral_oracle, weingarten_matrix
from ortho_moments.weingarten import gram_singular

# %% [markdown]
# ## The k = 2 table at n = 3

# %%
g = gram_matrix(2, 3)
print([str(p) for p in g.pairings])
print(g.entries)
pairings, w = weingarten_matrix(2, 3)
for p, row in zip(pairings, w):
    print(f"{str(p):12}", *[str(x).rjust(6) for x in row])

# %% [markdown]
# ## Where the Gram matrix is singular
#
# Invertibility is decided exactly. In this range it fails precisely when
# n < k.

# %%
for k in range(1, 6):
    print(k, [n for n in range(2, 8) if gram_singular(k, n)])

# %% [markdown]
# ## Integrals
#
# Degree-four moments as rational functions of n, checked against their
# familiar closed forms.

# %%
for n in range(3, 8):
    row = [integral_oracle(a, n) for a in ([[4]], [[2, 2]], [[2, 0], [0, 2]], [[1, 1], [1, 1]])]
    assert row[0] == Fraction(3, n * (n + 2))
    print(n, *row)

# %% [markdown]
# Odd row or column sums give zero without any linear algebra.

# %%
print(integral_oracle([[1, 2], [1, 0]], 5), integral_oracle([[3, 1]], 4))
