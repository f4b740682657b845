# %% [markdown]
# # Two-row closed forms
#
# For matrices with two rows of even exponents the normalised quantity phi
# is a finite alternating sum of factorial ratios. Inputs to
# `phi_two_row` are half exponents.

# %%
from ortho_moments import closed_forms as cf
from ortho_moments import integral_oracle

# %%
print("phi(2;2) at n=3:", cf.phi_two_row([1], [1], 3))
print("phi(2,2;2,0) at n=3:", cf.phi_two_row([1, 1], [1, 0], 3))
print("triangular (2,2,2) at n=3 and n=4:", cf.phi_triangular(2, 2, 2, 3), cf.phi_triangular(2, 2, 2, 4))

# %% [markdown]
# ## Against the oracle

# %%
for top, bottom in [([2, 4], [2, 0]), ([2, 2, 2], [0, 2, 2]), ([6], [4])]:
    n = 7
    closed = cf.integral_two_row([x // 2 for x in top], [x // 2 for x in bottom], n)
    exact = integral_oracle([top, bottom], n)
    print(top, bottom, closed, closed == exact)

# %% [markdown]
# ## Joint moments of two entries in generic position

# %%
for n in (3, 4, 5):
    print(n, *[cf.joint_moments(a, b, n) for a, b in [(2, 2), (2, 4), (4, 4)]])

# %% [markdown]
# ## The n = 2 formula
#
# O_2 is small enough for a closed form on every 2 x 2 exponent matrix.

# %%
print(cf.integral_n2(2, 0, 0, 2), cf.integral_n2(1, 1, 1, 1), cf.integral_n2(3, 1, 1, 3))
