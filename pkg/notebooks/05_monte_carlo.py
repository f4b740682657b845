# %% [markdown]
# # Monte Carlo sanity checks
#
# Haar samples come from the QR decomposition of a Gaussian matrix with the
# sign of each column fixed by the diagonal of R.

# %%
import numpy as np

from ortho_moments import integral_oracle, mc_integral
from ortho_moments.monte_carlo import haar_batch

qs = haar_batch(4, 10_000, np.random.default_rng(0))
print("max |Q^T Q - I|:", np.abs(np.einsum("bji,bjk->bik", qs, qs) - np.eye(4)).max())

# %%
for a, n in [([[4]], 3), ([[2, 2], [2, 0]], 5), ([[1, 1], [1, 1]], 4)]:
    est = mc_integral(a, n, 200_000, seed=1)
    exact = integral_oracle(a, n)
    print(a, n, f"{est.mean:.5f} +/- {est.standard_error:.5f}", "exact", exact, f"z={(est.mean - float(exact)) / est.standard_error:.2f}")
