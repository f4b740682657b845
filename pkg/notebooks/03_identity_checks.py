# %% [markdown]
# # Checking identities in n
#
# Each identity is a statement about rational functions of n with bounded
# degree, so exact agreement at enough integer points settles it. `verify`
# sweeps a grid of inputs and reports the first counterexample if any.

# %%
from ortho_moments import Budget, PropertyId, verify
from ortho_moments.verify import n_samples_for

print("sample points at half-degree 3:", n_samples_for(3))

# %%
grid = Budget(max_entry=2, max_cols=3)
for prop in (PropertyId.FLIPPING, PropertyId.COMPRESSION, PropertyId.TRANSMUTATION,
             PropertyId.BASIC_EXTENSION, PropertyId.RECURSIVE_EXTENSION, PropertyId.TRIANGULAR):
    print(verify(prop, grid).summary())

# %%
for prop in (PropertyId.ELEMENTARY_FLIP, PropertyId.WEINGARTEN_ELEMENTARY, PropertyId.N2_VS_ORACLE,
             PropertyId.ASYMPTOTIC):
    print(verify(prop, Budget(max_degree=3)).summary())

# %% [markdown]
# Reports serialise to JSON and CSV.

# %%
report = verify(PropertyId.TRIANGULAR, Budget(max_entry=2, max_degree=2))
print(report.to_json()["status"], report.to_json()["n_samples"])
print(report.to_csv().splitlines()[:3])
