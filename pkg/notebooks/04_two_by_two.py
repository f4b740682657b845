# %% [markdown]
# # The 2 x 2 function f and its conjectured single sums
#
# f(a, b, c, d) normalises the integral of a 2 x 2 exponent matrix so that it
# is invariant under all 24 permutations of its arguments.

# %%
from itertools import permutations

from ortho_moments.two_by_two import (
    conjecture_even_sum,
    conjecture_odd_sum,
    f_value,
    verify_conjecture_even,
    verify_conjecture_odd,
)

q = (4, 2, 0, 2)
print({f_value(p, 5) for p in permutations(q)})

# %%
print(f_value((1, 1, 1, 1), 4), conjecture_odd_sum((1, 1, 1, 1), 4))
print(f_value((2, 2, 2, 2), 6), conjecture_even_sum((2, 2, 2, 2), 6))

# %%
print(verify_conjecture_even(6, range(4, 9)).summary())
print(verify_conjecture_odd(10, range(4, 9)).summary())
