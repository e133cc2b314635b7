"""Newton's iteration for sqrt(2) in exact rationals.

x_{n+1} = x_n + (1/x_n - x_n/2), starting from 3/2.  The number of correct
places roughly doubles each step.
"""

# %%
from gossamer import newton_sqrt2_demo
from gossamer.limit import sqrt2_digits

# %%
for k in range(7):
    x = newton_sqrt2_demo(k)
    print("x%d" % k, str(sqrt2_digits(x)).rjust(3), "places", " ", x if k < 3 else "...")
