"""Walk through relations and limits, one cell at a time.

Run with ``python demos/comparisons.py``; each cell prints what it computes.
"""

# %%
from gossamer import compare, limit, limit_lhopital, is_monotone_tail, standard_scale

# %% powers lose to exponentials, logs lose to powers
for f, g, assume in [("exp(x)", "x^D", "D>0"),
                     ("ln(x)^b", "x^a", "a>0, b>0"),
                     ("x^b", "exp(a*x)", "a>0, b>0")]:
    print(compare(f, g, "x=inf", assume).describe())

# %% factorials through Stirling
print(compare("n^n*n", "exp(n)*fact(n)", "n=inf").describe())

# %% the flags: ~ (ratio -> 1), close (difference -> 0), and the sign of f - g
r = compare("x^(ln(ln(x))/ln(ln(x+1)))", "x", "x=inf")
print(r.describe(), "order:", r.order.value, "close:", r.close)

# %% a parameter split decides the answer
for case in ("mu+v<1", "mu+v>1", "mu+v=1"):
    r = compare("ln(x)^(ln(x)^mu)", "x^(ln(x)^(-v))", "x=inf", case)
    print(case.ljust(8), r.relation.token)

# %% limits come from the standard part of an expansion
for e, p, a in [("(3*n+5)/(5*n)", "n=inf", None),
                ("(x^5+7*x^4+2)^(1/5) - x", "x=inf", None),
                ("(a^x - b^x)/x", "x=0", "a>0, b>0"),
                ("(fact(n)^3/(n^(3*n)*exp(-n)))^(1/n)", "n=inf", None),
                ("(1-2^x)^x", "x=0-", None),
                ("1/x", "x=0", None)]:
    print(e.ljust(40), p.ljust(6), limit(e, p, a))

# %% the L'Hopital loop, for comparison
print(limit_lhopital("3*x^2+2*x-16", "x^2-x-2", "x=2"))

# %% scales and tails
print(standard_scale("mixed", 7).render(unicode=True))
print(standard_scale("powers", 4).render())
print("1/n^2 is", is_monotone_tail("1/n^2", var="n").value)
