"""Replay written derivations with the chain verifier.

A chain is one step per line: ``lhs ; REL ; rhs ; [at v=p ;] by op``.
``z`` stands for the unknown relation being solved for.
"""

# %%
from gossamer import verify_chain

# %% exp(x) against a fixed power: take logs, solve, undo
GOOD = """
assume: D>0
exp(x) ; z ; x^D ; at x=inf ; by given
x ; z ; D*ln(x) ; by ln
x ; succ ; D*ln(x) ; by solve
exp(x) ; succ ; x^D ; by exp
"""
print(verify_chain(GOOD).render())

# %% a false claim is caught where the solve step disagrees with it
BAD = """
n^2 ; gt ; exp(n) ; at n=inf ; by given
2*ln(n) ; gt ; n ; by ln
2*ln(n) ; gt ; n ; by solve
"""
print(verify_chain(BAD).render())

# %% differentiate until the comparison is obvious, then integrate back
POLY = """
x^3 + 2*x ; z ; 5*x^2 + 1 ; at x=inf ; by given
3*x^2 + 2 ; z ; 10*x ; by D
6*x ; z ; 10 ; by D
6*x ; succ ; 10 ; by solve
3*x^2 + 2 ; succ ; 10*x ; by int
x^3 + 2*x ; succ ; 5*x^2 + 1 ; by int
"""
print(verify_chain(POLY).render())

# %% dividing both sides by a positive function keeps much-greater
print(verify_chain("""
n^2 ; succ ; n ; at n=inf ; by solve
n ; succ ; 1 ; by mul(1/n)
1 ; succ ; 1/n ; by mul(1/n)
""").render())
