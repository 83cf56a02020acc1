"""Basic cohomology of foliated tori by exact Fourier truncation.

Run with ``python3 demos/foliated_tori.py``.
"""

from eqthom.foliation import (basic_complex, equivariant_basic_thom_check, gysin_exactness,
                              kronecker, molino_counterexample)

# %% Kronecker flow with slope sqrt(2): basic forms are the constant ones
for N in (8, 12, 16):
    bc = basic_complex(kronecker("sqrt2"), N)
    print(f"Kronecker N={N:2d}: dims {bc.dims()}  H_bas {bc.cohomology()}  "
          f"leakage {bc.leakage}")

# %% A Reeb-type flow: only constants are basic, and there are no basic 1-forms
for N in (8, 12, 16):
    print(f"counterexample N={N:2d}: dims {basic_complex(molino_counterexample(), N).dims()}")

# %% Thom isomorphism over the foliated base shifts cohomology by the rank
for r in (1, 2):
    rep = equivariant_basic_thom_check(kronecker(), r)
    shift = next(e for e in rep.entries if e.label == "basic-shift")
    print(f"r={r}: {len(rep.entries)} checks, passed={rep.passed}, {shift.witness}")

# %% Gysin sequence of the trivial plane bundle over a circle
rep = gysin_exactness(3, 1)
print("H(T^1 x S^1) =", rep.data["H(S)"])
for e in rep.entries:
    print(f"  {e.label:20s} {e.status} {e.witness}")
