"""Weil algebras, curvature and the Chern-Weil map, worked by hand.

Run with ``python3 demos/weil_and_chern_weil.py``.
"""

from eqthom.connections import EquivariantCharacteristic, EquivariantExtension, curvature_lift
from eqthom.gdgm import basic_cohomology, check_axioms
from eqthom.lie import invariant_polynomials, lie_algebra
from eqthom.thom import action_pfaffian
from eqthom.weil import build_weil, koszul_homotopy

# %% The Weil algebra of so(3) and its structure operators
g = lie_algebra("so3")
w = build_weil(g)
print(w, "generators:", w.gens.names)
print("d th1 =", w.d.apply(w.theta[0]))
print("curvature mu(x1) =", w.curvature(0))

rep = check_axioms(w.structure, 5)
print(f"axioms up to degree 5: {len(rep.entries)} checks, passed={rep.passed}")

# %% A wrong sign in the coadjoint action is caught, with a witness
bad = check_axioms(build_weil(g, coadjoint_sign=-1).structure, 3)
first = bad.failures()[0]
print("mutated structure fails at", first.label, "->", first.witness)

# %% W(g) is acyclic; its basic part is the ring of invariant polynomials
print("Koszul contraction certified:", koszul_homotopy(w).verify(5).passed)
print("H_bas(W so3):", basic_cohomology(w.structure, (0, 8)))
print("Casimir:", invariant_polynomials(g, 2)[0])

# %% Equivariant characteristic forms for h = so(2) x R
M = build_weil(lie_algebra("so2xR")).structure
ext = EquivariantExtension(M, [M.gens.gen(0)])
pf = action_pfaffian(2)
print("mu(Pf) in W(so2):", curvature_lift(lie_algebra("so2"), pf))
ec = EquivariantCharacteristic(ext)
print("c_g(Pf) =", ec(pf))
print("closed and basic:", ec.check(pf).passed)
