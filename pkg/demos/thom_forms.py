"""The Mathai-Quillen Thom form and the homotopy operators around it.

Run with ``python3 demos/thom_forms.py``.
"""

from eqthom.connections import universal_connection
from eqthom.forms import AnalyticForm, bundle_space, fibre_integrate
from eqthom.suites import kappa_battery, sample_points
from eqthom.thom import (EquivariantThom, NumericKappa, Transgression, gaussian_thom_form,
                         homotopy_residual, kappa, mq_thom_form, numeric_homotopy_residual)

# %% Equivariant Thom form on R^2, certified on construction
t = mq_thom_form(2)
print("tau_0 =", t.element)
for e in t.report.entries:
    print(f"  {e.label:16s} {e.status}")
print("ordinary part:", t.plain())

# %% Fibre integral of the Gaussian Thom form is exactly 1
E = bundle_space(2)
print("pi_* tau =", fibre_integrate(gaussian_thom_form(E), list(E.fiber)))

# %% The rotation homotopy kappa, exact and numeric
beta = kappa_battery(2)[2]
print("beta =", beta)
print("kappa(beta) =", kappa(beta))
print("exact residual is zero:", homotopy_residual(beta).is_zero())
worst = numeric_homotopy_residual(beta, sample_points(2, 10, 0), NumericKappa(2))
print(f"numeric residual at 10 points: {worst:.2e}")

# %% Transgression off the zero section
tr = Transgression(2)
y = AnalyticForm.coordinate(E, "y1")
closed = (y * y * AnalyticForm.gaussian(E)).d()
print(f"transgression residual: {tr.residual(closed, [[0.5, -0.8], [1.2, 0.3]]):.2e}")

# %% Universal equivariant Thom form and its Euler class
et = EquivariantThom(t, universal_connection(t.weil))
print("zero-section pullback:", et.euler(), "| expected:", et.expected_euler())
