"""
Norm gradients of Schatten norms
================================

The duality map sends a matrix to the unit element of the dual Schatten
class that attains its norm. This script checks both properties on a random
matrix and compares the map with a finite difference of the norm.
"""

# %%
import numpy as np

from schatten_pinsker import duality_map, gradient_fd_check, mazur_map, schatten_norm
from schatten_pinsker.schatten import conjugate_exponent

rng = np.random.default_rng(0)
A = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))

# %%
# The image has unit norm in the conjugate class and pairs with A to give
# its norm.
for p in (1.1, 1.5, 2.0, 3.0):
    g = duality_map(A, p)
    q = conjugate_exponent(p)
    pairing = np.trace(g.matrix @ A)
    print(f"p={p}: ||D||_q={schatten_norm(g.matrix, q):.12f}  "
          f"Tr[D A]={pairing.real:.10f}  ||A||_p={g.source_norm:.10f}")

# %%
# The directional derivative of the norm equals Re Tr[D_p(A) B].
B = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
chk = gradient_fd_check(A, B, 1.3)
print(f"finite difference {chk.fd_slope:.10f} vs analytic {chk.analytic_slope:.10f}")

# %%
# Up to normalisation the duality map is a Mazur map followed by an adjoint.
p = 1.5
unit = A / schatten_norm(A, p)
via_mazur = mazur_map(unit, p, conjugate_exponent(p)).conj().T
print("max difference:", np.abs(via_mazur - duality_map(unit, p).matrix).max())
