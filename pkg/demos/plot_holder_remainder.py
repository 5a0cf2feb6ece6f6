"""
Hölder's inequality with a remainder
====================================

For unit matrices A in C_p and B in C_p' the pairing |Tr[AB]| is one only
when A is the phase-rotated norm gradient of B. The remainder bounds say how
far below one it falls otherwise, and the sharpness scans show that the
powers of the distance in those bounds cannot be improved.
"""

# %%
import numpy as np

from schatten_pinsker import holder_remainder_1, holder_remainder_2, sharpness_scan
from schatten_pinsker.schatten import conjugate_exponent, normalize

rng = np.random.default_rng(1)
p = 1.5
q = conjugate_exponent(p)
A = normalize(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)), p)
B = normalize(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)), q)

# %%
for cert in (holder_remainder_1(A, B, p), holder_remainder_2(A, B, p)):
    print(f"{cert.name}: |Tr AB|={cert.lhs:.6f} <= {cert.rhs:.6f}  ({cert.status.value})")

# %%
# Deficit 1 - |Tr AB| against the remainder distance on diagonal families.
# The quadratic remainder has exponent 2 for every p, the dual one p'.
for p in (1.25, 1.5, 2.0):
    quad = sharpness_scan(p, remainder="quadratic")
    dual = sharpness_scan(p, remainder="dual")
    print(f"p={p}: quadratic exponent {quad.exponent:.3f}, dual exponent "
          f"{dual.exponent:.3f} (p'={conjugate_exponent(p):.3f})")
