"""Minor polynomials for G(3, q), solved exactly.

Run:  python demos/minor_polynomials.py

The t-minor polynomial has p(theta_0) = 1, is non-negative on the rest of the
spectrum, and minimises trace p(A). Its trace bounds alpha_t from above, so
|V| / floor(trace) bounds chi_t from below. Eigenvalues of G(3, q) are sums of
cosines; we take them at their exact binary value and solve over the rationals.
"""
from distchrom.errors import DegenerateCaseError
from distchrom.graphs import LeeParams
from distchrom.lpopt import lp_minor_certificate, minor_polynomial
from distchrom.spectra import lee_spectrum

t = 4
for q in range(3, 10):
    s = lee_spectrum(LeeParams(3, q))
    try:
        mp = minor_polynomial(s, t)
    except DegenerateCaseError as exc:
        print(f"G(3,{q}): {exc}")
        continue
    cert = lp_minor_certificate(s, t, q**3)
    zeros = sum(1 for x in mp.point_values[1:] if x == 0)
    print(f"G(3,{q}): trace {float(mp.trace_value):8.4f}  bound {cert.bound_ceiled:>3}  "
          f"(p vanishes on {zeros} of {s.d} non-principal eigenvalues)")
