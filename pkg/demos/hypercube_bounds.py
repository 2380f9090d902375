"""How far do the spectral bounds get on the hypercube?

Run:  python demos/hypercube_bounds.py

For each n we print the t=2 and t=3 closed-form bounds, the LP minor-polynomial
bound, and, where the oracle can finish quickly, the true chi_t(Q_n).
"""
from distchrom import bounds as B
from distchrom.errors import BoundInapplicableError, OracleTimeout
from distchrom.graphs import build_hypercube
from distchrom.lpopt import lp_minor_bound
from distchrom.oracle import chi_t_exact
from distchrom.spectra import hypercube_spectrum


def oracle(n: int, t: int) -> str:
    if n > 5:
        return "-"
    try:
        return str(chi_t_exact(build_hypercube(n), t, budget=5))
    except OracleTimeout as exc:
        return f"[{exc.lower},{exc.upper}]"


print(f"{'n':>3} {'t=2 closed':>11} {'t=2 LP':>7} {'chi_2':>6}   {'t=3 closed':>11} {'t=3 LP':>7} {'chi_3':>6}")
for n in range(3, 13):
    s, N = hypercube_spectrum(n), 2**n
    row = [B.chi2_closed_regular(s, N).bound_ceiled]
    try:
        row.append(lp_minor_bound(s, 2, N))
    except BoundInapplicableError:
        row.append("-")
    row.append(oracle(n, 2))
    row.append(B.chi3_closed_regular(s, 0, N).bound_ceiled)
    try:
        row.append(lp_minor_bound(s, 3, N))
    except BoundInapplicableError:
        row.append("-")
    row.append(oracle(n, 3))
    print(f"{n:>3} {row[0]:>11} {row[1]:>7} {row[2]:>6}   {row[3]:>11} {row[4]:>7} {row[5]:>6}")

# The t=4 bound: the polynomial has its roots on hypercube eigenvalues, so it
# never goes negative on the spectrum and lambda(p) = 0.
cert = B.hypercube_t45_bound(7, 4)
print()
print("Q7, t=4 polynomial:", cert.polynomial)
print("plain ratio:", cert.bound_plain, " with the integrality floor:", cert.bound_ceiled)
