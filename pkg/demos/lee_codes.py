"""Perfect Lee codes of minimum distance 3 and the eigenvalue -1.

Run:  python demos/lee_codes.py

A perfect code in G(n, q) at distance 3 exists exactly when the radical of 2n+1
divides q. When it does, chi_2(G(n, q)) = 2n+1, and the spectral bound can only
reach 2n+1 if -1 is an eigenvalue. This walks through both sides on G(2, 5).
"""
from distchrom.bounds import chi2_closed_regular, lee_chi2_theorem_bound
from distchrom.graphs import LeeParams, build_lee_graph, graph_power
from distchrom.leecodes import (
    code_min_distance,
    independent_set_to_code,
    is_perfect_code,
    perfect_code_exists,
    w_prime_membership,
)
from distchrom.oracle import exact_chromatic_number, exact_independence_number
from distchrom.spectra import lee_spectrum

n, q = 2, 5
g = build_lee_graph(LeeParams(n, q))

verdict = perfect_code_exists(n, q)
print(f"perfect (n={n}, q={q}) code predicted: {verdict.exists}  (rad(2n+1) = {verdict.radical_of_2n_plus_1})")

size, vertices = exact_independence_number(graph_power(g, 2))
code = independent_set_to_code(g, vertices, 2)
print(f"largest 2-independent set: {size} vertices -> codewords {list(code.codewords)}")
print(f"min Lee distance {code_min_distance(code)}, perfect: {is_perfect_code(code)}")

chi, _ = exact_chromatic_number(graph_power(g, 2))
print(f"chi_2(G({n},{q})) = {chi}")

print(f"-1 is an eigenvalue of G({n},{q}): {w_prime_membership(n, q)}")
cert = chi2_closed_regular(lee_spectrum(LeeParams(n, q)), q**n)
print(f"closed-form t=2 bound: {cert.bound_ceiled}  (theorem form: {lee_chi2_theorem_bound(LeeParams(n, q))})")

print()
print("Where -1 shows up among G(n, q), n = 1..6:")
for q in (4, 5, 6, 7, 9, 10, 15):
    marks = "".join("x" if w_prime_membership(k, q) else "." for k in range(1, 7))
    print(f"  q={q:>2}  {marks}")
