#!/usr/bin/env python3
"""Classical 1-d orthogonal polynomial ladders, recovered from raw moments.

Three textbook measures go in as nothing but moment lists; the library
returns the recurrence data every orthogonal-polynomial reference tabulates:

    x p_n = p_{n+1} + alpha_n p_n + omega_n p_{n-1}

For the standard gaussian that is alpha_n = 0, omega_n = n (Hermite); for
the exponential alpha_n = 2n+1, omega_n = n^2 (Laguerre); for the uniform
measure on [-1,1] alpha_n = 0, omega_n = n^2/(4n^2-1) (Legendre).
"""

from fractions import Fraction

from favard import build_gradation, extract_cap, extract_jacobi, from_catalog

N = 6

for name in ("gaussian_product", "uniform_box", "exponential_product"):
    phi = from_catalog(name, 1, 2 * N + 1)
    gb = build_gradation(phi, N)
    cap = extract_cap(gb)
    js = extract_jacobi(gb, cap)

    print(f"\n{name}  (exact rational arithmetic)")
    print(f"{'n':>2}  {'alpha_n':>10}  {'omega_n':>12}  {'|p_n|^2':>14}")
    for n in range(N + 1):
        alpha = js.alpha[1][n][0][0]
        norm = js.gomega[n][0][0]
        omega = "" if n == 0 else js.gomega[n][0][0] / js.gomega[n - 1][0][0]
        print(f"{n:>2}  {str(alpha):>10}  {str(omega):>12}  {str(norm):>14}")

    # the basis polynomials themselves, monic by construction
    if name == "gaussian_product":
        print("monic Hermite ladder:")
        for n in range(5):
            p = gb.level(n).basis[0]
            parts = []
            for m, c in sorted(p.terms.items(), reverse=True):
                mono = f"x^{m[0]}" if m[0] > 1 else ("x" if m[0] == 1 else "")
                body = (str(abs(c)) if abs(c) != 1 or not mono else "") + mono or "1"
                parts.append(("- " if c < 0 else "+ ") + body)
            txt = " ".join(parts).lstrip("+ ")
            print(f"  p_{n} = {txt}")

# sanity anchor: the uniform ratios match the closed form exactly
phi = from_catalog("uniform_box", 1, 13)
js = extract_jacobi(build_gradation(phi, 6), extract_cap(build_gradation(phi, 6)))
for n in range(1, 7):
    ratio = js.gomega[n][0][0] / js.gomega[n - 1][0][0]
    assert ratio == Fraction(n * n, 4 * n * n - 1)
print("\nuniform omega_n == n^2/(4n^2-1) for n <= 6: exact")
