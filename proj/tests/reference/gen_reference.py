# Copyright 2026 The mpmue Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the high-precision reference values frozen in the unit tests.

Every value comes from direct quadrature of the Max-U-Exp density
f(x) = d/dx [min(x/a, 1) (1 - e^{-lambda x})] with mpmath at 30 digits.

    python3 tests/reference/gen_reference.py
"""

from mpmath import mp, mpf, quad, exp, inf, gamma, factorial, findroot, diff

mp.dps = 30


def pdf(a, lam, x):
    if x <= a:
        return ((1 - exp(-lam * x)) + lam * x * exp(-lam * x)) / a
    return lam * exp(-lam * x)


def expect(a, lam, g):
    a, lam = mpf(a), mpf(lam)
    return quad(lambda x: g(x) * pdf(a, lam, x), [0, a, inf])


def g_curve(x):
    x = mpf(x)
    num = x**3 / 3 + 4 - 2 * exp(-x) * (x + 2)
    return x * num / (x**2 / 2 + 1 - exp(-x)) ** 2


def poisson(rate, n):
    return rate**n * exp(-rate) / factorial(n)


def main():
    m1 = expect(1, 1, lambda x: x)
    m2 = expect(1, 1, lambda x: x**2)
    rows = [
        ("mean (1,1)", m1),
        ("second moment (1,1)", m2),
        ("third moment (1,1)", expect(1, 1, lambda x: x**3)),
        ("variance (1,1)", m2 - m1**2),
        ("lst t=1 (1,1)", expect(1, 1, lambda x: exp(-x))),
        ("lst t=1 (2,0.5)", expect(2, 0.5, lambda x: exp(-x))),
        ("E xi^-0.5 (1,1)", expect(1, 1, lambda x: x**-0.5)),
        ("E xi^-1 (1,1)", expect(1, 1, lambda x: 1 / x)),
        ("E xi^-1.5 (1,1)", expect(1, 1, lambda x: x**-1.5)),
        ("E xi^-1.5 (2,0.5)", expect(2, 0.5, lambda x: x**-1.5)),
        ("E xi^-1.5 (0.5,5)", expect(0.5, 5, lambda x: x**-1.5)),
        ("tau pdf t=1 (1,1)", expect(1, 1, lambda x: x * exp(-x))),
        ("E tau^0.5 (1,1)", gamma(1.5) * expect(1, 1, lambda x: x**-0.5)),
        ("E T_2^0.5 (1,1)", gamma(2.5) * expect(1, 1, lambda x: x**-0.5)),
        ("pmf m=1 n=1 (2,1)", expect(2, 1, lambda x: poisson(x, 1))),
        ("posterior mean m=1 n=0 (1,1)",
         expect(1, 1, lambda x: x * exp(-x)) / expect(1, 1, lambda x: exp(-x))),
        ("g(1)", g_curve(1)),
    ]
    argmin = findroot(lambda x: diff(g_curve, x), 4)
    rows += [
        ("argmin of g", argmin),
        ("min of g", g_curve(argmin)),
        ("g = 4/3 on the falling side", findroot(lambda x: g_curve(x) - mpf(4) / 3, 2.2)),
    ]
    for name, value in rows:
        print(f"{name:32s} {mp.nstr(value, 16)}")


if __name__ == "__main__":
    main()
