"""Independent reference values for the test suite.

Everything here is derived symbolically (sympy) from the closed-form
solution u(r) = 15^{-1/8} (1 + r^2)^{1/2} of Delta^2 u = -u^{-7} in R^3 and
evaluated with 30-digit arithmetic. Run from the repository root:

    python3 tests/oracles/generate_oracles.py > tests/oracles/oracle_values.hpp
"""

import sympy as sp

r = sp.symbols("r", positive=True)
n = 3
q = sp.Integer(7)
lam = sp.Integer(15) ** sp.Rational(-1, 8)
u = lam * sp.sqrt(1 + r**2)


def lap(f):
    return sp.diff(f, r, 2) + (n - 1) * sp.diff(f, r) / r


def at(expr, x):
    if x == 0:
        return sp.limit(expr, r, 0)
    return expr.subs(r, x)


def num(x):
    return sp.N(x, 30)


z = sp.simplify(lap(u))
p = (q - 1) / 2
A = sp.diff(u, r) ** 2 / u
B = u ** (-p)

values = {}

values["bilaplacian_plus_source_at_1"] = num(at(sp.simplify(lap(z) + u ** (-q)), 1))
values["B_at_0"] = num(at(B, 0))
values["lap_u_at_0"] = num(at(z, 0))

alpha, beta = sp.Rational(1, 2), sp.sqrt(sp.Rational(3, 8))
values["gradient_margin_at_0"] = num(at(z - alpha * A - beta * B, 0))
values["weak_margin_at_0"] = num(at(z - sp.sqrt(sp.Rational(2, 6)) * B, 0))
values["half_gradient_margin_at_5"] = num(at(z - A / 2, 5))
values["scalar_curvature_at_0"] = num(at(-(2 * (n - 1) / sp.Integer(n - 2)) * (z - A / 2) * u ** sp.Rational(-n, n - 2), 0))


def aux_margin(alpha, beta, x):
    w = -z + alpha * A + beta * B
    c_K1 = 1 + 4 * (1 - 2 * alpha) / sp.Integer(n)
    c_K2 = p - 4 * alpha / sp.Integer(n)
    c_I1 = sp.Rational(2, n) * (1 - 2 * alpha) ** 2 - 2 * alpha**2 + alpha
    c_I2 = 1 + sp.Rational(2, n) * alpha * beta**2 - p * beta**2
    c_I3 = p * ((q + 1) / 2 - alpha) - alpha * (q - 8 * alpha / sp.Integer(n) + sp.Rational(4, n))
    rhs = (-2 * alpha * sp.diff(u, r) * sp.diff(w, r) + (2 * alpha / sp.Integer(n)) * w**2
           + c_K1 * alpha * A * w + c_K2 * beta * B * w + c_I1 * alpha * A**2 + c_I2 * B**2 + c_I3 * beta * A * B)
    return num(at(u * lap(w) - rhs, x))


def weighted_margin(alpha, beta, gamma, x):
    w = -z + alpha * A + beta * B
    wg = u ** (-gamma) * w
    c_K1 = 1 + 4 * (1 - 2 * alpha) / sp.Integer(n)
    c_K2 = p - 4 * alpha / sp.Integer(n)
    J1 = 2 * alpha / sp.Integer(n) + gamma
    J2 = alpha + gamma
    L1 = c_K1 * alpha - 3 * gamma * alpha - gamma**2 + gamma
    L2 = (c_K2 - gamma) * beta
    rhs = J1 * wg**2 + u ** (-gamma) * (-2 * J2 * sp.diff(u, r) * sp.diff(wg, r) + L1 * A * wg + L2 * B * wg)
    return num(at(u ** (1 - gamma) * lap(wg) - rhs, x))


values["auxiliary_margin_at_1"] = aux_margin(alpha, beta, 1)
values["auxiliary_margin_at_3"] = aux_margin(alpha, beta, 3)
values["auxiliary_margin_quarter_at_2"] = aux_margin(sp.Rational(1, 4), sp.Rational(1, 2), 2)
values["weighted_margin_at_1"] = weighted_margin(alpha, beta, sp.Rational(1, 5), 1)

# mixed system with r = 1: (u, v) = (u, Delta u)
rr = sp.Integer(1)
sigma = (1 - q) / (rr + 1)
ell = (-sigma) ** (-1 / (rr + 1))
v = z
w_sys = ell * u**sigma - v
values["system_comparison_at_0"] = num(at(v ** (rr + 1) / (rr + 1) - u ** (1 - q) / (q - 1), 0))
rhs_sys = -ell * sigma * u ** (sigma - 1) * (ell**rr * u ** (sigma * rr) - v**rr)
values["mixed_margin_at_1"] = num(at(lap(w_sys) - rhs_sys, 1))
values["mixed_dropped_term_at_1"] = num(at(ell * sigma * (sigma - 1) * u ** (sigma - 2) * sp.diff(u, r) ** 2, 1))

values["q_min_quarter_n4"] = num(sp.Rational(3, 4) + sp.sqrt(sp.Rational(9, 16) + sp.Rational(1, 2) * (1 + sp.Integer(16) / 4 / 4)))
values["L2_exact_params"] = num(sp.Rational(7, 3) * sp.sqrt(sp.Rational(3, 8)))

print("#pragma once")
print("")
print("// Generated by tests/oracles/generate_oracles.py; do not edit by hand.")
print("")
print("namespace oracle {")
print("")
for k, val in values.items():
    print(f"inline constexpr double {k} = {sp.N(val, 20)};")
print("")
print("}  // namespace oracle")
