"""Generates gowdy_oracle.hpp: Euler source terms and a manufactured solution.

The source terms are obtained from div T = 0 for the polarized Gowdy metric by
direct Christoffel-symbol computation, independently of the C++ sources.

    python3 gen_gowdy_oracle.py > gowdy_oracle.hpp
"""
import sympy as sp

t, x, y, z = sp.symbols("t x y z", real=True)
X = [t, x, y, z]


def christoffel(g):
    gi = g.inv()
    return [[[sp.simplify(sum(gi[l, k] * (sp.diff(g[k, m], X[n]) + sp.diff(g[k, n], X[m]) - sp.diff(g[m, n], X[k]))
                               for k in range(4)) / 2)
              for n in range(4)] for m in range(4)] for l in range(4)]


def euler_sources():
    a, b, c = (sp.Function(s)(t, x) for s in "abc")
    tau, S, Sig, p = (sp.Function(s)(t, x) for s in ("tau", "S", "Sigma", "p"))
    g = sp.diag(-sp.exp(2 * a), sp.exp(2 * a), sp.exp(2 * b + 2 * c), sp.exp(2 * b - 2 * c))
    gi = g.inv()
    G = christoffel(g)
    T = sp.zeros(4)
    T[0, 0] = sp.exp(-2 * a) * tau
    T[0, 1] = T[1, 0] = sp.exp(-2 * a) * S
    T[1, 1] = sp.exp(-2 * a) * Sig
    T[2, 2] = p * gi[2, 2]
    T[3, 3] = p * gi[3, 3]
    sqrtg = sp.exp(2 * a + 2 * b)
    leads = [sp.diff(tau, t) + sp.diff(S, x), sp.diff(S, t) + sp.diff(Sig, x)]
    syms = sp.symbols("at ax bt bx tau S Sigma p")
    subs = {sp.diff(a, t): syms[0], sp.diff(a, x): syms[1], sp.diff(b, t): syms[2], sp.diff(b, x): syms[3],
            tau: syms[4], S: syms[5], Sig: syms[6], p: syms[7]}
    out = []
    for al in range(2):
        div = sum(sp.diff(sqrtg * T[al, be], X[be]) for be in range(4)) / sqrtg + sum(
            G[al][be][ga] * T[ga, be] for be in range(4) for ga in range(4))
        src = sp.simplify(-(sp.expand(sp.simplify(div * sp.exp(2 * a))) - leads[al]))
        out.append(sp.expand(src.subs(subs)))
    return syms, out


def manufactured():
    kappa, cs = sp.symbols("kappa cs", positive=True)
    a = sp.Rational(1, 10) * sp.sin(x) * sp.cos(t)
    b = sp.Rational(1, 5) + sp.Rational(1, 10) * sp.cos(x + t)
    c = sp.Rational(3, 10) * sp.sin(x - t / 2)
    mu = 1 + sp.Rational(1, 5) * sp.cos(x) * sp.exp(-t)
    v = sp.Rational(3, 10) * sp.sin(x + t)
    p = cs**2 * mu
    xi2 = 1 / (1 - v**2)
    tau = (mu + p) * xi2 - p
    S = (mu + p) * xi2 * v
    Sig = (mu + p) * xi2 * v**2 + p
    at, ax, bt, bx, ct, cx = (sp.diff(f, s) for f in (a, b, c) for s in (t, x))
    rhs_a = bt**2 - bx**2 - ct**2 + cx**2 + kappa / 2 * sp.exp(2 * a) * (-tau + Sig - 2 * p)
    rhs_b = -2 * bt**2 + 2 * bx**2 + kappa / 2 * sp.exp(2 * a) * (tau - Sig)
    rhs_c = -2 * bt * ct + 2 * bx * cx
    syms, (T1, T2) = euler_sources()
    env = dict(zip(syms, (at, ax, bt, bx, tau, S, Sig, p)))
    fields = {
        "a": a, "b": b, "c": c, "at": at, "ax": ax, "bt": bt, "bx": bx, "ct": ct, "cx": cx,
        "mu": mu, "v": v, "tau": tau, "S": S,
        "force_a": sp.diff(a, t, 2) - sp.diff(a, x, 2) - rhs_a,
        "force_b": sp.diff(b, t, 2) - sp.diff(b, x, 2) - rhs_b,
        "force_c": sp.diff(c, t, 2) - sp.diff(c, x, 2) - rhs_c,
        "force_tau": sp.diff(tau, t) - T1.subs(env),
        "force_S": sp.diff(S, t) - T2.subs(env),
    }
    return fields


def main():
    syms, (T1, T2) = euler_sources()
    print("// Generated by gen_gowdy_oracle.py; do not edit.")
    print("#pragma once\n\n#include <cmath>\n\nnamespace oracle {\n")
    args = ", ".join(f"double {s}" for s in syms)
    for name, e in (("T1", T1), ("T2", T2)):
        print(f"inline double euler_{name}({args}) {{\n  return {sp.ccode(e)};\n}}\n")
    print("namespace manufactured {\n")
    for name, e in manufactured().items():
        print(f"inline double {name}(double t, double x, double kappa, double cs) {{")
        print("  (void)kappa;\n  (void)cs;")
        print(f"  return {sp.ccode(sp.simplify(e))};\n}}\n")
    print("}  // namespace manufactured\n}  // namespace oracle")


if __name__ == "__main__":
    main()
