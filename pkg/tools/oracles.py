"""Independent reference values computed with sympy.

The test suite does not import sympy; the numbers printed here are frozen
into the tests.  Run with ``python tools/oracles.py`` after installing the
``oracle`` extra.
"""

import sympy as sp


def header(title):
    print(f"\n# {title}")


def cyclotomic():
    header("1/(1+i)")
    print(sp.nsimplify(sp.expand(1 / (1 + sp.I), complex=True)))


def symmetric_jacobians():
    for n in (2, 3, 4):
        ys = sp.symbols(f"y1:{n + 1}")
        t = sp.Symbol("t")
        poly = sp.expand(sp.prod([1 + y * t for y in ys]))
        es = [poly.coeff(t, k) for k in range(1, n + 1)]
        M = sp.Matrix(n, n, lambda i, j: sp.diff(es[j], ys[i]))
        header(f"S_{n}: det M")
        print(sp.factor(M.det()))
        print(sp.expand(M.det()))


def s2_primes():
    x1, x2, y1, y2 = sp.symbols("x1 x2 y1 y2")
    e = [y1 + y2, y1 * y2]
    M = sp.Matrix(2, 2, lambda i, j: sp.diff(e[j], [y1, y2][i]))
    inv = M.inv()
    xp = [sp.factor(inv[i, 0] * x1 + inv[i, 1] * x2) for i in range(2)]
    header("S_2 x'")
    print(xp)

    def br(f, g):
        return sp.simplify(
            sp.diff(f, x1) * sp.diff(g, y1) - sp.diff(f, y1) * sp.diff(g, x1)
            + sp.diff(f, x2) * sp.diff(g, y2) - sp.diff(f, y2) * sp.diff(g, x2)
        )

    gens = xp + e
    print([[br(a, b) for b in gens] for a in gens])


def discriminants():
    header("S_2 discriminant in e")
    e1, e2, e3, e4, t = sp.symbols("e1 e2 e3 e4 t")
    print(sp.expand(sp.discriminant(t**2 - e1 * t + e2, t)))
    header("S_4 discriminant in e")
    print(sp.expand(sp.discriminant(t**4 - e1 * t**3 + e2 * t**2 - e3 * t + e4, t)))


def reflection_jacobians():
    for (m, p, n) in ((2, 1, 2), (3, 1, 2), (2, 2, 2), (4, 2, 2), (2, 1, 3)):
        ys = sp.symbols(f"y1:{n + 1}")
        t = sp.Symbol("t")
        poly = sp.expand(sp.prod([1 + y**m * t for y in ys]))
        es = [poly.coeff(t, k) for k in range(1, n)] + [sp.prod(ys) ** (m // p)]
        M = sp.Matrix(n, n, lambda i, j: sp.diff(es[j], ys[i]))
        header(f"G({m},{p},{n}): degrees, det M")
        print([sp.Poly(e, *ys).total_degree() for e in es], sp.factor(M.det()))


def binary_dihedral():
    x, y = sp.symbols("x y")
    for n in (1, 2, 3):
        w = (y / x) ** n
        u = sp.Rational(1, 8 * n) * (1 / w - w) * ((w - 1) / (w + 1)) ** 2 * x * y
        v = ((w + 1) / (w - 1)) ** 2
        b = sp.simplify(sp.diff(u, x) * sp.diff(v, y) - sp.diff(u, y) * sp.diff(v, x))
        header(f"BD({n}) u, {{u, v}}")
        print(sp.factor(u), b)


def independence():
    x, y = sp.symbols("x1 y1")
    header("Jacobian det of (x1*y1, x1)")
    print(sp.Matrix([[sp.diff(f, v) for v in (x, y)] for f in (x * y, x)]).det())


def s3_row_check():
    header("S_3 row 1 of M^-1 at v = (0, 1, 2)")
    v = sp.symbols("v1:4")
    es = [v[0] + v[1] + v[2], v[0] * v[1] + v[1] * v[2] + v[0] * v[2], v[0] * v[1] * v[2]]
    M = sp.Matrix(3, 3, lambda i, j: sp.diff(es[j], v[i]))
    inv = M.inv().subs({v[0]: 0, v[1]: 1, v[2]: 2})
    print(list(inv.row(0)))


if __name__ == "__main__":
    cyclotomic()
    symmetric_jacobians()
    s2_primes()
    discriminants()
    reflection_jacobians()
    binary_dihedral()
    independence()
    s3_row_check()
