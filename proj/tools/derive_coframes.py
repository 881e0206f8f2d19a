#!/usr/bin/env python3
"""Offline derivation of Cartan coframes for Monge models z' = F(y'').

Not used at build or test time. The C++ verifier (dist235 cartan) is the
accepting oracle for every file written here.

Frame: Y1 = d/dq, Y2 = d/dx + p d/dy + q d/dp + F d/dz, Y3 = [Y1, Y2],
Y4 = [Y1, Y3], Y5 = [Y2, Y3]. With lam = F'''/F'', a = lam/3 and
c = 3/10 (a' - a^2) the frame

    X1 = Y1, X2 = Y2, X3 = Y3 + a Y2, X4 = Y4 + c Y2, X5 = Y5

makes the structure equations solvable for the seven auxiliary forms; those are
found by a linear solve with the two remaining free parameters set to zero.
Two variants stay inside the solution set: constant lower-order terms (n43, n53) on
the flat model, X3 += -4/3 n53 Y1 + 4/3 n43 Y2, X4 += n43 Y3 + 2/3 n43^2 Y2 - 4/3 n43 n53 Y1,
X5 += n53 Y3 - 2/3 n53^2 Y1; and the diagonal rescaling X1 -> f X1, X2 -> g X2,
X3 -> f g X3, X4 -> f^2 g X4, X5 -> f g^2 X5 by nonvanishing functions f, g.

Usage: derive_coframes.py OUTDIR
"""
import json
import sys

import sympy as sp

x, y, p, q, z = COORDS = sp.symbols("x y p q z")
NAMES = ["x", "y", "p", "q", "z"]
R = sp.Rational


def bracket(a, b):
    jac = lambda v: v.jacobian(sp.Matrix(COORDS))
    return (jac(b) * a - jac(a) * b).applyfunc(sp.simplify)


def monge_frame(F, gauge=None, scale=None):
    y1 = sp.Matrix([0, 0, 0, 1, 0])
    y2 = sp.Matrix([1, p, q, 0, F])
    y3 = bracket(y1, y2)
    y4 = bracket(y1, y3)
    y5 = bracket(y2, y3)
    f2 = sp.diff(F, q, 2)
    lam = sp.simplify(sp.diff(F, q, 3) / f2) if f2 != 0 else 0
    a = lam / 3
    c = sp.simplify(R(3, 10) * (sp.diff(a, q) - a**2))
    frame = [y1, y2, y3 + a * y2, y4 + c * y2, y5]
    if gauge:
        n43, n53 = gauge
        frame[2] += -R(4, 3) * n53 * y1 + R(4, 3) * n43 * y2
        frame[3] += n43 * y3 + R(2, 3) * n43**2 * y2 - R(4, 3) * n43 * n53 * y1
        frame[4] += n53 * y3 - R(2, 3) * n53**2 * y1
    if scale:
        f, g = scale
        for k, w in enumerate([f, g, f * g, f**2 * g, f * g**2]):
            frame[k] = w * frame[k]
    return [v.applyfunc(sp.simplify) for v in frame]


def d(w):
    return sp.Matrix(5, 5, lambda i, j: sp.diff(w[j], COORDS[i]) - sp.diff(w[i], COORDS[j]))


def wedge(a, b):
    return sp.Matrix(5, 5, lambda i, j: a[i] * b[j] - a[j] * b[i])


def structure_rhs(o, b):
    return [
        wedge(o[0], 2 * b[0] + b[3]) + wedge(o[1], b[1]) + wedge(o[2], o[3]),
        wedge(o[0], b[2]) + wedge(o[1], b[0] + 2 * b[3]) + wedge(o[2], o[4]),
        wedge(o[0], b[4]) + wedge(o[1], b[5]) + wedge(o[2], b[0] + b[3]) + wedge(o[3], o[4]),
        wedge(o[0], b[6]) + R(4, 3) * wedge(o[2], b[5]) + wedge(o[3], b[0]) + wedge(o[4], b[1]),
        wedge(o[1], b[6]) - R(4, 3) * wedge(o[2], b[4]) + wedge(o[3], b[2]) + wedge(o[4], b[3]),
    ]


def coframe(frame):
    # omega_i dual to Xt_i with Xt_k = X_{6-k}
    xt = [frame[4 - k] for k in range(5)]
    inv = sp.Matrix.hstack(*xt).inv().applyfunc(sp.simplify)
    omega = [inv.row(i) for i in range(5)]
    unknowns = sp.symbols("w0:35")
    bar = [sp.Matrix([[sum(unknowns[5 * j + k] * omega[k][col] for k in range(5)) for col in range(5)]])
           for j in range(7)]
    rhs = structure_rhs(omega, bar)
    eqs = []
    for i in range(5):
        r = d(omega[i]) - rhs[i]
        for a in range(5):
            for b in range(a + 1, 5):
                e = sp.simplify(r[a, b])
                if e != 0:
                    eqs.append(e)
    sol = sp.solve(eqs, unknowns, dict=True)
    if not sol:
        raise SystemExit("structure equations are not solvable for this frame")
    s = sol[0]
    zero = {w: 0 for w in unknowns if w not in s}
    bar = [b.subs(s).subs(zero).applyfunc(sp.simplify) for b in bar]
    for i, r in enumerate(structure_rhs(omega, bar)):
        assert (d(omega[i]) - r).applyfunc(sp.simplify) == sp.zeros(5, 5)
    return omega, bar


def text(e):
    return str(sp.simplify(e)).replace("**", "^")


def write(path, title, F, frame, points):
    omega, bar = coframe(frame)
    doc = {
        "schema": "cartan-coframe/1",
        "title": title,
        "coordinates": NAMES,
        "monge": text(F),
        "omega": [[text(c) for c in w] for w in omega],
        "omega_bar": [[text(c) for c in w] for w in bar],
        "points": points,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    print("wrote", path)


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "data/coframes"
    generic = ["1", "-2", "1/2", "3", "5"]
    write(f"{out}/flat.json", "z' = (y'')^2, Monge frame", q**2, monge_frame(q**2), [["0"] * 5, generic])
    write(f"{out}/flat_gauged.json", "z' = (y'')^2, constant lower-order terms", q**2,
          monge_frame(q**2, gauge=(R(1, 2), -1)), [["0"] * 5, generic])
    write(f"{out}/flat_scaled.json", "z' = (y'')^2, X1 rescaled by 1 + x^2", q**2,
          monge_frame(q**2, scale=(1 + x**2, 1)), [["0"] * 5, generic])
    write(f"{out}/cubic.json", "z' = (y'')^3", q**3, monge_frame(q**3), [["0", "0", "0", "1", "0"], generic])
    write(f"{out}/cubic_scaled.json", "z' = (y'')^3, X2 rescaled by 1 + x^2", q**3,
          monge_frame(q**3, scale=(1, 1 + x**2)), [["0", "0", "0", "1", "0"], generic])
    write(f"{out}/quartic.json", "z' = (y'')^4", q**4, monge_frame(q**4),
          [["0", "0", "0", "1", "0"], ["2", "1", "-1", "-1/2", "0"]])


if __name__ == "__main__":
    main()
