"""Prints exact curvature values of a few fixed metrics, computed with sympy
directly from the Koszul formula. The values are frozen into the C++ tests."""
import itertools
import sympy as sp


def sl2_constants(copies):
    n = 3 * copies
    c = [[[sp.Integer(0)] * n for _ in range(n)] for _ in range(n)]

    def put(i, j, k, v):
        c[k][i][j] = sp.Integer(v)
        c[k][j][i] = -sp.Integer(v)

    for off in range(0, n, 3):
        put(off + 0, off + 1, off + 2, -2)
        put(off + 0, off + 2, off + 1, 2)
        put(off + 1, off + 2, off + 0, 2)
    return n, c


def curvature(n, c, g):
    gi = g.inv()
    # Koszul: 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)
    w = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        rhs = [sum(c[l][i][j] * g[l, m] for l in range(n)) - sum(c[l][j][m] * g[l, i] for l in range(n))
               + sum(c[l][m][i] * g[l, j] for l in range(n)) for m in range(n)]
        for k in range(n):
            w[k][i][j] = sp.nsimplify(sum(gi[k, m] * rhs[m] for m in range(n)) / 2)
    # R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z, R[l][i][j][k] = R(F_i,F_j)F_k component l
    R = [[[[sp.nsimplify(sum(w[l][i][m] * w[m][j][k] - w[l][j][m] * w[m][i][k] - c[m][i][j] * w[l][m][k]
                              for m in range(n)))
            for k in range(n)] for j in range(n)] for i in range(n)] for l in range(n)]
    # Ric(Y,Z) = trace(X -> R(X,Y)Z)
    ric = sp.Matrix(n, n, lambda j, k: sp.nsimplify(sum(R[l][l][j][k] for l in range(n))))
    return w, R, ric


n3, c3 = sl2_constants(1)
g3 = sp.Matrix([[2, 1, 0], [1, 3, sp.Rational(1, 2)], [0, sp.Rational(1, 2), -1]])
w, R, ric = curvature(n3, c3, g3)
print("sl2 metric", g3.tolist())
print("ricci", [[str(x) for x in row] for row in ric.tolist()])
print("R(0,1,0,1) =", R[0][1][0][1], " R(2,0,1,2) =", R[2][0][1][2])

n6, c6 = sl2_constants(2)
g6 = sp.diag(-1, 1, 1, -1, 1, 1)
g6[0, 4] = g6[4, 0] = sp.Rational(1, 3)
g6[1, 2] = g6[2, 1] = sp.Rational(1, 2)
g6[3, 5] = g6[5, 3] = 2
w, R, ric = curvature(n6, c6, g6)
print("sl2+sl2 metric", g6.tolist(), "det", g6.det())
for i, j in ((0, 0), (0, 4), (1, 2), (3, 5), (5, 5), (2, 3)):
    print("ric(%d,%d) = %s" % (i, j, ric[i, j]))

x1, y1, x2, y2, a1 = sp.symbols("x1 y1 x2 y2 a1")
gs = sp.Matrix([[x1, 0, 0, a1, 0, 0], [0, y1, 0, 0, 0, 0], [0, 0, y1, 0, 0, 0],
                [a1, 0, 0, x2, 0, 0], [0, 0, 0, 0, y2, 0], [0, 0, 0, 0, 0, y2]])
w, R, ric = curvature(n6, c6, gs)
for i, j in ((0, 0), (1, 1), (0, 3)):
    print("symbolic ric(%d,%d) = %s" % (i, j, sp.factor(sp.simplify(ric[i, j]))))
