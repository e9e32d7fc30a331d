#!/usr/bin/env python3
"""Brute-force reference values for the small fixed samples in test_measures.cpp.

Every statistic is evaluated by enumerating index tuples with exact rational
arithmetic on squared distances and mpmath square roots (50 digits).
Q* shifts its second argument, so I* summands put the side holding block 0 first.
"""
import itertools
from mpmath import mp, sqrt, mpf

mp.dps = 50


def dist(u, v):
    return sqrt(sum((mpf(a) - mpf(b)) ** 2 for a, b in zip(u, v)))


def split(rows, dims):
    out, at = [], 0
    for w in dims:
        out.append([r[at:at + w] for r in rows])
        at += w
    return out


def dcov(x, y):
    n = len(x)
    a = [[dist(x[k], x[l]) for l in range(n)] for k in range(n)]
    b = [[dist(y[k], y[l]) for l in range(n)] for k in range(n)]
    s1 = sum(a[k][l] * b[k][l] for k in range(n) for l in range(n)) / n**2
    s2 = sum(a[k][l] for k in range(n) for l in range(n)) * sum(b[k][l] for k in range(n) for l in range(n)) / n**4
    s3 = sum(a[k][l] * b[k][m] for k in range(n) for l in range(n) for m in range(n)) / n**3
    return s1 + s2 - 2 * s3


def q_complete(blocks):
    n, d = len(blocks[0]), len(blocks)
    joint = [sum((blocks[j][k] for j in range(d)), []) for k in range(n)]
    def tup(idx):
        return sum((blocks[j][idx[j]] for j in range(d)), [])
    t1 = sum(dist(joint[k], tup(l)) for k in range(n) for l in itertools.product(range(n), repeat=d))
    t2 = sum(dist(joint[k], joint[l]) for k in range(n) for l in range(n))
    t3 = sum(dist(tup(k), tup(l)) for k in itertools.product(range(n), repeat=d)
             for l in itertools.product(range(n), repeat=d))
    return 2 * t1 / n ** (d + 1) - t2 / n**2 - t3 / n ** (2 * d)


def q_star(blocks):
    n, d = len(blocks[0]), len(blocks)
    x = [sum((blocks[j][k] for j in range(d)), []) for k in range(n)]
    y = [sum((blocks[j][(k + j) % n] for j in range(d)), []) for k in range(n)]
    cross = sum(dist(x[k], y[l]) for k in range(n) for l in range(n))
    xx = sum(dist(x[k], x[l]) for k in range(n) for l in range(n))
    yy = sum(dist(y[k], y[l]) for k in range(n) for l in range(n))
    return (2 * cross - xx - yy) / n**2


def cat(blocks, idx):
    n = len(blocks[0])
    return [sum((blocks[j][k] for j in idx), []) for k in range(n)]


def families(blocks):
    d = len(blocks)
    right = [(cat(blocks, [c]), cat(blocks, range(c + 1, d))) for c in range(d - 1)]
    rest = [(cat(blocks, [c]), cat(blocks, [j for j in range(d) if j != c])) for c in range(d)]
    return {
        "R_ASYM": sum(dcov(a, b) for a, b in right),
        "S_SYM": sum(dcov(a, b) for a, b in rest),
        "J_ASYM": sum(q_complete([a, b]) for a, b in right),
        "I_SYM": sum(q_complete([a, b]) for a, b in rest),
        "J_STAR": sum(q_star([a, b]) for a, b in right),
        "I_STAR": sum(q_star([a, b] if c == 0 else [b, a]) for c, (a, b) in enumerate(rest)),
    }


def u3(blocks):
    n = len(blocks[0])
    A = [[[dist(b[k], b[l]) for l in range(n)] for k in range(n)] for b in blocks]
    R = range(n)
    same3 = sum(A[0][k][l] * A[1][k][l] * A[2][k][l] for k in R for l in R) / n**2
    split3 = sum(A[0][k][l] * A[1][k][m] * A[2][k][o] for k in R for l in R for m in R for o in R) / n**4
    mean = [sum(a[k][l] for k in R for l in R) / n**2 for a in A]
    total = -same3 + 2 * split3 - mean[0] * mean[1] * mean[2]
    for i, j in [(0, 1), (0, 2), (1, 2)]:
        same = sum(A[i][k][l] * A[j][k][l] for k in R for l in R) / n**2
        spl = sum(A[i][k][l] * A[j][k][m] for k in R for l in R for m in R) / n**3
        total += same - 2 * spl + mean[i] * mean[j]
    return total


def report(name, rows, dims):
    blocks = split(rows, dims)
    vals = {}
    if len(dims) == 2:
        vals["DCOV_SQ"] = dcov(*blocks)
    vals["Q_COMPLETE"] = q_complete(blocks)
    vals["Q_STAR"] = q_star(blocks)
    vals.update(families(blocks))
    if len(dims) == 3:
        vals["U3_PLUGIN"] = u3(blocks)
    print(name)
    for k, v in vals.items():
        print(f"  {k:11s} {mp.nstr(v, 20)}")


report("d2_n2_hand", [[0, 0], [1, 1]], [1, 1])
report("d3_n3_int", [[1, -2, 0, 3], [4, 0, 2, -1], [-3, 5, 1, 0]], [2, 1, 1])
report("d2_n4_int", [[0, 1, 2], [3, -1, 0], [1, 1, 1], [-2, 4, 0]], [1, 2])
