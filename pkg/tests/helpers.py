"""Random instance generators and independent oracles shared by the tests."""

import random
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from prefswaps.model import STAR, make_instance


def random_instance(rng: random.Random, n, max_levels=3, n_statements=3, wildcard=0.3):
    """Numeric instance with integer levels ``0..max_levels-1`` and random statements."""
    statements = []
    for k in range(n_statements):
        better, worse = [], []
        for _ in range(n):
            if rng.random() < wildcard:
                better.append("*")
                worse.append("*")
            else:
                better.append(rng.randrange(max_levels))
                worse.append(rng.randrange(max_levels))
        statements.append((better, worse, f"p{k + 1}"))
    return make_instance([f"c{i + 1}" for i in range(n)], statements)


def random_swap_instance(rng: random.Random, n, n_statements):
    """Binary instance whose statements are all order-2 swaps ``({i} >= {j})`` on levels 0/1."""
    statements = []
    for k in range(n_statements):
        i, j = rng.sample(range(n), 2)
        better = ["*"] * n
        worse = ["*"] * n
        better[i], worse[i] = 1, 0
        better[j], worse[j] = 0, 1
        statements.append((better, worse, f"s{k + 1}"))
    return make_instance([f"c{i + 1}" for i in range(n)], statements)


def random_alternative(rng, n, values):
    return tuple(Fraction(rng.choice(values)) for _ in range(n))


def slot_coefficient_oracle(x, y, levels):
    """Covector of ``(x >=? y)`` from the step-function form of the utilities.

    ``u_i(t) = u_i(v_1) + sum_{k: v_{k+1} <= t} w_k``, so the coefficient of
    ``w_k`` in ``u(x) - u(y)`` is ``[v_{k+1} <= x_i] - [v_{k+1} <= y_i]``.
    """
    out = []
    for xi, yi, lv in zip(x, y, levels):
        for k in range(len(lv) - 1):
            if xi is STAR:
                out.append(0)
            else:
                out.append(int(lv[k + 1] <= xi) - int(lv[k + 1] <= yi))
    return tuple(out)


def augmented_lp_necessary(instance, x, y):
    """Necessity via an LP in the utility values over ``V_i + {x_i, y_i}`` (floating point).

    Necessary iff no increasing utilities satisfy P together with
    ``u(x) - u(y) <= -1`` (the system is homogeneous, so the margin is free).
    """
    n = instance.n
    grid = []
    for i in range(n):
        vals = set(instance.scales[i])
        vals.update(v for v in (x[i], y[i]) if v is not STAR)
        grid.append(sorted(vals))
    var = {}
    for i in range(n):
        for v in grid[i]:
            var[(i, v)] = len(var)
    nv = len(var)
    A, b = [], []

    def diff_row(a, c):
        row = np.zeros(nv)
        for i in range(n):
            if a[i] is STAR:
                continue
            row[var[(i, a[i])]] += 1
            row[var[(i, c[i])]] -= 1
        return row

    for i in range(n):
        for lo, hi in zip(grid[i], grid[i][1:]):
            row = np.zeros(nv)
            row[var[(i, lo)]] = 1
            row[var[(i, hi)]] = -1
            A.append(row)
            b.append(0.0)
    for s in instance.statements:
        A.append(-diff_row(s.better, s.worse))
        b.append(0.0)
    A.append(diff_row(x, y))
    b.append(-1.0)
    res = linprog(np.zeros(nv), A_ub=np.array(A), b_ub=np.array(b),
                  bounds=[(None, None)] * nv, method="highs")
    if res.status == 0:
        return False
    assert res.status == 2, res.message
    return True
