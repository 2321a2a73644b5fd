"""Independent floating/mpmath oracles.  They share no code with the package.

Cartan matrices are typed in by hand, the Coxeter element is a numpy
product of reflections, roots come from a breadth-first closure and the
coefficients a_i are evaluated as |prod_k (1 - eta^k)^{n_k}| / h in
high-precision floating point.
"""
from __future__ import annotations

import mpmath
import numpy as np


def cartan(family: str, n: int) -> np.ndarray:
    C = 2 * np.eye(n, dtype=int)
    if family == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    else:
        edges = [(0, 2), (2, 3), (1, 3)] + [(k, k + 1) for k in range(3, n - 1)]
    for i, j in edges:
        C[i, j] = C[j, i] = -1
    return C


def roots(C: np.ndarray) -> set[tuple[int, ...]]:
    n = len(C)
    seen = {tuple(np.eye(n, dtype=int)[i]) for i in range(n)}
    todo = list(seen)
    while todo:
        v = np.array(todo.pop())
        for i in range(n):
            w = v.copy()
            w[i] -= C[i] @ v
            t = tuple(int(x) for x in w)
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def coxeter_matrix(C: np.ndarray) -> np.ndarray:
    n = len(C)
    M = np.eye(n, dtype=int)
    for i in range(n):
        S = np.eye(n, dtype=int)
        S[i, :] -= C[i, :]
        M = M @ S
    return M


def a_values(label: str, dps: int = 40) -> list:
    """Sorted list of a_i (one per orbit) as mpf."""
    family, n = label[0], int(label.split("_")[1])
    C = cartan(family, n)
    M = coxeter_matrix(C)
    h, P = 1, M.copy()
    while not (P == np.eye(n, dtype=int)).all():
        P, h = P @ M, h + 1
    remaining = roots(C)
    out = []
    with mpmath.workdps(dps):
        while remaining:
            alpha = np.array(min(remaining))
            orbit, v = [], alpha.copy()
            for _ in range(h):
                orbit.append(tuple(int(x) for x in v))
                v = M @ v
            remaining -= set(orbit)
            prod = mpmath.mpf(1)
            v = alpha.copy()
            for k in range(1, h):
                v = M @ v
                nk = int(alpha @ C @ v)
                prod *= abs(1 - mpmath.expjpi(mpmath.mpf(2 * k) / h)) ** nk
            out.append(prod / h)
    return sorted(out)
