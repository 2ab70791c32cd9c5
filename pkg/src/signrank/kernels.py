"""Hot numeric kernels for the realization search.

Two interchangeable backends share one contract:

* ``numba`` (default): explicit-loop kernels compiled with ``@njit``.
* ``numpy``: vectorized fallback, selected by setting the environment
  variable ``SIGNRANK_NO_NUMBA=1`` (also used automatically when numba is
  not importable).

``penalty_grad`` evaluates the sign-fitting penalty and its analytic
gradients; ``solve_dependent`` pins the dependent entries of zero-carrying
columns by solving their small linear systems in place; ``descent`` runs the
adaptive gradient loop.  ``BACKEND`` names the active implementation and the
``*_numpy`` / ``*_numba`` variants stay importable for benchmarking.

The penalty for target signs S over B = U @ V with margin t and zero weight w:

    sum_{S=+} max(0, t - b)^2 + sum_{S=-} max(0, b + t)^2 + w * sum_{S=0} b^2
"""

from __future__ import annotations

import os

import numpy as np


def _penalty_grad_numpy(U, V, S, margin, zero_weight):
    B = U @ V
    pos = S > 0
    neg = S < 0
    zer = S == 0
    rp = np.where(pos, np.maximum(0.0, margin - B), 0.0)
    rn = np.where(neg, np.maximum(0.0, B + margin), 0.0)
    rz = np.where(zer, B, 0.0)
    pen = float(np.sum(rp * rp) + np.sum(rn * rn) + zero_weight * np.sum(rz * rz))
    gB = -2.0 * rp + 2.0 * rn + (2.0 * zero_weight) * rz
    gU = gB @ V.T
    gV = U.T @ gB
    return pen, gU, gV


def _solve_dependent_numpy(U, V, dep_cols, dep_ptr, dep_rows):
    """Solve V[:s, j] so the zero-target rows of column j vanish exactly.
    Returns the number of columns skipped for singularity."""
    r = U.shape[1]
    skipped = 0
    for idx in range(len(dep_cols)):
        j = dep_cols[idx]
        rows = dep_rows[dep_ptr[idx] : dep_ptr[idx + 1]]
        s = len(rows)
        M = U[rows][:, :s]
        rhs = -(U[rows][:, s:] @ V[s:, j])
        det_scale = np.max(np.abs(M)) + 1e-300
        if abs(np.linalg.det(M)) < 1e-12 * det_scale**s:
            skipped += 1
            continue
        V[:s, j] = np.linalg.solve(M, rhs)
    return skipped


def _descent_numpy(U, V, S, margin, zero_weight, iters, lr0,
                   dep_cols, dep_ptr, dep_rows, free_u, free_v):
    lr = lr0
    _solve_dependent_numpy(U, V, dep_cols, dep_ptr, dep_rows)
    pen, gU, gV = _penalty_grad_numpy(U, V, S, margin, zero_weight)
    for _ in range(iters):
        if pen < 1e-22 or lr < 1e-14:
            break
        U2 = U - lr * gU * free_u
        V2 = V - lr * gV * free_v
        _solve_dependent_numpy(U2, V2, dep_cols, dep_ptr, dep_rows)
        pen2, gU2, gV2 = _penalty_grad_numpy(U2, V2, S, margin, zero_weight)
        if pen2 <= pen:
            U, V, pen, gU, gV = U2, V2, pen2, gU2, gV2
            lr *= 1.05
        else:
            lr *= 0.5
    return U, V, pen


def _penalty_grad_loops(U, V, S, margin, zero_weight):
    m, r = U.shape
    n = V.shape[1]
    gB = np.zeros((m, n))
    pen = 0.0
    for i in range(m):
        for j in range(n):
            b = 0.0
            for k in range(r):
                b += U[i, k] * V[k, j]
            s = S[i, j]
            if s > 0:
                res = margin - b
                if res > 0.0:
                    pen += res * res
                    gB[i, j] = -2.0 * res
            elif s < 0:
                res = b + margin
                if res > 0.0:
                    pen += res * res
                    gB[i, j] = 2.0 * res
            else:
                pen += zero_weight * b * b
                gB[i, j] = 2.0 * zero_weight * b
    gU = np.zeros((m, r))
    gV = np.zeros((r, n))
    for i in range(m):
        for j in range(n):
            g = gB[i, j]
            if g != 0.0:
                for k in range(r):
                    gU[i, k] += g * V[k, j]
                    gV[k, j] += g * U[i, k]
    return pen, gU, gV


def _solve_dependent_loops(U, V, dep_cols, dep_ptr, dep_rows):
    r = U.shape[1]
    skipped = 0
    for idx in range(len(dep_cols)):
        j = dep_cols[idx]
        lo = dep_ptr[idx]
        hi = dep_ptr[idx + 1]
        s = hi - lo
        M = np.empty((s, s))
        rhs = np.empty(s)
        scale = 0.0
        for t in range(s):
            i = dep_rows[lo + t]
            acc = 0.0
            for k in range(s, r):
                acc += U[i, k] * V[k, j]
            rhs[t] = -acc
            for k in range(s):
                M[t, k] = U[i, k]
                a = abs(U[i, k])
                if a > scale:
                    scale = a
        # Gaussian elimination with partial pivoting; no exceptions in njit
        singular = False
        perm_rhs = rhs
        for col in range(s):
            piv = col
            best = abs(M[col, col])
            for row in range(col + 1, s):
                a = abs(M[row, col])
                if a > best:
                    best = a
                    piv = row
            if best <= 1e-12 * (scale + 1e-300):
                singular = True
                break
            if piv != col:
                for k in range(col, s):
                    tmp = M[col, k]
                    M[col, k] = M[piv, k]
                    M[piv, k] = tmp
                tmp = perm_rhs[col]
                perm_rhs[col] = perm_rhs[piv]
                perm_rhs[piv] = tmp
            for row in range(col + 1, s):
                f = M[row, col] / M[col, col]
                if f != 0.0:
                    for k in range(col, s):
                        M[row, k] -= f * M[col, k]
                    perm_rhs[row] -= f * perm_rhs[col]
        if singular:
            skipped += 1
            continue
        for col in range(s - 1, -1, -1):
            acc = perm_rhs[col]
            for k in range(col + 1, s):
                acc -= M[col, k] * V[k, j]
            V[col, j] = acc / M[col, col]
    return skipped


def _descent_loops(U, V, S, margin, zero_weight, iters, lr0,
                   dep_cols, dep_ptr, dep_rows, free_u, free_v):
    lr = lr0
    _solve_dependent_loops(U, V, dep_cols, dep_ptr, dep_rows)
    pen, gU, gV = _penalty_grad_loops(U, V, S, margin, zero_weight)
    for _ in range(iters):
        if pen < 1e-22 or lr < 1e-14:
            break
        U2 = U - lr * gU * free_u
        V2 = V - lr * gV * free_v
        _solve_dependent_loops(U2, V2, dep_cols, dep_ptr, dep_rows)
        pen2, gU2, gV2 = _penalty_grad_loops(U2, V2, S, margin, zero_weight)
        if pen2 <= pen:
            U = U2
            V = V2
            pen = pen2
            gU = gU2
            gV = gV2
            lr *= 1.05
        else:
            lr *= 0.5
    return U, V, pen


def _want_numba() -> bool:
    flag = os.environ.get("SIGNRANK_NO_NUMBA", "0").strip().lower()
    return flag in ("", "0", "false", "no")


BACKEND = "numpy"
penalty_grad = _penalty_grad_numpy
solve_dependent = _solve_dependent_numpy
descent = _descent_numpy
penalty_grad_numpy = _penalty_grad_numpy
solve_dependent_numpy = _solve_dependent_numpy
descent_numpy = _descent_numpy
penalty_grad_numba = None
solve_dependent_numba = None
descent_numba = None

if _want_numba():
    try:
        from numba import njit

        penalty_grad_numba = njit(cache=True)(_penalty_grad_loops)
        solve_dependent_numba = njit(cache=True)(_solve_dependent_loops)

        @njit(cache=True)
        def _descent_numba(U, V, S, margin, zero_weight, iters, lr0,
                           dep_cols, dep_ptr, dep_rows, free_u, free_v):
            lr = lr0
            solve_dependent_numba(U, V, dep_cols, dep_ptr, dep_rows)
            pen, gU, gV = penalty_grad_numba(U, V, S, margin, zero_weight)
            for _ in range(iters):
                if pen < 1e-22 or lr < 1e-14:
                    break
                U2 = U - lr * gU * free_u
                V2 = V - lr * gV * free_v
                solve_dependent_numba(U2, V2, dep_cols, dep_ptr, dep_rows)
                pen2, gU2, gV2 = penalty_grad_numba(U2, V2, S, margin, zero_weight)
                if pen2 <= pen:
                    U = U2
                    V = V2
                    pen = pen2
                    gU = gU2
                    gV = gV2
                    lr *= 1.05
                else:
                    lr *= 0.5
            return U, V, pen

        descent_numba = _descent_numba
        penalty_grad = penalty_grad_numba
        solve_dependent = solve_dependent_numba
        descent = descent_numba
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on environment
        pass


def empty_dependent():
    """Dependency arrays describing "no solvable columns"."""
    return (
        np.zeros(0, dtype=np.int64),
        np.zeros(1, dtype=np.int64),
        np.zeros(0, dtype=np.int64),
    )
