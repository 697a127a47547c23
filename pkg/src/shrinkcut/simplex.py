"""Dense primal simplex for box-constrained linear programs.

Solves max c.x subject to A x <= b and 0 <= x <= upper with a full-tableau
bounded-variable simplex. Nonbasic variables sit at either bound and may move
to the other bound without a basis change. A phase-1 pass with artificial
variables handles negative right-hand sides; the triangle-relaxation LPs this
package builds never need it, but the solver does not assume that.

Determinism: entering variables are picked by Dantzig's rule with
smallest-index tie-breaking, switching to Bland's rule permanently after an
iteration threshold as an anti-cycling fallback. The same input always yields
the same pivots and the same basic optimal solution.
"""

from __future__ import annotations

import numpy as np

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-6
COST_TOL = 1e-9


class SimplexError(RuntimeError):
    """Numerical failure: iteration cap, unbounded direction, or drift."""


class InfeasibleError(SimplexError):
    """The constraint system has no point inside the variable box."""


def solve_box_lp(
    c: np.ndarray,
    a_ub: np.ndarray,
    b_ub: np.ndarray,
    upper: np.ndarray,
    max_iterations: int | None = None,
) -> tuple[np.ndarray, float]:
    """Maximize c.x s.t. a_ub x <= b_ub, 0 <= x <= upper. Returns (x, value).

    upper entries may be np.inf. Raises InfeasibleError or SimplexError;
    never returns a silently wrong answer (the result is re-verified against
    the constraints before returning).
    """
    c = np.asarray(c, dtype=float)
    a_ub = np.asarray(a_ub, dtype=float)
    b_ub = np.asarray(b_ub, dtype=float)
    upper = np.asarray(upper, dtype=float)
    n = c.size
    if a_ub.size == 0:
        a_ub = a_ub.reshape(0, n)
    m = a_ub.shape[0]
    if a_ub.shape != (m, n) or b_ub.shape != (m,) or upper.shape != (n,):
        raise ValueError("inconsistent problem dimensions")
    if np.any(upper < 0):
        raise InfeasibleError("negative upper bound")

    flipped = b_ub < 0
    n_art = int(np.count_nonzero(flipped))
    total = n + m + n_art

    # Tableau columns: structural | slacks | artificials (phase 1 only).
    tab = np.zeros((m, total))
    tab[:, :n] = a_ub
    tab[:, n : n + m] = np.eye(m)
    rhs = b_ub.copy()
    if n_art:
        rows = np.flatnonzero(flipped)
        tab[rows, :] *= -1.0
        rhs[rows] *= -1.0
        tab[rows, n + m + np.arange(n_art)] = 1.0

    bounds = np.concatenate([upper, np.full(m + n_art, np.inf)])
    basis = np.arange(n, n + m)
    if n_art:
        basis = basis.copy()
        basis[np.flatnonzero(flipped)] = n + m + np.arange(n_art)
    beta = rhs.copy()
    at_upper = np.zeros(total, dtype=bool)
    is_basic = np.zeros(total, dtype=bool)
    is_basic[basis] = True

    if max_iterations is None:
        max_iterations = 20000 + 40 * (m + total)
    bland_after = max(1000, 10 * (m + total))
    state = _State(tab, beta, basis, at_upper, is_basic, bounds, bland_after, max_iterations)

    if n_art:
        c_phase1 = np.zeros(total)
        c_phase1[n + m :] = -1.0
        _pivot_loop(state, c_phase1)
        infeas = beta[np.isin(basis, np.arange(n + m, total))].sum() if n_art else 0.0
        if infeas > FEAS_TOL:
            raise InfeasibleError(f"phase 1 ended with residual infeasibility {infeas:.3g}")
        bounds[n + m :] = 0.0

    c_full = np.zeros(total)
    c_full[:n] = c
    _pivot_loop(state, c_full)

    x_full = np.where(at_upper & np.isfinite(bounds), bounds, 0.0)
    x_full[basis] = beta
    x = np.clip(x_full[:n], 0.0, np.where(np.isfinite(upper), upper, np.inf))
    _verify(x, a_ub, b_ub)
    return x, float(c @ x)


class _State:
    def __init__(self, tab, beta, basis, at_upper, is_basic, bounds, bland_after, max_iterations):
        self.tab = tab
        self.beta = beta
        self.basis = basis
        self.at_upper = at_upper
        self.is_basic = is_basic
        self.bounds = bounds
        self.bland_after = bland_after
        self.max_iterations = max_iterations
        self.iterations = 0


def _pivot_loop(s: _State, c: np.ndarray) -> None:
    # Reduced costs from scratch for the given objective; pivots keep them
    # updated incrementally afterwards.
    d = c - c[s.basis] @ s.tab
    while True:
        if s.iterations > s.max_iterations:
            raise SimplexError(f"iteration cap {s.max_iterations} exceeded")
        use_bland = s.iterations > s.bland_after
        j = _entering(s, d, use_bland)
        if j < 0:
            return
        s.iterations += 1
        direction = -1.0 if s.at_upper[j] else 1.0
        col = s.tab[:, j]
        move = direction * col

        t_best = s.bounds[j] if np.isfinite(s.bounds[j]) else np.inf
        row = -1
        leave_to_upper = False
        dec = move > PIVOT_TOL
        if np.any(dec):
            ratios = np.maximum(s.beta[dec], 0.0) / move[dec]
            k = _best_row(np.flatnonzero(dec), ratios, s.basis)
            if ratios[k[1]] < t_best:
                t_best, row, leave_to_upper = ratios[k[1]], k[0], False
        ub_basis = s.bounds[s.basis]
        inc = (move < -PIVOT_TOL) & np.isfinite(ub_basis)
        if np.any(inc):
            ratios = np.maximum(ub_basis[inc] - s.beta[inc], 0.0) / (-move[inc])
            k = _best_row(np.flatnonzero(inc), ratios, s.basis)
            if ratios[k[1]] < t_best:
                t_best, row, leave_to_upper = ratios[k[1]], k[0], True

        if not np.isfinite(t_best):
            raise SimplexError("unbounded improving direction")

        if row < 0:
            # The entering variable travels to its other bound; basis unchanged.
            s.beta -= t_best * move
            s.at_upper[j] = not s.at_upper[j]
            continue

        enter_val = (s.bounds[j] if s.at_upper[j] else 0.0) + direction * t_best
        leaving = s.basis[row]
        s.beta -= t_best * move
        s.beta[row] = enter_val

        piv = s.tab[row, j]
        new_row = s.tab[row] / piv
        col_copy = s.tab[:, j].copy()
        s.tab -= np.outer(col_copy, new_row)
        s.tab[row] = new_row
        d -= d[j] * new_row

        s.basis[row] = j
        s.is_basic[j] = True
        s.is_basic[leaving] = False
        s.at_upper[j] = False
        s.at_upper[leaving] = leave_to_upper and np.isfinite(s.bounds[leaving])


def _entering(s: _State, d: np.ndarray, use_bland: bool) -> int:
    eligible = ~s.is_basic & (
        (~s.at_upper & (d > COST_TOL)) | (s.at_upper & (d < -COST_TOL))
    )
    if not np.any(eligible):
        return -1
    idx = np.flatnonzero(eligible)
    if use_bland:
        return int(idx[0])
    return int(idx[np.argmax(np.abs(d[idx]))])


def _best_row(rows: np.ndarray, ratios: np.ndarray, basis: np.ndarray) -> tuple[int, int]:
    """Pick the blocking row: minimum ratio, ties broken by smallest basis id."""
    t = ratios.min()
    tied = np.flatnonzero(ratios == t)
    k = tied[np.argmin(basis[rows[tied]])]
    return int(rows[k]), int(k)


def _verify(x: np.ndarray, a_ub: np.ndarray, b_ub: np.ndarray) -> None:
    if a_ub.shape[0] and np.any(a_ub @ x > b_ub + FEAS_TOL):
        worst = float(np.max(a_ub @ x - b_ub))
        raise SimplexError(f"solution drifted infeasible by {worst:.3g}")
