"""LP and MILP help for interval-cover problems.

The cover problem at target d is an exact cover: every set of size < d in
exactly one chosen interval, every size-d set in at most one.  If weights w
(free on the first kind of item, non-negative on the second) give every
candidate interval a non-negative total while summing to a negative number,
no cover exists: summing the interval totals over a cover would give at
most sum(w) < 0.

The weights come from a floating-point LP, but they are only a hint: they
are rounded to rationals and the inequalities are re-checked in exact
integer arithmetic before anything is concluded.

``solve_cover`` hands the whole 0/1 problem to the HiGHS MILP solver.  A
cover it returns is checked by the caller; an infeasibility verdict is
trusted and reported as such.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, linprog, milp
from scipy.sparse import csr_matrix

_DENOMINATORS = (1, 2, 6, 12, 60, 420, 2520, 27720, 10**6)


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        bit = mask & -mask
        mask ^= bit
        out.append(bit.bit_length() - 1)
    return out


def verify_certificate(options: Sequence[int], n_exact: int, weights: Sequence[int]) -> bool:
    """Exact check of an integer refutation certificate.

    ``options`` are item bitmasks, items below ``n_exact`` must be covered
    exactly once, the others at most once.
    """
    if any(w < 0 for w in weights[n_exact:]):
        return False
    if sum(weights) >= 0:
        return False
    for im in options:
        if sum(weights[i] for i in _members(im)) < 0:
            return False
    return True


def refute_cover(options: Sequence[int], n_items: int, n_exact: int) -> list[int] | None:
    """Integer weights proving the cover problem infeasible, or None."""
    if n_exact == 0:
        return None
    rows, cols = [], []
    for o, im in enumerate(options):
        for i in _members(im):
            rows.append(o)
            cols.append(i)
    if options:
        a_ub = -csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(options), n_items))
        b_ub = np.zeros(len(options))
    else:
        a_ub, b_ub = None, None
    bounds = [(-1.0, 1.0)] * n_exact + [(0.0, 1.0)] * (n_items - n_exact)
    res = linprog(np.ones(n_items), A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status != 0 or res.fun > -1e-9:
        return None
    for den in _DENOMINATORS:
        fracs = [Fraction(float(v)).limit_denominator(den) for v in res.x]
        scale = lcm(*(f.denominator for f in fracs))
        weights = [int(f * scale) for f in fracs]
        if verify_certificate(options, n_exact, weights):
            return weights
    return None


def solve_cover(options: Sequence[int], n_items: int, n_exact: int, time_limit: float = 300.0) -> list[int] | None | bool:
    """Indices of options forming a cover, None if infeasible, False on timeout."""
    if not options:
        return [] if n_exact == 0 else None
    rows, cols = [], []
    for o, im in enumerate(options):
        for i in _members(im):
            rows.append(i)
            cols.append(o)
    a = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n_items, len(options)))
    lo = np.array([1.0] * n_exact + [0.0] * (n_items - n_exact))
    res = milp(
        np.zeros(len(options)),
        constraints=LinearConstraint(a, lo, np.ones(n_items)),
        integrality=np.ones(len(options)),
        bounds=Bounds(0, 1),
        options={"time_limit": time_limit},
    )
    if res.status == 2:
        return None
    if res.x is None:
        return False
    return [o for o, v in enumerate(res.x) if v > 0.5]
