"""Lipschitz seminorms, the explicit commutator-norm formula, and comparisons.

Window quantities at explicit depth ``N``:

* ``lipschitz_depth`` — the sup of ``|a(x) - a(y)| / dist(x, y)`` over
  distinct deepest-level centers (the zero center evaluated at its
  representative point ``pi**N``), computed exactly by a subtree min/max
  sweep rather than over all pairs;
* ``spectral_seminorm_formula`` — the explicit maximum of weighted
  child-difference row sums whose square root equals the commutator operator
  norm (rows of the symmetrized commutator have disjoint column supports);
* ``check_norm_comparison`` — evaluates the two-sided comparison
  ``c_lower * L1 <= L_D <= c_upper * L1`` with
  ``c_lower = (p**(1/e) - 1)/(2 p**(1/e) sqrt(p**f))`` and
  ``c_upper = sqrt((p**f - 1)/p**f)``, plus the formula-vs-matrix equality,
  and reports pass flags.

The formula route never touches the sparse matrix; the matrix route never
uses the formula — their agreement is part of the validation surface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field_model import Center, FieldParams, norm, pi_power
from .operators import TestFunction, commutator_norm
from .tree import TreeWindow

__all__ = [
    "SeminormReport",
    "lipschitz_depth",
    "spectral_seminorm_formula",
    "comparison_constants",
    "check_norm_comparison",
    "testfn_library",
]


# ---------------------------------------------------------------------------
# Depth-N Lipschitz seminorm (exact subtree sweep)
# ---------------------------------------------------------------------------


def _deepest_values(window: TreeWindow, a: TestFunction) -> tuple[np.ndarray, np.ndarray, float]:
    """Min and max function values carried by each deepest-level vertex.

    Nonzero centers carry their representative-point value.  The zero vertex
    carries two points — the true zero element and the stand-in ``pi**N``
    that the multiplication operator uses for it — so the sup ranges over
    every point any operator quantity evaluates.  Returns the per-vertex
    minima, maxima, and the zero-pair ratio
    ``|a(0) - a(pi**N)| * p**(N/e)`` (that pair meets below the window).
    """
    params = window.params
    N = window.max_level
    size = window.level_size(N)
    mins = np.empty(size)
    a_zero = a(window.center(N, 0))
    a_pin = a(pi_power(params, N, N + 1, start=window.min_level))
    mins[0] = min(a_zero, a_pin)
    for rank in range(1, size):
        mins[rank] = a(window.center(N, rank))
    maxs = mins.copy()
    maxs[0] = max(a_zero, a_pin)
    zero_pair = abs(a_zero - a_pin) * params.scale_float(N)
    return mins, maxs, zero_pair


def lipschitz_depth(window: TreeWindow, a: TestFunction) -> float:
    """Exact sup of ``|a(x)-a(y)| / dist(x,y)`` over deepest-level points.

    The point set is the deepest-level centers (the zero vertex contributing
    both the zero element and its stand-in ``pi**N``).  Two points meeting at
    a level-``l`` vertex are at distance ``p**(-l/e)``, so the sup decomposes
    over internal vertices: for each vertex, the largest cross-child value
    spread times ``p**(l/e)``.  Subtree minima and maxima propagate upward in
    one sweep (O(total) instead of O(leaves**2) pairs).

    Exact for functions locally constant at the window depth; in general a
    lower bound for the untruncated seminorm.
    """
    params = window.params
    q = params.q_res
    cur_min, cur_max, best = _deepest_values(window, a)
    for level in range(window.max_level - 1, window.min_level - 1, -1):
        mins = cur_min.reshape(-1, q)
        maxs = cur_max.reshape(-1, q)
        i_max = np.argmax(maxs, axis=1)
        j_min = np.argmin(mins, axis=1)
        top = maxs[np.arange(len(maxs)), i_max]
        bot = mins[np.arange(len(mins)), j_min]
        spread = np.where(i_max != j_min, top - bot, -np.inf)
        if q > 1:
            # Same-child argmax/argmin: best is max vs second-min or
            # second-max vs min across the remaining children.
            sorted_min = np.sort(mins, axis=1)
            sorted_max = np.sort(maxs, axis=1)
            alt = np.maximum(top - sorted_min[:, 1], sorted_max[:, -2] - bot)
            spread = np.where(i_max != j_min, spread, alt)
        level_best = float(np.max(spread)) * params.scale_float(level)
        best = max(best, level_best)
        cur_min = mins.min(axis=1)
        cur_max = maxs.max(axis=1)
    return best


# ---------------------------------------------------------------------------
# Explicit spectral-seminorm formula
# ---------------------------------------------------------------------------


def _zero_row_terms(
    params: FieldParams, a: TestFunction, n: int, start: int
) -> tuple[float, list[float]]:
    """Zero-vertex child differences at level ``n``.

    Returns ``(d_next, d_sibs)``: the difference ``a(pi**n) - a(pi**(n+1))``
    toward the deeper zero vertex, and the differences
    ``a(pi**n) - a(s * pi**n)`` toward the nonzero-digit children.  The
    digit-1 sibling is the point ``pi**n`` itself, so its difference
    vanishes identically.
    """
    a_zero = a(pi_power(params, n, n + 1, start=start))
    d_next = a_zero - a(pi_power(params, n + 1, n + 2, start=start))
    d_sibs = []
    depth_digits = n - start
    for digit in range(1, params.q_res):
        sib = Center(params, start, (0,) * depth_digits + (digit,))
        d_sibs.append(a_zero - a(sib))
    return d_next, d_sibs


def spectral_seminorm_formula(
    window: TreeWindow, a: TestFunction, literal_families: bool = False
) -> float:
    """Explicit maximum-row formula for the commutator operator norm.

    For a nonzero level-``n`` center ``x`` the row contributes
    ``(1/p**f) * sum_children (a(x) - a(child))**2 * p**(2n/e)``; the zero
    vertex contributes the same sum over its children with the convention
    values ``a(pi**n)``, ``a(pi**(n+1))``.  The square root of the maximum
    over ``n <= N-1`` equals the commutator norm exactly (disjoint row
    supports).

    ``literal_families=True`` instead takes, at the zero vertex, the larger
    of two separately displayed families: the next-level difference counted
    with multiplicity ``p**f - 1``, and the sibling differences alone.  For
    ``p**f = 2`` this coincides with the default (the digit-1 sibling
    difference vanishes identically); for ``p**f >= 3`` it overcounts the
    next-level term and can exceed the matrix norm — it is kept as the
    displayed-form variant, not used in comparisons.
    """
    params = window.params
    q = params.q_res
    best_sq = 0.0
    for n in range(window.min_level, window.max_level):
        weight = params.scale_float(2 * n)
        # Nonzero centers: exact child-difference rows.
        size = window.level_size(n)
        for rank in range(1, size):
            x = window.center(n, rank)
            ax = a(x)
            row = 0.0
            for digit in range(q):
                child = Center(params, window.min_level, x.digits + (digit,))
                row += (ax - a(child)) ** 2
            best_sq = max(best_sq, row / q * weight)
        # Zero vertex.
        d_next, d_sibs = _zero_row_terms(params, a, n, window.min_level)
        sib_sq = sum(d * d for d in d_sibs)
        if literal_families:
            fam_next = (q - 1) / q * d_next**2 * weight
            fam_sibs = sib_sq / q * weight
            best_sq = max(best_sq, fam_next, fam_sibs)
        else:
            best_sq = max(best_sq, (d_next**2 + sib_sq) / q * weight)
    return float(np.sqrt(best_sq))


# ---------------------------------------------------------------------------
# Two-sided comparison
# ---------------------------------------------------------------------------


def comparison_constants(params: FieldParams) -> tuple[float, float]:
    """Lower and upper comparison constants between ``L_D`` and ``L_1``.

    ``lower = (p**(1/e) - 1) / (2 p**(1/e) sqrt(p**f))``,
    ``upper = sqrt((p**f - 1) / p**f)``.
    """
    beta = params.scale_float(1)
    lower = (beta - 1.0) / (2.0 * beta * np.sqrt(params.q_res))
    upper = np.sqrt((params.q_res - 1.0) / params.q_res)
    return float(lower), float(upper)


@dataclass(frozen=True)
class SeminormReport:
    """Depth-N seminorm quantities and comparison outcomes for one function."""

    function_id: str
    depth: int
    L1_depthN: float
    LD_formula_depthN: float
    commutator_norm_depthN: float
    lower_constant: float
    upper_constant: float
    sandwich_passed: bool
    formula_matches_matrix: bool

    @property
    def passed(self) -> bool:
        return self.sandwich_passed and self.formula_matches_matrix


def check_norm_comparison(
    window: TreeWindow, a: TestFunction, match_tol: float = 1e-8
) -> SeminormReport:
    """Evaluate the seminorm sandwich and the formula-vs-matrix equality.

    A failed flag is a hard failure for callers (validation suite and
    acceptance tests assert on it), not a warning.
    """
    l1 = lipschitz_depth(window, a)
    ld = spectral_seminorm_formula(window, a)
    cn = commutator_norm(window, a)
    lower, upper = comparison_constants(window.params)
    slack = 1e-12 * max(1.0, l1)
    sandwich = (lower * l1 - slack <= ld) and (ld <= upper * l1 + slack)
    matches = abs(ld - cn) <= match_tol * max(1.0, cn)
    return SeminormReport(
        function_id=a.name,
        depth=window.max_level,
        L1_depthN=float(l1),
        LD_formula_depthN=float(ld),
        commutator_norm_depthN=float(cn),
        lower_constant=lower,
        upper_constant=upper,
        sandwich_passed=bool(sandwich),
        formula_matches_matrix=bool(matches),
    )


# ---------------------------------------------------------------------------
# Test-function library
# ---------------------------------------------------------------------------


def _norm_float(x: Center) -> float:
    return norm(x).to_float()


def _dist_to_point(x: Center, c_digits: tuple[int, ...], params: FieldParams) -> float:
    """``|x - c|`` for the representative point of ``x`` (zero-padded tail).

    ``c`` is the finite digit string of a point at the window's start level.
    """
    length = max(len(x.digits), len(c_digits))
    for j in range(length):
        xd = x.digits[j] if j < len(x.digits) else 0
        cd = c_digits[j] if j < len(c_digits) else 0
        if xd != cd:
            return params.scale_float(-(x.start + j))
    return 0.0


def _make_abs_shift(params: FieldParams, c_digits: tuple[int, ...], name: str) -> TestFunction:
    return TestFunction(
        name=name,
        evaluator=lambda x: _dist_to_point(x, c_digits, params),
        known_lipschitz=1.0,
    )


def _make_ball_indicator(
    params: FieldParams, prefix: tuple[int, ...], name: str
) -> TestFunction:
    """Indicator of the radius-``p**(-k/e)`` ball with digit prefix of length k."""
    k = len(prefix)

    def ev(x: Center) -> float:
        for j in range(k):
            xd = x.digits[j] if j < len(x.digits) else 0
            if xd != prefix[j]:
                return 0.0
        return 1.0

    # Nearest point outside the ball differs in the last prefix digit:
    # separation p**(-(k-1)/e), giving seminorm p**((k-1)/e).
    return TestFunction(name=name, evaluator=ev, known_lipschitz=params.scale_float(k - 1))


def _make_random_locally_constant(
    params: FieldParams, depth: int, seed: int
) -> TestFunction:
    rng = np.random.default_rng(seed)
    table = rng.uniform(0.0, 1.0, size=params.q_res**depth)
    q = params.q_res

    def ev(x: Center) -> float:
        rank = 0
        for j in range(depth):
            xd = x.digits[j] if j < len(x.digits) else 0
            rank = rank * q + xd
        return float(table[rank])

    return TestFunction(name=f"rand-depth{depth}-seed{seed}", evaluator=ev)


def _make_decay(params: FieldParams, alpha: float, name: str) -> TestFunction:
    def ev(x: Center) -> float:
        r = _norm_float(x)
        return 1.0 / (1.0 + r**alpha)

    return TestFunction(name=name, evaluator=ev, decay_alpha=alpha, decay_constant=1.0)


def testfn_library(params: FieldParams) -> list[TestFunction]:
    """Standard library of at least ten test functions.

    Constants, the norm function, shifted norms, ball indicators at depths
    1..3, seeded random locally constant functions, and decaying functions
    ``1/(1 + |x|**alpha)`` for ``alpha in {2, ef}`` intended for enlarged
    windows (``alpha`` must exceed ``max(1, ef/2)`` to be admissible there —
    the ``alpha = ef`` entry fails that exactly when ``ef = 1``).
    """
    lib = [
        TestFunction(name="const-1", evaluator=lambda x: 1.0, known_lipschitz=0.0),
        TestFunction(name="abs", evaluator=_norm_float, known_lipschitz=1.0),
        _make_abs_shift(params, (1,), "abs-shift-1"),
        _make_abs_shift(params, (0, 1), "abs-shift-pi"),
        _make_abs_shift(params, (1, 0, 1), "abs-shift-1+pi2"),
        _make_ball_indicator(params, (0,), "ball-0-depth1"),
        _make_ball_indicator(params, (0, 1), "ball-pi-depth2"),
        _make_ball_indicator(params, (1, 0, 0), "ball-1-depth3"),
        _make_random_locally_constant(params, depth=3, seed=7),
        _make_random_locally_constant(params, depth=4, seed=11),
        _make_decay(params, 2.0, "decay-quadratic"),
        _make_decay(params, float(params.ef), "decay-ef"),
    ]
    return lib
