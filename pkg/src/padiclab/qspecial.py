"""Basic q-hypergeometric machinery: series, roots, and eigenvector tails.

The depth-direction spectral problem reduces to the entire function

    F(z) = sum_(n>=0) (-1)**n q**(n(n-1)/2) z**n / ((q;q)_n)**2,    0 < q < 1,

whose roots ``lambda_0 < lambda_1 < ...`` are the base eigenvalues; the full
spectrum consists of the scaled families ``p**(2m/e) * lambda_n``.  The roots
grow like ``q**(-n)`` and satisfy the two-sided bracket

    q**(-n) - 1/(1 - q**n)  <=  lambda_n  <=  q**(-n)      (n >= 1),

with ``lambda_0`` in ``(0, 1)``.  Root localization sharp enough for tiny
residuals requires precision growing like ``n**2 log(1/q)`` digits (the
derivative at ``lambda_n`` grows like ``q**(-n(n-1)/2)``), so everything here
runs in mpmath with per-root working precision.

Also provided: the forward recurrence for the tridiagonal eigenvector at a
given eigenvalue (a shooting diagnostic: at a true eigenvalue the decaying
solution is selected and the tail mass is tiny), and the closed-form series
coefficients ``c(2k)`` reconstructing the same eigenvector, used as mutual
cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp
import numpy as np

from .field_model import FieldParams

__all__ = [
    "BracketError",
    "SeriesError",
    "RootTable",
    "q_pochhammer",
    "phi11",
    "phi11_derivative",
    "lower_bracket",
    "upper_bracket",
    "find_roots",
    "eigvec_recurrence",
    "eigvec_tail_mass",
    "eigvec_series_c",
    "eigvec_from_series",
]


class BracketError(RuntimeError):
    """A root bracket failed its endpoint sign certification."""


class SeriesError(RuntimeError):
    """A series evaluation failed to meet its tail criterion."""


def q_pochhammer(q, n: int):
    """Finite product ``(q; q)_n = prod_(k=1..n) (1 - q**k)``.

    Exact for :class:`fractions.Fraction` input; mpmath floats otherwise.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if isinstance(q, Fraction):
        out = Fraction(1)
        for k in range(1, n + 1):
            out *= 1 - q**k
        return out
    qv = mp.mpf(q)
    out = mp.mpf(1)
    for k in range(1, n + 1):
        out *= 1 - qv**k
    return out


def _phi11_sum(q: mp.mpf, z: mp.mpf, target_tol, max_terms: int, derivative: bool):
    """Shared evaluator for the series and its z-derivative."""
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")
    if target_tol is None:
        target_tol = mp.mpf(10) ** (-(mp.mp.dps - 5))
    term = mp.mpf(1)  # series term t_n at n=0
    total = mp.mpf(0) if derivative else mp.mpf(1)
    prev_mag = abs(term)
    decreasing_ok = False
    for n in range(1, max_terms + 1):
        term = term * (-z) * q ** (n - 1) / (1 - q**n) ** 2
        contrib = n * term / z if derivative else term
        total += contrib
        mag = abs(contrib)
        if mag < target_tol * max(1, abs(total)) and mag <= prev_mag:
            decreasing_ok = True
            break
        prev_mag = mag
    if not decreasing_ok:
        raise SeriesError(
            f"series did not meet tail tolerance {target_tol} within {max_terms} terms"
        )
    return total


def phi11(q, z, target_tol=None, max_terms: int = 2000):
    """Evaluate the base q-hypergeometric series at ``z``.

    Sums until the next term is below ``target_tol * max(1, |sum|)`` *and*
    terms have started decreasing; raises :class:`SeriesError` if
    ``max_terms`` is exhausted first.  Runs at the caller's mpmath precision
    (``target_tol=None`` uses that precision's floor).
    """
    return _phi11_sum(mp.mpf(q), mp.mpf(z), target_tol, max_terms, derivative=False)


def phi11_derivative(q, z, target_tol=None, max_terms: int = 2000):
    """Derivative in ``z`` of :func:`phi11` (termwise differentiation)."""
    return _phi11_sum(mp.mpf(q), mp.mpf(z), target_tol, max_terms, derivative=True)


def _mp_q(params: FieldParams) -> mp.mpf:
    return mp.power(params.p, -mp.mpf(2) / params.e)


def lower_bracket(params: FieldParams, n: int) -> float:
    """Lower root bracket ``p**(2n/e) * (1 - p**(-2n/e) / (1 - p**(-2n/e)))``.

    Equals ``q**(-n) - 1/(1 - q**n)``; positive for all ``n >= 1`` except
    that it degenerates to 0 at ``q = 1/2, n = 1``.
    """
    if n < 1:
        raise ValueError("lower bracket defined for n >= 1")
    q = params.q
    return params.scale_float(2 * n) * (1.0 - q**n / (1.0 - q**n))

def upper_bracket(params: FieldParams, n: int) -> float:
    """Upper root bracket ``p**(2n/e) = q**(-n)`` (equals 1 at ``n = 0``)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return params.scale_float(2 * n)


@dataclass(frozen=True)
class RootTable:
    """Certified roots ``lambda_0..lambda_n_max`` for one parameter set.

    Attributes:
        params: Field parameters.
        roots: Roots as mpmath floats, ascending.
        residuals: ``|F(lambda_n)|`` as floats (evaluated at full precision).
        brackets: The certified sign-change intervals used per root.
        dps_used: Working decimal precision per root.
    """

    params: FieldParams
    roots: tuple = ()
    residuals: tuple = ()
    brackets: tuple = ()
    dps_used: tuple = ()

    @property
    def n_max(self) -> int:
        return len(self.roots) - 1

    def root(self, n: int) -> mp.mpf:
        return self.roots[n]

    def values_float(self) -> np.ndarray:
        return np.array([float(r) for r in self.roots])


def _root_dps(params: FieldParams, n: int) -> int:
    """Working precision for root ``n``.

    Near ``lambda_n ~ Q**n`` the series terms peak at roughly
    ``Q**(n(n+1)/2)`` while the values being sign-certified are as small as
    roughly ``Q**(-n(n+1)/2)``, so the cancellation spans about
    ``n(n+1) log10(Q)`` digits; add fixed headroom.
    """
    log10Q = 2 * mp.log10(mp.mpf(params.p)) / params.e
    return int(n * (n + 1) * log10Q) + 60


def _find_one_root(params: FieldParams, n: int, target_tol: float):
    """Locate lambda_n: certified bisection bracket, then Newton polish."""
    dps = _root_dps(params, n)
    with mp.workdps(dps):
        q = _mp_q(params)
        one = mp.mpf(1)
        if n == 0:
            lo = mp.mpf(10) ** (-12)
            hi = one
        else:
            lower = q ** (-n) - 1 / (1 - q**n)
            lo = max(lower, q ** (-(n - 1)))
            hi = q ** (-n)
        f_lo = phi11(q, lo)
        f_hi = phi11(q, hi)
        if f_lo == 0 or f_hi == 0 or mp.sign(f_lo) == mp.sign(f_hi):
            # Do not silently widen; scan the interval once for a sign change
            # and report failure if none is found.
            grid = [lo + (hi - lo) * k / 64 for k in range(65)]
            vals = [phi11(q, g) for g in grid]
            found = None
            for a, b, fa, fb in zip(grid, grid[1:], vals, vals[1:]):
                if fa != 0 and fb != 0 and mp.sign(fa) != mp.sign(fb):
                    found = (a, b, fa, fb)
                    break
            if found is None:
                raise BracketError(
                    f"no sign change on the bracket for root {n} "
                    f"(params p={params.p}, e={params.e}, f={params.f})"
                )
            lo, hi, f_lo, f_hi = found
        # Bisection: certify and localize to ~1e-15 relative.
        for _ in range(60):
            mid = (lo + hi) / 2
            f_mid = phi11(q, mid)
            if f_mid == 0:
                lo = hi = mid
                break
            if mp.sign(f_mid) == mp.sign(f_lo):
                lo, f_lo = mid, f_mid
            else:
                hi, f_hi = mid, f_mid
            if hi - lo < mp.mpf(10) ** (-15) * hi:
                break
        root = (lo + hi) / 2
        # Newton polish down to the precision floor.
        for _ in range(40):
            fval = phi11(q, root)
            if abs(fval) == 0:
                break
            dval = phi11_derivative(q, root)
            step = fval / dval
            new_root = root - step
            if not lo / 2 < new_root < hi * 2:
                break
            root = new_root
            if abs(step) < mp.mpf(10) ** (-(dps - 10)) * abs(root):
                break
        residual = abs(phi11(q, root))
        if float(residual) >= target_tol:
            raise BracketError(
                f"root {n} residual {float(residual):.3e} above target {target_tol}"
            )
        # Certify the final enclosure by endpoint signs.
        delta = mp.mpf(10) ** (-(dps - 15)) * root
        f_left, f_right = phi11(q, root - delta), phi11(q, root + delta)
        if f_left != 0 and f_right != 0 and mp.sign(f_left) == mp.sign(f_right):
            raise BracketError(f"final enclosure for root {n} lost its sign change")
        return root, float(residual), (float(lo), float(hi)), dps


_ROOT_CACHE: dict[tuple, RootTable] = {}


def find_roots(params: FieldParams, n_max: int, target_tol: float = 1e-10) -> RootTable:
    """Compute the roots ``lambda_0 .. lambda_n_max`` with certified brackets.

    Each root is isolated by endpoint sign checks on its bracket (for
    ``n >= 1``: from ``max(lower bracket, previous upper)`` to ``q**(-n)``;
    for ``lambda_0``: ``(1e-12, 1]``), refined by bisection plus a Newton
    polish at per-root precision, and re-certified by a final sign change.
    Raises :class:`BracketError` on any certification failure rather than
    widening brackets silently.  Results are cached per parameter set.
    """
    key = (params.p, params.e, params.f, target_tol)
    cached = _ROOT_CACHE.get(key)
    if cached is not None and cached.n_max >= n_max:
        return cached
    start = cached.n_max + 1 if cached is not None else 0
    roots = list(cached.roots) if cached is not None else []
    residuals = list(cached.residuals) if cached is not None else []
    brackets = list(cached.brackets) if cached is not None else []
    dps_used = list(cached.dps_used) if cached is not None else []
    for n in range(start, n_max + 1):
        root, res, bracket, dps = _find_one_root(params, n, target_tol)
        roots.append(root)
        residuals.append(res)
        brackets.append(bracket)
        dps_used.append(dps)
    table = RootTable(
        params=params,
        roots=tuple(roots),
        residuals=tuple(residuals),
        brackets=tuple(brackets),
        dps_used=tuple(dps_used),
    )
    _ROOT_CACHE[key] = table
    return table


# ---------------------------------------------------------------------------
# Eigenvector recurrence and series reconstruction
# ---------------------------------------------------------------------------


def eigvec_recurrence(params: FieldParams, lam, L: int) -> list:
    """Forward-propagated eigenvector of the depth tridiagonal at ``lam``.

    ``phi(0) = 1``, ``phi(1) = 1 - lam``, and for ``l >= 1``
    ``phi(l+1) = ((1 + Q) phi(l) - phi(l-1) - lam Q**(-(l-1)) phi(l)) / Q``
    with ``Q = p**(2/e)``.  At a true eigenvalue the recurrence follows the
    decaying solution; away from one it blows up (shooting diagnostic).
    Working precision is raised internally so the decaying solution stays
    resolved out to ``L`` steps (the decaying branch shrinks like
    ``Q**(-l)`` while rounding injects the non-decaying branch); pass an mpf
    ``lam`` from :func:`find_roots` so its full mantissa is used.
    """
    if L < 1:
        raise ValueError("L must be positive")
    log10Q = float(2 * mp.log10(mp.mpf(params.p)) / params.e)
    dps = max(mp.mp.dps, int(L * log10Q) + 80)
    with mp.workdps(dps):
        Q = mp.power(params.p, mp.mpf(2) / params.e)
        lam = mp.mpf(lam)
        phi = [mp.mpf(1), 1 - lam]
        for l in range(1, L):
            nxt = ((1 + Q) * phi[l] - phi[l - 1] - lam * Q ** (-(l - 1)) * phi[l]) / Q
            phi.append(nxt)
        return phi[: L + 1]


def eigvec_tail_mass(phi: list) -> float:
    """Relative squared tail mass of a propagated eigenvector.

    Sums ``|phi(l)|**2`` over the deep half ``l > L/2`` and divides by the
    total; tiny at a true eigenvalue, order 1 at a spurious one.
    """
    L = len(phi) - 1
    total = mp.fsum(abs(v) ** 2 for v in phi)
    tail = mp.fsum(abs(v) ** 2 for v in phi[L // 2 + 1 :])
    return float(tail / total)


def eigvec_series_c(params: FieldParams, lam, k_max: int) -> list:
    """Series coefficients ``c(2k)``, ``k = 1..k_max``, normalized ``c(2) = 1``.

    Successive ratios are
    ``c(2k)/c(2k-2) = (-lam/(1-q)) * Q**(k-1) (Q-1) / ((Q**(k-1)-1)(Q**k-1))``
    for ``k >= 2``.  The eigenvector value at depth ``l`` is
    ``sum_k c(2k) q**(l k)`` up to one overall normalization.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    Q = mp.power(params.p, mp.mpf(2) / params.e)
    qv = 1 / Q
    lam = mp.mpf(lam)
    coeffs = [mp.mpf(1)]
    for k in range(2, k_max + 1):
        ratio = (-lam / (1 - qv)) * Q ** (k - 1) * (Q - 1) / ((Q ** (k - 1) - 1) * (Q**k - 1))
        coeffs.append(coeffs[-1] * ratio)
    return coeffs


def eigvec_from_series(params: FieldParams, lam, l: int, k_max: int = 60):
    """Eigenvector value at depth ``l >= 1`` from the ``c(2k)`` series.

    Evaluated at elevated working precision so comparisons at relative
    1e-8 against the recurrence route are not limited by this evaluation.
    """
    if l < 1:
        raise ValueError("series reconstruction applies at depths l >= 1")
    with mp.workdps(max(mp.mp.dps, 120)):
        Q = mp.power(params.p, mp.mpf(2) / params.e)
        qv = 1 / Q
        coeffs = eigvec_series_c(params, lam, k_max)
        return mp.fsum(c * qv ** (l * k) for k, c in zip(range(1, k_max + 1), coeffs))
