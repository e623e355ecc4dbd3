"""Forward-difference operator on tree windows and its derived operators.

This module assembles and applies:

* the forward-difference (martingale-difference) operator ``D``, which
  compares a vertex value with the average of its children, scaled by
  ``p**(n/e)`` at level ``n``;
* its adjoint with respect to the weighted inner product, and the symmetric
  square ``D*D`` on a window with a zero (Dirichlet) boundary condition past
  the deepest level;
* diagonal multiplication operators built from test functions (with the
  convention that the zero vertex of level ``n`` carries the value at the
  point ``pi**n``);
* commutators ``[D, multiplication]`` and their operator norms;
* the depth-direction tridiagonal (Jacobi) form of each fixed-tail block of
  ``D*D``, plus a certified high-precision solver for its lowest eigenvalues;
* Hilbert-Schmidt sums for inverse blocks, in closed form and by direct
  double summation;
* the windowed integral kernel of ``multiplication * D**(-1)`` on enlarged
  windows, its column regularization, and its singular values.

All matrices are assembled in the plain little-l2 coordinates obtained by the
diagonal similarity with the square roots of the level weights, so symmetric
matrices here have the same spectra as the weighted-space operators they
represent.  Assembly order is deterministic (level-major, digit-lexicographic).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import mpmath as mp
import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .field_model import Center, FieldParams, pi_power
from .tree import TreeWindow, WeightedVector

__all__ = [
    "TestFunction",
    "apply_D",
    "apply_D_adjoint",
    "assemble_symmetrized_D",
    "assemble_DstarD",
    "rho_diag",
    "assemble_commutator",
    "commutator_norm",
    "commutator_row_norms",
    "jacobi_D0",
    "jacobi_block",
    "jacobi_lowest_eigs",
    "hs_norm_Dg_inverse",
    "hs_double_sum",
    "hs_total_partial",
    "kernel_rho_a_DFinv",
    "regularizer_bt",
    "kernel_frobenius_norm",
    "kernel_frobenius_norm_direct",
    "singular_values_window",
]


# ---------------------------------------------------------------------------
# Test functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TestFunction:
    """A scalar function evaluated on digit-string points.

    Attributes:
        name: Stable identifier (used in reports and seeding).
        evaluator: Deterministic callable on :class:`Center` points.  Points
            are centers with enough digits to resolve the function; functions
            must depend only on the element the string represents (trailing
            zeros are immaterial).
        known_lipschitz: Exact Lipschitz seminorm when known analytically.
        decay_alpha: Decay exponent ``alpha`` for functions intended on
            enlarged windows, certifying ``|a(x)| <= C/(1 + |x|**alpha)``.
        decay_constant: The constant ``C`` in that certificate.
    """

    name: str
    evaluator: Callable[[Center], float]
    known_lipschitz: float | None = None
    decay_alpha: float | None = None
    decay_constant: float = 1.0

    def __call__(self, point: Center) -> float:
        return float(self.evaluator(point))


# ---------------------------------------------------------------------------
# The forward-difference operator and its square
# ---------------------------------------------------------------------------


def _values(phi: WeightedVector | np.ndarray) -> np.ndarray:
    if isinstance(phi, WeightedVector):
        return phi.values
    return np.asarray(phi)


def apply_D(window: TreeWindow, phi: WeightedVector | np.ndarray) -> np.ndarray:
    """Apply the forward-difference operator.

    ``(D phi)_n(x) = p**(n/e) * (phi_n(x) - q_res**(-1) * sum_children phi)``.
    The output lives on the levels that have a next level present
    (``min_level .. N-1``); the deepest level is omitted.  With level-major
    indexing those rows are exactly the first ``total - level_size(N)``
    entries of the index space.
    """
    vals = _values(phi)
    params = window.params
    q = params.q_res
    n_rows = window.level_offsets[-2]
    out = np.empty(n_rows, dtype=np.result_type(vals.dtype, np.float64))
    for n in range(window.min_level, window.max_level):
        seg = window.level_slice(n)
        child_avg = vals[window.level_slice(n + 1)].reshape(-1, q).sum(axis=1) / q
        out[seg] = params.scale_float(n) * (vals[seg] - child_avg)
    return out


def apply_D_adjoint(window: TreeWindow, psi: np.ndarray) -> np.ndarray:
    """Apply the weighted adjoint of :func:`apply_D`.

    ``psi`` lives on the row space (levels ``min_level .. N-1``); the result
    lives on the full window and satisfies
    ``weighted_inner(D phi, psi) = weighted_inner(phi, D* psi)`` exactly in
    exact arithmetic:
    ``(D* psi)_n(x) = p**(n/e) psi_n(x) [n <= N-1]
    - p**((n-1)/e) psi_(n-1)(parent(x)) [n > min_level]``.
    """
    psi = np.asarray(psi)
    params = window.params
    q = params.q_res
    out = np.zeros(window.total, dtype=np.result_type(psi.dtype, np.float64))
    for n in range(window.min_level, window.max_level):
        seg = window.level_slice(n)
        out[seg] += params.scale_float(n) * psi[seg]
        child_seg = window.level_slice(n + 1)
        out[child_seg] -= params.scale_float(n) * np.repeat(psi[seg], q)
    return out


def assemble_symmetrized_D(window: TreeWindow, closed: bool = True) -> sp.csr_matrix:
    """Sparse matrix of ``D`` in symmetrized (plain little-l2) coordinates.

    Row ``(n, x)`` for ``n <= N-1`` has diagonal ``p**(n/e)`` and entries
    ``-p**(n/e) * q_res**(-1/2)`` at the children of ``x``.  With
    ``closed=True`` (the zero-boundary closure) the deepest level contributes
    a purely diagonal row ``p**(N/e)``, making the matrix square on the
    window; this encodes extending vectors by zero past the window.
    """
    params = window.params
    q = params.q_res
    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    data: list[np.ndarray] = []
    off_child = -1.0 / np.sqrt(q)
    for n in range(window.min_level, window.max_level + 1):
        seg = window.level_slice(n)
        size = seg.stop - seg.start
        beta = params.scale_float(n)
        idx = np.arange(seg.start, seg.stop)
        if n < window.max_level:
            rows.append(idx)
            cols.append(idx)
            data.append(np.full(size, beta))
            child_start = window.level_slice(n + 1).start
            rows.append(np.repeat(idx, q))
            cols.append(child_start + np.arange(size * q))
            data.append(np.full(size * q, beta * off_child))
        elif closed:
            rows.append(idx)
            cols.append(idx)
            data.append(np.full(size, beta))
    n_rows = window.total if closed else window.level_offsets[-2]
    mat = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n_rows, window.total),
    )
    return mat.tocsr()


def assemble_DstarD(window: TreeWindow) -> sp.csr_matrix:
    """Symmetric positive-definite matrix of the window square ``D*D``.

    The square is taken with a zero boundary condition past the deepest
    level: the difference operator keeps its diagonal term on level ``N``
    (vectors are extended by zero beyond the window), which is the principal
    window compression of the full operator square.  The returned matrix is
    expressed in plain little-l2 coordinates via the weight similarity, so
    its spectrum equals that of the weighted-space square; its fixed-tail
    blocks coincide exactly with scaled copies of :func:`jacobi_D0`.
    """
    b = assemble_symmetrized_D(window, closed=True)
    mat = (b.T @ b).tocsr()
    mat.sum_duplicates()
    return mat


# ---------------------------------------------------------------------------
# Multiplication operators and commutators
# ---------------------------------------------------------------------------


def rho_diag(window: TreeWindow, a: TestFunction) -> np.ndarray:
    """Diagonal of the multiplication operator for ``a`` on the window.

    The entry at vertex ``(n, x)`` is ``a(x)`` for ``x != 0`` and
    ``a(pi**n)`` at the zero center (rank 0) of level ``n``.
    """
    out = np.empty(window.total)
    params = window.params
    for n in window.levels:
        seg = window.level_slice(n)
        for rank in range(seg.stop - seg.start):
            if rank == 0:
                point = pi_power(params, n, n + 1, start=window.min_level)
            else:
                point = window.center(n, rank)
            out[seg.start + rank] = a(point)
    return out


def assemble_commutator(window: TreeWindow, a: TestFunction) -> sp.csr_matrix:
    """Sparse symmetrized commutator ``[D, multiplication by a]``.

    Row ``(n, x)`` (levels ``min_level .. N-1``) has entries
    ``p**(n/e) * q_res**(-1/2) * (a_n(x) - a_(n+1)(child))`` at the children
    of ``x`` — the diagonal terms of ``D`` and the multiplication operator
    cancel, leaving pure parent-child differences.
    """
    params = window.params
    q = params.q_res
    diag = rho_diag(window, a)
    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    data: list[np.ndarray] = []
    inv_sqrt_q = 1.0 / np.sqrt(q)
    for n in range(window.min_level, window.max_level):
        seg = window.level_slice(n)
        size = seg.stop - seg.start
        child_seg = window.level_slice(n + 1)
        beta = params.scale_float(n)
        idx = np.arange(seg.start, seg.stop)
        child_idx = child_seg.start + np.arange(size * q)
        diffs = np.repeat(diag[seg], q) - diag[child_seg]
        rows.append(np.repeat(idx, q))
        cols.append(child_idx)
        data.append(beta * inv_sqrt_q * diffs)
    n_rows = window.level_offsets[-2]
    mat = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n_rows, window.total),
    )
    out = mat.tocsr()
    out.eliminate_zeros()  # vanishing differences would defeat the nnz==0 guard
    return out


def _deterministic_start(size: int) -> np.ndarray:
    v = 1.0 / (1.0 + np.arange(size))
    return v / np.linalg.norm(v)


def _top_singular_value(mat: sp.csr_matrix) -> float:
    """Largest singular value, dense for small matrices, Lanczos otherwise."""
    m, n = mat.shape
    if mat.nnz == 0:
        return 0.0
    if min(m, n) <= 1 or max(m, n) <= 1500:
        return float(np.linalg.norm(mat.toarray(), 2))
    s = spla.svds(
        mat,
        k=1,
        which="LM",
        v0=_deterministic_start(min(m, n)),
        maxiter=5000,
        tol=0,
        return_singular_vectors=False,
    )
    return float(s[0])


def commutator_norm(window: TreeWindow, a: TestFunction) -> float:
    """Operator norm (largest singular value) of the symmetrized commutator."""
    return _top_singular_value(assemble_commutator(window, a))


def commutator_row_norms(window: TreeWindow, a: TestFunction) -> np.ndarray:
    """Euclidean norms of the commutator rows.

    The commutator's rows have pairwise-disjoint column supports (each row
    touches only one vertex's children), so the operator norm equals the
    maximum row norm; this provides an exact cross-check of
    :func:`commutator_norm`.
    """
    mat = assemble_commutator(window, a)
    sq = np.asarray(mat.multiply(mat).sum(axis=1)).ravel()
    return np.sqrt(sq)


# ---------------------------------------------------------------------------
# Depth-direction Jacobi blocks
# ---------------------------------------------------------------------------


def jacobi_D0(params: FieldParams, L: int) -> np.ndarray:
    """Tridiagonal depth-block matrix of order ``L`` (zero-tail block).

    Row 0 has diagonal 1 and off-diagonal -1; row ``l >= 1`` has diagonal
    ``p**(2(l-1)/e) * (1 + p**(2/e))``, sub-diagonal ``-p**(2(l-1)/e)`` and
    super-diagonal ``-p**(2l/e)``.  Truncation at ``L`` drops all couplings
    beyond row ``L-1`` (zero boundary).  Every fixed-tail block of the window
    square equals ``p**(2m/e)`` times this matrix (``m`` the tail length).
    """
    if L < 1:
        raise ValueError("Jacobi block needs L >= 1")
    Q = params.Q
    mat = np.zeros((L, L))
    mat[0, 0] = 1.0
    for l in range(1, L):
        mat[l, l] = Q ** (l - 1) * (1.0 + Q)
    for l in range(L - 1):
        off = -(Q**l)
        mat[l, l + 1] = off
        mat[l + 1, l] = off
    return mat


def jacobi_block(params: FieldParams, m: int, L: int) -> np.ndarray:
    """Fixed-tail depth block for tail length ``m``: ``p**(2m/e) * jacobi_D0``."""
    return params.scale_float(2 * m) * jacobi_D0(params, L)


def _mp_Q(params: FieldParams) -> mp.mpf:
    return mp.power(params.p, mp.mpf(2) / params.e)


def jacobi_lowest_eigs(params: FieldParams, L: int, count: int = 1) -> list[mp.mpf]:
    """Certified lowest eigenvalues of :func:`jacobi_D0` via Sturm bisection.

    The matrix entries grow like ``p**(2L/e)``, so float64 dense solvers lose
    the small eigenvalues entirely (absolute error scales with the matrix
    norm).  This routine counts eigenvalues below a shift through the
    tridiagonal ``LDL^T`` sign sequence in arbitrary precision and bisects,
    which is accurate relative to the eigenvalue itself.
    """
    if count < 1 or count > L:
        raise ValueError("need 1 <= count <= L")
    dps = max(50, int(L * 2 * mp.log10(params.p) / params.e) + 30)
    with mp.workdps(dps):
        Q = _mp_Q(params)
        diag = [mp.mpf(1)] + [Q ** (l - 1) * (1 + Q) for l in range(1, L)]
        offsq = [Q ** (2 * l) for l in range(L - 1)]  # squared couplings

        def count_below(x: mp.mpf) -> int:
            cnt = 0
            d = diag[0] - x
            if d == 0:
                d = mp.mpf(10) ** (-dps)
            if d < 0:
                cnt += 1
            for l in range(1, L):
                d = (diag[l] - x) - offsq[l - 1] / d
                if d == 0:
                    d = mp.mpf(10) ** (-dps)
                if d < 0:
                    cnt += 1
            return cnt

        upper = max(
            diag[l]
            + (mp.sqrt(offsq[l - 1]) if l > 0 else 0)
            + (mp.sqrt(offsq[l]) if l < L - 1 else 0)
            for l in range(L)
        )
        eigs: list[mp.mpf] = []
        for k in range(1, count + 1):
            lo, hi = mp.mpf(0), mp.mpf(upper)
            for _ in range(int(3.5 * dps) + 20):
                mid = (lo + hi) / 2
                if count_below(mid) >= k:
                    hi = mid
                else:
                    lo = mid
                if hi - lo < mp.mpf(10) ** (-dps + 8) * max(hi, mp.mpf(1)):
                    break
            eigs.append((lo + hi) / 2)
        return eigs


# ---------------------------------------------------------------------------
# Hilbert-Schmidt sums for inverse blocks
# ---------------------------------------------------------------------------


def hs_norm_Dg_inverse(params: FieldParams, m: int) -> float:
    """Closed-form squared HS norm of an inverted fixed-tail block.

    Equals ``(1/|g|**2) / (1 - p**(-2/e))**2`` with ``|g| = p**(m/e)``;
    ``m = 0`` covers the zero-tail block.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    x = params.scale_float(-2)  # p**(-2/e)
    return params.scale_float(-2 * m) / (1.0 - x) ** 2


def hs_double_sum(params: FieldParams, m: int, tol: float = 1e-16) -> float:
    """Direct double-sum oracle for :func:`hs_norm_Dg_inverse`.

    Sums ``(1/|g|**2) * sum_(l>=0) sum_(j>=l) p**(-2j/e)`` with an explicit
    truncation chosen so the geometric tail is below ``tol`` relatively.
    """
    x = params.scale_float(-2)
    # Tail after J terms is bounded by x**J * (J+1)/(1-x)**2; pick J generously.
    J = 8
    while x**J * (J + 1) > tol * (1.0 - x) ** 2:
        J += 4
    total = 0.0
    for l in range(J + 1):
        inner = 0.0
        for j in range(l, J + 1):
            inner += x**j
        total += inner
    return params.scale_float(-2 * m) * total


def hs_total_partial(params: FieldParams, m_max: int) -> float:
    """Partial sum ``sum_(m<=m_max) count(m) * hs_norm_Dg_inverse(m)``.

    ``count(m)`` is the number of tails of length ``m``.  The sum converges
    as ``m_max`` grows exactly when ``e*f = 1``; for ``e*f >= 2`` the
    increments do not decay (divergence signature).
    """
    from .field_model import count_g

    return sum(count_g(params, m) * hs_norm_Dg_inverse(params, m) for m in range(m_max + 1))


# ---------------------------------------------------------------------------
# Enlarged-window integral kernel and compactness evidence
# ---------------------------------------------------------------------------


def _check_decay_admissible(params: FieldParams, a: TestFunction) -> None:
    alpha = a.decay_alpha
    if alpha is None:
        raise ValueError(
            f"test function {a.name!r} has no decay exponent; "
            "the inverse kernel requires certified decay"
        )
    bound = max(1.0, params.ef / 2.0)
    if not alpha > bound:
        raise ValueError(
            f"decay exponent alpha={alpha} violates the admissibility "
            f"hypothesis alpha > max(1, ef/2) = {bound}"
        )


def kernel_rho_a_DFinv(
    window: TreeWindow,
    a: TestFunction,
    t: float | None = None,
) -> sp.csr_matrix:
    """Windowed kernel of ``multiplication-by-a`` composed with ``D**(-1)``.

    The entry at output vertex ``(n, x)`` and input vertex ``(k, y)`` is
    ``p**(-k/e) * p**(f(n-k)) * a_n(x)`` whenever ``k >= n`` and the digits
    of ``y`` agree with those of ``x`` on all indices below ``n`` (``y`` lies
    in the ball ``x + pi**n R``); other entries vanish.  Requires a certified
    decay exponent ``alpha > max(1, ef/2)``.  If ``t`` is given, each input
    level ``k`` is damped by the regularizer ``b_t(k)``.
    """
    _check_decay_admissible(window.params, a)
    params = window.params
    q = params.q_res
    diag = rho_diag(window, a)
    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    data: list[np.ndarray] = []
    for n in window.levels:
        seg = window.level_slice(n)
        size = seg.stop - seg.start
        a_vals = diag[seg]
        idx = np.arange(seg.start, seg.stop)
        for k in range(n, window.max_level + 1):
            fan = q ** (k - n)
            col_start = window.level_slice(k).start
            scale = params.scale_float(-k) * float(params.p) ** (params.f * (n - k))
            if t is not None:
                scale *= regularizer_bt(params, a.decay_alpha, t, k)
            rows.append(np.repeat(idx, fan))
            cols.append(col_start + np.arange(size * fan))
            data.append(np.repeat(a_vals * scale, fan))
    mat = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(window.total, window.total),
    )
    return mat.tocsr()


def regularizer_bt(params: FieldParams, alpha: float, t: float, k: int) -> float:
    """Level damping ``b_t(k)``: 1 for ``k < 0``, else ``1/(1 + t*p**(alpha*k/e))``.

    Interpolates between the identity (``t -> 0``) and strong damping of deep
    input levels; used to exhibit the regularized-to-plain limit of the
    kernel's HS norm.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if k < 0:
        return 1.0
    return 1.0 / (1.0 + t * float(params.p) ** (alpha * k / params.e))


def kernel_frobenius_norm(window: TreeWindow, a: TestFunction, t: float | None = None) -> float:
    """Frobenius (HS) norm of the windowed kernel, by per-level closed sums.

    Row ``(n, x)`` contributes ``a_n(x)**2 * S(n)`` with
    ``S(n) = sum_(k=n..N) b_t(k)**2 * p**(-2k/e) * p**(-f(k-n))`` (the factor
    ``p**((k-n)f)`` many equal entries of modulus
    ``p**(-k/e) p**(f(n-k)) |a_n(x)|`` each).  Independent of the sparse
    assembly; used as its oracle.
    """
    _check_decay_admissible(window.params, a)
    params = window.params
    diag = rho_diag(window, a)
    pf = float(params.p) ** params.f
    total = 0.0
    for n in window.levels:
        seg = window.level_slice(n)
        s_n = 0.0
        for k in range(n, window.max_level + 1):
            term = params.scale_float(-2 * k) * pf ** (-(k - n))
            if t is not None:
                term *= regularizer_bt(params, a.decay_alpha, t, k) ** 2
            s_n += term
        total += float(np.dot(diag[seg], diag[seg])) * s_n
    return float(np.sqrt(total))


def kernel_frobenius_norm_direct(
    window: TreeWindow, a: TestFunction, t: float | None = None
) -> float:
    """Frobenius norm computed from the assembled sparse kernel entries."""
    mat = kernel_rho_a_DFinv(window, a, t=t)
    return float(np.sqrt((mat.data**2).sum()))


def singular_values_window(window: TreeWindow, a: TestFunction, count: int) -> np.ndarray:
    """Top ``count`` singular values of the windowed kernel, descending.

    Deterministic: Lanczos iterations start from a fixed vector.  If
    ``count`` meets or exceeds the maximal possible rank, all singular values
    are returned (dense computation).
    """
    mat = kernel_rho_a_DFinv(window, a)
    m, n = mat.shape
    k_max = min(m, n)
    if count >= k_max or k_max <= 1500:
        svals = np.linalg.svd(mat.toarray(), compute_uv=False)
        svals = np.sort(svals)[::-1]
        return svals[: min(count, svals.size)]
    s = spla.svds(
        mat,
        k=count,
        which="LM",
        v0=_deterministic_start(min(m, n)),
        maxiter=10000,
        tol=0,
        return_singular_vectors=False,
    )
    return np.sort(s)[::-1]
