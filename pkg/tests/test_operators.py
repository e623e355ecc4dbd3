"""Forward-difference operator, its square, commutators, and inverse kernels."""

import math

import numpy as np
import pytest

from padiclab import (
    FieldParams,
    apply_D,
    apply_D_adjoint,
    assemble_DstarD,
    assemble_commutator,
    assemble_symmetrized_D,
    commutator_norm,
    commutator_row_norms,
    count_g,
    find_roots,
    hs_double_sum,
    hs_norm_Dg_inverse,
    hs_total_partial,
    jacobi_D0,
    jacobi_block,
    jacobi_lowest_eigs,
    kernel_frobenius_norm,
    kernel_frobenius_norm_direct,
    kernel_rho_a_DFinv,
    regularizer_bt,
    rho_diag,
    singular_values_window,
    tree_window_f,
    tree_window_r,
)
from padiclab import TestFunction as PointFunction  # aliased so pytest does not collect it
from padiclab import testfn_library as function_library

P211 = FieldParams(2, 1, 1)
P311 = FieldParams(3, 1, 1)
P221 = FieldParams(2, 2, 1)
P212 = FieldParams(2, 1, 2)
P321 = FieldParams(3, 2, 1)
ALL_PARAMS = [P211, P311, P221, P212]


def _level_weights(window) -> np.ndarray:
    return np.concatenate(
        [np.full(window.level_size(n), window.weight_float(n)) for n in window.levels]
    )


def _lib(params):
    return {t.name: t for t in function_library(params)}


class TestApplyD:
    def test_frozen_values(self):
        w = tree_window_r(P211, 1)
        assert apply_D(w, np.array([1.0, 0.0, 0.0])).tolist() == [1.0]
        assert apply_D(w, np.array([0.0, 1.0, 0.0])).tolist() == [-0.5]

    @pytest.mark.parametrize("params", ALL_PARAMS)
    def test_kills_constants_exactly(self, params):
        for w in [tree_window_r(params, 3), tree_window_f(params, 1, 2)]:
            out = apply_D(w, np.ones(w.total))
            assert np.all(out == 0.0)

    def test_output_length(self):
        w = tree_window_f(P211, 2, 3)
        assert apply_D(w, np.zeros(w.total)).shape == (w.level_offsets[-2],)


class TestAdjoint:
    @pytest.mark.parametrize("params", ALL_PARAMS)
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_weighted_adjointness(self, params, seed):
        rng = np.random.default_rng(seed)
        for w in [tree_window_r(params, 3), tree_window_f(params, 1, 3)]:
            wts = _level_weights(w)
            out_len = w.level_offsets[-2]
            phi = rng.normal(size=w.total)
            psi = rng.normal(size=out_len)
            lhs = float(np.dot(wts[:out_len] * apply_D(w, phi), psi))
            rhs = float(np.dot(wts * phi, apply_D_adjoint(w, psi)))
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-14)


class TestDstarD:
    def test_frozen_eigenvalues_depth1(self):
        w = tree_window_r(P211, 1)
        eigs = np.sort(np.linalg.eigvalsh(assemble_DstarD(w).toarray()))
        expected = [3 - math.sqrt(5), 4.0, 3 + math.sqrt(5)]
        assert eigs == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("params", ALL_PARAMS)
    def test_square_factors_through_symmetrized_D(self, params):
        for w in [tree_window_r(params, 3), tree_window_f(params, 1, 2)]:
            sym = assemble_symmetrized_D(w)
            diff = sym.T @ sym - assemble_DstarD(w)
            assert diff.nnz == 0 or abs(diff.toarray()).max() < 1e-14

    @pytest.mark.parametrize(
        "params,N", [(P211, 3), (P311, 3), (P221, 3), (P212, 2)]
    )
    def test_block_decomposition(self, params, N):
        """The window square is unitarily a direct sum of scaled depth blocks.

        Eigenvalues must equal the multiset union over tail lengths m of
        count_g(m) copies of Q**m * eig(jacobi_D0(N + 1 - m)).
        """
        w = tree_window_r(params, N)
        direct = np.sort(np.linalg.eigvalsh(assemble_DstarD(w).toarray()))
        Q = float(params.Q)
        pred: list[float] = []
        for m in range(N + 1):
            block = np.linalg.eigvalsh(jacobi_D0(params, N + 1 - m))
            pred.extend(list(Q**m * block) * count_g(params, m))
        pred_arr = np.sort(pred)
        assert pred_arr.shape == direct.shape
        assert np.max(np.abs(direct - pred_arr) / np.abs(pred_arr)) < 1e-12

    def test_positive_semidefinite(self):
        w = tree_window_f(P212, 1, 2)
        eigs = np.linalg.eigvalsh(assemble_DstarD(w).toarray())
        assert eigs.min() >= -1e-12


class TestJacobi:
    def test_frozen_matrix(self):
        assert jacobi_D0(P211, 2).tolist() == [[1.0, -1.0], [-1.0, 5.0]]

    def test_size_validation(self):
        with pytest.raises(ValueError):
            jacobi_D0(P211, 0)

    def test_scaled_block(self):
        m = 2
        assert np.allclose(
            jacobi_block(P211, m, 3),
            float(P211.Q) ** m * jacobi_D0(P211, 3),
            rtol=1e-15,
        )

    @pytest.mark.parametrize("params", [P211, P311, P221])
    def test_lowest_eig_matches_series_root(self, params):
        """Dual route: Sturm bisection on the truncated matrix vs the series root."""
        roots = find_roots(params, 2)
        for L in (40, 60):
            lam0 = jacobi_lowest_eigs(params, L, count=1)[0]
            assert float(lam0) == pytest.approx(float(roots.roots[0]), rel=1e-10)

    def test_count_validation(self):
        with pytest.raises(ValueError):
            jacobi_lowest_eigs(P211, 5, count=6)


class TestRho:
    def test_frozen_diag_abs_depth2(self):
        w = tree_window_r(P211, 2)
        a = _lib(P211)["abs"]
        assert rho_diag(w, a).tolist() == [1.0, 0.5, 1.0, 0.25, 0.5, 1.0, 1.0]

    def test_zero_center_convention(self):
        """The zero ball at level n is evaluated at its stand-in point pi**n."""
        w = tree_window_r(P311, 3)
        a = _lib(P311)["abs"]
        diag = rho_diag(w, a)
        for n in w.levels:
            zero_idx = w.index(n, 0)
            assert diag[zero_idx] == pytest.approx(float(P311.p) ** (-n), rel=1e-15)


class TestCommutator:
    def test_norm_equals_max_row_norm(self):
        w = tree_window_r(P211, 8)
        a = _lib(P211)["abs"]
        rows = commutator_row_norms(w, a)
        assert commutator_norm(w, a) == pytest.approx(rows.max(), rel=1e-10)

    def test_frozen_abs_norm(self):
        w = tree_window_r(P211, 8)
        assert commutator_norm(w, _lib(P211)["abs"]) == pytest.approx(
            1.0 / (2.0 * math.sqrt(2.0)), rel=1e-10
        )

    def test_constant_commutes(self):
        w = tree_window_r(P311, 4)
        a = _lib(P311)["const-1"]
        assert assemble_commutator(w, a).nnz == 0
        assert commutator_norm(w, a) == 0.0


class TestHilbertSchmidt:
    def test_frozen_closed_values(self):
        assert hs_norm_Dg_inverse(P211, 0) == pytest.approx(16.0 / 9.0, rel=1e-15)
        assert hs_norm_Dg_inverse(P211, 1) == pytest.approx(4.0 / 9.0, rel=1e-15)
        assert hs_norm_Dg_inverse(P321, 0) == pytest.approx(2.25, rel=1e-12)

    @pytest.mark.parametrize("params", ALL_PARAMS)
    def test_double_sum_matches_closed_form(self, params):
        for m in range(6):
            closed = hs_norm_Dg_inverse(params, m)
            double = hs_double_sum(params, m)
            assert double == pytest.approx(closed, rel=1e-13)

    def test_total_converges_for_small_ef(self):
        assert hs_total_partial(P211, 60) == pytest.approx(8.0 / 3.0, rel=1e-12)

    def test_constant_increments_for_large_ef(self):
        for params, expected in [(P212, 4.0 / 3.0), (P221, 2.0)]:
            for m in range(1, 8):
                inc = hs_total_partial(params, m) - hs_total_partial(params, m - 1)
                assert inc == pytest.approx(expected, rel=1e-12)


class TestInverseKernel:
    def test_closed_matches_assembled(self):
        for params in (P211, P212):
            w = tree_window_f(params, 2, 4)
            a = _lib(params)["decay-quadratic"]
            closed = kernel_frobenius_norm(w, a)
            direct = kernel_frobenius_norm_direct(w, a)
            assert direct == pytest.approx(closed, rel=1e-12)

    def test_decay_certificate_required(self):
        w = tree_window_f(P211, 1, 2)
        with pytest.raises(ValueError):
            kernel_rho_a_DFinv(w, _lib(P211)["abs"])

    def test_decay_exponent_threshold(self):
        # alpha = ef is admissible only when it exceeds max(1, ef/2).
        w211 = tree_window_f(P211, 1, 2)
        with pytest.raises(ValueError):
            kernel_frobenius_norm(w211, _lib(P211)["decay-ef"])
        w212 = tree_window_f(P212, 1, 2)
        assert kernel_frobenius_norm(w212, _lib(P212)["decay-ef"]) > 0.0

    def test_regularizer(self):
        with pytest.raises(ValueError):
            regularizer_bt(P211, 2.0, 0.0, 1)
        with pytest.raises(ValueError):
            regularizer_bt(P211, 2.0, -1.0, 1)
        assert regularizer_bt(P211, 2.0, 0.5, -3) == 1.0
        vals = [regularizer_bt(P211, 2.0, t, 5) for t in (1e-1, 1e-3, 1e-8)]
        assert vals == sorted(vals)  # weaker damping as t decreases
        assert vals[-1] == pytest.approx(1.0, abs=1e-4)

    def test_regularized_norm_below_plain(self):
        w = tree_window_f(P211, 2, 4)
        a = _lib(P211)["decay-quadratic"]
        plain = kernel_frobenius_norm(w, a)
        assert kernel_frobenius_norm(w, a, t=0.1) < plain
        assert kernel_frobenius_norm(w, a, t=1e-8) == pytest.approx(plain, rel=1e-6)

    def test_singular_values_descending(self):
        w = tree_window_f(P211, 2, 4)
        sv = singular_values_window(w, _lib(P211)["decay-quadratic"], 6)
        assert len(sv) == 6
        assert np.all(np.diff(sv) <= 1e-12)


class TestTestFunction:
    def test_callable_and_metadata(self):
        a = _lib(P211)["decay-quadratic"]
        assert a.decay_alpha == 2.0
        assert a.known_lipschitz is None or a.known_lipschitz >= 0
        w = tree_window_r(P211, 2)
        c = w.center(1, 1)
        assert isinstance(a(c), float)

    def test_custom_function(self):
        a = PointFunction(name="unit", evaluator=lambda c: 1.0)
        w = tree_window_r(P211, 3)
        assert commutator_norm(w, a) == 0.0
