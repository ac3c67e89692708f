"""Joint curriculum selection: objective, gradient, line search, solver.

Oracles used here:
  * a second, independently written evaluation of the objective,
  * central finite differences for the gradient,
  * a dense grid search for the 2-variable solver instance,
  * hand-worked values for the extraction example.
"""

import warnings

import numpy as np
import pytest

from hydent.teaching import (
    TeachingSolution,
    bcd_solve,
    extract_curriculum,
    gradient,
    l21_norm,
    l21_weight_matrix,
    objective,
    stack_blocks,
    surrogate,
    wolfe_step,
)


def random_instance(rng, b=None, s=None, m=None):
    b = b or int(rng.integers(2, 21))
    s = s or int(rng.integers(1, min(b, 5) + 1))
    m = m or int(rng.integers(1, 4))
    r_list = []
    for _ in range(m):
        a = rng.normal(size=(b, b))
        r_list.append(a @ a.T)
    blocks = [rng.random((b, s)) for _ in range(m)]
    return blocks, r_list


def naive_objective(blocks, r_list, beta0, beta1):
    """Straight transcription of the formula, written without shortcuts."""
    total = 0.0
    for S, R in zip(blocks, r_list):
        total += np.trace(S.T @ R @ S)
        total += beta1 * np.linalg.norm(S * S - S, "fro") ** 2
        total += beta1 * np.linalg.norm(S.T @ S - np.eye(S.shape[1]), "fro") ** 2
    stacked = np.hstack(blocks)
    total += beta0 * sum(np.linalg.norm(row) for row in stacked)
    return total


def test_stack_blocks_hstacks():
    a = np.ones((3, 2))
    b = np.zeros((3, 1))
    assert stack_blocks([a, b]).shape == (3, 3)


def test_l21_norm_hand_value():
    m = np.array([[3.0, 4.0], [0.0, 0.0], [1.0, 0.0]])
    assert l21_norm(m) == pytest.approx(6.0)


def test_l21_weight_matrix_values():
    stacked = np.array([[0.0, 0.0], [0.3, 0.4]])
    h = l21_weight_matrix(stacked, zeta=1e-8)
    assert h[0] == pytest.approx(1e8)  # 1 / (2 * 0 + zeta)
    assert h[1] == pytest.approx(1.0 / (1.0 + 1e-8))
    with pytest.raises(ValueError):
        l21_weight_matrix(stacked, zeta=0.0)


def test_l21_weight_matrix_recovers_norm_in_limit():
    rng = np.random.default_rng(7)
    stacked = rng.random((6, 4))
    h = l21_weight_matrix(stacked, zeta=1e-12)
    via_h = np.trace(stacked.T @ (h[:, None] * stacked))
    # tr(S^T H S) with H from S itself halves to the l2,1 norm
    assert 2.0 * via_h == pytest.approx(l21_norm(stacked), abs=1e-6)


def test_objective_all_zero_blocks():
    blocks = [np.zeros((4, 3)), np.zeros((4, 3))]
    r_list = [np.eye(4), np.eye(4)]
    # only the orthogonality penalty survives: 2 blocks * beta1 * s
    assert objective(blocks, r_list, 10.0, 100.0) == pytest.approx(600.0)


def test_objective_permutation_point_is_penalty_free():
    rng = np.random.default_rng(8)
    a = rng.normal(size=(4, 4))
    R = a @ a.T
    S = np.eye(4)[:, [2, 0, 3, 1]]  # one 1 per row and column
    got = objective([S], [R], 7.0, 100.0)
    assert got == pytest.approx(np.trace(S.T @ R @ S) + 7.0 * 4)


def test_objective_matches_independent_evaluation():
    rng = np.random.default_rng(9)
    for _ in range(10):
        blocks, r_list = random_instance(rng)
        q = objective(blocks, r_list, 3.0, 11.0)
        assert q == pytest.approx(naive_objective(blocks, r_list, 3.0, 11.0), rel=1e-10)


def test_objective_shape_mismatch():
    with pytest.raises(ValueError):
        objective([np.zeros((3, 2))], [np.eye(4)], 1.0, 1.0)


def test_gradient_zero_at_origin():
    grad = gradient(np.zeros((5, 2)), np.eye(5), np.ones(5), 10.0, 10.0)
    np.testing.assert_array_equal(grad, np.zeros((5, 2)))


def test_gradient_scalar_case_by_hand():
    # b = s = 1: q(x) = R x^2 + b0 H x^2 + b1 ((x^2-x)^2 + (x^2-1)^2),
    # so q'(1) = 2 (R + b0 H)
    R = np.array([[2.5]])
    h = np.array([0.7])
    grad = gradient(np.array([[1.0]]), R, h, 3.0, 50.0)
    assert grad[0, 0] == pytest.approx(2.0 * (2.5 + 3.0 * 0.7), rel=1e-12)


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(10)
    step = 1e-6
    for _ in range(20):
        blocks, r_list = random_instance(rng, b=int(rng.integers(2, 8)))
        S, R = blocks[0], r_list[0]
        h = rng.random(S.shape[0]) + 0.1
        beta0, beta1 = 10.0 ** rng.uniform(-1, 2, size=2)
        grad = gradient(S, R, h, beta0, beta1)
        fd = np.zeros_like(S)
        for idx in np.ndindex(S.shape):
            plus, minus = S.copy(), S.copy()
            plus[idx] += step
            minus[idx] -= step
            fd[idx] = (
                surrogate(plus, R, h, beta0, beta1) - surrogate(minus, R, h, beta0, beta1)
            ) / (2.0 * step)
        denom = max(np.linalg.norm(fd), 1.0)
        assert np.linalg.norm(grad - fd) / denom < 1e-5


def test_wolfe_step_quadratic_exact():
    value = lambda x: float(x**2)
    grad = lambda x: 2.0 * x
    tau = wolfe_step(np.array(1.0), np.array(-2.0), value, grad)
    assert tau == pytest.approx(0.5)
    assert value(1.0 + tau * -2.0) < value(1.0)


def test_wolfe_step_zero_direction():
    value = lambda x: float(np.sum(x**2))
    grad = lambda x: 2.0 * x
    assert wolfe_step(np.zeros(3), np.zeros(3), value, grad) == 0.0
    # ascent direction is also refused
    assert wolfe_step(np.ones(3), np.ones(3), value, grad) == 0.0


def test_wolfe_step_decreases_rosenbrock_like():
    rng = np.random.default_rng(12)
    a = rng.normal(size=(6, 6))
    Q = a @ a.T + 6 * np.eye(6)
    value = lambda x: float(0.5 * x @ Q @ x)
    grad = lambda x: Q @ x
    x = rng.normal(size=6)
    d = -grad(x)
    tau = wolfe_step(x, d, value, grad)
    assert tau > 0.0
    assert value(x + tau * d) < value(x)


def test_extract_curriculum_worked_example():
    blocks = [np.array([[0.9], [0.0], [0.4]]), np.array([[0.8], [0.0], [0.0]])]
    positions, weights = extract_curriculum(blocks, 2)
    np.testing.assert_array_equal(positions, [0, 2])
    np.testing.assert_allclose(weights[0], [0.9 / 1.7, 0.8 / 1.7], atol=1e-3)
    np.testing.assert_allclose(weights[1], [1.0, 0.0])


def test_extract_curriculum_shrinks_to_surviving_rows():
    blocks = [np.array([[0.9], [0.0], [0.0005]])]
    positions, weights = extract_curriculum(blocks, 3)
    np.testing.assert_array_equal(positions, [0])
    np.testing.assert_allclose(weights, [[1.0]])


def test_extract_curriculum_single_teacher_weights_are_one():
    rng = np.random.default_rng(13)
    blocks = [rng.random((6, 2)) + 0.1]
    positions, weights = extract_curriculum(blocks, 4)
    assert positions.shape == (4,)
    np.testing.assert_allclose(weights, 1.0)


def test_extract_curriculum_prefers_nonsparse_rows():
    blocks = [np.array([[0.5, 0.0], [0.3, 0.3], [0.0, 0.0]])]
    positions, _ = extract_curriculum(blocks, 2)
    # row 1 has two surviving entries, row 0 only one
    np.testing.assert_array_equal(positions, [1, 0])


def test_extract_curriculum_all_zero_falls_back():
    blocks = [np.array([[1e-5], [3e-4]]), np.array([[2e-5], [1e-4]])]
    with pytest.warns(UserWarning):
        positions, weights = extract_curriculum(blocks, 1)
    np.testing.assert_array_equal(positions, [1])  # larger raw norm
    np.testing.assert_allclose(weights, [[0.5, 0.5]])


def test_bcd_solve_trace_monotone_and_converges():
    rng = np.random.default_rng(14)
    for _ in range(10):
        blocks, r_list = random_instance(rng)
        s = blocks[0].shape[1]
        sol = bcd_solve(r_list, 10.0, 10.0, s, int(rng.integers(1 << 16)))
        trace = np.asarray(sol.objective_trace)
        assert np.all(np.diff(trace) <= 1e-10)
        assert len(trace) <= 301
        assert isinstance(sol, TeachingSolution)
        np.testing.assert_allclose(sol.weights.sum(axis=1), 1.0, atol=1e-9)
        assert np.unique(sol.curriculum).size == sol.curriculum.size


def test_bcd_solve_two_variable_grid_oracle():
    # b=2, s=1, R=diag(0.1, 10): mass must land on the cheap first row.
    # beta1 has to dominate so staying at zero is not the best move.
    R = np.diag([0.1, 10.0])
    beta0, beta1 = 0.5, 5.0
    sol = bcd_solve([R], beta0, beta1, 1, init_seed=5)
    S = sol.blocks[0]
    assert abs(S[0, 0]) > abs(S[1, 0])
    # dense grid over [0,1]^2 agrees about where the minimum sits
    grid = np.linspace(0.0, 1.0, 201)
    best = min(
        ((x0, x1) for x0 in grid for x1 in grid),
        key=lambda p: objective([np.array([[p[0]], [p[1]]])], [R], beta0, beta1),
    )
    assert best[0] > best[1]
    got = objective([S], [R], beta0, beta1)
    want = objective([np.array([[best[0]], [best[1]]])], [R], beta0, beta1)
    assert got <= want + 1e-2


def test_bcd_solve_iteration_cap_flags_not_converged():
    rng = np.random.default_rng(15)
    blocks, r_list = random_instance(rng, b=8, s=2, m=2)
    sol = bcd_solve(r_list, 10.0, 10.0, 2, 3, iter_max=2)
    assert not sol.converged
    assert len(sol.objective_trace) == 3  # initial value plus two sweeps


def test_bcd_solve_blocks_decouple_without_row_coupling():
    # with beta0 = 0 the only cross-block term vanishes, so solving the
    # stacked problem must match solving each block alone step for step
    rng = np.random.default_rng(16)
    blocks, r_list = random_instance(rng, b=6, s=2, m=2)
    joint = bcd_solve(r_list, 0.0, 5.0, 2, 0, epsilon=0.0, iter_max=30, init=blocks)
    for m in range(2):
        alone = bcd_solve([r_list[m]], 0.0, 5.0, 2, 0, epsilon=0.0, iter_max=30, init=[blocks[m]])
        np.testing.assert_allclose(joint.blocks[m], alone.blocks[0], atol=1e-9)


def test_bcd_solve_clamps_s_to_pool():
    R = np.eye(3)
    sol = bcd_solve([R], 1.0, 1.0, 7, 0)
    assert sol.blocks[0].shape == (3, 3)
    assert sol.curriculum.size <= 3


def test_bcd_solve_respects_explicit_init():
    R = np.diag([1.0, 2.0])
    init = [np.full((2, 1), 0.5)]
    sol = bcd_solve([R], 1.0, 1.0, 1, 99, init=init, iter_max=1, epsilon=0.0)
    q0 = objective(init, [R], 1.0, 1.0)
    assert sol.objective_trace[0] == pytest.approx(q0)
    with pytest.raises(ValueError):
        bcd_solve([R], 1.0, 1.0, 2, 0, init=init)  # wrong column count


def test_bcd_solve_rejects_bad_sizes():
    with pytest.raises(ValueError):
        bcd_solve([np.eye(2), np.eye(3)], 1.0, 1.0, 1, 0)
    with pytest.raises(ValueError):
        bcd_solve([np.eye(2)], 1.0, 1.0, 0, 0)


def test_solution_stacked_view():
    rng = np.random.default_rng(17)
    blocks, r_list = random_instance(rng, b=5, s=2, m=2)
    sol = bcd_solve(r_list, 1.0, 1.0, 2, 1, iter_max=5)
    assert sol.stacked.shape == (5, 4)
    np.testing.assert_array_equal(sol.stacked, np.hstack(sol.blocks))
