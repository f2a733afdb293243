import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frame_erasure import (
    ErasureSet,
    Frame,
    IterationStopped,
    NotAFrame,
    SingularAxz,
    SingularOperator,
    build_axz,
    canonical_dual,
    check_statements,
    dual_from_perturbation,
    perturbation_orthogonal_class,
    perturbation_supported_on_E,
    random_dual,
    rank_one_inverse,
    reduced_canonical_dual,
    reduced_dual_iterative,
    reduced_dual_matrix,
    reduced_dual_operator,
)
from frame_erasure.fixtures import (
    half_zero_half_dual,
    mercedes_frame,
    repeated_first_frame,
    unit_half_dual,
)
from frame_erasure.instances import gaussian_frame, gaussian_instance

S3 = np.sqrt(3.0)
MERCEDES_REDUCED = np.array([[-1.0, -1.0], [S3 / 3, -S3 / 3]])


def e(i, r=10):
    v = np.zeros(r)
    v[i] = 1.0
    return v


def one(*idx, n=12):
    return ErasureSet.from_one_based(idx, n)


def column_gap(a, b):
    return float(np.max(np.linalg.norm(a - b, axis=0) / (1.0 + np.linalg.norm(a, axis=0))))


def dual_residual(x_reduced, v):
    return np.linalg.norm(v @ x_reduced.T - np.eye(x_reduced.shape[0]), 2)


# ------------------------------------------------------------ canonical dual


def test_canonical_dual_examples():
    np.testing.assert_allclose(canonical_dual(np.eye(4)).synthesis, np.eye(4), atol=1e-15)
    m = mercedes_frame()
    np.testing.assert_allclose(canonical_dual(m).synthesis, 2 / 3 * m.synthesis, atol=1e-15)
    want = repeated_first_frame().synthesis.copy()
    want[0, :3] = 1 / 3
    np.testing.assert_allclose(canonical_dual(repeated_first_frame()).synthesis, want, atol=1e-15)


def test_canonical_dual_against_pinv(rng):
    for _ in range(10):
        x = gaussian_frame(rng, 7, 12)
        oracle = np.linalg.pinv(x.synthesis).T
        np.testing.assert_allclose(canonical_dual(x).synthesis, oracle, atol=1e-10)


def test_canonical_dual_rejects_non_frame():
    with pytest.raises(NotAFrame):
        canonical_dual(np.array([[1.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotAFrame):
        canonical_dual(np.zeros((2, 3)), check=False)


# --------------------------------------------------------- parametrization


def test_perturbation_examples(rng):
    x = gaussian_frame(rng, 5, 8)
    y = canonical_dual(x)
    np.testing.assert_allclose(dual_from_perturbation(x, y, np.zeros((5, 8))).synthesis, y.synthesis, atol=1e-14)
    np.testing.assert_allclose(dual_from_perturbation(x, y, y.synthesis).synthesis, y.synthesis, atol=1e-12)
    z = dual_from_perturbation(x, y, rng.standard_normal((5, 8)))
    assert np.linalg.norm(z.synthesis @ x.synthesis.T - np.eye(5), 2) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), st.integers(0, 10), st.integers(0, 2**32 - 1))
def test_every_perturbation_gives_a_dual(r, extra, seed):
    rng = np.random.default_rng(seed)
    x = gaussian_frame(rng, r, r + extra)
    z = random_dual(x, canonical_dual(x), rng)
    assert np.linalg.norm(z.synthesis @ x.synthesis.T - np.eye(r), 2) <= 1e-9


def test_random_dual_inverse_sqrt_scale_still_a_dual(rng):
    x = gaussian_frame(rng, 6, 10)
    z = random_dual(x, canonical_dual(x), rng, scale=1 / np.sqrt(10))
    assert np.linalg.norm(z.synthesis @ x.synthesis.T - np.eye(6), 2) <= 1e-10


# ------------------------------------------------------------------ A_XZE


def test_axz_example34():
    x, z = repeated_first_frame(), unit_half_dual()
    a1 = build_axz(x, z, one(1))
    np.testing.assert_array_equal(a1.data, [[0.0]])
    assert not a1.is_invertible()
    a12 = build_axz(x, z, one(1, 2))
    np.testing.assert_allclose(a12.data, [[0.0, -0.5], [1.0, -1.5]], atol=1e-15)
    assert np.linalg.det(a12.data) == pytest.approx(0.5)
    assert a12.is_invertible()


def test_axz_canonical_mrc_invertible(rng):
    for _ in range(20):
        x, _, er = gaussian_instance(rng, r_range=(3, 15))
        assert build_axz(x, canonical_dual(x), er).is_invertible()


def test_axz_zero_perturbation_is_minus_identity(rng):
    x = gaussian_frame(rng, 4, 7)
    z = dual_from_perturbation(x, canonical_dual(x), np.zeros((4, 7)))
    er = ErasureSet([1, 5], 7)
    np.testing.assert_allclose(z.synthesis, canonical_dual(x).synthesis, atol=1e-15)
    # Q = 0 on E means A_{X,Q,E} = -I
    np.testing.assert_array_equal(build_axz(x, np.zeros((4, 7)), er).data, -np.eye(2))
    assert build_axz(x, z, er).is_invertible()


# --------------------------------------------------------- reduced duals


def test_matrix_method_example31():
    x, z = repeated_first_frame(), half_zero_half_dual()
    v1 = reduced_dual_matrix(x, z, one(1)).synthesis
    want1 = np.column_stack([np.zeros(10)] + [e(i) for i in range(10)])
    np.testing.assert_allclose(v1, want1, atol=1e-12)
    v12 = reduced_dual_matrix(x, z, one(1, 2)).synthesis
    np.testing.assert_allclose(v12, np.eye(10), atol=1e-12)


def test_reduced_duals_mercedes():
    x = mercedes_frame()
    y = canonical_dual(x)
    er = ErasureSet([0], 3)
    for fn in (reduced_dual_matrix, reduced_dual_operator):
        np.testing.assert_allclose(fn(x, y, er).synthesis, MERCEDES_REDUCED, atol=1e-14)
    trace = reduced_dual_iterative(x, y, er)
    assert trace.finished and trace.stop is None
    np.testing.assert_allclose(trace.dual().synthesis, MERCEDES_REDUCED, atol=1e-14)


def test_iterative_mercedes_first_coefficient():
    # <y_1, x_1> = 2/3 and <y_2, x_1> = -1/3 so alpha_2 = -1
    x = mercedes_frame()
    y = canonical_dual(x)
    d = y[0] @ x[0]
    assert d == pytest.approx(2 / 3)
    assert (y[1] @ x[0]) / (1 - d) == pytest.approx(-1.0)


def test_operator_method_example34():
    x, z = repeated_first_frame(), unit_half_dual()
    v = reduced_dual_operator(x, z, one(1, 2)).synthesis
    assert dual_residual(np.delete(x.synthesis, [0, 1], axis=1), v) <= 1e-12
    with pytest.raises(SingularOperator):
        reduced_dual_operator(x, z, one(1))
    with pytest.raises(SingularAxz):
        reduced_dual_matrix(x, z, one(1))


def test_iterative_stops_example34():
    x, z = repeated_first_frame(), unit_half_dual()
    trace = reduced_dual_iterative(x, z, one(1, 2))
    assert trace.stop == 1 and trace.completed == 0 and not trace.finished
    with pytest.raises(IterationStopped):
        trace.dual()


def test_iterative_stages_are_duals(rng):
    for _ in range(10):
        x, z, er = gaussian_instance(rng, r_range=(4, 20), canonical=bool(rng.integers(2)))
        trace = reduced_dual_iterative(x, z, er, keep_stages=True)
        assert trace.finished
        for j in range(1, trace.completed + 1):
            keep = trace.stage_indices(j)
            assert dual_residual(x.synthesis[:, keep], trace.stage(j).synthesis) <= 1e-8


def test_iterative_stage_access_errors(rng):
    x, z, er = gaussian_instance(rng, r_range=(4, 8), max_k=3)
    trace = reduced_dual_iterative(x, z, er)
    with pytest.raises(IndexError):
        trace.stage(0)
    if trace.completed > 1:
        with pytest.raises(IndexError):
            trace.stage(1)


def test_iterative_columns_follow_complement_order():
    x = mercedes_frame()
    trace = reduced_dual_iterative(x, canonical_dual(x), ErasureSet([1], 3))
    np.testing.assert_array_equal(trace.stage_indices(1), [0, 2])


def test_methods_agree_and_match_oracle(rng):
    for _ in range(30):
        canonical = bool(rng.integers(2))
        x, z, er = gaussian_instance(rng, r_range=(5, 25), canonical=canonical)
        a = reduced_dual_matrix(x, z, er).synthesis
        assert column_gap(a, reduced_dual_operator(x, z, er).synthesis) <= 1e-8
        assert column_gap(a, reduced_dual_iterative(x, z, er).dual().synthesis) <= 1e-8
        if canonical:
            oracle = np.linalg.pinv(x.synthesis[:, er.complement]).T
            assert column_gap(a, oracle) <= 1e-8
            assert column_gap(a, reduced_canonical_dual(x, er).synthesis) <= 1e-8


def test_reduced_dual_shape_errors():
    x = mercedes_frame()
    with pytest.raises(ValueError):
        reduced_dual_matrix(x, np.eye(2), ErasureSet([0], 3))
    with pytest.raises(ValueError):
        reduced_dual_matrix(x, canonical_dual(x), ErasureSet([0], 4))


# -------------------------------------------------------- rank-one inverse


def test_rank_one_inverse(rng):
    for _ in range(20):
        x, y = rng.standard_normal((2, 6))
        inv = rank_one_inverse(y, x)
        np.testing.assert_allclose((np.eye(6) - np.outer(y, x)) @ inv, np.eye(6), atol=1e-12)
    with pytest.raises(SingularOperator):
        rank_one_inverse(np.array([1.0, 0.0]), np.array([1.0, 5.0]))


# -------------------------------------------------------------- statements


def test_statements_examples():
    x = repeated_first_frame()
    r31 = check_statements(x, half_zero_half_dual(), one(1, 3))
    assert r31.stmt_A and not r31.stmt_A_prime
    r34a = check_statements(x, unit_half_dual(), one(1))
    assert r34a.stmt_A_prime and not r34a.stmt_B and not r34a.stmt_C
    r34b = check_statements(x, unit_half_dual(), one(1, 2))
    assert r34b.stmt_B and r34b.stmt_C and not r34b.stmt_D and r34b.iteration_stop == 1
    for rep in (r31, r34a, r34b):
        assert rep.chain_holds()


def test_statement_report_str_and_chain():
    rep = check_statements(repeated_first_frame(), unit_half_dual(), one(1, 2))
    text = str(rep)
    assert "B=T" in text and "D=F" in text and "stop at j=1" in text
    from frame_erasure import StatementReport

    bad = StatementReport(False, True, True, True, True, 1.0)
    assert not bad.chain_holds()


# --------------------------------------------------- perturbation classes


def test_supported_perturbation_golden():
    q = perturbation_supported_on_E(mercedes_frame(), ErasureSet([0, 1], 3), 42).q
    want = np.array([[0.21546751343772041, -0.7353798138488852, 0.0], [0.5306491295042994, 0.6650796891050291, 0.0]])
    np.testing.assert_allclose(q, want, rtol=1e-14, atol=0)
    again = perturbation_supported_on_E(mercedes_frame(), ErasureSet([0, 1], 3), 42).q
    np.testing.assert_array_equal(q, again)


def test_supported_perturbation_k1_gives_b(rng):
    x = gaussian_frame(rng, 5, 9)
    y = canonical_dual(x)
    er = ErasureSet([3], 9)
    q = perturbation_supported_on_E(x, er, 3)
    assert abs(q.q[:, 3] @ x[3] - 1.0) > 1e-6
    assert check_statements(x, dual_from_perturbation(x, y, q), er).stmt_B


def test_orthogonal_class_mercedes():
    x = mercedes_frame()
    er = ErasureSet([0], 3)
    q = perturbation_orthogonal_class(x, er, 42)
    np.testing.assert_allclose(q.q[0], 0.0, atol=1e-15)
    np.testing.assert_allclose(q.q[1], [-1.0399841062404955, 0.0, 0.0], rtol=1e-12)
    z = dual_from_perturbation(x, canonical_dual(x), q)
    assert reduced_dual_iterative(x, z, er).finished


def test_orthogonal_class_full_span_gives_zero():
    x = Frame(np.hstack([np.eye(2), np.eye(2)]))
    q = perturbation_orthogonal_class(x, ErasureSet([0, 1], 4), 0)
    np.testing.assert_array_equal(q.q, 0.0)


def test_orthogonal_class_seed7_completes():
    rng = np.random.default_rng(7)
    x = gaussian_frame(rng, 20, 30)
    er = ErasureSet.first(5, 30)
    z = dual_from_perturbation(x, canonical_dual(x), perturbation_orthogonal_class(x, er, 7))
    assert check_statements(x, z, er).stmt_D


def test_axz_condition_is_relative_to_data_scale():
    # 1 x 1 A = <z, x> - 1 must not count as invertible just because it is nonzero
    x = np.array([[1.0, 0.0], [0.0, 1.0]])
    z = np.array([[1.0 + 1e-15, 0.0], [0.0, 1.0]])
    a = build_axz(x, z, ErasureSet([0], 2))
    assert a.data[0, 0] != 0.0 and not a.is_invertible()
    assert build_axz(x, np.diag([0.5, 1.0]), ErasureSet([0], 2)).rcond == pytest.approx(0.5 / 1.5)


def test_iteration_stop_scale_and_rank_one_inverse_agree():
    # <y, x> = 1 + 1e-9 but ||y|| ||x|| ~ 1e3, so the gap is rounding-level
    x = np.array([1.0, 0.0])
    y = np.array([1.0 + 1e-9, 1e3])
    with pytest.raises(SingularOperator):
        rank_one_inverse(y, x)
    frame = np.column_stack([x, [0.0, 1.0], [1.0, 0.0]])
    dual = np.column_stack([y, [0.0, 1.0], [0.0, 0.0]])
    assert reduced_dual_iterative(frame, dual, ErasureSet([0], 3)).stop == 1
    # a clear gap still goes through
    np.testing.assert_allclose(rank_one_inverse(np.array([0.5, 1e3]), x) @ (np.eye(2) - np.outer([0.5, 1e3], x)), np.eye(2), atol=1e-9)


def test_degenerate_canonical_iteration_stops(rng):
    from frame_erasure.instances import degenerate_instance

    for _ in range(50):
        x, er = degenerate_instance(rng)
        rep = check_statements(x, canonical_dual(x), er)
        assert rep.flags() == (False,) * 5
