"""Closed-form and Monte Carlo reductions, expectations, and the identity check."""

import numpy as np
import pytest

from cqreduce import (
    DensityMatrix,
    ExponentialOverlap,
    HermitianObservable,
    Mixture,
    ModelConfig,
    PointMass,
    ProjectivePower,
    StateVector,
    Uniform,
    born_rule_verify,
    classical_expectation,
    draw_samples,
    quantum_expectation,
    reduce_batch,
    reduce_closed_form,
    reduce_monte_carlo,
    sample_uniform,
)
from cqreduce.errors import (
    DimensionMismatchError,
    EmptyBatchError,
    UnsupportedVariantError,
    ValidationError,
)
from cqreduce.observables import FLOW_RATE, hermitian_exponential
from cqreduce.reduction import consistent_with
from cqreduce.sphere import SIGMA_ENVELOPE, SampleBatch

from oracles import PROJECTIVE_K1_RHO_DIAG_D2, weighted_hopf_expectation

E1 = StateVector.basis(2, 0)
E2 = StateVector.basis(2, 1)


def _random_hermitian(dim, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianObservable((g + g.conj().T) / 2)


# -- DensityMatrix invariants ----------------------------------------------------

def test_density_matrix_accepts_valid():
    rho = DensityMatrix(np.diag([0.25, 0.75]).astype(complex), hbar=1.0)
    assert rho.dim == 2


def test_density_matrix_rejects_nonhermitian():
    with pytest.raises(ValidationError):
        DensityMatrix(np.array([[0.5, 0.1], [0.0, 0.5]], dtype=complex), hbar=1.0)


def test_density_matrix_rejects_wrong_trace():
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([0.5, 0.4]).astype(complex), hbar=1.0)


def test_density_matrix_rejects_negative_eigenvalue():
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([2.0, -1.0]).astype(complex), hbar=1.0)


# -- closed-form reductions -------------------------------------------------------

def test_point_mass_reduces_to_projector():
    rho = reduce_closed_form(PointMass(E1), ModelConfig(2))
    assert np.array_equal(rho.matrix, np.array([[1.0, 0.0], [0.0, 0.0]]))


def test_point_mass_index_order():
    # rho[m, n] pairs the row index with the unconjugated amplitude
    phi = StateVector(np.array([1.0, 1.0j]) / np.sqrt(2))
    rho = reduce_closed_form(PointMass(phi), ModelConfig(2))
    expected_01 = phi.amplitudes[0] * np.conj(phi.amplitudes[1])
    assert rho.matrix[0, 1] == pytest.approx(expected_01, abs=1e-15)


def test_mixture_reduces_to_weighted_sum():
    rho = reduce_closed_form(Mixture(((0.5, E1), (0.5, E2))), ModelConfig(2))
    assert np.allclose(rho.matrix, np.diag([0.5, 0.5]), atol=1e-15)


def test_uniform_reduces_to_maximally_mixed():
    rho = reduce_closed_form(Uniform(), ModelConfig(3))
    assert np.allclose(rho.matrix, np.eye(3) / 3, atol=1e-15)


def test_closed_form_carries_hbar():
    rho = reduce_closed_form(PointMass(E1), ModelConfig(2, hbar=3.0))
    assert rho.matrix[0, 0] == pytest.approx(3.0, abs=1e-14)
    assert float(np.trace(rho.matrix).real) == pytest.approx(3.0, abs=3e-12)


def test_closed_form_rejects_density_kernels():
    with pytest.raises(UnsupportedVariantError):
        reduce_closed_form(ProjectivePower(E1, 1), ModelConfig(2))


def test_mixture_linearity_is_exact():
    cfg = ModelConfig(2)
    phi_a = StateVector(np.array([0.6, 0.8j]))
    phi_b = StateVector(np.array([1.0, 1.0]) / np.sqrt(2))
    mixture = Mixture(((0.25, phi_a), (0.75, phi_b)))
    combined = reduce_closed_form(mixture, cfg).matrix
    parts = (
        0.25 * reduce_closed_form(PointMass(phi_a), cfg).matrix
        + 0.75 * reduce_closed_form(PointMass(phi_b), cfg).matrix
    )
    assert np.max(np.abs(combined - parts)) <= 1e-15


# -- Monte Carlo reductions --------------------------------------------------------

def test_point_mass_monte_carlo_is_exact():
    report = reduce_monte_carlo(PointMass(E1), ModelConfig(2), seed=0, count=100)
    assert np.array_equal(report.estimate.matrix, np.array([[1.0, 0.0], [0.0, 0.0]]))
    assert np.all(report.stderr_real == 0.0)
    assert np.all(report.stderr_imag == 0.0)


def test_monte_carlo_needs_two_samples():
    with pytest.raises(EmptyBatchError):
        reduce_monte_carlo(Uniform(), ModelConfig(2), seed=0, count=1)


def test_uniform_monte_carlo_within_errors():
    cfg = ModelConfig(2)
    report = reduce_monte_carlo(Uniform(), cfg, seed=31, count=1_000_000)
    reference = reduce_closed_form(Uniform(), cfg)
    max_dev, within = consistent_with(report, reference)
    assert within
    assert max_dev < 5e-3


def test_monte_carlo_matches_closed_form_for_every_reducible_variant():
    cfg = ModelConfig(2)
    states = [
        PointMass(StateVector(np.array([0.6, 0.8]))),
        Mixture(((0.5, E1), (0.5, E2))),
        Uniform(),
    ]
    for i, state in enumerate(states):
        report = reduce_monte_carlo(state, cfg, seed=40 + i, count=200_000)
        _, within = consistent_with(report, reduce_closed_form(state, cfg))
        assert within


def test_estimates_are_exactly_hermitian_and_psd():
    cfg = ModelConfig(5)
    report = reduce_monte_carlo(Uniform(), cfg, seed=50, count=10_000)
    m = report.estimate.matrix
    assert np.array_equal(m, m.conj().T)
    assert np.linalg.eigvalsh(m)[0] >= -1e-10 * float(np.trace(m).real)
    assert abs(float(np.trace(m).real) - cfg.hbar) <= 1e-12


def test_projective_power_diagonals_match_oracle():
    # recompute the frozen oracle diagonals by quadrature first
    density = lambda p: np.abs(p[..., 0]) ** 2
    oracle = tuple(
        weighted_hopf_expectation(
            lambda p, n=n: np.abs(p[..., n]) ** 2, density
        )
        for n in range(2)
    )
    assert oracle[0] == pytest.approx(PROJECTIVE_K1_RHO_DIAG_D2[0], abs=1e-10)
    assert oracle[1] == pytest.approx(PROJECTIVE_K1_RHO_DIAG_D2[1], abs=1e-10)

    cfg = ModelConfig(2)
    report = reduce_monte_carlo(ProjectivePower(E1, 1), cfg, seed=8, count=1_000_000)
    for n in range(2):
        dev = abs(report.estimate.matrix[n, n].real - PROJECTIVE_K1_RHO_DIAG_D2[n])
        assert dev <= SIGMA_ENVELOPE * report.stderr_real[n, n]


# -- expectations -------------------------------------------------------------------

def test_classical_expectation_of_identity_is_exact():
    cfg = ModelConfig(2)
    points = np.array([[1.0 + 0j, 0.0], [0.0, 1.0 + 0j]])
    batch = SampleBatch(points, np.ones(2), seed=0, count=2)
    value, stderr = classical_expectation(HermitianObservable.identity(2), batch, cfg)
    assert value == 1.0
    assert stderr == 0.0


def test_classical_expectation_two_point_cancellation():
    cfg = ModelConfig(2)
    points = np.array([[1.0 + 0j, 0.0], [0.0, 1.0 + 0j]])
    batch = SampleBatch(points, np.ones(2), seed=0, count=2)
    obs = HermitianObservable(np.diag([1.0, -1.0]))
    value, _ = classical_expectation(obs, batch, cfg)
    assert value == 0.0


def test_classical_expectation_uniform_traceless():
    cfg = ModelConfig(2)
    batch = sample_uniform(cfg, seed=60, count=1_000_000)
    obs = HermitianObservable(np.diag([1.0, -1.0]))
    value, stderr = classical_expectation(obs, batch, cfg)
    assert abs(value) <= SIGMA_ENVELOPE * stderr


def test_quantum_expectation_examples():
    cfg = ModelConfig(2)
    rho_mixed = DensityMatrix(np.eye(2, dtype=complex) / 2, hbar=1.0)
    assert quantum_expectation(HermitianObservable.identity(2), rho_mixed) == (
        pytest.approx(1.0, abs=1e-14)
    )
    assert quantum_expectation(
        HermitianObservable(np.diag([1.0, -1.0])), rho_mixed
    ) == pytest.approx(0.0, abs=1e-14)
    plus = StateVector(np.array([1.0, 1.0]) / np.sqrt(2))
    rho_plus = reduce_closed_form(PointMass(plus), cfg)
    flip = HermitianObservable([[0.0, 1.0], [1.0, 0.0]])
    assert quantum_expectation(flip, rho_plus) == pytest.approx(1.0, abs=1e-14)


def test_quantum_expectation_linear_in_observable():
    cfg = ModelConfig(3)
    rho = reduce_batch(sample_uniform(cfg, seed=61, count=500), cfg).estimate
    a = _random_hermitian(3, seed=62)
    b = _random_hermitian(3, seed=63)
    combined = HermitianObservable(2.0 * a.matrix + 3.0 * b.matrix)
    lhs = quantum_expectation(combined, rho)
    rhs = 2.0 * quantum_expectation(a, rho) + 3.0 * quantum_expectation(b, rho)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_expectation_dimension_mismatch():
    cfg = ModelConfig(2)
    batch = sample_uniform(cfg, seed=0, count=4)
    with pytest.raises(DimensionMismatchError):
        classical_expectation(HermitianObservable.identity(3), batch, cfg)
    rho = reduce_closed_form(Uniform(), cfg)
    with pytest.raises(DimensionMismatchError):
        quantum_expectation(HermitianObservable.identity(3), rho)


# -- the same-batch identity ---------------------------------------------------------

def test_identity_on_point_mass():
    report = born_rule_verify(
        _random_hermitian(2, seed=70), PointMass(E1), ModelConfig(2), seed=1, count=100
    )
    assert report.passed
    assert report.closed_form_value is not None


def test_identity_with_identity_observable():
    cfg = ModelConfig(2)
    report = born_rule_verify(
        HermitianObservable.identity(2), Uniform(), cfg, seed=2, count=10
    )
    assert report.passed
    assert report.classical_value == pytest.approx(1.0, abs=1e-12)
    assert report.quantum_value == pytest.approx(1.0, abs=1e-12)
    assert report.closed_form_value == pytest.approx(1.0, abs=1e-12)


def test_identity_on_weighted_density_with_fresh_batch_confirmation():
    cfg = ModelConfig(3)
    obs = _random_hermitian(3, seed=71)
    state = ProjectivePower(StateVector.basis(3, 0), 1)
    report = born_rule_verify(obs, state, cfg, seed=5, count=10_000)
    assert report.passed
    assert report.comparison == "relative"
    assert report.relative_difference <= 1e-10

    # independent confirmation: a fresh batch agrees within combined errors
    batch_a = draw_samples(state, cfg, seed=5, count=10_000)
    batch_b = draw_samples(state, cfg, seed=99, count=10_000)
    value_a, se_a = classical_expectation(obs, batch_a, cfg)
    value_b, se_b = classical_expectation(obs, batch_b, cfg)
    assert abs(value_a - value_b) <= SIGMA_ENVELOPE * np.hypot(se_a, se_b)


def test_identity_across_dims_variants_and_seeds():
    for dim in (1, 2, 3, 5):
        cfg = ModelConfig(dim)
        anchor = StateVector.basis(dim, 0)
        states = [
            PointMass(anchor),
            Mixture(((0.5, anchor), (0.5, StateVector.basis(dim, dim - 1)))),
            Uniform(),
            ExponentialOverlap(anchor, 1.5),
        ]
        for k, state in enumerate(states):
            obs = _random_hermitian(dim, seed=80 + dim + k)
            report = born_rule_verify(obs, state, cfg, seed=dim * 10 + k, count=2000)
            assert report.passed, (dim, type(state).__name__)


def test_verification_absolute_mode_when_classical_vanishes():
    cfg = ModelConfig(2)
    plus = StateVector(np.array([1.0, 1.0]) / np.sqrt(2))
    obs = HermitianObservable(np.diag([1.0, -1.0]))
    # the form cancels exactly on every copy of |+>, so classical == 0.0
    report = born_rule_verify(obs, PointMass(plus), cfg, seed=123, count=10)
    assert report.comparison == "absolute"
    assert report.relative_difference is None
    assert report.passed


# -- covariance under the flow --------------------------------------------------------

def test_reduction_covariant_under_flow_on_shared_samples():
    cfg = ModelConfig(3)
    batch = sample_uniform(cfg, seed=90, count=5000)
    obs = _random_hermitian(3, seed=91)
    t = 0.7
    u = hermitian_exponential(obs, FLOW_RATE * t)
    rotated = batch.transformed(u)
    lhs = reduce_batch(rotated, cfg).estimate.matrix
    rhs = u @ reduce_batch(batch, cfg).estimate.matrix @ u.conj().T
    assert np.max(np.abs(lhs - rhs)) <= 1e-12
