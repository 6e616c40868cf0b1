import numpy as np
import pytest

import oracle
from hexcc.lattice import dual_triangular, link_lattice
from hexcc.models import color_code_h, perturbed_h, tfim_h, toric_code_h
from hexcc.pauli import OperatorSum, PauliString
from hexcc.spectra import (
    StateVector,
    _cluster,
    apply,
    dense_matrix,
    expectation,
    full_spectrum,
    ground_state,
    invariant_sector_eigenvalues,
    low_lying,
    sector_eigenvalues,
    xtype_symmetry_masks,
)


def test_state_vector_basics():
    v = StateVector.basis_state(2, 3)
    assert v.norm() == pytest.approx(1.0)
    assert v.amplitudes[3] == 1.0
    u = StateVector.uniform(3)
    assert u.norm() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        StateVector(amplitudes=np.zeros(5), n=2)
    with pytest.raises(ValueError):
        StateVector(amplitudes=np.zeros(4), n=2).normalized()


def test_apply_matches_kron_oracle():
    rng = np.random.default_rng(21)
    for _ in range(30):
        n = int(rng.integers(1, 7))
        op = oracle.random_operator(rng, n)
        mat = oracle.kron_matrix(op)
        v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        got = apply(op, v)
        assert np.allclose(got, mat @ v, atol=1e-12)


def test_apply_wraps_state_vector():
    op = OperatorSum(n=1, terms=((1.0, PauliString.from_text("+X")),))
    out = apply(op, StateVector.basis_state(1, 0))
    assert isinstance(out, StateVector)
    assert np.allclose(out.amplitudes, [0.0, 1.0])


def test_expectation_matches_oracle():
    rng = np.random.default_rng(22)
    for _ in range(20):
        n = int(rng.integers(1, 6))
        op = oracle.random_operator(rng, n, hermitian=True)
        mat = oracle.kron_matrix(op)
        v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        v /= np.linalg.norm(v)
        want = float(np.real(np.vdot(v, mat @ v)))
        assert expectation(v, op) == pytest.approx(want, abs=1e-12)


def test_expectation_rejects_non_hermitian_and_zero():
    op = OperatorSum(n=1, terms=((1.0, PauliString(n=1, x=1, phase=1)),))
    with pytest.raises(ValueError):
        expectation(StateVector.basis_state(1), op)
    herm = OperatorSum(n=1, terms=((1.0, PauliString(n=1, x=1)),))
    with pytest.raises(ValueError):
        expectation(np.zeros(2), herm)


def test_expectation_warns_on_unnormalized_state():
    op = OperatorSum(n=1, terms=((1.0, PauliString(n=1, z=1)),))
    with pytest.warns(UserWarning):
        value = expectation(np.array([2.0, 0.0]), op)
    assert value == pytest.approx(1.0)


def test_dense_matrix_matches_kron_oracle():
    rng = np.random.default_rng(23)
    for _ in range(20):
        n = int(rng.integers(1, 6))
        op = oracle.random_operator(rng, n)
        assert np.allclose(dense_matrix(op), oracle.kron_matrix(op), atol=1e-12)


def test_dense_matrix_respects_limit():
    op = OperatorSum(n=6, terms=((1.0, PauliString(n=6, x=1)),))
    with pytest.raises(ValueError, match="dense limit"):
        dense_matrix(op, dense_limit=32)


def test_cluster():
    vals = np.array([0.0, 1e-10, 1.0, 1.0 + 5e-9, 2.0])
    clusters = _cluster(vals, 1e-8)
    assert [m for _, m in clusters] == [2, 2, 1]
    assert clusters[0][0] == pytest.approx(5e-11)


def test_full_spectrum_matches_eigvalsh(lat33):
    tri = dual_triangular(lat33, "g")
    h = tfim_h(tri, 0.35).hamiltonian
    result = full_spectrum(h)
    want = np.linalg.eigvalsh(oracle.kron_matrix(h))
    assert np.allclose(result.eigenvalues, want, atol=1e-10)
    assert result.method == "dense"
    assert sum(m for _, m in result.clusters) == 1 << h.n


def test_full_spectrum_vectors_are_eigenvectors(lat33):
    link = link_lattice(lat33, "r")
    h = toric_code_h(link).hamiltonian
    result = full_spectrum(h, want_vectors=True)
    assert result.ground_degeneracy == 4
    mat = dense_matrix(h)
    for i in range(result.eigenvectors.shape[1]):
        vec = result.eigenvectors[:, i]
        resid = np.linalg.norm(mat @ vec - result.ground_energy * vec)
        assert resid < 1e-10


def test_spectrum_result_gap():
    vals = np.array([-2.0, -2.0, -1.0])
    result = full_spectrum(
        OperatorSum(n=1, terms=((1.0, PauliString(n=1, z=1)),))
    )
    assert result.gap() == pytest.approx(2.0)
    single = _cluster(np.array([1.0]), 1e-8)
    assert len(single) == 1


def test_low_lying_matches_dense(lat33):
    # 9-qubit model falls above the tiny-dense threshold with dim 512.
    h = toric_code_h(link_lattice(lat33, "b")).hamiltonian
    k = 8
    got = low_lying(h, k=k)
    want = np.linalg.eigvalsh(oracle.kron_matrix(h))[:k]
    assert np.allclose(got.eigenvalues, want, atol=1e-9)
    assert got.method == "lanczos"
    assert got.metadata["max_residual"] < 1e-8


def test_low_lying_dense_fallback():
    h = OperatorSum(n=2, terms=((1.0, PauliString(n=2, z=3)),))
    result = low_lying(h, k=2)
    assert result.method == "dense-fallback"
    assert np.allclose(result.eigenvalues, [-1.0, -1.0])
    with pytest.raises(ValueError):
        low_lying(h, k=0)


def test_low_lying_ncv_controls_subspace(lat33):
    h = toric_code_h(link_lattice(lat33, "g")).hamiltonian
    a = low_lying(h, k=6, ncv=40)
    b = low_lying(h, k=6)
    assert np.allclose(a.eigenvalues, b.eigenvalues, atol=1e-9)


def test_ground_state_dense_and_lanczos(lat33):
    h = toric_code_h(link_lattice(lat33, "r")).hamiltonian
    e_dense, v_dense = ground_state(h)
    e_iter, v_iter = ground_state(h, dense_limit=2)
    assert e_dense == pytest.approx(-9.0)
    assert e_iter == pytest.approx(e_dense, abs=1e-9)
    for v in (v_dense, v_iter):
        assert expectation(v, h) == pytest.approx(e_dense, abs=1e-9)


def test_xtype_symmetry_masks_commute(lat33):
    h = perturbed_h(lat33, (0.5, 0.5, 0.5)).hamiltonian
    masks = xtype_symmetry_masks(h)
    # 7 independent hexagon X products plus 4 X logicals.
    assert len(masks) == 11
    for m in masks:
        sym = PauliString(n=h.n, x=m)
        for _, p in h.terms:
            assert sym.commutes_with(p)


def test_xtype_symmetry_masks_independent(lat33):
    h = perturbed_h(lat33, (0.5, 0.5, 0.5)).hamiltonian
    masks = xtype_symmetry_masks(h)
    gens = [PauliString(n=h.n, x=m) for m in masks]
    assert 1 << len(masks) == oracle.span_size(gens, h.n)


def test_sector_eigenvalues_match_dense(lat33):
    h = toric_code_h(link_lattice(lat33, "g")).hamiltonian
    got = sector_eigenvalues(h)
    want = np.linalg.eigvalsh(oracle.kron_matrix(h).real)
    assert got.shape == want.shape
    assert np.allclose(got, want, atol=1e-10)


def test_sector_eigenvalues_match_dense_perturbed_small(lat33):
    tri = dual_triangular(lat33, "b")
    h = tfim_h(tri, 0.4).hamiltonian
    got = sector_eigenvalues(h)
    want = np.linalg.eigvalsh(oracle.kron_matrix(h).real)
    assert np.allclose(got, want, atol=1e-10)


def test_invariant_sector_subset(lat33):
    h = toric_code_h(link_lattice(lat33, "g")).hamiltonian
    masks = xtype_symmetry_masks(h)
    inv = invariant_sector_eigenvalues(h, masks)
    assert len(inv) == 1 << (h.n - len(masks))
    # Every invariant-sector eigenvalue also appears in the full spectrum.
    full = sector_eigenvalues(h, masks)
    for value in inv:
        assert np.min(np.abs(full - value)) < 1e-9


def test_sector_rejects_odd_phase_terms():
    op = OperatorSum(n=2, terms=((1.0, PauliString.from_ops(2, {0: "Y"})),))
    with pytest.raises(ValueError):
        sector_eigenvalues(op)


def test_sector_rejects_noncommuting_masks():
    op = OperatorSum(n=2, terms=((1.0, PauliString(n=2, z=1)),))
    with pytest.raises(ValueError):
        # X mask on qubit 0 anticommutes with the Z term.
        sector_eigenvalues(op, masks=[1])
