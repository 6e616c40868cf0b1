import numpy as np
import pytest

import oracle
from hexcc.pauli import (
    OperatorSum,
    PauliString,
    gf2_in_span,
    gf2_rank,
    gf2_span_equal,
    same_terms,
    stabilizer_degeneracy,
)


def test_identity_and_masks():
    p = PauliString.identity(3)
    assert p.x == 0 and p.z == 0 and p.phase == 0
    assert p.weight == 0
    with pytest.raises(ValueError):
        PauliString(n=2, x=4)
    with pytest.raises(ValueError):
        PauliString(n=-1)


def test_phase_wraps_mod_four():
    p = PauliString(n=1, x=1, phase=7)
    assert p.phase == 3


def test_from_ops_and_letters():
    p = PauliString.from_ops(4, {0: "X", 1: "Y", 3: "Z"})
    assert [p.letter(q) for q in range(4)] == ["X", "Y", "I", "Z"]
    assert p.weight == 3
    assert p.is_hermitian
    with pytest.raises(ValueError):
        PauliString.from_ops(2, {5: "X"})
    with pytest.raises(ValueError):
        PauliString.from_ops(2, {0: "Q"})


@pytest.mark.parametrize("text", ["+XIZZY", "-iZY", "+iY", "-XX", "+I"])
def test_text_roundtrip(text):
    assert PauliString.from_text(text).to_text() == text


def test_multiply_matches_matrix_product():
    rng = np.random.default_rng(3)
    for _ in range(60):
        n = int(rng.integers(1, 5))
        a = oracle.random_pauli(rng, n)
        b = oracle.random_pauli(rng, n)
        got = oracle.kron_pauli(a * b)
        want = oracle.kron_pauli(a) @ oracle.kron_pauli(b)
        assert np.allclose(got, want, atol=1e-12)


def test_commutes_with_matches_matrix_commutator():
    rng = np.random.default_rng(4)
    for _ in range(60):
        n = int(rng.integers(1, 5))
        a = oracle.random_pauli(rng, n)
        b = oracle.random_pauli(rng, n)
        ma, mb = oracle.kron_pauli(a), oracle.kron_pauli(b)
        commutes = np.allclose(ma @ mb, mb @ ma, atol=1e-12)
        assert a.commutes_with(b) == commutes


def test_is_hermitian_matches_matrix():
    rng = np.random.default_rng(5)
    for _ in range(40):
        p = oracle.random_pauli(rng, 3)
        m = oracle.kron_pauli(p)
        assert p.is_hermitian == np.allclose(m, m.conj().T, atol=1e-12)


def test_negate():
    p = PauliString.from_text("+XZ")
    assert p.negate().to_text() == "-XZ"
    assert p.negate().negate() == p


def test_operator_sum_add_and_scale():
    p = PauliString.from_text("+X")
    q = PauliString.from_text("+Z")
    a = OperatorSum(n=1, terms=((1.0, p),))
    b = OperatorSum(n=1, terms=((2.0, q),))
    s = (a + b).scaled(0.5)
    assert s.n_terms == 2
    assert [c for c, _ in s.terms] == [0.5, 1.0]
    with pytest.raises(ValueError):
        a + OperatorSum(n=2)


def test_operator_sum_rejects_mismatched_register():
    with pytest.raises(ValueError):
        OperatorSum(n=2, terms=((1.0, PauliString.identity(3)),))


def test_normalized_merges_and_folds_signs():
    p = PauliString(n=2, x=1)
    minus_p = p.negate()
    op = OperatorSum(n=2, terms=((1.0, p), (0.25, p), (0.5, minus_p)))
    norm = op.normalized()
    assert norm.n_terms == 1
    coeff, term = norm.terms[0]
    assert coeff == pytest.approx(0.75)
    assert term.phase == 0


def test_normalized_drops_cancelled_terms():
    p = PauliString(n=1, z=1)
    op = OperatorSum(n=1, terms=((1.0, p), (-1.0, p)))
    assert op.normalized().n_terms == 0


def test_normalized_matrix_agrees():
    rng = np.random.default_rng(6)
    for _ in range(20):
        op = oracle.random_operator(rng, 3)
        got = oracle.kron_matrix(op.normalized())
        want = oracle.kron_matrix(op)
        assert np.allclose(got, want, atol=1e-12)


def test_same_terms():
    p = PauliString(n=2, x=1)
    q = PauliString(n=2, z=2)
    a = OperatorSum(n=2, terms=((1.0, p), (2.0, q)))
    b = OperatorSum(n=2, terms=((2.0, q), (1.0, p)))
    assert same_terms(a, b)
    # Structural comparison: a sign folded into the phase is a different
    # term until normalized() rewrites it.
    c = OperatorSum(n=2, terms=((-1.0, p.negate()), (2.0, q)))
    assert not same_terms(a, c)
    assert same_terms(a.normalized(), c.normalized())
    d = OperatorSum(n=2, terms=((1.0 + 5e-7, p), (2.0, q)))
    assert not same_terms(a, d)
    assert same_terms(a, d, tol=1e-6)


def test_gf2_rank_matches_span_enumeration():
    rng = np.random.default_rng(7)
    for _ in range(30):
        n = int(rng.integers(1, 6))
        gens = [oracle.random_pauli(rng, n) for _ in range(int(rng.integers(0, 7)))]
        assert 1 << gf2_rank(gens) == oracle.span_size(gens, n)


def test_gf2_in_span():
    gens = [PauliString.from_text("+XX"), PauliString.from_text("+ZZ")]
    assert gf2_in_span(gens, PauliString.from_text("+YY"))
    assert not gf2_in_span(gens, PauliString.from_text("+XI"))
    assert gf2_in_span(gens, PauliString.identity(2))


def test_gf2_span_equal():
    a = [PauliString.from_text("+XI"), PauliString.from_text("+IX")]
    b = [PauliString.from_text("+XX"), PauliString.from_text("+IX")]
    c = [PauliString.from_text("+XX")]
    assert gf2_span_equal(a, b)
    assert not gf2_span_equal(a, c)
    # Signs are invisible to the GF(2) view.
    assert gf2_span_equal(a, [g.negate() for g in a])


def test_stabilizer_degeneracy():
    gens = [PauliString.from_text("+ZZI"), PauliString.from_text("+IZZ")]
    assert stabilizer_degeneracy(gens, 3) == 2
    # A redundant generator changes nothing.
    gens.append(PauliString.from_text("+ZIZ"))
    assert stabilizer_degeneracy(gens, 3) == 2
    assert stabilizer_degeneracy([], 2) == 4
