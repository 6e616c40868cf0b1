"""State vectors, matrix-free operator application, and eigensolvers.

Computational-basis convention: basis index ``i`` has qubit ``q`` in state
``(i >> q) & 1``.  A term ``c * i**phase * X^x Z^z`` acts as

    (T v)[k] = c * i**phase * (-1)^{popcount(z & (k ^ x))} * v[k ^ x]

so application is a gather plus a sign flip per term; no matrix is formed.
Dense matrices are only built below a configurable dimension limit.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse.linalg as spla

from .pauli import OperatorSum, PauliString

DENSE_LIMIT_DEFAULT = 2 ** 14
CLUSTER_TOL_DEFAULT = 1e-8
RESIDUAL_TOL = 1e-8


@dataclass(eq=False)
class StateVector:
    """State on ``n`` qubits; amplitudes indexed by computational basis."""

    amplitudes: np.ndarray
    n: int

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes)
        if self.amplitudes.shape != (1 << self.n,):
            raise ValueError(
                f"amplitude vector of shape {self.amplitudes.shape} does not "
                f"match {self.n} qubits"
            )

    @classmethod
    def basis_state(cls, n: int, index: int = 0) -> StateVector:
        amps = np.zeros(1 << n)
        amps[index] = 1.0
        return cls(amplitudes=amps, n=n)

    @classmethod
    def uniform(cls, n: int) -> StateVector:
        dim = 1 << n
        return cls(amplitudes=np.full(dim, 1.0 / np.sqrt(dim)), n=n)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> StateVector:
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(amplitudes=self.amplitudes / nrm, n=self.n)


def _as_amplitudes(v) -> tuple[np.ndarray, bool]:
    if isinstance(v, StateVector):
        return v.amplitudes, True
    return np.asarray(v), False


class CompiledOperator:
    """Operator sum preprocessed for repeated matrix-free application."""

    def __init__(self, h: OperatorSum):
        self.n = h.n
        self.dim = 1 << h.n
        idx = np.arange(self.dim, dtype=np.uint64)
        self._perms: list[np.ndarray] = []
        self._weights: list[np.ndarray] = []
        complex_needed = False
        for coeff, p in h.normalized().terms:
            # (-1)^{popcount(z & (k ^ x))} absorbed into the weight array.
            signs = 1.0 - 2.0 * (
                (np.bitwise_count((idx ^ np.uint64(p.x)) & np.uint64(p.z)) & 1)
                .astype(np.float64)
            )
            factor = coeff * (1j ** p.phase)
            if p.phase % 2 == 0:
                weight = signs * factor.real
            else:
                weight = signs.astype(np.complex128) * factor
                complex_needed = True
            self._perms.append((idx ^ np.uint64(p.x)).astype(np.intp))
            self._weights.append(weight)
        self.is_real = not complex_needed

    def matvec(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if v.shape != (self.dim,):
            raise ValueError(f"vector shape {v.shape} does not match dim {self.dim}")
        out_dtype = np.result_type(
            v.dtype, np.float64 if self.is_real else np.complex128
        )
        out = np.zeros(self.dim, dtype=out_dtype)
        for perm, weight in zip(self._perms, self._weights):
            out += weight * v[perm]
        return out


def apply(h: OperatorSum, v):
    """Apply an operator sum to a state without forming a matrix.

    Accepts a :class:`StateVector` or a bare array and returns the same kind.
    """
    amps, wrapped = _as_amplitudes(v)
    out = CompiledOperator(h).matvec(amps)
    if wrapped:
        return StateVector(amplitudes=out, n=h.n)
    return out


def expectation(v, h: OperatorSum, norm_tol: float = 1e-10) -> float:
    """Real expectation value ``<v|H|v>`` of a hermitian operator sum.

    Non-normalized input is normalized first with a warning.  A significant
    imaginary part (which a hermitian operator cannot produce) raises.
    """
    if not h.is_hermitian():
        raise ValueError("expectation requires a hermitian operator sum")
    amps, _ = _as_amplitudes(v)
    nrm = np.linalg.norm(amps)
    if nrm == 0.0:
        raise ValueError("expectation of the zero vector is undefined")
    if abs(nrm - 1.0) > norm_tol:
        warnings.warn(
            f"state norm {nrm:.6g} deviates from 1; normalizing", stacklevel=2
        )
    amps = amps / nrm
    value = np.vdot(amps, CompiledOperator(h).matvec(amps))
    scale = max(1.0, sum(abs(c) for c, _ in h.terms))
    if abs(value.imag) > 1e-9 * scale:
        raise ValueError(f"expectation has imaginary part {value.imag:.3e}")
    return float(value.real)


def dense_matrix(h: OperatorSum, dense_limit: int = DENSE_LIMIT_DEFAULT) -> np.ndarray:
    """Materialize the operator as a dense matrix (small dimensions only)."""
    dim = 1 << h.n
    if dim > dense_limit:
        raise ValueError(
            f"dimension {dim} exceeds dense limit {dense_limit}"
        )
    compiled = CompiledOperator(h)
    dtype = np.float64 if compiled.is_real else np.complex128
    out = np.zeros((dim, dim), dtype=dtype)
    idx = np.arange(dim, dtype=np.intp)
    for perm, weight in zip(compiled._perms, compiled._weights):
        # matvec computes out[k] += weight[k] * v[k ^ x], i.e. the entry at
        # row k, column k ^ x is weight[k].
        out[idx, perm] += weight
    return out


def _cluster(eigenvalues: np.ndarray, tol: float) -> tuple[tuple[float, int], ...]:
    clusters: list[tuple[float, int]] = []
    start = 0
    for i in range(1, len(eigenvalues) + 1):
        if i == len(eigenvalues) or eigenvalues[i] - eigenvalues[i - 1] > tol:
            block = eigenvalues[start:i]
            clusters.append((float(np.mean(block)), len(block)))
            start = i
    return tuple(clusters)


@dataclass(eq=False)
class SpectrumResult:
    """Eigenvalues in ascending order plus degeneracy clusters."""

    eigenvalues: np.ndarray
    method: str
    clusters: tuple[tuple[float, int], ...]
    eigenvectors: np.ndarray | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def ground_degeneracy(self) -> int:
        return self.clusters[0][1]

    def gap(self) -> float:
        """Energy difference between the two lowest clusters."""
        if len(self.clusters) < 2:
            raise ValueError("spectrum has a single cluster; gap undefined")
        return self.clusters[1][0] - self.clusters[0][0]


def full_spectrum(
    h: OperatorSum,
    dense_limit: int = DENSE_LIMIT_DEFAULT,
    cluster_tol: float = CLUSTER_TOL_DEFAULT,
    want_vectors: bool = False,
) -> SpectrumResult:
    """Dense diagonalization below the dimension limit.

    With ``want_vectors`` the eigenvectors of the lowest degeneracy cluster
    are returned as columns.
    """
    matrix = dense_matrix(h, dense_limit=dense_limit)
    if want_vectors:
        eigenvalues, vectors = np.linalg.eigh(matrix)
    else:
        eigenvalues = np.linalg.eigvalsh(matrix)
        vectors = None
    clusters = _cluster(eigenvalues, cluster_tol)
    if vectors is not None:
        vectors = vectors[:, : clusters[0][1]]
    return SpectrumResult(
        eigenvalues=eigenvalues,
        method="dense",
        clusters=clusters,
        eigenvectors=vectors,
        metadata={"dim": 1 << h.n},
    )


def low_lying(
    h: OperatorSum,
    k: int,
    tol: float = 0.0,
    cluster_tol: float = CLUSTER_TOL_DEFAULT,
    residual_tol: float = RESIDUAL_TOL,
    seed: int = 7,
    maxiter: int | None = None,
    ncv: int | None = None,
) -> SpectrumResult:
    """Lowest ``k`` eigenpairs via matrix-free Lanczos iteration.

    Every returned eigenpair is checked against ``residual_tol``; failures and
    non-convergence raise rather than returning silently degraded results.
    Small problems fall back to dense diagonalization.  Highly degenerate
    levels need a Krylov subspace well beyond the default ``2k + 1`` to
    resolve every copy; pass ``ncv`` (for example ``5 * k``) in that case.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    dim = 1 << h.n
    if k >= dim - 1 or dim <= 64:
        dense = full_spectrum(h, dense_limit=max(dim, 64), cluster_tol=cluster_tol, want_vectors=True)
        eigenvalues = dense.eigenvalues[:k]
        clusters = _cluster(eigenvalues, cluster_tol)
        n_vecs = min(clusters[0][1], dense.eigenvectors.shape[1])
        return SpectrumResult(
            eigenvalues=eigenvalues,
            method="dense-fallback",
            clusters=clusters,
            eigenvectors=dense.eigenvectors[:, :n_vecs],
            metadata={"dim": dim, "k": k},
        )

    compiled = CompiledOperator(h)
    dtype = np.float64 if compiled.is_real else np.complex128
    op = spla.LinearOperator((dim, dim), matvec=compiled.matvec, dtype=dtype)
    v0 = np.random.default_rng(seed).standard_normal(dim)
    try:
        eigenvalues, vectors = spla.eigsh(
            op, k=k, which="SA", tol=tol, v0=v0, maxiter=maxiter, ncv=ncv
        )
    except spla.ArpackNoConvergence as exc:
        raise RuntimeError(
            f"Lanczos failed to converge: {len(exc.eigenvalues)} of {k} "
            f"eigenvalues available"
        ) from exc

    order = np.argsort(eigenvalues)
    eigenvalues = eigenvalues[order]
    vectors = vectors[:, order]
    residuals = np.array(
        [
            np.linalg.norm(compiled.matvec(vectors[:, i]) - eigenvalues[i] * vectors[:, i])
            for i in range(k)
        ]
    )
    if residuals.max() > residual_tol:
        raise RuntimeError(
            f"eigenpair residual {residuals.max():.3e} exceeds {residual_tol:.1e}"
        )
    clusters = _cluster(eigenvalues, cluster_tol)
    return SpectrumResult(
        eigenvalues=eigenvalues,
        method="lanczos",
        clusters=clusters,
        eigenvectors=vectors[:, : clusters[0][1]],
        metadata={
            "dim": dim,
            "k": k,
            "max_residual": float(residuals.max()),
        },
    )


def ground_state(h: OperatorSum, dense_limit: int = 2 ** 12, seed: int = 7) -> tuple[float, StateVector]:
    """Ground energy and one ground vector, dense below the limit and Lanczos
    above.  Degenerate ground spaces return an arbitrary member."""
    dim = 1 << h.n
    if dim <= dense_limit:
        result = full_spectrum(h, dense_limit=dense_limit, want_vectors=True)
        vec = result.eigenvectors[:, 0]
    else:
        result = low_lying(h, k=1, seed=seed)
        vec = result.eigenvectors[:, 0]
    return result.ground_energy, StateVector(amplitudes=vec, n=h.n)


def xtype_symmetry_masks(h: OperatorSum) -> list[int]:
    """GF(2) basis of X-mask symmetries: all ``m`` with ``X^m`` commuting with
    every term, i.e. ``popcount(m & z)`` even for every term's z-mask."""
    n = h.n
    z_masks = sorted({p.z for _, p in h.normalized().terms if p.z})
    pivots: list[tuple[int, int]] = []  # (syndrome, vector), syndrome leading-bit sorted
    kernel: list[int] = []
    for j in range(n):
        vec = 1 << j
        syn = 0
        for i, z in enumerate(z_masks):
            syn |= ((z >> j) & 1) << i
        for psyn, pvec in pivots:
            if syn >> (psyn.bit_length() - 1) & 1:
                syn ^= psyn
                vec ^= pvec
        if syn == 0:
            kernel.append(vec)
        else:
            pivots.append((syn, vec))
            pivots.sort(key=lambda t: t[0].bit_length(), reverse=True)
    return kernel


def _rref_masks(masks: list[int]) -> list[tuple[int, int]]:
    """Reduced row echelon form; returns ``(pivot_bit, mask)`` pairs where each
    pivot bit is set in exactly one basis mask."""
    basis: list[tuple[int, int]] = []
    for m in masks:
        for bit, bm in basis:
            if (m >> bit) & 1:
                m ^= bm
        if m == 0:
            continue
        bit = m.bit_length() - 1
        basis = [(b, bm ^ m if (bm >> bit) & 1 else bm) for b, bm in basis]
        basis.append((bit, m))
    return sorted(basis)


def _sector_blocks(
    h: OperatorSum, masks: list[int] | None, characters: list[int] | None
) -> np.ndarray:
    """Character-sector blocks of ``h`` under an abelian X-mask symmetry group.

    Returns an array of shape ``(n_characters, block, block)`` of real
    symmetric matrices, one per requested character (default: all of them).
    Requires real-sign terms (phase 0 after normalization) and every mask to
    commute with every term.
    """
    n = h.n
    terms = h.normalized().terms
    for coeff, p in terms:
        if p.phase % 2 != 0:
            raise ValueError("sector solver supports real-sign terms only")
    if masks is None:
        masks = xtype_symmetry_masks(h)
    basis = _rref_masks(list(masks))
    r = len(basis)
    for _, p in terms:
        for _, m in basis:
            if (m & p.z).bit_count() % 2 != 0:
                raise ValueError(
                    f"mask {m:#x} fails to commute with term {p.to_text()}"
                )
    if characters is None:
        chars = np.arange(1 << r, dtype=np.uint64)
    else:
        chars = np.asarray(characters, dtype=np.uint64)
        if chars.size and int(chars.max()) >= (1 << r):
            raise ValueError(f"character index outside the {1 << r} sectors")

    def reduce_coords(s: int) -> tuple[int, int]:
        kappa = 0
        for i, (bit, m) in enumerate(basis):
            if (s >> bit) & 1:
                s ^= m
                kappa |= 1 << i
        return s, kappa

    pivot_bits = {bit for bit, _ in basis}
    free_bits = [b for b in range(n) if b not in pivot_bits]
    n_free = len(free_bits)
    block = 1 << n_free
    reps = np.zeros(block, dtype=np.int64)
    for i in range(block):
        s = 0
        for j, bit in enumerate(free_bits):
            if (i >> j) & 1:
                s |= 1 << bit
        reps[i] = s
    rep_index = {int(s): i for i, s in enumerate(reps)}

    blocks = np.zeros((len(chars), block, block))
    for coeff, p in terms:
        # Normalization folded phase 2 into the coefficient; phase is 0 here.
        for col, s in enumerate(reps):
            tgt = int(s) ^ p.x
            rep, kappa = reduce_coords(tgt)
            row = rep_index[rep]
            base = coeff * (1.0 - 2.0 * ((int(s) & p.z).bit_count() % 2))
            # chi(m0) = (-1)^{popcount(chi & kappa)} per character chi.
            chi_signs = 1.0 - 2.0 * (
                (np.bitwise_count(chars & np.uint64(kappa)) & 1).astype(np.float64)
            )
            blocks[:, row, col] += base * chi_signs
    return blocks


def sector_eigenvalues(h: OperatorSum, masks: list[int] | None = None) -> np.ndarray:
    """Exact full spectrum using an abelian X-mask symmetry group.

    The group generated by ``masks`` (default: all X-mask symmetries of ``h``)
    splits the computational basis into cosets; each character sector gives a
    small real-symmetric block.  Concatenating the block spectra reproduces
    the complete ``2**n`` eigenvalue multiset without any large dense matrix.
    """
    blocks = _sector_blocks(h, masks, characters=None)
    eigenvalues = np.linalg.eigvalsh(blocks).ravel()
    eigenvalues.sort()
    return eigenvalues


def invariant_sector_eigenvalues(
    h: OperatorSum, masks: list[int] | None = None
) -> np.ndarray:
    """Spectrum of ``h`` restricted to the symmetry-invariant subspace.

    The invariant (trivial-character) sector is spanned by states fixed by
    every ``X^m`` in the symmetry group; for a stabilizer-rooted model this is
    where all hexagon X products and X-type logicals act as +1.
    """
    blocks = _sector_blocks(h, masks, characters=[0])
    return np.sort(np.linalg.eigvalsh(blocks[0]))
