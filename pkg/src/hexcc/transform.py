"""Generator rewrites onto smaller registers and equivalence verification.

Three frames rewrite the model's generator shapes (six-body X and Z hexagon
products, two-body edge XX) onto derived registers:

* ``ising``: hexagon X products become the constant +1, hexagon Z products a
  single Z on a per-plaquette spin, edge XX the XX of the two same-color
  plaquettes it links.  The full model decouples into one transverse-field
  Ising chain per color on the per-color dual lattices.
* ``red``: red-edge XX and off-red hexagon X products become +1; red hexagon
  X products become six-body X on red-link sites, off-red hexagon Z products
  three-body Z.  The image generates a toric code on the red link lattice.
* ``green``: green-edge XX and off-green hexagon X products become +1; green
  hexagon X products become six-body X on green-link sites, red hexagon Z
  products three-body Z, and blue-edge XX a two-body XX of green-link sites.

The maps are defined on generator shapes only; arbitrary Pauli strings are
rejected.  Signs belong in coefficients, so inputs must carry phase 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import COLORS, ColorLattice, TriangularLattice, dual_triangular, link_lattice
from .models import ModelBundle, green_link_pairs, tfim_h
from .pauli import OperatorSum, PauliString, gf2_span_equal, same_terms
from .spectra import (
    DENSE_LIMIT_DEFAULT,
    dense_matrix,
    full_spectrum,
    invariant_sector_eigenvalues,
    low_lying,
    sector_eigenvalues,
    xtype_symmetry_masks,
)


class UnsupportedTermError(ValueError):
    """A Pauli string is not a generator shape the frame can rewrite."""


@dataclass(eq=False)
class FrameSpec:
    """A rewrite frame: target register plus shape-recognition tables."""

    kind: str
    lattice: ColorLattice
    target_n: int
    qubit_of_plaquette: dict[int, int] = field(default_factory=dict)
    site_of_edge: dict[int, int] = field(default_factory=dict)
    cells_x: dict[int, tuple[int, ...]] = field(default_factory=dict)
    cells_z: dict[int, tuple[int, ...]] = field(default_factory=dict)
    pair_of_edge: dict[int, tuple[int, int]] = field(default_factory=dict)
    _bx_by_mask: dict[int, int] = field(default_factory=dict)
    _bz_by_mask: dict[int, int] = field(default_factory=dict)
    _edge_by_mask: dict[int, int] = field(default_factory=dict)

    def recognize(self, p: PauliString) -> tuple[str, int]:
        """Classify a string as a hexagon X/Z product or an edge XX.

        Raises:
            UnsupportedTermError: for anything else, including nonzero phase.
        """
        if p.n != self.lattice.n_qubits:
            raise UnsupportedTermError(
                f"string register {p.n} does not match lattice size "
                f"{self.lattice.n_qubits}"
            )
        if p.phase != 0:
            raise UnsupportedTermError(
                f"rewrites take phase-0 strings; got {p.to_text()}"
            )
        if p.z == 0 and p.x in self._bx_by_mask:
            return "bx", self._bx_by_mask[p.x]
        if p.x == 0 and p.z in self._bz_by_mask:
            return "bz", self._bz_by_mask[p.z]
        if p.z == 0 and p.x in self._edge_by_mask:
            return "edge", self._edge_by_mask[p.x]
        raise UnsupportedTermError(f"not a generator shape: {p.to_text()}")


def _mask(qubits) -> int:
    m = 0
    for q in qubits:
        m |= 1 << q
    return m


def _recognition_tables(lat: ColorLattice, frame: FrameSpec) -> None:
    for p in lat.plaquettes:
        mask = _mask(p.qubits)
        frame._bx_by_mask[mask] = p.id
        frame._bz_by_mask[mask] = p.id
    for e in lat.edges:
        frame._edge_by_mask[_mask(e.qubits)] = e.id


def identity_frame(lat: ColorLattice) -> FrameSpec:
    frame = FrameSpec(kind="identity", lattice=lat, target_n=lat.n_qubits)
    _recognition_tables(lat, frame)
    return frame


def ising_frame(lat: ColorLattice) -> FrameSpec:
    """One target spin per plaquette, indexed in plaquette order."""
    frame = FrameSpec(
        kind="ising",
        lattice=lat,
        target_n=lat.n_plaquettes,
        qubit_of_plaquette={p.id: p.id for p in lat.plaquettes},
    )
    _recognition_tables(lat, frame)
    return frame


def _link_frame(lat: ColorLattice, kind: str, color: str) -> FrameSpec:
    link = link_lattice(lat, color)
    site_of_edge = {edge: i for i, edge in enumerate(link.sites)}
    cells_x = {c.plaquette: c.sites for c in link.cells if len(c.sites) == 6}
    cells_z = {c.plaquette: c.sites for c in link.cells if len(c.sites) == 3}
    frame = FrameSpec(
        kind=kind,
        lattice=lat,
        target_n=link.n_sites,
        site_of_edge=site_of_edge,
        cells_x=cells_x,
        cells_z=cells_z,
    )
    _recognition_tables(lat, frame)
    return frame


def red_frame(lat: ColorLattice) -> FrameSpec:
    """One target spin per red edge."""
    return _link_frame(lat, "red", "r")


def green_frame(lat: ColorLattice) -> FrameSpec:
    """One target spin per green edge; blue edges map to link-site pairs."""
    frame = _link_frame(lat, "green", "g")
    frame.pair_of_edge = {edge: pair for edge, pair in green_link_pairs(lat)}
    return frame


@dataclass(frozen=True)
class RewriteResult:
    """Image of one generator: a constant offset plus target-register terms."""

    constant: float
    image: OperatorSum

    @property
    def is_trivial(self) -> bool:
        return self.image.n_terms == 0


def _result(n: int, constant: float = 0.0, string: PauliString | None = None) -> RewriteResult:
    terms = () if string is None else ((1.0, string),)
    return RewriteResult(constant=constant, image=OperatorSum(n=n, terms=terms))


def rewrite_ising(p: PauliString, frame: FrameSpec) -> RewriteResult:
    """Ising-frame image of one generator (all colors are in the domain)."""
    if frame.kind != "ising":
        raise ValueError(f"expected an ising frame, got {frame.kind!r}")
    shape, which = frame.recognize(p)
    n = frame.target_n
    lat = frame.lattice
    if shape == "bx":
        return _result(n, constant=1.0)
    if shape == "bz":
        return _result(n, string=PauliString(n=n, z=1 << frame.qubit_of_plaquette[which]))
    p1, p2 = lat.edges[which].plaquettes
    mask = (1 << frame.qubit_of_plaquette[p1]) | (1 << frame.qubit_of_plaquette[p2])
    return _result(n, string=PauliString(n=n, x=mask))


def rewrite_red(p: PauliString, frame: FrameSpec) -> RewriteResult:
    """Red-frame image; only the generators present at couplings (1, 0, 0)."""
    if frame.kind != "red":
        raise ValueError(f"expected a red frame, got {frame.kind!r}")
    shape, which = frame.recognize(p)
    n = frame.target_n
    lat = frame.lattice
    if shape == "edge":
        if lat.edges[which].color != "r":
            raise UnsupportedTermError(
                f"{lat.edges[which].color}-edge XX is outside the red frame domain"
            )
        return _result(n, constant=1.0)
    color = lat.plaquettes[which].color
    if shape == "bx":
        if color != "r":
            return _result(n, constant=1.0)
        return _result(n, string=PauliString(n=n, x=_mask(frame.cells_x[which])))
    if color == "r":
        raise UnsupportedTermError("red hexagon Z product is outside the red frame domain")
    return _result(n, string=PauliString(n=n, z=_mask(frame.cells_z[which])))


def rewrite_green(p: PauliString, frame: FrameSpec) -> RewriteResult:
    """Green-frame image; only the generators present at couplings (0, 1, 1)."""
    if frame.kind != "green":
        raise ValueError(f"expected a green frame, got {frame.kind!r}")
    shape, which = frame.recognize(p)
    n = frame.target_n
    lat = frame.lattice
    if shape == "edge":
        color = lat.edges[which].color
        if color == "g":
            return _result(n, constant=1.0)
        if color == "b":
            a, b = frame.pair_of_edge[which]
            return _result(n, string=PauliString(n=n, x=(1 << a) | (1 << b)))
        raise UnsupportedTermError("red-edge XX is outside the green frame domain")
    color = lat.plaquettes[which].color
    if shape == "bx":
        if color != "g":
            return _result(n, constant=1.0)
        return _result(n, string=PauliString(n=n, x=_mask(frame.cells_x[which])))
    if color != "r":
        raise UnsupportedTermError(
            f"{color} hexagon Z product is outside the green frame domain"
        )
    return _result(n, string=PauliString(n=n, z=_mask(frame.cells_z[which])))


_REWRITERS = {
    "ising": rewrite_ising,
    "red": rewrite_red,
    "green": rewrite_green,
}


def rewrite(p: PauliString, frame: FrameSpec) -> RewriteResult:
    if frame.kind == "identity":
        frame.recognize(p)  # domain check only
        return RewriteResult(constant=0.0, image=OperatorSum(n=frame.target_n, terms=((1.0, p),)))
    return _REWRITERS[frame.kind](p, frame)


def rewrite_sum(h: OperatorSum, frame: FrameSpec) -> tuple[float, OperatorSum]:
    """Linear extension of the frame rewrite to an operator sum."""
    constant = 0.0
    terms: list[tuple[float, PauliString]] = []
    for coeff, p in h.terms:
        result = rewrite(p, frame)
        constant += coeff * result.constant
        terms.extend((coeff * c, s) for c, s in result.image.terms)
    return constant, OperatorSum(n=frame.target_n, terms=tuple(terms))


@dataclass(eq=False)
class IsingDecomposition:
    """Constant offset plus one per-color transverse-field Ising model."""

    constant: float
    duals: dict[str, TriangularLattice]
    tfims: dict[str, OperatorSum]

    def combined(self) -> tuple[float, OperatorSum]:
        """All three color registers side by side (r lowest bits, then g, b)."""
        total_n = sum(h.n for h in self.tfims.values())
        terms: list[tuple[float, PauliString]] = []
        offset = 0
        for color in COLORS:
            h = self.tfims[color]
            for coeff, p in h.terms:
                terms.append(
                    (
                        coeff,
                        PauliString(
                            n=total_n, x=p.x << offset, z=p.z << offset, phase=p.phase
                        ),
                    )
                )
            offset += h.n
        return self.constant, OperatorSum(n=total_n, terms=tuple(terms))


def transform_h_ising(m: ModelBundle) -> IsingDecomposition:
    """Rewrite a perturbed model into its decoupled per-color Ising form.

    Hexagon X products contribute only the constant (one -1 per plaquette);
    every remaining term lands on exactly one color register, indexed by the
    per-color dual lattice sites.
    """
    lat = m.lattice
    if not isinstance(lat, ColorLattice):
        raise TypeError("transform_h_ising needs a model on a ColorLattice")
    frame = ising_frame(lat)
    duals = {c: dual_triangular(lat, c) for c in COLORS}
    site_of = {c: duals[c].site_index() for c in COLORS}
    per_color: dict[str, list[tuple[float, PauliString]]] = {c: [] for c in COLORS}
    sizes = {c: duals[c].n_sites for c in COLORS}
    constant = 0.0

    for coeff, p in m.hamiltonian.terms:
        shape, which = frame.recognize(p)
        if shape == "bx":
            constant += coeff
            continue
        if shape == "bz":
            color = lat.plaquettes[which].color
            site = site_of[color][which]
            per_color[color].append(
                (coeff, PauliString(n=sizes[color], z=1 << site))
            )
            continue
        edge = lat.edges[which]
        color = edge.color
        a = site_of[color][edge.plaquettes[0]]
        b = site_of[color][edge.plaquettes[1]]
        per_color[color].append(
            (coeff, PauliString(n=sizes[color], x=(1 << a) | (1 << b)))
        )

    tfims = {
        c: OperatorSum(n=sizes[c], terms=tuple(per_color[c])) for c in COLORS
    }
    return IsingDecomposition(constant=constant, duals=duals, tfims=tfims)


def ising_decoupling_matches(m: ModelBundle) -> bool:
    """Structural check: the transformed model equals the constant plus the
    three per-color Ising models term for term, with exact coefficients."""
    if m.couplings is None:
        raise ValueError("model bundle carries no couplings")
    deco = transform_h_ising(m)
    if deco.constant != -float(m.lattice.n_plaquettes):
        return False
    by_color = m.couplings.as_dict()
    for color in COLORS:
        reference = tfim_h(deco.duals[color], by_color[color]).hamiltonian
        if not same_terms(deco.tfims[color], reference):
            return False
    return True


def verify_group_image(source_gens, frame: FrameSpec, target_gens) -> bool:
    """Whether the nontrivial rewrite images of ``source_gens`` span the same
    GF(2) symplectic subspace as ``target_gens`` on the target register."""
    images: list[PauliString] = []
    for g in source_gens:
        result = rewrite(g, frame)
        for _, s in result.image.terms:
            images.append(s)
    targets = list(target_gens)
    if not images and not targets:
        return True
    return gf2_span_equal(images, targets)


@dataclass(eq=False)
class EquivalenceReport:
    """Outcome of comparing two spectra up to a constant shift.

    ``partial`` marks comparisons that could only inspect the low end of the
    spectrum; full comparisons also report the multiplicity ratio between the
    two eigenvalue multisets.
    """

    method: str
    partial: bool
    distinct_match: bool
    max_deviation: float
    multiplicity_ratio: int | None
    ratio_uniform: bool
    ratio_power_of_two: bool
    n_distinct_a: int
    n_distinct_b: int
    shift: float
    tol: float
    sample_a: tuple[float, ...] = ()
    sample_b: tuple[float, ...] = ()

    @property
    def passed(self) -> bool:
        if not self.distinct_match:
            return False
        if self.partial:
            return True
        return self.ratio_uniform and self.ratio_power_of_two

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "partial": self.partial,
            "passed": self.passed,
            "distinct_match": self.distinct_match,
            "max_deviation": self.max_deviation,
            "multiplicity_ratio": self.multiplicity_ratio,
            "ratio_uniform": self.ratio_uniform,
            "ratio_power_of_two": self.ratio_power_of_two,
            "n_distinct": [self.n_distinct_a, self.n_distinct_b],
            "shift": self.shift,
            "tol": self.tol,
            "lowest": [list(self.sample_a), list(self.sample_b)],
        }


def _cluster_values(values: np.ndarray, tol: float) -> tuple[list[float], list[int]]:
    centers: list[float] = []
    counts: list[int] = []
    start = 0
    values = np.sort(np.asarray(values))
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > tol:
            centers.append(float(np.mean(values[start:i])))
            counts.append(i - start)
            start = i
    return centers, counts


def compare_eigenvalues(
    evals_a,
    evals_b,
    shift: float = 0.0,
    tol: float = 1e-9,
    method: str = "dense",
    partial: bool = False,
) -> EquivalenceReport:
    """Compare two eigenvalue multisets: ``evals_a`` against ``shift`` plus
    ``evals_b``.  Full comparisons check distinct values and a uniform
    power-of-two multiplicity ratio; partial ones only elementwise agreement
    of the supplied low ends."""
    a = np.sort(np.asarray(evals_a, dtype=float))
    b = np.sort(np.asarray(evals_b, dtype=float)) + shift

    if partial:
        k = min(len(a), len(b))
        deviation = float(np.max(np.abs(a[:k] - b[:k]))) if k else 0.0
        return EquivalenceReport(
            method=method,
            partial=True,
            distinct_match=deviation <= tol,
            max_deviation=deviation,
            multiplicity_ratio=None,
            ratio_uniform=False,
            ratio_power_of_two=False,
            n_distinct_a=k,
            n_distinct_b=k,
            shift=shift,
            tol=tol,
            sample_a=tuple(a[: min(8, k)]),
            sample_b=tuple(b[: min(8, k)]),
        )

    centers_a, counts_a = _cluster_values(a, tol)
    centers_b, counts_b = _cluster_values(b, tol)
    distinct_match = len(centers_a) == len(centers_b)
    deviation = 0.0
    if distinct_match:
        deviation = float(
            np.max(np.abs(np.asarray(centers_a) - np.asarray(centers_b)))
        )
        distinct_match = deviation <= tol
    ratio = None
    uniform = False
    power = False
    if distinct_match:
        ratios = {ca // cb for ca, cb in zip(counts_a, counts_b)}
        exact = all(ca % cb == 0 for ca, cb in zip(counts_a, counts_b))
        if exact and len(ratios) == 1:
            ratio = ratios.pop()
            uniform = True
            power = ratio > 0 and (ratio & (ratio - 1)) == 0
    return EquivalenceReport(
        method=method,
        partial=False,
        distinct_match=distinct_match,
        max_deviation=deviation,
        multiplicity_ratio=ratio,
        ratio_uniform=uniform,
        ratio_power_of_two=power,
        n_distinct_a=len(centers_a),
        n_distinct_b=len(centers_b),
        shift=shift,
        tol=tol,
        sample_a=tuple(centers_a[:8]),
        sample_b=tuple(centers_b[:8]),
    )


def verify_spectral_equivalence(
    h_a: OperatorSum,
    h_b: OperatorSum,
    shift: float = 0.0,
    tol: float = 1e-9,
    dense_limit: int = DENSE_LIMIT_DEFAULT,
    k: int = 30,
    ncv: int | None = None,
) -> EquivalenceReport:
    """Spectral comparison of ``h_a`` against ``shift + h_b``.

    Strategy, in order of preference:

    1. both dimensions within ``dense_limit``: dense full spectra;
    2. the larger side admits an X-mask symmetry reduction whose blocks fit
       within ``dense_limit``: exact full spectra via sector blocks;
    3. otherwise: matrix-free Lanczos on the large side, comparing only the
       lowest ``k`` values (reported as partial).  Degenerate low spectra
       need ``ncv`` well above the Lanczos default to resolve every copy.
    """
    dim_a, dim_b = 1 << h_a.n, 1 << h_b.n
    if dim_b > dense_limit:
        raise ValueError(
            f"reference dimension {dim_b} exceeds dense limit {dense_limit}"
        )
    evals_b = full_spectrum(h_b, dense_limit=dense_limit).eigenvalues

    if dim_a <= dense_limit:
        evals_a = full_spectrum(h_a, dense_limit=dense_limit).eigenvalues
        return compare_eigenvalues(evals_a, evals_b, shift, tol, method="dense")

    masks = xtype_symmetry_masks(h_a)
    block_dim = 1 << (h_a.n - len(masks))
    if block_dim <= dense_limit:
        evals_a = sector_eigenvalues(h_a, masks)
        return compare_eigenvalues(evals_a, evals_b, shift, tol, method="sector")

    low = low_lying(h_a, k=k, ncv=ncv).eigenvalues
    expansion = np.repeat(np.sort(evals_b), dim_a // dim_b)[:k]
    return compare_eigenvalues(
        low, expansion, shift, tol, method="lanczos-partial", partial=True
    )


def generic_symmetry_masks(lat: ColorLattice) -> list[int]:
    """X-mask symmetries shared by every coupling point: the kernel of the
    hexagon Z products, spanned by the hexagon X products and the X-type
    logicals.  Computed from a model that keeps every term type, so corner
    models do not enlarge the group."""
    from .models import perturbed_h

    return xtype_symmetry_masks(perturbed_h(lat, (0.5, 0.5, 0.5)).hamiltonian)


def parity_matched_eigenvalues(
    deco: IsingDecomposition, dense_limit: int = DENSE_LIMIT_DEFAULT
) -> np.ndarray:
    """Spectrum of the combined per-color Ising model restricted to states
    whose three register Z-parities agree.

    The per-color hexagon-Z products all rewrite from the same source
    operator (Z on every qubit), so their images must act identically; that
    pins the relative Z-parities of the three color registers.
    """
    constant, combined = deco.combined()
    matrix = dense_matrix(combined, dense_limit=dense_limit)
    sizes = [deco.tfims[c].n for c in COLORS]
    offsets = np.cumsum([0] + sizes[:-1])
    dim = matrix.shape[0]
    idx = np.arange(dim, dtype=np.uint64)
    parities = [
        (np.bitwise_count((idx >> np.uint64(off)) & np.uint64((1 << size) - 1)) & 1)
        for off, size in zip(offsets, sizes)
    ]
    keep = (parities[0] == parities[1]) & (parities[0] == parities[2])
    sub = matrix[np.ix_(keep, keep)]
    drop = ~keep
    if np.any(np.abs(matrix[np.ix_(keep, drop)]) > 0):
        raise AssertionError("parity restriction is not an invariant subspace")
    return np.sort(np.linalg.eigvalsh(sub))


def ising_sector_equivalence(
    m: ModelBundle,
    tol: float = 1e-9,
    dense_limit: int = DENSE_LIMIT_DEFAULT,
) -> EquivalenceReport:
    """Exact spectral check of the Ising rewrite on its invariant sector.

    The rewrite preserves operator relations only where every hexagon X
    product and X-type logical acts as +1: the per-color images of the
    all-qubit Z product must agree, and closed loops of rewritten edge terms
    must multiply to +1 exactly as the enclosed hexagon X products do.  The
    comparison therefore pits the invariant symmetry sector of the source
    model against the parity-matched block of the decoupled model, shifted by
    the rewrite constant.  Other symmetry sectors realize sign-twisted Ising
    variants and are deliberately out of scope here.
    """
    lat = m.lattice
    if not isinstance(lat, ColorLattice):
        raise TypeError("ising_sector_equivalence needs a model on a ColorLattice")
    masks = generic_symmetry_masks(lat)
    block_dim = 1 << (m.n - len(masks))
    if block_dim > dense_limit:
        raise ValueError(
            f"invariant sector dimension {block_dim} exceeds dense limit {dense_limit}"
        )
    deco = transform_h_ising(m)
    evals_b = parity_matched_eigenvalues(deco, dense_limit=dense_limit)
    evals_a = invariant_sector_eigenvalues(m.hamiltonian, masks)
    return compare_eigenvalues(
        evals_a, evals_b, shift=deco.constant, tol=tol, method="invariant-sector"
    )
