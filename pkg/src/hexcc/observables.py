"""String order parameters, corner ground states, and phase classification.

A color-``c`` string joins two color-``c`` plaquettes through a shortest path
of color-``c`` edges in the per-color dual graph and applies X on every qubit
the path edges touch.  Distinct color-``c`` edges never share a qubit, so the
operator weight is twice the path length.  The string anticommutes with the
hexagon Z products of exactly its two endpoint plaquettes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import COLORS, ColorLattice, TriangularLattice, dual_triangular, link_lattice
from .models import ModelBundle, perturbed_h, tfim_h
from .pauli import OperatorSum, PauliString
from .spectra import StateVector, apply, expectation, full_spectrum, low_lying


@dataclass(frozen=True)
class ColorString:
    """Open string operator between two same-color plaquettes."""

    color: str
    endpoints: tuple[int, int]
    edge_path: tuple[int, ...]
    operator: PauliString


def build_string(lat: ColorLattice, color: str, p_from: int, p_to: int) -> ColorString:
    """Shortest color-``color`` string between two color-``color`` plaquettes.

    Breadth-first search on the per-color dual graph with neighbors explored
    in ascending (site, edge id) order, which makes the chosen path
    deterministic; ties break toward smaller plaquette ids.

    Raises:
        ValueError: if the endpoints coincide or either plaquette does not
            carry the requested color.
    """
    if p_from == p_to:
        raise ValueError("string endpoints must be distinct plaquettes")
    for p in (p_from, p_to):
        if lat.plaquettes[p].color != color:
            raise ValueError(
                f"plaquette {p} has color {lat.plaquettes[p].color}, not {color}"
            )

    dual = dual_triangular(lat, color)
    index = dual.site_index()
    adjacency: dict[int, list[tuple[int, int]]] = {i: [] for i in range(dual.n_sites)}
    for a, b, edge in dual.bonds:
        adjacency[a].append((b, edge))
        adjacency[b].append((a, edge))
    for neighbors in adjacency.values():
        neighbors.sort()

    start, goal = index[p_from], index[p_to]
    parent: dict[int, tuple[int, int]] = {}
    frontier = [start]
    seen = {start}
    while frontier and goal not in seen:
        nxt: list[int] = []
        for site in frontier:
            for neighbor, edge in adjacency[site]:
                if neighbor not in seen:
                    seen.add(neighbor)
                    parent[neighbor] = (site, edge)
                    nxt.append(neighbor)
        frontier = nxt
    if goal not in seen:
        raise ValueError("dual graph is disconnected; no string exists")

    path: list[int] = []
    site = goal
    while site != start:
        site, edge = parent[site]
        path.append(edge)
    path.reverse()

    mask = 0
    for edge in path:
        for q in lat.edges[edge].qubits:
            mask |= 1 << q
    return ColorString(
        color=color,
        endpoints=(p_from, p_to),
        edge_path=tuple(path),
        operator=PauliString(n=lat.n_qubits, x=mask),
    )


def string_order(v, string: ColorString | PauliString) -> float:
    """Ground-state expectation of a string operator."""
    op = string.operator if isinstance(string, ColorString) else string
    return expectation(v, OperatorSum(n=op.n, terms=((1.0, op),)))


def corner_ground_state(model: ModelBundle) -> StateVector:
    """Exact ground state of a commuting corner model by stabilizer projection.

    Starting from the all-zero state (stabilized by every Z-type term), each
    X-containing term ``g`` is projected with ``(1 + g) / 2``.  The corner
    Hamiltonians are commuting with all-minus coefficients, so the result is
    a frustration-free ground state; degenerate partners differ only in
    logical directions that the corner observables cannot see.
    """
    if model.couplings is None or not model.couplings.is_corner:
        raise ValueError("corner ground states require corner couplings")
    h = model.hamiltonian
    for coeff, p in h.terms:
        if coeff != -1.0:
            raise ValueError("corner model terms must carry coefficient -1")
    strings = [p for _, p in h.terms]
    for i, g in enumerate(strings):
        for other in strings[i + 1:]:
            if not g.commutes_with(other):
                raise ValueError("corner model terms must commute")

    amps = np.zeros(1 << h.n)
    amps[0] = 1.0
    v = StateVector(amplitudes=amps, n=h.n)
    for g in strings:
        if g.x == 0:
            continue  # Z-type terms already stabilize |0...0>.
        single = OperatorSum(n=h.n, terms=((1.0, g),))
        projected = 0.5 * (v.amplitudes + apply(single, v).amplitudes)
        v = StateVector(amplitudes=projected, n=h.n)
    norm = v.norm()
    if norm < 1e-12:
        raise ValueError("projection annihilated the seed state")
    return v.normalized()


def corner_string_values(
    lat: ColorLattice, couplings, model: ModelBundle | None = None
) -> tuple[float, float, float]:
    """String order parameters (s_r, s_g, s_b) in an exact corner ground state.

    Uses the canonical string per color: the one joining the two smallest
    color plaquettes.
    """
    if model is None:
        model = perturbed_h(lat, couplings)
    v = corner_ground_state(model)
    values = []
    for color in COLORS:
        plaqs = [p.id for p in lat.plaquettes_of_color(color)]
        string = build_string(lat, color, plaqs[0], plaqs[1])
        values.append(string_order(v, string))
    return tuple(values)


def max_separated_pair(tri: TriangularLattice) -> tuple[int, int]:
    """Deterministic maximally separated site pair: largest hop distance,
    ties toward the lexicographically smallest pair."""
    dist = tri.distances()
    best = (0, 1)
    best_d = -1
    for i in range(tri.n_sites):
        for j in range(i + 1, tri.n_sites):
            if dist[i][j] > best_d:
                best_d = dist[i][j]
                best = (i, j)
    return best


def solve_tfim(tri: TriangularLattice, j: float, dense_limit: int = 2 ** 10):
    """Ground data of the per-color Ising model: (energy, gap, ground vector).

    Dense below the dimension limit, matrix-free Lanczos above; the gap is
    ``None`` when the computed window holds a single degeneracy cluster.
    """
    h = tfim_h(tri, j).hamiltonian
    dim = 1 << h.n
    if dim <= dense_limit:
        result = full_spectrum(h, dense_limit=dense_limit, want_vectors=True)
    else:
        result = low_lying(h, k=4)
    vec = StateVector(amplitudes=result.eigenvectors[:, 0], n=h.n)
    try:
        gap = result.gap()
    except ValueError:
        gap = None
    return result.ground_energy, gap, vec


def ising_magnetization_sq(
    tri: TriangularLattice, j: float, dense_limit: int = 2 ** 10
) -> float:
    """Surrogate order parameter: ground-state ``<X_i X_j>`` for the
    maximally separated dual-site pair.

    This flip-symmetric correlator is well defined even at ``j == 1`` where
    the ferromagnetic ground space is two-fold degenerate: XX evaluates to +1
    on the whole space.
    """
    _, _, vec = solve_tfim(tri, j, dense_limit=dense_limit)
    a, b = max_separated_pair(tri)
    op = PauliString(n=tri.n_sites, x=(1 << a) | (1 << b))
    return string_order(vec, op)


_TC_LABEL = {
    "r": "Toric Code (red)",
    "g": "Toric Code (green)",
    "b": "Toric Code (blue)",
}


def classify_phase(s_r: float, s_g: float, s_b: float, threshold: float = 0.5) -> str:
    """Map string order parameters to a phase label by thresholding each value
    to a bit.  All eight corner patterns have a named phase; away from the
    corners the classification is advisory (corner values are exactly 0 or 1,
    mid-sweep values are not)."""
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    bits = {
        c: v >= threshold for c, v in zip(COLORS, (s_r, s_g, s_b))
    }
    on = [c for c in COLORS if bits[c]]
    if len(on) == 3:
        return "Trivial"
    if len(on) == 0:
        return "Topological Color Code"
    if len(on) == 1:
        return _TC_LABEL[on[0]]
    return f"Partially Topological ({''.join(on)})"


@dataclass(frozen=True)
class PhasePoint:
    """One evaluated coupling point for sweeps and reports."""

    couplings: tuple[float, float, float]
    s_r: float
    s_g: float
    s_b: float
    label: str
    energy: float | None = None
    gap: float | None = None

    def to_row(self) -> dict:
        j_r, j_g, j_b = self.couplings
        return {
            "j_r": j_r,
            "j_g": j_g,
            "j_b": j_b,
            "s_r": self.s_r,
            "s_g": self.s_g,
            "s_b": self.s_b,
            "energy": self.energy,
            "gap": self.gap,
            "label": self.label,
        }


def phase_point(
    lat: ColorLattice,
    couplings,
    dense_limit: int = 2 ** 10,
    solver_cache: dict | None = None,
) -> PhasePoint:
    """Evaluate one coupling point through the decoupled per-color models.

    The energy is the transform constant (minus the plaquette count) plus the
    three per-color ground energies; the gap is the smallest per-color gap.
    """
    from .models import Couplings

    j = Couplings.of(couplings)
    by_color = j.as_dict()
    values = {}
    energy = -float(lat.n_plaquettes)
    gaps = []
    for color in COLORS:
        key = (color, by_color[color])
        if solver_cache is not None and key in solver_cache:
            e0, gap, vec, mag = solver_cache[key]
        else:
            tri = dual_triangular(lat, color)
            e0, gap, vec = solve_tfim(tri, by_color[color], dense_limit=dense_limit)
            a, b = max_separated_pair(tri)
            op = PauliString(n=tri.n_sites, x=(1 << a) | (1 << b))
            mag = string_order(vec, op)
            if solver_cache is not None:
                solver_cache[key] = (e0, gap, vec, mag)
        values[color] = mag
        energy += e0
        if gap is not None:
            gaps.append(gap)
    label = classify_phase(values["r"], values["g"], values["b"])
    return PhasePoint(
        couplings=j.as_tuple(),
        s_r=values["r"],
        s_g=values["g"],
        s_b=values["b"],
        label=label,
        energy=energy,
        gap=min(gaps) if gaps else None,
    )


def holes_witness(v: StateVector, lat: ColorLattice) -> dict[str, dict[int, float]]:
    """Three-body Z cell expectations on the green link register.

    Returns per-plaquette values for the red cells (stabilized, expect +1 in
    the holes-model ground state) and the blue cells (dropped from the model;
    they anticommute with retained pair terms, forcing expectation 0).
    """
    link = link_lattice(lat, "g")
    if v.n != link.n_sites:
        raise ValueError(
            f"state has {v.n} qubits but the green link register needs {link.n_sites}"
        )
    out: dict[str, dict[int, float]] = {"r": {}, "b": {}}
    for cell in link.cells:
        if len(cell.sites) != 3:
            continue
        mask = 0
        for s in cell.sites:
            mask |= 1 << s
        op = OperatorSum(
            n=link.n_sites, terms=((1.0, PauliString(n=link.n_sites, z=mask)),)
        )
        out[cell.color][cell.plaquette] = expectation(v, op)
    return out


def crossing_couplings(
    tri_small: TriangularLattice,
    tri_large: TriangularLattice,
    lo: float = 0.02,
    hi: float = 0.98,
    coarse: int = 21,
    refine_iters: int = 26,
    dense_limit: int = 2 ** 10,
) -> float:
    """Coupling where the surrogate correlators of two dual sizes cross.

    Scans a coarse grid for a sign change of the difference (small minus
    large), then bisects.  Raises when no crossing exists in the window.
    """

    def difference(j: float) -> float:
        return ising_magnetization_sq(tri_small, j, dense_limit) - ising_magnetization_sq(
            tri_large, j, dense_limit
        )

    grid = np.linspace(lo, hi, coarse)
    values = [difference(j) for j in grid]
    bracket = None
    for a, b, fa, fb in zip(grid, grid[1:], values, values[1:]):
        if fa == 0.0:
            return float(a)
        if fa * fb < 0:
            bracket = (a, b, fa, fb)
            break
    if bracket is None:
        raise ValueError("no crossing found in the scanned window")
    a, b, fa, fb = bracket
    for _ in range(refine_iters):
        mid = 0.5 * (a + b)
        fm = difference(mid)
        if fm == 0.0:
            return float(mid)
        if fa * fm < 0:
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    return float(0.5 * (a + b))
