"""Hamiltonian builders on color lattices and their triangular derivatives.

All physical minus signs live in the coefficients; the Pauli strings
themselves are stored with a bare ``+`` sign so generator groups double as
stabilizer generators.  Terms whose coefficient is exactly zero at corner
couplings are omitted rather than stored with weight 0, so corner term lists
match the unperturbed models literally.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import COLORS, ColorLattice, TriangularLattice, link_lattice
from .pauli import OperatorSum, PauliString


@dataclass(frozen=True)
class Couplings:
    """Per-color Ising couplings, each in the closed interval [0, 1]."""

    j_r: float
    j_g: float
    j_b: float

    def __post_init__(self) -> None:
        for name, value in self.as_dict().items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"coupling {name} outside [0, 1]: {value}")

    @classmethod
    def of(cls, values) -> Couplings:
        if isinstance(values, Couplings):
            return values
        j_r, j_g, j_b = values
        return cls(float(j_r), float(j_g), float(j_b))

    def as_dict(self) -> dict[str, float]:
        return {"r": self.j_r, "g": self.j_g, "b": self.j_b}

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.j_r, self.j_g, self.j_b)

    @property
    def is_corner(self) -> bool:
        return all(j in (0.0, 1.0) for j in self.as_tuple())


@dataclass(frozen=True)
class ModelBundle:
    """A Hamiltonian together with its named generator groups."""

    lattice: object
    hamiltonian: OperatorSum
    groups: dict[str, tuple[PauliString, ...]]
    couplings: Couplings | None = None

    @property
    def n(self) -> int:
        return self.hamiltonian.n

    def group(self, name: str) -> tuple[PauliString, ...]:
        return self.groups[name]


def _mask(qubits) -> int:
    mask = 0
    for q in qubits:
        mask |= 1 << q
    return mask


def x_stabilizer(lat: ColorLattice, plaquette: int) -> PauliString:
    """Six-body X product on a hexagon."""
    return PauliString(n=lat.n_qubits, x=_mask(lat.plaquettes[plaquette].qubits))


def z_stabilizer(lat: ColorLattice, plaquette: int) -> PauliString:
    """Six-body Z product on a hexagon."""
    return PauliString(n=lat.n_qubits, z=_mask(lat.plaquettes[plaquette].qubits))


def edge_ising(lat: ColorLattice, edge: int) -> PauliString:
    """Two-body XX on an edge."""
    return PauliString(n=lat.n_qubits, x=_mask(lat.edges[edge].qubits))


def color_code_h(lat: ColorLattice) -> ModelBundle:
    """Unperturbed stabilizer Hamiltonian: minus every hexagon's X and Z
    six-body product."""
    xs = tuple(x_stabilizer(lat, p.id) for p in lat.plaquettes)
    zs = tuple(z_stabilizer(lat, p.id) for p in lat.plaquettes)
    terms = [(-1.0, s) for s in xs] + [(-1.0, s) for s in zs]
    return ModelBundle(
        lattice=lat,
        hamiltonian=OperatorSum.from_terms(lat.n_qubits, terms),
        groups={"x_stabilizers": xs, "z_stabilizers": zs},
    )


def perturbed_h(lat: ColorLattice, couplings) -> ModelBundle:
    """Color code with per-color Ising perturbations.

    ``H = - sum_p Bx_p - sum_c (1 - j_c) sum_{p in c} Bz_p
          - sum_c j_c sum_{edges of c} X X``

    Z terms vanish exactly at ``j_c == 1`` and edge terms at ``j_c == 0``;
    both are dropped from the term list at those corners.
    """
    j = Couplings.of(couplings)
    n = lat.n_qubits

    xs = tuple(x_stabilizer(lat, p.id) for p in lat.plaquettes)
    groups: dict[str, tuple[PauliString, ...]] = {"x_stabilizers": xs}
    terms: list[tuple[float, PauliString]] = [(-1.0, s) for s in xs]

    by_color = j.as_dict()
    for color in COLORS:
        weight = 1.0 - by_color[color]
        zs = tuple(z_stabilizer(lat, p.id) for p in lat.plaquettes_of_color(color))
        groups[f"z_stabilizers_{color}"] = zs if weight != 0.0 else ()
        if weight != 0.0:
            terms.extend((-weight, s) for s in zs)
    for color in COLORS:
        weight = by_color[color]
        bonds = tuple(edge_ising(lat, e.id) for e in lat.edges_of_color(color))
        groups[f"ising_{color}"] = bonds if weight != 0.0 else ()
        if weight != 0.0:
            terms.extend((-weight, s) for s in bonds)

    return ModelBundle(
        lattice=lat,
        hamiltonian=OperatorSum.from_terms(n, terms),
        groups=groups,
        couplings=j,
    )


def tfim_h(tri: TriangularLattice, j: float) -> ModelBundle:
    """Transverse-field Ising model on a triangular (multi)graph.

    ``H = -j sum_bonds X X - (1 - j) sum_sites Z``; every bond is kept as its
    own term, so multigraph bonds appear with their multiplicity.
    """
    if not 0.0 <= j <= 1.0:
        raise ValueError(f"coupling outside [0, 1]: {j}")
    n = tri.n_sites
    bonds = tuple(
        PauliString(n=n, x=(1 << a) | (1 << b)) for a, b, _ in tri.bonds
    )
    fields = tuple(PauliString(n=n, z=1 << s) for s in range(n))

    terms: list[tuple[float, PauliString]] = []
    if j != 0.0:
        terms.extend((-j, s) for s in bonds)
    if j != 1.0:
        terms.extend((-(1.0 - j), s) for s in fields)

    return ModelBundle(
        lattice=tri,
        hamiltonian=OperatorSum.from_terms(n, terms),
        groups={
            "ising_bonds": bonds if j != 0.0 else (),
            "fields": fields if j != 1.0 else (),
        },
    )


def toric_code_h(tri: TriangularLattice) -> ModelBundle:
    """Toric code on a link lattice: six-body X per six-site cell, three-body
    Z per three-site cell, all with coefficient -1."""
    if tri.kind != "link":
        raise ValueError("toric_code_h needs a link lattice")
    n = tri.n_sites
    vertex = tuple(
        PauliString(n=n, x=_mask(c.sites)) for c in tri.cells if len(c.sites) == 6
    )
    plaquette = tuple(
        PauliString(n=n, z=_mask(c.sites)) for c in tri.cells if len(c.sites) == 3
    )
    terms = [(-1.0, s) for s in vertex] + [(-1.0, s) for s in plaquette]
    return ModelBundle(
        lattice=tri,
        hamiltonian=OperatorSum.from_terms(n, terms),
        groups={"vertex_x": vertex, "plaquette_z": plaquette},
    )


def green_link_pairs(lat: ColorLattice) -> tuple[tuple[int, tuple[int, int]], ...]:
    """For every blue edge, the pair of green-link sites at its endpoints.

    Each qubit has exactly one green edge; a blue edge's two endpoint qubits
    select two green edges, both border edges of the one red hexagon the blue
    edge touches.  Returned as ``(blue_edge_id, (site_a, site_b))`` with link
    site indices into ``link_lattice(lat, 'g')``.
    """
    link = link_lattice(lat, "g")
    index = link.site_index()
    green_pos = COLORS.index("g")
    pairs = []
    for e in lat.edges_of_color("b"):
        qa, qb = e.qubits
        sa = index[lat.qubits[qa].edges[green_pos]]
        sb = index[lat.qubits[qb].edges[green_pos]]
        pairs.append((e.id, (min(sa, sb), max(sa, sb))))
    return tuple(pairs)


def toric_code_with_holes_h(lat: ColorLattice) -> ModelBundle:
    """Toric code on the green link lattice with blue cells dropped.

    Terms: six-body X per green hexagon, three-body Z per red hexagon (blue
    hexagons carry no Z cell, leaving checkerboard holes), and a two-body XX
    per blue edge joining the two green-link sites of the red cell it borders.
    """
    link = link_lattice(lat, "g")
    n = link.n_sites
    vertex = tuple(
        PauliString(n=n, x=_mask(c.sites)) for c in link.cells if len(c.sites) == 6
    )
    plaquette = tuple(
        PauliString(n=n, z=_mask(c.sites))
        for c in link.cells
        if len(c.sites) == 3 and c.color == "r"
    )
    pairs = tuple(
        PauliString(n=n, x=(1 << a) | (1 << b))
        for _, (a, b) in green_link_pairs(lat)
    )
    terms = (
        [(-1.0, s) for s in vertex]
        + [(-1.0, s) for s in plaquette]
        + [(-1.0, s) for s in pairs]
    )
    return ModelBundle(
        lattice=link,
        hamiltonian=OperatorSum.from_terms(n, terms),
        groups={"vertex_x": vertex, "plaquette_z": plaquette, "ising_pairs": pairs},
    )
