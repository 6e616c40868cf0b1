"""Hexagonal three-colorable torus lattices and their triangular derivatives.

Geometry conventions
--------------------
Cells live on an ``l1 x l2`` torus with coordinates ``(a, b)``; both dimensions
must be multiples of 3 (and at least 3) so that the plaquette three-coloring
closes around both cycles.  Each cell carries one hexagonal plaquette and two
qubits, one per sublattice (``0`` for A, ``1`` for B).

Plaquette ``(a, b)`` is colored ``(a + 2*b) % 3``, mapped to ``'r', 'g', 'b'``.
Neighbouring hexagons always differ in color, so this is a proper face
three-coloring.

Qubit ``A(a, b)`` sits where hexagons ``(a, b)``, ``(a+1, b)``, ``(a, b+1)``
meet; ``B(a, b)`` where ``(a+1, b)``, ``(a, b+1)``, ``(a+1, b+1)`` meet.  Every
qubit therefore touches exactly one hexagon of each color.

Each cell owns three edges, indexed by direction:

* direction 0: ``A(a, b) -- B(a, b-1)``, bordering faces ``(a, b), (a+1, b)``
* direction 1: ``A(a, b) -- B(a-1, b)``, bordering faces ``(a, b), (a, b+1)``
* direction 2: ``A(a, b) -- B(a, b)``,   bordering faces ``(a+1, b), (a, b+1)``

An edge is colored with the one color missing from its two bordering faces.
With that convention the edge links the two same-color plaquettes that contain
exactly one of its endpoints each; those two plaquettes share the edge color.
Same-color plaquettes form a coordination-6 triangular lattice per color.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

COLORS = ("r", "g", "b")


@dataclass(frozen=True)
class TorusSpec:
    """Torus dimensions in cells; both must be positive multiples of 3."""

    l1: int
    l2: int

    def __post_init__(self) -> None:
        for name, value in (("l1", self.l1), ("l2", self.l2)):
            if value < 3:
                raise ValueError(f"{name} must be at least 3, got {value}")
            if value % 3 != 0:
                raise ValueError(f"{name} not a multiple of 3: {value}")

    @property
    def n_cells(self) -> int:
        return self.l1 * self.l2

    @property
    def n_qubits(self) -> int:
        return 2 * self.n_cells

    @property
    def n_plaquettes(self) -> int:
        return self.n_cells

    @property
    def n_edges(self) -> int:
        return 3 * self.n_cells


@dataclass(frozen=True)
class Qubit:
    """Vertex of the hexagonal lattice.

    ``plaquettes`` and ``edges`` are index triples ordered by color r, g, b;
    every qubit touches one plaquette and one edge of each color.
    """

    id: int
    cell: tuple[int, int]
    sublattice: int
    plaquettes: tuple[int, int, int]
    edges: tuple[int, int, int]


@dataclass(frozen=True)
class Plaquette:
    """Hexagonal face; ``qubits`` lists its six corners in cyclic order."""

    id: int
    cell: tuple[int, int]
    color: str
    qubits: tuple[int, int, int, int, int, int]


@dataclass(frozen=True)
class Edge:
    """Lattice edge.

    ``faces`` are the two hexagons bordering the edge (colors differ from the
    edge color); ``plaquettes`` are the two same-color hexagons the edge links,
    one through each endpoint.
    """

    id: int
    cell: tuple[int, int]
    direction: int
    color: str
    qubits: tuple[int, int]
    plaquettes: tuple[int, int]
    faces: tuple[int, int]


@dataclass(frozen=True)
class ColorLattice:
    """Immutable hexagonal color lattice on a torus."""

    spec: TorusSpec
    qubits: tuple[Qubit, ...]
    plaquettes: tuple[Plaquette, ...]
    edges: tuple[Edge, ...]

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)

    @property
    def n_plaquettes(self) -> int:
        return len(self.plaquettes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def plaquettes_of_color(self, color: str) -> tuple[Plaquette, ...]:
        _check_color(color)
        return tuple(p for p in self.plaquettes if p.color == color)

    def edges_of_color(self, color: str) -> tuple[Edge, ...]:
        _check_color(color)
        return tuple(e for e in self.edges if e.color == color)

    def edge_between(self, qubit_a: int, qubit_b: int) -> Edge | None:
        """Edge joining two qubits, or None when they are not adjacent."""
        pair = frozenset((qubit_a, qubit_b))
        for edge in self.edges:
            if frozenset(edge.qubits) == pair:
                return edge
        return None

    def to_dict(self) -> dict:
        return {
            "l1": self.spec.l1,
            "l2": self.spec.l2,
            "qubits": [
                {
                    "id": q.id,
                    "cell": list(q.cell),
                    "sublattice": q.sublattice,
                    "plaquettes": list(q.plaquettes),
                    "edges": list(q.edges),
                }
                for q in self.qubits
            ],
            "plaquettes": [
                {
                    "id": p.id,
                    "cell": list(p.cell),
                    "color": p.color,
                    "qubits": list(p.qubits),
                }
                for p in self.plaquettes
            ],
            "edges": [
                {
                    "id": e.id,
                    "cell": list(e.cell),
                    "direction": e.direction,
                    "color": e.color,
                    "qubits": list(e.qubits),
                    "plaquettes": list(e.plaquettes),
                    "faces": list(e.faces),
                }
                for e in self.edges
            ],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _check_color(color: str) -> None:
    if color not in COLORS:
        raise ValueError(f"unknown color {color!r}; expected one of {COLORS}")


def build_hex_torus(dims: tuple[int, int] | TorusSpec) -> ColorLattice:
    """Construct the hexagonal color lattice for an ``l1 x l2`` torus.

    Args:
        dims: torus dimensions, each a positive multiple of 3.

    Returns:
        A fully cross-linked :class:`ColorLattice`.

    Raises:
        ValueError: if either dimension is below 3 or not a multiple of 3.
    """
    spec = dims if isinstance(dims, TorusSpec) else TorusSpec(*dims)
    l1, l2 = spec.l1, spec.l2

    def cell_id(a: int, b: int) -> int:
        return (a % l1) * l2 + (b % l2)

    def qubit_id(a: int, b: int, s: int) -> int:
        return 2 * cell_id(a, b) + s

    def color_index(a: int, b: int) -> int:
        return (a + 2 * b) % 3

    plaquettes = []
    for a in range(l1):
        for b in range(l2):
            ring = (
                qubit_id(a, b, 0),
                qubit_id(a - 1, b, 1),
                qubit_id(a - 1, b, 0),
                qubit_id(a - 1, b - 1, 1),
                qubit_id(a, b - 1, 0),
                qubit_id(a, b - 1, 1),
            )
            plaquettes.append(
                Plaquette(
                    id=cell_id(a, b),
                    cell=(a, b),
                    color=COLORS[color_index(a, b)],
                    qubits=ring,
                )
            )

    # Direction layout per cell (a, b) with c = color_index(a, b):
    #   0: color c+2, faces (a,b)/(a+1,b),   links (a,b+1) -- (a+1,b-1)
    #   1: color c+1, faces (a,b)/(a,b+1),   links (a+1,b) -- (a-1,b+1)
    #   2: color c,   faces (a+1,b)/(a,b+1), links (a,b)   -- (a+1,b+1)
    edges = []
    for a in range(l1):
        for b in range(l2):
            c = color_index(a, b)
            layout = (
                ((c + 2) % 3, qubit_id(a, b - 1, 1), ((a, b), (a + 1, b)), ((a, b + 1), (a + 1, b - 1))),
                ((c + 1) % 3, qubit_id(a - 1, b, 1), ((a, b), (a, b + 1)), ((a + 1, b), (a - 1, b + 1))),
                (c, qubit_id(a, b, 1), ((a + 1, b), (a, b + 1)), ((a, b), (a + 1, b + 1))),
            )
            for direction, (col, other, faces, links) in enumerate(layout):
                edges.append(
                    Edge(
                        id=3 * cell_id(a, b) + direction,
                        cell=(a, b),
                        direction=direction,
                        color=COLORS[col],
                        qubits=(qubit_id(a, b, 0), other),
                        plaquettes=(cell_id(*links[0]), cell_id(*links[1])),
                        faces=(cell_id(*faces[0]), cell_id(*faces[1])),
                    )
                )

    # Invert the incidence tables to get per-qubit triples ordered by color.
    qubit_plaquettes: dict[int, dict[str, int]] = {q: {} for q in range(spec.n_qubits)}
    for p in plaquettes:
        for q in p.qubits:
            qubit_plaquettes[q][p.color] = p.id
    qubit_edges: dict[int, dict[str, int]] = {q: {} for q in range(spec.n_qubits)}
    for e in edges:
        for q in e.qubits:
            qubit_edges[q][e.color] = e.id

    qubits = []
    for a in range(l1):
        for b in range(l2):
            for s in (0, 1):
                qid = qubit_id(a, b, s)
                qubits.append(
                    Qubit(
                        id=qid,
                        cell=(a, b),
                        sublattice=s,
                        plaquettes=tuple(qubit_plaquettes[qid].get(c, -1) for c in COLORS),
                        edges=tuple(qubit_edges[qid].get(c, -1) for c in COLORS),
                    )
                )

    return ColorLattice(
        spec=spec,
        qubits=tuple(qubits),
        plaquettes=tuple(plaquettes),
        edges=tuple(edges),
    )


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


def validate_lattice(lat: ColorLattice) -> ValidationReport:
    """Run structural checks on a lattice and report failures without raising.

    Covers the counting identities, incidence degrees, color consistency of
    edges against both linked plaquettes, and per-color dual connectivity.
    """
    checks: list[Check] = []
    spec = lat.spec

    def add(name: str, passed: bool, detail: str = "") -> None:
        checks.append(Check(name, passed, detail if not passed else ""))

    n = spec.n_qubits
    add("qubit count", lat.n_qubits == n, f"expected {n}, got {lat.n_qubits}")
    add(
        "plaquette count",
        lat.n_plaquettes == spec.n_plaquettes,
        f"expected {spec.n_plaquettes}, got {lat.n_plaquettes}",
    )
    add(
        "edge count",
        lat.n_edges == 3 * n // 2,
        f"expected {3 * n // 2}, got {lat.n_edges}",
    )

    per_color_p = {c: len(lat.plaquettes_of_color(c)) for c in COLORS}
    add(
        "per-color plaquette count",
        all(v == spec.n_plaquettes // 3 for v in per_color_p.values()),
        f"{per_color_p}",
    )
    per_color_e = {c: len(lat.edges_of_color(c)) for c in COLORS}
    add(
        "per-color edge count",
        all(v == lat.n_edges // 3 for v in per_color_e.values()),
        f"{per_color_e}",
    )

    bad_plaq_degree = []
    for q in lat.qubits:
        colors = [lat.plaquettes[p].color for p in q.plaquettes if 0 <= p < lat.n_plaquettes]
        owned = [p.id for p in lat.plaquettes if q.id in p.qubits]
        if len(owned) != 3 or sorted(colors) != sorted(COLORS) or sorted(q.plaquettes) != sorted(owned):
            bad_plaq_degree.append(q.id)
    add(
        "qubit plaquette-degree 3, one per color",
        not bad_plaq_degree,
        f"qubit plaquette-degree != 3 or colors repeat at qubits {bad_plaq_degree[:8]}",
    )

    bad_edge_degree = []
    for q in lat.qubits:
        owned = [e.id for e in lat.edges if q.id in e.qubits]
        colors = [lat.edges[e].color for e in q.edges if 0 <= e < lat.n_edges]
        if len(owned) != 3 or sorted(colors) != sorted(COLORS) or sorted(q.edges) != sorted(owned):
            bad_edge_degree.append(q.id)
    add(
        "qubit edge-degree 3, one per color",
        not bad_edge_degree,
        f"bad qubits {bad_edge_degree[:8]}",
    )

    color_mismatch = []
    for e in lat.edges:
        p1, p2 = (lat.plaquettes[p] for p in e.plaquettes)
        if not (p1.color == p2.color == e.color):
            color_mismatch.append(e.id)
    add(
        "edge color matches linked plaquettes",
        not color_mismatch,
        f"edge color mismatch at edges {color_mismatch[:8]}",
    )

    face_mismatch = []
    for e in lat.edges:
        f1, f2 = (lat.plaquettes[p] for p in e.faces)
        if f1.color == f2.color or e.color in (f1.color, f2.color):
            face_mismatch.append(e.id)
        elif e.qubits[0] not in f1.qubits or e.qubits[1] not in f1.qubits:
            face_mismatch.append(e.id)
        elif e.qubits[0] not in f2.qubits or e.qubits[1] not in f2.qubits:
            face_mismatch.append(e.id)
    add(
        "edge faces carry the two other colors and contain both endpoints",
        not face_mismatch,
        f"bad edges {face_mismatch[:8]}",
    )

    endpoint_mismatch = []
    for e in lat.edges:
        p1, p2 = (lat.plaquettes[p] for p in e.plaquettes)
        q1, q2 = e.qubits
        if not ((q1 in p1.qubits) ^ (q1 in p2.qubits)) or not ((q2 in p1.qubits) ^ (q2 in p2.qubits)):
            endpoint_mismatch.append(e.id)
        elif (q1 in p1.qubits) == (q2 in p1.qubits):
            endpoint_mismatch.append(e.id)
    add(
        "edge endpoints split across the two linked plaquettes",
        not endpoint_mismatch,
        f"bad edges {endpoint_mismatch[:8]}",
    )

    ring_breaks = []
    for p in lat.plaquettes:
        ring = p.qubits
        if len(set(ring)) != 6:
            ring_breaks.append(p.id)
            continue
        for i in range(6):
            edge = lat.edge_between(ring[i], ring[(i + 1) % 6])
            if edge is None or p.id not in edge.faces:
                ring_breaks.append(p.id)
                break
    add(
        "plaquette rings are closed hexagons",
        not ring_breaks,
        f"bad plaquettes {ring_breaks[:8]}",
    )

    for color in COLORS:
        sites = [p.id for p in lat.plaquettes_of_color(color)]
        adjacency: dict[int, set[int]] = {s: set() for s in sites}
        for e in lat.edges_of_color(color):
            if e.plaquettes[0] in adjacency and e.plaquettes[1] in adjacency:
                adjacency[e.plaquettes[0]].add(e.plaquettes[1])
                adjacency[e.plaquettes[1]].add(e.plaquettes[0])
        seen: set[int] = set()
        stack = sites[:1]
        while stack:
            s = stack.pop()
            if s in seen:
                continue
            seen.add(s)
            stack.extend(adjacency[s] - seen)
        add(
            f"dual graph connected for color {color}",
            len(seen) == len(sites),
            f"reached {len(seen)} of {len(sites)} sites",
        )

    return ValidationReport(checks=tuple(checks))


@dataclass(frozen=True)
class LinkCell:
    """Cell of a link lattice, recorded per hexagon of the parent lattice.

    Hexagons of the link color contribute six-site cells (the link edges
    touching their six corners); other hexagons contribute three-site cells
    (their three border edges of the link color).
    """

    plaquette: int
    color: str
    sites: tuple[int, ...]


@dataclass(frozen=True)
class TriangularLattice:
    """Triangular derivative of a color lattice.

    ``kind == 'dual'``: sites are the color-``color`` plaquettes, bonds are the
    color-``color`` edges (a multigraph on small tori).  ``kind == 'link'``:
    sites are the color-``color`` edges and ``cells`` records the three- and
    six-site cells; bonds join sites sharing a three-site cell.

    ``sites`` holds parent ids (plaquette or edge ids); bond entries are
    ``(site_a, site_b, origin)`` with ``origin`` the parent edge id (dual) or
    the parent plaquette id of the shared cell (link).
    """

    kind: str
    color: str
    sites: tuple[int, ...]
    bonds: tuple[tuple[int, int, int], ...]
    cells: tuple[LinkCell, ...] = ()

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    def site_index(self) -> dict[int, int]:
        return {origin: i for i, origin in enumerate(self.sites)}

    def neighbors(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {i: [] for i in range(self.n_sites)}
        for a, b, _ in self.bonds:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def distances(self) -> list[list[int]]:
        """All-pairs hop counts via breadth-first search."""
        adj = self.neighbors()
        out = []
        for start in range(self.n_sites):
            dist = [-1] * self.n_sites
            dist[start] = 0
            queue = [start]
            while queue:
                nxt: list[int] = []
                for s in queue:
                    for t in adj[s]:
                        if dist[t] < 0:
                            dist[t] = dist[s] + 1
                            nxt.append(t)
                queue = nxt
            out.append(dist)
        return out

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "color": self.color,
            "sites": list(self.sites),
            "bonds": [list(b) for b in self.bonds],
            "cells": [
                {"plaquette": c.plaquette, "color": c.color, "sites": list(c.sites)}
                for c in self.cells
            ],
        }


def dual_triangular(lat: ColorLattice, color: str) -> TriangularLattice:
    """Per-color dual: one site per color-``color`` plaquette, one bond per
    color-``color`` edge.  Small tori produce multigraphs; every site has six
    incident bond endpoints.
    """
    _check_color(color)
    sites = tuple(p.id for p in lat.plaquettes_of_color(color))
    index = {p: i for i, p in enumerate(sites)}
    bonds = tuple(
        (index[e.plaquettes[0]], index[e.plaquettes[1]], e.id)
        for e in lat.edges_of_color(color)
    )
    return TriangularLattice(kind="dual", color=color, sites=sites, bonds=bonds)


def link_lattice(lat: ColorLattice, color: str) -> TriangularLattice:
    """Link lattice: one site per color-``color`` edge.

    Each hexagon of ``color`` yields a six-site cell from the link edges at its
    corners (one per corner, pointing away from the hexagon); every other
    hexagon yields a three-site cell from its border edges of that color.  On
    the torus each site lands in exactly two cells of either kind.
    """
    _check_color(color)
    sites = tuple(e.id for e in lat.edges_of_color(color))
    index = {e: i for i, e in enumerate(sites)}
    color_pos = COLORS.index(color)

    cells = []
    for p in lat.plaquettes:
        if p.color == color:
            members = tuple(index[lat.qubits[q].edges[color_pos]] for q in p.qubits)
        else:
            border = sorted(
                e.id for e in lat.edges_of_color(color) if p.id in e.faces
            )
            members = tuple(index[e] for e in border)
        cells.append(LinkCell(plaquette=p.id, color=p.color, sites=members))

    bonds = []
    for cell in cells:
        if len(cell.sites) != 3:
            continue
        s = cell.sites
        for a, b in ((s[0], s[1]), (s[0], s[2]), (s[1], s[2])):
            bonds.append((min(a, b), max(a, b), cell.plaquette))

    return TriangularLattice(
        kind="link",
        color=color,
        sites=sites,
        bonds=tuple(bonds),
        cells=tuple(cells),
    )
