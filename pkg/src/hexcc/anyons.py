"""Abelian anyon theories over GF(2): fusion, braiding, spins, condensation.

An anyon theory of rank ``k`` is the group F_2^k with fusion = XOR, a
symmetric zero-diagonal GF(2) form ``B`` giving mutual statistics
``M(u, v) = (-1)^{u^T B v}``, and basis spin bits ``d`` defining topological
spins through the quadratic refinement
``theta(u + v) = theta(u) * theta(v) * M(u, v)``.

Anyons are represented as ``int`` bit masks over the basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class AnyonTheory:
    """Rank-``k`` abelian theory with named anyons.

    ``braiding[i][j]`` is the GF(2) form on basis pairs; ``spins[i]`` the spin
    bit of basis anyon ``i`` (0 boson, 1 fermion); ``labels`` a bijection from
    all ``2**k`` masks to display names with the vacuum at mask 0.
    """

    rank: int
    braiding: tuple[tuple[int, ...], ...]
    spins: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        k = self.rank
        if len(self.braiding) != k or any(len(row) != k for row in self.braiding):
            raise ValueError("braiding form must be k x k")
        for i in range(k):
            if self.braiding[i][i] != 0:
                raise ValueError("braiding form must have zero diagonal")
            for j in range(k):
                if self.braiding[i][j] != self.braiding[j][i]:
                    raise ValueError("braiding form must be symmetric")
                if self.braiding[i][j] not in (0, 1):
                    raise ValueError("braiding entries must be GF(2) bits")
        if len(self.spins) != k or any(s not in (0, 1) for s in self.spins):
            raise ValueError("spins must be k GF(2) bits")
        if len(self.labels) != 1 << k:
            raise ValueError(f"need {1 << k} labels, got {len(self.labels)}")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")

    @property
    def n_anyons(self) -> int:
        return 1 << self.rank

    @property
    def anyons(self) -> range:
        return range(self.n_anyons)

    def label(self, a: int) -> str:
        return self.labels[a]

    def mask_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown anyon label {label!r}") from None

    def fuse(self, a: int, b: int) -> int:
        """Fusion of abelian anyons: componentwise XOR."""
        self._check(a)
        self._check(b)
        return a ^ b

    def braid(self, a: int, b: int) -> int:
        """Mutual statistics ``M(a, b)`` as +1 or -1."""
        self._check(a)
        self._check(b)
        exponent = 0
        for i in range(self.rank):
            if not (a >> i) & 1:
                continue
            for j in range(self.rank):
                exponent ^= self.braiding[i][j] & (b >> j)
        return -1 if exponent & 1 else 1

    def theta(self, a: int) -> int:
        """Topological spin as +1 (boson) or -1 (fermion)."""
        self._check(a)
        exponent = 0
        for i in range(self.rank):
            if (a >> i) & 1:
                exponent ^= self.spins[i]
        for i, j in combinations(range(self.rank), 2):
            exponent ^= self.braiding[i][j] & (a >> i) & (a >> j)
        return -1 if exponent & 1 else 1

    def is_boson(self, a: int) -> bool:
        return a != 0 and self.theta(a) == 1

    def is_fermion(self, a: int) -> bool:
        return self.theta(a) == -1

    def _check(self, a: int) -> None:
        if not 0 <= a < self.n_anyons:
            raise ValueError(f"anyon mask {a} outside the theory of rank {self.rank}")

    def fusion_table(self) -> list[list[str]]:
        return [
            [self.label(self.fuse(a, b)) for b in self.anyons] for a in self.anyons
        ]

    def braiding_table(self) -> list[list[int]]:
        return [[self.braid(a, b) for b in self.anyons] for a in self.anyons]

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "braiding": [list(row) for row in self.braiding],
            "spins": list(self.spins),
            "labels": list(self.labels),
        }


@dataclass(frozen=True)
class Census:
    """Spin census of a theory: the vacuum plus boson and fermion labels."""

    vacuum: str
    bosons: tuple[str, ...]
    fermions: tuple[str, ...]

    @property
    def counts(self) -> tuple[int, int, int]:
        return (1, len(self.bosons), len(self.fermions))

    def to_dict(self) -> dict:
        return {
            "vacuum": self.vacuum,
            "bosons": list(self.bosons),
            "fermions": list(self.fermions),
            "counts": {
                "vacuum": 1,
                "bosons": len(self.bosons),
                "fermions": len(self.fermions),
            },
        }


def classify(theory: AnyonTheory) -> Census:
    """Partition all anyons by topological spin."""
    bosons = []
    fermions = []
    for a in theory.anyons:
        if a == 0:
            continue
        if theory.theta(a) == 1:
            bosons.append(theory.label(a))
        else:
            fermions.append(theory.label(a))
    return Census(
        vacuum=theory.label(0), bosons=tuple(bosons), fermions=tuple(fermions)
    )


def toric_code_theory() -> AnyonTheory:
    """Rank-2 theory with basis (e, m): bosonic generators with mutual -1."""
    return AnyonTheory(
        rank=2,
        braiding=((0, 1), (1, 0)),
        spins=(0, 0),
        labels=("1", "e", "m", "f"),
    )


_CC_BASIS = (("r", "x"), ("r", "z"), ("g", "x"), ("g", "z"))
_PAULI_OF_PAIR = {(0, 0): None, (1, 0): "x", (0, 1): "z", (1, 1): "y"}


def _cc_label(mask: int) -> str:
    r_pair = (mask & 1, (mask >> 1) & 1)
    g_pair = ((mask >> 2) & 1, (mask >> 3) & 1)
    r_p, g_p = _PAULI_OF_PAIR[r_pair], _PAULI_OF_PAIR[g_pair]
    if r_p is None and g_p is None:
        return "1"
    if g_p is None:
        return f"r_{r_p}"
    if r_p is None:
        return f"g_{g_p}"
    if r_p == g_p:
        return f"b_{r_p}"
    return f"r_{r_p}*g_{g_p}"


def _pure_color_braiding(u: tuple[str, str], v: tuple[str, str]) -> int:
    """Mutual statistics of two pure-color anyons: trivial iff the colors
    match or the Pauli labels match, otherwise -1 (as a GF(2) bit)."""
    return 0 if u[0] == v[0] or u[1] == v[1] else 1


def color_code_theory() -> AnyonTheory:
    """Rank-4 theory with basis (r_x, r_z, g_x, g_z).

    The braiding form is derived from the pure-color braiding rule evaluated
    on basis pairs; the same rule is then asserted on every pure-color pair,
    including the composite blue anyons ``b_p = r_p * g_p``.
    """
    k = 4
    braiding = tuple(
        tuple(_pure_color_braiding(_CC_BASIS[i], _CC_BASIS[j]) for j in range(k))
        for i in range(k)
    )
    labels = tuple(_cc_label(m) for m in range(1 << k))
    theory = AnyonTheory(rank=k, braiding=braiding, spins=(0, 0, 0, 0), labels=labels)

    pure = {}
    for color, bits in (("r", (1, 2)), ("g", (4, 8)), ("b", (5, 10))):
        for pauli, mask in (("x", bits[0]), ("z", bits[1]), ("y", bits[0] | bits[1])):
            pure[(color, pauli)] = mask
    for u, mu in pure.items():
        for v, mv in pure.items():
            expected = -1 if _pure_color_braiding(u, v) else 1
            if theory.braid(mu, mv) != expected:
                raise AssertionError(
                    f"derived braiding form violates the pure-color rule at {u}, {v}"
                )
        if theory.theta(mu) != 1:
            raise AssertionError(f"pure-color anyon {u} must be bosonic")
    return theory


@dataclass(frozen=True)
class CondensationResult:
    """Outcome of condensing a boson subgroup.

    ``algebra`` is the condensed subgroup, ``confined`` the anyons braiding
    nontrivially with it, ``classes`` the deconfined cosets, and ``quotient``
    the resulting theory with one anyon per class.
    """

    theory: AnyonTheory
    algebra: tuple[int, ...]
    confined: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    quotient: AnyonTheory
    class_reps: tuple[int, ...]

    @property
    def deconfined(self) -> tuple[int, ...]:
        return tuple(sorted(a for cls in self.classes for a in cls))

    def to_dict(self) -> dict:
        t = self.theory
        return {
            "algebra": [t.label(a) for a in self.algebra],
            "confined": [t.label(a) for a in self.confined],
            "classes": [[t.label(a) for a in cls] for cls in self.classes],
            "quotient": self.quotient.to_dict(),
        }


def _closure(generators) -> set[int]:
    span = {0}
    for g in generators:
        span |= {s ^ g for s in span}
    return span


def condense(theory: AnyonTheory, generators) -> CondensationResult:
    """Condense the subgroup generated by bosonic ``generators``.

    Args:
        theory: parent theory.
        generators: anyon masks or labels; each must be a boson, and the
            generated subgroup must contain bosons only.

    Raises:
        ValueError: if a generator or a closure element is not bosonic, or if
            inherited braiding or spin is inconsistent on a coset (which would
            signal a bug in the parent theory data).
    """
    masks = [
        theory.mask_of(g) if isinstance(g, str) else int(g) for g in generators
    ]
    for m in masks:
        theory._check(m)
        if m != 0 and theory.theta(m) != 1:
            raise ValueError(
                f"cannot condense non-boson {theory.label(m)}"
            )
    algebra = _closure(masks)
    for a in algebra:
        if a != 0 and theory.theta(a) != 1:
            raise ValueError(
                f"closure contains the non-boson {theory.label(a)}; "
                "the generated subgroup must be bosonic"
            )

    confined = tuple(
        sorted(
            a
            for a in theory.anyons
            if any(theory.braid(a, c) == -1 for c in algebra)
        )
    )
    deconfined = [a for a in theory.anyons if a not in set(confined)]

    seen: set[int] = set()
    classes: list[tuple[int, ...]] = []
    for a in deconfined:
        if a in seen:
            continue
        coset = tuple(sorted(a ^ c for c in algebra))
        seen.update(coset)
        classes.append(coset)
    classes.sort(key=lambda cls: cls[0])
    class_index = {a: i for i, cls in enumerate(classes) for a in cls}

    # Inherited data must not depend on the representative.
    for cls in classes:
        thetas = {theory.theta(a) for a in cls}
        if len(thetas) != 1:
            raise ValueError("inconsistent inherited spin on a coset")
        for other in classes:
            values = {theory.braid(a, b) for a in cls for b in other}
            if len(values) != 1:
                raise ValueError("inconsistent inherited braiding on cosets")

    # Pick a GF(2) basis of classes by greedy extension; classes[0] is the
    # algebra itself (it contains the vacuum), so it seeds the span.
    reps: list[int] = []
    span_classes = {class_index[0]}
    for cls in classes:
        if class_index[cls[0]] in span_classes:
            continue
        reps.append(cls[0])
        span_classes = {class_index[s] for s in _closure(reps)}
    rank = len(reps)
    if 1 << rank != len(classes):
        raise ValueError("class group is not F_2^k; condensation failed")

    braiding = tuple(
        tuple(0 if theory.braid(reps[i], reps[j]) == 1 else 1 for j in range(rank))
        for i in range(rank)
    )
    spins = tuple(0 if theory.theta(r) == 1 else 1 for r in reps)

    labels = []
    for m in range(1 << rank):
        combo = 0
        for i in range(rank):
            if (m >> i) & 1:
                combo ^= reps[i]
        cls = classes[class_index[combo]]
        labels.append("1" if m == 0 else "[" + theory.label(cls[0]) + "]")
    quotient = AnyonTheory(
        rank=rank, braiding=braiding, spins=spins, labels=tuple(labels)
    )

    # The reconstructed quotient must reproduce the inherited data exactly.
    for m in range(1 << rank):
        combo = 0
        for i in range(rank):
            if (m >> i) & 1:
                combo ^= reps[i]
        if quotient.theta(m) != theory.theta(combo):
            raise ValueError("quotient spin disagrees with inherited spin")

    return CondensationResult(
        theory=theory,
        algebra=tuple(sorted(algebra)),
        confined=confined,
        classes=tuple(classes),
        quotient=quotient,
        class_reps=tuple(reps),
    )


def find_isomorphism(t1: AnyonTheory, t2: AnyonTheory) -> dict[int, int] | None:
    """Exhaustive search for a fusion/braiding/spin-preserving bijection.

    Returns a full anyon-mask mapping, or None when the theories differ.
    Basis images determine the map linearly, so only basis assignments are
    enumerated, with pruning on braiding and spin mismatches.
    """
    if t1.rank != t2.rank:
        return None
    k = t1.rank

    def extend(i: int, images: list[int]) -> list[int] | None:
        if i == k:
            return images
        for candidate in range(1, t2.n_anyons):
            if candidate in _closure(images):
                continue
            if t2.theta(candidate) != t1.theta(1 << i):
                continue
            if any(
                t2.braid(images[j], candidate) != t1.braid(1 << j, 1 << i)
                for j in range(i)
            ):
                continue
            result = extend(i + 1, images + [candidate])
            if result is not None:
                return result
        return None

    basis_images = extend(0, [])
    if basis_images is None:
        return None

    mapping: dict[int, int] = {}
    for a in t1.anyons:
        image = 0
        for i in range(k):
            if (a >> i) & 1:
                image ^= basis_images[i]
        mapping[a] = image
    # Safety net: confirm the induced map preserves everything.
    for a in t1.anyons:
        if t1.theta(a) != t2.theta(mapping[a]):
            return None
        for b in t1.anyons:
            if t1.braid(a, b) != t2.braid(mapping[a], mapping[b]):
                return None
    return mapping
