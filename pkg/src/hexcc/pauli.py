"""Symplectic Pauli strings, operator sums, and GF(2) stabilizer routines.

A Pauli string on ``n`` qubits is stored as two bit masks plus a phase
exponent: ``P = i**phase * X**x * Z**z`` with all X factors to the left of all
Z factors.  ``Y = i * X * Z``, so a Y on qubit ``q`` sets bit ``q`` in both
masks and adds 1 to the phase.  Masks are plain Python ints, which keeps the
arithmetic exact for any qubit count used here.

Two strings commute iff ``popcount(x1 & z2) + popcount(z1 & x2)`` is even.
"""

from __future__ import annotations

from dataclasses import dataclass

_PHASE_LABEL = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


@dataclass(frozen=True)
class PauliString:
    """Immutable Pauli string ``i**phase * X**x * Z**z`` on ``n`` qubits."""

    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"qubit count must be non-negative, got {self.n}")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full:
            raise ValueError("mask has bits outside the register")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n=n)

    @classmethod
    def from_ops(cls, n: int, ops: dict[int, str], sign: int = 1) -> PauliString:
        """Build from ``{qubit: letter}`` with letters I, X, Y, Z."""
        x = z = 0
        phase = 0 if sign == 1 else 2
        for q, letter in ops.items():
            if not 0 <= q < n:
                raise ValueError(f"qubit {q} outside register of size {n}")
            if letter == "X":
                x |= 1 << q
            elif letter == "Z":
                z |= 1 << q
            elif letter == "Y":
                x |= 1 << q
                z |= 1 << q
                phase += 1
            elif letter != "I":
                raise ValueError(f"unknown Pauli letter {letter!r}")
        return cls(n=n, x=x, z=z, phase=phase)

    @classmethod
    def from_text(cls, text: str) -> PauliString:
        """Parse the text form, e.g. ``'+XIZZY'`` or ``'-iZY'``.

        Letters are listed qubit 0 first.  The sign prefix is one of
        ``+ +i - -i`` and defaults to ``+``.
        """
        body = text
        phase = 0
        for prefix, exponent in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2)):
            if text.startswith(prefix):
                body = text[len(prefix):]
                phase = exponent
                break
        ops = {q: letter for q, letter in enumerate(body)}
        base = cls.from_ops(len(body), ops)
        return cls(n=base.n, x=base.x, z=base.z, phase=base.phase + phase)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def is_identity_mask(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def is_hermitian(self) -> bool:
        # (X^x Z^z)^dagger = (-1)^{|x & z|} X^x Z^z, so hermiticity requires
        # phase == |x & z| (mod 2).
        return (self.phase - (self.x & self.z).bit_count()) % 2 == 0

    def letter(self, q: int) -> str:
        return _LETTER[((self.x >> q) & 1, (self.z >> q) & 1)]

    def multiply(self, other: PauliString) -> PauliString:
        """Operator product ``self * other`` with exact phase tracking."""
        if self.n != other.n:
            raise ValueError(
                f"register size mismatch: {self.n} vs {other.n}"
            )
        # Moving X^{x2} through Z^{z1} yields (-1)^{|z1 & x2|}.
        phase = self.phase + other.phase + 2 * (self.z & other.x).bit_count()
        return PauliString(
            n=self.n,
            x=self.x ^ other.x,
            z=self.z ^ other.z,
            phase=phase,
        )

    __mul__ = multiply

    def commutes_with(self, other: PauliString) -> bool:
        if self.n != other.n:
            raise ValueError(
                f"register size mismatch: {self.n} vs {other.n}"
            )
        return ((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) % 2 == 0

    def negate(self) -> PauliString:
        return PauliString(n=self.n, x=self.x, z=self.z, phase=self.phase + 2)

    def to_text(self) -> str:
        """Render as sign prefix plus one letter per qubit, qubit 0 first."""
        y_count = (self.x & self.z).bit_count()
        prefix = _PHASE_LABEL[(self.phase - y_count) % 4]
        letters = "".join(self.letter(q) for q in range(self.n))
        return prefix + letters

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class OperatorSum:
    """Real-weighted sum of Pauli strings on a shared register.

    Terms are kept exactly as built (no merging), so structural term-by-term
    comparisons remain possible.  :meth:`normalized` merges duplicates and
    drops negligible coefficients for spectral use.
    """

    n: int
    terms: tuple[tuple[float, PauliString], ...] = ()

    def __post_init__(self) -> None:
        for _, p in self.terms:
            if p.n != self.n:
                raise ValueError(
                    f"term register size {p.n} does not match operator size {self.n}"
                )

    @classmethod
    def from_terms(cls, n: int, terms) -> OperatorSum:
        return cls(n=n, terms=tuple((float(c), p) for c, p in terms))

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def __add__(self, other: OperatorSum) -> OperatorSum:
        if self.n != other.n:
            raise ValueError("register size mismatch in operator sum")
        return OperatorSum(n=self.n, terms=self.terms + other.terms)

    def scaled(self, factor: float) -> OperatorSum:
        return OperatorSum(
            n=self.n, terms=tuple((factor * c, p) for c, p in self.terms)
        )

    def is_hermitian(self) -> bool:
        return all(p.is_hermitian for _, p in self.terms)

    def normalized(self, drop_tol: float = 1e-12) -> OperatorSum:
        """Merge equal strings, fold real signs into coefficients, sort.

        Strings with phase 2 (or 3) are replaced by their phase 0 (or 1)
        partner with the coefficient negated, so equal operators always merge.
        """
        merged: dict[tuple[int, int, int], float] = {}
        for coeff, p in self.terms:
            phase = p.phase
            if phase >= 2:
                coeff = -coeff
                phase -= 2
            key = (p.x, p.z, phase)
            merged[key] = merged.get(key, 0.0) + coeff
        terms = tuple(
            (coeff, PauliString(n=self.n, x=x, z=z, phase=phase))
            for (x, z, phase), coeff in sorted(merged.items())
            if abs(coeff) > drop_tol
        )
        return OperatorSum(n=self.n, terms=terms)

    def identity_coefficient(self) -> float:
        """Coefficient of the identity string, i.e. trace / 2**n."""
        total = 0.0
        for coeff, p in self.normalized().terms:
            if p.is_identity_mask:
                total += coeff if p.phase == 0 else -coeff
        return total

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"coeff": c, "pauli": p.to_text()} for c, p in self.terms],
        }

    @classmethod
    def from_dict(cls, data: dict) -> OperatorSum:
        terms = tuple(
            (float(t["coeff"]), PauliString.from_text(t["pauli"]))
            for t in data["terms"]
        )
        return cls(n=int(data["n"]), terms=terms)


def same_terms(a: OperatorSum, b: OperatorSum, tol: float = 0.0) -> bool:
    """Structural equality: identical term multisets without merging.

    With ``tol == 0`` the coefficients must match bit for bit.
    """
    if a.n != b.n or a.n_terms != b.n_terms:
        return False
    key = lambda item: (item[1].x, item[1].z, item[1].phase, item[0])
    for (ca, pa), (cb, pb) in zip(sorted(a.terms, key=key), sorted(b.terms, key=key)):
        if (pa.x, pa.z, pa.phase) != (pb.x, pb.z, pb.phase):
            return False
        if abs(ca - cb) > tol:
            return False
    return True


def gf2_rank(generators) -> int:
    """Rank of symplectic ``(x|z)`` rows over GF(2) by XOR elimination."""
    rows = []
    n = None
    for g in generators:
        if n is None:
            n = g.n
        elif g.n != n:
            raise ValueError("generators live on different registers")
        rows.append(g.x | (g.z << g.n))
    rank = 0
    pivots: list[int] = []
    for row in rows:
        for pivot in pivots:
            row = min(row, row ^ pivot)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank


def gf2_in_span(generators, candidate: PauliString) -> bool:
    """Whether ``candidate``'s ``(x|z)`` row lies in the span of the
    generators' rows over GF(2).  Signs are ignored."""
    gens = list(generators)
    return gf2_rank(gens) == gf2_rank(gens + [candidate])


def gf2_span_equal(gens_a, gens_b) -> bool:
    """Whether two generator lists span the same GF(2) symplectic subspace."""
    a = list(gens_a)
    b = list(gens_b)
    ra, rb = gf2_rank(a), gf2_rank(b)
    return ra == rb == gf2_rank(a + b)


def stabilizer_degeneracy(generators, n: int) -> int:
    """Ground-space dimension ``2**(n - rank)`` of a commuting Pauli sum.

    Args:
        generators: hermitian, pairwise commuting Pauli strings.
        n: register size.

    Raises:
        ValueError: if a pair fails to commute, a generator is not hermitian,
            or the generated group contains minus the identity.
    """
    gens = list(generators)
    for g in gens:
        if g.n != n:
            raise ValueError("generator register size mismatch")
        if not g.is_hermitian:
            raise ValueError(f"generator {g.to_text()} is not hermitian")
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            if not g.commutes_with(h):
                raise ValueError(
                    f"generators do not commute: {g.to_text()} vs {h.to_text()}"
                )

    # Sign-tracking elimination: reduce each generator against the pivots kept
    # so far; a full cancellation must leave phase 0, otherwise the group
    # contains -identity and no common +1 eigenspace exists.
    pivots: dict[int, PauliString] = {}
    rank = 0
    for g in gens:
        row = g
        while not row.is_identity_mask:
            lead = (row.x | (row.z << n)).bit_length() - 1
            if lead in pivots:
                row = row.multiply(pivots[lead])
            else:
                pivots[lead] = row
                rank += 1
                break
        else:
            if row.phase != 0:
                raise ValueError(
                    "generated group contains -identity; no stabilized space"
                )
    return 2 ** (n - rank)
