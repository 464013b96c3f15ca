"""Exact arithmetic on rank-3 integral lattices with basis (h, A, B)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional, Sequence, Tuple

BASIS_LABELS = ("h", "A", "B")


class ParameterError(ValueError):
    """Raised when lattice parameters fall outside their domain."""


class RootError(ValueError):
    """Raised when a reflection is requested in a class of square other than -2."""


@dataclass(frozen=True)
class DivisorClass:
    """The class z*h + x*A + y*B, stored as coords = (z, x, y)."""

    coords: Tuple[int, int, int]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != 3:
            raise ValueError(f"expected 3 coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, z: int = 0, x: int = 0, y: int = 0) -> "DivisorClass":
        return cls((z, x, y))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(p + q for p, q in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(p - q for p, q in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-p for p in self.coords))

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(tuple(k * p for p in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def label(self) -> str:
        terms = []
        for c, name in zip(self.coords, BASIS_LABELS):
            if c == 0:
                continue
            if c == 1:
                terms.append(f"+{name}")
            elif c == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{c:+d}{name}")
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s

    def __repr__(self):
        return f"DivisorClass({self.label()})"


H = DivisorClass((1, 0, 0))
A = DivisorClass((0, 1, 0))
B = DivisorClass((0, 0, 1))
ZERO = DivisorClass((0, 0, 0))


@dataclass(frozen=True)
class GramLattice:
    gram: Tuple[Tuple[int, ...], ...]
    basis_labels: Tuple[str, ...] = BASIS_LABELS
    params: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        gram = tuple(tuple(int(v) for v in row) for row in self.gram)
        n = len(gram)
        if n != 3 or any(len(row) != n for row in gram):
            raise ValueError("gram must be a 3x3 matrix")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError(f"gram is not symmetric at ({i}, {j})")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))

    @property
    def a(self) -> Optional[int]:
        return self.params[0] if self.params else None

    @property
    def u(self) -> Optional[int]:
        return self.params[1] if self.params else None

    @property
    def hsq(self) -> int:
        return self.gram[0][0]

    def to_dict(self) -> dict:
        return {
            "a": None if self.a is None else str(self.a),
            "u": None if self.u is None else str(self.u),
            "gram": [[str(v) for v in row] for row in self.gram],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GramLattice":
        gram = tuple(tuple(int(v) for v in row) for row in data["gram"])
        params = None
        if data.get("a") is not None and data.get("u") is not None:
            params = (int(data["a"]), int(data["u"]))
        return cls(gram, params=params)


class InertiaSignature(NamedTuple):
    positive: int
    negative: int
    zero: int


def k3_gram(a: int, u: int) -> Tuple[Tuple[int, int, int], ...]:
    return (
        (2 * a, 3 * a, 3 * a),
        (3 * a, 4 * (a - 1), u),
        (3 * a, u, 4 * (a - 1)),
    )


def build_k3_lattice(a: int, u: int) -> GramLattice:
    """Lattice Zh + ZA + ZB with h^2 = 2a, hA = hB = 3a, A^2 = B^2 = 4(a-1), AB = u."""
    if not isinstance(a, int) or not isinstance(u, int):
        raise ParameterError("a and u must be integers")
    if a < 2:
        raise ParameterError(f"a must be >= 2, got {a}")
    return GramLattice(k3_gram(a, u), params=(a, u))


def _vec(D) -> Tuple[int, ...]:
    return D.coords if isinstance(D, DivisorClass) else tuple(D)


def pairing(L: GramLattice, D, D2) -> int:
    v, w = _vec(D), _vec(D2)
    g = L.gram
    return sum(v[i] * g[i][j] * w[j] for i in range(3) for j in range(3))


def self_intersection(L: GramLattice, D) -> int:
    return pairing(L, D, D)


def degree(L: GramLattice, D) -> int:
    """Degree with respect to the polarization h (the first basis vector)."""
    return pairing(L, D, H)


def determinant(gram: Sequence[Sequence[int]]) -> int:
    (p, q, r), (s, t, v), (w, x, y) = gram
    return p * (t * y - v * x) - q * (s * y - v * w) + r * (s * x - t * w)


def diagonalize(gram: Sequence[Sequence[int]]) -> list:
    """Congruence-diagonalize a symmetric matrix over Q; return the diagonal.

    Zero pivots are handled by swapping in a nonzero diagonal entry, or, when
    the remaining diagonal is identically zero, by the substitution
    e_k <- e_k + e_j that turns a hyperbolic plane into a nonzero pivot.
    """
    m = [[Fraction(v) for v in row] for row in gram]
    n = len(m)
    diag = []
    for k in range(n):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][i] != 0), None)
            if p is not None:
                m[k], m[p] = m[p], m[k]
                for row in m:
                    row[k], row[p] = row[p], row[k]
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is None:
                    # row k is zero on the remaining block
                    diag.append(Fraction(0))
                    continue
                # new pivot m[k][k] + 2 m[k][j] + m[j][j] = 2 m[k][j] != 0
                for i in range(n):
                    m[k][i] += m[j][i]
                for i in range(n):
                    m[i][k] += m[i][j]
        piv = m[k][k]
        diag.append(piv)
        for i in range(k + 1, n):
            f = m[i][k] / piv
            if f == 0:
                continue
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
        for i in range(k + 1, n):
            m[k][i] = Fraction(0)
            m[i][k] = Fraction(0)
    return diag


def inertia(L) -> InertiaSignature:
    gram = L.gram if isinstance(L, GramLattice) else L
    diag = diagonalize(gram)
    return InertiaSignature(
        sum(1 for d in diag if d > 0),
        sum(1 for d in diag if d < 0),
        sum(1 for d in diag if d == 0),
    )


def is_even(L: GramLattice) -> bool:
    return all(L.gram[i][i] % 2 == 0 for i in range(3))


def is_primitive(L: GramLattice, D) -> bool:
    g = 0
    for c in _vec(D):
        g = gcd(g, c)
    return g == 1


def reflect(L: GramLattice, D: DivisorClass, root: DivisorClass) -> DivisorClass:
    """Picard-Lefschetz reflection D -> D + (D.root) root."""
    if self_intersection(L, root) != -2:
        raise RootError(f"{root!r} has square {self_intersection(L, root)}, not -2")
    return D + pairing(L, D, root) * root
