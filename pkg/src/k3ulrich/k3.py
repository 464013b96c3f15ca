"""Numerical geometry of a polarized K3 with Picard lattice (h, A, B)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, NamedTuple, Optional, Tuple

from .certificates import Certificate
from .enumeration import WitnessSet, enumerate_classes
from .lattice import (
    H,
    DivisorClass,
    GramLattice,
    ParameterError,
    degree,
    is_primitive,
    pairing,
    reflect,
    self_intersection,
)


class InvariantError(ValueError):
    """Chern data violating an integrality invariant."""


class WalkCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ChernData:
    r: int
    c1h: int
    c1sq: int
    c2: int

    def __post_init__(self):
        if self.r < 1:
            raise ParameterError(f"rank must be positive, got {self.r}")

    def to_dict(self) -> dict:
        return {"r": str(self.r), "c1h": str(self.c1h), "c1sq": str(self.c1sq), "c2": str(self.c2)}


def line_bundle(L: GramLattice, D: DivisorClass) -> ChernData:
    return ChernData(1, degree(L, D), self_intersection(L, D), 0)


def extension(L: GramLattice, D1: DivisorClass, D2: DivisorClass) -> ChernData:
    """Chern data of an extension of O(D2) by O(D1)."""
    c1 = D1 + D2
    return ChernData(2, degree(L, c1), self_intersection(L, c1), pairing(L, D1, D2))


def riemann_roch_chi(c: ChernData) -> int:
    """Euler characteristic 2r + c1^2/2 - c2 on a K3 surface."""
    if c.c1sq % 2:
        raise InvariantError(f"c1^2 = {c.c1sq} is odd")
    return 2 * c.r + c.c1sq // 2 - c.c2


def twist(c: ChernData, hsq: int, t: int) -> ChernData:
    """Chern data of E(th)."""
    r = c.r
    return ChernData(
        r,
        c.c1h + r * t * hsq,
        c.c1sq + 2 * r * t * c.c1h + r * r * t * t * hsq,
        c.c2 + (r - 1) * t * c.c1h + (r * (r - 1) // 2) * t * t * hsq,
    )


def hilbert_polynomial(c: ChernData, hsq: int, t: int) -> int:
    """chi(E(th)); for Ulrich data on a degree-2a surface this is a*r*(t+1)*(t+2)."""
    return riemann_roch_chi(twist(c, hsq, t))


def slope(c: ChernData) -> Fraction:
    return Fraction(c.c1h, c.r)


def ulrich_numerical_conditions(c: ChernData, a: int) -> bool:
    if a < 2:
        raise ParameterError(f"a must be >= 2, got {a}")
    # c2 = c1^2/2 - 2(a-1)r, compared doubled to stay in integers
    return c.c1h == 3 * a * c.r and 2 * c.c2 == c.c1sq - 4 * (a - 1) * c.r


def ulrich_dual_transform(c: ChernData, a: int) -> ChernData:
    """Chern data of E^dual(3h) on a surface with h^2 = 2a."""
    r, hsq = c.r, 2 * a
    return ChernData(
        r,
        3 * r * hsq - c.c1h,
        9 * r * r * hsq - 6 * r * c.c1h + c.c1sq,
        c.c2 - (r - 1) * 3 * c.c1h + (r * (r - 1) // 2) * 9 * hsq,
    )


# ---------------------------------------------------------------------------
# very ampleness

SAINT_DONAT_QUERIES = (
    ("square0_degree1", 1, 0),
    ("square0_degree2", 2, 0),
    ("root_degree0", 0, -2),
)


@dataclass
class VeryAmpleCertificate:
    params: Tuple[Optional[int], Optional[int]]
    conditions: List[Tuple[str, WitnessSet]]
    h_primitive: bool

    @property
    def passed(self) -> bool:
        return self.h_primitive and all(ws.empty for _, ws in self.conditions)

    def condition(self, name: str) -> WitnessSet:
        return dict(self.conditions)[name]

    def to_certificate(self) -> Certificate:
        subchecks = [
            {"name": name, "passed": ws.empty, "result": ws.to_dict()}
            for name, ws in self.conditions
        ]
        subchecks.append({
            "name": "h_primitive",
            "passed": self.h_primitive,
            "excludes": "E^2 = 2 with h = 2E",
        })
        witnesses = [
            {"condition": name, "class": [str(c) for c in w.coords]}
            for name, ws in self.conditions
            for w in ws.witnesses
        ]
        a, u = self.params
        return Certificate(
            check="very-ample",
            params={"a": a, "u": u},
            verdict="pass" if self.passed else "fail",
            witnesses=witnesses,
            subchecks=subchecks,
        )

    def to_dict(self) -> dict:
        return self.to_certificate().to_dict()


def certify_very_ample(L: GramLattice) -> VeryAmpleCertificate:
    """Check the Saint-Donat conditions at the level of classes.

    No class (effective or not) may have E^2 = 0 with E.h in {1, 2}, or
    E^2 = -2 with E.h = 0; the case h = 2E is ruled out by primitivity of h.
    """
    if L.hsq < 4:
        raise ParameterError(f"h^2 = {L.hsq} < 4")
    conditions = [(name, enumerate_classes(L, d, s)) for name, d, s in SAINT_DONAT_QUERIES]
    return VeryAmpleCertificate(L.params or (None, None), conditions, is_primitive(L, H))


# ---------------------------------------------------------------------------
# reflection walk


class NefWalk(NamedTuple):
    cls: DivisorClass
    trace: List[DivisorClass]
    bounded: bool = True


def nefify(
    L: GramLattice,
    D: DivisorClass,
    radius: Optional[int] = None,
    reference: DivisorClass = H,
    max_steps: int = 1000,
) -> NefWalk:
    """Reflect D into the chamber of ``reference`` by (-2)-reflections.

    A root G counts as effective when reference.G > 0. While some effective
    root with -radius <= D.G <= -1 exists, D is reflected in it (most negative
    D.G first). Each step lowers reference.D by a positive integer, so the walk
    terminates. The result is nef only with respect to roots within the radius.
    """
    if radius is None:
        radius = 6 * L.hsq
    if radius < 1:
        raise ParameterError("radius must be >= 1")
    if self_intersection(L, D) <= 0:
        raise ParameterError("nefify needs a class of positive square")
    if self_intersection(L, reference) <= 0 or pairing(L, D, reference) <= 0:
        raise ParameterError("reference must lie in the positive cone containing D")

    cur = D
    trace: List[DivisorClass] = []
    for _ in range(max_steps):
        root = None
        for d in range(-radius, 0):
            cands = [g for g in enumerate_classes(L, d, -2, polarization=cur)
                     if pairing(L, g, reference) > 0]
            if cands:
                root = cands[0]
                break
        if root is None:
            return NefWalk(cur, trace, True)
        cur = reflect(L, cur, root)
        trace.append(root)
    raise WalkCapExceeded(f"no chamber reached after {max_steps} reflections")


# ---------------------------------------------------------------------------
# Ulrich line bundles


@dataclass
class UlrichLineBundleCertificate:
    cls: DivisorClass
    a: int
    checks: List[dict]

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    @property
    def failed_checks(self) -> List[str]:
        return [c["name"] for c in self.checks if not c["passed"]]

    def chern_data(self, L: GramLattice) -> ChernData:
        return line_bundle(L, self.cls)

    def to_certificate(self) -> Certificate:
        return Certificate(
            check="ulrich-line-bundle",
            params={"a": self.a, "class": [str(c) for c in self.cls.coords], "label": self.cls.label()},
            verdict="pass" if self.passed else "fail",
            witnesses=[],
            subchecks=self.checks,
        )

    def to_dict(self) -> dict:
        return self.to_certificate().to_dict()


def _vanishing_check(L: GramLattice, name: str, E: DivisorClass, a: int, divisible: bool) -> dict:
    # A nonzero section would give a curve of degree a and square -4, hence a
    # (-2)-component of strictly smaller positive degree, impossible when all
    # degrees are multiples of a.
    sq, deg = self_intersection(L, E), degree(L, E)
    return {
        "name": name,
        "class": [str(c) for c in E.coords],
        "self_intersection": str(sq),
        "degree": str(deg),
        "degrees_divisible_by_a": divisible,
        "passed": sq == -4 and deg == a and divisible,
    }


def certify_ulrich_line_bundle(L: GramLattice, D: DivisorClass) -> UlrichLineBundleCertificate:
    if L.params is None:
        raise ParameterError("lattice has no (a, u) parameters")
    a = L.a
    row = L.gram[0]
    divisible = gcd(gcd(row[0], row[1]), row[2]) % a == 0
    sq, deg = self_intersection(L, D), degree(L, D)
    checks = [
        {"name": "square", "value": str(sq), "expected": str(4 * (a - 1)), "passed": sq == 4 * (a - 1)},
        {"name": "degree", "value": str(deg), "expected": str(3 * a), "passed": deg == 3 * a},
        _vanishing_check(L, "h0(D-h)=0", D - H, a, divisible),
        _vanishing_check(L, "h0(2h-D)=0", 2 * H - D, a, divisible),
    ]
    return UlrichLineBundleCertificate(D, a, checks)


def find_ulrich_line_bundles(L: GramLattice) -> List[UlrichLineBundleCertificate]:
    """Certificates for every class with D^2 = 4(a-1) and D.h = 3a, sorted by class."""
    if L.params is None:
        raise ParameterError("lattice has no (a, u) parameters")
    a = L.a
    cands = enumerate_classes(L, 3 * a, 4 * (a - 1))
    return [certify_ulrich_line_bundle(L, D) for D in cands]
