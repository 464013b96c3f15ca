"""Chern-class bounds and the rank-2 existence/stability classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .certificates import Certificate
from .k3 import (
    ChernData,
    UlrichLineBundleCertificate,
    VeryAmpleCertificate,
    certify_very_ample,
    extension,
    find_ulrich_line_bundles,
)
from .lattice import A, B, H, ParameterError, build_k3_lattice, pairing


@dataclass(frozen=True)
class BoundReport:
    a: int
    r: int
    lower: int
    upper: Fraction
    simple_lower: int
    excluded: tuple
    even_only: bool = True
    # upper bound attained iff c1 = 3rh/2
    equality_condition: str = "c1 = 3rh/2"

    @property
    def upper_is_integer(self) -> bool:
        return self.upper.denominator == 1

    def admissible(self) -> List[int]:
        """Even values of c1^2 allowed by the bounds and exclusions."""
        hi = self.upper.__floor__()
        start = self.lower + (self.lower % 2)
        return [v for v in range(start, hi + 1, 2) if v not in self.excluded]

    def admissible_simple(self) -> List[int]:
        return [v for v in self.admissible() if v >= self.simple_lower]

    def to_dict(self) -> dict:
        return {
            "a": str(self.a),
            "r": str(self.r),
            "lower": str(self.lower),
            "upper": str(self.upper),
            "upper_is_integer": self.upper_is_integer,
            "simple_lower": str(self.simple_lower),
            "excluded": [str(v) for v in self.excluded],
            "even_only": self.even_only,
            "equality_condition": self.equality_condition,
        }


def chern_bounds(a: int, r: int) -> BoundReport:
    if a < 2:
        raise ParameterError(f"a must be >= 2, got {a}")
    if r < 1:
        raise ParameterError(f"r must be >= 1, got {r}")
    upper = Fraction(9 * a * r * r, 2)
    excluded = ()
    if r % 2 == 0:
        # 9ar^2/2 is then an even integer; one below it is a (-2)-class on h^perp
        excluded = (int(upper) - 2,)
    return BoundReport(
        a=a,
        r=r,
        lower=4 * (a - 1) * r * r,
        upper=upper,
        simple_lower=(4 * a - 2) * r * r - 2,
        excluded=excluded,
    )


def bogomolov_check(c: ChernData, a: int) -> bool:
    return c.c1sq >= 4 * (a - 1) * c.r * c.r


def hodge_index_check(c: ChernData, a: int) -> bool:
    return c.c1sq * 2 * a <= c.c1h * c.c1h


class Classification(str, enum.Enum):
    IMPOSSIBLE = "IMPOSSIBLE"
    DECOMPOSABLE_ONLY = "DECOMPOSABLE_ONLY"
    STRICTLY_SEMISTABLE_GENERAL = "STRICTLY_SEMISTABLE_GENERAL"
    STABLE_EXISTS = "STABLE_EXISTS"
    SPECIAL = "SPECIAL"
    EXCLUDED = "EXCLUDED"


@dataclass(frozen=True)
class ModuliDimensions:
    moduli_dim: int
    strict_ss_stratum_dim: int
    ext_dim: int
    vacuous: bool = False

    def __iter__(self):
        return iter((self.moduli_dim, self.strict_ss_stratum_dim, self.ext_dim))


def moduli_dimensions(a: int, u: int) -> ModuliDimensions:
    """Mukai dimension 2u-8a+2, strict-semistable stratum bound u-4a+1, h^1(A-B) = u-4a+2."""
    return ModuliDimensions(2 * u - 8 * a + 2, u - 4 * a + 1, u - 4 * a + 2, vacuous=u < 4 * a - 1)


@dataclass
class RowVerification:
    """Lattice pipeline attached to a rank-2 row in the constructive range."""

    very_ample: VeryAmpleCertificate
    line_bundles: List[UlrichLineBundleCertificate]
    certificate: Certificate

    @property
    def passed(self) -> bool:
        return self.certificate.passed

    def to_dict(self) -> dict:
        out = self.certificate.to_dict()
        out["very_ample"] = self.very_ample.to_dict()
        out["line_bundles"] = [c.to_dict() for c in self.line_bundles]
        return out


@dataclass
class Rank2Row:
    a: int
    u: int
    c1sq: int
    c2: int
    ext_dim: int
    moduli_dim: int
    strict_ss_stratum_dim: int
    classification: Classification
    reason: str = ""
    verification: Optional[RowVerification] = None
    verification_dict: Optional[dict] = None

    @property
    def key(self):
        return (self.a, self.u)

    @property
    def certificate_ref(self) -> str:
        if self.verification is None and self.verification_dict is None:
            return ""
        return f"a{self.a}-u{self.u}"

    def chern_data(self) -> ChernData:
        return ChernData(2, 6 * self.a, self.c1sq, self.c2)

    def to_dict(self) -> dict:
        out = {
            "a": str(self.a),
            "u": str(self.u),
            "c1sq": str(self.c1sq),
            "c2": str(self.c2),
            "ext_dim": str(self.ext_dim),
            "moduli_dim": str(self.moduli_dim),
            "stratum_dim": str(self.strict_ss_stratum_dim),
            "classification": self.classification.value,
            "reason": self.reason,
            "certificate_ref": self.certificate_ref,
        }
        if self.verification is not None:
            out["certificate"] = self.verification.to_dict()
        elif self.verification_dict is not None:
            out["certificate"] = self.verification_dict
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Rank2Row":
        return cls(
            a=int(data["a"]),
            u=int(data["u"]),
            c1sq=int(data["c1sq"]),
            c2=int(data["c2"]),
            ext_dim=int(data["ext_dim"]),
            moduli_dim=int(data["moduli_dim"]),
            strict_ss_stratum_dim=int(data["stratum_dim"]),
            classification=Classification(data["classification"]),
            reason=data["reason"],
            verification_dict=data.get("certificate"),
        )


def _classify(a: int, u: int):
    c1sq = 8 * a - 8 + 2 * u
    bounds = chern_bounds(a, 2)
    if c1sq < bounds.lower:
        return Classification.IMPOSSIBLE, "violates Bogomolov bound c1^2 >= 16(a-1)"
    if c1sq > bounds.upper:
        return Classification.IMPOSSIBLE, "violates Hodge index bound c1^2 <= 18a"
    if c1sq < bounds.simple_lower and u != 4 * a - 3 and u != 4 * a - 2:
        return Classification.IMPOSSIBLE, "below simple bound c1^2 >= 16a-10: not simple, hence decomposable with AB = u"
    if u == 4 * a - 3:
        return Classification.IMPOSSIBLE, "(A-B)^2 = -2 with (A-B)h = 0 contradicts ampleness of h"
    if u == 4 * a - 2:
        return Classification.DECOMPOSABLE_ONLY, "below simple bound; only O(A)+O(B) with AB = 4a-2"
    if u == 4 * a - 1:
        return Classification.STRICTLY_SEMISTABLE_GENERAL, "moduli space is finite; contains a strictly semistable point"
    if u <= 5 * a + 2:
        return Classification.STABLE_EXISTS, "moduli smooth of dimension 2u-8a+2 > strictly semistable stratum"
    if u == 5 * a + 3:
        return Classification.EXCLUDED, "c1^2 = 18a-2 is excluded"
    return Classification.SPECIAL, "c1 = 3h (special); formula-backed, outside the rank-3 construction"


def classify_u(a: int, u: int) -> Rank2Row:
    if a < 2:
        raise ParameterError(f"a must be >= 2, got {a}")
    dims = moduli_dimensions(a, u)
    cls, reason = _classify(a, u)
    return Rank2Row(
        a=a,
        u=u,
        c1sq=8 * a - 8 + 2 * u,
        c2=u,
        ext_dim=dims.ext_dim,
        moduli_dim=dims.moduli_dim,
        strict_ss_stratum_dim=dims.strict_ss_stratum_dim,
        classification=cls,
        reason=reason,
    )


def verify_row(a: int, u: int) -> RowVerification:
    """Build the lattice for (a, u) and run very-ampleness and Ulrich certification."""
    L = build_k3_lattice(a, u)
    va = certify_very_ample(L)
    lines = find_ulrich_line_bundles(L)
    certified = [c.cls for c in lines if c.passed]
    sub = [
        {"name": "very_ample", "passed": va.passed},
        {"name": "pairing_AB", "value": str(pairing(L, A, B)), "passed": pairing(L, A, B) == u},
    ]
    need = [A, B, 3 * H - A, 3 * H - B]
    sub.append({
        "name": "ulrich_A_B_3h-A_3h-B",
        "passed": all(D in certified for D in need),
        "certified": [D.label() for D in certified],
    })
    if u >= 4 * a - 1:
        ext = -2 - pairing(L, A - B, A - B) // 2
        sub.append({"name": "h1(A-B)>=1", "value": str(ext), "passed": ext == u - 4 * a + 2 and ext >= 1})
    btwo = pairing(L, B, 3 * H - A)
    sub.append({"name": "B.(3h-A)=9a-u", "value": str(btwo), "passed": btwo == 9 * a - u})
    if 4 * a - 1 <= u <= (9 * a) // 2:
        # non-split extensions between certified Ulrich line bundles D1, D2 need h^1(D1-D2) >= 1
        values = sorted({
            extension(L, D1, D2).c1sq
            for i, D1 in enumerate(certified)
            for D2 in certified[i + 1:]
            if pairing(L, D1, D2) - 4 * a + 2 >= 1
        })
        expected = {18 * a, 8 * a - 8 + 2 * u, 26 * a - 8 - 2 * u}
        sub.append({
            "name": "triple_c1sq",
            "values": [str(v) for v in values],
            "expected": sorted(str(v) for v in expected),
            "passed": expected <= set(values),
        })
    ok = all(s["passed"] for s in sub)
    cert = Certificate(
        check="lattice-pipeline",
        params={"a": a, "u": u},
        verdict="pass" if ok else "fail",
        witnesses=[D.label() for D in certified],
        subchecks=sub,
    )
    return RowVerification(va, lines, cert)
