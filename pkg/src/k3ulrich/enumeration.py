"""Exhaustive enumeration of classes with prescribed degree and square.

On a lattice of signature (1, 2) with a polarization p of positive square,
the slice {E : E.p = d} is a coset of p^perp, which is negative definite.
Eliminating one coordinate turns E^2 = s into an integral conic in the two
remaining coordinates whose real points form a bounded ellipse, so the
solutions are confined to an explicit integer box.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, List, Optional, Tuple

from .certificates import Certificate
from .lattice import (
    H,
    DivisorClass,
    GramLattice,
    InertiaSignature,
    ParameterError,
    inertia,
    pairing,
)

HYPERBOLIC = InertiaSignature(1, 2, 0)


class IllPosedQueryError(ValueError):
    """The slice is not cut by a definite form; the solution set may be infinite."""


@dataclass(frozen=True)
class Congruence:
    """Integrality condition coeffs . (free coords) == rhs (mod modulus)."""

    coeffs: Tuple[int, int]
    rhs: int
    modulus: int

    def holds(self, f0: int, f1: int) -> bool:
        return (self.coeffs[0] * f0 + self.coeffs[1] * f1 - self.rhs) % self.modulus == 0

    def describe(self, names=("x", "y")) -> str:
        return (
            f"{self.coeffs[0]}*{names[0]} + {self.coeffs[1]}*{names[1]}"
            f" == {self.rhs} (mod {self.modulus})"
        )


@dataclass(frozen=True)
class RestrictedForm:
    """E^2 on the slice E.p = d as a rational polynomial in two free coordinates.

    ``coeffs`` maps monomial names ("xx", "xy", "yy", "x", "y", "1") to exact
    rationals; ``eliminated`` is the basis index solved for, and
    ``solve`` gives it as (constant, coefficient of first free, coefficient of
    second free). ``congruence`` is None when the slice is empty.
    """

    d: int
    eliminated: int
    free: Tuple[int, int]
    coeffs: Dict[str, Fraction]
    solve: Tuple[Fraction, Fraction, Fraction]
    congruence: Optional[Congruence]

    @property
    def empty(self) -> bool:
        return self.congruence is None

    def __call__(self, f0, f1) -> Fraction:
        c = self.coeffs
        return (
            c["xx"] * f0 * f0 + c["xy"] * f0 * f1 + c["yy"] * f1 * f1
            + c["x"] * f0 + c["y"] * f1 + c["1"]
        )

    def lift(self, f0: int, f1: int) -> DivisorClass:
        k0, k1, k2 = self.solve
        val = k0 + k1 * f0 + k2 * f1
        if val.denominator != 1:
            raise ValueError(f"({f0}, {f1}) violates {self.congruence}")
        coords = [0, 0, 0]
        coords[self.eliminated] = int(val)
        coords[self.free[0]] = f0
        coords[self.free[1]] = f1
        return DivisorClass(tuple(coords))


@dataclass(frozen=True)
class WitnessSet:
    d: int
    s: int
    witnesses: Tuple[DivisorClass, ...]
    search_bound: Tuple[Tuple[int, int], ...]
    exhaustive: bool = True
    polarization: DivisorClass = H
    note: str = ""

    def __len__(self):
        return len(self.witnesses)

    def __iter__(self):
        return iter(self.witnesses)

    def __contains__(self, D):
        return D in self.witnesses

    @property
    def empty(self) -> bool:
        return not self.witnesses

    def to_dict(self) -> dict:
        out = {
            "d": str(self.d),
            "s": str(self.s),
            "witnesses": [[str(c) for c in w.coords] for w in self.witnesses],
            "box": [[str(lo), str(hi)] for lo, hi in self.search_bound],
            "exhaustive": self.exhaustive,
        }
        if self.polarization != H:
            out["polarization"] = [str(c) for c in self.polarization.coords]
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "WitnessSet":
        return cls(
            d=int(data["d"]),
            s=int(data["s"]),
            witnesses=tuple(DivisorClass(tuple(int(c) for c in w)) for w in data["witnesses"]),
            search_bound=tuple((int(lo), int(hi)) for lo, hi in data["box"]),
            exhaustive=bool(data["exhaustive"]),
            polarization=DivisorClass(tuple(int(c) for c in data.get("polarization", (1, 0, 0)))),
            note=data.get("note", ""),
        )


def _linear_form(L: GramLattice, p: DivisorClass) -> Tuple[int, int, int]:
    """Coefficients c with E.p = c . coords(E)."""
    return tuple(pairing(L, DivisorClass(tuple(int(i == k) for i in range(3))), p) for k in range(3))


def restricted_form_coefficients(
    L: GramLattice, d: int, polarization: DivisorClass = H
) -> RestrictedForm:
    """Eliminate one coordinate from E.p = d and express E^2 in the other two.

    The first coordinate with a nonzero coefficient in E.p is eliminated, so
    for the polarization h this is z and the free coordinates are (x, y).
    """
    c = _linear_form(L, polarization)
    k = next((i for i in range(3) if c[i] != 0), None)
    if k is None:
        raise IllPosedQueryError("polarization is orthogonal to the whole lattice")
    free = tuple(i for i in range(3) if i != k)
    ck = c[k]
    # coords[k] = (d - c[f0] f0 - c[f1] f1) / ck
    solve = (Fraction(d, ck), Fraction(-c[free[0]], ck), Fraction(-c[free[1]], ck))

    # E = e_k * coords[k] + e_f0 * f0 + e_f1 * f1; write E as affine in (f0, f1)
    # with rational vectors v0 (constant), v1, v2.
    v0 = [Fraction(0)] * 3
    v1 = [Fraction(0)] * 3
    v2 = [Fraction(0)] * 3
    v0[k], v1[k], v2[k] = solve
    v1[free[0]] = Fraction(1)
    v2[free[1]] = Fraction(1)
    g = L.gram

    def bil(v, w):
        return sum(v[i] * g[i][j] * w[j] for i in range(3) for j in range(3))

    coeffs = {
        "xx": bil(v1, v1),
        "xy": 2 * bil(v1, v2),
        "yy": bil(v2, v2),
        "x": 2 * bil(v0, v1),
        "y": 2 * bil(v0, v2),
        "1": bil(v0, v0),
    }

    m = gcd(gcd(ck, c[free[0]]), c[free[1]])
    if d % m:
        congruence = None
    else:
        congruence = Congruence((c[free[0]] // m, c[free[1]] // m), d // m, abs(ck) // m)
    return RestrictedForm(d, k, free, coeffs, solve, congruence)


def _to_integer_poly(form: RestrictedForm, s: int):
    """Scale E^2 - s by a positive integer so all coefficients are integral."""
    terms = [form.coeffs[m] for m in ("xx", "xy", "yy", "x", "y")] + [form.coeffs["1"] - s]
    den = 1
    for t in terms:
        den = den * t.denominator // gcd(den, t.denominator)
    return tuple(int(t * den) for t in terms)


def _interval(q2: int, q1: int, q0: int) -> Optional[Tuple[int, int]]:
    """Integer interval containing all real t with q2 t^2 + q1 t + q0 >= 0, for q2 < 0.

    Rounded outward; None when the quadratic is negative everywhere.
    """
    disc = q1 * q1 - 4 * q2 * q0
    if disc < 0:
        return None
    r = isqrt(disc)
    if r * r != disc:
        r += 1
    den = -2 * q2
    # roots are (q1 -+ sqrt(disc)) / den
    lo = (q1 - r) // den
    hi = -((-(q1 + r)) // den)
    return lo, hi


def _check_query(L: GramLattice, polarization: DivisorClass) -> None:
    sig = inertia(L)
    if sig != HYPERBOLIC:
        raise IllPosedQueryError(f"lattice inertia {tuple(sig)} is not (1, 2, 0)")
    psq = pairing(L, polarization, polarization)
    if psq <= 0:
        raise IllPosedQueryError(f"polarization has square {psq} <= 0")


def enumerate_classes(
    L: GramLattice, d: int, s: int, polarization: DivisorClass = H
) -> WitnessSet:
    """All classes E with E.p = d and E^2 = s, with the box that bounds them."""
    _check_query(L, polarization)
    form = restricted_form_coefficients(L, d, polarization)
    if form.empty:
        return WitnessSet(d, s, (), (), True, polarization,
                          note="slice empty: degree not attained by any class")

    # N(f0, f1) = P xx^2 + Q xy + R yy^2 + S x + T y + U = 0, P, R < 0, Q^2 < 4PR
    P, Q, R, S, T, U = _to_integer_poly(form, s)
    # For fixed f0 the equation is quadratic in f1 with discriminant
    # (Q f0 + T)^2 - 4 R (P f0^2 + S f0 + U), itself a concave quadratic in f0.
    ix = _interval(Q * Q - 4 * P * R, 2 * Q * T - 4 * R * S, T * T - 4 * R * U)
    iy = _interval(Q * Q - 4 * P * R, 2 * Q * S - 4 * P * T, S * S - 4 * P * U)
    note = (
        f"E^2 - s scaled to {P}x^2{Q:+d}xy{R:+d}y^2{S:+d}x{T:+d}y{U:+d} with "
        f"{Q}^2 - 4*{P}*{R} < 0; real solutions require a nonnegative "
        "discriminant in each free coordinate"
    )
    if ix is None or iy is None:
        return WitnessSet(d, s, (), (), True, polarization,
                          note="below the form's range: " + note)

    found = []
    for f0 in range(ix[0], ix[1] + 1):
        a2, a1, a0 = R, Q * f0 + T, P * f0 * f0 + S * f0 + U
        disc = a1 * a1 - 4 * a2 * a0
        if disc < 0:
            continue
        r = isqrt(disc)
        if r * r != disc:
            continue
        for num in {-a1 + r, -a1 - r}:
            if num % (2 * a2):
                continue
            f1 = num // (2 * a2)
            if form.congruence.holds(f0, f1):
                found.append(form.lift(f0, f1))

    # box in basis order: eliminated coordinate bounded by interval arithmetic
    k0, k1, k2 = form.solve
    corners = [k0 + k1 * p + k2 * q for p in ix for q in iy]
    box = [None, None, None]
    box[form.free[0]] = ix
    box[form.free[1]] = iy
    box[form.eliminated] = (
        min(int(c.__floor__()) for c in corners),
        max(int(c.__ceil__()) for c in corners),
    )
    found.sort(key=lambda D: D.coords)
    return WitnessSet(d, s, tuple(found), tuple(box), True, polarization, note=note)


def brute_force_oracle(
    L: GramLattice, d: int, s: int, box_radius: int, polarization: DivisorClass = H
) -> List[DivisorClass]:
    """Naive scan of [-box_radius, box_radius]^3; test oracle for enumerate_classes."""
    if box_radius < 1:
        raise ParameterError("box_radius must be >= 1")
    c = _linear_form(L, polarization)
    g = L.gram
    out = []
    rng = range(-box_radius, box_radius + 1)
    for v in itertools.product(rng, rng, rng):
        if c[0] * v[0] + c[1] * v[1] + c[2] * v[2] != d:
            continue
        sq = sum(v[i] * g[i][j] * v[j] for i in range(3) for j in range(3))
        if sq == s:
            out.append(DivisorClass(v))
    return out


def delta(u: int) -> int:
    """Discriminant for the degree-2 conic at a = 2."""
    return u * u - 18 * u + 61


def delta_a(a: int, u: int) -> int:
    """Discriminant for the (-2)-class conic on h^perp."""
    return 4 * u * u - 36 * a * u + 80 * a * a - 12 * a - 32


def discriminant_certificate(a: int, u_range=None) -> Certificate:
    """Certify negativity and symmetry of both conic discriminants over a u-range.

    The default range is 4a-2 <= u <= 5a+2. The degree-2 discriminant is only
    relevant at a = 2 and is checked there over the same range.
    """
    if a < 2:
        raise ParameterError(f"a must be >= 2, got {a}")
    if u_range is None:
        u_range = range(4 * a - 2, 5 * a + 3)
    us = list(u_range)
    subchecks = []
    witnesses = []

    vals = {u: delta_a(a, u) for u in us}
    bad = [u for u, v in vals.items() if v >= 0]
    subchecks.append({
        "name": "delta_a_negative",
        "passed": not bad,
        "max": str(max(vals.values())) if vals else None,
        "argmax": str(max(vals, key=vals.get)) if vals else None,
        "failures": [str(u) for u in bad],
    })
    witnesses += [{"delta_a_nonnegative_at": str(u)} for u in bad]

    closed = delta_a(a, 5 * a + 2)
    subchecks.append({
        "name": "delta_a_at_5a+2",
        "passed": closed == -4 * (a + 4),
        "value": str(closed),
        "expected": str(-4 * (a + 4)),
    })

    # symmetry about 9a/2 on the doubled grid: w = 2u, center 9a
    def delta_a_doubled(w):  # 4 * delta_a(a, w/2), exact for odd w
        return 4 * w * w - 72 * a * w + 4 * (80 * a * a - 12 * a - 32)

    sym_ok = all(delta_a_doubled(9 * a + t) == delta_a_doubled(9 * a - t) for t in range(0, 2 * a + 8))
    subchecks.append({"name": "delta_a_symmetric_about_9a/2", "passed": sym_ok})

    if a == 2:
        dv = {u: delta(u) for u in us}
        bad2 = [u for u, v in dv.items() if v >= 0]
        subchecks.append({
            "name": "delta_negative",
            "passed": not bad2,
            "max": str(max(dv.values())) if dv else None,
            "argmax": str(max(dv, key=dv.get)) if dv else None,
            "failures": [str(u) for u in bad2],
        })
        witnesses += [{"delta_nonnegative_at": str(u)} for u in bad2]
        subchecks.append({
            "name": "delta_at_12",
            "passed": delta(12) == -11,
            "value": str(delta(12)),
        })
        subchecks.append({
            "name": "delta_symmetric_about_9",
            "passed": all(delta(9 + t) == delta(9 - t) for t in range(0, 20)),
        })

    ok = all(sc["passed"] for sc in subchecks)
    return Certificate(
        check="discriminants",
        params={"a": a, "u_min": us[0] if us else None, "u_max": us[-1] if us else None},
        verdict="pass" if ok else "fail",
        witnesses=witnesses,
        subchecks=subchecks,
    )
