"""Exit criteria; each test records one PASS/FAIL line in the terminal summary."""

import random
import time
from fractions import Fraction

import pytest

from k3ulrich import (
    A, B, H, Classification as C, brute_force_oracle, build_k3_lattice,
    certify_very_ample, chern_bounds, delta, delta_a, enumerate_classes,
    find_ulrich_line_bundles, hilbert_polynomial, inertia, is_even, pairing, scan_rank2,
    slope, ulrich_dual_transform, ulrich_numerical_conditions,
)
from k3ulrich.cli import main
from k3ulrich.k3 import line_bundle

from conftest import ACCEPTANCE_LINES


def record(n, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def grid2():
    return [(a, u) for a in range(2, 21) for u in range(4 * a - 2, 5 * a + 3)]


@pytest.fixture(scope="module")
def verified_scan():
    return scan_rank2(range(2, 21), include_lattice_verification=True)


def test_c01_lattice_sweep():
    t0 = time.perf_counter()
    bad = [(a, u) for a in range(2, 51) for u in range(4 * a - 3, 5 * a + 4)
           if not (is_even(build_k3_lattice(a, u)) and inertia(build_k3_lattice(a, u)) == (1, 2, 0))]
    dt = time.perf_counter() - t0
    record(1, "even with inertia (1,2,0) for a in [2,50], u in [4a-3,5a+3]",
           not bad and dt < 5, f"{dt:.2f}s, failures={bad[:3]}")


def test_c02_very_ample():
    t0 = time.perf_counter()
    bad = []
    for a, u in grid2():
        va = certify_very_ample(build_k3_lattice(a, u))
        if not (va.passed and all(ws.exhaustive and ws.empty for _, ws in va.conditions)):
            bad.append((a, u))
    for a in range(2, 21):
        lo = enumerate_classes(build_k3_lattice(a, 4 * a - 3), 0, -2)
        hi = enumerate_classes(build_k3_lattice(a, 5 * a + 3), 0, -2)
        if A - B not in lo or 3 * H - A - B not in hi:
            bad.append(("boundary", a))
    dt = time.perf_counter() - t0
    record(2, "very ample on a in [2,20], u in [4a-2,5a+2]; boundary roots A-B, 3h-A-B",
           not bad and dt < 30, f"{dt:.2f}s, failures={bad[:3]}")


def test_c03_discriminants():
    ok = delta(12) == -11
    ok &= all(delta_a(a, 5 * a + 2) == -4 * (a + 4) for a in range(2, 101))
    ok &= all(delta(u) < 0 for u in range(6, 13))
    ok &= all(delta_a(a, u) < 0 for a in range(2, 101) for u in range(4 * a - 2, 5 * a + 3))
    record(3, "Delta(12) = -11, Delta_a(5a+2) = -4(a+4), both negative on their ranges", ok)


def test_c04_ulrich_line_bundles():
    bad = []
    for a, u in grid2():
        L = build_k3_lattice(a, u)
        ok = {c.cls for c in find_ulrich_line_bundles(L) if c.passed}
        if not ({A, B, 3 * H - A, 3 * H - B} <= ok and pairing(L, A, B) == u
                and pairing(L, B, 3 * H - A) == 9 * a - u):
            bad.append((a, u))
    record(4, "A, B, 3h-A, 3h-B certified Ulrich; AB = u; B(3h-A) = 9a-u", not bad, f"failures={bad[:3]}")


def test_c05_oracle_equivalence():
    rng = random.Random(20240501)
    t0 = time.perf_counter()
    bad = []
    nonempty = 0
    for _ in range(200):
        a = rng.randint(2, 10)
        u = rng.randint(4 * a - 3, 5 * a + 3)
        L = build_k3_lattice(a, u)
        if rng.random() < 0.5:
            d, s = rng.choice([(1, 0), (2, 0), (0, -2), (3 * a, 4 * (a - 1)), (0, 0)])
        else:
            d = a * rng.randint(-4, 4)
            s = 2 * rng.randint(-6, 2 * a)
        ws = enumerate_classes(L, d, s)
        radius = 2 * max([1] + [max(abs(lo), abs(hi)) for lo, hi in ws.search_bound])
        if set(brute_force_oracle(L, d, s, radius)) != set(ws.witnesses) or not ws.exhaustive:
            bad.append((a, u, d, s))
        nonempty += bool(ws.witnesses)
    dt = time.perf_counter() - t0
    record(5, "enumerate == brute force (radius 2x box) on 200 random queries",
           not bad and dt < 60, f"{dt:.2f}s, {nonempty} nonempty, failures={bad[:3]}")


def test_c06_chern_bounds():
    bad = []
    for a in range(2, 51):
        for r in range(1, 7):
            rep = chern_bounds(a, r)
            exp_excl = (Fraction(9 * a * r * r, 2) - 2,) if r % 2 == 0 else ()
            if (rep.lower != 4 * (a - 1) * r * r or rep.upper != Fraction(9 * a * r * r, 2)
                    or tuple(Fraction(v) for v in rep.excluded) != exp_excl
                    or rep.simple_lower != (4 * a - 2) * r * r - 2):
                bad.append((a, r))
            if r == 2 and (rep.lower, rep.upper, rep.excluded) != (16 * (a - 1), 18 * a, (18 * a - 2,)):
                bad.append((a, r, "rank2"))
    record(6, "Chern bounds for a in [2,50], r in [1,6]", not bad, f"failures={bad[:3]}")


def test_c07_classification(verified_scan):
    bad = []
    for a in range(2, 21):
        rows = {r.u: r for r in verified_scan.rows_for(a)}
        by = {}
        for r in rows.values():
            by.setdefault(r.classification, []).append(r.u)
        ss = rows[4 * a - 1]
        ok = (by.get(C.EXCLUDED) == [5 * a + 3] and by.get(C.SPECIAL) == [5 * a + 4]
              and by.get(C.IMPOSSIBLE) == [4 * a - 3] and by.get(C.DECOMPOSABLE_ONLY) == [4 * a - 2]
              and by.get(C.STRICTLY_SEMISTABLE_GENERAL) == [4 * a - 1]
              and (ss.c1sq, ss.c2, ss.moduli_dim) == (16 * a - 10, 4 * a - 1, 0)
              and by.get(C.STABLE_EXISTS) == list(range(4 * a, 5 * a + 3)))
        for u in range(4 * a, 5 * a + 3):
            r = rows[u]
            ok &= r.moduli_dim == 2 * u - 8 * a + 2 > r.strict_ss_stratum_dim == u - 4 * a + 1
        if not ok:
            bad.append(a)
    bad += [f["a"] for f in verified_scan.failures]
    record(7, "rank-2 classification for a in [2,20]", not bad, f"failures={bad[:3]}")


def _certified_chern_data(scan):
    out = []
    for row in scan.rows:
        if row.verification is None:
            continue
        L = build_k3_lattice(row.a, row.u)
        certified = [c.cls for c in row.verification.line_bundles if c.passed]
        out += [(row.a, line_bundle(L, D)) for D in certified]
        out.append((row.a, row.chern_data()))
    return out


def test_c08_hilbert_polynomial(verified_scan):
    data = _certified_chern_data(verified_scan)
    bad = [(a, c) for a, c in data
           if any(hilbert_polynomial(c, 2 * a, t) != a * c.r * (t + 1) * (t + 2) for t in range(-5, 6))
           or slope(c) != 3 * a]
    record(8, "chi(E(th)) = a r (t+1)(t+2) for t in [-5,5], slope 3a",
           bool(data) and not bad, f"{len(data)} Chern data, failures={bad[:2]}")


def test_c09_duality(verified_scan):
    data = _certified_chern_data(verified_scan) + [(r.a, r.chern_data()) for r in verified_scan.rows]
    bad = []
    for a, c in data:
        d = ulrich_dual_transform(c, a)
        if not (ulrich_numerical_conditions(c, a) and ulrich_numerical_conditions(d, a)
                and (d.c1sq, d.c2) == (c.c1sq, c.c2) and ulrich_dual_transform(d, a) == c):
            bad.append((a, c))
    record(9, "dual transform preserves Ulrich conditions, fixes (c1^2, c2), involutive",
           not bad, f"{len(data)} Chern data, failures={bad[:2]}")


def test_c10_determinism(tmp_path):
    p1, p8 = tmp_path / "jobs1.json", tmp_path / "jobs8.json"
    codes = (main(["scan", "--a", "2", "10", "--verify", "--jobs", "1", "--out", str(p1)]),
             main(["scan", "--a", "2", "10", "--verify", "--jobs", "8", "--out", str(p8)]))
    c1, c8 = (tmp_path / "jobs1.csv"), (tmp_path / "jobs8.csv")
    main(["scan", "--a", "2", "10", "--verify", "--jobs", "1", "--format", "csv", "--out", str(c1)])
    main(["scan", "--a", "2", "10", "--verify", "--jobs", "8", "--format", "csv", "--out", str(c8)])
    ok = codes == (0, 0) and p1.read_bytes() == p8.read_bytes() and c1.read_bytes() == c8.read_bytes()
    record(10, "scan --jobs 8 byte-identical to --jobs 1 on a in [2,10]", ok)
