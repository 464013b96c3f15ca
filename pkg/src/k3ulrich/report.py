"""Grid scans over (a, u) and their CSV/JSON serializations."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

from . import __version__
from .certificates import dumps, encode
from .rank2 import Classification, Rank2Row, classify_u, verify_row

CSV_COLUMNS = (
    "a", "u", "c1sq", "c2", "ext_dim", "moduli_dim", "stratum_dim",
    "classification", "certificate_ref",
)


@dataclass
class ScanReport:
    version: str
    grid: Dict
    rows: List[Rank2Row]
    failures: List[Dict] = field(default_factory=list)

    @property
    def summary(self) -> Dict[str, int]:
        counts = Counter(r.classification.value for r in self.rows)
        return {c.value: counts.get(c.value, 0) for c in Classification}

    def rows_for(self, a: int) -> List[Rank2Row]:
        return [r for r in self.rows if r.a == a]

    def to_dict(self) -> dict:
        return encode({
            "tool_version": self.version,
            "grid": self.grid,
            "rows": [r.to_dict() for r in self.rows],
            "summary": self.summary,
            "failures": self.failures,
        })

    @classmethod
    def from_dict(cls, data: dict) -> "ScanReport":
        grid = {k: (int(v) if k in ("a_min", "a_max") else v) for k, v in data["grid"].items()}
        return cls(
            version=data["tool_version"],
            grid=grid,
            rows=[Rank2Row.from_dict(r) for r in data["rows"]],
            failures=data["failures"],
        )

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ScanReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([
                r.a, r.u, r.c1sq, r.c2, r.ext_dim, r.moduli_dim,
                r.strict_ss_stratum_dim, r.classification.value, r.certificate_ref,
            ])
        return buf.getvalue()


def u_range(a: int) -> range:
    return range(4 * a - 3, 5 * a + 5)


def _row(task: Tuple[int, int, bool]):
    a, u, verify = task
    row = classify_u(a, u)
    failure = None
    if verify and 4 * a - 2 <= u <= 5 * a + 2:
        try:
            row.verification = verify_row(a, u)
            if not row.verification.passed:
                failure = {"a": a, "u": u, "error": "lattice pipeline failed"}
        except Exception as exc:  # recorded per row; the scan continues
            failure = {"a": a, "u": u, "error": f"{type(exc).__name__}: {exc}"}
    return row, failure


def scan_rank2(a_range: Iterable[int], include_lattice_verification: bool = False,
               jobs: int = 1) -> ScanReport:
    """Classify every u in [4a-3, 5a+4] for each a, optionally with lattice certificates."""
    a_values = sorted(set(a_range))
    if not a_values or a_values[0] < 2:
        raise ValueError("a_range must be non-empty with a >= 2")
    tasks = [(a, u, include_lattice_verification) for a in a_values for u in u_range(a)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_row, tasks, chunksize=4))
    else:
        results = [_row(t) for t in tasks]
    results.sort(key=lambda rf: rf[0].key)
    rows = [r for r, _ in results]
    failures = [f for _, f in results if f is not None]
    grid = {
        "a_min": a_values[0],
        "a_max": a_values[-1],
        "u_range": "4a-3..5a+4",
        "verify": include_lattice_verification,
    }
    return ScanReport(__version__, grid, rows, failures)
