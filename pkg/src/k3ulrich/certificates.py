"""Machine-readable verdicts and their JSON encoding."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List


def encode(obj: Any) -> Any:
    """Recursively convert to JSON-ready data; integers become decimal strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if hasattr(obj, "to_dict"):
        return encode(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, str):
        return obj
    if hasattr(obj, "numerator") and hasattr(obj, "denominator"):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(encode(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass
class Certificate:
    check: str
    params: Dict[str, Any]
    verdict: str
    witnesses: List[Any] = field(default_factory=list)
    subchecks: List[Any] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return encode({
            "check": self.check,
            "params": self.params,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "subchecks": self.subchecks,
        })

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        return cls(
            check=data["check"],
            params=data["params"],
            verdict=data["verdict"],
            witnesses=data["witnesses"],
            subchecks=data["subchecks"],
        )

    def to_json(self) -> str:
        return dumps(self.to_dict())
