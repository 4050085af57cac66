"""Machine-readable records of checked claims."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

VERDICTS = ("verified", "falsified", "divergence", "error")


_FIELDS = {"claim", "inputs", "inputs_digest", "steps", "data", "verdict", "witness", "notes", "elapsed_ms"}


class Timer:
    def __init__(self):
        self.start = time.perf_counter()

    def ms(self) -> float:
        return round((time.perf_counter() - self.start) * 1000.0, 3)


def digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class Certificate:
    claim: str
    verdict: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    steps: List[Any] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    witness: Optional[Dict[str, Any]] = None
    notes: List[str] = field(default_factory=list)
    elapsed_ms: float = 0.0
    # schema-level fields serialized at the top level (e.g. chart, rounds, survivors)
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def ok(self) -> bool:
        return self.verdict == "verified"

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "claim": self.claim,
            "inputs": self.inputs,
            "inputs_digest": digest(self.inputs),
            "steps": self.steps,
            "data": self.data,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        if self.notes:
            d["notes"] = self.notes
        for k, v in self.extra.items():
            if k in d or k == "elapsed_ms":
                raise ValueError(f"extra field {k!r} collides with a certificate field")
            d[k] = v
        if timing:
            d["elapsed_ms"] = self.elapsed_ms
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(
            claim=d["claim"],
            verdict=d["verdict"],
            inputs=d.get("inputs", {}),
            steps=d.get("steps", []),
            data=d.get("data", {}),
            witness=d.get("witness"),
            notes=d.get("notes", []),
            elapsed_ms=d.get("elapsed_ms", 0.0),
            extra={k: v for k, v in d.items() if k not in _FIELDS},
        )

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)
