"""Verdict and report containers shared by every checker."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .exactnum import INF, format_ext

PASS = "pass"
FAIL = "fail"
UNDECIDED = "undecided"


def _encode(value: Any) -> Any:
    if value is INF or isinstance(value, Fraction):
        return format_ext(value)
    if isinstance(value, bool) or value is None or isinstance(value, (str, float)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return str(value)


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Optional[dict] = None
    note: Optional[str] = None

    @classmethod
    def ok(cls, note: Optional[str] = None) -> "Verdict":
        return cls(PASS, None, note)

    @classmethod
    def fail(cls, witness: dict, note: Optional[str] = None) -> "Verdict":
        return cls(FAIL, witness, note)

    @classmethod
    def undecided(cls, cutoff: int, note: Optional[str] = None) -> "Verdict":
        return cls(UNDECIDED, {"cutoff": cutoff}, note)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"status": self.status}
        if self.witness is not None:
            out["witness"] = _encode(self.witness)
        if self.note is not None:
            out["note"] = self.note
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        if data.get("status") not in (PASS, FAIL, UNDECIDED):
            raise ValueError(f"bad verdict status {data.get('status')!r}")
        return cls(data["status"], data.get("witness"), data.get("note"))


@dataclass
class AxiomReport:
    """Per-axiom verdicts for one subject, in insertion order."""

    subject: str
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    def set(self, axiom: str, verdict: Verdict) -> None:
        self.verdicts[axiom] = verdict

    def __getitem__(self, axiom: str) -> Verdict:
        return self.verdicts[axiom]

    def __contains__(self, axiom: str) -> bool:
        return axiom in self.verdicts

    @property
    def ok(self) -> bool:
        return all(v.passed for v in self.verdicts.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if v.status == FAIL]

    @property
    def undecided(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if v.status == UNDECIDED]

    def merge(self, other: "AxiomReport", prefix: str = "") -> None:
        for k, v in other.verdicts.items():
            self.verdicts[prefix + k] = v

    def to_dict(self) -> dict:
        return {"subject": self.subject,
                "verdicts": {k: v.to_dict() for k, v in self.verdicts.items()}}


@dataclass
class VerificationReport:
    """Top-level, serializable result of a CLI run.

    Timings are kept out of the serialized form unless requested, so that
    identical inputs produce byte-identical reports.
    """

    subject: str
    kind: str
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    provenance: Optional[dict] = None
    timings: dict[str, float] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_axiom_report(cls, report: AxiomReport, kind: str, **kw) -> "VerificationReport":
        return cls(report.subject, kind, dict(report.verdicts), **kw)

    @property
    def ok(self) -> bool:
        return all(v.passed for v in self.verdicts.values())

    def to_dict(self, with_timings: bool = False) -> dict:
        out: dict[str, Any] = {
            "subject": self.subject,
            "kind": self.kind,
            "ok": self.ok,
            "verdicts": {k: v.to_dict() for k, v in self.verdicts.items()},
        }
        if self.provenance is not None:
            out["provenance"] = _encode(self.provenance)
        if self.extra:
            out["extra"] = _encode(self.extra)
        if with_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def to_json(self, with_timings: bool = False) -> str:
        return json.dumps(self.to_dict(with_timings), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        for key in ("subject", "kind", "verdicts"):
            if key not in data:
                raise ValueError(f"report missing {key!r}")
        verdicts = {k: Verdict.from_dict(v) for k, v in data["verdicts"].items()}
        rep = cls(data["subject"], data["kind"], verdicts, data.get("provenance"),
                  dict(data.get("timings", {})), dict(data.get("extra", {})))
        if "ok" in data and data["ok"] != rep.ok:
            raise ValueError("report 'ok' flag disagrees with its verdicts")
        return rep

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))



class AxiomViolation(ValueError):
    """Raised when a transform's input fails its axiom check."""

    def __init__(self, message: str, report: AxiomReport):
        super().__init__(message)
        self.report = report
