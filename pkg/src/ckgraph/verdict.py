from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Value(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Three-valued answer with a JSON-friendly certificate.

    ``condition`` names the graph criterion that decided the answer and
    ``hypotheses`` lists the preconditions that were checked on the way.
    """

    value: Value
    certificate: dict = field(default_factory=dict)
    condition: str = ""
    hypotheses: tuple[str, ...] = ()

    @property
    def yes(self) -> bool:
        return self.value is Value.YES

    @property
    def no(self) -> bool:
        return self.value is Value.NO

    @property
    def unknown(self) -> bool:
        return self.value is Value.UNKNOWN

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value.value,
            "certificate": self.certificate,
            "paper_condition": self.condition,
            "hypotheses": list(self.hypotheses),
        }


def yes(certificate: dict, condition: str, hypotheses=()) -> Verdict:
    return Verdict(Value.YES, certificate, condition, tuple(hypotheses))


def no(certificate: dict, condition: str, hypotheses=()) -> Verdict:
    return Verdict(Value.NO, certificate, condition, tuple(hypotheses))


def unknown(reason: str, condition: str = "", hypotheses=(), **extra) -> Verdict:
    return Verdict(Value.UNKNOWN, {"kind": "refused", "reason": reason, **extra}, condition, tuple(hypotheses))


def path_dict(p) -> dict:
    return {"edges": list(p.edges), "vertices": list(p.vertices)}
