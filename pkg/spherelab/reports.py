"""
Machine-readable reports and payload models.

Every CLI command produces a Report; certificates are carried as their
plain JSON encodings. Dumps use sorted keys so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "schemas"


class Check(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class Report(BaseModel):
    command: str
    arguments: Dict[str, Any] = Field(default_factory=dict)
    digest: str = ""
    counts: Dict[str, int] = Field(default_factory=dict)
    checks: List[Check] = Field(default_factory=list)
    certificates: List[Dict[str, Any]] = Field(default_factory=list)
    frontier: List[str] = Field(default_factory=list)
    data: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name=name, passed=bool(passed), detail=detail))
        return bool(passed)

    def failing(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def dumps(self) -> str:
        return canonical_json(self.model_dump(mode="json"))


class SubgraphPayload(BaseModel):
    """Finite subgraph of the Farey graph with fins."""

    vertices: List[Union[List[int], Dict[str, List[List[int]]]]]
    edges: List[List[int]]


class CertificatePayload(BaseModel):
    model_config = ConfigDict(extra="allow")

    type: str
    edge: List[Any]


class WitnessPayload(BaseModel):
    case: str
    depth: int = Field(ge=0)
    domain: SubgraphPayload
    map: List[List[Any]]
    certificate: CertificatePayload


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def digest(payload: Any) -> str:
    raw = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(raw).hexdigest()


def new_report(command: str, arguments: Optional[Dict[str, Any]] = None) -> Report:
    args = dict(arguments or {})
    return Report(command=command, arguments=args, digest=digest(args))


SCHEMA_MODELS = {
    "report": Report,
    "subgraph": SubgraphPayload,
    "witness": WitnessPayload,
}


def model_schema(name: str) -> Dict[str, Any]:
    return SCHEMA_MODELS[name].model_json_schema()


def shipped_schema(name: str) -> Dict[str, Any]:
    return json.loads((SCHEMA_DIR / f"{name}.json").read_text(encoding="utf-8"))
