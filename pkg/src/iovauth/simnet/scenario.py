"""Scenario description: roster, regions, epoch schedule and scripted actions."""

from __future__ import annotations

import copy
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ..bilinear import PARAM_SETS
from ..errors import ScenarioError
from ..iov.request import WIRE_FIELDS

ACTION_KINDS = ("enter", "report", "stale_report", "flag", "replay", "tamper", "forge")
VERDICTS = ("accept", "Replay", "BadSignature", "BadPseudonym", "Denied")


@dataclass
class Action:
    time: int
    kind: str
    obu: str | None = None
    rsu: str | None = None
    label: str | None = None
    text: str = ""
    target: str | None = None
    field: str | None = None
    expect: str | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v not in (None, "")}


@dataclass
class Scenario:
    seed: int
    regions: dict[str, list[str]]
    obus: list[str]
    actions: list[Action] = field(default_factory=list)
    params: str = "MEDIUM"
    delta: int = 300
    epoch_length: int = 600
    horizon: int = 3600
    hop_delay: int = 0

    def rsu_region(self) -> dict[str, str]:
        return {rsu: region for region, rsus in self.regions.items() for rsu in rsus}

    def validate(self) -> None:
        if self.params.upper() not in PARAM_SETS:
            raise ScenarioError(f"unknown parameter set {self.params!r}")
        for name in ("delta", "epoch_length", "horizon"):
            if getattr(self, name) <= 0:
                raise ScenarioError(f"{name} must be positive")
        if self.hop_delay < 0:
            raise ScenarioError("hop_delay must be nonnegative")
        if not self.regions:
            raise ScenarioError("scenario declares no regions")
        seen_rsu = set()
        for region, rsus in self.regions.items():
            if not rsus:
                raise ScenarioError(f"region {region!r} has no RSU")
            for rsu in rsus:
                if rsu in seen_rsu:
                    raise ScenarioError(f"RSU {rsu!r} appears in more than one region")
                seen_rsu.add(rsu)
        if len(set(self.obus)) != len(self.obus):
            raise ScenarioError("duplicate OBU identity")
        reserved = {"TCC", "TBA", "ADV", "PROS"}
        if reserved & (seen_rsu | set(self.obus)) or seen_rsu & set(self.obus):
            raise ScenarioError("entity identities must be distinct and not reserved")
        labels: dict[str, int] = {}
        for i, a in enumerate(self.actions):
            where = f"action {i} ({a.kind} at t={a.time})"
            if a.kind not in ACTION_KINDS:
                raise ScenarioError(f"{where}: unknown kind")
            if not 0 <= a.time < self.horizon:
                raise ScenarioError(f"{where}: time outside [0, horizon)")
            if a.expect is not None and a.expect not in VERDICTS:
                raise ScenarioError(f"{where}: unknown expected verdict {a.expect!r}")
            if a.kind in ("enter", "report", "stale_report") and a.obu not in self.obus:
                raise ScenarioError(f"{where}: undeclared OBU {a.obu!r}")
            if a.rsu is not None and a.rsu not in seen_rsu:
                raise ScenarioError(f"{where}: undeclared RSU {a.rsu!r}")
            if a.kind in ("enter", "forge") and a.rsu is None:
                raise ScenarioError(f"{where}: needs an RSU")
            if a.kind in ("report", "stale_report"):
                if not a.label or a.label in labels:
                    raise ScenarioError(f"{where}: report label missing or reused")
                labels[a.label] = a.time
            if a.kind in ("flag", "replay", "tamper"):
                if a.target not in labels or labels[a.target] > a.time:
                    raise ScenarioError(f"{where}: target {a.target!r} is not an earlier report")
            if a.kind == "tamper" and a.field not in WIRE_FIELDS:
                raise ScenarioError(f"{where}: unknown request field {a.field!r}")

    def copy(self) -> "Scenario":
        return copy.deepcopy(self)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed, "params": self.params, "delta": self.delta,
            "epoch_length": self.epoch_length, "horizon": self.horizon, "hop_delay": self.hop_delay,
            "regions": self.regions, "obus": self.obus,
            "actions": [a.to_dict() for a in self.actions],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "Scenario":
        try:
            actions = [Action(**a) for a in doc.get("actions", [])]
            sc = cls(
                seed=int(doc["seed"]), regions={k: list(v) for k, v in doc["regions"].items()},
                obus=list(doc["obus"]), actions=actions,
                **{k: doc[k] for k in ("params", "delta", "epoch_length", "horizon", "hop_delay") if k in doc},
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ScenarioError(f"malformed scenario: {exc}") from None
        sc.validate()
        return sc

    @classmethod
    def load(cls, path) -> "Scenario":
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"{path}: {exc}") from None
        return cls.from_dict(doc)
