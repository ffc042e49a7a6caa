"""TCC-side registries: legitimate users, revocations, regional epoch keys."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any
from urllib.parse import quote, unquote

from ..errors import EncodingError, EpochError

_RL_HEADER = "# iovauth revocation list"
_LU_HEADER = "# iovauth legitimate user list"


def _parse_version(lines, header):
    if not lines or lines[0] != header:
        raise EncodingError(f"missing header {header!r}")
    if len(lines) < 2 or not lines[1].startswith("version "):
        raise EncodingError("missing version line")
    try:
        return int(lines[1].split(" ", 1)[1])
    except ValueError:
        raise EncodingError("bad version line") from None


@dataclass
class RevocationList:
    """Ls_rb: revoked identity -> evidence reference."""

    entries: dict[str, str] = field(default_factory=dict)
    version: int = 0

    def __contains__(self, identity: str) -> bool:
        return identity in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, identity: str, evidence: str = "") -> bool:
        if identity in self.entries:
            return False
        self.entries[identity] = evidence
        self.version += 1
        return True

    def copy(self) -> "RevocationList":
        return RevocationList(dict(self.entries), self.version)

    def to_text(self) -> str:
        lines = [_RL_HEADER, f"version {self.version}"]
        lines += [f"revoked {quote(i, safe='')} {quote(e, safe='')}" for i, e in self.entries.items()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RevocationList":
        lines = text.splitlines()
        rl = cls(version=_parse_version(lines, _RL_HEADER))
        for n, line in enumerate(lines[2:], 3):
            parts = line.split(" ")
            if len(parts) != 3 or parts[0] != "revoked":
                raise EncodingError(f"line {n}: bad revocation record")
            rl.entries[unquote(parts[1])] = unquote(parts[2])
        return rl


@dataclass(frozen=True)
class LegitEntry:
    PK1: Any
    registered_at: int


@dataclass
class LegitUserList:
    """Ls_lu: registered OBU identity -> (PK1, registration time)."""

    entries: dict[str, LegitEntry] = field(default_factory=dict)
    version: int = 0

    def __contains__(self, identity: str) -> bool:
        return identity in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, identity: str, PK1, registered_at: int) -> None:
        self.entries[identity] = LegitEntry(PK1, registered_at)
        self.version += 1

    def to_text(self, group) -> str:
        lines = [_LU_HEADER, f"version {self.version}"]
        for i, e in self.entries.items():
            lines.append(f"user {quote(i, safe='')} {group.encode_g2(e.PK1).hex()} {e.registered_at}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, group) -> "LegitUserList":
        lines = text.splitlines()
        lu = cls(version=_parse_version(lines, _LU_HEADER))
        for n, line in enumerate(lines[2:], 3):
            parts = line.split(" ")
            if len(parts) != 4 or parts[0] != "user":
                raise EncodingError(f"line {n}: bad user record")
            lu.entries[unquote(parts[1])] = LegitEntry(group.decode_g2(bytes.fromhex(parts[2])), int(parts[3]))
        return lu


@dataclass(frozen=True)
class RegionalKeyEpoch:
    region_id: str
    epoch_index: int
    valid_from: int
    valid_to: int
    enc_pk: Any
    enc_sk: int = field(repr=False)

    def covers(self, t: int) -> bool:
        return self.valid_from <= t < self.valid_to

    def public(self) -> "RegionalKeyEpoch":
        """Copy with the secret scalar stripped (for beacons)."""
        return RegionalKeyEpoch(self.region_id, self.epoch_index, self.valid_from, self.valid_to, self.enc_pk, 0)


class EpochArchive:
    """Per-region, contiguous sequence of epoch key pairs ``[valid_from, valid_to)``."""

    def __init__(self):
        self.regions: dict[str, list[RegionalKeyEpoch]] = {}

    def issue(self, group, region_id: str, valid_from: int, valid_to: int, rng) -> RegionalKeyEpoch:
        if valid_to <= valid_from:
            raise EpochError("empty validity window")
        history = self.regions.setdefault(region_id, [])
        if history:
            last = history[-1]
            if valid_from < last.valid_to:
                raise EpochError(f"window [{valid_from}, {valid_to}) overlaps epoch {last.epoch_index} of {region_id}")
            if valid_from > last.valid_to:
                raise EpochError(f"window starting at {valid_from} leaves a gap after {last.valid_to}")
        sk = group.random_scalar(rng)
        epoch = RegionalKeyEpoch(region_id, len(history), valid_from, valid_to, group.g1_mul(sk, group.P), sk)
        history.append(epoch)
        return epoch

    def lookup(self, region_id: str, t: int) -> RegionalKeyEpoch | None:
        for epoch in self.regions.get(region_id, ()):
            if epoch.covers(t):
                return epoch
        return None

    def get(self, region_id: str, epoch_index: int) -> RegionalKeyEpoch:
        return self.regions[region_id][epoch_index]

    def __iter__(self):
        for history in self.regions.values():
            yield from history

    def to_json(self, group) -> str:
        doc = {}
        for e in self:
            doc[f"{e.region_id}/{e.epoch_index}"] = {
                "region": e.region_id,
                "epoch": e.epoch_index,
                "valid_from": e.valid_from,
                "valid_to": e.valid_to,
                "enc_pk": group.encode_g1(e.enc_pk).hex(),
                "enc_sk": group.encode_scalar(e.enc_sk).hex(),
            }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str, group) -> "EpochArchive":
        archive = cls()
        records = sorted(json.loads(text).values(), key=lambda r: (r["region"], r["epoch"]))
        for r in records:
            history = archive.regions.setdefault(r["region"], [])
            if r["epoch"] != len(history):
                raise EncodingError(f"epoch archive for {r['region']} is not contiguous")
            history.append(RegionalKeyEpoch(
                r["region"], r["epoch"], r["valid_from"], r["valid_to"],
                group.decode_g1(bytes.fromhex(r["enc_pk"])),
                group.decode_scalar(bytes.fromhex(r["enc_sk"])),
            ))
        return archive
