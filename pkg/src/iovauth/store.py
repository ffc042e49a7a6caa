"""Plain-file state directory used by the CLI.

Layout::

    params.json        public group parameters and P_pub
    master.json        TCC master secret
    legit.txt          legitimate user list (line records)
    revoked.txt        revocation list (line records)
    epochs.json        regional epoch archive
    rsu/<id>.json      RSU private key and region
    obu/<id>.json      OBU key material

Group elements are hex-encoded canonical bytes.  Writes are atomic.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from pathlib import Path
from urllib.parse import quote

from .bilinear import ToyGroup, group_by_name, toy_setup
from .clss import FullPrivateKey, MasterKey, PartialPrivateKey, PublicKey, SystemParams
from .errors import EncodingError, IovError
from .iov import EpochArchive, LegitUserList, ObuKeyMaterial, RevocationList, RsuPrivateKey

_HEX = re.compile(r"[0-9a-fA-F]*")


class MissingState(IovError, FileNotFoundError):
    pass


def atomic_write(path: Path, data: bytes | str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    raw = data.encode() if isinstance(data, str) else data
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(raw)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def parse_hex(text: str, what: str = "hex field") -> bytes:
    """Decode hex, reporting the byte offset of the first bad character."""
    text = text.strip()
    m = _HEX.match(text)
    if m.end() != len(text):
        raise EncodingError(f"{what}: invalid hex digit at byte offset {m.end() // 2}")
    if len(text) % 2:
        raise EncodingError(f"{what}: odd number of hex digits (byte offset {len(text) // 2})")
    return bytes.fromhex(text)


def group_from_record(rec: dict):
    name = rec["params"]
    if name == "custom":
        return toy_setup(int(rec["q"]), int(rec["p"]), int(rec["g0"]))
    return group_by_name(name)


def group_record(group) -> dict:
    rec = {"backend": group.backend_id, "params": getattr(group, "name", "custom")}
    if isinstance(group, ToyGroup):
        rec.update(q=str(group.q), p=str(group.p), g0=str(group.g))
    else:
        rec.update(q=str(group.q), h=str(group.h))
    return rec


class StateDir:
    def __init__(self, root):
        self.root = Path(root)

    def path(self, *parts) -> Path:
        return self.root.joinpath(*parts)

    def _read(self, *parts) -> str:
        p = self.path(*parts)
        if not p.exists():
            raise MissingState(f"missing state file: {p}")
        return p.read_text()

    def _json(self, *parts) -> dict:
        try:
            return json.loads(self._read(*parts))
        except json.JSONDecodeError as exc:
            raise EncodingError(f"{self.path(*parts)}: {exc}") from None

    @staticmethod
    def _dump(doc) -> str:
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    # params / master

    def save_params(self, params: SystemParams) -> None:
        G = params.group
        rec = group_record(G)
        rec["P_pub1"] = G.encode_g1(params.P_pub1).hex()
        rec["P_pub2"] = G.encode_g2(params.P_pub2).hex()
        atomic_write(self.path("params.json"), self._dump(rec))

    def load_params(self) -> SystemParams:
        rec = self._json("params.json")
        G = group_from_record(rec)
        return SystemParams(G, G.decode_g1(parse_hex(rec["P_pub1"], "P_pub1")),
                            G.decode_g2(parse_hex(rec["P_pub2"], "P_pub2")))

    def save_master(self, params: SystemParams, master: MasterKey) -> None:
        atomic_write(self.path("master.json"), self._dump({"s": params.group.encode_scalar(master.s).hex()}))

    def load_master(self, params: SystemParams) -> MasterKey:
        rec = self._json("master.json")
        return MasterKey(params.group.decode_scalar(parse_hex(rec["s"], "master s")))

    # lists

    def load_legit(self, group) -> LegitUserList:
        p = self.path("legit.txt")
        return LegitUserList.from_text(p.read_text(), group) if p.exists() else LegitUserList()

    def save_legit(self, group, lu: LegitUserList) -> None:
        atomic_write(self.path("legit.txt"), lu.to_text(group))

    def load_revoked(self) -> RevocationList:
        p = self.path("revoked.txt")
        return RevocationList.from_text(p.read_text()) if p.exists() else RevocationList()

    def save_revoked(self, rl: RevocationList) -> None:
        atomic_write(self.path("revoked.txt"), rl.to_text())

    def load_epochs(self, group) -> EpochArchive:
        p = self.path("epochs.json")
        return EpochArchive.from_json(p.read_text(), group) if p.exists() else EpochArchive()

    def save_epochs(self, group, archive: EpochArchive) -> None:
        atomic_write(self.path("epochs.json"), archive.to_json(group))

    # RSU / OBU keys

    def save_rsu(self, group, rsu_id: str, region: str, key: RsuPrivateKey) -> None:
        rec = {"id": rsu_id, "region": region, "D": group.encode_g1(key.D).hex()}
        atomic_write(self.path("rsu", quote(rsu_id, safe="") + ".json"), self._dump(rec))

    def load_rsu(self, group, rsu_id: str) -> tuple[str, RsuPrivateKey]:
        rec = self._json("rsu", quote(rsu_id, safe="") + ".json")
        return rec["region"], RsuPrivateKey(group.decode_g1(parse_hex(rec["D"], "D_IDR")))

    def rsu_ids(self) -> list[str]:
        d = self.path("rsu")
        return sorted(json.loads(p.read_text())["id"] for p in d.glob("*.json")) if d.exists() else []

    def save_obu(self, group, keys: ObuKeyMaterial) -> None:
        rec = {
            "id": keys.obu_id,
            "x": group.encode_scalar(keys.sk.x).hex(),
            "R": group.encode_g1(keys.sk.partial.R).hex(),
            "s_id": group.encode_scalar(keys.sk.partial.s_id).hex(),
            "PK1": group.encode_g2(keys.pk.PK1).hex(),
            "PK2": group.encode_g1(keys.pk.PK2).hex(),
            "PK3": group.encode_g1(keys.pk.PK3).hex(),
        }
        atomic_write(self.path("obu", quote(keys.obu_id, safe="") + ".json"), self._dump(rec))

    def load_obu(self, group, obu_id: str) -> ObuKeyMaterial:
        rec = self._json("obu", quote(obu_id, safe="") + ".json")
        h = {k: parse_hex(rec[k], f"{obu_id}.{k}") for k in ("x", "R", "s_id", "PK1", "PK2", "PK3")}
        ppk = PartialPrivateKey(group.decode_g1(h["R"]), group.decode_scalar(h["s_id"]))
        sk = FullPrivateKey(group.decode_scalar(h["x"]), ppk)
        pk = PublicKey(group.decode_g2(h["PK1"]), group.decode_g1(h["PK2"]), group.decode_g1(h["PK3"]))
        return ObuKeyMaterial(rec["id"], sk, pk)
