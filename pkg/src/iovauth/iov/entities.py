"""Protocol parties: the transportation control center, RSUs and OBUs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .. import clss
from ..bilinear import BYTES
from ..clss import FullPrivateKey, PartialPrivateKey, PublicKey, SystemParams
from ..errors import (
    AlreadyRegistered, BadPseudonym, DegenerateIdentity, Denied, Revoked,
    UnknownIdentity, UntraceableEpoch,
)
from .pseudonym import open_pseudonym
from .registry import EpochArchive, LegitUserList, RegionalKeyEpoch, RevocationList
from .request import DEFAULT_DELTA, ServiceRequest, rsu_verify_request, sign_report
from .session import identity_hash, mac, obu_verify_rsu, session_key


@dataclass(frozen=True)
class RsuPrivateKey:
    D: Any


@dataclass(frozen=True)
class ObuKeyMaterial:
    obu_id: str
    sk: FullPrivateKey
    pk: PublicKey


@dataclass(frozen=True)
class Beacon:
    """What an RSU broadcasts: who it is and the region's current public key."""

    rsu_id: str
    region_id: str
    epoch_index: int
    enc_pk: Any


@dataclass(frozen=True)
class Evidence:
    """What TBA forwards with a disputed request after confirming malice."""

    region_id: str
    reference: str = ""


@dataclass(frozen=True)
class TbaRecord:
    obu_id: str
    reference: str
    T: int


@dataclass(frozen=True)
class Response:
    obu_id: str
    key: int = field(repr=False)
    mac: bytes


def rsu_key_valid(params: SystemParams, rsu_id: str, key: RsuPrivateKey) -> bool:
    """``e(D_IDR, H3(ID_R) P + P_pub1) == g``."""
    G = params.group
    h3 = params.hash("H3", (BYTES, rsu_id))
    return G.pair(key.D, G.g1_add(G.g1_mul(h3, G.P), params.P_pub1)) == G.g


class Tcc:
    """Trusted authority: KGC, registrar, epoch-key issuer and tracer."""

    def __init__(self, group, rng, oracle=None):
        self.rng = rng
        self.master, self.params = clss.setup(group, rng, oracle)
        self.legit = LegitUserList()
        self.revoked = RevocationList()
        self.epochs = EpochArchive()
        self.rsus: dict[str, str] = {}
        self.tba_log: list[TbaRecord] = []

    @classmethod
    def restore(cls, params: SystemParams, master: clss.MasterKey, rng, legit=None, revoked=None,
                epochs=None) -> "Tcc":
        tcc = cls.__new__(cls)
        tcc.rng = rng
        tcc.master, tcc.params = master, params
        tcc.legit = legit if legit is not None else LegitUserList()
        tcc.revoked = revoked if revoked is not None else RevocationList()
        tcc.epochs = epochs if epochs is not None else EpochArchive()
        tcc.rsus = {}
        tcc.tba_log = []
        return tcc

    @property
    def group(self):
        return self.params.group

    def register_obu(self, obu_id: str, PK1, now: int = 0) -> PartialPrivateKey:
        if obu_id in self.revoked:
            raise Revoked(obu_id)
        if obu_id in self.legit:
            raise AlreadyRegistered(obu_id)
        ppk = clss.extract_partial_key(self.params, self.master, obu_id, PK1, self.rng)
        self.legit.add(obu_id, PK1, now)
        return ppk

    def register_rsu(self, rsu_id: str, region_id: str | None = None) -> RsuPrivateKey:
        G = self.group
        h3 = self.params.hash("H3", (BYTES, rsu_id))
        denom = (h3 + self.master.s) % G.q
        if denom == 0:
            raise DegenerateIdentity(rsu_id)
        if region_id is not None:
            self.rsus[rsu_id] = region_id
        return RsuPrivateKey(G.g1_mul(G.scalar_inv(denom), G.P))

    def issue_regional_epoch(self, region_id: str, valid_from: int, valid_to: int) -> RegionalKeyEpoch:
        return self.epochs.issue(self.group, region_id, valid_from, valid_to, self.rng)

    def track_vehicle(self, req: ServiceRequest, evidence: Evidence) -> str:
        """Reveal the identity behind a disputed request and revoke it."""
        # resolve the serving region from TBA's location evidence, then the
        # epoch from the request timestamp
        epoch = self.epochs.lookup(evidence.region_id, req.T)
        if epoch is None:
            raise UntraceableEpoch(f"no epoch of {evidence.region_id} covers T={req.T}")
        _, obu_id = open_pseudonym(self.group, epoch.enc_sk, req.f)
        if obu_id not in self.legit:
            raise UnknownIdentity(obu_id)
        self.revoked.add(obu_id, evidence.reference)
        self.tba_log.append(TbaRecord(obu_id, evidence.reference, req.T))
        return obu_id


def tcc_init(group, rng, oracle=None) -> Tcc:
    return Tcc(group, rng, oracle)


class Rsu:
    def __init__(self, params: SystemParams, rsu_id: str, region_id: str, key: RsuPrivateKey,
                 revoked: RevocationList | None = None, delta: int = DEFAULT_DELTA):
        self.params = params
        self.rsu_id = rsu_id
        self.region_id = region_id
        self.key = key
        self.revoked = revoked.copy() if revoked is not None else RevocationList()
        self.delta = delta
        self.epochs: dict[int, RegionalKeyEpoch] = {}

    def install_epoch(self, epoch: RegionalKeyEpoch) -> None:
        if epoch.region_id != self.region_id:
            raise ValueError(f"epoch for {epoch.region_id} sent to RSU of {self.region_id}")
        self.epochs[epoch.epoch_index] = epoch

    def sync_revocations(self, rl: RevocationList) -> bool:
        if rl.version > self.revoked.version:
            self.revoked = rl.copy()
            return True
        return False

    def epoch_at(self, t: int) -> RegionalKeyEpoch | None:
        for epoch in self.epochs.values():
            if epoch.covers(t):
                return epoch
        return None

    def beacon(self, now: int) -> Beacon | None:
        epoch = self.epoch_at(now)
        if epoch is None:
            return None
        return Beacon(self.rsu_id, self.region_id, epoch.epoch_index, epoch.enc_pk)

    def verify_request(self, req: ServiceRequest, now: int):
        return rsu_verify_request(self.params, req, now, self.delta)

    def respond(self, req: ServiceRequest) -> Response:
        """Open the pseudonym, enforce revocation, and MAC the identity hash.

        Only the epoch whose window contains ``req.T`` is ever used.
        """
        epoch = self.epoch_at(req.T)
        if epoch is None:
            raise BadPseudonym(f"no epoch key covering T={req.T}")
        report, obu_id = open_pseudonym(self.params.group, epoch.enc_sk, req.f)
        if report != req.r:
            raise BadPseudonym("pseudonym does not bind the submitted report")
        if obu_id in self.revoked:
            raise Denied(obu_id)
        key = session_key(self.params, obu_id, self.rsu_id)
        return Response(obu_id, key, mac(self.params, key, identity_hash(self.params, obu_id)))


def enroll_obu(tcc: Tcc, obu_id: str, rng, now: int = 0) -> ObuKeyMaterial:
    """OBU registration, both sides: secret value, extraction, check, assembly."""
    params = tcc.params
    x, PK1 = clss.set_secret_value(params.group, rng)
    ppk = tcc.register_obu(obu_id, PK1, now)
    if not clss.verify_partial_key(params, obu_id, PK1, ppk):
        raise ValueError(f"partial private key for {obu_id} failed its check")
    sk, pk = clss.assemble_keys(params.group, x, PK1, ppk)
    return ObuKeyMaterial(obu_id, sk, pk)


def enroll_rsu(tcc: Tcc, rsu_id: str, region_id: str, delta: int = DEFAULT_DELTA) -> Rsu:
    key = tcc.register_rsu(rsu_id, region_id)
    if not rsu_key_valid(tcc.params, rsu_id, key):
        raise ValueError(f"RSU key for {rsu_id} failed its check")
    # RSU then fetches the current revocation list
    return Rsu(tcc.params, rsu_id, region_id, key, tcc.revoked, delta)


class Obu:
    def __init__(self, params: SystemParams, keys: ObuKeyMaterial, rng):
        self.params = params
        self.keys = keys
        self.rng = rng
        self.beacon: Beacon | None = None

    @property
    def obu_id(self) -> str:
        return self.keys.obu_id

    def receive_beacon(self, beacon: Beacon) -> None:
        self.beacon = beacon

    def sign_report(self, report: bytes, T: int, enc_pk=None) -> ServiceRequest:
        if enc_pk is None:
            if self.beacon is None:
                raise RuntimeError(f"{self.obu_id} has not heard any RSU beacon")
            enc_pk = self.beacon.enc_pk
        return sign_report(self.params, self.keys, enc_pk, report, T, self.rng)

    def verify_rsu(self, tag: bytes, rsu_id: str | None = None) -> bool:
        rsu_id = rsu_id if rsu_id is not None else self.beacon.rsu_id
        return obu_verify_rsu(self.params, self.obu_id, rsu_id, tag)
