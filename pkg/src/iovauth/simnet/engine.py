"""Single-threaded discrete-event loop over TCC, TBA, RSU and OBU entities.

Time is logical integer seconds.  Events at equal times run in insertion
order.  Every entity draws randomness from its own generator seeded from
``(scenario.seed, entity id)``, so transcripts are reproducible bit for bit.
"""

from __future__ import annotations

import heapq
import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Any

from ..bilinear import group_by_name
from ..errors import BadPseudonym, BadSignature, Denied, EncodingError, Replay
from ..iov import (
    Evidence, Obu, Tcc, decode_request, encode_request, enroll_obu, enroll_rsu, perturb,
)
from .adversary import forge_request
from .scenario import VERDICTS, Scenario


@dataclass(order=True)
class SimEvent:
    time: int
    seq: int
    src: str = field(compare=False)
    dst: str = field(compare=False)
    kind: str = field(compare=False)
    payload: Any = field(compare=False, default=None)


@dataclass
class RequestRecord:
    req_id: str
    origin: str
    rsu: str
    label: str | None
    sent_at: int
    expected: str | None = None
    verdict: str | None = None
    mutual_auth: bool | None = None


@dataclass
class Transcript:
    lines: list[str]
    requests: list[RequestRecord]
    tracked: list[str]
    revocation_version: int

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"

    def by_label(self, label: str) -> RequestRecord:
        for r in self.requests:
            if r.label == label and r.origin != "ADV":
                return r
        raise KeyError(label)

    def verdict_counts(self) -> dict[str, int]:
        counts = {v: 0 for v in VERDICTS}
        for r in self.requests:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        return counts

    def mismatches(self) -> list[str]:
        return [r.req_id for r in self.requests if r.expected is not None and r.expected != r.verdict]

    def summary(self) -> dict:
        return {
            "requests": len(self.requests),
            "verdicts": self.verdict_counts(),
            "mutual_auth_ok": sum(1 for r in self.requests if r.mutual_auth),
            "mutual_auth_failed": sum(1 for r in self.requests if r.mutual_auth is False),
            "tracked": list(self.tracked),
            "revocation_version": self.revocation_version,
            "expectation_mismatches": self.mismatches(),
        }

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True) + "\n"


class Simulation:
    def __init__(self, scenario: Scenario):
        scenario.validate()
        self.sc = scenario
        self.group = group_by_name(scenario.params)
        self._queue: list[SimEvent] = []
        self._seq = itertools.count()
        self._req_ids = itertools.count(1)
        self.now = 0
        self.lines: list[str] = []
        self.records: dict[str, RequestRecord] = {}
        self.captured: dict[str, tuple[Any, str]] = {}
        self.heard: dict[str, list] = {o: [] for o in scenario.obus}
        self.location: dict[str, str] = {}
        self.tracked: list[str] = []
        self.adv_rng = self._rng("ADV")

        self.tcc = Tcc(self.group, self._rng("TCC"))
        self.params = self.tcc.params
        self.rsus = {}
        for region, rsus in scenario.regions.items():
            for rsu_id in rsus:
                self.rsus[rsu_id] = enroll_rsu(self.tcc, rsu_id, region, scenario.delta)
                self.log(rsu_id, "TCC", "registration", f"rsu region={region} key_check=ok")
                self.log("TCC", rsu_id, "revocation_sync", f"version={self.tcc.revoked.version}")
        self.obus = {}
        for obu_id in scenario.obus:
            rng = self._rng(obu_id)
            self.obus[obu_id] = Obu(self.params, enroll_obu(self.tcc, obu_id, rng), rng)
            self.log(obu_id, "TCC", "registration", "obu partial_key_check=ok")

        n_epochs = -(-scenario.horizon // scenario.epoch_length)
        for k in range(n_epochs):
            self.push(k * scenario.epoch_length, "TCC", "TCC", "epoch_issue", k)
        for action in sorted(scenario.actions, key=lambda a: a.time):
            self.push(action.time, "SCRIPT", "SCRIPT", "action", action)

    def _rng(self, name: str) -> random.Random:
        return random.Random(f"{self.sc.seed}/{name}")

    def push(self, time: int, src: str, dst: str, kind: str, payload=None) -> None:
        heapq.heappush(self._queue, SimEvent(time, next(self._seq), src, dst, kind, payload))

    def send(self, src: str, dst: str, kind: str, payload=None) -> None:
        self.push(self.now + self.sc.hop_delay, src, dst, kind, payload)

    def log(self, src: str, dst: str, kind: str, detail: str = "") -> None:
        self.lines.append(f"{self.now:>7} {src}->{dst} {kind} {detail}".rstrip())

    def run(self) -> Transcript:
        while self._queue:
            ev = heapq.heappop(self._queue)
            self.now = ev.time
            getattr(self, f"_on_{ev.kind}")(ev)
        return Transcript(self.lines, list(self.records.values()), self.tracked, self.tcc.revoked.version)

    # -- TCC -------------------------------------------------------------

    def _on_epoch_issue(self, ev):
        k = ev.payload
        L = self.sc.epoch_length
        for region, rsus in self.sc.regions.items():
            epoch = self.tcc.issue_regional_epoch(region, k * L, (k + 1) * L)
            self.log("TCC", "TCC", "epoch_issue", f"region={region} epoch={k} window=[{k * L},{(k + 1) * L})")
            for rsu_id in rsus:
                self.send("TCC", rsu_id, "epoch_key", epoch)

    def _on_track(self, ev):
        req, evidence = ev.payload
        before = self.tcc.revoked.version
        obu_id = self.tcc.track_vehicle(req, evidence)
        self.tracked.append(obu_id)
        self.log("TCC", "TCC", "track", f"evidence={evidence.reference} region={evidence.region_id} "
                 f"identity={obu_id} revocation_version={self.tcc.revoked.version}")
        self.send("TCC", "TBA", "tba_notice", obu_id)
        if self.tcc.revoked.version != before:
            for rsu_id in self.rsus:
                self.send("TCC", rsu_id, "revocation_sync", self.tcc.revoked.copy())

    # -- TBA -------------------------------------------------------------

    def _on_track_request(self, ev):
        label, req, region = ev.payload
        # adjudication is scripted: a flag means malice is confirmed
        self.log("PROS", "TBA", "track_request", f"report={label} confirmed=yes")
        self.send("TBA", "TCC", "track", (req, Evidence(region, label)))

    def _on_tba_notice(self, ev):
        self.log("TCC", "TBA", "tba_notice", f"identity={ev.payload} recorded")

    # -- RSU -------------------------------------------------------------

    def _on_epoch_key(self, ev):
        rsu = self.rsus[ev.dst]
        epoch = ev.payload
        rsu.install_epoch(epoch)
        self.log("TCC", ev.dst, "epoch_key", f"epoch={epoch.epoch_index}")
        for obu_id, at in self.location.items():
            if at == ev.dst:
                self._beacon(ev.dst, obu_id)

    def _beacon(self, rsu_id: str, obu_id: str):
        beacon = self.rsus[rsu_id].beacon(self.now)
        if beacon is not None:
            self.send(rsu_id, obu_id, "beacon", beacon)

    def _on_revocation_sync(self, ev):
        changed = self.rsus[ev.dst].sync_revocations(ev.payload)
        self.log("TCC", ev.dst, "revocation_sync", f"version={ev.payload.version} applied={'yes' if changed else 'no'}")

    def _on_req(self, ev):
        req_id, wire = ev.payload
        rec = self.records[req_id]
        rsu = self.rsus[ev.dst]
        verdict, detail = "accept", ""
        try:
            req = decode_request(self.group, wire)
        except EncodingError as exc:
            verdict, detail = "BadSignature", f"malformed: {exc}"
        else:
            try:
                rsu.verify_request(req, self.now)
                resp = rsu.respond(req)
            except (Replay, BadSignature, BadPseudonym, Denied) as exc:
                verdict, detail = type(exc).__name__, str(exc)
        rec.verdict = verdict
        self.log(ev.src, ev.dst, "verdict", f"{req_id} {verdict}" + (f" ({detail})" if detail else ""))
        if verdict == "accept" and rec.origin in self.obus:
            self.send(ev.dst, rec.origin, "mac", (req_id, resp.mac))

    # -- OBU -------------------------------------------------------------

    def _on_beacon(self, ev):
        b = ev.payload
        self.obus[ev.dst].receive_beacon(b)
        self.heard[ev.dst].append(b)
        self.log(ev.src, ev.dst, "beacon", f"region={b.region_id} epoch={b.epoch_index}")

    def _on_mac(self, ev):
        req_id, tag = ev.payload
        ok = self.obus[ev.dst].verify_rsu(tag, ev.src)
        self.records[req_id].mutual_auth = ok
        self.log(ev.src, ev.dst, "mac", f"{req_id} mutual_auth={'ok' if ok else 'FAILED'}")

    # -- scripted actions ------------------------------------------------

    def _on_action(self, ev):
        a = ev.payload
        getattr(self, f"_act_{a.kind}")(a)

    def _submit(self, origin: str, rsu_id: str, req, label, expected) -> None:
        req_id = f"req-{next(self._req_ids)}"
        self.records[req_id] = RequestRecord(req_id, origin, rsu_id, label, self.now, expected)
        self.log(origin, rsu_id, "req", f"{req_id}" + (f" report={label}" if label else ""))
        self.send(origin, rsu_id, "req", (req_id, encode_request(self.group, req)))

    def _act_enter(self, a):
        self.location[a.obu] = a.rsu
        self.log(a.obu, a.rsu, "enter")
        self._beacon(a.rsu, a.obu)

    def _act_report(self, a):
        obu = self.obus[a.obu]
        if obu.beacon is None:
            raise RuntimeError(f"t={self.now}: {a.obu} reports before hearing a beacon")
        req = obu.sign_report(a.text.encode("utf-8"), self.now)
        self.captured[a.label] = (req, obu.beacon.rsu_id)
        self._submit(a.obu, obu.beacon.rsu_id, req, a.label, a.expect)

    def _act_stale_report(self, a):
        obu = self.obus[a.obu]
        current = obu.beacon
        stale = [b for b in self.heard[a.obu]
                 if b.region_id == current.region_id and b.epoch_index < current.epoch_index]
        if not stale:
            raise RuntimeError(f"t={self.now}: {a.obu} holds no beacon from an earlier epoch")
        req = obu.sign_report(a.text.encode("utf-8"), self.now, enc_pk=stale[-1].enc_pk)
        self.captured[a.label] = (req, current.rsu_id)
        self._submit(a.obu, current.rsu_id, req, a.label, a.expect)

    def _act_flag(self, a):
        req, rsu_id = self.captured[a.target]
        self.send("PROS", "TBA", "track_request", (a.target, req, self.rsus[rsu_id].region_id))

    def _act_replay(self, a):
        req, rsu_id = self.captured[a.target]
        self._submit("ADV", a.rsu or rsu_id, req, a.target, a.expect)

    def _act_tamper(self, a):
        req, rsu_id = self.captured[a.target]
        self._submit("ADV", a.rsu or rsu_id, perturb(self.group, req, a.field), a.target, a.expect)

    def _act_forge(self, a):
        beacon = self.rsus[a.rsu].beacon(self.now)
        req = forge_request(self.params, beacon.enc_pk, a.text.encode("utf-8"), self.now, self.adv_rng)
        self._submit("ADV", a.rsu, req, a.label, a.expect)


def run_scenario(scenario: Scenario) -> Transcript:
    return Simulation(scenario).run()
