"""Adversarial tactics: replay, field tampering, keyless forgery, stale epochs."""

from __future__ import annotations

from ..iov.pseudonym import make_pseudonym
from ..iov.request import ServiceRequest, h2_of_report
from .scenario import Action, Scenario

TACTICS = ("replay", "tamper-field", "forge-without-key", "cross-epoch-pseudonym")


def _xor(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


def forge_request(params, enc_pk, report: bytes, T: int, rng, claimed_id: str = "OBU-X") -> ServiceRequest:
    """Request built from public data only: random sigma and key parts,
    masked challenges consistent with the recomputed h2."""
    G = params.group

    def rand_g1():
        return G.g1_mul(G.random_scalar(rng), G.P)

    f = make_pseudonym(G, enc_pk, report, claimed_id, rng)
    PK2p, PK3p = rand_g1(), rand_g1()
    h2 = h2_of_report(params, report, T, f, PK2p, PK3p)
    enc_h2 = G.encode_scalar(h2)
    return ServiceRequest(
        T=T, f=f, sigma=rand_g1(), r=bytes(report),
        r1=_xor(G.encode_scalar(G.random_scalar(rng)), enc_h2),
        r2=_xor(G.encode_scalar(G.random_scalar(rng)), enc_h2),
        PK1p=G.g2_exp(G.g, G.random_scalar(rng)), PK2p=PK2p, PK3p=PK3p, Ppub1p=rand_g1(),
    )


def _report_action(scenario: Scenario, label: str) -> Action:
    for a in scenario.actions:
        if a.kind in ("report", "stale_report") and a.label == label:
            return a
    raise KeyError(f"no report labelled {label!r}")


def inject_adversary(scenario: Scenario, tactic: str, *, target: str | None = None, at: int | None = None,
                     field: str = "sigma", obu: str | None = None, rsu: str | None = None) -> Scenario:
    """Return a copy of ``scenario`` with one adversarial action and its expected verdict.

    ``replay`` fires after ``T + delta`` unless ``at`` is given, since a copy
    presented inside the freshness window is indistinguishable from the original.
    """
    sc = scenario.copy()
    if tactic == "replay":
        orig = _report_action(sc, target)
        when = at if at is not None else orig.time + sc.delta + 1
        action = Action(when, "replay", rsu=rsu, target=target, expect="Replay")
    elif tactic == "tamper-field":
        orig = _report_action(sc, target)
        when = at if at is not None else orig.time + 1
        action = Action(when, "tamper", rsu=rsu, target=target, field=field, expect="BadSignature")
    elif tactic == "forge-without-key":
        if rsu is None:
            rsu = next(iter(sc.rsu_region()))
        when = at if at is not None else 1
        action = Action(when, "forge", rsu=rsu, label=None, text="forged report", expect="BadSignature")
    elif tactic == "cross-epoch-pseudonym":
        if obu is None:
            raise ValueError("cross-epoch-pseudonym needs the OBU that holds a stale beacon")
        when = at if at is not None else sc.epoch_length + 1
        n = sum(1 for a in sc.actions if a.kind == "stale_report")
        action = Action(when, "stale_report", obu=obu, label=f"stale-{n + 1}", text="stale epoch report",
                        expect="BadPseudonym")
    else:
        raise ValueError(f"unknown tactic {tactic!r}; expected one of {TACTICS}")
    sc.actions.append(action)
    sc.actions.sort(key=lambda a: a.time)
    sc.validate()
    return sc
