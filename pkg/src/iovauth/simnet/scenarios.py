"""Built-in scenarios used by the test suite and ``iovauth simulate --builtin``."""

from __future__ import annotations

from .adversary import inject_adversary
from .scenario import Action, Scenario


def baseline(seed: int = 1) -> Scenario:
    """1 TCC, 2 regions with one RSU each, 3 OBUs, 5 honest reports."""
    actions = [
        Action(10, "enter", obu="OBU-1", rsu="RSU-A"),
        Action(12, "enter", obu="OBU-2", rsu="RSU-A"),
        Action(15, "enter", obu="OBU-3", rsu="RSU-B"),
        Action(100, "report", obu="OBU-1", label="rep-1", text="ice on bridge", expect="accept"),
        Action(140, "report", obu="OBU-2", label="rep-2", text="congestion km 12", expect="accept"),
        Action(200, "report", obu="OBU-3", label="rep-3", text="lane closed", expect="accept"),
        Action(450, "enter", obu="OBU-1", rsu="RSU-B"),
        Action(480, "report", obu="OBU-1", label="rep-4", text="fog ahead", expect="accept"),
        Action(700, "report", obu="OBU-2", label="rep-5", text="accident cleared", expect="accept"),
    ]
    return Scenario(seed=seed, regions={"R-north": ["RSU-A"], "R-south": ["RSU-B"]},
                    obus=["OBU-1", "OBU-2", "OBU-3"], actions=actions,
                    epoch_length=600, horizon=1200)


def replay(seed: int = 1) -> Scenario:
    sc = baseline(seed)
    sc = inject_adversary(sc, "replay", target="rep-1")
    sc = inject_adversary(sc, "replay", target="rep-3")
    return sc


def malice(seed: int = 1) -> Scenario:
    """OBU-2 sends a false report (rep-3); TBA confirms; later OBU-2 reports are denied."""
    actions = [
        Action(5, "enter", obu="OBU-1", rsu="RSU-A"),
        Action(5, "enter", obu="OBU-2", rsu="RSU-A"),
        Action(5, "enter", obu="OBU-3", rsu="RSU-B"),
        Action(50, "report", obu="OBU-1", label="rep-1", text="clear road", expect="accept"),
        Action(60, "report", obu="OBU-2", label="rep-2", text="slow traffic", expect="accept"),
        Action(70, "report", obu="OBU-2", label="rep-3", text="fake pile-up at exit 4", expect="accept"),
        Action(100, "flag", target="rep-3"),
        Action(150, "report", obu="OBU-2", label="rep-4", text="another report", expect="Denied"),
        Action(160, "report", obu="OBU-1", label="rep-5", text="still clear", expect="accept"),
        Action(400, "enter", obu="OBU-2", rsu="RSU-B"),
        Action(420, "report", obu="OBU-2", label="rep-6", text="moved south", expect="Denied"),
        Action(430, "report", obu="OBU-3", label="rep-7", text="south is fine", expect="accept"),
        Action(700, "report", obu="OBU-2", label="rep-8", text="next epoch", expect="Denied"),
    ]
    return Scenario(seed=seed, regions={"R-north": ["RSU-A"], "R-south": ["RSU-B"]},
                    obus=["OBU-1", "OBU-2", "OBU-3"], actions=actions,
                    epoch_length=600, horizon=1200)


def adversarial(seed: int = 1) -> Scenario:
    """Baseline plus one of each adversary tactic."""
    sc = baseline(seed)
    sc = inject_adversary(sc, "replay", target="rep-2")
    sc = inject_adversary(sc, "tamper-field", target="rep-1", field="sigma")
    sc = inject_adversary(sc, "tamper-field", target="rep-3", field="r")
    sc = inject_adversary(sc, "forge-without-key", rsu="RSU-A", at=300)
    sc = inject_adversary(sc, "cross-epoch-pseudonym", obu="OBU-2", at=650)
    return sc


BUILTIN = {"baseline": baseline, "replay": replay, "malice": malice, "adversarial": adversarial}
