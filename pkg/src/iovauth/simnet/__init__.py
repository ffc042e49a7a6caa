"""Deterministic discrete-event simulation of the vehicle/RSU/TCC/TBA scenario."""

from .adversary import TACTICS, forge_request, inject_adversary
from .engine import RequestRecord, SimEvent, Simulation, Transcript, run_scenario
from .scenario import ACTION_KINDS, VERDICTS, Action, Scenario
from .scenarios import BUILTIN

__all__ = [
    "TACTICS", "forge_request", "inject_adversary", "RequestRecord", "SimEvent", "Simulation",
    "Transcript", "run_scenario", "ACTION_KINDS", "VERDICTS", "Action", "Scenario", "BUILTIN",
]
