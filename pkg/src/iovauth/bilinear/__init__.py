"""Symmetric bilinear group providers.

Two backends share one interface: :class:`ToyGroup` (exact small-number
arithmetic, insecure) and :class:`TypeAGroup` (supersingular curve with a
Tate pairing).
"""

from .base import BYTES, DIGEST, G1, G2, HASH_DOMAINS, SCALAR, U64, BilinearGroup, byte_len, digest
from .oracles import DigestOracle, ScriptedOracle, ScriptedRandom
from .toy import MEDIUM, TINY, ToyGroup, toy_setup
from .typea import TypeAGroup

PARAM_SETS = ("TINY", "MEDIUM", "A160")

_production_cache: dict[str, TypeAGroup] = {}


def group_by_name(name: str) -> BilinearGroup:
    """Look up a named parameter set (TINY, MEDIUM, A160)."""
    key = name.upper()
    if key == "TINY":
        return toy_setup(*TINY)
    if key == "MEDIUM":
        return toy_setup(*MEDIUM)
    if key == "A160":
        # generator search and e(P, P) cost a pairing; build once per process
        if key not in _production_cache:
            _production_cache[key] = TypeAGroup()
        return _production_cache[key]
    raise ValueError(f"unknown parameter set {name!r}; expected one of {PARAM_SETS}")


__all__ = [
    "BYTES", "SCALAR", "G1", "G2", "U64", "HASH_DOMAINS", "DIGEST",
    "BilinearGroup", "ToyGroup", "TypeAGroup", "toy_setup", "group_by_name",
    "TINY", "MEDIUM", "PARAM_SETS", "DigestOracle", "ScriptedOracle",
    "ScriptedRandom", "byte_len", "digest",
]
