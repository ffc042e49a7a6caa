"""Anonymous mutual authentication between vehicles (OBUs) and RSUs."""

from .entities import (
    Beacon, Evidence, Obu, ObuKeyMaterial, Response, Rsu, RsuPrivateKey, TbaRecord, Tcc,
    enroll_obu, enroll_rsu, rsu_key_valid, tcc_init,
)
from .pseudonym import Pseudonym, make_pseudonym, open_pseudonym
from .registry import EpochArchive, LegitEntry, LegitUserList, RegionalKeyEpoch, RevocationList
from .request import (
    DEFAULT_DELTA, WIRE_FIELDS, ServiceRequest, decode_request, encode_request, h2_of_report,
    perturb, rsu_verify_request, sign_report,
)
from .session import identity_hash, mac, obu_verify_rsu, session_key

__all__ = [
    "Beacon", "Evidence", "Obu", "ObuKeyMaterial", "Response", "Rsu", "RsuPrivateKey",
    "TbaRecord", "Tcc", "enroll_obu", "enroll_rsu", "rsu_key_valid", "tcc_init",
    "Pseudonym", "make_pseudonym", "open_pseudonym", "EpochArchive", "LegitEntry",
    "LegitUserList", "RegionalKeyEpoch", "RevocationList", "DEFAULT_DELTA", "WIRE_FIELDS",
    "ServiceRequest", "decode_request", "encode_request", "h2_of_report", "perturb",
    "rsu_verify_request", "sign_report", "identity_hash", "mac", "obu_verify_rsu", "session_key",
]
