"""Session key and MAC used by the OBU to authenticate the RSU."""

from __future__ import annotations

import hmac

from ..bilinear import BYTES, SCALAR, digest

_MAC_TAG = b"iovauth/v1/MAC\x00"


def identity_hash(params, obu_id: str) -> int:
    return params.hash("H3", (BYTES, obu_id))


def session_key(params, obu_id: str, rsu_id: str) -> int:
    """``key = H4(H3(ID_o), ID_R)``."""
    return params.hash("H4", (SCALAR, identity_hash(params, obu_id)), (BYTES, rsu_id))


def mac(params, key: int, h_id: int) -> bytes:
    G = params.group
    return digest(_MAC_TAG, G.encode_scalar(key), G.encode_scalar(h_id))


def obu_verify_rsu(params, obu_id: str, rsu_id: str, received: bytes) -> bool:
    h_id = identity_hash(params, obu_id)
    expected = mac(params, params.hash("H4", (SCALAR, h_id), (BYTES, rsu_id)), h_id)
    return hmac.compare_digest(expected, bytes(received))
