"""One-time pseudonyms: hashed ElGamal over G1 of ``len(r) || r || ID_o``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..errors import BadPseudonym, EncodingError

_KDF_LABEL = b"pseudonym"


@dataclass(frozen=True)
class Pseudonym:
    C1: Any
    C2: bytes


def _mask(group, shared, length: int) -> bytes:
    return group.kdf(_KDF_LABEL, group.encode_g1(shared), length)


def _xor(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


def make_pseudonym(group, enc_pk, report: bytes, obu_id: str, rng) -> Pseudonym:
    u = group.random_scalar(rng)
    plain = len(report).to_bytes(4, "big") + report + obu_id.encode("utf-8")
    shared = group.g1_mul(u, enc_pk)
    return Pseudonym(group.g1_mul(u, group.P), _xor(plain, _mask(group, shared, len(plain))))


def open_pseudonym(group, enc_sk: int, f: Pseudonym) -> tuple[bytes, str]:
    """Decrypt to ``(report, obu_id)``; framing errors raise BadPseudonym."""
    try:
        shared = group.g1_mul(enc_sk, f.C1)
        plain = _xor(f.C2, _mask(group, shared, len(f.C2)))
    except (EncodingError, TypeError) as exc:
        raise BadPseudonym(f"cannot decrypt pseudonym: {exc}") from None
    if len(plain) < 4:
        raise BadPseudonym("pseudonym too short")
    n = int.from_bytes(plain[:4], "big")
    if 4 + n >= len(plain):
        raise BadPseudonym("length framing inconsistent")
    try:
        obu_id = plain[4 + n:].decode("utf-8")
    except UnicodeDecodeError:
        raise BadPseudonym("identity is not valid UTF-8") from None
    return plain[4:4 + n], obu_id
