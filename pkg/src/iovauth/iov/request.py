"""Anonymous service requests: randomized report signing and RSU-side checks."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Any

from ..bilinear import BYTES, G1, U64
from ..clss import SystemParams, h0_of, h1_of
from ..errors import BadSignature, DegenerateChallenge, EncodingError, Replay
from .pseudonym import Pseudonym, make_pseudonym

DEFAULT_DELTA = 300
_MAX_RESAMPLES = 64


@dataclass(frozen=True)
class ServiceRequest:
    T: int
    f: Pseudonym
    sigma: Any
    r: bytes
    r1: bytes
    r2: bytes
    PK1p: Any
    PK2p: Any
    PK3p: Any
    Ppub1p: Any


# wire order and per-field type tag
WIRE_FIELDS = ("T", "f.C1", "f.C2", "sigma", "r", "r1", "r2", "PK1p", "PK2p", "PK3p", "Ppub1p")
_WIRE_KIND = {
    "T": "u64", "f.C1": "g1", "f.C2": "bytes", "sigma": "g1", "r": "bytes", "r1": "scalar",
    "r2": "scalar", "PK1p": "g2", "PK2p": "g1", "PK3p": "g1", "Ppub1p": "g1",
}


def _field(req: ServiceRequest, name: str):
    if name == "f.C1":
        return req.f.C1
    if name == "f.C2":
        return req.f.C2
    return getattr(req, name)


def encode_request(group, req: ServiceRequest) -> bytes:
    out = bytearray()
    for tag, name in enumerate(WIRE_FIELDS, 1):
        kind, value = _WIRE_KIND[name], _field(req, name)
        if kind == "u64":
            body = int(value).to_bytes(8, "big")
        elif kind == "g1":
            body = group.encode_g1(value)
        elif kind == "g2":
            body = group.encode_g2(value)
        else:
            body = bytes(value)
        out.append(tag)
        out += len(body).to_bytes(4, "big") + body
    return bytes(out)


def decode_request(group, data: bytes) -> ServiceRequest:
    pos = 0
    values = {}
    for tag, name in enumerate(WIRE_FIELDS, 1):
        if pos + 5 > len(data):
            raise EncodingError(f"truncated request at byte {pos}")
        if data[pos] != tag:
            raise EncodingError(f"expected field tag {tag} ({name}) at byte {pos}, got {data[pos]}")
        n = int.from_bytes(data[pos + 1:pos + 5], "big")
        body = data[pos + 5:pos + 5 + n]
        if len(body) != n:
            raise EncodingError(f"truncated {name} at byte {pos}")
        kind = _WIRE_KIND[name]
        if kind == "u64":
            if n != 8:
                raise EncodingError("timestamp must be 8 bytes")
            values[name] = int.from_bytes(body, "big")
        elif kind == "g1":
            values[name] = group.decode_g1(body)
        elif kind == "g2":
            values[name] = group.decode_g2(body)
        elif kind == "scalar":
            if n != group.scalar_width:
                raise EncodingError(f"{name} must be {group.scalar_width} bytes")
            values[name] = bytes(body)
        else:
            values[name] = bytes(body)
        pos += 5 + n
    if pos != len(data):
        raise EncodingError(f"{len(data) - pos} trailing bytes after request")
    f = Pseudonym(values.pop("f.C1"), values.pop("f.C2"))
    return ServiceRequest(f=f, **values)


def _xor(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


def h2_of_report(params: SystemParams, report: bytes, T: int, f: Pseudonym, PK2p, PK3p) -> int:
    return params.hash("H2", (BYTES, report), (U64, T), (G1, f.C1), (BYTES, f.C2), (G1, PK2p), (G1, PK3p))


def sign_report(params: SystemParams, keys, enc_pk, report: bytes, T: int, rng) -> ServiceRequest:
    """Build ``Req = (T, f, sigma, r, r1, r2)`` plus the randomized key parts.

    ``keys`` is an :class:`~iovauth.iov.entities.ObuKeyMaterial`.  The
    randomizer t is drawn first, then the pseudonym's ephemeral scalar; t is
    redrawn while the signing denominator ``t^2 (x s_ID + h0 h2)`` is zero.
    """
    G = params.group
    q = G.q
    sk, pk = keys.sk, keys.pk
    h0 = h0_of(params, keys.obu_id, pk.PK1)
    h1 = h1_of(params, keys.obu_id, pk.PK2)
    t = G.random_scalar(rng)
    f = make_pseudonym(G, enc_pk, report, keys.obu_id, rng)
    for _ in range(_MAX_RESAMPLES):
        PK2p = G.g1_mul(t, pk.PK2)
        PK3p = G.g1_mul(t, pk.PK3)
        h2 = h2_of_report(params, report, T, f, PK2p, PK3p)
        denom = t * t * (sk.x * sk.partial.s_id + h0 * h2) % q
        if denom:
            break
        t = G.random_scalar(rng)
    else:
        raise DegenerateChallenge("no usable randomizer after resampling")
    enc_h2 = G.encode_scalar(h2)
    return ServiceRequest(
        T=T,
        f=f,
        sigma=G.g1_mul(G.scalar_inv(denom), G.g1_add(G.P, G.g1_mul(sk.x, params.P_pub1))),
        r=bytes(report),
        r1=_xor(G.encode_scalar(t * h0 % q), enc_h2),
        r2=_xor(G.encode_scalar(t * h1 % q), enc_h2),
        PK1p=G.g2_exp(pk.PK1, t * h0 % q),
        PK2p=PK2p,
        PK3p=PK3p,
        Ppub1p=G.g1_mul(t, params.P_pub1),
    )


def rsu_verify_request(params: SystemParams, req: ServiceRequest, now: int, delta: int = DEFAULT_DELTA):
    """Check freshness and the randomized signature; return ``(t*h0, t*h1)``.

    The accepted equation is ``P_pub2^h0' * PK1' == e(sigma, X')^h0'`` with
    ``X' = h0' PK2' - h1' P_pub1' + h0' h2 PK3'``.
    """
    if abs(now - req.T) > delta:
        raise Replay(f"timestamp {req.T} outside [{now - delta}, {now + delta}]")
    G = params.group
    h2 = h2_of_report(params, req.r, req.T, req.f, req.PK2p, req.PK3p)
    enc_h2 = G.encode_scalar(h2)
    if len(req.r1) != G.scalar_width or len(req.r2) != G.scalar_width:
        raise BadSignature("masked challenge has wrong width")
    try:
        h0p = G.decode_scalar(_xor(req.r1, enc_h2))
        h1p = G.decode_scalar(_xor(req.r2, enc_h2))
    except EncodingError as exc:
        raise BadSignature(f"masked challenge does not decode: {exc}") from None
    if h0p == 0:
        raise BadSignature("recovered t*h0 is zero")
    X = G.g1_sub(G.g1_mul(h0p, req.PK2p), G.g1_mul(h1p, req.Ppub1p))
    X = G.g1_add(X, G.g1_mul(h0p * h2 % G.q, req.PK3p))
    lhs = G.g2_mul(G.g2_exp(params.P_pub2, h0p), req.PK1p)
    if lhs != G.g2_exp(G.pair(req.sigma, X), h0p):
        raise BadSignature("verification equation failed")
    return h0p, h1p


def perturb(group, req: ServiceRequest, name: str) -> ServiceRequest:
    """Return a copy with exactly one wire field changed."""
    if name == "T":
        return replace(req, T=req.T + 1)
    if name == "f.C1":
        return replace(req, f=Pseudonym(group.g1_add(req.f.C1, group.P), req.f.C2))
    if name == "f.C2":
        c2 = bytearray(req.f.C2)
        c2[-1] ^= 0x01
        return replace(req, f=Pseudonym(req.f.C1, bytes(c2)))
    if name in ("r", "r1", "r2"):
        b = bytearray(getattr(req, name))
        if b:
            b[-1] ^= 0x01
        else:
            b = bytearray(b"\x00")
        return replace(req, **{name: bytes(b)})
    if name == "PK1p":
        return replace(req, PK1p=group.g2_mul(req.PK1p, group.g))
    if name in ("sigma", "PK2p", "PK3p", "Ppub1p"):
        return replace(req, **{name: group.g1_add(getattr(req, name), group.P)})
    raise ValueError(f"unknown request field {name!r}")


REQUEST_FIELDS = tuple(f.name for f in fields(ServiceRequest))
