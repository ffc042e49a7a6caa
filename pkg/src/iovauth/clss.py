"""Certificateless short signature (CLSS).

A key generation center (KGC) holds a master scalar ``s``.  A user picks a
secret value ``x``; the KGC binds the user's identity to ``g^(1/x)`` with a
partial private key ``(R_ID, s_ID)``.  Signing costs two G1 scalar
multiplications and verification one pairing plus three multiplications.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .bilinear import BYTES, G1, G2, DigestOracle
from .errors import DegenerateChallenge, EncodingError, NonInvertible


@dataclass(frozen=True)
class SystemParams:
    group: Any
    P_pub1: Any
    P_pub2: Any
    hash: Callable[..., int] = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if self.hash is None:
            object.__setattr__(self, "hash", DigestOracle(self.group))

    def with_group(self, group) -> "SystemParams":
        """Same keys over a wrapped provider (e.g. an op counter)."""
        return SystemParams(group, self.P_pub1, self.P_pub2, self.hash)

    def with_hash(self, oracle) -> "SystemParams":
        return SystemParams(self.group, self.P_pub1, self.P_pub2, oracle)


@dataclass(frozen=True)
class MasterKey:
    s: int = field(repr=False)


@dataclass(frozen=True)
class PartialPrivateKey:
    R: Any
    s_id: int


@dataclass(frozen=True)
class FullPrivateKey:
    x: int = field(repr=False)
    partial: PartialPrivateKey


@dataclass(frozen=True)
class PublicKey:
    PK1: Any
    PK2: Any
    PK3: Any


@dataclass(frozen=True)
class Signature:
    sigma: Any


def setup(group, rng, oracle=None):
    """KGC setup: draw ``s`` and publish ``P_pub1 = sP``, ``P_pub2 = g^s``."""
    s = group.random_scalar(rng)
    params = SystemParams(group, group.g1_mul(s, group.P), group.g2_exp(group.g, s), oracle)
    return MasterKey(s), params


def set_secret_value(group, rng):
    x = group.random_scalar(rng)
    return x, group.g2_exp(group.g, group.scalar_inv(x))


def h0_of(params: SystemParams, identity: str, PK1) -> int:
    return params.hash("H0", (BYTES, identity), (G2, PK1))


def h1_of(params: SystemParams, identity: str, R) -> int:
    return params.hash("H1", (BYTES, identity), (G1, R))


def h2_of(params: SystemParams, message: bytes, identity: str, PK2, PK3) -> int:
    return params.hash("H2", (BYTES, message), (BYTES, identity), (G1, PK2), (G1, PK3))


def extract_partial_key(params: SystemParams, master: MasterKey, identity: str, PK1, rng) -> PartialPrivateKey:
    if not identity:
        raise ValueError("identity must be nonempty")
    G = params.group
    r_id = G.random_scalar(rng)
    R = G.g1_mul(r_id, G.P)
    h0 = h0_of(params, identity, PK1)
    h1 = h1_of(params, identity, R)
    return PartialPrivateKey(R, (h0 * r_id - h1 * master.s) % G.q)


def verify_partial_key(params: SystemParams, identity: str, PK1, ppk: PartialPrivateKey) -> bool:
    """Check ``H1(ID, R) P_pub1 == H0(ID, PK1) R - s_ID P``."""
    G = params.group
    lhs = G.g1_mul(h1_of(params, identity, ppk.R), params.P_pub1)
    rhs = G.g1_sub(G.g1_mul(h0_of(params, identity, PK1), ppk.R), G.g1_mul(ppk.s_id, G.P))
    return lhs == rhs


def assemble_keys(group, x: int, PK1, ppk: PartialPrivateKey):
    return FullPrivateKey(x, ppk), PublicKey(PK1, ppk.R, group.g1_mul(group.scalar_inv(x), group.P))


def sign(params: SystemParams, sk: FullPrivateKey, identity: str, pk: PublicKey, message: bytes) -> Signature:
    """``sigma = (x s_ID + h0 h2)^-1 (P + x P_pub1)``.

    Deterministic.  Raises :class:`DegenerateChallenge` when the denominator
    vanishes mod q.  The caller is responsible for having checked the
    partial key; doing it here would add multiplications to every signature.
    """
    G = params.group
    h0 = h0_of(params, identity, pk.PK1)
    h2 = h2_of(params, message, identity, pk.PK2, pk.PK3)
    denom = (sk.x * sk.partial.s_id + h0 * h2) % G.q
    if denom == 0:
        raise DegenerateChallenge("x*s_ID + h0*h2 = 0 mod q")
    base = G.g1_add(G.P, G.g1_mul(sk.x, params.P_pub1))
    return Signature(G.g1_mul(G.scalar_inv(denom), base))


def verification_point(params: SystemParams, identity: str, pk: PublicKey, message: bytes):
    """``h0 PK2 - h1 P_pub1 + h0 h2 PK3``, the second pairing argument."""
    G = params.group
    h0 = h0_of(params, identity, pk.PK1)
    h1 = h1_of(params, identity, pk.PK2)
    h2 = h2_of(params, message, identity, pk.PK2, pk.PK3)
    X = G.g1_sub(G.g1_mul(h0, pk.PK2), G.g1_mul(h1, params.P_pub1))
    return G.g1_add(X, G.g1_mul(h0 * h2 % G.q, pk.PK3))


def verify(params: SystemParams, identity: str, pk: PublicKey, message: bytes, sig: Signature) -> bool:
    G = params.group
    try:
        if not (G.is_g1(sig.sigma) and G.is_g1(pk.PK2) and G.is_g1(pk.PK3) and G.is_g2(pk.PK1)):
            return False
        X = verification_point(params, identity, pk, message)
        return G.g2_mul(params.P_pub2, pk.PK1) == G.pair(sig.sigma, X)
    except (EncodingError, NonInvertible, TypeError, ValueError):
        return False


def keygen(params: SystemParams, master: MasterKey, identity: str, rng):
    """Full user enrolment: secret value, extraction, check, assembly."""
    G = params.group
    x, PK1 = set_secret_value(G, rng)
    ppk = extract_partial_key(params, master, identity, PK1, rng)
    if not verify_partial_key(params, identity, PK1, ppk):
        raise ValueError("KGC returned an invalid partial private key")
    return assemble_keys(G, x, PK1, ppk)
