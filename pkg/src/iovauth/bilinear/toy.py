"""Insecure toy pairing for exact, hand-checkable arithmetic.

G1 is (Z_q, +) with generator P = 1, G2 is the order-q subgroup of units
mod p generated by g0, and ``e(a, b) = g0^(a*b mod q) mod p``.  Discrete logs
in G1 are trivial, so this backend only exists for tests and worked vectors.
"""

from __future__ import annotations

from ..errors import EncodingError, ParameterError
from .base import BilinearGroup, byte_len

# (q, p, g0)
TINY = (11, 23, 2)
MEDIUM = (18446744073709551557, 110680464442257309343, 64)


def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


class ToyGroup(BilinearGroup):
    backend_id = "toy"

    def __init__(self, q: int, p: int, g0: int):
        self.q = q
        self.p = p
        self.P = 1
        self.g = g0
        self.g1_identity = 0
        self.g2_identity = 1

    @property
    def name(self) -> str:
        for label, triple in (("TINY", TINY), ("MEDIUM", MEDIUM)):
            if triple == (self.q, self.p, self.g):
                return label
        return "custom"

    # G1 = (Z_q, +)
    def is_g1(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.q

    def g1_add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def g1_neg(self, a: int) -> int:
        return (-a) % self.q

    def g1_mul(self, k: int, a: int) -> int:
        return (k * a) % self.q

    # G2 = <g0> in Z_p^*
    def is_g2(self, b) -> bool:
        return isinstance(b, int) and 0 < b < self.p and pow(b, self.q, self.p) == 1

    def g2_mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def g2_exp(self, b: int, k: int) -> int:
        return pow(b, k % self.q, self.p)

    def g2_inv(self, b: int) -> int:
        return pow(b, -1, self.p)

    def pair(self, a: int, b: int) -> int:
        return pow(self.g, (a * b) % self.q, self.p)

    # codecs
    @property
    def g1_width(self) -> int:
        return byte_len(self.q)

    @property
    def g2_width(self) -> int:
        return byte_len(self.p)

    def encode_g1(self, a: int) -> bytes:
        if not self.is_g1(a):
            raise EncodingError("not a G1 element")
        return a.to_bytes(self.g1_width, "big")

    def decode_g1(self, data: bytes) -> int:
        if len(data) != self.g1_width:
            raise EncodingError("bad G1 width")
        a = int.from_bytes(data, "big")
        if a >= self.q:
            raise EncodingError("G1 element not reduced mod q")
        return a

    def encode_g2(self, b: int) -> bytes:
        if not (isinstance(b, int) and 0 < b < self.p):
            raise EncodingError("not a G2 element")
        return b.to_bytes(self.g2_width, "big")

    def decode_g2(self, data: bytes) -> int:
        if len(data) != self.g2_width:
            raise EncodingError("bad G2 width")
        b = int.from_bytes(data, "big")
        if not self.is_g2(b):
            raise EncodingError("value is not in the order-q subgroup")
        return b

    def describe(self) -> dict:
        return {"backend": self.backend_id, "q": self.q, "p": self.p, "g0": self.g}


def toy_setup(q: int, p: int, g0: int) -> ToyGroup:
    """Validate ``(q, p, g0)`` and build the toy group."""
    if not _is_prime(q):
        raise ParameterError(f"q={q} is not prime")
    if not _is_prime(p):
        raise ParameterError(f"p={p} is not prime")
    if (p - 1) % q:
        raise ParameterError(f"q={q} does not divide p-1={p - 1}")
    g0 %= p
    if g0 in (0, 1):
        raise ParameterError("g0 generates the trivial group")
    if pow(g0, q, p) != 1:
        raise ParameterError(f"g0={g0} does not have order q mod p")
    return ToyGroup(q, p, g0)
