"""Backend-independent part of a symmetric bilinear group provider.

Scalars are plain ``int`` values in ``[0, q)``.  Group elements are whatever
the concrete backend uses (``int`` for the toy backend, tuples for the curve
backend); callers only touch them through the provider's methods.
"""

from __future__ import annotations

import hashlib

from ..errors import EncodingError, NonInvertible

# Hash input type tags.
BYTES = 0x01
SCALAR = 0x02
G1 = 0x03
G2 = 0x04
U64 = 0x05

HASH_DOMAINS = ("H0", "H1", "H2", "H3", "H4")
DIGEST = hashlib.sha512
_PREFIX = b"iovauth/v1/"


def byte_len(n: int) -> int:
    return max(1, (n.bit_length() + 7) // 8)


def digest(*chunks: bytes) -> bytes:
    h = DIGEST()
    for c in chunks:
        h.update(c)
    return h.digest()


class BilinearGroup:
    """Common scalar arithmetic, encodings and hashing.

    Subclasses provide ``P``, ``g``, ``g1_identity``, ``g2_identity`` and the
    element operations ``g1_add``, ``g1_neg``, ``g1_mul``, ``g2_mul``,
    ``g2_exp``, ``pair`` plus the element codecs.
    """

    backend_id = "abstract"
    q: int

    # -- scalars ---------------------------------------------------------

    def scalar_add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def scalar_sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def scalar_mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def scalar_neg(self, a: int) -> int:
        return (-a) % self.q

    def scalar_inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise NonInvertible("zero has no inverse mod q")
        return pow(a, -1, self.q)

    def random_scalar(self, rng) -> int:
        """Uniform draw from [1, q) using ``rng.randrange``."""
        k = rng.randrange(1, self.q)
        if not 0 < k < self.q:
            raise ValueError(f"randomness source returned {k} outside [1, q)")
        return k

    @property
    def scalar_width(self) -> int:
        return byte_len(self.q)

    def encode_scalar(self, k: int) -> bytes:
        if not 0 <= k < self.q:
            raise EncodingError("scalar out of range")
        return k.to_bytes(self.scalar_width, "big")

    def decode_scalar(self, data: bytes) -> int:
        if len(data) != self.scalar_width:
            raise EncodingError("bad scalar width")
        k = int.from_bytes(data, "big")
        if k >= self.q:
            raise EncodingError("scalar not reduced mod q")
        return k

    # -- hashing ---------------------------------------------------------

    def encode_hash_input(self, items) -> bytes:
        """Canonical, type-tagged serialization of ``(tag, value)`` pairs."""
        out = bytearray()
        for tag, value in items:
            out.append(tag)
            if tag == BYTES:
                if isinstance(value, str):
                    value = value.encode("utf-8")
                out += len(value).to_bytes(4, "big") + bytes(value)
            elif tag == SCALAR:
                out += self.encode_scalar(value % self.q)
            elif tag == G1:
                out += self.encode_g1(value)
            elif tag == G2:
                out += self.encode_g2(value)
            elif tag == U64:
                out += int(value).to_bytes(8, "big")
            else:
                raise ValueError(f"unknown hash input tag {tag!r}")
        return bytes(out)

    def hash_to_scalar(self, domain: str, *items) -> int:
        """Domain-separated hash into [1, q).

        A wide digest is reduced mod q; a zero result is resampled by
        appending a counter byte.
        """
        if domain not in HASH_DOMAINS:
            raise ValueError(f"unknown hash domain {domain!r}")
        data = self.encode_hash_input(items)
        head = _PREFIX + domain.encode() + b"\x00"
        for counter in range(256):
            tail = bytes([counter]) if counter else b""
            k = int.from_bytes(digest(head, data, tail), "big") % self.q
            if k:
                return k
        raise ArithmeticError("hash_to_scalar failed to leave zero")  # pragma: no cover

    def kdf(self, label: bytes, seed: bytes, length: int) -> bytes:
        """Counter-mode expansion of the package digest."""
        out = bytearray()
        counter = 0
        while len(out) < length:
            out += digest(_PREFIX, label, b"\x00", seed, counter.to_bytes(4, "big"))
            counter += 1
        return bytes(out[:length])

    # -- backend hooks ---------------------------------------------------

    def g1_sub(self, a, b):
        return self.g1_add(a, self.g1_neg(b))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.backend_id} q={self.q}>"
