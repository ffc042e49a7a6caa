"""Symmetric pairing on the supersingular curve y^2 = x^3 + x over F_p.

With p = 3 (mod 4) the curve has p + 1 points and embedding degree 2.  The
distortion map (x, y) -> (-x, i*y) into E(F_p^2), combined with the reduced
Tate pairing, gives a non-degenerate symmetric pairing
e: G1 x G1 -> mu_q in F_p^2.

G1 points are affine ``(x, y)`` tuples, ``None`` is the point at infinity.
G2 elements are ``(a, b)`` tuples standing for a + b*i with i^2 = -1.

Pure Python and not constant time.
"""

from __future__ import annotations

from ..errors import EncodingError, ParameterError
from .base import BilinearGroup, byte_len

# 160-bit subgroup order, 514-bit field: p = h*q - 1.
A160_Q = 1461501637330902918203684832716283019651637575649
A160_H = 27542883862189753510677049281242879745948757156553086270869063707259043865439414178767704088756258992496936


# -- F_p^2 ------------------------------------------------------------------

def _f2_mul(a, b, p):
    a0, a1 = a
    b0, b1 = b
    return ((a0 * b0 - a1 * b1) % p, (a0 * b1 + a1 * b0) % p)


def _f2_sqr(a, p):
    a0, a1 = a
    return ((a0 + a1) * (a0 - a1) % p, 2 * a0 * a1 % p)


def _f2_inv(a, p):
    a0, a1 = a
    n = pow(a0 * a0 + a1 * a1, -1, p)
    return (a0 * n % p, -a1 * n % p)


def _f2_pow(a, e, p):
    out = (1, 0)
    for bit in bin(e)[2:]:
        out = _f2_sqr(out, p)
        if bit == "1":
            out = _f2_mul(out, a, p)
    return out


class TypeAGroup(BilinearGroup):
    backend_id = "production"

    def __init__(self, q: int = A160_Q, h: int = A160_H):
        p = h * q - 1
        if p % 4 != 3:
            raise ParameterError("p must be 3 mod 4")
        self.q = q
        self.h = h
        self.p = p
        self.name = "A160" if (q, h) == (A160_Q, A160_H) else "custom"
        self.g1_identity = None
        self.g2_identity = (1, 0)
        self.P = self._find_generator()
        self.g = self.pair(self.P, self.P)
        if self.g == self.g2_identity:
            raise ParameterError("degenerate pairing")

    def _find_generator(self):
        p = self.p
        x = 1
        while True:
            rhs = (x * x * x + x) % p
            if rhs and pow(rhs, (p - 1) // 2, p) == 1:
                y = pow(rhs, (p + 1) // 4, p)
                pt = self._mul(self.h, (x, y))
                if pt is not None:
                    if self._mul(self.q, pt) is not None:
                        raise ParameterError("cofactor-cleared point lacks order q")
                    return pt
            x += 1

    # -- raw curve arithmetic (uncounted) -------------------------------

    def _on_curve(self, a) -> bool:
        if a is None:
            return True
        x, y = a
        p = self.p
        return 0 <= x < p and 0 <= y < p and (y * y - x * x * x - x) % p == 0

    def _add(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        p = self.p
        x1, y1 = a
        x2, y2 = b
        if x1 == x2:
            if (y1 + y2) % p == 0:
                return None
            lam = (3 * x1 * x1 + 1) * pow(2 * y1, -1, p) % p
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
        x3 = (lam * lam - x1 - x2) % p
        return (x3, (lam * (x1 - x3) - y1) % p)

    def _mul(self, k: int, a):
        # Jacobian double-and-add; one inversion at the end.
        if a is None or k == 0:
            return None
        p = self.p
        X1, Y1 = a
        X, Y, Z = 1, 1, 0
        for bit in bin(k)[2:]:
            if Z:
                # double, a = 1
                YY = Y * Y % p
                S = 4 * X * YY % p
                ZZ = Z * Z % p
                M = (3 * X * X + ZZ * ZZ) % p
                X3 = (M * M - 2 * S) % p
                Y, Z = (M * (S - X3) - 8 * YY * YY) % p, 2 * Y * Z % p
                X = X3
            if bit == "1":
                if not Z:
                    X, Y, Z = X1, Y1, 1
                    continue
                ZZ = Z * Z % p
                U2 = X1 * ZZ % p
                S2 = Y1 * ZZ * Z % p
                H = (U2 - X) % p
                r = (S2 - Y) % p
                if H == 0:
                    if r == 0:
                        # adding the same point: fall back to affine doubling
                        zi = pow(Z, -1, p)
                        aff = (X * zi * zi % p, Y * zi * zi * zi % p)
                        aff = self._add(aff, aff)
                        if aff is None:
                            X, Y, Z = 1, 1, 0
                        else:
                            X, Y, Z = aff[0], aff[1], 1
                    else:
                        X, Y, Z = 1, 1, 0
                    continue
                HH = H * H % p
                HHH = HH * H % p
                V = X * HH % p
                X3 = (r * r - HHH - 2 * V) % p
                Y = (r * (V - X3) - Y * HHH) % p
                Z = Z * H % p
                X = X3
        if not Z:
            return None
        zi = pow(Z, -1, p)
        zi2 = zi * zi % p
        return (X * zi2 % p, Y * zi2 * zi % p)

    # -- G1 --------------------------------------------------------------

    def is_g1(self, a) -> bool:
        return self._on_curve(a) and self._mul(self.q, a) is None

    def g1_add(self, a, b):
        return self._add(a, b)

    def g1_neg(self, a):
        if a is None:
            return None
        return (a[0], (-a[1]) % self.p)

    def g1_mul(self, k: int, a):
        return self._mul(k % self.q, a)

    # -- G2 --------------------------------------------------------------

    def is_g2(self, b) -> bool:
        if not (isinstance(b, tuple) and len(b) == 2):
            return False
        a0, a1 = b
        if not (0 <= a0 < self.p and 0 <= a1 < self.p) or b == (0, 0):
            return False
        return _f2_pow(b, self.q, self.p) == (1, 0)

    def g2_mul(self, a, b):
        return _f2_mul(a, b, self.p)

    def g2_exp(self, b, k: int):
        return _f2_pow(b, k % self.q, self.p)

    def g2_inv(self, b):
        # elements of mu_q have norm 1, so the inverse is the conjugate
        return (b[0], (-b[1]) % self.p)

    def pair(self, a, b):
        """Reduced Tate pairing of ``a`` with the distorted image of ``b``."""
        if a is None or b is None:
            return (1, 0)
        p = self.p
        xP, yP = a
        xQ, yQ = b
        xT, yT = a
        f = (1, 0)
        bits = bin(self.q)[3:]
        last = len(bits) - 1
        for idx, bit in enumerate(bits):
            lam = (3 * xT * xT + 1) * pow(2 * yT, -1, p) % p
            f = _f2_mul(_f2_sqr(f, p), ((lam * (xQ + xT) - yT) % p, yQ), p)
            x3 = (lam * lam - 2 * xT) % p
            yT = (lam * (xT - x3) - yT) % p
            xT = x3
            if bit == "1":
                if xT == xP:
                    # T = -P on the last step: vertical line, value in F_p
                    if idx != last:
                        raise ArithmeticError("unexpected vertical line in Miller loop")
                    break
                lam = (yP - yT) * pow(xP - xT, -1, p) % p
                f = _f2_mul(f, ((lam * (xQ + xT) - yT) % p, yQ), p)
                x3 = (lam * lam - xT - xP) % p
                yT = (lam * (xT - x3) - yT) % p
                xT = x3
        # f^(p-1) = conj(f) / f, then raise to the cofactor (p+1)/q
        f = _f2_mul((f[0], (-f[1]) % p), _f2_inv(f, p), p)
        return _f2_pow(f, self.h, p)

    # -- codecs ----------------------------------------------------------

    @property
    def _fw(self) -> int:
        return byte_len(self.p)

    @property
    def g1_width(self) -> int:
        return 1 + 2 * self._fw

    @property
    def g2_width(self) -> int:
        return 2 * self._fw

    def encode_g1(self, a) -> bytes:
        w = self._fw
        if a is None:
            return b"\x00" * self.g1_width
        if not self._on_curve(a):
            raise EncodingError("not a curve point")
        return b"\x04" + a[0].to_bytes(w, "big") + a[1].to_bytes(w, "big")

    def decode_g1(self, data: bytes):
        w = self._fw
        if len(data) != self.g1_width:
            raise EncodingError("bad G1 width")
        if data == b"\x00" * self.g1_width:
            return None
        if data[0] != 0x04:
            raise EncodingError("bad G1 prefix")
        a = (int.from_bytes(data[1:1 + w], "big"), int.from_bytes(data[1 + w:], "big"))
        if not self.is_g1(a):
            raise EncodingError("point not on curve or outside the order-q subgroup")
        return a

    def encode_g2(self, b) -> bytes:
        w = self._fw
        return b[0].to_bytes(w, "big") + b[1].to_bytes(w, "big")

    def decode_g2(self, data: bytes):
        w = self._fw
        if len(data) != self.g2_width:
            raise EncodingError("bad G2 width")
        b = (int.from_bytes(data[:w], "big"), int.from_bytes(data[w:], "big"))
        if not self.is_g2(b):
            raise EncodingError("value is not in mu_q")
        return b

    def describe(self) -> dict:
        return {"backend": self.backend_id, "curve": "y^2=x^3+x", "q": self.q, "h": self.h}
