"""Exception hierarchy shared by every layer of the package."""


class IovError(Exception):
    """Base class for all protocol and crypto failures."""


class ParameterError(IovError, ValueError):
    """Group or configuration parameters failed validation."""


class NonInvertible(IovError, ArithmeticError):
    pass


class EncodingError(IovError, ValueError):
    """Bytes do not decode to a valid element or record."""


class OracleExhausted(IovError):
    pass


class DegenerateChallenge(IovError):
    """The signing denominator reduced to zero mod q."""


class DegenerateIdentity(IovError):
    """H3(ID_R) + s is zero mod q, so no RSU key exists for this identity."""


class AlreadyRegistered(IovError):
    pass


class Revoked(IovError):
    pass


class UnknownIdentity(IovError):
    pass


class EpochError(IovError):
    """Epoch window overlaps or leaves a gap in a region's schedule."""


class Replay(IovError):
    """Timestamp outside the freshness window."""


class BadSignature(IovError):
    pass


class BadPseudonym(IovError):
    pass


class Denied(IovError):
    """The vehicle identity is on the revocation list."""


class UntraceableEpoch(IovError):
    pass


class ScenarioError(IovError, ValueError):
    pass
