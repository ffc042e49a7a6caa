"""Hash oracles and injectable randomness sources.

``DigestOracle`` is the real hash; ``ScriptedOracle`` replays preloaded
values per domain tag so that worked examples can fix h0, h1, h2, ... by hand.
"""

from __future__ import annotations

from collections import deque
from pathlib import Path

from ..errors import OracleExhausted
from .base import HASH_DOMAINS


class DigestOracle:
    def __init__(self, group):
        self.group = group

    def __call__(self, domain: str, *items) -> int:
        return self.group.hash_to_scalar(domain, *items)


class ScriptedOracle:
    """FIFO of preset outputs per domain; inputs are ignored."""

    def __init__(self, values: dict[str, list[int]] | None = None):
        self.queues: dict[str, deque[int]] = {d: deque() for d in HASH_DOMAINS}
        for domain, vals in (values or {}).items():
            self.load(domain, vals)

    def load(self, domain: str, values) -> None:
        if domain not in self.queues:
            raise ValueError(f"unknown hash domain {domain!r}")
        self.queues[domain].extend(int(v) for v in values)

    def __call__(self, domain: str, *items) -> int:
        try:
            return self.queues[domain].popleft()
        except IndexError:
            raise OracleExhausted(f"scripted oracle has no value left for {domain}") from None
        except KeyError:
            raise ValueError(f"unknown hash domain {domain!r}") from None

    @classmethod
    def from_text(cls, text: str) -> "ScriptedOracle":
        """Parse ``domain_tag decimal_value`` lines; ``#`` starts a comment."""
        oracle = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ValueError(f"line {lineno}: expected '<domain> <decimal>'")
            oracle.load(parts[0], [int(parts[1])])
        return oracle

    @classmethod
    def from_file(cls, path) -> "ScriptedOracle":
        return cls.from_text(Path(path).read_text())


class ScriptedRandom:
    """Stand-in for ``random.Random`` that returns queued integers.

    Only ``randrange`` is supported, which is all ``random_scalar`` needs.
    Once the queue is empty it falls back to ``fallback`` if one was given.
    """

    def __init__(self, values, fallback=None):
        self.values = deque(values)
        self.fallback = fallback

    def randrange(self, start, stop=None):
        if stop is None:
            start, stop = 0, start
        if self.values:
            v = self.values.popleft()
            if not start <= v < stop:
                raise ValueError(f"scripted value {v} outside [{start}, {stop})")
            return v
        if self.fallback is not None:
            return self.fallback.randrange(start, stop)
        raise OracleExhausted("scripted randomness exhausted")
