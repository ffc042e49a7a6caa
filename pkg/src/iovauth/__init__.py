"""Certificateless short signatures and anonymous V2R authentication for vehicular networks."""

__version__ = "0.1.0"
