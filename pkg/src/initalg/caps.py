"""Enumeration caps.

Defaults can be overridden through the environment (``INITALG_ENUM_CAP``,
``INITALG_OBJ_CAP``, ``INITALG_SUB_CAP``, ``INITALG_BRUTE_CAP``), which is how
the CLI picks up caps.
"""
import os
from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Caps:
    enum: int = 12          # |P| for exhaustive scans over subsets of P
    obj: int = 10 ** 6      # |F X| materialized by apply_obj
    sub: int = 10           # |A| for the subobject lattice 2^|A|
    brute: int = 10 ** 6    # |A|^|C| for brute-force map enumeration
    monoid: int = 5         # |T| for the monoid-of-inflationary-maps engine

    @classmethod
    def from_env(cls):
        kw = {}
        for name in ("enum", "obj", "sub", "brute", "monoid"):
            v = os.environ.get(f"INITALG_{name.upper()}_CAP")
            if v:
                kw[name] = int(v)
        return cls(**kw)

    def as_dict(self):
        return asdict(self)


DEFAULT = Caps.from_env()
