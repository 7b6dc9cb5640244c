"""Canonical element encoding.

Elements of every finite structure in the package are hashable Python values:
atoms are strings, structured elements are :class:`Term` nodes, subsets are
frozensets and maps between small posets are tuples of images. ``canon_key``
gives all of them one total order. That order is only used to make output
deterministic; it never stands in for a mathematical order.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class Term:
    """A constructor node: ``tag``, an optional constant, ordered arguments."""

    tag: str
    const: object = None
    args: tuple = ()

    def __lt__(self, other):
        return canon_key(self) < canon_key(other)

    def __str__(self):
        if self.tag == "set":
            return "{" + ",".join(map(show, self.args)) + "}"
        head = self.tag if self.const is None else f"{self.tag}[{show(self.const)}]"
        if not self.args:
            return head
        return head + "(" + ",".join(map(show, self.args)) + ")"

    __repr__ = __str__


@lru_cache(maxsize=None)
def _term_key(t):
    return (5, t.tag, canon_key(t.const), tuple(canon_key(a) for a in t.args))


def canon_key(x):
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, (int, Fraction)):
        return (2, x)
    if isinstance(x, str):
        return (3, x)
    if isinstance(x, tuple):
        return (4, tuple(canon_key(a) for a in x))
    if isinstance(x, Term):
        return _term_key(x)
    if isinstance(x, frozenset):
        return (6, tuple(sorted(canon_key(a) for a in x)))
    raise TypeError(f"no canonical order for {type(x).__name__}")


def canon_sorted(xs):
    return sorted(xs, key=canon_key)


def show(x):
    if isinstance(x, frozenset):
        return "{" + ",".join(show(a) for a in canon_sorted(x)) + "}"
    if isinstance(x, tuple):
        return "<" + ",".join(show(a) for a in x) + ">"
    return str(x)


# -- JSON ------------------------------------------------------------------------

def encode(x):
    """Encode an element as JSON data (inverse of :func:`decode`)."""
    if isinstance(x, str):
        return x
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Term):
        d = {"tag": x.tag}
        if x.const is not None:
            d["const"] = encode(x.const)
        if x.args:
            d["args"] = [encode(a) for a in x.args]
        return d
    if isinstance(x, frozenset):
        return {"subset": [encode(a) for a in canon_sorted(x)]}
    if isinstance(x, tuple):
        return {"tuple": [encode(a) for a in x]}
    raise TypeError(f"cannot encode {type(x).__name__}")


def decode(obj):
    if isinstance(obj, (str, int)) or obj is None:
        return obj
    if isinstance(obj, dict):
        if "subset" in obj:
            return frozenset(decode(a) for a in obj["subset"])
        if "tuple" in obj:
            return tuple(decode(a) for a in obj["tuple"])
        if "tag" in obj:
            return Term(obj["tag"], decode(obj.get("const")),
                        tuple(decode(a) for a in obj.get("args", ())))
    raise ValueError(f"not an encoded element: {obj!r}")
