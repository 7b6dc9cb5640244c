"""Witness-carrying result records.

A :class:`Certificate` holds only JSON data, serializes canonically (sorted
keys, fixed separators) and is therefore byte-identical across reruns on the
same inputs. Witnesses are chosen so that a ``Pass`` can be re-verified by
direct evaluation, see :mod:`initalg.recheck`.
"""
import hashlib
import json
from dataclasses import dataclass, field

PASS = "Pass"
FAIL = "Fail"
UNKNOWN = "Unknown"


@dataclass
class Certificate:
    command: str
    outcome: str
    witnesses: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    caps: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)
    inputs: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return self.outcome == PASS

    def as_dict(self):
        return {
            "command": self.command,
            "outcome": self.outcome,
            "witnesses": self.witnesses,
            "counterexamples": self.counterexamples,
            "caps": self.caps,
            "trace": self.trace,
            "inputs": self.inputs,
            "notes": self.notes,
        }

    def to_json(self):
        return canonical_json(self.as_dict())

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(**{k: d[k] for k in (
            "command", "outcome", "witnesses", "counterexamples", "caps",
            "trace", "inputs", "notes") if k in d})


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def content_hash(data: bytes):
    return hashlib.sha256(data).hexdigest()
