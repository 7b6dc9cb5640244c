"""Executable fixed-point and initial-algebra constructions at finite scale.

Subpackages by topic: :mod:`poset` and :mod:`fixpoint` (orders and engines),
:mod:`finset` and :mod:`functor` (finite sets and endofunctors),
:mod:`coalgebra` and :mod:`initial` (recursion and initial algebras),
:mod:`dcpo` and :mod:`metric` (enriched smoothness), :mod:`cli` and
:mod:`recheck` (certificates).
"""
from .certificate import FAIL, PASS, UNKNOWN, Certificate
from .errors import InitalgError

__version__ = "0.1.0"
__all__ = ["Certificate", "PASS", "FAIL", "UNKNOWN", "InitalgError", "__version__"]
