"""Consistency analysis over intersection types.

Two parts are atomically consistent when they could describe one value:
equal constants agree, arrows agree unless their domains are consistent
while their codomains are not, and a top part is consistent with anything,
since it carries no information.  Two types are consistent when every part
of one is atomically consistent with every part of the other.

Treating top parts as consistent with everything (rather than only the
literal atom U) is what makes consistency closed upward under subtyping:
a supertype such as c1 -> U can be reached from any function type, and
rejecting it against a constant would break that closure.
"""

from __future__ import annotations

from .types import Arrow, Const, Ty, is_top, parts

__all__ = [
    "atomic_consistent",
    "consistent",
    "self_consistent",
]


def atomic_consistent(p: Ty, q: Ty) -> bool:
    """Consistency of two parts (atoms or arrows)."""
    if is_top(p) or is_top(q):
        return True
    if isinstance(p, Const) and isinstance(q, Const):
        return p.index == q.index
    if isinstance(p, Arrow) and isinstance(q, Arrow):
        return not consistent(p.dom, q.dom) or consistent(p.cod, q.cod)
    return False


def consistent(a: Ty, b: Ty) -> bool:
    """Whether every part of `a` is atomically consistent with every part
    of `b`."""
    pb = parts(b)
    return all(atomic_consistent(p, q) for p in parts(a) for q in pb)


def self_consistent(a: Ty) -> bool:
    """Whether `a` is consistent with itself."""
    return consistent(a, a)
