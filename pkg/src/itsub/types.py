"""Syntax trees for intersection types, plus the structural measures.

The grammar has atoms (the universal type U and indexed constants c0, c1,
...), function types, and binary intersections.  Trees are kept exactly as
written: there is no flattening, reordering, or deduplication of
intersections anywhere in this package.  The only notion of equality is
structural equality of trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "Ty",
    "Top",
    "Const",
    "Arrow",
    "Inter",
    "parts",
    "is_part",
    "contained_in",
    "dom",
    "cod",
    "is_top",
    "top_in_cod",
    "size",
    "depth",
    "subterms",
    "MeasureTriple",
    "measure",
    "measure_less",
]


class Ty:
    """Base class for type trees.  Instances are immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Top(Ty):
    """The universal type U."""

    def __repr__(self) -> str:
        return "Top()"


@dataclass(frozen=True, slots=True)
class Const(Ty):
    """An uninterpreted type constant; the index is an arbitrary natural."""

    index: int

    def __repr__(self) -> str:
        return f"Const({self.index})"


@dataclass(frozen=True, slots=True)
class Arrow(Ty):
    """A function type."""

    dom: Ty
    cod: Ty

    def __repr__(self) -> str:
        return f"Arrow({self.dom!r}, {self.cod!r})"


@dataclass(frozen=True, slots=True)
class Inter(Ty):
    """A binary intersection, kept exactly as written."""

    left: Ty
    right: Ty

    def __repr__(self) -> str:
        return f"Inter({self.left!r}, {self.right!r})"


def parts(a: Ty) -> tuple[Ty, ...]:
    """Atoms and arrows of the intersection spine of `a`, left to right.

    Duplicates are preserved; the result never contains an intersection.
    """
    if isinstance(a, Inter):
        return parts(a.left) + parts(a.right)
    return (a,)


def is_part(c: Ty, b: Ty) -> bool:
    """Whether `c` occurs (up to structural equality) among the parts of `b`."""
    return c in parts(b)


def contained_in(a: Ty, b: Ty) -> bool:
    """Whether every part of `a` is a part of `b`."""
    pb = parts(b)
    return all(p in pb for p in parts(a))


def dom(a: Ty) -> Ty | None:
    """Domain of `a`: defined when every part of `a` is an arrow.

    For an intersection the domains of the two sides are intersected.
    Returns None when undefined; partiality is not an error.
    """
    if isinstance(a, Arrow):
        return a.dom
    if isinstance(a, Inter):
        l = dom(a.left)
        if l is None:
            return None
        r = dom(a.right)
        if r is None:
            return None
        return Inter(l, r)
    return None


def cod(a: Ty) -> Ty | None:
    """Codomain of `a`, defined exactly where `dom` is."""
    if isinstance(a, Arrow):
        return a.cod
    if isinstance(a, Inter):
        l = cod(a.left)
        if l is None:
            return None
        r = cod(a.right)
        if r is None:
            return None
        return Inter(l, r)
    return None


def is_top(a: Ty) -> bool:
    """Whether `a` is equivalent to U: U itself, arrows with top codomain,
    and intersections of two top types."""
    if isinstance(a, Top):
        return True
    if isinstance(a, Arrow):
        return is_top(a.cod)
    if isinstance(a, Inter):
        return is_top(a.left) and is_top(a.right)
    return False


def top_in_cod(d: Ty) -> bool:
    """Whether some arrow part of `d` has a top codomain."""
    return any(isinstance(p, Arrow) and is_top(p.cod) for p in parts(d))


def size(a: Ty) -> int:
    """Number of arrow and intersection nodes; atoms have size 0."""
    if isinstance(a, Arrow):
        return 1 + size(a.dom) + size(a.cod)
    if isinstance(a, Inter):
        return 1 + size(a.left) + size(a.right)
    return 0


def depth(a: Ty) -> int:
    """Arrow nesting depth.  Intersections do not count: the depth of an
    intersection is the max of its sides, while an arrow adds one."""
    if isinstance(a, Arrow):
        return 1 + max(depth(a.dom), depth(a.cod))
    if isinstance(a, Inter):
        return max(depth(a.left), depth(a.right))
    return 0


@lru_cache(maxsize=65536)
def subterms(a: Ty) -> frozenset[Ty]:
    """All subtrees of `a`, including `a` itself."""
    acc: set[Ty] = set()
    stack = [a]
    while stack:
        t = stack.pop()
        if t in acc:
            continue
        acc.add(t)
        if isinstance(t, Arrow):
            stack.append(t.dom)
            stack.append(t.cod)
        elif isinstance(t, Inter):
            stack.append(t.left)
            stack.append(t.right)
    return frozenset(acc)


@dataclass(frozen=True, slots=True)
class MeasureTriple:
    """Lexicographic-style measure (depth of mid, size of mid, size of rhs)
    governing the transitivity composition A <: B <: C; mid is B."""

    mid_depth: int
    mid_size: int
    rhs_size: int


def measure(mid: Ty, rhs: Ty) -> MeasureTriple:
    """Measure of a composition problem with middle type `mid` and right
    endpoint `rhs`."""
    return MeasureTriple(depth(mid), size(mid), size(rhs))


def measure_less(m1: MeasureTriple, m2: MeasureTriple) -> bool:
    """Strict order on measure triples: a three-clause disjunction, not a
    plain lexicographic comparison."""
    if m1.mid_depth < m2.mid_depth:
        return True
    if m1.mid_depth <= m2.mid_depth and m1.mid_size < m2.mid_size:
        return True
    return (
        m1.mid_depth <= m2.mid_depth
        and m1.mid_size <= m2.mid_size
        and m1.rhs_size < m2.rhs_size
    )
