"""Exhaustive enumeration of small type universes and a fast subtype table.

A universe is every type over a fixed supply of atoms (U plus a number of
constants) up to a size bound.  The table of all subtype judgments over a
universe is computed bottom-up in order of total pair size, mirroring the
decision procedure clause by clause; the test suites cross-check it against
the real procedure and then use it to quantify cheaply over millions of
pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .types import Arrow, Const, Inter, Top, Ty, is_top, size

__all__ = [
    "UniverseSpec",
    "enumerate_universe",
    "random_type",
    "Universe",
]


@dataclass(frozen=True, slots=True)
class UniverseSpec:
    """Atom supply (U plus `atom_count` constants) and the size bound."""

    atom_count: int
    max_size: int


def enumerate_universe(spec: UniverseSpec) -> list[Ty]:
    """All types over the atom supply with size at most the bound.

    Deterministic order: by size, then arrows before intersections, then
    lexicographically by (left subtree position, right subtree position)
    within the already-enumerated smaller sizes.
    """
    atoms: list[Ty] = [Top()]
    atoms += [Const(i) for i in range(spec.atom_count)]
    by_size: list[list[Ty]] = [atoms]
    for s in range(1, spec.max_size + 1):
        layer: list[Ty] = []
        for ctor in (Arrow, Inter):
            for left_size in range(s):
                for l in by_size[left_size]:
                    for r in by_size[s - 1 - left_size]:
                        layer.append(ctor(l, r))
        by_size.append(layer)
    return [t for layer in by_size for t in layer]


def random_type(seed: int, atom_count: int, max_depth: int) -> Ty:
    """Deterministic pseudo-random type: node kinds uniform over atom,
    arrow, and intersection while depth budget remains."""
    rng = random.Random(f"{seed}:{atom_count}:{max_depth}")

    def gen(budget: int) -> Ty:
        kind = rng.randrange(3) if budget > 0 else 0
        if kind == 0:
            i = rng.randrange(atom_count + 1)
            return Top() if i == 0 else Const(i - 1)
        if kind == 1:
            return Arrow(gen(budget - 1), gen(budget - 1))
        return Inter(gen(budget - 1), gen(budget - 1))

    return gen(max_depth)


class Universe:
    """An enumerated universe with interning and derived lookup tables."""

    def __init__(self, spec: UniverseSpec):
        self.spec = spec
        self.types = enumerate_universe(spec)
        self.index: dict[Ty, int] = {t: i for i, t in enumerate(self.types)}
        n = len(self.types)
        self.sizes = np.fromiter((size(t) for t in self.types), dtype=np.int64, count=n)
        self.tops = np.fromiter((is_top(t) for t in self.types), dtype=bool, count=n)
        # Part lists as index tuples; parts of an in-universe type are
        # in-universe because they are no larger than the whole.
        self.parts_idx: list[tuple[int, ...]] = []
        self.inter_key: dict[tuple[int, int], int] = {}
        for i, t in enumerate(self.types):
            if isinstance(t, Inter):
                li = self.index[t.left]
                ri = self.index[t.right]
                self.inter_key[(li, ri)] = i
                self.parts_idx.append(self.parts_idx[li] + self.parts_idx[ri])
            else:
                self.parts_idx.append((i,))
        # Arrow parts of each type: (dom index, cod index, cod is top).
        self.arrow_parts: list[tuple[tuple[int, int, bool], ...]] = []
        for t in self.types:
            entry: list[tuple[int, int, bool]] = []
            for j in self.parts_idx[self.index[t]]:
                p = self.types[j]
                if isinstance(p, Arrow):
                    entry.append(
                        (self.index[p.dom], self.index[p.cod], is_top(p.cod))
                    )
            self.arrow_parts.append(tuple(entry))

    def __len__(self) -> int:
        return len(self.types)

    @cached_property
    def size_offsets(self) -> list[tuple[int, int]]:
        """Half-open index range of each size class; enumeration is sorted
        by size."""
        out: list[tuple[int, int]] = []
        start = 0
        for s in range(self.spec.max_size + 1):
            end = start
            while end < len(self.types) and self.sizes[end] == s:
                end += 1
            out.append((start, end))
            start = end
        return out

    @cached_property
    def part_mask(self) -> np.ndarray:
        """Boolean [type, part-candidate] matrix of the parts relation,
        columns restricted to non-intersection types."""
        n = len(self.types)
        cols = [i for i, t in enumerate(self.types) if not isinstance(t, Inter)]
        col_of = {c: k for k, c in enumerate(cols)}
        m = np.zeros((n, len(cols)), dtype=bool)
        for i in range(n):
            for j in self.parts_idx[i]:
                m[i, col_of[j]] = True
        return m

    @cached_property
    def contained(self) -> np.ndarray:
        """Boolean [a, b] matrix of `contained_in(a, b)`."""
        m = self.part_mask.astype(np.float32)
        # contained_in(a, b) iff no part of a is missing from b.
        missing = m @ (1.0 - m).T
        return missing < 0.5

    @cached_property
    def subtype_table(self) -> np.ndarray:
        """Boolean [lhs, rhs] matrix of the subtype judgment, computed
        bottom-up over total pair size.

        Every recursive dependency of a pair has strictly smaller total
        size, so filling size-sum layers in increasing order only ever
        reads completed entries.
        """
        n = len(self.types)
        table = np.zeros((n, n), dtype=bool)
        table[:, self.tops] = True
        const_cols: dict[int, np.ndarray] = {}
        for i, t in enumerate(self.types):
            if isinstance(t, Const):
                mask = np.zeros(n, dtype=bool)
                for a in range(n):
                    if i in self.parts_idx[a]:
                        mask[a] = True
                const_cols[i] = mask
        offsets = self.size_offsets
        max_size = self.spec.max_size
        for total in range(2 * max_size + 1):
            for rhs_size in range(max_size + 1):
                lhs_size = total - rhs_size
                if lhs_size < 0 or lhs_size > max_size:
                    continue
                lo, hi = offsets[lhs_size]
                rlo, rhi = offsets[rhs_size]
                for j in range(rlo, rhi):
                    if self.tops[j]:
                        continue
                    t = self.types[j]
                    if isinstance(t, Const):
                        table[lo:hi, j] = const_cols[j][lo:hi]
                    elif isinstance(t, Inter):
                        li = self.index[t.left]
                        ri = self.index[t.right]
                        table[lo:hi, j] = table[lo:hi, li] & table[lo:hi, ri]
                    else:
                        assert isinstance(t, Arrow)
                        ci = self.index[t.dom]
                        di = self.index[t.cod]
                        col = table[:, j]
                        for a in range(lo, hi):
                            fold = -1
                            for dom_i, cod_i, cod_top in self.arrow_parts[a]:
                                if cod_top or not table[ci, dom_i]:
                                    continue
                                if fold < 0:
                                    fold = cod_i
                                else:
                                    fold = self.inter_key[(fold, cod_i)]
                            if fold >= 0:
                                col[a] = table[fold, di]
        return table
