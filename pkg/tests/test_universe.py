"""Enumerated universes, random generation, and the subtype table."""

import numpy as np
import pytest

from itsub import (
    Arrow,
    Const,
    Inter,
    Top,
    UniverseSpec,
    Universe,
    check_sub,
    contained_in,
    depth,
    enumerate_universe,
    random_type,
    size,
)

U = Top()
c0, c1 = Const(0), Const(1)


class TestEnumeration:
    @pytest.mark.parametrize(
        "max_size,count",
        [(0, 3), (1, 21), (2, 237), (3, 3477)],
    )
    def test_counts_two_atoms(self, max_size, count):
        assert len(enumerate_universe(UniverseSpec(2, max_size))) == count

    def test_leading_entries(self):
        ts = enumerate_universe(UniverseSpec(2, 2))
        assert ts[:3] == [U, c0, c1]

    def test_sorted_by_size(self):
        ts = enumerate_universe(UniverseSpec(2, 3))
        sizes = [size(t) for t in ts]
        assert sizes == sorted(sizes)

    def test_size_one_block_order(self):
        # within a size, arrows come before intersections, and both scan
        # the left slot before the right
        ts = enumerate_universe(UniverseSpec(2, 1))
        block = ts[3:]
        assert block[0] == Arrow(U, U)
        assert all(isinstance(t, Arrow) for t in block[:9])
        assert all(isinstance(t, Inter) for t in block[9:])
        assert block[9] == Inter(U, U)

    def test_deterministic(self):
        assert enumerate_universe(UniverseSpec(2, 2)) == enumerate_universe(
            UniverseSpec(2, 2)
        )

    def test_no_duplicates(self):
        ts = enumerate_universe(UniverseSpec(2, 2))
        assert len(set(ts)) == len(ts)

    def test_atom_count_respected(self):
        ts = enumerate_universe(UniverseSpec(3, 1))
        consts = {t.index for t in ts if isinstance(t, Const)}
        assert consts == {0, 1, 2}


class TestRandomTypes:
    def test_deterministic_per_seed(self):
        assert random_type(7, 3, 4) == random_type(7, 3, 4)

    def test_seeds_vary(self):
        outs = {random_type(s, 3, 4) for s in range(50)}
        assert len(outs) > 10

    def test_depth_bound(self):
        for s in range(300):
            assert depth(random_type(s, 4, 3)) <= 3

    def test_atom_bound(self):
        for s in range(300):
            t = random_type(s, 2, 4)
            stack = [t]
            while stack:
                cur = stack.pop()
                if isinstance(cur, Const):
                    assert cur.index < 2
                elif isinstance(cur, (Arrow, Inter)):
                    stack.extend((cur.left, cur.right) if isinstance(cur, Inter) else (cur.dom, cur.cod))

    def test_parameters_feed_the_stream(self):
        assert random_type(7, 3, 4) != random_type(7, 3, 5) or random_type(
            8, 3, 4
        ) != random_type(8, 3, 5)


@pytest.fixture(scope="module")
def u():
    return Universe(UniverseSpec(2, 2))


class TestUniverseTables:
    def test_index_inverts_types(self, u):
        for i, t in enumerate(u.types):
            assert u.index[t] == i

    def test_size_offsets(self, u):
        assert u.size_offsets[0] == (0, 3)
        assert u.size_offsets[1] == (3, 21)
        assert u.size_offsets[2] == (21, 237)
        assert u.size_offsets[-1][1] == len(u.types)
        for k, (lo, hi) in enumerate(u.size_offsets):
            assert all(size(t) == k for t in u.types[lo:hi])

    def test_tops_matches_predicate(self, u):
        from itsub import is_top

        for i, t in enumerate(u.types):
            assert bool(u.tops[i]) == is_top(t)

    def test_contained_matches_predicate(self, u):
        rng = np.random.default_rng(0)
        n = len(u.types)
        for _ in range(500):
            i, j = rng.integers(0, n, 2)
            assert bool(u.contained[i, j]) == contained_in(
                u.types[i], u.types[j]
            )

    def test_inter_key_roundtrip(self, u):
        for (li, ri), i in u.inter_key.items():
            assert u.types[i] == Inter(u.types[li], u.types[ri])

    def test_arrow_parts_structure(self, u):
        from itsub import parts, is_top as top

        for i, entries in enumerate(u.arrow_parts):
            expect = [p for p in parts(u.types[i]) if isinstance(p, Arrow)]
            assert len(entries) == len(expect)
            for (di, ci, ct), p in zip(entries, expect):
                assert u.types[di] == p.dom
                assert u.types[ci] == p.cod
                assert ct == top(p.cod)

    def test_subtype_table_matches_decision_procedure(self, u):
        tab = u.subtype_table
        n = len(u.types)
        for i in range(n):
            a = u.types[i]
            row = tab[i]
            for j in range(n):
                assert bool(row[j]) == (
                    check_sub(a, u.types[j]) is not None
                ), (a, u.types[j])

    def test_table_is_reflexive_and_transitive(self, u):
        tab = u.subtype_table.astype(np.float32)
        assert np.all(np.diag(tab) == 1)
        closure = (tab @ tab) > 0.5
        assert np.array_equal(closure & ~u.subtype_table, np.zeros_like(u.subtype_table))
