"""Consistency relation: base cases, closure behavior, known limits."""

from hypothesis import given, strategies as st

from itsub import (
    Arrow,
    Const,
    Inter,
    Top,
    atomic_consistent,
    check_sub,
    consistent,
    occurring_types,
    random_type,
    self_consistent,
)

U = Top()
c0, c1, c2, c3 = Const(0), Const(1), Const(2), Const(3)

types = st.integers(0, 10**6).map(lambda s: random_type(s, 3, 3))


class TestAtomicCases:
    def test_equal_constants_agree(self):
        assert consistent(c0, c0)

    def test_distinct_constants_conflict(self):
        assert not consistent(c0, c1)

    def test_arrows_with_apart_domains_agree(self):
        assert consistent(Arrow(c0, c1), Arrow(c2, c3))

    def test_arrows_sharing_domains_need_codomain_agreement(self):
        assert not consistent(Arrow(c0, c1), Arrow(c0, c2))
        assert consistent(Arrow(c0, c1), Arrow(c0, c1))

    def test_constant_vs_arrow_conflict(self):
        assert not consistent(c0, Arrow(c0, c1))

    def test_top_agrees_with_everything(self):
        assert consistent(U, c0)
        assert consistent(c0, U)
        assert consistent(U, Arrow(c0, c1))

    def test_top_shaped_parts_agree_with_everything(self):
        # Anything can flow into a supertype like c1 -> U, so a part whose
        # codomain chain ends in U must not conflict with constants.
        assert atomic_consistent(c0, Arrow(c1, U))
        assert consistent(c0, Arrow(c1, U))
        assert consistent(Arrow(c0, Arrow(c1, U)), c2)


class TestSelfConsistency:
    def test_conflicting_intersection(self):
        assert not self_consistent(Inter(c0, c1))

    def test_compatible_function_intersection(self):
        assert self_consistent(Inter(Arrow(c0, c1), Arrow(c2, c3)))

    def test_top(self):
        assert self_consistent(U)

    def test_single_atoms(self):
        assert self_consistent(c0)
        assert self_consistent(Arrow(c0, c1))


class TestRelationShape:
    @given(types, types)
    def test_symmetric(self, a, b):
        assert consistent(a, b) == consistent(b, a)

    @given(types)
    def test_self_consistent_is_diagonal(self, a):
        assert self_consistent(a) == consistent(a, a)

    def test_pairwise_over_parts(self):
        a = Inter(Arrow(c0, c1), Arrow(c2, c3))
        assert consistent(a, a)
        # one conflicting pair of parts poisons the whole comparison
        assert not consistent(a, Inter(Arrow(c0, c1), Arrow(c0, c3)))
        # a constant part conflicts with any arrow part
        assert not consistent(Inter(c0, Arrow(c1, c2)), c0)


class TestUpwardClosure:
    def test_supertype_steps_preserve_agreement(self):
        # consistent pair, both endpoints moved to supertypes
        a, b = Arrow(c0, c1), Arrow(c2, c3)
        assert consistent(a, b)
        c = Arrow(Inter(c0, c2), c1)  # a <: c
        d = U  # b <: d
        assert check_sub(a, c) is not None
        assert check_sub(b, d) is not None
        assert consistent(c, d)

    def test_widening_to_top_codomain(self):
        a = c0
        b = c0
        target = Arrow(c1, U)
        assert check_sub(b, target) is not None
        assert consistent(a, target)


class TestDerivationBodies:
    def test_certificate_can_mention_inconsistent_internal_types(self):
        # Self-consistent endpoints do not confine a certificate to
        # self-consistent internal types: reflexivity at this arrow
        # builds its domain premise at c0 & c1, which conflicts with
        # itself. The guarantee holds at the endpoints only.
        a = Arrow(Inter(c0, c1), c2)
        assert self_consistent(a)
        assert consistent(a, a)
        d = check_sub(a, a)
        assert d is not None
        body = occurring_types(d)
        bad = [t for t in body if not self_consistent(t)]
        assert Inter(c0, c1) in bad
