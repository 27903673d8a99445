"""Decision procedure, factoring, derivation transformers, composition."""

import pytest

from itsub import (
    Arrow,
    Const,
    Inter,
    Top,
    check_sub,
    contained_in,
    find_factor,
    find_factor_exhaustive,
    invert_arrow,
    merge_factorings,
    parse_type,
    refl_sub,
    restrict_to_contained,
    restrict_to_part,
    split_inter,
    top_sub,
    trans_compose,
    validate,
)
from itsub.derivation import ArrowPrime, Glb, LbL, ReflAtom, UArrow, UTop
from itsub.types import cod, dom

U = Top()
c0, c1, c2, c3 = Const(0), Const(1), Const(2), Const(3)


def ok(d, lhs, rhs):
    assert d is not None
    assert d.lhs == lhs and d.rhs == rhs
    res = validate(d)
    assert res.ok, res
    return d


class TestCheckSub:
    def test_atom_reflexivity(self):
        ok(check_sub(c0, c0), c0, c0)
        assert check_sub(c0, c1) is None

    def test_everything_below_u(self):
        for t in (c0, Arrow(c0, c1), Inter(c0, c1)):
            d = ok(check_sub(t, U), t, U)
            assert isinstance(d, UTop)

    def test_u_not_below_constants(self):
        assert check_sub(U, c0) is None

    def test_projection_left_then_right(self):
        t = Inter(c0, c1)
        assert isinstance(ok(check_sub(t, c0), t, c0), LbL)
        ok(check_sub(t, c1), t, c1)

    def test_leftmost_occurrence_chosen(self):
        t = Inter(Inter(c0, c1), Inter(c0, c2))
        d = ok(check_sub(t, c0), t, c0)
        # Outer step goes left, into the first occurrence.
        assert isinstance(d, LbL)

    def test_intersection_on_the_right_splits(self):
        d = ok(check_sub(Inter(c0, c1), Inter(c1, c0)), Inter(c0, c1), Inter(c1, c0))
        assert isinstance(d, Glb)

    def test_order_and_duplicates_matter_structurally_not_semantically(self):
        assert check_sub(Inter(c0, c1), Inter(c1, c0)) is not None
        assert check_sub(c0, Inter(c0, c0)) is not None
        assert check_sub(Inter(c0, c0), c0) is not None

    def test_arrow_to_top_codomain(self):
        d = ok(check_sub(c0, Arrow(c1, U)), c0, Arrow(c1, U))
        assert isinstance(d, UArrow)
        d = ok(
            check_sub(Arrow(c0, c1), Arrow(c0, Arrow(c1, U))),
            Arrow(c0, c1),
            Arrow(c0, Arrow(c1, U)),
        )
        assert isinstance(d, UArrow)

    def test_arrow_contravariance(self):
        big = Arrow(c0, c1)
        wide = Arrow(Inter(c0, c2), c1)
        ok(check_sub(big, wide), big, wide)
        assert check_sub(wide, big) is None

    def test_distribution_example(self):
        a = parse_type("(c0 -> c1) & (c0 -> c2)")
        b = parse_type("c0 -> c1 & c2")
        d = ok(check_sub(a, b), a, b)
        assert isinstance(d, ArrowPrime)
        assert d.witness == a
        assert dom(d.witness) == Inter(c0, c0)
        assert cod(d.witness) == Inter(c1, c2)

    def test_no_transitivity_needed_for_chained_facts(self):
        # (c0 & c1 -> c2) <: (c0 & c1 & c1 -> c2) directly.
        a = parse_type("c0 & c1 -> c2")
        b = parse_type("c0 & c1 & c1 -> c2")
        ok(check_sub(a, b), a, b)

    def test_atoms_never_below_non_top_arrows(self):
        assert check_sub(c0, Arrow(c0, c1)) is None
        assert check_sub(U, Arrow(c0, c1)) is None


class TestFindFactor:
    def test_rejects_top_target_codomain(self):
        with pytest.raises(ValueError):
            find_factor(Arrow(c0, c1), c0, U)
        with pytest.raises(ValueError):
            find_factor_exhaustive(Arrow(c0, c1), c0, Arrow(c1, U))

    def test_single_arrow(self):
        a = Arrow(c0, c1)
        f = find_factor(a, c0, c1)
        assert f is not None
        assert f.witness == a
        assert f.against == a and f.lhs == c0 and f.rhs == c1
        assert validate(f.dom_deriv).ok and validate(f.cod_deriv).ok

    def test_maximal_witness_includes_every_eligible_part(self):
        a = Inter(Arrow(c0, c1), Arrow(c0, c2))
        f = find_factor(a, c0, Inter(c1, c2))
        assert f is not None
        assert f.witness == a

    def test_top_codomain_parts_excluded_from_witness(self):
        a = Inter(Arrow(c0, U), Arrow(c0, c1))
        f = find_factor(a, c0, c1)
        assert f is not None
        assert f.witness == Arrow(c0, c1)

    def test_ineligible_domain_parts_excluded(self):
        a = Inter(Arrow(c2, c1), Arrow(c0, c1))
        f = find_factor(a, c0, c1)
        assert f is not None
        assert f.witness == Arrow(c0, c1)

    def test_absent_when_no_part_helps(self):
        assert find_factor(Arrow(c2, c1), c0, c1) is None
        assert find_factor(c0, c0, c1) is None

    def test_exhaustive_tries_smallest_subsets_first(self):
        a = Inter(Arrow(c0, c1), Arrow(c0, c2))
        f = find_factor_exhaustive(a, c0, c1)
        assert f is not None
        # The singleton {first arrow} already works, so the greedy maximal
        # witness is not needed.
        assert f.witness == Arrow(c0, c1)

    def test_exhaustive_falls_back_to_larger_subsets(self):
        a = Inter(Arrow(c0, c1), Arrow(c0, c2))
        f = find_factor_exhaustive(a, c0, Inter(c1, c2))
        assert f is not None
        assert f.witness == a

    def test_greedy_and_exhaustive_agree_on_presence(self):
        cases = [
            (Inter(Arrow(c0, c1), Arrow(c0, c2)), c0, Inter(c1, c2)),
            (Inter(Arrow(c0, c1), Arrow(c2, c3)), c0, c1),
            (Arrow(c0, c1), c0, c2),
            (Inter(Arrow(c0, U), c2), c0, c1),
        ]
        for a, c, d in cases:
            assert (find_factor(a, c, d) is None) == (
                find_factor_exhaustive(a, c, d) is None
            )


class TestMergeFactorings:
    def test_two_part_merge_matches_distribution_example(self):
        a = parse_type("(c0 -> c1) & (c0 -> c2)")
        per = {
            p: find_factor(a, p.dom, p.cod)
            for p in (Arrow(c0, c1), Arrow(c0, c2))
        }
        merged = merge_factorings(a, a, per)
        assert merged.against == a
        assert merged.lhs == Inter(c0, c0)
        assert merged.rhs == Inter(c1, c2)
        assert contained_in(merged.witness, a)
        assert validate(merged.dom_deriv).ok
        assert validate(merged.cod_deriv).ok
        assert merged.dom_deriv.lhs == Inter(c0, c0)
        assert merged.dom_deriv.rhs == dom(merged.witness)
        assert merged.cod_deriv.lhs == cod(merged.witness)
        assert merged.cod_deriv.rhs == Inter(c1, c2)

    def test_single_arrow_passthrough(self):
        a = Arrow(c0, c1)
        f = find_factor(a, c0, c1)
        assert merge_factorings(a, a, {a: f}) is f

    def test_rejects_non_arrow_parts(self):
        with pytest.raises(ValueError, match="every part"):
            merge_factorings(Inter(c0, Arrow(c0, c1)), c0, {})

    def test_rejects_top_codomain_parts(self):
        with pytest.raises(ValueError, match="top codomain"):
            merge_factorings(Inter(Arrow(c0, U), Arrow(c0, c1)), c0, {})

    def test_rejects_missing_part(self):
        a = Inter(Arrow(c0, c1), Arrow(c0, c2))
        f = find_factor(a, c0, c1)
        with pytest.raises(ValueError, match="missing factoring"):
            merge_factorings(a, a, {Arrow(c0, c1): f})

    def test_rejects_wrong_endpoints(self):
        a = Arrow(c0, c1)
        f = find_factor(a, c0, c1)
        with pytest.raises(ValueError, match="wrong endpoints"):
            merge_factorings(Arrow(c0, c2), a, {Arrow(c0, c2): f})


class TestHelpers:
    def test_refl_sub_all_shapes(self):
        for t in (U, c0, Arrow(c0, c1), Arrow(c0, U), Inter(c0, Arrow(c1, c2))):
            ok(refl_sub(t), t, t)

    def test_top_sub_shapes(self):
        for b in (U, Arrow(c0, U), Inter(U, Arrow(c0, U))):
            ok(top_sub(c1, b), c1, b)

    def test_top_sub_rejects_non_top(self):
        with pytest.raises(ValueError):
            top_sub(c0, c1)

    def test_split_inter(self):
        d = check_sub(Inter(c0, c1), Inter(c1, c0))
        l, r = split_inter(d)
        ok(l, Inter(c0, c1), c1)
        ok(r, Inter(c0, c1), c0)

    def test_split_inter_through_projection(self):
        t = Inter(Inter(c0, c1), c2)
        d = check_sub(t, Inter(c0, c1))
        l, r = split_inter(d)
        ok(l, t, c0)
        ok(r, t, c1)

    def test_split_inter_rejects_non_intersection_target(self):
        with pytest.raises(ValueError):
            split_inter(check_sub(c0, c0))

    def test_restrict_to_part(self):
        t = Inter(c0, Inter(c1, c2))
        d = check_sub(t, Inter(c2, Inter(c0, c1)))
        for p in (c0, c1, c2):
            ok(restrict_to_part(d, p), t, p)

    def test_restrict_to_part_rejects_foreign_part(self):
        d = check_sub(Inter(c0, c1), Inter(c0, c1))
        with pytest.raises(ValueError):
            restrict_to_part(d, c2)

    def test_restrict_to_contained(self):
        t = Inter(c0, Inter(c1, c2))
        d = check_sub(t, Inter(c2, Inter(c0, c1)))
        c = Inter(c1, Inter(c2, c2))
        ok(restrict_to_contained(d, c), t, c)

    def test_invert_arrow_through_projections(self):
        a = parse_type("(c0 -> c1) & (c0 -> c2)")
        b = parse_type("(c0 -> c1) & c3")
        lhs = Inter(a, c3)
        d = check_sub(lhs, b)
        f = invert_arrow(d, Arrow(c0, c1))
        assert f.against == lhs
        assert f.lhs == c0 and f.rhs == c1
        assert contained_in(f.witness, lhs)
        assert validate(f.dom_deriv).ok and validate(f.cod_deriv).ok

    def test_invert_arrow_rejects_top_codomain_target(self):
        d = check_sub(c0, Arrow(c1, U))
        with pytest.raises(ValueError):
            invert_arrow(d, Arrow(c1, U))


class TestTransCompose:
    def test_simple_chain(self):
        a, b, c = Inter(c0, c1), Inter(c1, c0), c0
        d = trans_compose(check_sub(a, b), check_sub(b, c))
        ok(d, a, c)

    def test_arrow_chain(self):
        a = parse_type("(c0 -> c1) & (c0 -> c2)")
        b = parse_type("c0 -> c1 & c2")
        c = parse_type("c0 & c1 -> c1 & c2")
        d = trans_compose(check_sub(a, b), check_sub(b, c))
        ok(d, a, c)

    def test_composite_stays_transitivity_free(self):
        # The result is a plain certificate: re-validation alone accepts it.
        a = parse_type("(c0 -> c1) & (c0 -> c2) & c3")
        b = parse_type("(c0 -> c1 & c2) & c3")
        c = parse_type("c0 & c3 -> c1")
        d1, d2 = check_sub(a, b), check_sub(b, c)
        assert d1 is not None and d2 is not None
        ok(trans_compose(d1, d2), a, c)

    def test_requires_matching_middle(self):
        with pytest.raises(ValueError, match="middle endpoints"):
            trans_compose(check_sub(c0, c0), check_sub(c1, c1))

    def test_rejects_invalid_inputs_when_checking(self):
        good = check_sub(c0, c0)
        bad = ReflAtom(c0, c0)
        worse = LbL(c0, c0, bad)  # malformed: lhs is not an intersection
        with pytest.raises(ValueError, match="invalid"):
            trans_compose(worse, good, check_inputs=True)

    def test_skips_input_validation_when_asked(self):
        a, b, c = Inter(c0, c1), c0, c0
        d = trans_compose(check_sub(a, b), check_sub(b, c), check_inputs=False)
        ok(d, a, c)

    def test_u_right_absorbs(self):
        a, b = Arrow(c0, c1), U
        d1 = check_sub(a, b)
        d2 = check_sub(b, Arrow(c2, U))
        d = trans_compose(d1, d2)
        ok(d, a, Arrow(c2, U))
        assert isinstance(d, UArrow)

    def test_measure_assert_is_plain_assert(self):
        import itsub.subtype as sub

        src = open(sub.__file__).read()
        assert "assert bound is None or measure_less" in src
