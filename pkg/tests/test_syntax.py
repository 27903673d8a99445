"""Concrete syntax, parse errors, JSON certificates, and tree rendering."""

import json

import pytest
from hypothesis import given, strategies as st

from itsub import (
    Arrow,
    Const,
    Inter,
    ParseError,
    Top,
    check_sub,
    derivation_from_json,
    derivation_to_json,
    format_derivation_tree,
    parse_type,
    print_type,
    to_bcd,
)
from itsub.derivation import Glb, ReflAtom, UTop
from itsub.universe import enumerate_universe, random_type, UniverseSpec

U = Top()
c0, c1, c2 = Const(0), Const(1), Const(2)


class TestPrint:
    def test_atoms(self):
        assert print_type(U) == "U"
        assert print_type(c0) == "c0"
        assert print_type(Const(42)) == "c42"

    def test_intersection_binds_tighter_than_arrow(self):
        assert print_type(Arrow(Inter(c0, c1), c2)) == "c0 & c1 -> c2"
        assert print_type(Inter(c0, Arrow(c1, c2))) == "c0 & (c1 -> c2)"

    def test_arrow_right_associative(self):
        assert print_type(Arrow(c0, Arrow(c1, c2))) == "c0 -> c1 -> c2"
        assert print_type(Arrow(Arrow(c0, c1), c2)) == "(c0 -> c1) -> c2"

    def test_intersection_left_associative(self):
        assert print_type(Inter(Inter(c0, c1), c2)) == "c0 & c1 & c2"
        assert print_type(Inter(c0, Inter(c1, c2))) == "c0 & (c1 & c2)"

    def test_arrow_in_intersection_parenthesized(self):
        t = Inter(Arrow(c0, c1), Arrow(c0, c2))
        assert print_type(t) == "(c0 -> c1) & (c0 -> c2)"


class TestParse:
    def test_precedence(self):
        assert parse_type("c0 & c1 -> c2") == Arrow(Inter(c0, c1), c2)

    def test_right_associativity(self):
        assert parse_type("c0 -> c1 -> c2") == Arrow(c0, Arrow(c1, c2))

    def test_left_associativity(self):
        assert parse_type("c0 & c1 & c2") == Inter(Inter(c0, c1), c2)

    def test_parens_override(self):
        assert parse_type("c0 & (c1 & c2)") == Inter(c0, Inter(c1, c2))
        assert parse_type("(c0 -> c1) -> c2") == Arrow(Arrow(c0, c1), c2)

    def test_whitespace_insensitive(self):
        want = Arrow(Inter(c0, c1), c2)
        assert parse_type("c0&c1->c2") == want
        assert parse_type("  c0\t&\n c1  ->c2 ") == want

    def test_unicode_operators_accepted(self):
        assert parse_type("c0 ∩ c1 → c2") == Arrow(Inter(c0, c1), c2)
        assert print_type(parse_type("c0∩c1→c2")) == "c0 & c1 -> c2"

    def test_multidigit_constants(self):
        assert parse_type("c107") == Const(107)


class TestParseErrors:
    def test_truncated_arrow_reports_end_of_input(self):
        with pytest.raises(ParseError) as ei:
            parse_type("c0->")
        err = ei.value
        assert (err.span.start, err.span.end) == (4, 4)
        assert err.found == "end of input"
        assert "'('" in err.expected

    def test_empty_input(self):
        with pytest.raises(ParseError) as ei:
            parse_type("")
        assert ei.value.span == type(ei.value.span)(0, 0)

    def test_constant_needs_digits(self):
        with pytest.raises(ParseError) as ei:
            parse_type("c & c0")
        assert ei.value.found == "'c' without digits"

    def test_unclosed_paren(self):
        with pytest.raises(ParseError) as ei:
            parse_type("(c0 -> c1")
        assert "')'" in ei.value.expected

    def test_trailing_garbage(self):
        with pytest.raises(ParseError) as ei:
            parse_type("c0 c1")
        assert ei.value.expected == frozenset({"'&'", "'->'", "end of input"})

    def test_span_counts_bytes_not_characters(self):
        # The Unicode intersection sign is three bytes long.
        with pytest.raises(ParseError) as ei:
            parse_type("c0 ∩")
        assert ei.value.span.start == len("c0 ∩".encode())

    def test_message_mentions_location(self):
        with pytest.raises(ParseError, match=r"at bytes 4\.\.4"):
            parse_type("c0->")


class TestRoundTrip:
    def test_universe_size_one(self):
        for t in enumerate_universe(UniverseSpec(2, 1)):
            assert parse_type(print_type(t)) == t

    @given(st.integers(min_value=0, max_value=10**6))
    def test_random_trees(self, seed):
        t = random_type(seed, 4, 5)
        assert parse_type(print_type(t)) == t


class TestJson:
    def test_atom_certificate_exact_text(self):
        d = ReflAtom(c0, c0)
        assert (
            derivation_to_json(d)
            == '{"rule":"refl_atom","lhs":"c0","rhs":"c0","premises":[]}'
        )

    def test_key_order_is_stable(self):
        d = check_sub(Inter(c0, c1), Inter(c1, c0))
        obj = json.loads(derivation_to_json(d), object_pairs_hook=list)
        assert [k for k, _ in obj] == ["rule", "lhs", "rhs", "premises"]

    def test_witness_key_present_for_arrow_rule(self):
        a = parse_type("(c0 -> c1) & (c0 -> c2)")
        b = parse_type("c0 -> c1 & c2")
        obj = json.loads(
            derivation_to_json(check_sub(a, b)), object_pairs_hook=list
        )
        assert [k for k, _ in obj] == ["rule", "lhs", "rhs", "witness", "premises"]

    def test_new_system_roundtrip(self):
        a = parse_type("(c0 -> c1) & (c0 -> c2) & U")
        b = parse_type("(c0 -> c1 & c2) & U")
        d = check_sub(a, b)
        assert d is not None
        back = derivation_from_json(derivation_to_json(d))
        assert back == d

    def test_bcd_roundtrip_and_mid_key(self):
        d = check_sub(Inter(c0, c1), c1)
        bd = to_bcd(d)
        text = derivation_to_json(bd)
        obj = json.loads(text, object_pairs_hook=list)
        assert [k for k, _ in obj] == ["rule", "lhs", "rhs", "mid", "premises"]
        assert derivation_from_json(text, system="bcd") == bd

    def test_indent_changes_layout_not_content(self):
        d = check_sub(Inter(c0, c1), c0)
        compact = derivation_to_json(d)
        pretty = derivation_to_json(d, indent=2)
        assert "\n" in pretty and "\n" not in compact
        assert json.loads(compact) == json.loads(pretty)

    def test_refuses_invalid_certificate(self):
        bogus = ReflAtom(c0, c1)
        with pytest.raises(ValueError, match="invalid certificate"):
            derivation_to_json(bogus)

    def test_rebuild_does_not_validate(self):
        text = '{"rule":"refl_atom","lhs":"c0","rhs":"c1","premises":[]}'
        d = derivation_from_json(text)
        assert d == ReflAtom(c0, c1)

    def test_malformed_json_raises_value_error(self):
        with pytest.raises(ValueError, match="not valid JSON"):
            derivation_from_json("{")

    def test_missing_field(self):
        with pytest.raises(ValueError, match="missing"):
            derivation_from_json('{"rule":"refl_atom","lhs":"c0"}')

    def test_wrong_premise_count(self):
        text = '{"rule":"glb","lhs":"c0","rhs":"c0 & c0","premises":[]}'
        with pytest.raises(ValueError, match="exactly 2"):
            derivation_from_json(text)

    def test_unknown_rule(self):
        with pytest.raises(ValueError, match="unknown rule"):
            derivation_from_json(
                '{"rule":"nope","lhs":"c0","rhs":"c0","premises":[]}'
            )

    def test_unknown_system(self):
        with pytest.raises(ValueError, match="unknown system"):
            derivation_from_json(
                '{"rule":"refl","lhs":"c0","rhs":"c0","premises":[]}',
                system="classic",
            )

    def test_rule_vocabularies_are_disjoint_where_shapes_differ(self):
        # The declarative vocabulary has no refl_atom rule.
        with pytest.raises(ValueError, match="unknown rule"):
            derivation_from_json(
                '{"rule":"refl_atom","lhs":"c0","rhs":"c0","premises":[]}',
                system="bcd",
            )


class TestTreeFormat:
    def test_shows_rules_endpoints_and_witness(self):
        a = parse_type("(c0 -> c1) & (c0 -> c2)")
        b = parse_type("c0 -> c1 & c2")
        text = format_derivation_tree(check_sub(a, b))
        lines = text.splitlines()
        assert lines[0].startswith("arrow_prime:")
        assert "[witness (c0 -> c1) & (c0 -> c2)]" in lines[0]
        assert all("<:" in line for line in lines)

    def test_bcd_uses_its_own_relation_symbol(self):
        d = to_bcd(check_sub(Inter(c0, c1), c0))
        text = format_derivation_tree(d)
        assert "<=" in text and "<:" not in text
        assert "[mid " in text

    def test_indentation_follows_premises(self):
        d = Glb(c0, Inter(U, U), UTop(c0, U), UTop(c0, U))
        lines = format_derivation_tree(d).splitlines()
        assert lines[0].startswith("glb:")
        assert lines[1].startswith("  u_top:")
        assert lines[2].startswith("  u_top:")
