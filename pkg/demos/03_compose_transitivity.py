"""Compose two certificates into one, without a transitivity rule.

Given proofs of A <: B and B <: C, trans_compose builds a proof of
A <: C in the same transitivity-free system. The composition recurses
along a well-founded measure on the middle and right types, so it
terminates even though intersection types let derivations grow.
"""

from itsub import (
    check_sub,
    format_derivation_tree,
    measure,
    parse_type,
    trans_compose,
    validate,
)

CHAINS = [
    ("c0 & c1 & c2", "c1 & c2", "c2"),
    ("(c0 -> c1) & (c1 -> c2)", "c0 & c1 -> c1 & c2", "c0 & c1 -> c1"),
    ("c0 & c1", "c0", "U"),
]


def main() -> None:
    for sa, sb, sc in CHAINS:
        a, b, c = parse_type(sa), parse_type(sb), parse_type(sc)
        d1 = check_sub(a, b)
        d2 = check_sub(b, c)
        print(f"{sa}  <:  {sb}  <:  {sc}")
        print(f"  measure on the second leg: {measure(b, c)}")
        composed = trans_compose(d1, d2)
        print(f"  composed endpoints: {composed.lhs} <: {composed.rhs}")
        print(f"  validator: {validate(composed).ok}")
        print("  " + format_derivation_tree(composed).replace("\n", "\n  "))
        print()


if __name__ == "__main__":
    main()
