"""Move certificates between the two proof systems.

The syntax-directed system has no transitivity rule and is what the
decision procedure emits. The declarative system has reflexivity,
transitivity, projections, and the arrow distribution axiom; it is the
presentation most type-theory texts use. Certificates translate both
ways without changing endpoints.
"""

from itsub import (
    bcd_search,
    bcd_validate,
    check_sub,
    format_derivation_tree,
    from_bcd,
    parse_type,
    to_bcd,
    validate,
)


def main() -> None:
    a = parse_type("(c0 -> c1) & (c1 -> c2)")
    b = parse_type("c0 & c1 -> c1 & c2")

    d = check_sub(a, b)
    print("syntax-directed certificate:")
    print(format_derivation_tree(d))

    bd = to_bcd(d)
    print("\ntranslated to the declarative system:")
    print(format_derivation_tree(bd))
    print("declarative validator:", bcd_validate(bd).ok)

    # bounded proof search works directly in the declarative system
    found = bcd_search(a, b, max_depth=8)
    if found is None:
        print("\nsearch: inconclusive at depth 8")
    else:
        print("\nsearch found its own proof; translating it back:")
        back = from_bcd(found)
        print(format_derivation_tree(back))
        print("syntax-directed validator:", validate(back).ok)

    # search is sound but bounded: a miss is not a refutation
    tricky_rhs = parse_type("c0 -> c2 -> U")
    print("\nc0 <: c0 -> c2 -> U")
    print("  decision procedure:", check_sub(parse_type("c0"), tricky_rhs) is not None)
    print("  bounded search:    ", bcd_search(parse_type("c0"), tricky_rhs))


if __name__ == "__main__":
    main()
