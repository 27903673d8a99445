"""Decide subtyping questions and inspect the resulting certificates.

The decision procedure either returns a derivation tree or None. Returned
trees are ordinary data: they can be validated independently, printed,
serialized, and shipped to a checker that trusts only the validator.
"""

from itsub import (
    check_sub,
    derivation_to_json,
    format_derivation_tree,
    parse_type,
    validate,
)

QUERIES = [
    ("c0 & c1", "c1 & c0"),
    ("(c0 -> c1) & (c0 -> c2)", "c0 -> c1 & c2"),
    ("c0 -> c1", "c0 & c2 -> c1"),
    ("c0", "c1 -> U"),
    ("U", "c0"),
    ("c0", "c0 -> c1"),
]


def main() -> None:
    for lhs_src, rhs_src in QUERIES:
        a, b = parse_type(lhs_src), parse_type(rhs_src)
        d = check_sub(a, b)
        print(f"{lhs_src}  <:  {rhs_src}")
        if d is None:
            print("  not derivable\n")
            continue
        res = validate(d)
        print(f"  derivable, validator says ok={res.ok}")
        print("  " + format_derivation_tree(d).replace("\n", "\n  "))
        print()

    # certificates serialize to JSON; the compact form is one line
    d = check_sub(parse_type("c0 & c1"), parse_type("c0"))
    print("serialized:", derivation_to_json(d))


if __name__ == "__main__":
    main()
