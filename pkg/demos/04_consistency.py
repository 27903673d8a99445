"""Consistency: which types could describe one and the same value.

Constants agree only with themselves, arrows agree unless their domains
overlap while their codomains disagree, and top-shaped parts agree with
everything. The relation is closed upward under subtyping, which is what
makes it usable as a pre-check: widening both sides never introduces a
conflict.
"""

from itsub import (
    check_sub,
    consistent,
    occurring_types,
    parse_type,
    print_type,
    self_consistent,
)

PAIRS = [
    ("c0", "c0"),
    ("c0", "c1"),
    ("c0 -> c1", "c2 -> c3"),
    ("c0 -> c1", "c0 -> c2"),
    ("c0", "c1 -> U"),
]

SELF = [
    "c0 & c1",
    "(c0 -> c1) & (c2 -> c3)",
    "(c0 -> c1) & (c0 -> c2)",
    "U",
]


def main() -> None:
    for sa, sb in PAIRS:
        print(f"consistent({sa}, {sb}) = {consistent(parse_type(sa), parse_type(sb))}")
    print()
    for s in SELF:
        print(f"self_consistent({s}) = {self_consistent(parse_type(s))}")

    # upward closure in action
    a, b = parse_type("c0 -> c1"), parse_type("c2 -> c3")
    c, d = parse_type("c0 & c2 -> c1"), parse_type("U")
    assert check_sub(a, c) and check_sub(b, d)
    print(f"\nwiden both sides: consistent stays {consistent(c, d)}")

    # the endpoint guarantee does not extend into certificate bodies:
    # reflexivity at this arrow mentions its own conflicting domain
    t = parse_type("c0 & c1 -> c2")
    cert = check_sub(t, t)
    inner = [u for u in occurring_types(cert) if not self_consistent(u)]
    print(f"\n{print_type(t)} is self-consistent: {self_consistent(t)}")
    print("non-self-consistent types inside its reflexivity certificate:",
          sorted({print_type(u) for u in inner}))


if __name__ == "__main__":
    main()
