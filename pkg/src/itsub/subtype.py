"""Decision procedure, arrow factoring, and transitivity composition.

`check_sub` decides the judgment and produces a certificate; `trans_compose`
turns certificates of A <: B and B <: C into one of A <: C by structural
recursion, with a three-part measure asserted to decrease at every recursive
call.  The asserts are ordinary `assert` statements, so they vanish under
`python -O`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .derivation import (
    ArrowPrime,
    Derivation,
    Glb,
    LbL,
    LbR,
    ReflAtom,
    UArrow,
    UTop,
    validate,
)
from .types import (
    Arrow,
    Const,
    Inter,
    MeasureTriple,
    Top,
    Ty,
    cod,
    dom,
    is_part,
    is_top,
    measure,
    measure_less,
    parts,
    top_in_cod,
)

__all__ = [
    "check_sub",
    "Factoring",
    "find_factor",
    "find_factor_exhaustive",
    "merge_factorings",
    "refl_sub",
    "top_sub",
    "split_inter",
    "restrict_to_part",
    "restrict_to_contained",
    "invert_arrow",
    "trans_compose",
]


def check_sub(a: Ty, b: Ty) -> Derivation | None:
    """Decide a <: b; return a certificate, or None when the judgment fails.

    Syntax-directed on `b`: atoms search the intersection spine of `a`,
    intersections split, and arrows go through `find_factor` unless the
    target codomain is top.
    """
    if isinstance(b, Top):
        return UTop(a, b)
    if isinstance(b, Const):
        return _atom_chain(a, b)
    if isinstance(b, Inter):
        left = check_sub(a, b.left)
        if left is None:
            return None
        right = check_sub(a, b.right)
        if right is None:
            return None
        return Glb(a, b, left, right)
    if is_top(b.cod):
        return UArrow(a, b)
    f = find_factor(a, b.dom, b.cod)
    if f is None:
        return None
    return ArrowPrime(a, b, f.witness, f.dom_deriv, f.cod_deriv)


def _atom_chain(a: Ty, atom: Ty) -> Derivation | None:
    """Certificate of a <: atom: descend the spine to the leftmost
    occurrence of the atom."""
    if isinstance(a, Inter):
        if is_part(atom, a.left):
            inner = _atom_chain(a.left, atom)
            assert inner is not None
            return LbL(a, atom, inner)
        if is_part(atom, a.right):
            inner = _atom_chain(a.right, atom)
            assert inner is not None
            return LbR(a, atom, inner)
        return None
    if a == atom:
        return ReflAtom(a, atom)
    return None


@dataclass(frozen=True, slots=True)
class Factoring:
    """Evidence that the arrow lhs -> rhs factors the type `against`:
    `witness` is contained in `against`, every part of it is an arrow, none
    with top codomain, and the two derivations prove lhs <: dom(witness)
    and cod(witness) <: rhs."""

    witness: Ty
    dom_deriv: Derivation
    cod_deriv: Derivation
    against: Ty
    lhs: Ty
    rhs: Ty


def _fold_witness(
    chosen: list[tuple[Ty, Derivation]], c: Ty
) -> tuple[Ty, Derivation]:
    """Left-fold arrow parts into a witness intersection, pairing it with a
    glb-fold of the per-part domain derivations (each proving c <: dom)."""
    witness, dom_deriv = chosen[0]
    witness_dom = dom(witness)
    assert witness_dom is not None
    for p, dd in chosen[1:]:
        new_dom = Inter(witness_dom, p.dom)
        dom_deriv = Glb(c, new_dom, dom_deriv, dd)
        witness = Inter(witness, p)
        witness_dom = new_dom
    return witness, dom_deriv


def find_factor(a: Ty, c: Ty, d: Ty) -> Factoring | None:
    """Find a factoring of the arrow c -> d against `a`, using the maximal
    witness: the intersection of every arrow part of `a` whose domain is
    above `c` and whose codomain is not top.  Requires d itself not top."""
    if is_top(d):
        raise ValueError("find_factor requires a non-top target codomain")
    chosen: list[tuple[Ty, Derivation]] = []
    for p in parts(a):
        if isinstance(p, Arrow) and not is_top(p.cod):
            dd = check_sub(c, p.dom)
            if dd is not None:
                chosen.append((p, dd))
    if not chosen:
        return None
    witness, dom_deriv = _fold_witness(chosen, c)
    wc = cod(witness)
    assert wc is not None
    cod_deriv = check_sub(wc, d)
    if cod_deriv is None:
        return None
    return Factoring(witness, dom_deriv, cod_deriv, a, c, d)


def find_factor_exhaustive(a: Ty, c: Ty, d: Ty) -> Factoring | None:
    """Reference search over every nonempty subset of the arrow parts of
    `a`, in ascending bitmask order with bit i standing for the i-th arrow
    part; each candidate witness is the in-order fold of the subset.  Slow;
    used to cross-check `find_factor`."""
    if is_top(d):
        raise ValueError("find_factor_exhaustive requires a non-top target codomain")
    arrows = [p for p in parts(a) if isinstance(p, Arrow)]
    for mask in range(1, 1 << len(arrows)):
        subset = [arrows[i] for i in range(len(arrows)) if mask >> i & 1]
        chosen: list[tuple[Ty, Derivation]] = []
        for p in subset:
            if is_top(p.cod):
                break
            dd = check_sub(c, p.dom)
            if dd is None:
                break
            chosen.append((p, dd))
        if len(chosen) != len(subset):
            continue
        witness, dom_deriv = _fold_witness(chosen, c)
        wc = cod(witness)
        assert wc is not None
        cod_deriv = check_sub(wc, d)
        if cod_deriv is None:
            continue
        return Factoring(witness, dom_deriv, cod_deriv, a, c, d)
    return None


def merge_factorings(a: Ty, b: Ty, per_part: Mapping[Ty, Factoring]) -> Factoring:
    """Combine factorings of each arrow part of `a` against `b` into a
    factoring of dom(a) -> cod(a) against `b`.

    Requires every part of `a` to be an arrow, none with top codomain, and
    `per_part` to map each arrow part p to a factoring with against == b,
    lhs == p.dom, and rhs == p.cod.
    """
    if dom(a) is None:
        raise ValueError("merge_factorings requires every part to be an arrow")
    if top_in_cod(a):
        raise ValueError("merge_factorings requires no part with top codomain")
    return _merge(a, b, per_part)


def _merge(t: Ty, b: Ty, per_part: Mapping[Ty, Factoring]) -> Factoring:
    if isinstance(t, Arrow):
        f = per_part.get(t)
        if f is None:
            raise ValueError(f"missing factoring for part {t!r}")
        if f.against != b or f.lhs != t.dom or f.rhs != t.cod:
            raise ValueError(f"factoring for part {t!r} has wrong endpoints")
        return f
    assert isinstance(t, Inter)
    f1 = _merge(t.left, b, per_part)
    f2 = _merge(t.right, b, per_part)
    witness = Inter(f1.witness, f2.witness)
    dom_t = Inter(f1.lhs, f2.lhs)
    cod_t = Inter(f1.rhs, f2.rhs)
    wd1 = dom(f1.witness)
    wd2 = dom(f2.witness)
    wc1 = cod(f1.witness)
    wc2 = cod(f2.witness)
    assert wd1 is not None and wd2 is not None
    assert wc1 is not None and wc2 is not None
    dom_deriv = Glb(
        dom_t,
        Inter(wd1, wd2),
        LbL(dom_t, wd1, f1.dom_deriv),
        LbR(dom_t, wd2, f2.dom_deriv),
    )
    cod_deriv = Glb(
        Inter(wc1, wc2),
        cod_t,
        LbL(Inter(wc1, wc2), f1.rhs, f1.cod_deriv),
        LbR(Inter(wc1, wc2), f2.rhs, f2.cod_deriv),
    )
    return Factoring(witness, dom_deriv, cod_deriv, b, dom_t, cod_t)


@lru_cache(maxsize=65536)
def refl_sub(a: Ty) -> Derivation:
    """Certificate of a <: a for any type."""
    if isinstance(a, (Top, Const)):
        return ReflAtom(a, a)
    if isinstance(a, Arrow):
        if is_top(a.cod):
            return UArrow(a, a)
        return ArrowPrime(a, a, a, refl_sub(a.dom), refl_sub(a.cod))
    assert isinstance(a, Inter)
    return Glb(
        a,
        a,
        LbL(a, a.left, refl_sub(a.left)),
        LbR(a, a.right, refl_sub(a.right)),
    )


def top_sub(a: Ty, b: Ty) -> Derivation:
    """Certificate of a <: b when b is top."""
    if isinstance(b, Top):
        return UTop(a, b)
    if isinstance(b, Arrow) and is_top(b.cod):
        return UArrow(a, b)
    if isinstance(b, Inter):
        return Glb(a, b, top_sub(a, b.left), top_sub(a, b.right))
    raise ValueError("top_sub requires a top right endpoint")


def split_inter(d: Derivation) -> tuple[Derivation, Derivation]:
    """From a certificate of A <: B cap C, certificates of A <: B and
    A <: C."""
    rhs = d.rhs
    if not isinstance(rhs, Inter):
        raise ValueError("split_inter needs an intersection on the right")
    if isinstance(d, Glb):
        return d.left, d.right
    if isinstance(d, LbL):
        l, r = split_inter(d.sub)
        return LbL(d.lhs, l.rhs, l), LbL(d.lhs, r.rhs, r)
    if isinstance(d, LbR):
        l, r = split_inter(d.sub)
        return LbR(d.lhs, l.rhs, l), LbR(d.lhs, r.rhs, r)
    raise ValueError("no rule other than glb/lb can conclude an intersection")


def restrict_to_part(d: Derivation, c: Ty) -> Derivation:
    """From a certificate of A <: B and a part c of B, a certificate of
    A <: c (leftmost occurrence)."""
    b = d.rhs
    if not isinstance(b, Inter):
        if b == c:
            return d
        raise ValueError("restrict_to_part: c is not a part of the right endpoint")
    l, r = split_inter(d)
    if is_part(c, b.left):
        return restrict_to_part(l, c)
    if is_part(c, b.right):
        return restrict_to_part(r, c)
    raise ValueError("restrict_to_part: c is not a part of the right endpoint")


def restrict_to_contained(d: Derivation, c: Ty) -> Derivation:
    """From a certificate of A <: B and a type c contained in B, a
    certificate of A <: c."""
    if isinstance(c, Inter):
        return Glb(
            d.lhs,
            c,
            restrict_to_contained(d, c.left),
            restrict_to_contained(d, c.right),
        )
    return restrict_to_part(d, c)


def invert_arrow(d: Derivation, target: Arrow) -> Factoring:
    """From a certificate of A <: B and an arrow part `target` of B with a
    non-top codomain, a factoring of `target` against A."""
    if isinstance(d, (LbL, LbR)):
        f = invert_arrow(d.sub, target)
        return Factoring(f.witness, f.dom_deriv, f.cod_deriv, d.lhs, f.lhs, f.rhs)
    if isinstance(d, Glb):
        rhs = d.rhs
        assert isinstance(rhs, Inter)
        if is_part(target, rhs.left):
            return invert_arrow(d.left, target)
        if is_part(target, rhs.right):
            return invert_arrow(d.right, target)
        raise ValueError("invert_arrow: target is not a part of the right endpoint")
    if isinstance(d, ArrowPrime):
        return Factoring(
            d.witness, d.dom_deriv, d.cod_deriv, d.lhs, target.dom, target.cod
        )
    raise ValueError(
        "invert_arrow needs a non-top arrow part on the right; "
        f"rule {type(d).__name__} cannot provide one"
    )


def trans_compose(
    d1: Derivation, d2: Derivation, check_inputs: bool = True
) -> Derivation:
    """Compose certificates of A <: B and B <: C into one of A <: C.

    The middle endpoints must agree structurally.  With `check_inputs` both
    inputs are re-validated first; internal recursion skips that, and
    instead asserts that the (depth, size, size) measure of the pending
    composition strictly decreases at every recursive call.
    """
    if d1.rhs != d2.lhs:
        raise ValueError("trans_compose: middle endpoints do not match")
    if check_inputs:
        for which, d in (("first", d1), ("second", d2)):
            res = validate(d)
            if not res.ok:
                raise ValueError(
                    f"trans_compose: {which} certificate is invalid at "
                    f"{'/'.join(res.path) or '<root>'}: {res.reason}"
                )
    return _compose(d1, d2, None)


def _compose(
    d1: Derivation, d2: Derivation, bound: MeasureTriple | None
) -> Derivation:
    cur = measure(d2.lhs, d2.rhs)
    assert bound is None or measure_less(cur, bound), (
        "transitivity measure failed to decrease"
    )
    if isinstance(d2, ReflAtom):
        return d1
    if isinstance(d2, LbL):
        l, _ = split_inter(d1)
        return _compose(l, d2.sub, cur)
    if isinstance(d2, LbR):
        _, r = split_inter(d1)
        return _compose(r, d2.sub, cur)
    if isinstance(d2, Glb):
        return Glb(
            d1.lhs,
            d2.rhs,
            _compose(d1, d2.left, cur),
            _compose(d1, d2.right, cur),
        )
    if isinstance(d2, UTop):
        return UTop(d1.lhs, d2.rhs)
    if isinstance(d2, UArrow):
        return UArrow(d1.lhs, d2.rhs)
    assert isinstance(d2, ArrowPrime)
    narrowed = restrict_to_contained(d1, d2.witness)
    per_part = {p: invert_arrow(narrowed, p) for p in parts(d2.witness)}
    merged = merge_factorings(d2.witness, d1.lhs, per_part)
    dom_deriv = _compose(d2.dom_deriv, merged.dom_deriv, cur)
    cod_deriv = _compose(merged.cod_deriv, d2.cod_deriv, cur)
    return ArrowPrime(d1.lhs, d2.rhs, merged.witness, dom_deriv, cod_deriv)
