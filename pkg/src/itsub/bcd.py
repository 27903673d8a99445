"""The declarative subtyping system with transitivity, and translations
between its certificates and the transitivity-free ones.

The declarative system is the classical one: reflexivity, transitivity,
intersection introduction/elimination, arrow contravariance/covariance, the
arrow/intersection distribution axiom, and the two top rules.  `to_bcd` and
`from_bcd` translate certificates in both directions while preserving the
endpoints exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import derivation as dv
from . import types as ty
from .derivation import ValidationResult
from .subtype import refl_sub, top_sub, trans_compose
from .types import Ty

__all__ = [
    "BcdDerivation",
    "Refl",
    "Trans",
    "InclL",
    "InclR",
    "Glb",
    "Arrow",
    "ArrowInter",
    "UTop",
    "UArrow",
    "bcd_validate",
    "bcd_search",
    "lemma_fun",
    "lemma_dist",
    "lemma_eta",
    "to_bcd",
    "from_bcd",
]


@dataclass(frozen=True, slots=True)
class BcdDerivation:
    """Base class; every node carries the endpoints of its judgment."""

    lhs: Ty
    rhs: Ty


@dataclass(frozen=True, slots=True)
class Refl(BcdDerivation):
    """A <= A."""

    rule = "refl"


@dataclass(frozen=True, slots=True)
class Trans(BcdDerivation):
    """A <= C from A <= B and B <= C; `mid` records B."""

    mid: Ty
    left: BcdDerivation
    right: BcdDerivation
    rule = "trans"


@dataclass(frozen=True, slots=True)
class InclL(BcdDerivation):
    """A cap B <= A."""

    rule = "incl_l"


@dataclass(frozen=True, slots=True)
class InclR(BcdDerivation):
    """A cap B <= B."""

    rule = "incl_r"


@dataclass(frozen=True, slots=True)
class Glb(BcdDerivation):
    """A <= C cap D from A <= C and A <= D."""

    left: BcdDerivation
    right: BcdDerivation
    rule = "glb"


@dataclass(frozen=True, slots=True)
class Arrow(BcdDerivation):
    """A -> B <= C -> D from C <= A and B <= D."""

    dom_deriv: BcdDerivation
    cod_deriv: BcdDerivation
    rule = "arrow"


@dataclass(frozen=True, slots=True)
class ArrowInter(BcdDerivation):
    """(A -> B) cap (A -> C) <= A -> (B cap C), with the two domains
    structurally equal."""

    rule = "arrow_inter"


@dataclass(frozen=True, slots=True)
class UTop(BcdDerivation):
    """A <= U."""

    rule = "u_top"


@dataclass(frozen=True, slots=True)
class UArrow(BcdDerivation):
    """U <= C -> U, the codomain being the atom U itself."""

    rule = "u_arrow"


_OK = ValidationResult(True)


def _fail(path: tuple[str, ...], reason: str) -> ValidationResult:
    return ValidationResult(False, path, reason)


def bcd_validate(d: BcdDerivation) -> ValidationResult:
    """Re-check every rule application in `d`."""
    return _validate(d, ())


def _validate(d: BcdDerivation, path: tuple[str, ...]) -> ValidationResult:
    if isinstance(d, Refl):
        if d.lhs != d.rhs:
            return _fail(path, "refl endpoints differ")
        return _OK
    if isinstance(d, Trans):
        if d.left.lhs != d.lhs or d.left.rhs != d.mid:
            return _fail(path, "trans left premise endpoints do not match")
        if d.right.lhs != d.mid or d.right.rhs != d.rhs:
            return _fail(path, "trans right premise endpoints do not match")
        res = _validate(d.left, path + ("left",))
        if not res.ok:
            return res
        return _validate(d.right, path + ("right",))
    if isinstance(d, InclL):
        if not isinstance(d.lhs, ty.Inter) or d.rhs != d.lhs.left:
            return _fail(path, "incl_l needs A cap B on the left and A on the right")
        return _OK
    if isinstance(d, InclR):
        if not isinstance(d.lhs, ty.Inter) or d.rhs != d.lhs.right:
            return _fail(path, "incl_r needs A cap B on the left and B on the right")
        return _OK
    if isinstance(d, Glb):
        if not isinstance(d.rhs, ty.Inter):
            return _fail(path, "glb needs an intersection on the right")
        if d.left.lhs != d.lhs or d.left.rhs != d.rhs.left:
            return _fail(path, "glb left premise endpoints do not match")
        if d.right.lhs != d.lhs or d.right.rhs != d.rhs.right:
            return _fail(path, "glb right premise endpoints do not match")
        res = _validate(d.left, path + ("left",))
        if not res.ok:
            return res
        return _validate(d.right, path + ("right",))
    if isinstance(d, Arrow):
        if not isinstance(d.lhs, ty.Arrow) or not isinstance(d.rhs, ty.Arrow):
            return _fail(path, "arrow needs arrows on both sides")
        if d.dom_deriv.lhs != d.rhs.dom or d.dom_deriv.rhs != d.lhs.dom:
            return _fail(path, "arrow domain premise endpoints do not match")
        if d.cod_deriv.lhs != d.lhs.cod or d.cod_deriv.rhs != d.rhs.cod:
            return _fail(path, "arrow codomain premise endpoints do not match")
        res = _validate(d.dom_deriv, path + ("dom_deriv",))
        if not res.ok:
            return res
        return _validate(d.cod_deriv, path + ("cod_deriv",))
    if isinstance(d, ArrowInter):
        l, r = d.lhs, d.rhs
        if (
            not isinstance(l, ty.Inter)
            or not isinstance(l.left, ty.Arrow)
            or not isinstance(l.right, ty.Arrow)
            or not isinstance(r, ty.Arrow)
        ):
            return _fail(path, "arrow_inter shape mismatch")
        if l.left.dom != l.right.dom or r.dom != l.left.dom:
            return _fail(path, "arrow_inter domains are not structurally equal")
        if r.cod != ty.Inter(l.left.cod, l.right.cod):
            return _fail(path, "arrow_inter codomain is not the paired intersection")
        return _OK
    if isinstance(d, UTop):
        if not isinstance(d.rhs, ty.Top):
            return _fail(path, "u_top needs U on the right")
        return _OK
    if isinstance(d, UArrow):
        if not isinstance(d.lhs, ty.Top):
            return _fail(path, "u_arrow needs U on the left")
        if not isinstance(d.rhs, ty.Arrow) or not isinstance(d.rhs.cod, ty.Top):
            return _fail(path, "u_arrow needs an arrow with codomain U on the right")
        return _OK
    return _fail(path, f"unknown rule {type(d).__name__}")


def _subterms_ordered(t: Ty) -> list[Ty]:
    """Pre-order subterm listing without duplicates."""
    seen: set[Ty] = set()
    out: list[Ty] = []

    def walk(u: Ty) -> None:
        if u in seen:
            return
        seen.add(u)
        out.append(u)
        if isinstance(u, ty.Arrow):
            walk(u.dom)
            walk(u.cod)
        elif isinstance(u, ty.Inter):
            walk(u.left)
            walk(u.right)

    walk(t)
    return out


def _midpoint_pool(a: Ty, b: Ty) -> list[Ty]:
    """Transitivity midpoint candidates: subterms of both endpoints plus
    single intersections of at most two such subterms."""
    seen: set[Ty] = set()
    pool: list[Ty] = []
    for t in _subterms_ordered(a) + _subterms_ordered(b):
        if t not in seen:
            seen.add(t)
            pool.append(t)
    base = list(pool)
    for s in base:
        for t in base:
            cand = ty.Inter(s, t)
            if cand not in seen:
                seen.add(cand)
                pool.append(cand)
    return pool


class _StepLimit(Exception):
    pass


def bcd_search(
    a: Ty, b: Ty, max_depth: int = 8, max_steps: int = 200_000
) -> BcdDerivation | None:
    """Iterative-deepening proof search in the declarative system.

    A returned certificate always validates; absence proves nothing, since
    both the depth and the step budget are bounded and the transitivity
    midpoints are drawn only from `_midpoint_pool`.
    """
    pool = _midpoint_pool(a, b)
    memo_hit: dict[tuple[Ty, Ty], tuple[BcdDerivation, int]] = {}
    memo_fail: dict[tuple[Ty, Ty], int] = {}
    steps = 0

    def dfs(l: Ty, r: Ty, budget: int) -> tuple[BcdDerivation, int] | None:
        nonlocal steps
        steps += 1
        if steps > max_steps:
            raise _StepLimit
        if budget <= 0:
            return None
        hit = memo_hit.get((l, r))
        if hit is not None and hit[1] <= budget:
            return hit
        if memo_fail.get((l, r), 0) >= budget:
            return None
        found = _expand(l, r, budget)
        if found is not None:
            memo_hit[(l, r)] = found
            return found
        prev = memo_fail.get((l, r), 0)
        if budget > prev:
            memo_fail[(l, r)] = budget
        return None

    def _expand(l: Ty, r: Ty, budget: int) -> tuple[BcdDerivation, int] | None:
        if l == r:
            return Refl(l, r), 1
        if isinstance(r, ty.Top):
            return UTop(l, r), 1
        if (
            isinstance(l, ty.Top)
            and isinstance(r, ty.Arrow)
            and isinstance(r.cod, ty.Top)
        ):
            return UArrow(l, r), 1
        if isinstance(l, ty.Inter):
            if r == l.left:
                return InclL(l, r), 1
            if r == l.right:
                return InclR(l, r), 1
            if (
                isinstance(l.left, ty.Arrow)
                and isinstance(l.right, ty.Arrow)
                and isinstance(r, ty.Arrow)
                and l.left.dom == l.right.dom
                and r.dom == l.left.dom
                and r.cod == ty.Inter(l.left.cod, l.right.cod)
            ):
                return ArrowInter(l, r), 1
        if isinstance(r, ty.Inter):
            x = dfs(l, r.left, budget - 1)
            if x is not None:
                y = dfs(l, r.right, budget - 1)
                if y is not None:
                    return Glb(l, r, x[0], y[0]), 1 + max(x[1], y[1])
        if isinstance(l, ty.Arrow) and isinstance(r, ty.Arrow):
            x = dfs(r.dom, l.dom, budget - 1)
            if x is not None:
                y = dfs(l.cod, r.cod, budget - 1)
                if y is not None:
                    return Arrow(l, r, x[0], y[0]), 1 + max(x[1], y[1])
        for m in pool:
            if m == l or m == r:
                continue
            x = dfs(l, m, budget - 1)
            if x is None:
                continue
            y = dfs(m, r, budget - 1)
            if y is None:
                continue
            return Trans(l, r, m, x[0], y[0]), 1 + max(x[1], y[1])
        return None

    try:
        for limit in range(1, max_depth + 1):
            found = dfs(a, b, limit)
            if found is not None:
                return found[0]
    except _StepLimit:
        return None
    return None


def _trans(x: BcdDerivation, y: BcdDerivation) -> Trans:
    assert x.rhs == y.lhs
    return Trans(x.lhs, y.rhs, x.rhs, x, y)


def _glb(x: BcdDerivation, y: BcdDerivation) -> Glb:
    assert x.lhs == y.lhs
    return Glb(x.lhs, ty.Inter(x.rhs, y.rhs), x, y)


def lemma_fun(
    d1: dv.Derivation, d2: dv.Derivation, check_inputs: bool = True
) -> dv.Derivation:
    """From certificates of C <: A and B <: D, a certificate of
    A -> B <: C -> D in the transitivity-free system."""
    if check_inputs:
        for d in (d1, d2):
            res = dv.validate(d)
            if not res.ok:
                raise ValueError(f"lemma_fun: invalid input certificate: {res.reason}")
    a, b, d_ = d1.rhs, d2.lhs, d2.rhs
    lhs = ty.Arrow(a, b)
    rhs = ty.Arrow(d1.lhs, d_)
    if ty.is_top(d_):
        return dv.UArrow(lhs, rhs)
    # B <: D with D not top forces B not top, so lhs is its own witness.
    assert not ty.is_top(b)
    return dv.ArrowPrime(lhs, rhs, lhs, d1, d2)


def lemma_dist(a: Ty, b: Ty, c: Ty) -> dv.Derivation:
    """Certificate of (a -> b) cap (a -> c) <: a -> (b cap c)."""
    lhs = ty.Inter(ty.Arrow(a, b), ty.Arrow(a, c))
    rhs = ty.Arrow(a, ty.Inter(b, c))
    top_b, top_c = ty.is_top(b), ty.is_top(c)
    if top_b and top_c:
        return dv.UArrow(lhs, rhs)
    if top_b:
        witness = ty.Arrow(a, c)
        cod_deriv = dv.Glb(c, ty.Inter(b, c), top_sub(c, b), refl_sub(c))
        return dv.ArrowPrime(lhs, rhs, witness, refl_sub(a), cod_deriv)
    if top_c:
        witness = ty.Arrow(a, b)
        cod_deriv = dv.Glb(b, ty.Inter(b, c), refl_sub(b), top_sub(b, c))
        return dv.ArrowPrime(lhs, rhs, witness, refl_sub(a), cod_deriv)
    dom_deriv = dv.Glb(a, ty.Inter(a, a), refl_sub(a), refl_sub(a))
    return dv.ArrowPrime(lhs, rhs, lhs, dom_deriv, refl_sub(ty.Inter(b, c)))


def lemma_eta(a: Ty) -> BcdDerivation:
    """Declarative certificate of a <= dom(a) -> cod(a); requires every
    part of `a` to be an arrow."""
    if isinstance(a, ty.Arrow):
        return Refl(a, a)
    if not isinstance(a, ty.Inter):
        raise ValueError("lemma_eta requires every part to be an arrow")
    e1 = lemma_eta(a.left)
    e2 = lemma_eta(a.right)
    d1, c1 = ty.dom(a.left), ty.cod(a.left)
    d2, c2 = ty.dom(a.right), ty.cod(a.right)
    if d1 is None or c1 is None or d2 is None or c2 is None:
        raise ValueError("lemma_eta requires every part to be an arrow")
    dw = ty.Inter(d1, d2)
    t1 = _trans(InclL(a, a.left), e1)
    u1 = Arrow(
        ty.Arrow(d1, c1), ty.Arrow(dw, c1), InclL(dw, d1), Refl(c1, c1)
    )
    v1 = _trans(t1, u1)
    t2 = _trans(InclR(a, a.right), e2)
    u2 = Arrow(
        ty.Arrow(d2, c2), ty.Arrow(dw, c2), InclR(dw, d2), Refl(c2, c2)
    )
    v2 = _trans(t2, u2)
    g = _glb(v1, v2)
    ai = ArrowInter(g.rhs, ty.Arrow(dw, ty.Inter(c1, c2)))
    return _trans(g, ai)


def _bcd_project(a: Ty, p: Ty) -> BcdDerivation:
    """Declarative certificate of a <= p for a part p of a."""
    if a == p:
        return Refl(a, a)
    if not isinstance(a, ty.Inter):
        raise ValueError("_bcd_project: p is not a part of a")
    if ty.is_part(p, a.left):
        return _trans(InclL(a, a.left), _bcd_project(a.left, p))
    if ty.is_part(p, a.right):
        return _trans(InclR(a, a.right), _bcd_project(a.right, p))
    raise ValueError("_bcd_project: p is not a part of a")


def _bcd_contained(a: Ty, w: Ty) -> BcdDerivation:
    """Declarative certificate of a <= w for w contained in a."""
    if w == a:
        return Refl(a, a)
    if isinstance(w, ty.Inter):
        return _glb(_bcd_contained(a, w.left), _bcd_contained(a, w.right))
    return _bcd_project(a, w)


def _bcd_u_below_top(t: Ty) -> BcdDerivation:
    """Declarative certificate of U <= t for a top type t."""
    if isinstance(t, ty.Top):
        return Refl(t, t)
    if isinstance(t, ty.Arrow):
        if isinstance(t.cod, ty.Top):
            return UArrow(ty.Top(), t)
        step = UArrow(ty.Top(), ty.Arrow(t.dom, ty.Top()))
        lift = Arrow(
            ty.Arrow(t.dom, ty.Top()),
            t,
            Refl(t.dom, t.dom),
            _bcd_u_below_top(t.cod),
        )
        return _trans(step, lift)
    if isinstance(t, ty.Inter):
        return _glb(_bcd_u_below_top(t.left), _bcd_u_below_top(t.right))
    raise ValueError("_bcd_u_below_top requires a top type")


def to_bcd(d: dv.Derivation, check_input: bool = True) -> BcdDerivation:
    """Translate a transitivity-free certificate into the declarative
    system, preserving the endpoints exactly."""
    if check_input:
        res = dv.validate(d)
        if not res.ok:
            raise ValueError(f"to_bcd: invalid input certificate: {res.reason}")
    return _to_bcd(d)


def _to_bcd(d: dv.Derivation) -> BcdDerivation:
    if isinstance(d, dv.ReflAtom):
        return Refl(d.lhs, d.rhs)
    if isinstance(d, dv.LbL):
        lhs = d.lhs
        assert isinstance(lhs, ty.Inter)
        return _trans(InclL(lhs, lhs.left), _to_bcd(d.sub))
    if isinstance(d, dv.LbR):
        lhs = d.lhs
        assert isinstance(lhs, ty.Inter)
        return _trans(InclR(lhs, lhs.right), _to_bcd(d.sub))
    if isinstance(d, dv.Glb):
        return Glb(d.lhs, d.rhs, _to_bcd(d.left), _to_bcd(d.right))
    if isinstance(d, dv.ArrowPrime):
        wd = ty.dom(d.witness)
        wc = ty.cod(d.witness)
        assert wd is not None and wc is not None
        eta = ty.Arrow(wd, wc)
        congr = Arrow(eta, d.rhs, _to_bcd(d.dom_deriv), _to_bcd(d.cod_deriv))
        return _trans(
            _bcd_contained(d.lhs, d.witness), _trans(lemma_eta(d.witness), congr)
        )
    if isinstance(d, dv.UTop):
        return UTop(d.lhs, d.rhs)
    assert isinstance(d, dv.UArrow)
    rhs = d.rhs
    assert isinstance(rhs, ty.Arrow)
    to_u = UTop(d.lhs, ty.Top())
    return _trans(to_u, _bcd_u_below_top(rhs))


def from_bcd(d: BcdDerivation, check_input: bool = True) -> dv.Derivation:
    """Translate a declarative certificate into the transitivity-free
    system, preserving the endpoints exactly.  Transitivity nodes go
    through the constructive composer."""
    if check_input:
        res = bcd_validate(d)
        if not res.ok:
            raise ValueError(f"from_bcd: invalid input certificate: {res.reason}")
    return _from_bcd(d)


def _from_bcd(d: BcdDerivation) -> dv.Derivation:
    if isinstance(d, Refl):
        return refl_sub(d.lhs)
    if isinstance(d, Trans):
        return trans_compose(_from_bcd(d.left), _from_bcd(d.right), check_inputs=False)
    if isinstance(d, InclL):
        lhs = d.lhs
        assert isinstance(lhs, ty.Inter)
        return dv.LbL(lhs, d.rhs, refl_sub(lhs.left))
    if isinstance(d, InclR):
        lhs = d.lhs
        assert isinstance(lhs, ty.Inter)
        return dv.LbR(lhs, d.rhs, refl_sub(lhs.right))
    if isinstance(d, Glb):
        return dv.Glb(d.lhs, d.rhs, _from_bcd(d.left), _from_bcd(d.right))
    if isinstance(d, Arrow):
        return lemma_fun(_from_bcd(d.dom_deriv), _from_bcd(d.cod_deriv), False)
    if isinstance(d, ArrowInter):
        lhs = d.lhs
        assert isinstance(lhs, ty.Inter)
        first = lhs.left
        second = lhs.right
        assert isinstance(first, ty.Arrow) and isinstance(second, ty.Arrow)
        return lemma_dist(first.dom, first.cod, second.cod)
    if isinstance(d, UTop):
        return dv.UTop(d.lhs, d.rhs)
    assert isinstance(d, UArrow)
    return dv.UArrow(d.lhs, d.rhs)
