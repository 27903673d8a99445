"""Derivation certificates for the subtyping judgment.

A certificate records, rule by rule, why `lhs <: rhs` holds.  `validate`
re-checks every rule application independently of however the certificate
was produced, so a bug in the decision procedure or in the transitivity
composer cannot silently hand out a bogus proof.
"""

from __future__ import annotations

from dataclasses import dataclass

from .types import (
    Arrow,
    Const,
    Inter,
    Top,
    Ty,
    cod,
    contained_in,
    dom,
    is_top,
    parts,
    subterms,
    top_in_cod,
)

__all__ = [
    "Derivation",
    "ReflAtom",
    "LbL",
    "LbR",
    "Glb",
    "ArrowPrime",
    "UTop",
    "UArrow",
    "ValidationResult",
    "validate",
    "occurring_types",
    "check_subformula_conjunction",
]


@dataclass(frozen=True, slots=True)
class Derivation:
    """Base class; every node carries the endpoints of its judgment."""

    lhs: Ty
    rhs: Ty


@dataclass(frozen=True, slots=True)
class ReflAtom(Derivation):
    """alpha <: alpha for an atom (U or a constant)."""

    rule = "refl_atom"


@dataclass(frozen=True, slots=True)
class LbL(Derivation):
    """A cap B <: C from A <: C."""

    sub: Derivation
    rule = "lb_l"


@dataclass(frozen=True, slots=True)
class LbR(Derivation):
    """A cap B <: C from B <: C."""

    sub: Derivation
    rule = "lb_r"


@dataclass(frozen=True, slots=True)
class Glb(Derivation):
    """A <: C cap D from A <: C and A <: D."""

    left: Derivation
    right: Derivation
    rule = "glb"


@dataclass(frozen=True, slots=True)
class ArrowPrime(Derivation):
    """A <: C -> D by exhibiting a witness B contained in A whose parts are
    all arrows, none with a top codomain, such that C <: dom(B) and
    cod(B) <: D.  Requires D itself not top."""

    witness: Ty
    dom_deriv: Derivation
    cod_deriv: Derivation
    rule = "arrow_prime"


@dataclass(frozen=True, slots=True)
class UTop(Derivation):
    """A <: U."""

    rule = "u_top"


@dataclass(frozen=True, slots=True)
class UArrow(Derivation):
    """A <: C -> D when D is top."""

    rule = "u_arrow"


@dataclass(frozen=True, slots=True)
class ValidationResult:
    """Outcome of re-checking a certificate; on failure, `path` addresses
    the offending node by child-field names from the root."""

    ok: bool
    path: tuple[str, ...] = ()
    reason: str = ""


_OK = ValidationResult(True)


def validate(d: Derivation) -> ValidationResult:
    """Re-check every rule application in `d`."""
    return _validate(d, ())


def _fail(path: tuple[str, ...], reason: str) -> ValidationResult:
    return ValidationResult(False, path, reason)


def _validate(d: Derivation, path: tuple[str, ...]) -> ValidationResult:
    if isinstance(d, ReflAtom):
        if not isinstance(d.lhs, (Top, Const)):
            return _fail(path, "refl_atom applies to atoms only")
        if d.lhs != d.rhs:
            return _fail(path, "refl_atom endpoints differ")
        return _OK
    if isinstance(d, LbL):
        if not isinstance(d.lhs, Inter):
            return _fail(path, "lb_l needs an intersection on the left")
        if d.sub.lhs != d.lhs.left or d.sub.rhs != d.rhs:
            return _fail(path, "lb_l premise endpoints do not match")
        return _validate(d.sub, path + ("sub",))
    if isinstance(d, LbR):
        if not isinstance(d.lhs, Inter):
            return _fail(path, "lb_r needs an intersection on the left")
        if d.sub.lhs != d.lhs.right or d.sub.rhs != d.rhs:
            return _fail(path, "lb_r premise endpoints do not match")
        return _validate(d.sub, path + ("sub",))
    if isinstance(d, Glb):
        if not isinstance(d.rhs, Inter):
            return _fail(path, "glb needs an intersection on the right")
        if d.left.lhs != d.lhs or d.left.rhs != d.rhs.left:
            return _fail(path, "glb left premise endpoints do not match")
        if d.right.lhs != d.lhs or d.right.rhs != d.rhs.right:
            return _fail(path, "glb right premise endpoints do not match")
        res = _validate(d.left, path + ("left",))
        if not res.ok:
            return res
        return _validate(d.right, path + ("right",))
    if isinstance(d, ArrowPrime):
        if not isinstance(d.rhs, Arrow):
            return _fail(path, "arrow_prime needs an arrow on the right")
        if is_top(d.rhs.cod):
            return _fail(path, "arrow_prime requires a non-top target codomain")
        if not contained_in(d.witness, d.lhs):
            return _fail(path, "witness is not contained in the left endpoint")
        wd = dom(d.witness)
        wc = cod(d.witness)
        if wd is None or wc is None:
            return _fail(path, "witness has a non-arrow part")
        if top_in_cod(d.witness):
            return _fail(path, "witness has an arrow part with top codomain")
        if d.dom_deriv.lhs != d.rhs.dom or d.dom_deriv.rhs != wd:
            return _fail(path, "domain premise endpoints do not match")
        if d.cod_deriv.lhs != wc or d.cod_deriv.rhs != d.rhs.cod:
            return _fail(path, "codomain premise endpoints do not match")
        res = _validate(d.dom_deriv, path + ("dom_deriv",))
        if not res.ok:
            return res
        return _validate(d.cod_deriv, path + ("cod_deriv",))
    if isinstance(d, UTop):
        if not isinstance(d.rhs, Top):
            return _fail(path, "u_top needs U on the right")
        return _OK
    if isinstance(d, UArrow):
        if not isinstance(d.rhs, Arrow) or not is_top(d.rhs.cod):
            return _fail(path, "u_arrow needs an arrow with top codomain on the right")
        return _OK
    return _fail(path, f"unknown rule {type(d).__name__}")


def occurring_types(d: Derivation) -> list[Ty]:
    """Every type mentioned by the certificate, in pre-order: the endpoints
    of each node, the witness and its domain and codomain at arrow_prime
    nodes, then the premises.  Duplicates are kept."""
    acc: list[Ty] = []
    _occurring(d, acc)
    return acc


def _occurring(d: Derivation, acc: list[Ty]) -> None:
    acc.append(d.lhs)
    acc.append(d.rhs)
    if isinstance(d, (LbL, LbR)):
        _occurring(d.sub, acc)
    elif isinstance(d, Glb):
        _occurring(d.left, acc)
        _occurring(d.right, acc)
    elif isinstance(d, ArrowPrime):
        acc.append(d.witness)
        wd = dom(d.witness)
        wc = cod(d.witness)
        if wd is not None:
            acc.append(wd)
        if wc is not None:
            acc.append(wc)
        _occurring(d.dom_deriv, acc)
        _occurring(d.cod_deriv, acc)


def check_subformula_conjunction(d: Derivation) -> bool:
    """Whether every type occurring in `d` is a subterm of an endpoint or an
    intersection built from parts that are subterms of the endpoints."""
    allowed = subterms(d.lhs) | subterms(d.rhs)
    for t in occurring_types(d):
        if t in allowed:
            continue
        if not all(p in allowed for p in parts(t)):
            return False
    return True
