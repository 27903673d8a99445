"""Concrete syntax for types and the JSON certificate format.

Grammar, with `&` binding tighter than `->` and `->` right-associative:

    type  := arrow
    arrow := inter ("->" arrow)?
    inter := prim ("&" prim)*
    prim  := "U" | "c" digits | "(" type ")"

Input is whitespace-insensitive and also accepts the Unicode spellings of
the two operators; output always uses the ASCII ones.  Parse errors carry a
byte-offset range into the UTF-8 encoding of the input and the set of
tokens that would have been accepted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from . import bcd
from . import derivation as dv
from .types import Arrow, Const, Inter, Top, Ty

__all__ = [
    "SourceSpan",
    "ParseError",
    "parse_type",
    "print_type",
    "derivation_to_json",
    "derivation_from_json",
    "format_derivation_tree",
]


@dataclass(frozen=True, slots=True)
class SourceSpan:
    """Half-open byte range [start, end) into the UTF-8 encoded input."""

    start: int
    end: int


class ParseError(ValueError):
    """Syntax error with location and expectation information."""

    def __init__(self, span: SourceSpan, expected: frozenset[str], found: str):
        self.span = span
        self.expected = expected
        self.found = found
        exp = ", ".join(sorted(expected))
        super().__init__(
            f"at bytes {span.start}..{span.end}: found {found}, expected one of: {exp}"
        )


_WS = b" \t\r\n"
_AND_UNICODE = "∩".encode()
_ARROW_UNICODE = "→".encode()
_PRIM_EXPECTED = frozenset({"'U'", "'c<digits>'", "'('"})


class _Parser:
    def __init__(self, text: str):
        self.buf = text.encode()
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.buf) and self.buf[self.pos] in _WS:
            self.pos += 1

    def error(self, expected: frozenset[str]) -> ParseError:
        if self.pos >= len(self.buf):
            return ParseError(
                SourceSpan(self.pos, self.pos), expected, "end of input"
            )
        ch = self.buf[self.pos : self.pos + 1]
        return ParseError(
            SourceSpan(self.pos, self.pos + 1), expected, repr(ch.decode("latin-1"))
        )

    def try_and(self) -> bool:
        """Consume '&' (or its Unicode spelling) if present."""
        self.skip_ws()
        if self.buf[self.pos : self.pos + 1] == b"&":
            self.pos += 1
            return True
        if self.buf[self.pos : self.pos + 3] == _AND_UNICODE:
            self.pos += 3
            return True
        return False

    def try_arrow(self) -> bool:
        """Consume '->' (or its Unicode spelling) if present."""
        self.skip_ws()
        if self.buf[self.pos : self.pos + 2] == b"->":
            self.pos += 2
            return True
        if self.buf[self.pos : self.pos + 3] == _ARROW_UNICODE:
            self.pos += 3
            return True
        return False

    def parse_arrow(self) -> Ty:
        left = self.parse_inter()
        if self.try_arrow():
            return Arrow(left, self.parse_arrow())
        return left

    def parse_inter(self) -> Ty:
        acc = self.parse_prim()
        while self.try_and():
            acc = Inter(acc, self.parse_prim())
        return acc

    def parse_prim(self) -> Ty:
        self.skip_ws()
        head = self.buf[self.pos : self.pos + 1]
        if head == b"U":
            self.pos += 1
            return Top()
        if head == b"c":
            start = self.pos
            self.pos += 1
            digits = self.pos
            while (
                self.pos < len(self.buf) and 48 <= self.buf[self.pos] <= 57
            ):
                self.pos += 1
            if self.pos == digits:
                raise ParseError(
                    SourceSpan(start, self.pos),
                    frozenset({"'c<digits>'"}),
                    "'c' without digits",
                )
            return Const(int(self.buf[digits : self.pos]))
        if head == b"(":
            self.pos += 1
            inner = self.parse_arrow()
            self.skip_ws()
            if self.buf[self.pos : self.pos + 1] != b")":
                raise self.error(frozenset({"')'", "'&'", "'->'"}))
            self.pos += 1
            return inner
        raise self.error(_PRIM_EXPECTED)


def parse_type(text: str) -> Ty:
    """Parse the concrete syntax; raise ParseError on malformed input."""
    p = _Parser(text)
    result = p.parse_arrow()
    p.skip_ws()
    if p.pos < len(p.buf):
        raise p.error(frozenset({"'&'", "'->'", "end of input"}))
    return result


def _print(t: Ty, min_level: int) -> str:
    """Render with minimal parentheses.  Levels: arrow 0, intersection 1,
    atoms 2; a node below the required level gets parenthesized."""
    if isinstance(t, Top):
        return "U"
    if isinstance(t, Const):
        return f"c{t.index}"
    if isinstance(t, Arrow):
        body = f"{_print(t.dom, 1)} -> {_print(t.cod, 0)}"
        return f"({body})" if min_level > 0 else body
    assert isinstance(t, Inter)
    body = f"{_print(t.left, 1)} & {_print(t.right, 2)}"
    return f"({body})" if min_level > 1 else body


def print_type(t: Ty) -> str:
    """Render a type; `parse_type` inverts this exactly."""
    return _print(t, 0)


def _new_to_obj(d: dv.Derivation) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "rule": d.rule,
        "lhs": print_type(d.lhs),
        "rhs": print_type(d.rhs),
    }
    if isinstance(d, dv.ArrowPrime):
        obj["witness"] = print_type(d.witness)
        obj["premises"] = [_new_to_obj(d.dom_deriv), _new_to_obj(d.cod_deriv)]
    elif isinstance(d, (dv.LbL, dv.LbR)):
        obj["premises"] = [_new_to_obj(d.sub)]
    elif isinstance(d, dv.Glb):
        obj["premises"] = [_new_to_obj(d.left), _new_to_obj(d.right)]
    else:
        obj["premises"] = []
    return obj


def _bcd_to_obj(d: bcd.BcdDerivation) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "rule": d.rule,
        "lhs": print_type(d.lhs),
        "rhs": print_type(d.rhs),
    }
    if isinstance(d, bcd.Trans):
        obj["mid"] = print_type(d.mid)
        obj["premises"] = [_bcd_to_obj(d.left), _bcd_to_obj(d.right)]
    elif isinstance(d, bcd.Glb):
        obj["premises"] = [_bcd_to_obj(d.left), _bcd_to_obj(d.right)]
    elif isinstance(d, bcd.Arrow):
        obj["premises"] = [_bcd_to_obj(d.dom_deriv), _bcd_to_obj(d.cod_deriv)]
    else:
        obj["premises"] = []
    return obj


def derivation_to_json(d: dv.Derivation | bcd.BcdDerivation, indent: int | None = None) -> str:
    """Serialize a certificate of either system; refuses certificates that
    do not validate."""
    if isinstance(d, dv.Derivation):
        res = dv.validate(d)
        if not res.ok:
            raise ValueError(f"cannot serialize an invalid certificate: {res.reason}")
        obj = _new_to_obj(d)
    elif isinstance(d, bcd.BcdDerivation):
        res = bcd.bcd_validate(d)
        if not res.ok:
            raise ValueError(f"cannot serialize an invalid certificate: {res.reason}")
        obj = _bcd_to_obj(d)
    else:
        raise TypeError(f"not a derivation: {d!r}")
    if indent is None:
        return json.dumps(obj, separators=(",", ":"))
    return json.dumps(obj, indent=indent)


def _require(obj: Any, key: str) -> Any:
    if not isinstance(obj, dict):
        raise ValueError("certificate nodes must be JSON objects")
    if key not in obj:
        raise ValueError(f"certificate node is missing the {key!r} field")
    return obj[key]


def _premises(obj: dict[str, Any], n: int) -> list[Any]:
    prem = _require(obj, "premises")
    if not isinstance(prem, list) or len(prem) != n:
        raise ValueError(f"rule {obj.get('rule')!r} takes exactly {n} premises")
    return prem


def _new_from_obj(obj: Any) -> dv.Derivation:
    rule = _require(obj, "rule")
    lhs = parse_type(_require(obj, "lhs"))
    rhs = parse_type(_require(obj, "rhs"))
    if rule == "refl_atom":
        _premises(obj, 0)
        return dv.ReflAtom(lhs, rhs)
    if rule == "lb_l":
        return dv.LbL(lhs, rhs, _new_from_obj(_premises(obj, 1)[0]))
    if rule == "lb_r":
        return dv.LbR(lhs, rhs, _new_from_obj(_premises(obj, 1)[0]))
    if rule == "glb":
        prem = _premises(obj, 2)
        return dv.Glb(lhs, rhs, _new_from_obj(prem[0]), _new_from_obj(prem[1]))
    if rule == "arrow_prime":
        witness = parse_type(_require(obj, "witness"))
        prem = _premises(obj, 2)
        return dv.ArrowPrime(
            lhs, rhs, witness, _new_from_obj(prem[0]), _new_from_obj(prem[1])
        )
    if rule == "u_top":
        _premises(obj, 0)
        return dv.UTop(lhs, rhs)
    if rule == "u_arrow":
        _premises(obj, 0)
        return dv.UArrow(lhs, rhs)
    raise ValueError(f"unknown rule {rule!r} for the transitivity-free system")


def _bcd_from_obj(obj: Any) -> bcd.BcdDerivation:
    rule = _require(obj, "rule")
    lhs = parse_type(_require(obj, "lhs"))
    rhs = parse_type(_require(obj, "rhs"))
    if rule == "refl":
        _premises(obj, 0)
        return bcd.Refl(lhs, rhs)
    if rule == "trans":
        mid = parse_type(_require(obj, "mid"))
        prem = _premises(obj, 2)
        return bcd.Trans(lhs, rhs, mid, _bcd_from_obj(prem[0]), _bcd_from_obj(prem[1]))
    if rule == "incl_l":
        _premises(obj, 0)
        return bcd.InclL(lhs, rhs)
    if rule == "incl_r":
        _premises(obj, 0)
        return bcd.InclR(lhs, rhs)
    if rule == "glb":
        prem = _premises(obj, 2)
        return bcd.Glb(lhs, rhs, _bcd_from_obj(prem[0]), _bcd_from_obj(prem[1]))
    if rule == "arrow":
        prem = _premises(obj, 2)
        return bcd.Arrow(lhs, rhs, _bcd_from_obj(prem[0]), _bcd_from_obj(prem[1]))
    if rule == "arrow_inter":
        _premises(obj, 0)
        return bcd.ArrowInter(lhs, rhs)
    if rule == "u_top":
        _premises(obj, 0)
        return bcd.UTop(lhs, rhs)
    if rule == "u_arrow":
        _premises(obj, 0)
        return bcd.UArrow(lhs, rhs)
    raise ValueError(f"unknown rule {rule!r} for the declarative system")


def derivation_from_json(
    text: str, system: str = "new"
) -> dv.Derivation | bcd.BcdDerivation:
    """Rebuild a certificate from its JSON form.  `system` selects the rule
    vocabulary: "new" for the transitivity-free system, "bcd" for the
    declarative one.  The result is structurally rebuilt but not validated;
    run the matching validator before trusting it."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"certificate is not valid JSON: {e}") from None
    if system == "new":
        return _new_from_obj(obj)
    if system == "bcd":
        return _bcd_from_obj(obj)
    raise ValueError(f"unknown system {system!r}; expected 'new' or 'bcd'")


def format_derivation_tree(d: dv.Derivation | bcd.BcdDerivation) -> str:
    """Human-readable indented rendering of a certificate."""
    lines: list[str] = []
    rel = "<:" if isinstance(d, dv.Derivation) else "<="

    def walk(node: Any, indent: int) -> None:
        pad = "  " * indent
        extra = ""
        if isinstance(node, dv.ArrowPrime):
            extra = f"  [witness {print_type(node.witness)}]"
        elif isinstance(node, bcd.Trans):
            extra = f"  [mid {print_type(node.mid)}]"
        lines.append(
            f"{pad}{node.rule}: {print_type(node.lhs)} {rel} "
            f"{print_type(node.rhs)}{extra}"
        )
        if isinstance(node, (dv.LbL, dv.LbR)):
            walk(node.sub, indent + 1)
        elif isinstance(node, (dv.Glb, bcd.Glb, bcd.Trans)):
            walk(node.left, indent + 1)
            walk(node.right, indent + 1)
        elif isinstance(node, dv.ArrowPrime):
            walk(node.dom_deriv, indent + 1)
            walk(node.cod_deriv, indent + 1)
        elif isinstance(node, bcd.Arrow):
            walk(node.dom_deriv, indent + 1)
            walk(node.cod_deriv, indent + 1)

    walk(d, 0)
    return "\n".join(lines)
