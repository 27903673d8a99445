"""Differential property suites over exhaustively enumerated universes.

Each suite quantifies one family of claims over every type (or pair, or
triple) in a small universe, collects counterexamples instead of stopping
at the first, and reports deterministic, order-normalized results.  Pair
suites default to size bound 3; suites that quantify over triples default
to size bound 2 to keep the case count tractable.

Legs that cannot run exhaustively (bounded proof search, certificate
round-trips through the declarative system) run on fixed-size seeded
samples; the sample sizes are module constants and every draw comes from a
generator seeded with the suite name and the caller's seed.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import bcd
from . import derivation as dv
from .consistency import consistent
from .subtype import (
    check_sub,
    find_factor,
    find_factor_exhaustive,
    merge_factorings,
    refl_sub,
    restrict_to_contained,
    restrict_to_part,
    split_inter,
    top_sub,
    trans_compose,
)
from .syntax import derivation_to_json, print_type
from .types import (
    Arrow,
    Inter,
    Ty,
    cod,
    contained_in,
    dom,
    is_top,
    parts,
    top_in_cod,
)
from .universe import Universe, UniverseSpec, random_type

__all__ = [
    "Failure",
    "SuiteReport",
    "SUITE_NAMES",
    "run_suite",
    "get_universe",
]

PAIR_DEFAULT_MAX_SIZE = 3
TRIPLE_DEFAULT_MAX_SIZE = 2
DEFAULT_ATOMS = 2

# Sample sizes for the non-exhaustive legs.
_SEARCH_MID_SAMPLE = 600
_SEARCH_FULL_SAMPLE = 150
_SEARCH_MAX_STEPS = 8000
_SEARCH_DEPTH = 8
_BCD_ROUNDTRIP_SAMPLE = 4000
_CERT_OP_SAMPLE = 1000
_INVERSION_SAMPLE = 3000
_COMPOSE_SAMPLE = 30000
_TOP_SUB_SAMPLE = 2000
_ROUNDTRIP_RANDOM_COUNT = 100_000
_ROUNDTRIP_RANDOM_ATOMS = 4
_ROUNDTRIP_RANDOM_DEPTH = 5

_MAX_STORED_FAILURES = 200


@dataclass(frozen=True)
class Failure:
    """One counterexample: the offending inputs in concrete syntax, what
    went wrong, and a serialized certificate when one is implicated."""

    kind: str
    inputs: tuple[str, ...]
    detail: str
    certificate: str | None = None

    def to_obj(self) -> dict:
        obj = {
            "kind": self.kind,
            "inputs": list(self.inputs),
            "detail": self.detail,
        }
        if self.certificate is not None:
            obj["certificate"] = self.certificate
        return obj


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of one suite run.  `failures` stores at most
    `_MAX_STORED_FAILURES` records; `failure_count` is the true total, and
    success means that count is zero."""

    name: str
    cases: int
    failures: tuple[Failure, ...]
    failure_count: int
    wall_time: float

    @property
    def success(self) -> bool:
        return self.failure_count == 0

    def to_obj(self) -> dict:
        return {
            "suite": self.name,
            "cases": self.cases,
            "failure_count": self.failure_count,
            "failures": [f.to_obj() for f in self.failures],
            "wall_time_s": round(self.wall_time, 3),
        }

    def to_text(self) -> str:
        lines = [
            f"suite {self.name}: {self.cases} cases, "
            f"{self.failure_count} failures, {self.wall_time:.2f}s"
        ]
        shown = self.failures[:20]
        for f in shown:
            lines.append(f"  [{f.kind}] {'; '.join(f.inputs)}: {f.detail}")
            if f.certificate is not None:
                lines.append(f"    certificate: {f.certificate}")
        if self.failure_count > len(shown):
            lines.append(f"  ... and {self.failure_count - len(shown)} more")
        return "\n".join(lines)


class _Collector:
    """Accumulates cases and failures; failures beyond the storage cap are
    counted but not stored."""

    def __init__(self) -> None:
        self.cases = 0
        self.failure_count = 0
        self.failures: list[Failure] = []

    def case(self, n: int = 1) -> None:
        self.cases += n

    def fail(
        self,
        kind: str,
        inputs: tuple[str, ...],
        detail: str,
        certificate: str | None = None,
    ) -> None:
        self.failure_count += 1
        if len(self.failures) < _MAX_STORED_FAILURES:
            self.failures.append(Failure(kind, inputs, detail, certificate))

    def merge(self, cases: int, failure_count: int, failures: list[Failure]) -> None:
        self.cases += cases
        self.failure_count += failure_count
        for f in failures:
            if len(self.failures) < _MAX_STORED_FAILURES:
                self.failures.append(f)

    def finish(self, name: str, t0: float) -> SuiteReport:
        ordered = tuple(
            sorted(self.failures, key=lambda f: (f.kind, f.inputs, f.detail))
        )
        return SuiteReport(
            name=name,
            cases=self.cases,
            failures=ordered,
            failure_count=self.failure_count,
            wall_time=time.perf_counter() - t0,
        )


_universe_cache: dict[UniverseSpec, Universe] = {}


def get_universe(spec: UniverseSpec) -> Universe:
    """Shared universe instances so repeated suites reuse the tables."""
    u = _universe_cache.get(spec)
    if u is None:
        u = Universe(spec)
        _universe_cache[spec] = u
    return u


def _validation_problem(
    d: dv.Derivation, want_lhs: Ty, want_rhs: Ty
) -> str | None:
    """Check endpoints and validity; describe the first problem found."""
    if d.lhs != want_lhs or d.rhs != want_rhs:
        return (
            f"endpoints are {print_type(d.lhs)} <: {print_type(d.rhs)}, "
            f"wanted {print_type(want_lhs)} <: {print_type(want_rhs)}"
        )
    res = dv.validate(d)
    if not res.ok:
        return f"invalid at {'/'.join(res.path) or '<root>'}: {res.reason}"
    return None


def _factoring_problem(f, against: Ty, lhs_ty: Ty, rhs_ty: Ty) -> str | None:
    """Check a factoring's invariants; describe the first problem found."""
    if f.against != against or f.lhs != lhs_ty or f.rhs != rhs_ty:
        return "factoring records the wrong against/lhs/rhs types"
    if not contained_in(f.witness, against):
        return "witness is not contained in the factored type"
    wd = dom(f.witness)
    wc = cod(f.witness)
    if wd is None or wc is None:
        return "witness has a non-arrow part"
    if top_in_cod(f.witness):
        return "witness has an arrow part with top codomain"
    prob = _validation_problem(f.dom_deriv, lhs_ty, wd)
    if prob is not None:
        return f"domain derivation: {prob}"
    prob = _validation_problem(f.cod_deriv, wc, rhs_ty)
    if prob is not None:
        return f"codomain derivation: {prob}"
    return None


def _sample_positive(
    rng: random.Random, pos: np.ndarray
) -> tuple[int, int]:
    k = rng.randrange(len(pos))
    return int(pos[k, 0]), int(pos[k, 1])


# ---------------------------------------------------------------------------
# equivalence: decision procedure vs the declarative system, both ways.


def _equivalence_scan(
    u: Universe,
    lo: int,
    hi: int,
    col: _Collector,
    stats: dict[str, float] | None = None,
) -> None:
    """Run every pair with lhs index in [lo, hi) through the decision
    procedure; cross-check presence against the reference table and, on
    success, validate the certificate, its subformula property, and its
    translation into the declarative system.

    When `stats` is given, cumulative wall time per leg and the pair and
    certificate counts are accumulated into it.
    """
    table = u.subtype_table
    types = u.types
    n = len(types)
    t_decide = t_sub = t_bcd = 0.0
    positives = 0
    for i in range(lo, hi):
        a = types[i]
        row = table[i].tolist()
        a_str = print_type(a)
        certs: list[tuple[int, dv.Derivation]] = []

        t0 = time.perf_counter()
        for j in range(n):
            b = types[j]
            cert = check_sub(a, b)
            if (cert is not None) != row[j]:
                col.fail(
                    "presence-mismatch",
                    (a_str, print_type(b)),
                    "decision procedure disagrees with the reference table",
                )
            if cert is None:
                continue
            prob = _validation_problem(cert, a, b)
            if prob is not None:
                col.fail("cert-invalid", (a_str, print_type(b)), prob)
                continue
            certs.append((j, cert))
        t_decide += time.perf_counter() - t0
        col.case(n)
        positives += len(certs)

        t0 = time.perf_counter()
        for j, cert in certs:
            if not dv.check_subformula_conjunction(cert):
                col.fail(
                    "subformula",
                    (a_str, print_type(types[j])),
                    "certificate mentions a type outside the subformula bound",
                    certificate=derivation_to_json(cert),
                )
        t_sub += time.perf_counter() - t0

        t0 = time.perf_counter()
        for j, cert in certs:
            b = types[j]
            bd = bcd.to_bcd(cert, check_input=False)
            if bd.lhs != a or bd.rhs != b:
                col.fail(
                    "to-bcd-endpoints",
                    (a_str, print_type(b)),
                    "translation changed the endpoints",
                )
                continue
            bres = bcd.bcd_validate(bd)
            if not bres.ok:
                col.fail(
                    "to-bcd-invalid",
                    (a_str, print_type(b)),
                    f"invalid at {'/'.join(bres.path) or '<root>'}: {bres.reason}",
                    certificate=derivation_to_json(cert),
                )
        t_bcd += time.perf_counter() - t0
    if stats is not None:
        stats["decide_validate_s"] = stats.get("decide_validate_s", 0.0) + t_decide
        stats["subformula_s"] = stats.get("subformula_s", 0.0) + t_sub
        stats["to_bcd_s"] = stats.get("to_bcd_s", 0.0) + t_bcd
        stats["pairs"] = stats.get("pairs", 0) + (hi - lo) * n
        stats["positives"] = stats.get("positives", 0) + positives


def _equivalence_chunk(
    args: tuple[int, int, int, int]
) -> tuple[int, int, list[Failure]]:
    atoms, max_size, lo, hi = args
    u = get_universe(UniverseSpec(atoms, max_size))
    col = _Collector()
    _equivalence_scan(u, lo, hi, col)
    return col.cases, col.failure_count, col.failures


def run_equivalence_scan(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
) -> tuple[_Collector, dict[str, float]]:
    """The exhaustive leg of the equivalence suite with per-leg timing;
    shared by the acceptance harness so the sweep runs once per session."""
    if max_size is None:
        max_size = PAIR_DEFAULT_MAX_SIZE
    u = get_universe(UniverseSpec(atoms, max_size))
    col = _Collector()
    stats: dict[str, float] = {}
    _equivalence_scan(u, 0, len(u), col, stats)
    return col, stats


def suite_equivalence(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """Exhaustive: decision procedure on every pair, certificates validated
    and translated to the declarative system.  Sampled: bounded declarative
    proof search (whose hits must translate back and agree with the
    decision procedure) and to_bcd/from_bcd round-trips."""
    if max_size is None:
        max_size = PAIR_DEFAULT_MAX_SIZE
    t0 = time.perf_counter()
    u = get_universe(UniverseSpec(atoms, max_size))
    table = u.subtype_table
    types = u.types
    n = len(types)
    col = _Collector()

    if jobs > 1:
        bounds = np.linspace(0, n, jobs + 1).astype(int)
        tasks = [
            (atoms, max_size, int(bounds[k]), int(bounds[k + 1]))
            for k in range(jobs)
            if bounds[k] < bounds[k + 1]
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for cases, fc, fails in pool.map(_equivalence_chunk, tasks):
                col.merge(cases, fc, fails)
    else:
        _equivalence_scan(u, 0, n, col)

    # Bounded search in the declarative system: exhaustive over the size-1
    # sub-universe, sampled above that.  A hit is an independent proof, so
    # it must survive translation and agree with the decision procedure.
    rng = random.Random(f"equivalence:{seed}")
    small_hi = u.size_offsets[min(1, max_size)][1]
    pairs = [(i, j) for i in range(small_hi) for j in range(small_hi)]
    mid_hi = u.size_offsets[min(2, max_size)][1]
    pairs += [
        (rng.randrange(mid_hi), rng.randrange(mid_hi))
        for _ in range(_SEARCH_MID_SAMPLE)
    ]
    pairs += [
        (rng.randrange(n), rng.randrange(n)) for _ in range(_SEARCH_FULL_SAMPLE)
    ]
    for i, j in pairs:
        a, b = types[i], types[j]
        col.case()
        found = bcd.bcd_search(a, b, max_depth=_SEARCH_DEPTH, max_steps=_SEARCH_MAX_STEPS)
        if found is None:
            continue
        names = (print_type(a), print_type(b))
        bres = bcd.bcd_validate(found)
        if not bres.ok:
            col.fail("search-cert-invalid", names, bres.reason)
            continue
        if found.lhs != a or found.rhs != b:
            col.fail("search-endpoints", names, "search changed the endpoints")
            continue
        if not table[i, j]:
            col.fail(
                "search-vs-decision",
                names,
                "declarative proof found for a pair the decision procedure rejects",
                certificate=derivation_to_json(found),
            )
        back = bcd.from_bcd(found, check_input=False)
        prob = _validation_problem(back, a, b)
        if prob is not None:
            col.fail(
                "from-bcd-invalid", names, prob, certificate=derivation_to_json(found)
            )

    # Round-trip through the declarative system on sampled derivable pairs.
    pos = np.argwhere(table)
    if len(pos):
        for _ in range(_BCD_ROUNDTRIP_SAMPLE):
            i, j = _sample_positive(rng, pos)
            a, b = types[i], types[j]
            col.case()
            cert = check_sub(a, b)
            if cert is None:
                continue
            back = bcd.from_bcd(bcd.to_bcd(cert, check_input=False), check_input=False)
            prob = _validation_problem(back, a, b)
            if prob is not None:
                col.fail(
                    "bcd-roundtrip", (print_type(a), print_type(b)), prob
                )
    return col.finish("equivalence", t0)


# ---------------------------------------------------------------------------
# transitivity: compose every composable certificate pair.


def suite_transitivity(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """For every derivable A <: B and B <: C, compose the certificates and
    re-validate the result; the measure assertions inside the composer stay
    armed throughout."""
    if max_size is None:
        max_size = TRIPLE_DEFAULT_MAX_SIZE
    t0 = time.perf_counter()
    u = get_universe(UniverseSpec(atoms, max_size))
    table = u.subtype_table
    types = u.types
    n = len(types)
    col = _Collector()

    certs: dict[tuple[int, int], dv.Derivation] = {}
    for i, j in np.argwhere(table):
        cert = check_sub(types[i], types[j])
        col.case()
        if cert is None:
            col.fail(
                "presence-mismatch",
                (print_type(types[i]), print_type(types[j])),
                "reference table claims a pair the decision procedure rejects",
            )
            continue
        prob = _validation_problem(cert, types[i], types[j])
        if prob is not None:
            col.fail("cert-invalid", (print_type(types[i]), print_type(types[j])), prob)
            continue
        certs[(int(i), int(j))] = cert

    for b_i in range(n):
        lefts = np.nonzero(table[:, b_i])[0]
        rights = np.nonzero(table[b_i])[0]
        if len(lefts) == 0 or len(rights) == 0:
            continue
        b_str = print_type(types[b_i])
        for a_i in lefts:
            d1 = certs.get((int(a_i), b_i))
            if d1 is None:
                continue
            a_ty = types[a_i]
            a_str = print_type(a_ty)
            for c_i in rights:
                d2 = certs.get((b_i, int(c_i)))
                if d2 is None:
                    continue
                c_ty = types[c_i]
                col.case()
                names = (a_str, b_str, print_type(c_ty))
                try:
                    composed = trans_compose(d1, d2, check_inputs=False)
                except AssertionError as e:
                    col.fail("measure-assert", names, str(e) or "assertion fired")
                    continue
                except ValueError as e:
                    col.fail("compose-error", names, str(e))
                    continue
                prob = _validation_problem(composed, a_ty, c_ty)
                if prob is not None:
                    col.fail("compose-invalid", names, prob)
                    continue
                if not dv.check_subformula_conjunction(composed):
                    col.fail(
                        "subformula",
                        names,
                        "composed certificate leaves the subformula bound",
                        certificate=derivation_to_json(composed),
                    )
                if not table[a_i, c_i]:
                    col.fail(
                        "transitivity-presence",
                        names,
                        "composed endpoints are not derivable per the table",
                    )
    return col.finish("transitivity", t0)


# ---------------------------------------------------------------------------
# prop1: containment inversion for intersections.


def suite_prop1(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """If an intersection is contained in some type, both of its sides
    are."""
    if max_size is None:
        max_size = PAIR_DEFAULT_MAX_SIZE
    t0 = time.perf_counter()
    u = get_universe(UniverseSpec(atoms, max_size))
    contained = u.contained
    types = u.types
    n = len(types)
    col = _Collector()
    for i, t in enumerate(types):
        if not isinstance(t, Inter):
            continue
        li = u.index[t.left]
        ri = u.index[t.right]
        col.case(n)
        bad = contained[i] & ~(contained[li] & contained[ri])
        for j in np.nonzero(bad)[0]:
            col.fail(
                "containment-inversion",
                (print_type(t), print_type(types[j])),
                "intersection is contained but one side is not",
            )
    return col.finish("prop1", t0)


# ---------------------------------------------------------------------------
# prop2: reflexivity, intersection splitting, monotonicity under parts and
# containment, with certificate-level spot checks of the transformers.


def suite_prop2(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    if max_size is None:
        max_size = PAIR_DEFAULT_MAX_SIZE
    t0 = time.perf_counter()
    u = get_universe(UniverseSpec(atoms, max_size))
    table = u.subtype_table
    contained = u.contained
    types = u.types
    n = len(types)
    col = _Collector()
    rng = random.Random(f"prop2:{seed}")

    # (1) reflexivity: presence on the diagonal, plus a certificate for
    # every type.
    col.case(n)
    for i in np.nonzero(~table.diagonal())[0]:
        col.fail("refl-presence", (print_type(types[i]),), "A <: A not derivable")
    for t in types:
        col.case()
        prob = _validation_problem(refl_sub(t), t, t)
        if prob is not None:
            col.fail("refl-cert", (print_type(t),), prob)

    # (2) derivability of an intersection implies derivability of both
    # sides.
    for j, t in enumerate(types):
        if not isinstance(t, Inter):
            continue
        li = u.index[t.left]
        ri = u.index[t.right]
        col.case(n)
        bad = table[:, j] & ~(table[:, li] & table[:, ri])
        for i in np.nonzero(bad)[0]:
            col.fail(
                "inter-split-presence",
                (print_type(types[i]), print_type(t)),
                "A <: B & C holds but one conjunct does not",
            )

    # (3) derivability propagates to every part of the right side.
    for j in range(n):
        pset = set(u.parts_idx[j])
        col.case(n * len(pset))
        for p in pset:
            bad = table[:, j] & ~table[:, p]
            for i in np.nonzero(bad)[0]:
                col.fail(
                    "part-monotone",
                    (print_type(types[i]), print_type(types[j]), print_type(types[p])),
                    "A <: B holds but A <: part fails",
                )

    # (4) derivability propagates to every type contained in the right
    # side.
    for j in range(n):
        cs = np.nonzero(contained[:, j])[0]
        if len(cs) == 0:
            continue
        col.case(n * len(cs))
        bad = table[:, j][:, None] & ~table[:, cs]
        if bad.any():
            for bi, bk in np.argwhere(bad):
                col.fail(
                    "containment-monotone",
                    (
                        print_type(types[bi]),
                        print_type(types[j]),
                        print_type(types[cs[bk]]),
                    ),
                    "A <: B holds but A <: contained type fails",
                )

    # Certificate-level spot checks of the three transformers.
    pos = np.argwhere(table)
    if len(pos):
        for _ in range(_CERT_OP_SAMPLE):
            i, j = _sample_positive(rng, pos)
            a, b = types[i], types[j]
            cert = check_sub(a, b)
            if cert is None:
                continue
            col.case()
            if isinstance(b, Inter):
                l, r = split_inter(cert)
                prob = _validation_problem(l, a, b.left) or _validation_problem(
                    r, a, b.right
                )
                if prob is not None:
                    col.fail(
                        "inter-split-cert", (print_type(a), print_type(b)), prob
                    )
            p = rng.choice(parts(b))
            prob = _validation_problem(restrict_to_part(cert, p), a, p)
            if prob is not None:
                col.fail(
                    "restrict-part-cert",
                    (print_type(a), print_type(b), print_type(p)),
                    prob,
                )
            cands = np.nonzero(contained[:, j])[0]
            c = types[int(cands[rng.randrange(len(cands))])]
            prob = _validation_problem(restrict_to_contained(cert, c), a, c)
            if prob is not None:
                col.fail(
                    "restrict-contained-cert",
                    (print_type(a), print_type(b), print_type(c)),
                    prob,
                )
    return col.finish("prop2", t0)


# ---------------------------------------------------------------------------
# prop3: the five properties of top types.


def suite_prop3(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    if max_size is None:
        max_size = PAIR_DEFAULT_MAX_SIZE
    t0 = time.perf_counter()
    u = get_universe(UniverseSpec(atoms, max_size))
    table = u.subtype_table
    contained = u.contained
    tops = u.tops
    types = u.types
    n = len(types)
    col = _Collector()
    rng = random.Random(f"prop3:{seed}")

    top_idx = np.nonzero(tops)[0]
    # (1) the codomain of a top type is top, where defined.
    for i in top_idx:
        c = cod(types[i])
        col.case()
        if c is not None and not is_top(c):
            col.fail("top-cod", (print_type(types[i]),), "codomain is not top")
    # (2) every part of a top type is top.
    for i in top_idx:
        col.case()
        if not all(is_top(p) for p in parts(types[i])):
            col.fail("top-part", (print_type(types[i]),), "a part is not top")
    # (3) everything contained in a top type is top.
    for i in top_idx:
        col.case(n)
        bad = contained[:, i] & ~tops
        for j in np.nonzero(bad)[0]:
            col.fail(
                "top-contained",
                (print_type(types[j]), print_type(types[i])),
                "contained in a top type but not top",
            )
    # (4) supertypes of top types are top.
    col.case(int(len(top_idx)) * n)
    bad = table[top_idx][:, ~tops]
    if bad.any():
        nt_idx = np.nonzero(~tops)[0]
        for bi, bj in np.argwhere(bad):
            col.fail(
                "top-upward",
                (print_type(types[top_idx[bi]]), print_type(types[nt_idx[bj]])),
                "a top type is below a non-top type",
            )
    # (5) everything is below every top type.
    col.case(int(len(top_idx)) * n)
    miss = ~table[:, top_idx]
    if miss.any():
        for bi, bj in np.argwhere(miss):
            col.fail(
                "top-greatest",
                (print_type(types[bi]), print_type(types[top_idx[bj]])),
                "a type is not below a top type",
            )
    # Certificate-level: top_sub produces valid certificates.
    for _ in range(_TOP_SUB_SAMPLE):
        i = rng.randrange(n)
        j = int(top_idx[rng.randrange(len(top_idx))])
        a, b = types[i], types[j]
        col.case()
        prob = _validation_problem(top_sub(a, b), a, b)
        if prob is not None:
            col.fail("top-sub-cert", (print_type(a), print_type(b)), prob)
    return col.finish("prop3", t0)


# ---------------------------------------------------------------------------
# prop4: the inversion principle for function types.


def suite_prop4(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """If A <: B and some arrow part of B has a non-top codomain, that
    arrow factors A: checked in bulk through the table and on a seeded
    sample by running the exhaustive reference search for real."""
    if max_size is None:
        max_size = PAIR_DEFAULT_MAX_SIZE
    t0 = time.perf_counter()
    u = get_universe(UniverseSpec(atoms, max_size))
    table = u.subtype_table
    tops = u.tops
    types = u.types
    n = len(types)
    col = _Collector()
    rng = random.Random(f"prop4:{seed}")

    targets: list[tuple[int, int]] = []
    for j in range(n):
        ks = {
            k
            for k in u.parts_idx[j]
            if isinstance(types[k], Arrow) and not tops[k]
        }
        for k in ks:
            targets.append((j, k))
            col.case(n)
            bad = table[:, j] & ~table[:, k]
            for i in np.nonzero(bad)[0]:
                col.fail(
                    "inversion-presence",
                    (print_type(types[i]), print_type(types[j]), print_type(types[k])),
                    "arrow part does not factor the left side per the table",
                )

    if targets:
        for _ in range(_INVERSION_SAMPLE):
            j, k = targets[rng.randrange(len(targets))]
            rows = np.nonzero(table[:, j])[0]
            if len(rows) == 0:
                continue
            i = int(rows[rng.randrange(len(rows))])
            a = types[i]
            part = types[k]
            assert isinstance(part, Arrow)
            col.case()
            f = find_factor_exhaustive(a, part.dom, part.cod)
            names = (print_type(a), print_type(types[j]), print_type(part))
            if f is None:
                col.fail(
                    "inversion-missing",
                    names,
                    "exhaustive search finds no factoring for a derivable pair",
                )
                continue
            prob = _factoring_problem(f, a, part.dom, part.cod)
            if prob is not None:
                col.fail("inversion-cert", names, prob)
    return col.finish("prop4", t0)


# ---------------------------------------------------------------------------
# lemma1: merging per-part factorings.


def suite_lemma1(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """Whenever every arrow part of a type factors some target, the merged
    factoring of dom/cod against that target is well-formed and validates.
    Targets are drawn one size smaller to keep the pair count tractable."""
    if max_size is None:
        max_size = PAIR_DEFAULT_MAX_SIZE
    t0 = time.perf_counter()
    u = get_universe(UniverseSpec(atoms, max_size))
    types = u.types
    col = _Collector()
    target_hi = u.size_offsets[max(0, max_size - 1)][1]
    for a in types:
        da = dom(a)
        if da is None or top_in_cod(a):
            continue
        ca = cod(a)
        assert ca is not None
        aps = parts(a)
        for j in range(target_hi):
            b = types[j]
            per_part: dict[Ty, object] = {}
            complete = True
            for p in aps:
                assert isinstance(p, Arrow)
                f = find_factor(b, p.dom, p.cod)
                if f is None:
                    complete = False
                    break
                per_part[p] = f
            col.case()
            if not complete:
                continue
            names = (print_type(a), print_type(b))
            try:
                merged = merge_factorings(a, b, per_part)
            except (ValueError, AssertionError) as e:
                col.fail("merge-error", names, str(e))
                continue
            prob = _factoring_problem(merged, b, da, ca)
            if prob is not None:
                col.fail("merge-cert", names, prob)
    return col.finish("lemma1", t0)


# ---------------------------------------------------------------------------
# witness-completeness: greedy factoring vs exhaustive subset search.


def suite_witness_completeness(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    if max_size is None:
        max_size = TRIPLE_DEFAULT_MAX_SIZE
    t0 = time.perf_counter()
    u = get_universe(UniverseSpec(atoms, max_size))
    types = u.types
    col = _Collector()
    arrow_targets = [
        t
        for i, t in enumerate(types)
        if isinstance(t, Arrow) and not u.tops[i]
    ]
    for b in arrow_targets:
        c, d = b.dom, b.cod
        c_str, d_str = print_type(c), print_type(d)
        for a in types:
            col.case()
            names = (print_type(a), c_str, d_str)
            f1 = find_factor(a, c, d)
            f2 = find_factor_exhaustive(a, c, d)
            if (f1 is None) != (f2 is None):
                col.fail(
                    "presence-disagree",
                    names,
                    "greedy and exhaustive factoring disagree on existence",
                )
                continue
            for tag, f in (("greedy", f1), ("exhaustive", f2)):
                if f is None:
                    continue
                prob = _factoring_problem(f, a, c, d)
                if prob is not None:
                    col.fail(f"{tag}-cert", names, prob)
    return col.finish("witness-completeness", t0)


# ---------------------------------------------------------------------------
# subformula: certificates stay within the subformula bound.


def suite_subformula(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """Direct certificates for every derivable pair, plus a seeded sample
    of composed certificates, re-walked for the subformula property."""
    if max_size is None:
        max_size = TRIPLE_DEFAULT_MAX_SIZE
    t0 = time.perf_counter()
    u = get_universe(UniverseSpec(atoms, max_size))
    table = u.subtype_table
    types = u.types
    col = _Collector()
    rng = random.Random(f"subformula:{seed}")

    certs: dict[tuple[int, int], dv.Derivation] = {}
    for i, j in np.argwhere(table):
        cert = check_sub(types[i], types[j])
        if cert is None:
            continue
        certs[(int(i), int(j))] = cert
        col.case()
        if not dv.check_subformula_conjunction(cert):
            col.fail(
                "subformula",
                (print_type(types[i]), print_type(types[j])),
                "certificate mentions a type outside the subformula bound",
                certificate=derivation_to_json(cert),
            )

    by_mid: dict[int, tuple[list[int], list[int]]] = {}
    for b_i in range(len(types)):
        lefts = [i for i in np.nonzero(table[:, b_i])[0]]
        rights = [j for j in np.nonzero(table[b_i])[0]]
        if lefts and rights:
            by_mid[b_i] = ([int(x) for x in lefts], [int(x) for x in rights])
    mids = sorted(by_mid)
    if mids:
        for _ in range(_COMPOSE_SAMPLE):
            b_i = mids[rng.randrange(len(mids))]
            lefts, rights = by_mid[b_i]
            a_i = lefts[rng.randrange(len(lefts))]
            c_i = rights[rng.randrange(len(rights))]
            composed = trans_compose(certs[(a_i, b_i)], certs[(b_i, c_i)], False)
            col.case()
            if not dv.check_subformula_conjunction(composed):
                col.fail(
                    "subformula",
                    (
                        print_type(types[a_i]),
                        print_type(types[b_i]),
                        print_type(types[c_i]),
                    ),
                    "composed certificate leaves the subformula bound",
                    certificate=derivation_to_json(composed),
                )
    return col.finish("subformula", t0)


# ---------------------------------------------------------------------------
# consistency-upward: consistency is closed under moving both sides up.


def suite_consistency_upward(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """Over the self-consistent types of the universe: if A and B are
    consistent, A <: C, and B <: D, then C and D are consistent.  Any
    counterexample is emitted with both subtyping certificates."""
    if max_size is None:
        max_size = TRIPLE_DEFAULT_MAX_SIZE
    t0 = time.perf_counter()
    u = get_universe(UniverseSpec(atoms, max_size))
    table = u.subtype_table
    types = u.types
    n = len(types)
    col = _Collector()

    con = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i, n):
            v = consistent(types[i], types[j])
            con[i, j] = v
            con[j, i] = v
    sc = con.diagonal().copy()
    s_idx = np.nonzero(sc)[0]
    t_s = table[np.ix_(s_idx, s_idx)].astype(np.float32)
    con_s = con[np.ix_(s_idx, s_idx)]
    col.case(int(len(s_idx)) ** 2)
    # reach1[b, c] = exists a: consistent(a, b) and a <: c
    reach1 = (con_s.astype(np.float32).T @ t_s) > 0.5
    # reach2[c, d] = exists a, b as above with b <: d
    reach2 = (reach1.astype(np.float32).T @ t_s) > 0.5
    viol = reach2 & ~con_s
    if viol.any():
        for ci, di in np.argwhere(viol):
            c_g = int(s_idx[ci])
            d_g = int(s_idx[di])
            found = None
            for ai in s_idx:
                if not table[ai, c_g]:
                    continue
                for bi in s_idx:
                    if con[ai, bi] and table[bi, d_g]:
                        found = (int(ai), int(bi))
                        break
                if found:
                    break
            if found is None:
                continue
            ai, bi = found
            cert_pair = json.dumps(
                [
                    json.loads(derivation_to_json(check_sub(types[ai], types[c_g]))),
                    json.loads(derivation_to_json(check_sub(types[bi], types[d_g]))),
                ],
                separators=(",", ":"),
            )
            col.fail(
                "consistency-upward",
                (
                    print_type(types[ai]),
                    print_type(types[bi]),
                    print_type(types[c_g]),
                    print_type(types[d_g]),
                ),
                "consistent pair has an inconsistent pair of supertypes",
                certificate=cert_pair,
            )
    return col.finish("consistency-upward", t0)


# ---------------------------------------------------------------------------
# roundtrip: parse after print is the identity.


def _roundtrip_chunk(args: tuple[int, int, int]) -> tuple[int, int, list[Failure]]:
    seed, lo, hi = args
    col = _Collector()
    _roundtrip_random(seed, lo, hi, col)
    return col.cases, col.failure_count, col.failures


def _roundtrip_random(seed: int, lo: int, hi: int, col: _Collector) -> None:
    from .syntax import parse_type

    for k in range(lo, hi):
        t = random_type(
            seed * 1_000_003 + k, _ROUNDTRIP_RANDOM_ATOMS, _ROUNDTRIP_RANDOM_DEPTH
        )
        col.case()
        text = print_type(t)
        back = parse_type(text)
        if back != t:
            col.fail("roundtrip", (text,), "parse after print changed the tree")


def suite_roundtrip(
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """Exhaustive over the universe plus a large seeded random sample."""
    from .syntax import parse_type

    if max_size is None:
        max_size = PAIR_DEFAULT_MAX_SIZE
    t0 = time.perf_counter()
    u = get_universe(UniverseSpec(atoms, max_size))
    col = _Collector()
    for t in u.types:
        col.case()
        text = print_type(t)
        back = parse_type(text)
        if back != t:
            col.fail("roundtrip", (text,), "parse after print changed the tree")
    if jobs > 1:
        bounds = np.linspace(0, _ROUNDTRIP_RANDOM_COUNT, jobs + 1).astype(int)
        tasks = [
            (seed, int(bounds[k]), int(bounds[k + 1]))
            for k in range(jobs)
            if bounds[k] < bounds[k + 1]
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for cases, fc, fails in pool.map(_roundtrip_chunk, tasks):
                col.merge(cases, fc, fails)
    else:
        _roundtrip_random(seed, 0, _ROUNDTRIP_RANDOM_COUNT, col)
    return col.finish("roundtrip", t0)


# ---------------------------------------------------------------------------


_SUITES = {
    "prop1": suite_prop1,
    "prop2": suite_prop2,
    "prop3": suite_prop3,
    "prop4": suite_prop4,
    "lemma1": suite_lemma1,
    "transitivity": suite_transitivity,
    "equivalence": suite_equivalence,
    "witness-completeness": suite_witness_completeness,
    "subformula": suite_subformula,
    "consistency-upward": suite_consistency_upward,
    "roundtrip": suite_roundtrip,
}

SUITE_NAMES: tuple[str, ...] = tuple(_SUITES)


def run_suite(
    name: str,
    atoms: int = DEFAULT_ATOMS,
    max_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """Run one named suite; `max_size` of None picks the suite's default."""
    fn = _SUITES.get(name)
    if fn is None:
        raise ValueError(
            f"unknown suite {name!r}; available: {', '.join(SUITE_NAMES)}"
        )
    return fn(atoms=atoms, max_size=max_size, seed=seed, jobs=jobs)
