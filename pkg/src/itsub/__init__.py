"""Executable kernel for transitivity-free intersection-type subtyping.

The package provides the type language and its measures, a syntax-directed
decision procedure that emits checkable derivation certificates, a
constructive transitivity composer, translations to and from the
declarative system with explicit transitivity, a consistency analysis,
concrete syntax and JSON serialization, and differential property suites
over exhaustively enumerated type universes.
"""

from .bcd import (
    Arrow as BcdArrow,
    ArrowInter as BcdArrowInter,
    BcdDerivation,
    Glb as BcdGlb,
    InclL,
    InclR,
    Refl,
    Trans,
    UArrow as BcdUArrow,
    UTop as BcdUTop,
    bcd_search,
    bcd_validate,
    from_bcd,
    lemma_dist,
    lemma_eta,
    lemma_fun,
    to_bcd,
)
from .consistency import atomic_consistent, consistent, self_consistent
from .derivation import (
    ArrowPrime,
    Derivation,
    Glb,
    LbL,
    LbR,
    ReflAtom,
    UArrow,
    UTop,
    ValidationResult,
    check_subformula_conjunction,
    occurring_types,
    validate,
)
from .subtype import (
    Factoring,
    check_sub,
    find_factor,
    find_factor_exhaustive,
    invert_arrow,
    merge_factorings,
    refl_sub,
    restrict_to_contained,
    restrict_to_part,
    split_inter,
    top_sub,
    trans_compose,
)
from .suites import SUITE_NAMES, Failure, SuiteReport, run_suite
from .syntax import (
    ParseError,
    SourceSpan,
    derivation_from_json,
    derivation_to_json,
    format_derivation_tree,
    parse_type,
    print_type,
)
from .types import (
    Arrow,
    Const,
    Inter,
    MeasureTriple,
    Top,
    Ty,
    cod,
    contained_in,
    depth,
    dom,
    is_part,
    is_top,
    measure,
    measure_less,
    parts,
    size,
    subterms,
    top_in_cod,
)
from .universe import Universe, UniverseSpec, enumerate_universe, random_type

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "ArrowPrime",
    "BcdArrow",
    "BcdArrowInter",
    "BcdDerivation",
    "BcdGlb",
    "BcdUArrow",
    "BcdUTop",
    "Const",
    "Derivation",
    "Factoring",
    "Failure",
    "Glb",
    "InclL",
    "InclR",
    "Inter",
    "MeasureTriple",
    "ParseError",
    "Refl",
    "ReflAtom",
    "SUITE_NAMES",
    "SourceSpan",
    "SuiteReport",
    "Top",
    "Trans",
    "Ty",
    "UArrow",
    "UTop",
    "Universe",
    "UniverseSpec",
    "ValidationResult",
    "atomic_consistent",
    "bcd_search",
    "bcd_validate",
    "check_sub",
    "check_subformula_conjunction",
    "cod",
    "consistent",
    "contained_in",
    "depth",
    "derivation_from_json",
    "derivation_to_json",
    "dom",
    "enumerate_universe",
    "find_factor",
    "find_factor_exhaustive",
    "format_derivation_tree",
    "from_bcd",
    "invert_arrow",
    "is_part",
    "is_top",
    "lemma_dist",
    "lemma_eta",
    "lemma_fun",
    "measure",
    "measure_less",
    "merge_factorings",
    "occurring_types",
    "parse_type",
    "parts",
    "print_type",
    "random_type",
    "refl_sub",
    "restrict_to_contained",
    "restrict_to_part",
    "run_suite",
    "self_consistent",
    "size",
    "split_inter",
    "subterms",
    "to_bcd",
    "top_sub",
    "top_in_cod",
    "trans_compose",
    "validate",
]
