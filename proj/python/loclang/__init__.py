"""Local sentences over words: membership, enumeration, constructions and audits."""

from ._loclang import (
    AlphabetMismatchError,
    DslSyntaxError,
    LoclangError,
    Sentence,
    antidyck_member,
    audit,
    closure,
    concat,
    declared_bound_for,
    enumerate,
    example,
    example_names,
    example_text,
    fifo_member,
    inverse_morphism,
    load_sentence,
    member,
    morphism,
    parse_sentence,
    periodic_divergence,
    sigma_prefix,
    substitute,
    union,
)

__all__ = [
    "AlphabetMismatchError",
    "DslSyntaxError",
    "LoclangError",
    "Sentence",
    "antidyck_member",
    "audit",
    "closure",
    "concat",
    "declared_bound_for",
    "enumerate",
    "example",
    "example_names",
    "example_text",
    "fifo_member",
    "inverse_morphism",
    "load_sentence",
    "member",
    "morphism",
    "parse_sentence",
    "periodic_divergence",
    "sigma_prefix",
    "substitute",
    "union",
]
