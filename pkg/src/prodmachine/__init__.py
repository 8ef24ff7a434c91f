"""Production grammars and Lambek's three-tape production machines."""

from .grammar import (
    Grammar,
    GrammarError,
    GrammarSyntaxError,
    Production,
    dual,
    is_normal,
    is_sentence,
    parse_grammar,
    render,
    serialize,
    validate,
    word,
)
from .graphs import Bounds, TransitionGraph
from .oracle import Mode, Relation, enumerate_language, recognize_oracle
from .transforms import prepare

__all__ = [
    "Bounds",
    "Grammar",
    "GrammarError",
    "GrammarSyntaxError",
    "Mode",
    "Production",
    "Relation",
    "TransitionGraph",
    "dual",
    "enumerate_language",
    "is_normal",
    "is_sentence",
    "parse_grammar",
    "prepare",
    "recognize_oracle",
    "render",
    "serialize",
    "validate",
    "word",
]
