"""Minimalist grammars with tensor product (Fock space) representations."""

from .grammar import Lexicon, load_lexicon, merge, move, parse_lexicon
from .processor import DerivationTrace, derive
from .terms import Leaf, Node, fs, parse_tree, serialize

__version__ = "0.1.0"

__all__ = [
    "DerivationTrace",
    "Leaf",
    "Lexicon",
    "Node",
    "derive",
    "fs",
    "load_lexicon",
    "merge",
    "move",
    "parse_lexicon",
    "parse_tree",
    "serialize",
]
