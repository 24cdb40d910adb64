"""Feature strings and minimalist trees as immutable terms.

Node addresses are plain strings over ``"0"`` and ``"1"``, read root-down:
the first character picks the child of the root, the next one picks a child
of that subtree, and so on.  The empty string addresses the root.  Every
public function here (``extract_path``, ``label``, ``head``, ``max_proj``,
``leaves_with``, ``replace``) uses this single convention.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .errors import BadAddress, EmptyString, LexiconSyntaxError, SimpleTree, Undefined


class Kind(enum.Enum):
    BASIC = "basic"
    SELECTOR = "selector"
    LICENSOR = "licensor"
    LICENSEE = "licensee"
    PHONETIC = "phonetic"


_PREFIX = {Kind.SELECTOR: "=", Kind.LICENSOR: "+", Kind.LICENSEE: "-"}


@dataclass(frozen=True)
class Feature:
    kind: Kind
    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("feature name must be non-empty")

    def sort_key(self) -> tuple[str, str]:
        return (self.kind.value, self.name)

    @property
    def syntactic(self) -> bool:
        return self.kind is not Kind.PHONETIC

    def __str__(self) -> str:
        return _PREFIX.get(self.kind, "") + self.name


def parse_feature(token: str) -> Feature:
    """Classify a syntactic token by its prefix (``=x``, ``+X``, ``-x`` or bare)."""
    if not token:
        raise LexiconSyntaxError("empty feature token")
    for kind, prefix in _PREFIX.items():
        if token.startswith(prefix):
            if len(token) == 1:
                raise LexiconSyntaxError(f"feature {token!r} has no name")
            return Feature(kind, token[1:])
    if not re.match(r"^[^\s:\[\]()]+$", token):
        raise LexiconSyntaxError(f"bad feature token {token!r}")
    return Feature(Kind.BASIC, token)


def phon(name: str) -> Feature:
    return Feature(Kind.PHONETIC, name)


@dataclass(frozen=True)
class FeatureString:
    items: tuple[Feature, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Feature]:
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __bool__(self) -> bool:
        return bool(self.items)

    @property
    def syntactic(self) -> tuple[Feature, ...]:
        return tuple(f for f in self.items if f.syntactic)

    @property
    def phonetic(self) -> tuple[Feature, ...]:
        return tuple(f for f in self.items if not f.syntactic)

    def __str__(self) -> str:
        return render_string(self)


EPSILON = FeatureString(())


def fs(text: str) -> FeatureString:
    """Build a feature string from ``"f1 f2 :: phon"`` surface syntax."""
    syn, sep, ph = text.partition("::")
    items = [parse_feature(t) for t in syn.split()]
    items += [phon(t) for t in ph.split()]
    return FeatureString(tuple(items))


def render_string(s: FeatureString) -> str:
    syn = " ".join(str(f) for f in s.syntactic)
    ph = " ".join(str(f) for f in s.phonetic)
    if ph:
        return f"{syn} :: {ph}".strip()
    return syn


def first(s: FeatureString) -> Feature:
    if not s.items:
        raise EmptyString("first of the empty string")
    return s.items[0]


def shift(s: FeatureString) -> FeatureString:
    if not s.items:
        raise EmptyString("shift of the empty string")
    return FeatureString(s.items[1:])


class Indicator(enum.Enum):
    LT = "<"
    GT = ">"

    def __str__(self) -> str:
        return self.value


LT = Indicator.LT
GT = Indicator.GT


@dataclass(frozen=True)
class Leaf:
    label: FeatureString = EPSILON
    # index of the lexicon entry this leaf descends from; bookkeeping only
    origin: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Node:
    indicator: Indicator
    left: "Tree"
    right: "Tree"


Tree = Union[Leaf, Node]
Address = str


def is_complex(t: Tree) -> bool:
    return isinstance(t, Node)


def extract(i: int | str, t: Tree) -> Tree:
    if not isinstance(t, Node):
        raise SimpleTree("cannot extract a child of a leaf")
    return t.left if str(i) == "0" else t.right


def cons(f: Indicator, t0: Tree, t1: Tree) -> Node:
    return Node(Indicator(f), t0, t1)


def _check(gamma: Address) -> None:
    if any(b not in "01" for b in gamma):
        raise BadAddress(f"not a node address: {gamma!r}")


def extract_path(gamma: Address, t: Tree) -> Tree:
    _check(gamma)
    for bit in gamma:
        if not isinstance(t, Node):
            raise BadAddress(f"address {gamma!r} leaves the tree")
        t = extract(bit, t)
    return t


def label(gamma: Address, t: Tree) -> Indicator | FeatureString:
    """Indicator of an internal node, or the string of the leaf on the path.

    A leaf absorbs any remaining address bits.
    """
    _check(gamma)
    for bit in gamma:
        if isinstance(t, Leaf):
            break
        t = extract(bit, t)
    return t.label if isinstance(t, Leaf) else t.indicator


def head(t: Tree) -> Address:
    bits = []
    while isinstance(t, Node):
        if t.indicator is LT:
            bits.append("0")
            t = t.left
        else:
            bits.append("1")
            t = t.right
    return "".join(bits)


def head_leaf(t: Tree) -> Leaf:
    leaf = extract_path(head(t), t)
    assert isinstance(leaf, Leaf)
    return leaf


def feat(t: Tree) -> Feature:
    return first(head_leaf(t).label)


def max_proj(gamma: Address, t: Tree) -> Address:
    _check(gamma)
    out = []
    while gamma != head(t):
        if not gamma or not isinstance(t, Node):
            raise Undefined(f"no maximal projection for {gamma!r}")
        out.append(gamma[0])
        t = extract(gamma[0], t)
        gamma = gamma[1:]
    return "".join(out)


def max_set(P: Iterable[Address], t: Tree) -> set[Address]:
    return {max_proj(g, t) for g in P}


def leaf_addresses(t: Tree, prefix: Address = "") -> Iterator[tuple[Address, Leaf]]:
    if isinstance(t, Leaf):
        yield prefix, t
    else:
        yield from leaf_addresses(t.left, prefix + "0")
        yield from leaf_addresses(t.right, prefix + "1")


def leaves_with(f: Feature, t: Tree) -> set[Address]:
    return {g for g, leaf in leaf_addresses(t) if leaf.label and first(leaf.label) == f}


def replace(gamma: Address, t: Tree, new: Tree) -> Tree:
    _check(gamma)
    if not gamma:
        return new
    if not isinstance(t, Node):
        raise BadAddress(f"address {gamma!r} leaves the tree")
    if gamma[0] == "0":
        return Node(t.indicator, replace(gamma[1:], t.left, new), t.right)
    return Node(t.indicator, t.left, replace(gamma[1:], t.right, new))


def shift_head(t: Tree) -> Tree:
    h = head(t)
    leaf = extract_path(h, t)
    assert isinstance(leaf, Leaf)
    return replace(h, t, Leaf(shift(leaf.label), leaf.origin))


def height(t: Tree) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max(height(t.left), height(t.right))


def feature_count(t: Tree) -> int:
    return sum(len(leaf.label.syntactic) for _, leaf in leaf_addresses(t))


# ---------------------------------------------------------------- serialization

def serialize(t: Tree) -> str:
    if isinstance(t, Leaf):
        return f"[{render_string(t.label)}]"
    return f"({t.indicator.value} {serialize(t.left)} {serialize(t.right)})"


_TOKEN = re.compile(r"\s*(\(|\)|\[[^\]]*\]|[<>])")


def parse_tree(text: str) -> Tree:
    """Inverse of :func:`serialize`."""
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LexiconSyntaxError(f"unexpected input at column {pos}: {text[pos:pos + 10]!r}")
        tokens.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def walk(k: int) -> tuple[Tree, int]:
        tok = tokens[k]
        if tok.startswith("["):
            return Leaf(fs(tok[1:-1])), k + 1
        if tok != "(" or tokens[k + 1] not in "<>":
            raise LexiconSyntaxError(f"malformed tree near token {k}")
        ind = Indicator(tokens[k + 1])
        left, k = walk(k + 2)
        right, k = walk(k)
        if tokens[k] != ")":
            raise LexiconSyntaxError(f"expected ')' at token {k}")
        return Node(ind, left, right), k + 1

    try:
        tree, end = walk(0)
    except IndexError:
        raise LexiconSyntaxError("truncated tree") from None
    if end != len(tokens):
        raise LexiconSyntaxError("trailing input after tree")
    return tree
