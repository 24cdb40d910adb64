"""Lexicons and the structure-building functions merge and move."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DomainError,
    EmptyString,
    LexiconSyntaxError,
    MissingComplementizer,
    NotALicensor,
    NotASelector,
    ShapeError,
    Undefined,
)
from .terms import (
    EPSILON,
    GT,
    LT,
    Feature,
    FeatureString,
    Kind,
    Leaf,
    Tree,
    cons,
    extract_path,
    feat,
    is_complex,
    leaves_with,
    max_set,
    parse_feature,
    phon,
    render_string,
    replace,
    shift_head,
)

# Shape of the syntactic part of an entry, one letter per feature kind.
# Licensors may repeat (one entry of the shipped lexicon carries two of them).
_SHAPE = re.compile(r"^S*L*S*BM*$")
_LETTER = {Kind.SELECTOR: "S", Kind.LICENSOR: "L", Kind.BASIC: "B", Kind.LICENSEE: "M"}


@dataclass(frozen=True)
class Entry:
    features: FeatureString
    line: int = 0

    @property
    def text(self) -> str:
        s = render_string(self.features)
        return s if "::" in s else f"{s} ::"


@dataclass(frozen=True)
class Lexicon:
    entries: tuple[Entry, ...]
    complementizer: Feature = Feature(Kind.BASIC, "c")
    basic: frozenset[Feature] = field(default=frozenset())
    selectors: frozenset[Feature] = field(default=frozenset())
    licensors: frozenset[Feature] = field(default=frozenset())
    licensees: frozenset[Feature] = field(default=frozenset())
    phonetic: frozenset[Feature] = field(default=frozenset())

    def __len__(self) -> int:
        return len(self.entries)

    def leaves(self) -> list[Leaf]:
        return [Leaf(e.features, i) for i, e in enumerate(self.entries)]

    def sel(self, s: Feature) -> Feature:
        if s not in self.selectors:
            raise NotASelector(str(s))
        return sel(s)

    def lic(self, f: Feature) -> Feature:
        if f not in self.licensors:
            raise NotALicensor(str(f))
        return lic(f)

    @property
    def features(self) -> list[Feature]:
        """Every distinct feature, syntactic ones first, in a stable order."""
        seen: dict[Feature, None] = {}
        for e in self.entries:
            for f in e.features.syntactic:
                seen.setdefault(f, None)
        for e in self.entries:
            for f in e.features.phonetic:
                seen.setdefault(f, None)
        return list(seen)

    @property
    def max_length(self) -> int:
        return max((len(e.features) for e in self.entries), default=0)

    def render(self) -> str:
        return "\n".join(e.text for e in self.entries) + "\n"


def sel(s: Feature) -> Feature:
    if s.kind is not Kind.SELECTOR:
        raise NotASelector(str(s))
    return Feature(Kind.BASIC, s.name)


def lic(f: Feature) -> Feature:
    """``+X`` is paired with ``-x`` by case-folding the name."""
    if f.kind is not Kind.LICENSOR:
        raise NotALicensor(str(f))
    return Feature(Kind.LICENSEE, f.name.lower())


def parse_entry(line: str, lineno: int = 0) -> Entry:
    if "::" not in line:
        raise LexiconSyntaxError("missing '::' separator", lineno)
    syn, _, ph = line.partition("::")
    feats = [parse_feature(tok) for tok in syn.split()]
    shape = "".join(_LETTER[f.kind] for f in feats)
    if not _SHAPE.match(shape):
        raise ShapeError(f"line {lineno}: entry {line.strip()!r} has ill-formed feature order")
    return Entry(FeatureString(tuple(feats) + tuple(phon(p) for p in ph.split())), lineno)


def parse_lexicon(text: str, complementizer: str = "c") -> Lexicon:
    entries = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            try:
                entries.append(parse_entry(line, n))
            except LexiconSyntaxError as exc:
                if exc.line is None:
                    raise LexiconSyntaxError(str(exc), n) from None
                raise
    c = Feature(Kind.BASIC, complementizer)
    by_kind: dict[Kind, set[Feature]] = {k: set() for k in Kind}
    for e in entries:
        for f in e.features:
            by_kind[f.kind].add(f)
    if c not in by_kind[Kind.BASIC]:
        raise MissingComplementizer(f"no entry has basic category {complementizer!r}")
    for s in by_kind[Kind.SELECTOR]:
        if sel(s) not in by_kind[Kind.BASIC]:
            raise ShapeError(f"selector {s} selects unknown category {s.name!r}")
    for l in by_kind[Kind.LICENSOR]:
        if lic(l) not in by_kind[Kind.LICENSEE]:
            raise ShapeError(f"licensor {l} has no matching licensee")
    return Lexicon(
        tuple(entries),
        c,
        frozenset(by_kind[Kind.BASIC]),
        frozenset(by_kind[Kind.SELECTOR]),
        frozenset(by_kind[Kind.LICENSOR]),
        frozenset(by_kind[Kind.LICENSEE]),
        frozenset(by_kind[Kind.PHONETIC]),
    )


def load_lexicon(path: str | Path) -> Lexicon:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


def _feat_or_none(t: Tree) -> Feature | None:
    try:
        return feat(t)
    except EmptyString:
        return None


def in_dom_merge(t1: Tree, t2: Tree) -> bool:
    f1, f2 = _feat_or_none(t1), _feat_or_none(t2)
    return f1 is not None and f1.kind is Kind.SELECTOR and sel(f1) == f2


def movers(t: Tree) -> set[str]:
    """Maximal projections whose head carries the licensee for t's licensor."""
    return max_set(leaves_with(lic(feat(t)), t), t)


def in_dom_move(t: Tree) -> bool:
    f = _feat_or_none(t)
    if f is None or f.kind is not Kind.LICENSOR:
        return False
    try:
        return len(movers(t)) == 1
    except Undefined:
        return False


def merge(t1: Tree, t2: Tree) -> Tree:
    if not in_dom_merge(t1, t2):
        raise DomainError("arguments are not in the domain of merge")
    if not is_complex(t1):
        return cons(LT, shift_head(t1), shift_head(t2))
    # a complex selector takes the selectee as its specifier, on the left
    return cons(GT, shift_head(t2), shift_head(t1))


def move(t: Tree) -> Tree:
    if not in_dom_move(t):
        raise DomainError("tree is not in the domain of move")
    (gamma,) = movers(t)
    moved = extract_path(gamma, t)
    rest = replace(gamma, t, Leaf(EPSILON))
    return cons(GT, shift_head(moved), shift_head(rest))
