"""Harmony as distance to the final state, and harmonic MG lexicons.

Weights are attached to feature *instances*: a pair ``(entry, offset)``
naming a lexicon entry and a 0-based position in its feature string.
Two uses of the same feature type in different entries therefore carry
independent weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import AlignmentError, LexiconSyntaxError, MissingWeight, StuckTrace
from .fock import FockVector, represent_state
from .grammar import Lexicon, merge, move, movers, parse_entry
from .processor import DerivationTrace, Op, Status, permute
from .schemes import CompressedScheme, FaithfulScheme, embedding_depth
from .terms import Kind, Tree, extract_path, head_leaf

Site = tuple[int, int]


@dataclass(frozen=True)
class HarmonySeries:
    values: tuple[float, ...]
    scheme: str

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> float:
        return self.values[k]

    def deltas(self) -> list[float]:
        return [b - a for a, b in zip(self.values, self.values[1:])]

    def to_csv(self) -> str:
        rows = ["step,harmony"] + [f"{k},{h:.6f}" for k, h in enumerate(self.values, 1)]
        return "\n".join(rows) + "\n"


def state_vectors(trace: DerivationTrace, scheme) -> list:
    """Every state of the trace in the scheme's common space."""
    if isinstance(scheme, CompressedScheme):
        D = embedding_depth(trace.states)
        return [scheme.represent_state(w, D) for w in trace.states]
    if isinstance(scheme, FaithfulScheme):
        return [represent_state(w, scheme.string_capacity) for w in trace.states]
    raise TypeError(f"unsupported scheme {scheme!r}")


def _distance(a, b) -> float:
    if isinstance(a, FockVector):
        return (a - b).norm()
    return float(np.linalg.norm(a - b))


def harmony_series(trace: DerivationTrace, scheme) -> HarmonySeries:
    if trace.status is not Status.SUCCESS:
        raise StuckTrace("harmony needs a successful derivation")
    vecs = state_vectors(trace, scheme)
    final = vecs[-1]
    vals = [-_distance(v, final) for v in vecs]
    vals[-1] = 0.0
    return HarmonySeries(tuple(vals), getattr(scheme, "name", "?"))


# ---------------------------------------------------------------- weighted lexicons

@dataclass
class WeightedLexicon:
    lexicon: Lexicon
    weights: dict[Site, float] = field(default_factory=dict)
    h0: float = 0.0

    def weight(self, site: Site) -> float:
        entry, pos = site
        if not (0 <= entry < len(self.lexicon.entries)) or not (
            0 <= pos < len(self.lexicon.entries[entry].features)
        ):
            raise MissingWeight(f"no feature at entry {entry}, offset {pos}")
        return self.weights.get(site, 0.0)

    def total(self) -> float:
        return float(sum(self.weights.values()))

    def render(self, digits: int = 2) -> str:
        """Lexicon file text with ``feature@weight`` on selectors and licensors."""
        lines = []
        for e_idx, entry in enumerate(self.lexicon.entries):
            syn, ph = [], []
            for pos, f in enumerate(entry.features):
                if f.kind in (Kind.SELECTOR, Kind.LICENSOR):
                    syn.append(f"{f}@{round(float(self.weights.get((e_idx, pos), 0.0)), digits):g}")
                elif f.kind is Kind.PHONETIC:
                    ph.append(str(f))
                else:
                    syn.append(str(f))
            lines.append(" ".join(syn) + " ::" + ("" if not ph else " " + " ".join(ph)))
        return "\n".join(lines) + "\n"


def parse_weighted_lexicon(text: str, lex: Lexicon) -> WeightedLexicon:
    """Read ``feature@weight`` annotations back; entries must align with ``lex``."""
    weights: dict[Site, float] = {}
    rows = [(n, ln.split("#", 1)[0].strip()) for n, ln in enumerate(text.splitlines(), 1)]
    rows = [(n, ln) for n, ln in rows if ln]
    if len(rows) != len(lex.entries):
        raise AlignmentError("weighted lexicon and lexicon differ in length")
    for e_idx, (n, line) in enumerate(rows):
        syn, _, ph = line.partition("::")
        plain = []
        for pos, tok in enumerate(syn.split()):
            name, at, w = tok.partition("@")
            plain.append(name)
            if at:
                try:
                    weights[(e_idx, pos)] = float(w)
                except ValueError:
                    raise LexiconSyntaxError(f"bad weight {w!r}", n) from None
        entry = parse_entry(" ".join(plain) + " ::" + ph, n)
        if entry.features != lex.entries[e_idx].features:
            raise AlignmentError(f"line {n} does not match lexicon entry {e_idx + 1}")
    return WeightedLexicon(lex, weights)


def _site_of(t: Tree, lex: Lexicon) -> Site:
    leaf = head_leaf(t)
    if leaf.origin is None or not leaf.label:
        raise MissingWeight("head has no lexical origin or no features")
    return leaf.origin, len(lex.entries[leaf.origin].features) - len(leaf.label)


def tree_harmony(t: Tree, W: WeightedLexicon) -> float:
    return W.weight(_site_of(t, W.lexicon))


def hmerge(h: float, t1: Tree, t2: Tree, W: WeightedLexicon) -> tuple[float, Tree]:
    return h + tree_harmony(t1, W) + tree_harmony(t2, W), merge(t1, t2)


def hmove(h: float, t: Tree, W: WeightedLexicon) -> tuple[float, Tree]:
    result = move(t)
    (gamma,) = movers(t)
    return h + tree_harmony(t, W) + tree_harmony(extract_path(gamma, t), W), result


def harmony_filter(h: float, threshold: float = 0.0) -> bool:
    return h >= threshold


def run_hmg(trace: DerivationTrace, W: WeightedLexicon) -> list[float]:
    """Cumulative harmony after each step of a trace, starting from ``W.h0``."""
    hs = [W.h0]
    for w, st in zip(trace.states, trace.steps):
        v = permute(w, st.permutation)
        if st.op is Op.MERGE:
            h, _ = hmerge(hs[-1], v[-2], v[-1], W)
        else:
            h, _ = hmove(hs[-1], v[-1], W)
        hs.append(h)
    return hs


def extract_hmg(trace: DerivationTrace, series: HarmonySeries | Sequence[float]) -> WeightedLexicon:
    """Assign each harmony difference to the trigger feature consumed at that step.

    Differences are kept as exact fractions of the float inputs, so summing
    them back reproduces the series without rounding.
    """
    values = list(series.values if isinstance(series, HarmonySeries) else series)
    if len(values) != len(trace.states):
        raise AlignmentError(f"{len(values)} harmony values for {len(trace.states)} states")
    lex = _lexicon_of(trace)
    weights: dict[Site, Fraction] = {}
    for k, st in enumerate(trace.steps):
        if st.site is None:
            raise AlignmentError(f"step {k + 1} has no recorded trigger site")
        if st.site in weights:
            raise AlignmentError(f"feature instance {st.site} consumed twice")
        weights[st.site] = Fraction(values[k + 1]) - Fraction(values[k])
    return WeightedLexicon(lex, weights)


def _lexicon_of(trace: DerivationTrace) -> Lexicon:
    lex = trace.lexicon
    if lex is None:
        raise AlignmentError("trace carries no lexicon")
    return lex


def regenerate_series(trace: DerivationTrace, W: WeightedLexicon, h1: float) -> list[float]:
    """Rebuild a series from its first value by adding the weight used at each step."""
    acc = Fraction(h1)
    out = [float(acc)]
    for st in trace.steps:
        acc += Fraction(W.weight(st.site))
        out.append(float(acc))
    return out


def delta_table(trace: DerivationTrace, series: HarmonySeries) -> str:
    rows = ["step,op,trigger,entry,offset,delta"]
    for k, (st, d) in enumerate(zip(trace.steps, series.deltas()), 1):
        e, o = st.site if st.site else ("", "")
        rows.append(f"{k},{st.op.value},{st.trigger},{e if e == '' else e + 1},{o},{d:.6f}")
    return "\n".join(rows) + "\n"

