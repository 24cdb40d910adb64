"""Bottom-up stack processor with a deterministic rearrangement oracle.

Stack positions are 1-based, position 1 is the bottom and position m the
top.  A permutation ``pi`` is a sequence of old positions, so that the new
stack reads ``(w[pi[0]], ..., w[pi[m-1]])``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError, EmptyString, NotAPermutation, Underflow
from .grammar import Lexicon, in_dom_merge, in_dom_move, merge, move
from .terms import Feature, Kind, Tree, feat, head_leaf, serialize

State = tuple[Tree, ...]


class Op(enum.Enum):
    MERGE = "merge"
    MOVE = "move"


class Status(enum.Enum):
    SUCCESS = "success"
    STUCK = "stuck"


def merge_star(w: Sequence[Tree]) -> State:
    if len(w) < 2:
        raise Underflow("merge* needs at least two trees")
    return tuple(w[:-2]) + (merge(w[-2], w[-1]),)


def move_star(w: Sequence[Tree]) -> State:
    if not w:
        raise Underflow("move* on an empty stack")
    return tuple(w[:-1]) + (move(w[-1]),)


def permute(w: Sequence[Tree], pi: Sequence[int]) -> State:
    if sorted(pi) != list(range(1, len(w) + 1)):
        raise NotAPermutation(f"{list(pi)} is not a permutation of 1..{len(w)}")
    return tuple(w[k - 1] for k in pi)


def transposition(m: int, i: int, j: int) -> list[int]:
    pi = list(range(1, m + 1))
    pi[i - 1], pi[j - 1] = pi[j - 1], pi[i - 1]
    return pi


def compose(first: Sequence[int], then: Sequence[int]) -> list[int]:
    """Permutation equal to applying ``first`` and afterwards ``then``."""
    return [first[k - 1] for k in then]


@dataclass(frozen=True)
class Step:
    op: Op
    trigger: Feature
    # stack positions (before rearrangement) of selector/selectee or mover
    positions: tuple[int, ...]
    permutation: tuple[int, ...]
    # the rearrangement as a product of transpositions, applied in order
    transpositions: tuple[tuple[int, int], ...]
    # (lexicon entry, offset in entry) of the consumed trigger feature
    site: tuple[int, int] | None = None


def _transpose_to_top(w: Sequence[Tree], moves: list[tuple[int, int]]) -> tuple[list[int], list[tuple[int, int]]]:
    m = len(w)
    pi = list(range(1, m + 1))
    used = []
    for a, b in moves:
        if a != b:
            pi = compose(pi, transposition(m, a, b))
            used.append((a, b))
    return pi, used


def find_step(w: Sequence[Tree]) -> tuple[Op, list[int], list[tuple[int, int]], tuple[int, ...]] | None:
    """Return ``(op, permutation, transpositions, positions)`` or None.

    Merge candidates are tried before move candidates; both scans run from
    the top of the stack downwards and the first hit wins.  The selectee is
    swapped to the top, then the selector (at its possibly updated position)
    to the slot below it.
    """
    m = len(w)
    for i in range(m, 0, -1):
        for j in range(m, 0, -1):
            if i != j and in_dom_merge(w[i - 1], w[j - 1]):
                ii = j if i == m else i
                pi, used = _transpose_to_top(w, [(j, m), (ii, m - 1)])
                return Op.MERGE, pi, used, (i, j)
    for i in range(m, 0, -1):
        if in_dom_move(w[i - 1]):
            pi, used = _transpose_to_top(w, [(i, m)])
            return Op.MOVE, pi, used, (i,)
    return None


def _site(t: Tree, lex: Lexicon | None) -> tuple[int, int] | None:
    leaf = head_leaf(t)
    if leaf.origin is None or lex is None:
        return None
    return leaf.origin, len(lex.entries[leaf.origin].features) - len(leaf.label)


@dataclass
class DerivationTrace:
    states: list[State]
    steps: list[Step] = field(default_factory=list)
    status: Status = Status.STUCK
    lexicon: Lexicon | None = None

    @property
    def final(self) -> State:
        return self.states[-1]

    @property
    def operations(self) -> list[str]:
        return [s.op.value for s in self.steps]

    def replay(self) -> list[State]:
        out = [self.states[0]]
        for st in self.steps:
            w = permute(out[-1], st.permutation)
            out.append(merge_star(w) if st.op is Op.MERGE else move_star(w))
        return out

    # ---------------------------------------------------------------- export
    def to_text(self) -> str:
        lines = [f"status: {self.status.value}"]
        for k, w in enumerate(self.states, 1):
            lines.append(f"w{k}: " + " | ".join(serialize(t) for t in w))
            if k <= len(self.steps):
                st = self.steps[k - 1]
                pi = ",".join(map(str, st.permutation))
                if st.op is Op.MERGE:
                    i, j = st.positions
                    lines.append(f"{k}: merge({i},{j}) trigger={st.trigger} pi=[{pi}]")
                else:
                    lines.append(f"{k}: move({st.positions[0]}) trigger={st.trigger} pi=[{pi}]")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "status": self.status.value,
            "states": [[serialize(t) for t in w] for w in self.states],
            "steps": [
                {
                    "op": st.op.value,
                    "trigger": str(st.trigger),
                    "positions": list(st.positions),
                    "permutation": list(st.permutation),
                    "transpositions": [list(p) for p in st.transpositions],
                    "site": list(st.site) if st.site else None,
                }
                for st in self.steps
            ],
        }
        return json.dumps(doc, indent=2) + "\n"


def derive(lex: Lexicon, max_steps: int = 10_000) -> DerivationTrace:
    w: State = tuple(lex.leaves())
    trace = DerivationTrace([w], lexicon=lex)
    for _ in range(max_steps):
        found = find_step(w)
        if found is None:
            break
        op, pi, used, positions = found
        trigger_tree = w[positions[0] - 1]
        trigger = feat(trigger_tree)
        site = _site(trigger_tree, lex)
        v = permute(w, pi)
        w = merge_star(v) if op is Op.MERGE else move_star(v)
        trace.steps.append(Step(op, trigger, positions, tuple(pi), tuple(used), site))
        trace.states.append(w)
    if len(w) == 1:
        try:
            done = feat(w[0]) == lex.complementizer
        except EmptyString:
            done = False
        trace.status = Status.SUCCESS if done else Status.STUCK
    return trace


def apply_step(w: Sequence[Tree], step: Step) -> State:
    v = permute(w, step.permutation)
    if step.op is Op.MERGE:
        return merge_star(v)
    if step.op is Op.MOVE:
        return move_star(v)
    raise DomainError(step.op)


__all__ = [
    "DerivationTrace",
    "Kind",
    "Op",
    "State",
    "Status",
    "Step",
    "apply_step",
    "compose",
    "derive",
    "find_step",
    "merge_star",
    "move_star",
    "permute",
    "transposition",
]
