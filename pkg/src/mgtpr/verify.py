"""Exact checks that the vector-level operations mirror the symbolic ones.

Everything runs on the faithful scheme, so each comparison is an equality
of sparse vectors with integer coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import Undefined
from .fock import FockMachine, filler, represent_state, represent_string, represent_tree
from .grammar import Lexicon, in_dom_merge, in_dom_move, merge, move, parse_lexicon
from .processor import DerivationTrace, Op, derive, permute, transposition
from .schemes import make_faithful_scheme
from .binding import s as srole
from .terms import Tree, feat, head, leaf_addresses, max_proj


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


# ------------------------------------------------------------ random material

_CATS = ["a", "b", "e", "x", "c"]
_LICS = ["k", "q"]


def random_lexicon(rng: random.Random, size: int = 6) -> Lexicon:
    """Small well-shaped lexicon; the last category listed is always present."""
    lines = []
    for n in range(size):
        sels = [f"={rng.choice(_CATS[:-1])}" for _ in range(rng.choice([0, 0, 1, 1, 2]))]
        lics = [f"+{rng.choice(_LICS).upper()}" for _ in range(rng.choice([0, 0, 1]))]
        pre, post = sels[: len(sels) // 2], sels[len(sels) // 2:]
        cat = "c" if n == 0 else rng.choice(_CATS[:-1])
        mees = [f"-{rng.choice(_LICS)}" for _ in range(rng.choice([0, 1, 1]))]
        lines.append(" ".join(pre + lics + post + [cat] + mees) + f" :: w{n}")
    lines += [f"{c} -{l} :: z{c}{l}" for c in _CATS[:-1] for l in _LICS]
    lines += [f"=a +{l.upper()} b :: m{l}" for l in _LICS]
    return parse_lexicon("\n".join(lines))


def random_instances(rng: random.Random, count: int) -> Iterator[tuple[Lexicon, str, tuple[Tree, ...]]]:
    """Yield ``(lexicon, op, args)`` for random applicable merge/move instances.

    Each run starts from a random multiset of lexical items and keeps
    applying a randomly chosen applicable operation.
    """
    produced = 0
    while produced < count:
        lex = random_lexicon(rng)
        w = [rng.choice(lex.leaves()) for _ in range(rng.randint(3, 7))]
        for _ in range(12):
            options = []
            for i, t1 in enumerate(w):
                for j, t2 in enumerate(w):
                    if i != j and in_dom_merge(t1, t2):
                        options.append(("merge", i, j))
                if in_dom_move(t1):
                    options.append(("move", i, i))
            if not options:
                break
            op, i, j = rng.choice(options)
            if op == "merge":
                args = (w[i], w[j])
                new = merge(*args)
                w = [t for k, t in enumerate(w) if k not in (i, j)] + [new]
            else:
                args = (w[i],)
                w = [t for k, t in enumerate(w) if k != i] + [move(w[i])]
            produced += 1
            yield lex, op, args
            if produced >= count:
                return


# ------------------------------------------------------------ checks

def _machine(lex: Lexicon) -> FockMachine:
    return FockMachine(make_faithful_scheme(lex), lex)


def check_golden_trees(trace: DerivationTrace) -> Check:
    fm = _machine(trace.lexicon)
    for k, (w, st) in enumerate(zip(trace.states, trace.steps), 1):
        v = permute(w, st.permutation)
        if st.op is Op.MERGE:
            got = fm.merge(represent_tree(v[-2]), represent_tree(v[-1]))
            want = represent_tree(merge(v[-2], v[-1]))
        else:
            got = fm.move(represent_tree(v[-1]))
            want = represent_tree(move(v[-1]))
        if got != want:
            return Check("bold merge/move on golden steps", False, f"step {k} differs")
    return Check("bold merge/move on golden steps", True, f"{len(trace.steps)} steps exact")


def check_golden_states(trace: DerivationTrace) -> Check:
    fm = _machine(trace.lexicon)
    for k, (w, st) in enumerate(zip(trace.states, trace.steps), 1):
        got = fm.step(represent_state(w), st)
        if got != represent_state(trace.states[k]):
            return Check("bold merge*/move* with transpositions", False, f"step {k} differs")
    return Check("bold merge*/move* with transpositions", True, f"{len(trace.steps)} transitions exact")


def check_random_homomorphism(seed: int = 7, count: int = 200) -> Check:
    rng = random.Random(seed)
    n = 0
    for lex, op, args in random_instances(rng, count):
        fm = _machine(lex)
        vecs = [represent_tree(t) for t in args]
        if op == "merge":
            ok = fm.merge(*vecs) == represent_tree(merge(*args))
        else:
            ok = fm.move(*vecs) == represent_tree(move(*args))
        if not ok:
            return Check("random merge/move instances", False, f"instance {n} ({op}) differs")
        n += 1
    return Check("random merge/move instances", n >= count, f"{n} instances exact")


def check_random_star(seed: int = 11, count: int = 60) -> Check:
    """Stack-level check: random stacks, random applicable step, realized in Fock space."""
    from .processor import find_step, merge_star, move_star

    rng = random.Random(seed)
    done = 0
    tries = 0
    while done < count and tries < 50 * count:
        tries += 1
        lex = random_lexicon(rng)
        w = tuple(rng.choice(lex.leaves()) for _ in range(rng.randint(2, 6)))
        found = find_step(w)
        if found is None:
            continue
        op, pi, used, _ = found
        fm = _machine(lex)
        v = represent_state(w)
        for i, j in used:
            v = fm.transpose(i, j, v)
        if v != represent_state(permute(w, pi)):
            return Check("bold transpose and star operations", False, "transposition mismatch")
        sym = merge_star(permute(w, pi)) if op is Op.MERGE else move_star(permute(w, pi))
        got = fm.merge_star(v, len(w)) if op is Op.MERGE else fm.move_star(v, len(w))
        if got != represent_state(sym):
            return Check("bold transpose and star operations", False, f"{op.value} mismatch")
        done += 1
    return Check("bold transpose and star operations", done >= count, f"{done} stacks exact")


def check_random_transpose(seed: int = 3, count: int = 100) -> Check:
    rng = random.Random(seed)
    lex = random_lexicon(rng)
    fm = _machine(lex)
    for _ in range(count):
        m = rng.randint(2, 7)
        w = tuple(rng.choice(lex.leaves()) for _ in range(m))
        i, j = rng.sample(range(1, m + 1), 2)
        if fm.transpose(i, j, represent_state(w)) != represent_state(permute(w, transposition(m, i, j))):
            return Check("bold transpose vs permute", False, f"tau({i},{j}) on {m} trees")
    return Check("bold transpose vs permute", True, f"{count} random transpositions")


def check_addresses(trace: DerivationTrace) -> Check:
    fm = _machine(trace.lexicon)
    n = 0
    for w in trace.states:
        for t in w:
            u = represent_tree(t)
            if fm.head(u) != head(t):
                return Check("bold head/max agree with symbolic", False, "head differs")
            for g, _ in leaf_addresses(t):
                try:
                    want = max_proj(g, t)
                except Undefined:
                    want = None
                try:
                    got = fm.max(g, u)
                except Undefined:
                    got = None
                if got != want:
                    return Check("bold head/max agree with symbolic", False, f"max({g}) differs")
                n += 1
    return Check("bold head/max agree with symbolic", True, f"{n} addresses")


def check_unbinding(lex: Lexicon) -> Check:
    fm = _machine(lex)
    for e in lex.entries:
        u = represent_string(e.features)
        for k, f in enumerate(e.features, 1):
            if fm.unbind(u, srole(k)) != filler(f):
                return Check("unbinding recovers fillers", False, f"{e.text} position {k}")
    return Check("unbinding recovers fillers", True, f"{len(lex.entries)} entries")


def check_discrimination(trace: DerivationTrace) -> Check:
    fm = _machine(trace.lexicon)
    for w in trace.states:
        for t in w:
            simple = not hasattr(t, "indicator")
            if (not fm.first(represent_tree(t)).is_zero()) != (simple and bool(t.label)):
                return Check("first() separates simple and complex", False, "")
    return Check("first() separates simple and complex", True, "")


def check_state_roundtrip(trace: DerivationTrace) -> Check:
    from .binding import p

    for w in trace.states:
        v = represent_state(w)
        for k, t in enumerate(w, 1):
            if v.unbind(p(k)) != represent_tree(t):
                return Check("stack unbinding recovers trees", False, f"position {k}")
    return Check("stack unbinding recovers trees", True, "")


def homomorphism_suite(lex: Lexicon, random_count: int = 200) -> list[Check]:
    trace = derive(lex)
    suite: list[Callable[[], Check]] = [
        lambda: check_unbinding(lex),
        lambda: check_discrimination(trace),
        lambda: check_addresses(trace),
        lambda: check_golden_trees(trace),
        lambda: check_golden_states(trace),
        lambda: check_state_roundtrip(trace),
        lambda: check_random_homomorphism(count=random_count),
        lambda: check_random_star(),
        lambda: check_random_transpose(),
    ]
    return [fn() for fn in suite]


__all__ = ["Check", "homomorphism_suite", "random_instances", "random_lexicon"]
