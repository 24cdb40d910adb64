"""Sparse Fock-space vectors and vector-level realizations of the MG operations.

A :class:`FockVector` is a finite linear combination of basis tensors
``filler (x) role_1 (x) ... (x) role_q``.  The filler axis and each role are
kept symbolic, which makes the faithful scheme exact: coefficients are ints
or ``Fraction`` values and every zero test is an exact comparison.

Role tuples are stored in Kronecker order.  For a leaf string the first
role is the string position; tree roles follow from the deepest one to the
one nearest the root, and a stack role (if any) comes last.  Unbinding
therefore always strips the last factor.  Public node addresses stay
root-down bit strings, so the address of a term is its tree-role bits read
backwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .binding import R0, R1, R2, Binding, Role, RoleKind, bind_string, bind_tree, p, s
from .errors import (
    BadAddress,
    CapacityExceeded,
    DomainError,
    NonFaithfulScheme,
    SimpleVector,
    Undefined,
)
from .grammar import Lexicon, lic, sel
from .terms import Feature, FeatureString, Indicator, Kind, Tree, GT, LT

Key = tuple[Hashable, tuple[Role, ...]]

_TREE_ROLE = {"0": R0, "1": R1}


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


@dataclass(frozen=True)
class FockVector:
    terms: Mapping[Key, Number]

    def __init__(self, terms: Mapping[Key, Number] | Iterable[tuple[Key, Number]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, Number] = {}
        for k, c in items:
            acc[k] = acc.get(k, 0) + c
        object.__setattr__(self, "terms", {k: _clean(c) for k, c in acc.items() if c != 0})

    @classmethod
    def basis(cls, filler: Hashable, roles: Sequence[Role] = ()) -> "FockVector":
        return cls({(filler, tuple(roles)): 1})

    def __add__(self, other: "FockVector") -> "FockVector":
        return FockVector(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def __neg__(self) -> "FockVector":
        return self.scale(-1)

    def scale(self, a: Number) -> "FockVector":
        return FockVector({k: a * c for k, c in self.terms.items()})

    __rmul__ = lambda self, a: self.scale(a)  # noqa: E731

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FockVector) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def tensor(self, role: Role) -> "FockVector":
        """Append one role factor to every term (``u (x) r``)."""
        return FockVector({(f, rs + (role,)): c for (f, rs), c in self.terms.items()})

    def unbind(self, role: Role) -> "FockVector":
        """Apply ``id (x) role^+``; terms ending in another role are annihilated."""
        return FockVector({(f, rs[:-1]): c for (f, rs), c in self.terms.items() if rs and rs[-1] == role})

    def project_out(self, roles: Iterable[Role]) -> "FockVector":
        drop = set(roles)
        return FockVector({k: c for k, c in self.terms.items() if not (k[1] and k[1][-1] in drop)})

    def dot(self, other: "FockVector") -> Number:
        return sum((c * other.terms.get(k, 0) for k, c in self.terms.items()), 0)

    def norm(self) -> float:
        return math.sqrt(float(sum(c * c for c in self.terms.values())))

    def addresses(self) -> set[tuple[Role, ...]]:
        return {rs for _, rs in self.terms}

    def max_roles(self) -> int:
        return max((len(rs) for _, rs in self.terms), default=0)

    def __iter__(self) -> Iterator[tuple[Key, Number]]:
        return iter(sorted(self.terms.items(), key=lambda kv: _key_order(kv[0])))

    def render(self) -> str:
        """Nested text form, one term per line, deterministic order."""
        lines = []
        for (f, rs), c in self:
            factors = " (x) ".join([str(f)] + [str(r) for r in rs])
            lines.append(f"{c} * {factors}")
        return "{\n  " + ",\n  ".join(lines) + "\n}" if lines else "{}"

    def __repr__(self) -> str:
        return f"FockVector({len(self.terms)} terms)"


ZERO = FockVector()


def _filler_order(f: Hashable) -> tuple:
    if isinstance(f, Feature):
        return (0,) + f.sort_key()
    if isinstance(f, Indicator):
        return (1, f.value, "")
    return (2, str(f), "")


def _key_order(k: Key) -> tuple:
    f, rs = k
    return tuple(r.sort_key() for r in reversed(rs)), _filler_order(f)


# ------------------------------------------------------------ representation

def represent_string(x: FeatureString, capacity: int | None = None) -> FockVector:
    """Order-preserving tensor representation of a string: f_i at s_i."""
    bindings = bind_string(x)
    n = len(bindings)
    if capacity is not None and n > capacity:
        raise CapacityExceeded(f"string of length {n} exceeds capacity {capacity}")
    return _psi(bindings, n)


def _psi(bindings: frozenset[Binding], n: int) -> FockVector:
    # the binding structure numbers positions from the end; map s_j back to s_{n-j+1}
    return FockVector({(b.filler, (s(n - b.role.index + 1),)): 1 for b in bindings})


def _psi_tree(bindings: frozenset[Binding], capacity: int | None) -> FockVector:
    roles = {b.role for b in bindings}
    if R2 not in roles:
        n = len(bindings)
        if capacity is not None and n > capacity:
            raise CapacityExceeded(f"string of length {n} exceeds capacity {capacity}")
        return _psi(bindings, n)
    out = ZERO
    for b in bindings:
        if b.role == R2:
            out = out + FockVector.basis(b.filler, (R2,))
        else:
            out = out + _psi_tree(b.filler, capacity).tensor(b.role)
    return out


def represent_tree(t: Tree, capacity: int | None = None) -> FockVector:
    return _psi_tree(bind_tree(t), capacity)


def represent_state(w: Sequence[Tree], capacity: int | None = None) -> FockVector:
    out = ZERO
    for k, t in enumerate(w, 1):
        out = out + represent_tree(t, capacity).tensor(p(k))
    return out


def filler(x: Hashable) -> FockVector:
    return FockVector.basis(x)


def address_of(roles: Sequence[Role]) -> str | None:
    """Root-down address encoded by a run of r0/r1 roles, else None."""
    bits = []
    for r in reversed(roles):
        if r == R0:
            bits.append("0")
        elif r == R1:
            bits.append("1")
        else:
            return None
    return "".join(bits)


# ------------------------------------------------------------ bold operations

class FockMachine:
    """Vector-level MG over a faithful scheme.

    ``scheme`` needs a ``faithful`` flag and a ``string_capacity``; the
    lexicon supplies the selector and licensor inventories used to lift
    ``sel`` and ``lic`` to filler vectors.
    """

    def __init__(self, scheme, lexicon: Lexicon):
        if not getattr(scheme, "faithful", False):
            raise NonFaithfulScheme("vector-level operations need exact duals")
        self.scheme = scheme
        self.lexicon = lexicon
        self.n = scheme.string_capacity
        self._sel = {filler(x): filler(sel(x)) for x in lexicon.selectors}
        self._lic = {filler(x): filler(lic(x)) for x in lexicon.licensors}

    def unbind(self, u: FockVector, role: Role) -> FockVector:
        return u.unbind(role)

    # strings
    def first(self, u: FockVector) -> FockVector:
        return u.unbind(s(1))

    def shift(self, u: FockVector) -> FockVector:
        out = ZERO
        for i in range(1, self.n):
            out = out + u.unbind(s(i + 1)).tensor(s(i))
        return out

    def is_simple(self, u: FockVector) -> bool:
        # the empty leaf is the zero vector; treat it as simple
        return u.is_zero() or not self.first(u).is_zero()

    # trees
    def extract(self, i: int | str, u: FockVector) -> FockVector:
        if self.is_simple(u):
            raise SimpleVector("cannot extract a child of a simple vector")
        return u.unbind(R0 if str(i) == "0" else R1)

    def cons(self, f: Indicator | FockVector, u0: FockVector, u1: FockVector) -> FockVector:
        fv = f if isinstance(f, FockVector) else filler(f)
        return u0.tensor(R0) + u1.tensor(R1) + fv.tensor(R2)

    def extract_path(self, gamma: str, u: FockVector) -> FockVector:
        for bit in gamma:
            if bit not in "01" or self.is_simple(u):
                raise BadAddress(f"address {gamma!r} leaves the tree")
            u = self.extract(bit, u)
        return u

    def label(self, gamma: str, u: FockVector) -> FockVector:
        for bit in gamma:
            if self.is_simple(u):
                break
            u = self.extract(bit, u)
        if self.is_simple(u):
            return u
        return u.unbind(R2)

    def head(self, u: FockVector) -> str:
        bits = []
        lt = filler(LT)
        while not self.is_simple(u):
            b = "0" if self.label("", u) == lt else "1"
            bits.append(b)
            u = self.extract(b, u)
        return "".join(bits)

    def feat(self, u: FockVector) -> FockVector:
        return self.first(self.label(self.head(u), u))

    def max(self, gamma: str, u: FockVector) -> str:
        out = []
        while gamma != self.head(u):
            if not gamma or self.is_simple(u):
                raise Undefined(f"no maximal projection for {gamma!r}")
            out.append(gamma[0])
            u = self.extract(gamma[0], u)
            gamma = gamma[1:]
        return "".join(out)

    def max_set(self, P: Iterable[str], u: FockVector) -> set[str]:
        return {self.max(g, u) for g in P}

    def ubfeat(self, gamma: str, f: FockVector, u: FockVector) -> Number:
        v = u
        for bit in gamma:
            v = v.unbind(_TREE_ROLE[bit])
        return f.dot(v.unbind(s(1)))

    def leaves(self, f: FockVector, u: FockVector) -> set[str]:
        candidates = set()
        for rs in u.addresses():
            if rs and rs[0] == s(1):
                g = address_of(rs[1:])
                if g is not None:
                    candidates.add(g)
        return {g for g in candidates if self.ubfeat(g, f, u) == 1}

    def replace(self, gamma: str, u: FockVector, new: FockVector) -> FockVector:
        if not gamma:
            return new
        if gamma[0] not in "01" or self.is_simple(u):
            raise BadAddress(f"address {gamma!r} leaves the tree")
        left, right = self.extract(0, u), self.extract(1, u)
        if gamma[0] == "0":
            left = self.replace(gamma[1:], left, new)
        else:
            right = self.replace(gamma[1:], right, new)
        return self.cons(self.label("", u), left, right)

    def shift_head(self, u: FockVector) -> FockVector:
        h = self.head(u)
        return self.replace(h, u, self.shift(self.label(h, u)))

    # grammar
    def sel(self, f: FockVector) -> FockVector:
        try:
            return self._sel[f]
        except KeyError:
            raise DomainError("filler is not a selector") from None

    def lic(self, f: FockVector) -> FockVector:
        try:
            return self._lic[f]
        except KeyError:
            raise DomainError("filler is not a licensor") from None

    def in_dom_merge(self, u1: FockVector, u2: FockVector) -> bool:
        f1 = self.feat(u1)
        return f1 in self._sel and self._sel[f1] == self.feat(u2)

    def in_dom_move(self, u: FockVector) -> bool:
        f = self.feat(u)
        if f not in self._lic:
            return False
        try:
            return len(self.max_set(self.leaves(self._lic[f], u), u)) == 1
        except Undefined:
            return False

    def merge(self, u1: FockVector, u2: FockVector) -> FockVector:
        if not self.in_dom_merge(u1, u2):
            raise DomainError("vectors are not in the domain of merge")
        if not self.first(u1).is_zero():
            return self.cons(LT, self.shift_head(u1), self.shift_head(u2))
        return self.cons(GT, self.shift_head(u2), self.shift_head(u1))

    def move(self, u: FockVector) -> FockVector:
        if not self.in_dom_move(u):
            raise DomainError("vector is not in the domain of move")
        (gamma,) = self.max_set(self.leaves(self.lic(self.feat(u)), u), u)
        moved = self.extract_path(gamma, u)
        rest = self.replace(gamma, u, ZERO)
        return self.cons(GT, self.shift_head(moved), self.shift_head(rest))

    # stacks
    @staticmethod
    def stack_size(v: FockVector) -> int:
        sizes = [rs[-1].index for _, rs in v.terms if rs and rs[-1].kind is RoleKind.STACK]
        return max(sizes, default=0)

    def merge_star(self, v: FockVector, m: int | None = None) -> FockVector:
        m = self.stack_size(v) if m is None else m
        if m < 2:
            raise DomainError("merge* needs two trees on the stack")
        out = ZERO
        for k in range(1, m - 1):
            out = out + v.unbind(p(k)).tensor(p(k))
        return out + self.merge(v.unbind(p(m - 1)), v.unbind(p(m))).tensor(p(m - 1))

    def move_star(self, v: FockVector, m: int | None = None) -> FockVector:
        m = self.stack_size(v) if m is None else m
        if m < 1:
            raise DomainError("move* on an empty stack")
        out = ZERO
        for k in range(1, m):
            out = out + v.unbind(p(k)).tensor(p(k))
        return out + self.move(v.unbind(p(m))).tensor(p(m))

    @staticmethod
    def transpose(i: int, j: int, v: FockVector) -> FockVector:
        if i == j:
            return v
        pi, pj = p(i), p(j)
        return v.project_out([pi, pj]) + v.unbind(pi).tensor(pj) + v.unbind(pj).tensor(pi)

    def step(self, v: FockVector, step) -> FockVector:
        """Realize one recorded processor step: transpositions, then merge* or move*."""
        m = self.stack_size(v)
        for i, j in step.transpositions:
            v = self.transpose(i, j, v)
        if step.op.value == "merge":
            return self.merge_star(v, m)
        return self.move_star(v, m)


__all__ = [
    "FockMachine",
    "FockVector",
    "ZERO",
    "address_of",
    "filler",
    "represent_state",
    "represent_string",
    "represent_tree",
]
