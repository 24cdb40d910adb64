"""Concrete representation schemes and dense (Kronecker) export.

Three schemes are provided:

* ``FaithfulScheme``: one orthonormal axis per filler and per role.  Vectors
  stay sparse and exact, and all vector-level operations are available.
* ``ArithmeticScheme``: 4-dimensional fillers, 3-dimensional roles.
* ``FractalScheme``: scalar fillers given by base-12 Goedel codes.

Dense layout for the two compressed schemes
-------------------------------------------
A tree densifies to a matrix of shape ``(string_dim, 3**h)`` where ``h`` is
the number of tree-role factors.  Rows index ``filler (x) string position``
(arithmetic: 4 x 3 = 12 rows; fractal: one row holding the scalar code).
Columns index tree roles with the role nearest the root as the last
(fastest-varying) factor.  A node label is treated as a one-symbol string.
When the parts of a node have different heights the shorter ones are lifted
by prefixing ``r2`` factors on the deep side before the node role is
attached.  The final flat vector is ``M.reshape(-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np

from .binding import R0, R1, R2, Role, RoleKind, p, s
from .errors import DepthExceeded, UnknownFeature
from .fock import FockVector, represent_tree
from .grammar import Lexicon
from .terms import GT, LT, Feature, FeatureString, Indicator, Kind, Tree, height

SQ3 = 1.0 / np.sqrt(3.0)

# filler table order
TABLE_SYMBOLS = ("d", "=d", "v", "=v", "t", "=t", "+CASE", "-case", "+I", "-i", ">", "<")

_ARITH_ROWS = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [SQ3, SQ3, SQ3, SQ3],
        [-SQ3, SQ3, SQ3, SQ3],
        [SQ3, -SQ3, SQ3, SQ3],
        [SQ3, SQ3, -SQ3, SQ3],
        [SQ3, SQ3, SQ3, -SQ3],
        [-SQ3, -SQ3, SQ3, SQ3],
        [SQ3, -SQ3, -SQ3, SQ3],
        [SQ3, SQ3, -SQ3, -SQ3],
    ]
)

TREE_ROLES = np.eye(3)
STRING_ROLES = SQ3 * np.array([[1, 1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]], dtype=float)

GOEDEL_BASE = 12


def symbol(x: Feature | Indicator) -> str:
    return x.value if isinstance(x, Indicator) else str(x)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=float), np.asarray(b, dtype=float))


# ---------------------------------------------------------------- faithful

@dataclass(frozen=True)
class FaithfulScheme:
    fillers: tuple[Hashable, ...]
    string_capacity: int
    stack_capacity: int = 0
    faithful: bool = field(default=True, init=False)
    name: str = field(default="faithful", init=False)

    @classmethod
    def for_lexicon(cls, lex: Lexicon) -> "FaithfulScheme":
        return cls(tuple(lex.features) + (GT, LT), lex.max_length, len(lex.entries))

    @property
    def roles(self) -> tuple[Role, ...]:
        out = [R0, R1, R2] + [s(i) for i in range(1, self.string_capacity + 1)]
        return tuple(out + [p(k) for k in range(1, self.stack_capacity + 1)])

    def filler_vector(self, x: Hashable) -> np.ndarray:
        v = np.zeros(len(self.fillers), dtype=int)
        v[self.fillers.index(x)] = 1
        return v

    def role_vector(self, r: Role) -> np.ndarray:
        v = np.zeros(len(self.roles), dtype=int)
        v[self.roles.index(r)] = 1
        return v

    def dual(self, r: Role):
        """Adjoint linear form of a role, as a callable on role vectors."""
        d = self.role_vector(r)
        return lambda vec: int(d @ vec)

    def represent(self, t: Tree) -> FockVector:
        return represent_tree(t, self.string_capacity)

    def manifest(self) -> str:
        lines = ["# faithful scheme", "fillers:"]
        lines += [f"  {symbol(x)}: e{k + 1}" for k, x in enumerate(self.fillers)]
        lines.append("roles:")
        lines += [f"  {r}: e{k + 1}" for k, r in enumerate(self.roles)]
        return "\n".join(lines) + "\n"


def make_faithful_scheme(lex: Lexicon) -> FaithfulScheme:
    return FaithfulScheme.for_lexicon(lex)


# ---------------------------------------------------------------- compressed

class CompressedScheme:
    """Shared densification logic; subclasses provide the string embedding."""

    faithful = False
    name = "compressed"
    filler_dim = 1
    string_dim = 1
    # features that have no table entry but get a zero filler
    zero_fillers = frozenset({"c"})

    def code_of(self, x: Hashable):
        raise NotImplementedError

    def string_embedding(self, items: Iterable[tuple[Hashable, int, float]]) -> np.ndarray:
        """Embed ``(filler, position, coefficient)`` triples as a column of length string_dim."""
        raise NotImplementedError

    def _is_zero_filler(self, x: Hashable) -> bool:
        if isinstance(x, Feature):
            return x.kind is Kind.PHONETIC or symbol(x) in self.zero_fillers
        return False

    # dense tree matrices -------------------------------------------------
    def _matrix(self, u: FockVector) -> tuple[np.ndarray, int] | None:
        if u.is_zero():
            return None
        last = {rs[-1] for _, rs in u.terms if rs}
        if any(r.kind is RoleKind.STRING for r in last) or not last:
            items = [(f, rs[0].index, float(c)) for (f, rs), c in u.terms.items()]
            return self.string_embedding(items).reshape(-1, 1), 0
        label = u.unbind(R2)
        parts = []
        if not label.is_zero():
            items = [(f, 1, float(c)) for (f, _), c in label.terms.items()]
            parts.append((self.string_embedding(items).reshape(-1, 1), 0, TREE_ROLES[2]))
        for role, vec in ((R0, TREE_ROLES[0]), (R1, TREE_ROLES[1])):
            sub = self._matrix(u.unbind(role))
            if sub is not None:
                parts.append((sub[0], sub[1], vec))
        h = max(ph for _, ph, _ in parts)
        out = None
        for m, ph, rvec in parts:
            for _ in range(h - ph):
                m = np.kron(TREE_ROLES[2][None, :], m)
            m = np.kron(m, rvec[None, :])
            out = m if out is None else out + m
        return out, h + 1

    def densify(self, u: FockVector) -> np.ndarray:
        """Dense vector of a tree representation; see the module docstring."""
        res = self._matrix(u)
        if res is None:
            return np.zeros(self.string_dim)
        return res[0].reshape(-1)

    def dense_depth(self, u: FockVector) -> int:
        res = self._matrix(u)
        return 0 if res is None else res[1]

    def embed(self, v: np.ndarray, d: int, D: int) -> np.ndarray:
        """Append ``r2`` factors after the existing role factors up to depth D."""
        if d > D:
            raise DepthExceeded(f"vector of depth {d} does not fit depth {D}")
        for _ in range(D - d):
            v = np.kron(v, TREE_ROLES[2])
        return v

    def dimension(self, D: int) -> int:
        return self.string_dim * 3**D

    def represent(self, t: Tree) -> np.ndarray:
        return self.densify(represent_tree(t))

    def represent_state(self, w: Sequence[Tree], D: int) -> np.ndarray:
        """Plain superposition of embedded trees (scalar stack role 1)."""
        out = np.zeros(self.dimension(D))
        for t in w:
            u = represent_tree(t)
            out += self.embed(self.densify(u), self.dense_depth(u), D)
        return out


class ArithmeticScheme(CompressedScheme):
    name = "arithmetic"
    filler_dim = 4
    string_capacity = 4
    string_dim = 12

    def __init__(self) -> None:
        self.fillers = {sym: _ARITH_ROWS[k] for k, sym in enumerate(TABLE_SYMBOLS)}

    def code_of(self, x: Hashable) -> np.ndarray:
        if self._is_zero_filler(x):
            return np.zeros(4)
        try:
            return self.fillers[symbol(x)]
        except KeyError:
            raise UnknownFeature(f"no arithmetic filler for {symbol(x)!r}") from None

    def string_embedding(self, items) -> np.ndarray:
        out = np.zeros(self.string_dim)
        for x, k, c in items:
            f = self.code_of(x)
            if not f.any():
                continue
            if k > self.string_capacity:
                raise UnknownFeature(f"string position {k} exceeds the four arithmetic positions")
            out += c * np.kron(f, STRING_ROLES[k - 1])
        return out

    def manifest(self) -> str:
        lines = ["# arithmetic scheme", "fillers:"]
        for sym in TABLE_SYMBOLS:
            lines.append(f"  {sym}: " + " ".join(f"{x:+.6f}" for x in self.fillers[sym]))
        lines.append("tree roles:")
        for name, r in zip(("r0", "r1", "r2"), TREE_ROLES):
            lines.append(f"  {name}: " + " ".join(f"{x:+.6f}" for x in r))
        lines.append("string roles:")
        for k, r in enumerate(STRING_ROLES, 1):
            lines.append(f"  s{k}: " + " ".join(f"{x:+.6f}" for x in r))
        lines.append("zero fillers: " + " ".join(sorted(self.zero_fillers)) + " and all phonetic features")
        return "\n".join(lines) + "\n"


class FractalScheme(CompressedScheme):
    name = "fractal"
    string_dim = 1
    string_capacity = None

    def __init__(self, base: int = GOEDEL_BASE) -> None:
        self.base = base
        self.codes = {sym: k for k, sym in enumerate(TABLE_SYMBOLS)}

    def code_of(self, x: Hashable) -> int:
        if self._is_zero_filler(x):
            return 0
        try:
            return self.codes[symbol(x)]
        except KeyError:
            raise UnknownFeature(f"no Goedel code for {symbol(x)!r}") from None

    def string_embedding(self, items) -> np.ndarray:
        g = sum(c * self.code_of(x) * float(self.base) ** (-k) for x, k, c in items)
        return np.array([g])

    def manifest(self) -> str:
        lines = ["# fractal scheme", f"base: {self.base}", "codes:"]
        lines += [f"  {sym}: {k}" for sym, k in self.codes.items()]
        lines.append("tree roles: r0 r1 r2 = canonical basis of R^3")
        return "\n".join(lines) + "\n"


def encode_string_fractal(x: FeatureString, base: int = GOEDEL_BASE) -> float:
    """Base-N fractional expansion of the syntactic features of a string."""
    scheme = FractalScheme(base)
    items = [(f, k, 1.0) for k, f in enumerate(x.syntactic, 1)]
    return float(scheme.string_embedding(items)[0])


def embedding_depth(states: Iterable[Sequence[Tree]]) -> int:
    """Common role depth for a whole trace: one more than its tallest tree."""
    return 1 + max(height(t) for w in states for t in w)


SCHEMES = {"arithmetic": ArithmeticScheme, "fractal": FractalScheme}


def get_scheme(name: str, lex: Lexicon | None = None):
    if name == "faithful":
        if lex is None:
            raise ValueError("the faithful scheme is built from a lexicon")
        return make_faithful_scheme(lex)
    try:
        return SCHEMES[name]()
    except KeyError:
        raise ValueError(f"unknown scheme {name!r}") from None
