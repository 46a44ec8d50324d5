"""Root systems of composite Cartan type in simple-root coordinates.

Roots are integer tuples over the simple-root basis.  The bilinear form is the
symmetrized Cartan matrix, scaled so that short roots have squared norm 2; all
arithmetic stays in the integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

Root = Tuple[int, ...]

_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}

# number of positive roots per irreducible type
POSITIVE_ROOT_COUNTS = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "E": lambda r: {6: 36, 7: 63, 8: 120}[r],
    "F": lambda r: 24,
    "G": lambda r: 6,
}


@dataclass(frozen=True)
class CartanType:
    """An ordered list of irreducible factors, e.g. ``(("A", 2), ("B", 3))``."""

    factors: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a Cartan type needs at least one factor")
        for family, rank in self.factors:
            check = _VALID_RANKS.get(family)
            if check is None:
                raise ValueError(f"unknown family {family!r}")
            if not isinstance(rank, int) or not check(rank):
                raise ValueError(f"illegal rank {rank!r} for family {family}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        """Parse strings like ``"A3"``, ``"b2"`` or ``"A2xB3"``."""
        parts = [p.strip() for p in text.strip().split("x") if p.strip()]
        if not parts and text.strip():
            raise ValueError(f"cannot parse Cartan type {text!r}")
        factors = []
        for part in parts:
            m = re.fullmatch(r"([A-Ga-g])\s*(\d+)", part)
            if m is None:
                raise ValueError(f"cannot parse Cartan factor {part!r}")
            factors.append((m.group(1).upper(), int(m.group(2))))
        return cls(tuple(factors))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.factors)

    def __str__(self):
        return "x".join(f"{f}{r}" for f, r in self.factors)


def factor_gram(family: str, rank: int) -> List[List[int]]:
    """Gram matrix of the simple roots of one irreducible factor (Bourbaki numbering)."""
    n = rank
    g = [[0] * n for _ in range(n)]

    def link(i, j, value):
        g[i][j] = g[j][i] = value

    if family == "A":
        for i in range(n):
            g[i][i] = 2
        for i in range(n - 1):
            link(i, i + 1, -1)
    elif family == "B":
        for i in range(n - 1):
            g[i][i] = 4
        g[n - 1][n - 1] = 2
        for i in range(n - 1):
            link(i, i + 1, -2)
    elif family == "C":
        for i in range(n - 1):
            g[i][i] = 2
        g[n - 1][n - 1] = 4
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 2, n - 1, -2)
    elif family == "D":
        for i in range(n):
            g[i][i] = 2
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 3, n - 1, -1)
    elif family == "E":
        for i in range(n):
            g[i][i] = 2
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            link(i, j, -1)
    elif family == "F":
        g[0][0] = g[1][1] = 4
        g[2][2] = g[3][3] = 2
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif family == "G":
        g[0][0] = 2
        g[1][1] = 6
        link(0, 1, -3)
    else:
        raise ValueError(f"unknown family {family!r}")
    return g


def _height(root: Root) -> int:
    return sum(root)


class RootSystem:
    """The full root list of a (possibly reducible) root system.

    ``all_roots`` lists the positive roots first, grouped by factor and sorted
    by height, followed by their negatives in the same order; so the negative
    of root ``i`` has index ``i + npos``.
    """

    def __init__(self, cartan_type: CartanType):
        self.cartan_type = cartan_type
        self.rank = cartan_type.rank
        gram = [[0] * self.rank for _ in range(self.rank)]
        offsets = []
        off = 0
        for family, r in cartan_type.factors:
            block = factor_gram(family, r)
            for i in range(r):
                for j in range(r):
                    gram[off + i][off + j] = block[i][j]
            offsets.append(off)
            off += r
        self.gram: Tuple[Tuple[int, ...], ...] = tuple(tuple(row) for row in gram)
        self._offsets = tuple(offsets)
        self.simple_roots: Tuple[Root, ...] = tuple(
            tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)
        )

        found = _close_under_simple_reflections(self.gram, self.simple_roots)
        positives = [r for r in found if any(c > 0 for c in r)]
        positives.sort(key=lambda r: (self._factor_of_coords(r), _height(r), tuple(-c for c in r)))
        self.positive_roots: Tuple[Root, ...] = tuple(positives)
        self.npos = len(positives)
        self.all_roots: Tuple[Root, ...] = self.positive_roots + tuple(
            tuple(-c for c in r) for r in positives
        )
        if len(self.all_roots) != len(found):
            raise AssertionError("root closure is not symmetric under negation")
        self._index: Dict[Root, int] = {r: i for i, r in enumerate(self.all_roots)}
        self._factor = tuple(self._factor_of_coords(r) for r in self.all_roots)
        self._max_norm = {}
        for i, r in enumerate(self.positive_roots):
            f = self._factor[i]
            self._max_norm[f] = max(self._max_norm.get(f, 0), self.inner(r, r))

    def _factor_of_coords(self, root: Root) -> int:
        nz = [i for i, c in enumerate(root) if c]
        for f, (off, (_, r)) in enumerate(zip(self._offsets, self.cartan_type.factors)):
            if off <= nz[0] < off + r:
                return f
        raise AssertionError("root outside every factor")

    def __repr__(self):
        return f"RootSystem({self.cartan_type})"

    def __len__(self):
        return len(self.all_roots)

    # -- membership ------------------------------------------------------

    def __contains__(self, root) -> bool:
        return tuple(root) in self._index

    def index(self, root: Root) -> int:
        return self._index[tuple(root)]

    def is_positive(self, root: Root) -> bool:
        return self._index.get(tuple(root), self.npos) < self.npos

    def negate(self, root: Root) -> Root:
        return tuple(-c for c in root)

    def factor(self, root: Root) -> int:
        return self._factor[self.index(root)]

    def is_long(self, root: Root) -> bool:
        """True when ``root`` has the maximal norm within its factor (all roots of
        simply-laced factors count as long)."""
        return self.inner(root, root) == self._max_norm[self.factor(root)]

    # -- form and reflections -------------------------------------------

    def inner(self, a: Sequence[int], b: Sequence[int]) -> int:
        g = self.gram
        total = 0
        for i, ai in enumerate(a):
            if ai:
                row = g[i]
                for j, bj in enumerate(b):
                    if bj:
                        total += ai * row[j] * bj
        return total

    def reflect(self, a: Root, b: Root) -> Root:
        """The image of ``b`` under the reflection in ``a``."""
        aa = self.inner(a, a)
        k, rem = divmod(2 * self.inner(a, b), aa)
        if rem:
            raise AssertionError(f"non-integral Cartan number for {a}, {b}")
        image = tuple(bi - k * ai for ai, bi in zip(a, b))
        if image not in self._index:
            raise AssertionError(f"reflection of {b} in {a} left the root system")
        return image

    def root_less(self, a: Root, b: Root) -> bool:
        """``a < b`` iff ``b - a`` is a positive root."""
        diff = tuple(bi - ai for ai, bi in zip(a, b))
        return self.is_positive(diff)

    def comparable(self, a: Root, b: Root) -> bool:
        return self.root_less(a, b) or self.root_less(b, a)

    def is_orthogonal(self, a: Root, b: Root) -> bool:
        """Weak orthogonality: only the form is tested, ``a + b`` may be a root."""
        return self.inner(a, b) == 0


def _close_under_simple_reflections(gram, simple_roots) -> List[Root]:
    rank = len(simple_roots)

    def refl(i, b):
        # <b, alpha_i^vee> from the gram row
        k = 2 * sum(gram[i][j] * bj for j, bj in enumerate(b)) // gram[i][i]
        return b[:i] + (b[i] - k,) + b[i + 1:]

    seen = set(simple_roots)
    frontier = list(simple_roots)
    while frontier:
        nxt = []
        for b in frontier:
            for i in range(rank):
                c = refl(i, b)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(seen)


def build_root_system(cartan_type) -> RootSystem:
    """Build the root system of ``cartan_type`` (a CartanType or a string like "A2xB3")."""
    if isinstance(cartan_type, str):
        cartan_type = CartanType.parse(cartan_type)
    return RootSystem(cartan_type)


def expected_positive_count(cartan_type: CartanType) -> int:
    return sum(POSITIVE_ROOT_COUNTS[f](r) for f, r in cartan_type.factors)


def add(a: Iterable[int], b: Iterable[int]) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def scale(k: int, a: Iterable[int]) -> Root:
    return tuple(k * x for x in a)
