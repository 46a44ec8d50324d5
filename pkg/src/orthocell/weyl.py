"""Weyl group elements as permutations of the root index set.

The group is never enumerated; cosets of subgroups generated by commuting
reflections are handled through their ``2**d`` explicit members.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Sequence, Tuple

from .rootsys import Root, RootSystem


class PreconditionError(ValueError):
    """An operation was called on inputs outside its domain."""


@dataclass(frozen=True, order=True)
class WeylElement:
    perm: Tuple[int, ...]
    rs: RootSystem = field(compare=False, repr=False)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return compose(self, other)

    def __call__(self, root: Root) -> Root:
        return act(self, root)

    @property
    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))

    def __str__(self):
        word = to_word(self)
        return word if word else "e"


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(tuple(range(len(rs))), rs)


def reflection_element(rs: RootSystem, a: Root) -> WeylElement:
    """The reflection ``s_a`` acting on root indices."""
    a = tuple(a)
    if a not in rs:
        raise PreconditionError(f"{a} is not a root of {rs}")
    return WeylElement(tuple(rs.index(rs.reflect(a, b)) for b in rs.all_roots), rs)


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """``s_i`` for the 1-based simple root index ``i``."""
    if not 1 <= i <= rs.rank:
        raise PreconditionError(f"simple reflection index {i} out of range 1..{rs.rank}")
    return reflection_element(rs, rs.simple_roots[i - 1])


def compose(u: WeylElement, v: WeylElement) -> WeylElement:
    """``u * v``: first ``v``, then ``u``."""
    up = u.perm
    return WeylElement(tuple([up[j] for j in v.perm]), u.rs)


def inverse(u: WeylElement) -> WeylElement:
    inv = [0] * len(u.perm)
    for i, j in enumerate(u.perm):
        inv[j] = i
    return WeylElement(tuple(inv), u.rs)


def act(u: WeylElement, a: Root) -> Root:
    rs = u.rs
    return rs.all_roots[u.perm[rs.index(a)]]


def from_word(rs: RootSystem, word: str) -> WeylElement:
    """Parse ``"s1 s3 s2"`` (or ``"1 3 2"``) by left-to-right composition.

    The empty word and ``"e"`` denote the identity.
    """
    tokens = word.replace(",", " ").split()
    if tokens in ([], ["e"], ["id"]):
        return identity(rs)
    w = identity(rs)
    for tok in tokens:
        t = tok.lower()
        if t.startswith("s"):
            t = t[1:]
        if not t.isdigit():
            raise PreconditionError(f"bad token {tok!r} in Weyl word {word!r}")
        w = compose(w, simple_reflection(rs, int(t)))
    return w


def to_word(u: WeylElement) -> str:
    """A word in simple reflections for ``u``, found by peeling right descents."""
    rs = u.rs
    letters: List[int] = []
    w = u
    while not w.is_identity:
        for i, alpha in enumerate(rs.simple_roots):
            if not rs.is_positive(act(w, alpha)):
                letters.append(i + 1)
                w = compose(w, simple_reflection(rs, i + 1))
                break
        else:
            raise AssertionError("non-identity element without a descent")
    return " ".join(f"s{i}" for i in reversed(letters))


def check_pairwise_orthogonal(rs: RootSystem, omega: Sequence[Root]) -> None:
    for a, b in combinations(omega, 2):
        if not rs.is_orthogonal(a, b):
            raise PreconditionError(f"roots {a} and {b} are not orthogonal")


def subgroup_elements(rs: RootSystem, omega: Sequence[Root]) -> List[WeylElement]:
    """All ``2**d`` products of reflections in the pairwise orthogonal ``omega``,
    indexed by the bitmask of the factors used."""
    check_pairwise_orthogonal(rs, omega)
    gens = [reflection_element(rs, a) for a in omega]
    elems = [identity(rs)]
    for g in gens:
        elems = elems + [compose(e, g) for e in elems]
    return elems


def coset_contains(w: WeylElement, omega: Sequence[Root], v: WeylElement) -> bool:
    """Is ``v`` in the left coset ``w <s_a : a in omega>``?"""
    target = compose(inverse(w), v)
    return any(target == g for g in subgroup_elements(w.rs, omega))
