"""Orthogonal root sets, orthocells and the combinatorics of their subcells.

An orthocell is a left coset ``w <s_a : a in omega>`` with ``omega`` a set of
positive, pairwise (weakly) orthogonal roots.  The checks in this module
verify, by brute force over the root list, the root-theoretic facts that make
the associated product of projective lines well defined.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from .rootsys import Root, RootSystem, build_root_system
from .weyl import (
    PreconditionError,
    WeylElement,
    check_pairwise_orthogonal,
    compose,
    from_word,
    identity,
    to_word,
)
from . import weyl

DEFAULT_CAP = 1_000_000
_HUGE_FAMILIES = {("E", 7), ("E", 8)}


class ResourceLimitError(RuntimeError):
    pass


class TheoremViolation(RuntimeError):
    """Raised when a computation contradicts a statement that is supposed to be a theorem."""


@dataclass
class Verdict:
    ok: bool
    witness: Optional[Dict[str, Any]] = None
    info: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"verdict": "Pass" if self.ok else "Fail"}
        if self.witness is not None:
            out["witness"] = self.witness
        out.update(self.info)
        return out


# ---------------------------------------------------------------------------
# orthogonal sets and numberings


@dataclass(frozen=True)
class OrthogonalSet:
    roots: Tuple[Root, ...]

    @classmethod
    def of(cls, rs: RootSystem, roots: Sequence[Sequence[int]]) -> "OrthogonalSet":
        roots = [tuple(r) for r in roots]
        for r in roots:
            if r not in rs:
                raise PreconditionError(f"{r} is not a root of {rs}")
            if not rs.is_positive(r):
                raise PreconditionError(f"{r} is not a positive root")
        if len(set(roots)) != len(roots):
            raise PreconditionError("duplicate roots in orthogonal set")
        check_pairwise_orthogonal(rs, roots)
        return cls(tuple(sorted(roots, key=rs.index)))

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def is_nonincreasing(rs: RootSystem, seq: Sequence[Root]) -> bool:
    return not any(
        rs.root_less(seq[k], seq[m]) for k in range(len(seq)) for m in range(k + 1, len(seq))
    )


@dataclass(frozen=True)
class Numbering:
    seq: Tuple[Root, ...]

    @classmethod
    def of(cls, rs: RootSystem, seq: Sequence[Sequence[int]]) -> "Numbering":
        seq = tuple(tuple(r) for r in seq)
        OrthogonalSet.of(rs, seq)
        if not is_nonincreasing(rs, seq):
            raise PreconditionError(f"ordering {seq} is not nonincreasing")
        return cls(seq)

    def __len__(self):
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)


def _requires_explicit_cap(rs: RootSystem) -> bool:
    return any(f in _HUGE_FAMILIES for f in rs.cartan_type.factors)


def resolve_cap(rs: RootSystem, cap: Optional[int]) -> int:
    if cap is None:
        env = os.environ.get("ORTHOCELL_CAP")
        if env:
            return int(env)
        if _requires_explicit_cap(rs):
            raise ResourceLimitError(
                f"enumeration on {rs.cartan_type} needs an explicit cap (--cap or ORTHOCELL_CAP)"
            )
        return DEFAULT_CAP
    return cap


def iter_orthogonal_sets(rs: RootSystem, max_d: int) -> Iterator[OrthogonalSet]:
    """Cliques of the orthogonality graph on positive roots, by ordered DFS."""
    if max_d < 0:
        raise PreconditionError("max_d must be >= 0")
    pos = rs.positive_roots
    n = len(pos)
    adj = [{j for j in range(n) if rs.is_orthogonal(pos[i], pos[j])} for i in range(n)]

    def extend(clique: List[int], candidates: List[int]):
        yield OrthogonalSet(tuple(pos[i] for i in clique))
        if len(clique) == max_d:
            return
        for at, c in enumerate(candidates):
            clique.append(c)
            yield from extend(clique, [j for j in candidates[at + 1:] if j in adj[c]])
            clique.pop()

    yield from extend([], list(range(n)))


def enumerate_orthogonal_sets(
    rs: RootSystem, max_d: int, cap: Optional[int] = None
) -> List[OrthogonalSet]:
    """All orthogonal sets of positive roots of size <= ``max_d``, empty set first.

    Raises ResourceLimitError once more than ``cap`` sets have been produced.
    """
    cap = resolve_cap(rs, cap)
    out = []
    for s in iter_orthogonal_sets(rs, max_d):
        out.append(s)
        if len(out) > cap:
            raise ResourceLimitError(f"more than {cap} orthogonal sets in {rs.cartan_type}")
    return out


def nonincreasing_numbering(rs: RootSystem, omega: OrthogonalSet) -> Numbering:
    """Greedy numbering: repeatedly take a maximal remaining root, smallest index first."""
    remaining = list(omega.roots)
    seq = []
    while remaining:
        for b in remaining:
            if not any(rs.root_less(b, c) for c in remaining):
                break
        else:
            raise TheoremViolation(f"no maximal element among {remaining}")
        seq.append(b)
        remaining.remove(b)
    return Numbering(tuple(seq))


def all_nonincreasing_numberings(rs: RootSystem, omega: OrthogonalSet) -> List[Numbering]:
    return [
        Numbering(p) for p in itertools.permutations(omega.roots) if is_nonincreasing(rs, p)
    ]


def bad_orderings(rs: RootSystem, omega: OrthogonalSet) -> List[Tuple[Root, ...]]:
    """Orderings of ``omega`` that violate the nonincreasing condition."""
    return [p for p in itertools.permutations(omega.roots) if not is_nonincreasing(rs, p)]


# ---------------------------------------------------------------------------
# lemma checks


def combination_roots(rs: RootSystem, seq: Sequence[Root]) -> List[Tuple[Root, Tuple[int, ...]]]:
    """Roots ``sum_k i_k seq[k]`` with integer ``i_k`` and ``i_1 > 0``, with their coefficients."""
    if not seq:
        return []
    norms = [rs.inner(a, a) for a in seq]
    out = []
    for beta in rs.all_roots:
        coeffs = []
        for a, nrm in zip(seq, norms):
            q, r = divmod(rs.inner(beta, a), nrm)
            if r:
                break
            coeffs.append(q)
        else:
            if coeffs[0] <= 0:
                continue
            combo = tuple(sum(c * a[i] for c, a in zip(coeffs, seq)) for i in range(rs.rank))
            if combo == beta:
                out.append((beta, tuple(coeffs)))
    return out


def verify_dichotomy(rs: RootSystem, seq: Sequence[Root]) -> Verdict:
    """Long first root: it is the only combination root.  Short first root: every
    other combination root is ``seq[0] +- seq[k]``."""
    combos = combination_roots(rs, seq)
    first_long = rs.is_long(seq[0])
    unit = (1,) + (0,) * (len(seq) - 1)
    for beta, c in combos:
        if c == unit:
            continue
        if first_long:
            return Verdict(False, {"root": list(beta), "coeffs": list(c)}, {"first_long": True})
        rest = c[1:]
        if not (c[0] == 1 and sorted(map(abs, rest)) == [0] * (len(rest) - 1) + [1]):
            return Verdict(False, {"root": list(beta), "coeffs": list(c)}, {"first_long": False})
    return Verdict(True, info={"first_long": first_long})


def verify_positivity_lemma(rs: RootSystem, seq: Sequence[Root]) -> Verdict:
    """Every combination root with positive leading coefficient must be a positive root.

    ``seq`` need not be nonincreasing; for orderings that are not, a Fail with a
    negative witness is the expected outcome in non-simply-laced types.
    """
    seq = tuple(tuple(a) for a in seq)
    OrthogonalSet.of(rs, seq)
    combos = combination_roots(rs, seq)
    dich = verify_dichotomy(rs, seq)
    info = {
        "combination_roots": [[list(b), list(c)] for b, c in combos],
        "first_long": dich.info["first_long"],
        "dichotomy": "Pass" if dich.ok else "Fail",
    }
    for beta, c in combos:
        if not rs.is_positive(beta):
            return Verdict(False, {"root": list(beta), "coeffs": list(c)}, info)
    return Verdict(True, None, info)


def _solve_in_span(rs: RootSystem, gamma: Root, b: Root, a: Root) -> Optional[Tuple[int, int]]:
    """Integers ``(i, j)`` with ``gamma = i*b + j*a``, or None."""
    bb, ba, aa = rs.inner(b, b), rs.inner(b, a), rs.inner(a, a)
    det = bb * aa - ba * ba
    if det == 0:
        return None
    gb, ga = rs.inner(gamma, b), rs.inner(gamma, a)
    i_num, j_num = gb * aa - ga * ba, bb * ga - ba * gb
    if i_num % det or j_num % det:
        return None
    i, j = i_num // det, j_num // det
    if tuple(i * x + j * y for x, y in zip(b, a)) != tuple(gamma):
        return None
    return i, j


def verify_commutation_closure(rs: RootSystem, seq: Sequence[Root]) -> Verdict:
    """The index set of roots with positive leading coefficient is closed under
    ``beta -> i*beta + j*(+-alpha_k)``, ``i > 0``, ``j >= 0``, for every ``k >= 2``."""
    seq = tuple(tuple(a) for a in seq)
    combos = dict(combination_roots(rs, seq))
    checked = 0
    for beta in combos:
        for k in range(1, len(seq)):
            for sign in (1, -1):
                alpha = tuple(sign * x for x in seq[k])
                for gamma in rs.all_roots:
                    ij = _solve_in_span(rs, gamma, beta, alpha)
                    if ij is None or ij[0] <= 0 or ij[1] < 0:
                        continue
                    checked += 1
                    c = combos.get(gamma)
                    if c is None or c[0] <= 0:
                        return Verdict(
                            False,
                            {"beta": list(beta), "alpha": list(alpha), "root": list(gamma),
                             "i": ij[0], "j": ij[1]},
                        )
    return Verdict(True, info={"checked": checked})


def rearrangement_path(rs: RootSystem, n1: Sequence[Root], n2: Sequence[Root]) -> List[int]:
    """Adjacent swaps turning ``n1`` into ``n2``; entry ``p`` swaps positions ``p, p+1``.

    Each step moves the next root of ``n2`` to the front of the unsorted tail.
    Every swapped pair is checked to be incomparable.
    """
    seq = [tuple(a) for a in n1]
    target = [tuple(a) for a in n2]
    if sorted(seq) != sorted(target):
        raise PreconditionError("numberings are not of the same set")
    for s in (seq, target):
        if not is_nonincreasing(rs, s):
            raise PreconditionError(f"{s} is not nonincreasing")
    path = []
    for pos, root in enumerate(target):
        k = seq.index(root)
        for m in range(k, pos, -1):
            a, b = seq[m - 1], seq[m]
            if rs.comparable(a, b):
                raise TheoremViolation(f"rearrangement needs to swap comparable roots {a}, {b}")
            seq[m - 1], seq[m] = b, a
            path.append(m - 1)
    assert seq == target
    return path


def apply_swaps(seq: Sequence[Root], path: Sequence[int]) -> List[Root]:
    out = list(seq)
    for p in path:
        out[p], out[p + 1] = out[p + 1], out[p]
    return out


# ---------------------------------------------------------------------------
# orthocells


@lru_cache(maxsize=None)
def _subgroup(rs: RootSystem, omega: Tuple[Root, ...]) -> Tuple[WeylElement, ...]:
    return tuple(weyl.subgroup_elements(rs, omega))


@dataclass(frozen=True)
class Orthocell:
    rep: WeylElement
    omega: OrthogonalSet

    @property
    def rs(self) -> RootSystem:
        return self.rep.rs

    @property
    def d(self) -> int:
        return len(self.omega)

    def members(self) -> List[WeylElement]:
        return [compose(self.rep, g) for g in _subgroup(self.rs, self.omega.roots)]

    def member_perms(self) -> frozenset:
        return frozenset(m.perm for m in self.members())

    def to_json(self) -> Dict[str, Any]:
        return {
            "type": str(self.rs.cartan_type),
            "rep": to_word(self.rep),
            "omega": [list(r) for r in self.omega.roots],
        }

    def __str__(self):
        word = to_word(self.rep) or "e"
        return f"{word} <{', '.join(str(list(r)) for r in self.omega.roots)}>"


def make_orthocell(w: WeylElement, omega) -> Orthocell:
    """The orthocell ``w <s_a : a in omega>`` with its lexicographically least representative."""
    if not isinstance(omega, OrthogonalSet):
        omega = OrthogonalSet.of(w.rs, omega)
    rep = min(compose(w, g) for g in _subgroup(w.rs, omega.roots))
    return Orthocell(rep, omega)


def orthocell_from_json(obj) -> Orthocell:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        rs = build_root_system(obj["type"])
        rep = from_word(rs, obj.get("rep", ""))
        return make_orthocell(rep, OrthogonalSet.of(rs, obj["omega"]))
    except KeyError as exc:
        raise PreconditionError(f"orthocell JSON is missing {exc}") from None


def _product(cell: Orthocell, ks) -> WeylElement:
    """``rep * prod_{k in ks} s_{omega[k]}`` for 0-based positions ``ks``."""
    mask = sum(1 << k for k in ks)
    return compose(cell.rep, _subgroup(cell.rs, cell.omega.roots)[mask])


def fixed_points(cell: Orthocell) -> List[WeylElement]:
    pts = sorted(set(cell.members()))
    if len(pts) != 2 ** cell.d:
        raise TheoremViolation(f"orthocell {cell} has {len(pts)} members, expected {2 ** cell.d}")
    return pts


def schubert_subset(cell: Orthocell, subset) -> WeylElement:
    """``rep * prod_{k in K} s_{alpha_k}``; ``subset`` holds 1-based positions in ``omega``
    or is an OrbitLabel (its non-Zero entries form ``K``)."""
    if isinstance(subset, OrbitLabel):
        ks = [k for k, e in enumerate(subset.entries) if e is not OrbitType.ZERO]
    else:
        ks = [k - 1 for k in subset]
        if any(not 0 <= k < cell.d for k in ks):
            raise PreconditionError(f"subset {sorted(subset)} not within 1..{cell.d}")
    return _product(cell, ks)


def subcells(cell: Orthocell) -> List[Orthocell]:
    """All distinct orthocells ``w' <omega'>`` with ``omega'`` in ``omega`` and ``w'`` in the cell."""
    seen = {}
    members = cell.members()
    for e in range(cell.d + 1):
        for sub in itertools.combinations(cell.omega.roots, e):
            omega_sub = OrthogonalSet(sub)
            for w in members:
                c = make_orthocell(w, omega_sub)
                seen.setdefault((c.rep.perm, sub), c)
    return sorted(seen.values(), key=lambda c: (c.d, [c.rs.index(r) for r in c.omega.roots], c.rep))


# ---------------------------------------------------------------------------
# orbit labels and the orbit poset


class OrbitType(Enum):
    ZERO = "0"
    INFTY = "∞"
    GENERIC = "*"


@dataclass(frozen=True)
class OrbitLabel:
    entries: Tuple[OrbitType, ...]

    @classmethod
    def parse(cls, text: str) -> "OrbitLabel":
        lookup = {"0": OrbitType.ZERO, "∞": OrbitType.INFTY, "i": OrbitType.INFTY,
                  "*": OrbitType.GENERIC, "g": OrbitType.GENERIC}
        return cls(tuple(lookup[ch] for ch in text))

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return "".join(e.value for e in self.entries) or "()"

    def dim(self) -> int:
        return sum(e is OrbitType.GENERIC for e in self.entries)

    def __le__(self, other: "OrbitLabel") -> bool:
        return all(a == b or b is OrbitType.GENERIC for a, b in zip(self.entries, other.entries))

    def __lt__(self, other: "OrbitLabel") -> bool:
        return self <= other and self != other


@dataclass
class OrbitPoset:
    cell: Orthocell
    labels: List[OrbitLabel]
    covers: List[Tuple[OrbitLabel, OrbitLabel]]
    subcell_of: Dict[OrbitLabel, Orthocell]

    def minimal(self) -> List[OrbitLabel]:
        return [x for x in self.labels if not any(y < x for y in self.labels)]

    def maximal(self) -> List[OrbitLabel]:
        return [x for x in self.labels if not any(x < y for y in self.labels)]

    def to_json(self) -> Dict[str, Any]:
        adjacency = {str(x): [] for x in self.labels}
        for lo, hi in self.covers:
            adjacency[str(hi)].append(str(lo))
        return {
            "cell": self.cell.to_json(),
            "nodes": [
                {"label": str(x), "dim": x.dim(), "subcell": self.subcell_of[x].to_json()}
                for x in self.labels
            ],
            "covers": adjacency,
        }

    def to_dot(self) -> str:
        lines = ["digraph orbits {", "  rankdir=BT;"]
        for x in self.labels:
            sub = self.subcell_of[x]
            lines.append(f'  "{x}" [label="{x}\\n{to_word(sub.rep) or "e"}"];')
        for lo, hi in self.covers:
            lines.append(f'  "{lo}" -> "{hi}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def subcell_for_label(cell: Orthocell, label: OrbitLabel) -> Orthocell:
    if len(label) != cell.d:
        raise PreconditionError(f"label {label} has length {len(label)}, cell rank is {cell.d}")
    infty = [k for k, e in enumerate(label.entries) if e is OrbitType.INFTY]
    generic = [cell.omega.roots[k] for k, e in enumerate(label.entries) if e is OrbitType.GENERIC]
    return make_orthocell(_product(cell, infty), OrthogonalSet(tuple(generic)))


def orbit_poset(cell: Orthocell) -> OrbitPoset:
    labels = [
        OrbitLabel(t)
        for t in itertools.product((OrbitType.GENERIC, OrbitType.ZERO, OrbitType.INFTY), repeat=cell.d)
    ]
    labels.sort(key=lambda x: (-x.dim(), str(x)))
    covers = [
        (lo, hi) for hi in labels for lo in labels if lo < hi and lo.dim() == hi.dim() - 1
    ]
    return OrbitPoset(cell, labels, covers, {x: subcell_for_label(cell, x) for x in labels})


def verify_poset_isomorphism(poset: OrbitPoset) -> Verdict:
    """The label map is a bijection onto the subcells and ``L <= M`` iff the
    corresponding subcells are nested."""
    cell = poset.cell
    image = {x: poset.subcell_of[x] for x in poset.labels}
    keys = {(c.rep.perm, c.omega.roots) for c in image.values()}
    expected = {(c.rep.perm, c.omega.roots) for c in subcells(cell)}
    if keys != expected or len(keys) != len(poset.labels):
        return Verdict(False, {"reason": "label map is not a bijection onto subcells"})
    members = {x: image[x].member_perms() for x in poset.labels}
    for x in poset.labels:
        for y in poset.labels:
            if (x <= y) != (members[x] <= members[y]):
                return Verdict(False, {"lower": str(x), "upper": str(y)})
    return Verdict(True, info={"nodes": len(poset.labels), "covers": len(poset.covers)})


def identity_cell(rs: RootSystem, omega) -> Orthocell:
    return make_orthocell(identity(rs), omega)
