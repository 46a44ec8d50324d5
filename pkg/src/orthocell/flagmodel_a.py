"""Type A model: full flags in P^{n-1} and the families F(q_1, ..., q_d).

Vertices p_i are the standard basis vectors e_i; B is the upper-triangular
Borel, T the diagonal torus, U^- the lower unitriangular group.  A flag is
stored as the canonical column-echelon form of any basis adapted to it.  The
root e_a - e_b is identified with the transposition (a b).

Permutations are 1-based tuples: ``w[i - 1] == w(i)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import ratmat
from .cells import (
    OrbitLabel,
    OrbitType,
    Orthocell,
    OrthogonalSet,
    Verdict,
    fixed_points,
    make_orthocell,
    schubert_subset,
)
from .rootsys import Root, RootSystem, build_root_system
from .weyl import PreconditionError, WeylElement, act, identity
from . import weyl

Perm = Tuple[int, ...]
Pair = Tuple[int, int]

BOUND = 100


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class LinePoint:
    """Homogeneous coordinates ``(s : t)`` for ``s*p_a + t*p_b``, normalized."""

    s: Fraction
    t: Fraction

    def __init__(self, s, t):
        s, t = Fraction(s), Fraction(t)
        if s == 0 and t == 0:
            raise PreconditionError("(0:0) is not a point")
        if s != 0:
            s, t = Fraction(1), t / s
        else:
            t = Fraction(1)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    @property
    def kind(self) -> OrbitType:
        if self.t == 0:
            return OrbitType.ZERO
        if self.s == 0:
            return OrbitType.INFTY
        return OrbitType.GENERIC

    def __str__(self):
        return f"({self.s}:{self.t})"


ZERO = LinePoint(1, 0)
INFTY = LinePoint(0, 1)


@dataclass(frozen=True)
class Flag:
    """A full flag, held as its canonical basis matrix."""

    basis: ratmat.Matrix

    @classmethod
    def from_matrix(cls, m) -> "Flag":
        m = ratmat.mat(m) if not isinstance(m, tuple) else m
        if ratmat.rank(m) != len(m):
            raise PreconditionError("flag basis is singular")
        return cls(ratmat.canonical_columns(m))

    @property
    def n(self) -> int:
        return len(self.basis)

    def __str__(self):
        return ratmat.format_matrix(self.basis)


def torus_element(entries: Sequence) -> Tuple[Fraction, ...]:
    t = tuple(Fraction(x) for x in entries)
    if any(x == 0 for x in t):
        raise PreconditionError("torus element has a zero diagonal entry")
    return t


# ---------------------------------------------------------------------------
# permutations and the identification with the Weyl group of A_{n-1}


def check_perm(n: int, w: Sequence[int]) -> Perm:
    w = tuple(int(x) for x in w)
    if sorted(w) != list(range(1, n + 1)):
        raise PreconditionError(f"{list(w)} is not a permutation of 1..{n}")
    return w


def perm_compose(u: Perm, v: Perm) -> Perm:
    return tuple(u[v[i] - 1] for i in range(len(v)))


def perm_inverse(u: Perm) -> Perm:
    inv = [0] * len(u)
    for i, x in enumerate(u):
        inv[x - 1] = i + 1
    return tuple(inv)


def transposition(n: int, a: int, b: int) -> Perm:
    w = list(range(1, n + 1))
    w[a - 1], w[b - 1] = b, a
    return tuple(w)


def check_pairs(n: int, pairs: Sequence[Sequence[int]]) -> List[Pair]:
    out = []
    used = set()
    for pr in pairs:
        a, b = (int(x) for x in pr)
        if not 1 <= a < b <= n:
            raise PreconditionError(f"pair {(a, b)} must satisfy 1 <= a < b <= {n}")
        if a in used or b in used:
            raise PreconditionError(f"pair {(a, b)} overlaps another pair")
        used.update((a, b))
        out.append((a, b))
    return out


def root_of_pair(n: int, i: int, j: int) -> Root:
    """Simple-root coordinates of ``e_i - e_j`` in A_{n-1}."""
    lo, hi = min(i, j), max(i, j)
    sign = 1 if i < j else -1
    return tuple(sign if lo - 1 <= k < hi - 1 else 0 for k in range(n - 1))


def pair_of_root(root: Root) -> Pair:
    """``(i, j)`` with ``root == e_i - e_j``."""
    nz = [k for k, c in enumerate(root) if c]
    lo, hi = nz[0] + 1, nz[-1] + 2
    return (lo, hi) if root[nz[0]] > 0 else (hi, lo)


def type_a(n: int) -> RootSystem:
    if n < 2:
        raise PreconditionError("type A model needs n >= 2")
    return _type_a_cache(n)


_RS: Dict[int, RootSystem] = {}


def _type_a_cache(n: int) -> RootSystem:
    if n not in _RS:
        _RS[n] = build_root_system(f"A{n - 1}")
    return _RS[n]


def weyl_of_perm(rs: RootSystem, w: Perm) -> WeylElement:
    n = rs.rank + 1
    images = []
    for root in rs.all_roots:
        i, j = pair_of_root(root)
        images.append(rs.index(root_of_pair(n, w[i - 1], w[j - 1])))
    return WeylElement(tuple(images), rs)


def perm_of_weyl(u: WeylElement) -> Perm:
    n = u.rs.rank + 1
    out = []
    for i in range(1, n + 1):
        j = 2 if i == 1 else 1
        out.append(pair_of_root(act(u, root_of_pair(n, i, j)))[0])
    return tuple(out)


def cell_for(n: int, w: Sequence[int], pairs: Sequence[Pair]) -> Orthocell:
    """The orthocell ``w <(a_k b_k)>`` of A_{n-1}."""
    rs = type_a(n)
    w = check_perm(n, w)
    pairs = check_pairs(n, pairs)
    omega = OrthogonalSet.of(rs, [root_of_pair(n, a, b) for a, b in pairs])
    return make_orthocell(weyl_of_perm(rs, w), omega)


# ---------------------------------------------------------------------------
# matrices


def permutation_matrix(w: Perm) -> ratmat.Matrix:
    n = len(w)
    return tuple(
        tuple(Fraction(int(w[j] == i + 1)) for j in range(n)) for i in range(n)
    )


def signed_reflection_matrix(n: int, a: int, b: int) -> ratmat.Matrix:
    """Lift of ``(a b)`` to SL(n): the block ``[[0, -1], [1, 0]]`` on rows/columns a, b."""
    m = [list(r) for r in ratmat.eye(n)]
    m[a - 1][a - 1] = m[b - 1][b - 1] = Fraction(0)
    m[a - 1][b - 1] = Fraction(-1)
    m[b - 1][a - 1] = Fraction(1)
    return ratmat.mat(m)


def block_element(n: int, a: int, b: int, q: LinePoint) -> ratmat.Matrix:
    """An element of L_{e_a - e_b} whose class in L/B_alpha is the point ``q``."""
    m = [list(r) for r in ratmat.eye(n)]
    m[a - 1][a - 1], m[b - 1][a - 1] = q.s, q.t
    if q.s != 0:
        m[a - 1][b - 1], m[b - 1][b - 1] = Fraction(0), 1 / q.s
    else:
        m[a - 1][b - 1], m[b - 1][b - 1] = Fraction(-1) / q.t, Fraction(0)
    return ratmat.mat(m)


def lower_root_element(n: int, a: int, b: int, z) -> ratmat.Matrix:
    """``u_{-alpha}(z)`` in U^- for ``alpha = e_a - e_b``."""
    m = [list(r) for r in ratmat.eye(n)]
    m[b - 1][a - 1] = Fraction(z)
    return ratmat.mat(m)


def _points(pairs, points) -> List[LinePoint]:
    pts = [p if isinstance(p, LinePoint) else LinePoint(*p) for p in points]
    if len(pts) != len(pairs):
        raise PreconditionError(f"{len(pairs)} pairs but {len(pts)} points")
    return pts


def flag_F(n: int, w: Sequence[int], pairs: Sequence[Pair], points: Sequence) -> Flag:
    """The flag ``w g_1 ... g_d B`` with ``g_k`` in the SL(2) block of pair k
    sending the base point to ``q_k``."""
    w = check_perm(n, w)
    pairs = check_pairs(n, pairs)
    pts = _points(pairs, points)
    return Flag.from_matrix(ratmat.matmul(permutation_matrix(w), block_product(n, pairs, pts)))


def block_product(n: int, pairs: Sequence[Pair], points: Sequence[LinePoint]) -> ratmat.Matrix:
    """``g_1 ... g_d``; the blocks are disjoint, so the product is block insertion."""
    m = [list(r) for r in ratmat.eye(n)]
    for (a, b), q in zip(pairs, points):
        g = block_element(n, a, b, q)
        for i in (a - 1, b - 1):
            for j in (a - 1, b - 1):
                m[i][j] = g[i][j]
    return ratmat.mat(m)


def flag_by_replacement(n: int, w: Sequence[int], pairs: Sequence[Pair], points: Sequence):
    """The subspaces ``F_i`` spelled out vertex by vertex: ``<p_1, ..., p_i>`` with
    ``p_{a_k}`` replaced by ``q_k`` while ``a_k <= i < b_k``, then relabelled by ``w``.

    Returns a list of spanning sets (lists of vectors), one per ``i = 1..n-1``.
    """
    w = check_perm(n, w)
    pairs = check_pairs(n, pairs)
    pts = _points(pairs, points)

    def vertex(i):
        return [Fraction(int(w[i - 1] == r + 1)) for r in range(n)]

    spaces = []
    for i in range(1, n):
        span = []
        for j in range(1, i + 1):
            vec = vertex(j)
            for (a, b), q in zip(pairs, pts):
                if j == a and a <= i < b:
                    pa, pb = vertex(a), vertex(b)
                    vec = [q.s * x + q.t * y for x, y in zip(pa, pb)]
            span.append(vec)
        spaces.append(span)
    return spaces


def flag_subspaces(f: Flag) -> List[List[List[Fraction]]]:
    cols = ratmat.columns(f.basis)
    return [[list(c) for c in cols[:i]] for i in range(1, f.n)]


def same_subspaces(spaces1, spaces2) -> bool:
    for s1, s2 in zip(spaces1, spaces2):
        r1, r2 = ratmat.rank(s1), ratmat.rank(s2)
        if r1 != r2 or ratmat.rank(list(s1) + list(s2)) != r1:
            return False
    return len(spaces1) == len(spaces2)


def act_torus(t: Sequence, f: Flag) -> Flag:
    t = torus_element(t)
    if len(t) != f.n:
        raise PreconditionError("torus element has the wrong size")
    return Flag.from_matrix(ratmat.matmul(ratmat.diag(t), f.basis))


def act_matrix(g: ratmat.Matrix, f: Flag) -> Flag:
    return Flag.from_matrix(ratmat.matmul(g, f.basis))


def transform_points(t: Sequence, w: Sequence[int], pairs: Sequence[Pair], points) -> List[LinePoint]:
    """Image of the parameters under ``t``: ``(t_{w(a)} s : t_{w(b)} t)``."""
    t = torus_element(t)
    out = []
    for (a, b), q in zip(pairs, _points(pairs, points)):
        out.append(LinePoint(t[w[a - 1] - 1] * q.s, t[w[b - 1] - 1] * q.t))
    return out


# ---------------------------------------------------------------------------
# Bruhat cells


def rank_array(f: Flag) -> List[List[int]]:
    """``r[i][j] = dim(F_j ∩ E_i)`` for ``0 <= i, j <= n``, E the coordinate flag."""
    n = f.n
    cols = ratmat.columns(f.basis)
    r = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(1, n + 1):
        for i in range(n + 1):
            lower = [c[i:] for c in cols[:j]]
            r[i][j] = j - (ratmat.rank(lower) if i < n else 0)
    return r


def bruhat_cell(f: Flag) -> Perm:
    """The permutation ``pi`` with ``f`` in the Schubert cell ``B pi B / B``."""
    r = rank_array(f)
    n = f.n
    pi = [0] * n
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if r[i][j] - r[i - 1][j] - r[i][j - 1] + r[i - 1][j - 1] == 1:
                pi[j - 1] = i
    return check_perm(n, pi)


def maximal_cover_set(points: Sequence) -> List[int]:
    """1-based ``k`` with ``q_k != (1:0)``: the largest chart index set containing the point."""
    return [k + 1 for k, q in enumerate(points) if LinePoint(q.s, q.t).kind is not OrbitType.ZERO]


def orbit_label_of(points: Sequence) -> OrbitLabel:
    return OrbitLabel(tuple(LinePoint(q.s, q.t).kind for q in points))


def connecting_torus(n: int, w: Sequence[int], pairs: Sequence[Pair], p1, p2) -> Optional[Tuple[Fraction, ...]]:
    """A torus element moving parameter tuple ``p1`` to ``p2``, or None when the
    orbit labels differ."""
    p1, p2 = _points(pairs, p1), _points(pairs, p2)
    if orbit_label_of(p1) != orbit_label_of(p2):
        return None
    t = [Fraction(1)] * n
    for (a, b), q1, q2 in zip(pairs, p1, p2):
        # both normalized to (1 : z); scale the p_{w(b)} coordinate
        if q1.kind is OrbitType.GENERIC:
            t[w[b - 1] - 1] = q2.t / q1.t
    return tuple(t)


def _schubert_perm(cell: Orthocell, pairs: Sequence[Pair], ks: Sequence[int]) -> Perm:
    """``schubert_subset`` with 1-based pair positions translated to positions in omega."""
    n = cell.rs.rank + 1
    order = [cell.omega.roots.index(root_of_pair(n, a, b)) + 1 for a, b in pairs]
    return perm_of_weyl(schubert_subset(cell, [order[k - 1] for k in ks]))


# ---------------------------------------------------------------------------
# sampling and verification


def rng_for(seed: int, stream: str) -> random.Random:
    """Independent deterministic generator for one named stream of a seed."""
    return random.Random(f"{seed}/{stream}")


def random_rational(rng: random.Random, nonzero: bool = True) -> Fraction:
    while True:
        x = Fraction(rng.randint(-BOUND, BOUND), rng.randint(1, BOUND))
        if x or not nonzero:
            return x


def random_generic_point(rng: random.Random) -> LinePoint:
    return LinePoint(random_rational(rng), random_rational(rng))


def random_point(rng: random.Random) -> LinePoint:
    """A vertex or a generic point, each of the three kinds equally likely."""
    kind = rng.randrange(3)
    if kind == 0:
        return ZERO
    if kind == 1:
        return INFTY
    return random_generic_point(rng)


def random_torus(rng: random.Random, n: int) -> Tuple[Fraction, ...]:
    return tuple(random_rational(rng) for _ in range(n))


def regular_torus(n: int) -> Tuple[Fraction, ...]:
    """Diagonal entries 2, 3, 5, 7, ...: every ratio t_a / t_b differs from 1."""
    primes = []
    k = 2
    while len(primes) < n:
        if all(k % p for p in primes):
            primes.append(k)
        k += 1
    return tuple(Fraction(p) for p in primes)


def _pts_json(pts) -> List[str]:
    return [str(q) for q in pts]


def verify_injectivity(n: int, w, pairs, samples: int = 100, seed: int = 0) -> Verdict:
    """Distinct parameter tuples give distinct flags; different maximal chart
    index sets give different Bruhat cells (relative to the translated Borel)."""
    if samples < 1:
        raise PreconditionError("samples must be >= 1")
    w = check_perm(n, w)
    pairs = check_pairs(n, pairs)
    if not pairs:
        # E(C) is a single point
        return Verdict(True, info={"samples": 0, "cell_split_pairs": 0})
    rng = rng_for(seed, f"injectivity/{n}/{w}/{pairs}")
    winv = permutation_matrix(perm_inverse(w))
    split_checked = 0
    for _ in range(samples):
        p = [random_point(rng) for _ in pairs]
        q = [random_point(rng) for _ in pairs]
        while q == p:
            q = [random_point(rng) for _ in pairs]
        fp, fq = flag_F(n, w, pairs, p), flag_F(n, w, pairs, q)
        if fp == fq:
            return Verdict(False, {"p": _pts_json(p), "q": _pts_json(q), "reason": "collision"})
        kp, kq = maximal_cover_set(p), maximal_cover_set(q)
        if kp != kq:
            split_checked += 1
            cp = bruhat_cell(act_matrix(winv, fp))
            cq = bruhat_cell(act_matrix(winv, fq))
            if cp == cq:
                return Verdict(False, {"p": _pts_json(p), "q": _pts_json(q),
                                       "reason": "different K in the same Schubert cell"})
    return Verdict(True, info={"samples": samples, "cell_split_pairs": split_checked})


def verify_t_stability(n: int, w, pairs, samples: int = 100, seed: int = 0) -> Verdict:
    """``t . F(q) == F(t . q)`` exactly, with ``t . q_k = (t_{w(a)} s : t_{w(b)} t)``."""
    w = check_perm(n, w)
    pairs = check_pairs(n, pairs)
    rng = rng_for(seed, f"torus/{n}/{w}/{pairs}")
    for _ in range(samples):
        pts = [random_point(rng) for _ in pairs]
        t = random_torus(rng, n)
        lhs = act_torus(t, flag_F(n, w, pairs, pts))
        moved = transform_points(t, w, pairs, pts)
        if lhs != flag_F(n, w, pairs, moved):
            return Verdict(False, {"t": [str(x) for x in t], "points": _pts_json(pts)})
        if orbit_label_of(moved) != orbit_label_of(pts):
            return Verdict(False, {"t": [str(x) for x in t], "points": _pts_json(pts),
                                   "reason": "torus changed the orbit label"})
    return Verdict(True, info={"samples": samples})


def vertex_generic_patterns(d: int):
    return list(itertools.product((OrbitType.ZERO, OrbitType.INFTY, OrbitType.GENERIC), repeat=d))


def _realize(pattern, rng) -> List[LinePoint]:
    return [ZERO if k is OrbitType.ZERO else INFTY if k is OrbitType.INFTY
            else random_generic_point(rng) for k in pattern]


def verify_bruhat(n: int, w, pairs, seed: int = 0, draws: int = 3) -> Verdict:
    """Over all ``3**d`` vertex/generic patterns the flag lies in the Schubert cell
    of ``prod_{k in K} s_k`` (after undoing ``w``), K the maximal chart index set.

    For ``w = id`` this is literally ``bruhat_cell(F) == schubert_subset(cell, K)``.
    """
    w = check_perm(n, w)
    pairs = check_pairs(n, pairs)
    base = cell_for(n, tuple(range(1, n + 1)), pairs)
    winv = permutation_matrix(perm_inverse(w))
    rng = rng_for(seed, f"bruhat/{n}/{w}/{pairs}")
    checked = 0
    for pattern in vertex_generic_patterns(len(pairs)):
        for _ in range(draws if OrbitType.GENERIC in pattern else 1):
            pts = _realize(pattern, rng)
            f = flag_F(n, w, pairs, pts)
            got = bruhat_cell(act_matrix(winv, f))
            want = _schubert_perm(base, pairs, maximal_cover_set(pts))
            checked += 1
            if got != want:
                return Verdict(False, {"points": _pts_json(pts), "cell": list(got),
                                       "expected": list(want)})
    return Verdict(True, info={"patterns": 3 ** len(pairs), "checked": checked})


def verify_fixed_points(n: int, w, pairs, seed: int = 0) -> Verdict:
    """Exactly the ``2**d`` all-vertex flags are torus-fixed, and their permutations
    are the members of the orthocell."""
    w = check_perm(n, w)
    pairs = check_pairs(n, pairs)
    rng = rng_for(seed, f"fixed/{n}/{w}/{pairs}")
    tori = [regular_torus(n)] + [random_torus(rng, n) for _ in range(2)]
    fixed = set()
    for pattern in vertex_generic_patterns(len(pairs)):
        pts = _realize(pattern, rng)
        f = flag_F(n, w, pairs, pts)
        if all(act_torus(t, f) == f for t in tori):
            if OrbitType.GENERIC in pattern:
                return Verdict(False, {"points": _pts_json(pts), "reason": "generic point fixed"})
            fixed.add(bruhat_cell(f))
    expected = {perm_of_weyl(x) for x in fixed_points(cell_for(n, w, pairs))}
    if fixed != expected:
        return Verdict(False, {"found": sorted(map(list, fixed)), "expected": sorted(map(list, expected))})
    return Verdict(True, info={"fixed_points": len(fixed)})


def verify_curves(n: int, w, pairs, seed: int = 0) -> Verdict:
    """Moving one parameter with the others at vertices traces a torus-stable
    curve through two fixed points differing by the reflection of that pair."""
    w = check_perm(n, w)
    pairs = check_pairs(n, pairs)
    rng = rng_for(seed, f"curves/{n}/{w}/{pairs}")
    d = len(pairs)
    reg = regular_torus(n)
    count = 0
    for k in range(d):
        others = [i for i in range(d) if i != k]
        for verts in itertools.product((ZERO, INFTY), repeat=d - 1):
            def with_k(q):
                pts = [None] * d
                for i, v in zip(others, verts):
                    pts[i] = v
                pts[k] = q
                return pts
            f0, f1 = flag_F(n, w, pairs, with_k(ZERO)), flag_F(n, w, pairs, with_k(INFTY))
            p0, p1 = bruhat_cell(f0), bruhat_cell(f1)
            a, b = pairs[k]
            if perm_compose(p0, transposition(n, a, b)) != p1:
                return Verdict(False, {"pair": [a, b], "ends": [list(p0), list(p1)]})
            for ff in (f0, f1):
                if act_torus(reg, ff) != ff:
                    return Verdict(False, {"pair": [a, b], "reason": "endpoint not fixed"})
            g1, g2 = random_generic_point(rng), random_generic_point(rng)
            t = connecting_torus(n, w, pairs, with_k(g1), with_k(g2))
            if act_torus(t, flag_F(n, w, pairs, with_k(g1))) != flag_F(n, w, pairs, with_k(g2)):
                return Verdict(False, {"pair": [a, b], "reason": "interior points not one orbit"})
            count += 1
    return Verdict(True, info={"curves": count})


def verify_orbit_labels(n: int, w, pairs, seed: int = 0) -> Verdict:
    """Same label iff connected by a torus element; ``3**d`` labels occur."""
    w = check_perm(n, w)
    pairs = check_pairs(n, pairs)
    rng = rng_for(seed, f"labels/{n}/{w}/{pairs}")
    labels = set()
    for pattern in vertex_generic_patterns(len(pairs)):
        p1, p2 = _realize(pattern, rng), _realize(pattern, rng)
        labels.add(orbit_label_of(p1))
        t = connecting_torus(n, w, pairs, p1, p2)
        if t is None or act_torus(t, flag_F(n, w, pairs, p1)) != flag_F(n, w, pairs, p2):
            return Verdict(False, {"p": _pts_json(p1), "q": _pts_json(p2)})
    if len(labels) != 3 ** len(pairs):
        return Verdict(False, {"labels": len(labels)})
    return Verdict(True, info={"labels": len(labels)})


def verify_replacement_description(n: int, w, pairs, samples: int = 20, seed: int = 0) -> Verdict:
    """The group construction agrees with the vertex-replacement description of the flag."""
    w = check_perm(n, w)
    pairs = check_pairs(n, pairs)
    rng = rng_for(seed, f"replacement/{n}/{w}/{pairs}")
    for _ in range(samples):
        pts = [random_point(rng) for _ in pairs]
        if not same_subspaces(flag_subspaces(flag_F(n, w, pairs, pts)),
                              flag_by_replacement(n, w, pairs, pts)):
            return Verdict(False, {"points": _pts_json(pts)})
    return Verdict(True, info={"samples": samples})


def verify_representative_independence(n: int, w, pairs, samples: int = 20, seed: int = 0) -> Verdict:
    """Starting from ``w (a_k b_k)`` instead of ``w``, with either the permutation
    matrix or the signed lift, stays inside the family of ``w``."""
    w = check_perm(n, w)
    pairs = check_pairs(n, pairs)
    rng = rng_for(seed, f"indep/{n}/{w}/{pairs}")
    pw = permutation_matrix(w)
    for _ in range(samples):
        pts = [random_point(rng) for _ in pairs]
        for k, (a, b) in enumerate(pairs):
            q = pts[k]
            w2 = perm_compose(w, transposition(n, a, b))
            swapped = list(pts)
            swapped[k] = LinePoint(q.t, q.s)
            if flag_F(n, w2, pairs, pts) != flag_F(n, w, pairs, swapped):
                return Verdict(False, {"points": _pts_json(pts), "pair": [a, b], "lift": "permutation"})
            m = ratmat.matmul(pw, signed_reflection_matrix(n, a, b))
            for (a2, b2), q2 in zip(pairs, pts):
                m = ratmat.matmul(m, block_element(n, a2, b2, q2))
            signed = list(pts)
            signed[k] = LinePoint(-q.t, q.s)
            if Flag.from_matrix(m) != flag_F(n, w, pairs, signed):
                return Verdict(False, {"points": _pts_json(pts), "pair": [a, b], "lift": "signed"})
    return Verdict(True, info={"samples": samples})


def run_model_check(n: int, w=None, pairs=(), samples: int = 100, seed: int = 0) -> Dict:
    """All type A checks for one family; JSON-ready, deterministic in ``seed``."""
    w = check_perm(n, w if w is not None else range(1, n + 1))
    pairs = check_pairs(n, pairs)
    cell = cell_for(n, w, pairs)
    checks = {
        "injectivity": verify_injectivity(n, w, pairs, samples, seed),
        "t_stability": verify_t_stability(n, w, pairs, samples, seed),
        "bruhat": verify_bruhat(n, w, pairs, seed),
        "fixed_points": verify_fixed_points(n, w, pairs, seed),
        "curves": verify_curves(n, w, pairs, seed),
        "orbit_labels": verify_orbit_labels(n, w, pairs, seed),
        "replacement": verify_replacement_description(n, w, pairs, min(samples, 20), seed),
        "representatives": verify_representative_independence(n, w, pairs, min(samples, 20), seed),
    }
    ok = all(v.ok for v in checks.values())
    return {
        "model": "A",
        "n": n,
        "w": list(w),
        "pairs": [list(p) for p in pairs],
        "samples": samples,
        "seed": seed,
        "cell": cell.to_json(),
        "verdict": "Pass" if ok else "Fail",
        "checks": {name: v.to_dict() for name, v in checks.items()},
    }


def disjoint_pair_sets(n: int) -> List[List[Pair]]:
    """Every set of pairwise disjoint pairs in 1..n (including the empty set)."""
    all_pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    out = []

    def extend(start, chosen, used):
        out.append(list(chosen))
        for i in range(start, len(all_pairs)):
            a, b = all_pairs[i]
            if a in used or b in used:
                continue
            chosen.append((a, b))
            extend(i + 1, chosen, used | {a, b})
            chosen.pop()

    extend(0, [], frozenset())
    return out
