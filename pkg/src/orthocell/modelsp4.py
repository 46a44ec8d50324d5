"""Sp(4) model: isotropic flags (point, line) in P^3 around an isotropic square.

The vertices p_1..p_4 are the standard basis vectors and the form pairs
e_1 with e_3 and e_2 with e_4, so every edge l_ij of the square is isotropic
except the diagonals l_13 and l_24.  Torus weights: e_1, e_2, e_3, e_4 carry
eps1, eps2, -eps1, -eps2; the Borel is the stabilizer of (p_1, l_12).  In
simple-root coordinates of C2, alpha_1 = eps1 - eps2 (short) and
alpha_2 = 2 eps2 (long).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import ratmat
from .cells import (
    Verdict,
    enumerate_orthogonal_sets,
    fixed_points,
    identity_cell,
    nonincreasing_numbering,
)
from .flagmodel_a import INFTY, ZERO, LinePoint, random_generic_point, rng_for
from .rootsys import Root, RootSystem, build_root_system
from .weyl import PreconditionError, WeylElement, act, compose, simple_reflection

Vector = Tuple[Fraction, ...]

FORM = ratmat.mat([
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [-1, 0, 0, 0],
    [0, -1, 0, 0],
])

# vertex index (1-based) of each weight +-eps_i
_VERTEX_OF_WEIGHT = {(1, 0): 1, (0, 1): 2, (-1, 0): 3, (0, -1): 4}

REGULAR_TORUS = tuple(Fraction(x) for x in (2, 3, 6, 4))  # t1*t3 == t2*t4, all distinct


class NotIsotropicError(PreconditionError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def omega(x: Sequence, y: Sequence) -> Fraction:
    return sum(
        (Fraction(x[i]) * FORM[i][j] * Fraction(y[j]) for i in range(4) for j in range(4) if FORM[i][j]),
        Fraction(0),
    )


def e(i: int) -> Vector:
    return tuple(Fraction(int(k == i - 1)) for k in range(4))


def _comb(q: LinePoint, u: Vector, v: Vector) -> Vector:
    return tuple(q.s * a + q.t * b for a, b in zip(u, v))


@dataclass(frozen=True)
class IsotropicFlag:
    """A point on an isotropic line, held as the canonical 4x2 basis ``[point | other]``."""

    basis: ratmat.Matrix

    @classmethod
    def through(cls, point: Sequence, other: Sequence) -> "IsotropicFlag":
        m = ratmat.from_columns([point, other])
        if ratmat.rank(m) != 2:
            raise PreconditionError("point and second vector do not span a line")
        w = omega(point, other)
        if w != 0:
            raise NotIsotropicError(
                "line is not isotropic",
                {"point": [str(x) for x in point], "other": [str(x) for x in other], "omega": str(w)},
            )
        return cls(ratmat.canonical_columns(m))

    @property
    def point(self) -> Vector:
        return ratmat.columns(self.basis)[0]

    @property
    def line(self) -> ratmat.Matrix:
        return self.basis

    def is_isotropic(self) -> bool:
        a, b = ratmat.columns(self.basis)
        return omega(a, b) == 0

    def meets(self, u: Sequence, v: Sequence) -> bool:
        """Does the line meet the line spanned by ``u`` and ``v``?"""
        a, b = ratmat.columns(self.basis)
        return ratmat.rank([a, b, tuple(u), tuple(v)]) <= 3

    def spans(self, u: Sequence, v: Sequence) -> bool:
        """Is the line equal to the span of ``u`` and ``v``?"""
        a, b = ratmat.columns(self.basis)
        return ratmat.rank([a, b, tuple(u), tuple(v)]) == 2

    def point_on(self, u: Sequence, v: Sequence) -> bool:
        return ratmat.rank([self.point, tuple(u), tuple(v)]) <= 2

    def to_json(self) -> Dict:
        a, b = ratmat.columns(self.basis)
        return {"point": [str(x) for x in a], "line": ratmat.to_json(self.basis)}

    def vertex_label(self) -> Optional[str]:
        """``"p1,l12"`` for coordinate flags, None otherwise."""
        a, b = ratmat.columns(self.basis)
        if sum(1 for x in a if x) != 1:
            return None
        i = next(k for k, x in enumerate(a) if x) + 1
        rest = [k + 1 for k, x in enumerate(b) if x and k + 1 != i]
        if len(rest) != 1 or any(x for k, x in enumerate(b) if k + 1 not in (i, rest[0])):
            return None
        j = rest[0]
        return f"p{i},l{min(i, j)}{max(i, j)}"


def act_torus(t: Sequence, f: IsotropicFlag) -> IsotropicFlag:
    t = tuple(Fraction(x) for x in t)
    if any(x == 0 for x in t):
        raise PreconditionError("torus element has a zero diagonal entry")
    if t[0] * t[2] != t[1] * t[3]:
        raise PreconditionError("torus element does not preserve the form up to scalar")
    a, b = ratmat.columns(ratmat.matmul(ratmat.diag(t), f.basis))
    return IsotropicFlag.through(a, b)


def fixed_flags() -> List[IsotropicFlag]:
    """Coordinate flags ``(p_i, l_ij)`` with isotropic ``l_ij``."""
    out = []
    for i, j in itertools.permutations(range(1, 5), 2):
        if omega(e(i), e(j)) == 0:
            out.append(IsotropicFlag.through(e(i), e(j)))
    return out


# ---------------------------------------------------------------------------
# the two families


def short_connector(x_param: LinePoint) -> LinePoint:
    """The unique point y on l_23 with <x, y> isotropic, x on l_14."""
    x = _comb(x_param, e(1), e(4))
    c, d = omega(x, e(2)), omega(x, e(3))
    if c == 0 and d == 0:
        raise PreconditionError("every point of l_23 is orthogonal to x")
    # solve c*s + d*t = 0 for y = s e_2 + t e_3
    return LinePoint(d, -c)


def family_short_pair(q_on_l14, q_on_l23, point=ZERO) -> IsotropicFlag:
    """Flag ``(p, l)`` with ``l`` through ``x`` on l_14 and ``y`` on l_23 and
    ``p = s x + t y`` for ``point == (s : t)``.  Rejects non-isotropic lines."""
    xq, yq, pq = (q if isinstance(q, LinePoint) else LinePoint(*q) for q in (q_on_l14, q_on_l23, point))
    x, y = _comb(xq, e(1), e(4)), _comb(yq, e(2), e(3))
    if omega(x, y) != 0:
        raise NotIsotropicError(
            "line through the sampled points of l_14 and l_23 is not isotropic",
            {"x": str(xq), "y": str(yq), "omega": str(omega(x, y))},
        )
    p = _comb(pq, x, y)
    other = y if pq.s != 0 else x
    return IsotropicFlag.through(p, other)


def long_connector_dimension(p_param: LinePoint) -> int:
    """Dimension of ``{y in l_24 : omega(p, y) = 0}`` for p on l_13."""
    p = _comb(p_param, e(1), e(3))
    return 2 - ratmat.rank([[omega(p, e(2)), omega(p, e(4))]])


def family_long_pair(p_on_l13, crossing_on_l24) -> IsotropicFlag:
    """Flag with point ``p`` on l_13 and line through ``p`` and a point of l_24."""
    pq, yq = (q if isinstance(q, LinePoint) else LinePoint(*q) for q in (p_on_l13, crossing_on_l24))
    p, y = _comb(pq, e(1), e(3)), _comb(yq, e(2), e(4))
    if omega(p, y) != 0:
        raise NotIsotropicError("no isotropic connector", {"p": str(pq), "y": str(yq)})
    return IsotropicFlag.through(p, y)


def in_short_family(f: IsotropicFlag) -> bool:
    return f.is_isotropic() and f.meets(e(1), e(4)) and f.meets(e(2), e(3))


def in_long_family(f: IsotropicFlag) -> bool:
    return f.is_isotropic() and f.point_on(e(1), e(3)) and f.meets(e(2), e(4))


def short_vertex_flags() -> List[IsotropicFlag]:
    out = []
    for x in (ZERO, INFTY):
        for pt in (ZERO, INFTY):
            out.append(family_short_pair(x, short_connector(x), pt))
    return out


def long_vertex_flags() -> List[IsotropicFlag]:
    return [family_long_pair(p, y) for p in (ZERO, INFTY) for y in (ZERO, INFTY)]


# ---------------------------------------------------------------------------
# Weyl group of C2 acting on the square


def c2() -> RootSystem:
    return build_root_system("C2")


def _eps(root: Root) -> Tuple[int, int]:
    c1, c2_ = root
    return (c1, -c1 + 2 * c2_)


def vertex_of_long_root(root: Root) -> int:
    a, b = _eps(root)
    return _VERTEX_OF_WEIGHT[(a // 2, b // 2)]


def flag_of_weyl(w: WeylElement) -> IsotropicFlag:
    """The fixed flag ``w (p_1, l_12)``."""
    i = vertex_of_long_root(act(w, (2, 1)))  # 2 eps1
    j = vertex_of_long_root(act(w, (0, 1)))  # 2 eps2
    return IsotropicFlag.through(e(i), e(j))


def weyl_group_c2(rs: RootSystem) -> List[WeylElement]:
    """All 8 elements, by closure under the simple reflections."""
    gens = [simple_reflection(rs, 1), simple_reflection(rs, 2)]
    seen = {gens[0].perm: gens[0], gens[1].perm: gens[1]}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y.perm not in seen:
                    seen[y.perm] = y
                    nxt.append(y)
        frontier = nxt
    return sorted(seen.values())


def _labels(flags) -> List[str]:
    return sorted(f.vertex_label() for f in flags)


def verify_c2_correspondence() -> Verdict:
    """Match the two orthogonal pairs of C2 with the two geometric families."""
    rs = c2()
    pairs = [s for s in enumerate_orthogonal_sets(rs, 2) if len(s) == 2]
    if len(pairs) != 2:
        return Verdict(False, {"reason": f"expected 2 orthogonal pairs, found {len(pairs)}"})
    info = {}
    families = {}
    for s in pairs:
        a, b = s.roots
        short = not rs.is_long(a)
        if short != (not rs.is_long(b)):
            return Verdict(False, {"reason": "mixed-length orthogonal pair", "omega": [list(a), list(b)]})
        kind = "short" if short else "long"
        comparable = rs.comparable(a, b)
        if comparable != short:
            return Verdict(False, {"reason": f"{kind} pair comparability is {comparable}"})
        numbering = nonincreasing_numbering(rs, s)
        cell = identity_cell(rs, s)
        from_cell = _labels(flag_of_weyl(x) for x in fixed_points(cell))
        vertex_flags = short_vertex_flags() if short else long_vertex_flags()
        from_family = _labels(vertex_flags)
        pred = in_short_family if short else in_long_family
        from_predicate = _labels(f for f in fixed_flags() if pred(f))
        if not (from_cell == from_family == from_predicate):
            return Verdict(False, {"pair": kind, "cell": from_cell, "family": from_family,
                                   "predicate": from_predicate})
        # the cosets of the subgroup split the 8 fixed flags into two blocks of 4
        blocks = set()
        for w in weyl_group_c2(rs):
            blocks.add(tuple(_labels(flag_of_weyl(compose(w, g)) for g in cell.members())))
        covered = sorted(lab for blk in blocks for lab in blk)
        if len(blocks) != 2 or covered != _labels(fixed_flags()):
            return Verdict(False, {"pair": kind, "blocks": sorted(blocks)})
        families[kind] = from_cell
        info[kind] = {
            "omega": [list(a), list(b)],
            "numbering": [list(r) for r in numbering.seq],
            "comparable": comparable,
            "fixed_flags": from_cell,
            "translate_blocks": sorted(list(b) for b in blocks),
        }
    info["shared_fixed_flags"] = sorted(set(families["short"]) & set(families["long"]))
    return Verdict(True, info=info)


def verify_families(samples: int = 50, seed: int = 0) -> Dict[str, Verdict]:
    """Sampled members of both families: exact isotropy, incidence, torus stability."""
    rng = rng_for(seed, "sp4")
    out = {}
    for kind in ("short", "long"):
        verdict = Verdict(True, info={"samples": samples})
        for _ in range(samples):
            t = _random_form_torus(rng)
            if kind == "short":
                x, pt = random_generic_point(rng), random_generic_point(rng)
                f = family_short_pair(x, short_connector(x), pt)
                ok = in_short_family(f)
                tx = LinePoint(t[0] * x.s, t[3] * x.t)
                image = act_torus(t, f)
                stable = in_short_family(image) and image.spans(*_line_vectors(tx, short_connector(tx)))
            else:
                p, y = random_generic_point(rng), random_generic_point(rng)
                f = family_long_pair(p, y)
                ok = in_long_family(f) and long_connector_dimension(p) == 2
                image = act_torus(t, f)
                moved = family_long_pair(LinePoint(t[0] * p.s, t[2] * p.t), LinePoint(t[1] * y.s, t[3] * y.t))
                stable = in_long_family(image) and image == moved
            if not (ok and f.is_isotropic() and stable):
                verdict = Verdict(False, {"flag": f.to_json(), "torus": [str(x) for x in t]})
                break
        out[kind] = verdict
    return out


def _line_vectors(xq: LinePoint, yq: LinePoint):
    return _comb(xq, e(1), e(4)), _comb(yq, e(2), e(3))


def _random_form_torus(rng) -> Tuple[Fraction, ...]:
    from .flagmodel_a import random_rational

    t1, t2, t3 = random_rational(rng), random_rational(rng), random_rational(rng)
    return (t1, t2, t3, t1 * t3 / t2)


def verify_torus_fixed(seed: int = 0) -> Verdict:
    """A regular torus element fixes exactly the 8 isotropic coordinate flags, and
    inside both families it fixes a member iff all its parameters are vertices."""
    coordinate = [IsotropicFlag(ratmat.canonical_columns(ratmat.from_columns([e(i), e(j)])))
                  for i, j in itertools.permutations(range(1, 5), 2)]
    fixed = [f for f in coordinate if f.is_isotropic() and act_torus(REGULAR_TORUS, f) == f]
    if _labels(fixed) != _labels(fixed_flags()) or len(fixed) != 8:
        return Verdict(False, {"fixed_coordinate_flags": _labels(fixed)})
    rng = rng_for(seed, "sp4-fixed")
    seen = set()
    for xk, pk in itertools.product((ZERO, INFTY, None), repeat=2):
        x = xk or random_generic_point(rng)
        pt = pk or random_generic_point(rng)
        vertex = xk is not None and pk is not None
        for f in (family_short_pair(x, short_connector(x), pt), family_long_pair(x, pt)):
            is_fixed = act_torus(REGULAR_TORUS, f) == f
            if is_fixed != vertex:
                return Verdict(False, {"flag": f.to_json(), "fixed": is_fixed})
            if is_fixed:
                seen.add(f.vertex_label())
    return Verdict(True, info={"fixed_flags": len(fixed), "fixed_in_identity_families": sorted(seen)})


def run_sp4_check(samples: int = 50, seed: int = 0) -> Dict:
    fams = verify_families(samples, seed)
    checks = {
        "fixed_flags": Verdict(len(fixed_flags()) == 8, info={"flags": _labels(fixed_flags())}),
        "torus_fixed": verify_torus_fixed(seed),
        "short_family": fams["short"],
        "long_family": fams["long"],
        "correspondence": verify_c2_correspondence(),
    }
    ok = all(v.ok for v in checks.values())
    return {
        "model": "Sp4",
        "samples": samples,
        "seed": seed,
        "verdict": "Pass" if ok else "Fail",
        "checks": {k: v.to_dict() for k, v in checks.items()},
    }
