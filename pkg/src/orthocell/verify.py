"""Exhaustive lemma suites over all orthogonal sets of a root system."""

from __future__ import annotations

import itertools
from typing import Any, Dict, List, Optional

from .cells import (
    OrthogonalSet,
    TheoremViolation,
    all_nonincreasing_numberings,
    bad_orderings,
    enumerate_orthogonal_sets,
    fixed_points,
    identity_cell,
    nonincreasing_numbering,
    orbit_poset,
    rearrangement_path,
    subcells,
    verify_commutation_closure,
    verify_dichotomy,
    verify_poset_isomorphism,
    verify_positivity_lemma,
)
from .rootsys import RootSystem

RANK4_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4"]


def _roots(seq) -> List[List[int]]:
    return [list(r) for r in seq]


def check_numberings(rs: RootSystem, omega: OrthogonalSet) -> Dict[str, Any]:
    """Positivity, dichotomy and closure for every nonincreasing numbering of ``omega``."""
    rows = []
    failures = []
    greedy = nonincreasing_numbering(rs, omega)
    numberings = all_nonincreasing_numberings(rs, omega)
    if greedy not in numberings:
        failures.append({"check": "greedy", "seq": _roots(greedy.seq)})
    for nb in numberings:
        pos = verify_positivity_lemma(rs, nb.seq)
        dich = verify_dichotomy(rs, nb.seq)
        clo = verify_commutation_closure(rs, nb.seq)
        row = {
            "seq": _roots(nb.seq),
            "positivity": "Pass" if pos.ok else "Fail",
            "dichotomy": "Pass" if dich.ok else "Fail",
            "closure": "Pass" if clo.ok else "Fail",
        }
        for name, v in (("positivity", pos), ("dichotomy", dich), ("closure", clo)):
            if not v.ok:
                row[f"{name}_witness"] = v.witness
                failures.append({"check": name, "seq": _roots(nb.seq), "witness": v.witness})
        rows.append(row)
    return {"numberings": rows, "greedy": _roots(greedy.seq), "failures": failures,
            "count": len(numberings)}


def check_rearrangements(rs: RootSystem, omega: OrthogonalSet) -> Dict[str, Any]:
    numberings = all_nonincreasing_numberings(rs, omega)
    pairs = 0
    for n1, n2 in itertools.product(numberings, repeat=2):
        rearrangement_path(rs, n1.seq, n2.seq)
        pairs += 1
    return {"pairs": pairs}


def check_census(rs: RootSystem, omega: OrthogonalSet) -> Dict[str, Any]:
    cell = identity_cell(rs, omega)
    d = len(omega)
    fp = len(fixed_points(cell))
    sc = len(subcells(cell))
    poset = orbit_poset(cell)
    iso = verify_poset_isomorphism(poset)
    ok = fp == 2 ** d and sc == 3 ** d and iso.ok and len(poset.minimal()) == 2 ** d \
        and len(poset.maximal()) == 1
    out = {"fixed_points": fp, "subcells": sc, "poset_isomorphism": "Pass" if iso.ok else "Fail",
           "verdict": "Pass" if ok else "Fail"}
    if not iso.ok:
        out["witness"] = iso.witness
    return out


def check_bad_orderings(rs: RootSystem, omega: OrthogonalSet) -> List[Dict[str, Any]]:
    out = []
    for seq in bad_orderings(rs, omega):
        v = verify_positivity_lemma(rs, seq)
        row = {"seq": _roots(seq), "positivity": "Pass" if v.ok else "Fail"}
        if not v.ok:
            row["witness"] = v.witness
        out.append(row)
    return out


def run_suite(
    rs: RootSystem,
    max_d: Optional[int] = None,
    include_bad: bool = False,
    cap: Optional[int] = None,
    census_max_d: int = 4,
    rearrange_max_d: int = 4,
) -> Dict[str, Any]:
    """Run every lemma check over all orthogonal sets of size <= ``max_d``.

    Returns a JSON-ready report; ``report["verdict"]`` is "Fail" iff a check
    where Pass is mandated failed, and theorem-violation alarms are listed
    separately under ``"alarms"``.
    """
    if max_d is None:
        max_d = rs.rank
    sets = enumerate_orthogonal_sets(rs, max_d, cap)
    entries = []
    failures = []
    alarms = []
    bad_flagged = []
    totals = {"sets": 0, "numberings": 0, "rearrangement_pairs": 0, "census": 0, "bad_orderings": 0}
    for omega in sets:
        if not len(omega):
            continue
        totals["sets"] += 1
        entry: Dict[str, Any] = {"omega": _roots(omega.roots), "d": len(omega)}
        nb = check_numberings(rs, omega)
        entry["numberings"] = nb["numberings"]
        totals["numberings"] += nb["count"]
        for f in nb["failures"]:
            failures.append(dict(f, omega=entry["omega"]))
        try:
            if len(omega) <= rearrange_max_d:
                r = check_rearrangements(rs, omega)
                entry["rearrangement"] = {"verdict": "Pass", **r}
                totals["rearrangement_pairs"] += r["pairs"]
            if len(omega) <= census_max_d:
                c = check_census(rs, omega)
                entry["census"] = c
                totals["census"] += 1
                if c["verdict"] != "Pass":
                    failures.append({"check": "census", "omega": entry["omega"], **c})
        except TheoremViolation as exc:
            alarms.append({"omega": entry["omega"], "alarm": str(exc)})
        if include_bad:
            bad = check_bad_orderings(rs, omega)
            if bad:
                entry["bad_orderings"] = bad
                totals["bad_orderings"] += len(bad)
                bad_flagged.extend(
                    {"omega": entry["omega"], **row} for row in bad if row["positivity"] == "Fail"
                )
        entries.append(entry)
    report: Dict[str, Any] = {
        "type": str(rs.cartan_type),
        "max_d": max_d,
        "totals": totals,
        "verdict": "Pass" if not failures and not alarms else "Fail",
        "failures": failures,
        "alarms": alarms,
    }
    if include_bad:
        report["bad_orderings_flagged"] = bad_flagged
    report["entries"] = entries
    return report
