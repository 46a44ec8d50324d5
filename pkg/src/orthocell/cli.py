"""Command-line entry point.

Exit codes: 0 all checks pass, 1 a verdict failed, 2 usage or resource error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

from .cells import (
    ResourceLimitError,
    enumerate_orthogonal_sets,
    nonincreasing_numbering,
    orbit_poset,
    orthocell_from_json,
)
from .rootsys import build_root_system
from .weyl import PreconditionError
from . import flagmodel_a, modelsp4, ratmat, verify


class UsageError(Exception):
    pass


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _cap(args) -> Optional[int]:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("ORTHOCELL_CAP")
    return int(env) if env else None


def _rs(args):
    try:
        return build_root_system(args.type)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_pairs(text: str) -> List[List[int]]:
    """``"12,34"`` or ``"1-2,3-4"`` -> ``[[1, 2], [3, 4]]``."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if "-" in tok or ":" in tok:
            a, b = tok.replace(":", "-").split("-")
        elif len(tok) == 2 and tok.isdigit():
            a, b = tok
        else:
            raise UsageError(f"cannot parse pair {tok!r}")
        out.append([int(a), int(b)])
    return out


def parse_perm(text: str) -> List[int]:
    parts = text.replace(",", " ").split()
    if len(parts) == 1 and len(parts[0]) > 1:
        parts = list(parts[0])
    return [int(x) for x in parts]


# ---------------------------------------------------------------------------


def cmd_enum(args) -> int:
    rs = _rs(args)
    sets = enumerate_orthogonal_sets(rs, args.max_d, _cap(args))
    counts: Dict[str, int] = {}
    rows = []
    for s in sets:
        counts[str(len(s))] = counts.get(str(len(s)), 0) + 1
        maximal = not any(
            r not in s.roots and all(rs.is_orthogonal(r, a) for a in s.roots)
            for r in rs.positive_roots
        )
        comparable = [
            [i + 1, j + 1]
            for i in range(len(s))
            for j in range(i + 1, len(s))
            if rs.comparable(s.roots[i], s.roots[j])
        ]
        rows.append({
            "omega": [list(r) for r in s.roots],
            "d": len(s),
            "maximal": maximal,
            "long": [rs.is_long(r) for r in s.roots],
            "comparable_pairs": comparable,
            "numbering": [list(r) for r in nonincreasing_numbering(rs, s).seq],
        })
    report = {"type": str(rs.cartan_type), "max_d": args.max_d, "counts": counts, "sets": rows}
    if args.format == "text":
        out = [f"type {report['type']}  max_d {args.max_d}  counts {counts}"]
        for row in rows:
            tag = "comparable" if row["comparable_pairs"] else "incomparable"
            tag += ", maximal" if row["maximal"] else ""
            out.append(f"  d={row['d']}  {row['omega']}  ({tag})")
        sys.stdout.write("\n".join(out) + "\n")
    else:
        sys.stdout.write(_dump(report))
    return 0


def cmd_verify(args) -> int:
    rs = _rs(args)
    report = verify.run_suite(rs, args.max_d, args.include_bad_orderings, _cap(args))
    if args.format == "text":
        t = report["totals"]
        lines = [
            f"{report['type']}: {report['verdict']}  sets={t['sets']} numberings={t['numberings']} "
            f"rearrangement_pairs={t['rearrangement_pairs']} census={t['census']}"
        ]
        for f in report["failures"]:
            lines.append(f"  FAIL {f['check']} omega={f['omega']} {f.get('witness', '')}")
        for a in report["alarms"]:
            lines.append(f"  ALARM omega={a['omega']} {a['alarm']}")
        for b in report.get("bad_orderings_flagged", []):
            lines.append(f"  bad ordering {b['seq']} fails positivity, witness {b['witness']}")
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(_dump(report))
    if report["alarms"]:
        sys.stderr.write(f"theorem-violation alarms: {len(report['alarms'])}\n")
    return 0 if report["verdict"] == "Pass" else 1


def cmd_poset(args) -> int:
    try:
        if args.cell:
            text = args.cell
            if os.path.exists(text):
                with open(text) as fh:
                    text = fh.read()
            cell = orthocell_from_json(text)
        else:
            if not args.type or args.omega is None:
                raise UsageError("poset needs --cell or both --type and --omega")
            cell = orthocell_from_json({"type": args.type, "rep": args.rep, "omega": json.loads(args.omega)})
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed cell JSON: {exc}") from None
    poset = orbit_poset(cell)
    if args.format == "json":
        sys.stdout.write(_dump(poset.to_json()))
    else:
        sys.stdout.write(poset.to_dot())
    return 0


def _flag_config(args) -> Dict[str, Any]:
    cfg: Dict[str, Any] = {}
    if args.config:
        text = args.config
        if os.path.exists(text):
            with open(text) as fh:
                text = fh.read()
        try:
            cfg = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed config: {exc}") from None
    if args.n is not None:
        cfg["n"] = args.n
    if args.pairs is not None:
        cfg["pairs"] = parse_pairs(args.pairs)
    if args.w is not None:
        cfg["w"] = parse_perm(args.w)
    if args.samples is not None:
        cfg["samples"] = args.samples
    if args.seed is not None:
        cfg["seed"] = args.seed
    return cfg


def cmd_flag(args) -> int:
    if args.sp4:
        samples = args.samples if args.samples is not None else 50
        seed = args.seed if args.seed is not None else 0
        if samples < 1 or seed < 0:
            raise UsageError("samples must be >= 1 and seed >= 0")
        report = modelsp4.run_sp4_check(samples, seed)
        report["fixed_flags"] = [
            dict(f.to_json(), label=f.vertex_label()) for f in modelsp4.fixed_flags()
        ]
    else:
        cfg = _flag_config(args)
        if "n" not in cfg:
            raise UsageError("flag needs --n (or --config with \"n\") or --sp4")
        samples, seed = int(cfg.get("samples", 100)), int(cfg.get("seed", 0))
        if samples < 1 or seed < 0:
            raise UsageError("samples must be >= 1 and seed >= 0")
        n = int(cfg["n"])
        report = flagmodel_a.run_model_check(n, cfg.get("w"), cfg.get("pairs", []), samples, seed)
        pairs = [tuple(p) for p in cfg.get("pairs", [])]
        w = cfg.get("w") or list(range(1, n + 1))
        report["vertex_flags"] = [
            {
                "points": [str(q) for q in pts],
                "matrix": ratmat.to_json(flagmodel_a.flag_F(n, w, pairs, pts).basis),
            }
            for pts in _vertex_tuples(len(pairs))
        ]
    if args.format == "text":
        lines = [f"model {report['model']}: {report['verdict']}"]
        for name, v in report["checks"].items():
            lines.append(f"  {name}: {v['verdict']}")
        for vf in report.get("vertex_flags", []):
            lines.append(f"  flag at {' '.join(vf['points'])}:")
            lines.extend("    " + " ".join(row) for row in vf["matrix"])
        for ff in report.get("fixed_flags", []):
            lines.append(f"  fixed flag {ff['label']}: point {ff['point']}")
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(_dump(report))
    return 0 if report["verdict"] == "Pass" else 1


def _vertex_tuples(d: int):
    return [list(t) for t in itertools.product((flagmodel_a.ZERO, flagmodel_a.INFTY), repeat=d)]


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="orthocell",
        description="Orthocells, their lemma checks, orbit posets and exact flag models.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enum", help="list orthogonal sets of positive roots")
    e.add_argument("--type", required=True, help='Cartan type, e.g. "A3" or "A2xB3"')
    e.add_argument("--max-d", type=int, default=2)
    e.add_argument("--cap", type=int, default=None, help="resource cap on the number of sets")
    e.add_argument("--format", choices=["json", "text"], default="json")
    e.set_defaults(func=cmd_enum)

    v = sub.add_parser("verify", help="run the lemma suite over all orthogonal sets")
    v.add_argument("--type", required=True)
    v.add_argument("--max-d", type=int, default=None, help="default: the rank")
    v.add_argument("--include-bad-orderings", action="store_true",
                   help="also test orderings that are not nonincreasing")
    v.add_argument("--cap", type=int, default=None)
    v.add_argument("--format", choices=["json", "text"], default="json")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("poset", help="orbit poset of one orthocell")
    o.add_argument("--cell", help='JSON {"type", "rep", "omega"} or a path to such a file')
    o.add_argument("--type")
    o.add_argument("--rep", default="", help='word in simple reflections, e.g. "s1 s2"')
    o.add_argument("--omega", help="JSON list of roots in simple-root coordinates")
    o.add_argument("--format", choices=["dot", "json"], default="dot")
    o.set_defaults(func=cmd_poset)

    f = sub.add_parser("flag", help="exact flag-model checks (type A or Sp(4))")
    f.add_argument("--n", type=int)
    f.add_argument("--pairs", help='disjoint pairs, e.g. "12,34" or "1-2,3-4"')
    f.add_argument("--w", help='permutation, e.g. "2,1,3,4"')
    f.add_argument("--samples", type=int)
    f.add_argument("--seed", type=int)
    f.add_argument("--config", help='JSON {"n", "w", "pairs", "samples", "seed"} or a path')
    f.add_argument("--sp4", action="store_true", help="run the Sp(4) isotropic-square model")
    f.add_argument("--format", choices=["json", "text"], default="json")
    f.set_defaults(func=cmd_flag)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PreconditionError, ResourceLimitError) as exc:
        sys.stderr.write(f"orthocell: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
