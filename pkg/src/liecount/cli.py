"""Command-line front end with JSON/CSV rendering and an append-only result cache."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__, caps, counting, selection, series
from .fields import field_of_order
from .groups import GroupParseError, make_group

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

TABLE_GROUPS = ("G2", "F4", "E6", "E6ad", "E7", "E7ad", "E8")
IDENTITIES = ("van-sum", "xi-gl2", "selection", "fourier", "arrangement")
FORMATS = ("text", "json", "csv")


class UsageError(ValueError):
    pass


@dataclass
class Outcome:
    status: int
    payload: object
    text: str
    rows: list[list] = field(default_factory=list)


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def parse_range(text: str) -> list[int]:
    """'3..16', '3-16', '5' or '3,5,7'."""
    try:
        if "," in text:
            return [int(t) for t in text.split(",")]
        for sep in ("..", "-"):
            if sep in text:
                lo, hi = text.split(sep, 1)
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise UsageError(f"empty range {text!r}")
                return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"cannot parse range {text!r}; use LO..HI") from None


# Subcommands


def _count_rows(rep: counting.CountReport) -> list[list]:
    return [["group", "n0", "n1", "n2_at_1", "n2_total"], [rep.group, rep.n0, rep.n1, rep.n2_at_1, rep.n2_total]]


def run_count(args) -> Outcome:
    rep = counting.n2_at_identity(make_group(args.group))
    lines = [f"{rep.group}: n0={rep.n0} n1={rep.n1} n2_at_1={rep.n2_at_1} n2_total={rep.n2_total}"]
    for c in rep.classes:
        vertex = "(" + ", ".join(str(x) for x in c.vertex) + ")"
        lines.append(f"  vertex {vertex} orbit {c.orbit_size}: {c.type} pi1={c.pi1} n0={c.n0} n1={c.n1}")
    lines += [f"  note: {n}" for n in rep.notes]
    return Outcome(EXIT_OK, rep.to_json(), "\n".join(lines), _count_rows(rep))


def run_table(args) -> Outcome:
    reports = [counting.n2_at_identity(make_group(g)) for g in TABLE_GROUPS]
    rows = [["group", "n0", "n1", "n2_at_1", "n2_total"]]
    rows += [[r.group, r.n0, r.n1, r.n2_at_1, r.n2_total] for r in reports]
    widths = [max(len(str(row[i])) for row in rows) for i in range(5)]
    text = "\n".join("  ".join(str(v).rjust(w) for v, w in zip(row, widths)) for row in rows)
    payload = [{k: r.to_json()[k] for k in rows[0]} for r in reports]
    return Outcome(EXIT_OK, payload, text, rows)


def run_series(args) -> Outcome:
    if args.N < 0:
        raise UsageError("N must be nonnegative")
    s = series.family_series(args.family, args.N)
    rows = [["n", "coefficient"]] + [list(r) for r in series.to_csv_rows(s)]
    payload = {"family": args.family, "order": args.N, "coefficients": list(s.coeffs)}
    return Outcome(EXIT_OK, payload, f"{args.family}: " + " ".join(str(c) for c in s.coeffs), rows)


def run_compare(args) -> Outcome:
    ns = parse_range(args.range)
    order = max(args.order, max(ns))
    cmp = counting.compare_pipelines(args.family, ns, order)
    rows = [["n", "k", "recursion", "series", "match"]]
    rows += [[r.n, r.k, r.recursion, r.series, r.match] for r in cmp]
    mismatches = [r for r in cmp if not r.match]
    lines = [f"{r.n:>3} n{r.k} recursion={r.recursion} series={r.series} {'ok' if r.match else 'MISMATCH'}" for r in cmp]
    lines.append(f"{len(mismatches)} mismatches of {len(cmp)}; the recursion value is the value of record")
    payload = {
        "family": args.family,
        "rows": [{"n": r.n, "k": r.k, "recursion": r.recursion, "series": r.series, "match": r.match} for r in cmp],
        "mismatches": len(mismatches),
    }
    return Outcome(EXIT_OK, payload, "\n".join(lines), rows)


def _verify(args) -> selection.VerificationReport:
    n, q, cap = args.n, args.q, args.cap
    if args.identity == "van-sum":
        return selection.van_sum_check(n or 2, q or 3, cap)
    if args.identity == "xi-gl2":
        q = q or 3
        rep = selection.verify_selection(selection.xi_gl2(field_of_order(q)), 2, q, cap=cap)
        rep.identity = "xi-gl2"
        return rep
    if args.identity == "selection":
        n, q = n or 2, q or 5
        coll = selection.search_admissible(n, q, budget=args.budget, seed=args.seed)
        if coll is None:
            return selection.VerificationReport("selection", {"n": n, "q": q, "seed": args.seed}, False, "no admissible collection found", "n/a")
        adm = selection.admissible_check(coll)
        if not adm.passed:
            return adm
        return selection.verify_selection(selection.construct_xi(coll, cap), n, q, cap=cap)
    if args.identity == "fourier":
        return selection.fourier_check(n or 2, q or 3, args.trials, args.seed, cap)
    if args.identity == "arrangement":
        return selection.arrangement_trials(q or 3, 4, args.trials, args.seed)
    raise UsageError(f"unknown identity {args.identity!r}")


def run_verify(args) -> Outcome:
    rep = _verify(args)
    payload = rep.to_json()
    verdict = "pass" if rep.passed else "FAIL"
    text = f"{rep.identity} {json.dumps(rep.params, sort_keys=True)}: {verdict}"
    if not rep.passed:
        text += f"\n  witness: {json.dumps(rep.witness, sort_keys=True, default=str)}\n  residual: {rep.residual}"
    rows = [["identity", "params", "pass", "residual"], [rep.identity, json.dumps(rep.params, sort_keys=True), rep.passed, rep.residual]]
    return Outcome(EXIT_OK if rep.passed else EXIT_FAIL, payload, text, rows)


def run_search(args) -> Outcome:
    coll = selection.search_admissible(
        args.n, args.q, require_coregular=not args.no_coregular, require_regular=args.regular, budget=args.budget, seed=args.seed
    )
    if coll is None:
        payload = {"n": args.n, "q": args.q, "seed": args.seed, "found": False}
        return Outcome(EXIT_FAIL, payload, f"no collection found within budget {args.budget}", [["found"], [False]])
    payload = dict(coll.to_json(), found=True, seed=args.seed)
    text = f"found admissible collection for n={args.n} q={args.q}\n" + dumps(coll.to_json())
    return Outcome(EXIT_OK, payload, text, [["found"], [True]])


def run_bounds(args) -> Outcome:
    G = make_group(args.group)
    M, q = selection.m_bound(G.rs, args.cap)
    orbit = selection.coweight_orbit_bound(G.rs, args.cap)
    payload = {"group": str(G), "M": {str(i): m for i, m in M.items()}, "q_min": q, "coweight_orbit_bound": orbit}
    if all(t.family == "A" for t in G.types) and len(G.types) == 1:
        payload["gl_closed_form"] = {str(i): m for i, m in selection.gl_mmin_closed_form(G.rank + 1).items()}
    text = f"{G}: M = {payload['M']}, least q = {q}, coweight orbit bound = {orbit}"
    if "gl_closed_form" in payload:
        text += f"\n  GL_{G.rank + 1} closed form: {payload['gl_closed_form']}"
    rows = [["i", "M"]] + [[i, m] for i, m in M.items()]
    return Outcome(EXIT_OK, payload, text, rows)


HANDLERS = {
    "count": run_count,
    "table": run_table,
    "series": run_series,
    "compare": run_compare,
    "verify": run_verify,
    "search-admissible": run_search,
    "bounds": run_bounds,
}


def build_parser() -> argparse.ArgumentParser:
    def options(suppress: bool) -> argparse.ArgumentParser:
        # subcommand copies use SUPPRESS so they never clobber options given before the subcommand
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        parent = argparse.ArgumentParser(add_help=False)
        parent.add_argument("--format", choices=FORMATS, default=d("text"))
        parent.add_argument("--cache", metavar="PATH", default=d(None), help="append-only JSON-lines result cache")
        parent.add_argument("--cap", type=int, default=d(None), help="enumeration cap (overrides LIECOUNT_CAP)")
        parent.add_argument("--seed", type=int, default=d(0))
        return parent

    common = options(True)
    p = argparse.ArgumentParser(prog="liecount", description=__doc__, parents=[options(False)])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("count", parents=[common], help="n0, n1, n2 for a group")
    s.add_argument("group")
    sub.add_parser("table", parents=[common], help="exceptional groups table")
    s = sub.add_parser("series", parents=[common], help="generating function coefficients")
    s.add_argument("family", choices=series.FAMILIES)
    s.add_argument("N", type=int)
    s = sub.add_parser("compare", parents=[common], help="recursion vs generating functions")
    s.add_argument("family", choices=("Spin", "Sp"))
    s.add_argument("range")
    s.add_argument("--order", type=int, default=series.DEFAULT_ORDER)
    s = sub.add_parser("verify", parents=[common], help="check a finite-field identity")
    s.add_argument("identity", choices=IDENTITIES)
    s.add_argument("--n", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--budget", type=int, default=2000)
    s = sub.add_parser("search-admissible", parents=[common], help="find an admissible collection")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--budget", type=int, default=2000)
    s.add_argument("--regular", action="store_true")
    s.add_argument("--no-coregular", action="store_true")
    s = sub.add_parser("bounds", parents=[common], help="M(i) and orbit bounds")
    s.add_argument("group")
    return p


def canonical_config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("cache", "format")}


def render(out: Outcome, fmt: str) -> str:
    if fmt == "json":
        return dumps(out.payload)
    if fmt == "csv":
        return _csv(out.rows)
    return out.text


def _cache_key(args) -> str:
    return json.dumps([args.subcommand, canonical_config(args)], sort_keys=True)


def cache_lookup(path: str, key: str) -> dict | None:
    if not os.path.exists(path):
        return None
    hit = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            try:
                entry = json.loads(line)
            except json.JSONDecodeError:
                continue
            if entry.get("key") == key and entry.get("version") == __version__:
                hit = entry
    return hit


def cache_store(path: str, key: str, out: Outcome) -> None:
    entry = {"key": key, "version": __version__, "status": out.status, "payload": out.payload, "text": out.text, "rows": out.rows}
    line = json.dumps(entry, sort_keys=True, default=str)
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(line + "\n")


def run(args) -> tuple[int, str]:
    if args.cap is not None and args.cap <= 0:
        raise UsageError("--cap must be positive")
    key = _cache_key(args)
    if args.cache:
        hit = cache_lookup(args.cache, key)
        if hit is not None:
            out = Outcome(hit["status"], hit["payload"], hit["text"], hit["rows"])
            return out.status, render(out, args.format)
    out = HANDLERS[args.subcommand](args)
    if args.cache:
        cache_store(args.cache, key, out)
    return out.status, render(out, args.format)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status, text = run(args)
    except caps.CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GroupParseError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
