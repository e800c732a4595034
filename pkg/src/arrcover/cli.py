"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 inconclusive
``certify-torsion``.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from typing import Sequence

from arrcover import __version__
from arrcover.arrangement import Arrangement, ArrangementError, parse, serialize
from arrcover.catalog import CatalogError, catalog_get, catalog_names, entry
from arrcover.covers import (
    CERTIFIED,
    SearchConfig,
    double_cover_mod2_betti,
    milnor_fiber_b1,
    two_torsion_certificate,
    weights_from_subset,
)
from arrcover.fields import F2, FieldContext, Q
from arrcover.os_algebra import aomoto, os_degree, poset_of
from arrcover.poset import betti_numbers, characteristic_polynomial, format_polynomial, rank2_census

SCHEMA = "arrcover/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def parse_indices(text: str) -> list[int]:
    """``"1..15,17"`` -> ``[1, ..., 15, 17]``."""
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(\d+)\s*(?:\.\.|-)\s*(\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise UsageError(f"empty range {part!r}")
            out.update(range(lo, hi + 1))
        elif part.isdigit():
            out.add(int(part))
        else:
            raise UsageError(f"bad index list item {part!r}")
    if 0 in out:
        raise UsageError("hyperplane indices start at 1")
    return sorted(out)


def parse_field(text: str) -> FieldContext:
    t = text.strip().lower()
    if t in ("f2", "gf2"):
        return F2
    if t in ("q", "qq"):
        return Q
    m = re.fullmatch(r"(?:fp|f):?(\d+)", t)
    if m:
        try:
            return FieldContext.prime(int(m.group(1)))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown field {text!r}; use f2, q or fp:<p>")


def _load(args) -> tuple[Arrangement, str]:
    if args.file and args.catalog:
        raise UsageError("give either --file or --catalog, not both")
    if args.catalog:
        return catalog_get(args.catalog), f"catalog:{args.catalog}"
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return parse(fh.read()), f"file:{args.file}"
    raise UsageError("an input is required: --file <path> or --catalog <name>")


def _weights(args, a: Arrangement, f: FieldContext, default_all: bool = False) -> list:
    if args.weights and args.w_subset:
        raise UsageError("give either --weights or --w-subset, not both")
    if args.weights:
        try:
            w = [f.parse(s) for s in args.weights.split(",")]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if len(w) != a.n:
            raise UsageError(f"--weights needs {a.n} entries, got {len(w)}")
        return w
    if args.w_subset:
        idx = parse_indices(args.w_subset)
        if idx and idx[-1] > a.n:
            raise UsageError(f"--w-subset index {idx[-1]} exceeds n = {a.n}")
        return [f(x) for x in weights_from_subset(a.n, idx)]
    if default_all:
        return [f.one] * a.n
    raise UsageError("weights are required: --weights <list> or --w-subset <indices>")


def _search_cfg(args) -> SearchConfig:
    return SearchConfig(range=args.range, max_nodes=args.max_nodes)


# -- commands: each returns (result payload, text lines, exit code) ----------


def cmd_info(args, a: Arrangement):
    res = {
        "field": a.field.spec(),
        "dim": a.dim,
        "n": a.n,
        "central": a.central,
        "labels": list(a.labels),
        "arrangement": serialize(a),
    }
    lines = [
        f"field {a.field}",
        f"dim {a.dim}",
        f"hyperplanes {a.n} ({'central' if a.central else 'affine'})",
        serialize(a).rstrip("\n"),
    ]
    return res, lines, 0


def cmd_poset(args, a: Arrangement):
    p = poset_of(a)
    res = p.to_json()
    lines = []
    for k in range(p.rank + 1):
        level = p.by_codim(k)
        lines.append(f"codim {k}: {len(level)} flats")
    census = rank2_census(p).counts
    lines.append("rank-2 census: " + ", ".join(f"{c} of multiplicity {m}" for m, c in census.items()))
    lines.append("betti " + " ".join(map(str, betti_numbers(p))))
    return res, lines, 0


def cmd_betti(args, a: Arrangement):
    p = poset_of(a)
    b = betti_numbers(p)
    chi = characteristic_polynomial(p)
    res = {"betti": b, "characteristic_polynomial": chi}
    lines = [f"betti ({', '.join(map(str, b))})", f"chi(t) = {format_polynomial(chi)}"]
    return res, lines, 0


def cmd_osdim(args, a: Arrangement):
    f = parse_field(args.field)
    degs = [os_degree(a, k, f, args.method) for k in range(a.dim + 1)]
    b = betti_numbers(poset_of(a))
    res = {
        "field": str(f),
        "method": args.method,
        "degrees": [d.to_json() for d in degs],
        "dims": [d.dimension for d in degs],
        "betti": b,
        "agree": [d.dimension for d in degs] == b,
    }
    lines = [
        f"A^{d.degree}: dim {d.dimension} ({len(d.generators)} generators, relation rank {d.relation_rank})"
        for d in degs
    ]
    lines.append(f"betti ({', '.join(map(str, b))}) {'agrees' if res['agree'] else 'DISAGREES'}")
    return res, lines, 0


def cmd_aomoto(args, a: Arrangement):
    f = parse_field(args.field)
    w = _weights(args, a, f)
    cx = aomoto(a, w, f, args.method)
    res = cx.to_json()
    lines = [
        f"field {f}",
        "dims " + " ".join(map(str, cx.dims)),
        "ranks " + " ".join(map(str, cx.ranks)),
    ]
    lines += [f"h^{k} = {h}" for k, h in enumerate(cx.cohomology)]
    return res, lines, 0


def cmd_double_cover(args, a: Arrangement):
    w = _weights(args, a, F2, default_all=True)
    try:
        rep = double_cover_mod2_betti(a, w)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [
        f"k={k}: b_k = {b}, h^k = {h}, mod-2 b_k(cover) = {b + h}"
        for k, (b, h) in enumerate(zip(rep.betti, rep.aomoto_h))
    ]
    return rep.to_json(), lines, 0


def _eigen_lines(rep) -> list[str]:
    lines = []
    for r in rep.rows:
        h = "unknown" if r.h1 is None else str(r.h1)
        ws = ",".join(str(x) for x in r.weights.entries)
        lines.append(f"d={r.d:>3}  h1={h:<7}  [{r.weights.source}] a=({ws})")
    if rep.all_known:
        lines.append(f"b1(F) = {rep.b1}")
    else:
        lines.append(f"b1(F) >= {rep.b1_lower} (some eigenspaces unknown)")
    return lines


def cmd_milnor(args, a: Arrangement):
    rep = milnor_fiber_b1(a, args.decone_index, _search_cfg(args))
    return rep.to_json(), _eigen_lines(rep), 0


def cmd_certify(args, a: Arrangement):
    rep = two_torsion_certificate(a, args.decone_index, _search_cfg(args))
    lines = _eigen_lines(rep)
    lines.append(f"h1 of the F2 Aomoto complex (w = all ones): {rep.h1_f2}")
    for k, v in rep.conditions.items():
        lines.append(f"  {'ok ' if v else 'FAIL'} {k}")
    lines.append(f"verdict: {rep.verdict}")
    if rep.verdict == CERTIFIED:
        lines.append(rep.evidence_chain())
    return rep.to_json(), lines, 0 if rep.verdict == CERTIFIED else 2


def _run_catalog(args) -> tuple[dict, list[str], int, str | None]:
    if not args.catalog:
        names = catalog_names()
        return {"names": names}, names, 0, None
    e = entry(args.catalog)
    a = catalog_get(args.catalog)
    res = {
        "name": e.name,
        "notes": e.notes,
        "golden": {k: {"value": v, "provenance": p} for k, (v, p) in e.golden.items()},
        "arrangement": serialize(a),
    }
    lines = [e.name, e.notes] + [f"  {k} = {v} [{p}]" for k, (v, p) in e.golden.items()]
    lines.append(serialize(a).rstrip("\n"))
    return res, lines, 0, serialize(a)


COMMANDS = {
    "info": cmd_info,
    "poset": cmd_poset,
    "betti": cmd_betti,
    "osdim": cmd_osdim,
    "aomoto": cmd_aomoto,
    "double-cover": cmd_double_cover,
    "milnor": cmd_milnor,
    "certify-torsion": cmd_certify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arrcover", description="Double covers and Milnor fibers of hyperplane arrangements.")
    parser.add_argument("--version", action="version", version=f"arrcover {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, help_: str):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--file", help="arrangement file")
        sp.add_argument("--catalog", help="built-in arrangement name")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        return sp

    add("info", "summary and canonical serialization")
    add("poset", "intersection poset with Moebius values and rank-2 census")
    add("betti", "Betti numbers and characteristic polynomial")
    sp = add("osdim", "dimensions of the Orlik-Solomon algebra")
    sp.add_argument("--field", default="f2")
    sp.add_argument("--method", choices=["straighten", "eliminate"], default="straighten")
    for name, help_ in (
        ("aomoto", "cohomology of the Aomoto complex"),
        ("double-cover", "mod-2 Betti numbers of a double cover"),
    ):
        sp = add(name, help_)
        if name == "aomoto":
            sp.add_argument("--field", default="f2")
            sp.add_argument("--method", choices=["straighten", "eliminate"], default="straighten")
        sp.add_argument("--weights", help="comma-separated scalars, one per hyperplane")
        sp.add_argument("--w-subset", help="indices with weight 1, e.g. 1..15,17")
    for name, help_ in (
        ("milnor", "first Betti number of the Milnor fiber via eigenspaces"),
        ("certify-torsion", "certify 2-torsion in H_1 of the Milnor fiber"),
    ):
        sp = add(name, help_)
        sp.add_argument("--decone-index", type=int, default=None)
        sp.add_argument("--range", type=int, default=SearchConfig.range)
        sp.add_argument("--max-nodes", type=int, default=SearchConfig.max_nodes)
    add("catalog", "list built-in arrangements, or describe one with --catalog")
    return parser


def _digest(a_text: str | None) -> str | None:
    if a_text is None:
        return None
    return "sha256:" + hashlib.sha256(a_text.encode("utf-8")).hexdigest()


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "catalog":
            if args.file:
                raise UsageError("catalog takes --catalog <name>, not --file")
            res, lines, code, text = _run_catalog(args)
            source = f"catalog:{args.catalog}" if args.catalog else None
        else:
            a, source = _load(args)
            text = serialize(a)
            res, lines, code = COMMANDS[args.command](args, a)
    except (UsageError, ArrangementError, CatalogError, OSError, ValueError, TypeError) as exc:
        print(f"arrcover {args.command}: error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        report = {
            "schema": SCHEMA,
            "command": args.command,
            "input": {"source": source, "digest": _digest(text)},
            "version": __version__,
            "result": res,
        }
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
