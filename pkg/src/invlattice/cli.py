"""Command-line interface: ``invlattice compute | verify-paper | eval-expr``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from .exprparse import ExprSyntaxError, UnknownSymbolError, laurent_terms, parse_polynomial
from .invariants import (InvariantConfig, InvariantReport, a_type_formula, c2, compute_report,
                         n_value, q_coordinates)
from .isogeny import GroupSpec, SpecError, lattice_for
from .rootsystem import DEFAULT_ORBIT_CAP, ResourceCapError, long_coroot, weyl_orbit
from .truncring import TruncRing, evaluate_polynomial, to_sym2

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
SCHEMA = 1


def data_path(name: str) -> Path:
    return Path(str(resources.files("invlattice") / "data" / name))


@dataclass
class RunConfig:
    groups: list[str] = field(default_factory=list)
    trunc: int = 5
    dec_bound: int = 4
    orbit_cap: int = DEFAULT_ORBIT_CAP
    fmt: str = "json"
    out: Path | None = None

    def __post_init__(self) -> None:
        if self.trunc < 3:
            raise ValueError("truncation order must be at least 3")
        if self.dec_bound < 2:
            raise ValueError("dec bound must be at least 2")

    @property
    def invariant_config(self) -> InvariantConfig:
        return InvariantConfig(self.trunc, self.dec_bound, self.orbit_cap)


# ---------------------------------------------------------------- compute

def cmd_compute(config: RunConfig) -> tuple[dict, int]:
    reports, errors, timing = [], [], {}
    code = EXIT_OK
    for text in config.groups:
        t0 = time.perf_counter()
        try:
            rep = compute_report(GroupSpec.parse(text), config.invariant_config)
        except SpecError as exc:
            errors.append({"spec": text, "error": "spec", "message": str(exc)})
            code = max(code, EXIT_USAGE)
            continue
        except ResourceCapError as exc:
            errors.append({"spec": text, "error": "resource", "message": str(exc)})
            code = EXIT_CAP
            continue
        reports.append(rep.to_dict())
        timing[text] = round(time.perf_counter() - t0, 4)
    doc = {
        "schema": SCHEMA,
        "tool": "invlattice",
        "version": __version__,
        "config": {"trunc": config.trunc, "dec_bound": config.dec_bound,
                   "orbit_cap": config.orbit_cap},
        "reports": reports,
        "errors": errors,
        "timing": timing,
    }
    return doc, code


def _q_text(rows: list[list[int]] | None) -> str:
    if rows is None:
        return "n/a"
    if not rows:
        return "0"
    if len(rows[0]) == 1:
        return f"{rows[0][0]}q"
    return ";".join("(" + ",".join(map(str, r)) + ")" for r in rows)


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["spec", "sym2_w", "dec", "over_sdec", "f_bound", "ind",
                    "sdec_equals_dec_certified", "bounds_only"])
        for r in doc["reports"]:
            q = r["q_multiples"]
            w.writerow([r["spec"], _q_text(q["sym2_w"]), _q_text(q["dec"]), _q_text(q["over_sdec"]),
                        _q_text(q["f_bound"]), r["ind"]["text"],
                        r["flags"]["sdec_equals_dec_certified"], r["flags"]["bounds_only"]])
        return buf.getvalue()
    lines = []
    for r in doc["reports"]:
        q = r["q_multiples"]
        tors = r["ch2_torsion"]
        ch2 = (tors["exact"]["text"] if "exact" in tors else
               f"between {tors['bounds']['by_bound']['text']} and {tors['bounds']['by_dec']['text']}")
        lines.append(f"{r['spec']}  (C* = {r['center']['text']}, N = {r['trunc']})")
        lines.append(f"  Sym2(T*)^W = {_q_text(q['sym2_w'])}   Dec = {_q_text(q['dec'])}   "
                     f"SDec bound = {_q_text(q['over_sdec'])}   f-bound = {_q_text(q['f_bound'])}")
        lines.append(f"  ind = {r['ind']['text']}   CH2 torsion = {ch2}   "
                     f"certified = {r['flags']['sdec_equals_dec_certified']}")
    for e in doc["errors"]:
        lines.append(f"{e['spec']}: {e['error']} error: {e['message']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- verify-paper

def _simple_report(spec: str, config: InvariantConfig, cache: dict) -> InvariantReport:
    key = (spec, config)
    if key not in cache:
        cache[key] = compute_report(spec, config)
    return cache[key]


def _q_of(report: InvariantReport, name: str):
    rows = report.q_multiples[name]
    if rows is None or len(rows) != 1 or len(rows[0]) != 1:
        return rows
    return rows[0][0]


def check_fixture(fx: dict, config: InvariantConfig, cache: dict):
    """Return the computed value for one fixture entry."""
    kind = fx["kind"]
    if kind in ("dec", "sdec_bound", "sym2_w"):
        name = {"dec": "dec", "sdec_bound": "over_sdec", "sym2_w": "sym2_w"}[kind]
        return _q_of(_simple_report(fx["group"], config, cache), name)
    if kind == "ind":
        return list(_simple_report(fx["group"], config, cache).ind.factors)
    if kind == "certified":
        return _simple_report(fx["group"], config, cache).sdec_equals_dec_certified
    if kind == "orbit_sizes":
        spec = GroupSpec.parse(fx["group"])
        rs = spec.root_system()
        return [len(weyl_orbit(rs, rs.fundamental_weight(i), config.orbit_cap)) for i in fx["weights"]]
    if kind == "n_values":
        from .invariants import orbit_terms
        rs = GroupSpec.parse(fx["group"]).root_system()
        cor = long_coroot(rs, 0)
        return [n_value(orbit_terms(rs, rs.fundamental_weight(i), config.orbit_cap), cor)
                for i in fx["weights"]]
    if kind == "witness_c2":
        lines = _load_lines(fx)[: fx.get("count")]
        return [r["q"] for r in eval_expressions(lines, _load_symbols(fx), fx["group"])]
    if kind == "witness_multiples":
        vals = [r["q"] for r in eval_expressions(_load_lines(fx), _load_symbols(fx), fx["group"])]
        m = fx["modulus"]
        return all(v is not None and v % m == 0 for v in vals)
    if kind == "a_formula":
        return list(a_type_formula(fx["n"], fx["m"]).factors)
    raise ValueError(f"unknown fixture kind {kind!r}")


def _load_lines(fx: dict) -> list[str]:
    path = data_path(fx["file"]) if not Path(fx["file"]).is_absolute() else Path(fx["file"])
    return [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]


def _load_symbols(fx: dict) -> dict:
    path = data_path(fx["symbols"]) if not Path(fx["symbols"]).is_absolute() else Path(fx["symbols"])
    return json.loads(path.read_text())


def cmd_verify_paper(fixtures: list[dict], config: InvariantConfig, out=sys.stdout) -> int:
    if not fixtures:
        print("warning: empty fixture table, nothing to verify", file=out)
        return EXIT_OK
    cache: dict = {}
    failed = 0
    for fx in fixtures:
        try:
            got = check_fixture(fx, config, cache)
        except ResourceCapError as exc:
            print(f"FAIL {fx['id']}: resource cap: {exc}", file=out)
            failed += 1
            continue
        want = fx["expected"]
        if got == want:
            print(f"PASS {fx['id']}", file=out)
        else:
            failed += 1
            print(f"FAIL {fx['id']}: expected {json.dumps(want)}, got {json.dumps(got)}", file=out)
    print(f"{len(fixtures) - failed}/{len(fixtures)} fixtures pass", file=out)
    return EXIT_MISMATCH if failed else EXIT_OK


# ---------------------------------------------------------------- eval-expr

def eval_expressions(lines: Sequence[str], symbols: dict, group: str, trunc: int = 3) -> list[dict]:
    """c2 of each expression, via the ring (to_sym2) and via the c2 formula."""
    spec = GroupSpec.parse(group)
    rs = spec.root_system()
    lattice_for(spec, rs)
    ring = TruncRing.for_root_system(rs, max(trunc, 3))
    out = []
    for text in lines:
        poly = parse_polynomial(text)
        terms = laurent_terms(poly, symbols)
        by_formula = c2(terms, rs.rank) if terms else [0] * (rs.rank * (rs.rank + 1) // 2)
        by_ring = to_sym2(ring, evaluate_polynomial(ring, poly, symbols))
        if by_formula != by_ring:
            raise ArithmeticError(f"c2 paths disagree on {text!r}")
        qc = q_coordinates(rs, by_formula)
        out.append({"expr": text, "sym2": by_formula,
                    "q": qc[0] if qc is not None and len(qc) == 1 else qc})
    return out


# ---------------------------------------------------------------- argument parsing

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="invlattice", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--trunc", type=int, default=5, choices=range(3, 8), metavar="{3..7}",
                        help="truncation order N of Z[Lambda]/I^N (default 5)")
        sp.add_argument("--dec-bound", type=int, default=4)
        sp.add_argument("--orbit-cap", type=int, default=DEFAULT_ORBIT_CAP)
        sp.add_argument("--out", type=Path)

    c = sub.add_parser("compute", help="compute the invariant lattices of group specs")
    c.add_argument("--group", action="append", default=[], help="group spec, repeatable")
    c.add_argument("--catalog", type=Path, help="JSON list of group specs")
    c.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common(c)

    v = sub.add_parser("verify-paper", help="check the shipped fixture table")
    v.add_argument("--fixtures", type=Path, help="fixture table (default: shipped)")
    common(v)

    e = sub.add_parser("eval-expr", help="c2 of polynomials in named exponentials")
    e.add_argument("--file", type=Path, help="one expression per line")
    e.add_argument("--expr", action="append", default=[])
    e.add_argument("--symbols", type=Path, help="JSON object symbol -> Dynkin coordinates")
    e.add_argument("--group", default="D4:adj")
    e.add_argument("--format", choices=["json", "text"], default="text")
    common(e)
    return p


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.dec_bound < 2:
            raise ValueError("--dec-bound must be at least 2")
        if args.command == "compute":
            groups = list(args.group)
            base = None
            if args.catalog:
                groups += json.loads(args.catalog.read_text())
                base = args.catalog.parent
            if not groups:
                parser.error("give at least one --group or a --catalog")
            config = RunConfig(groups, args.trunc, args.dec_bound, args.orbit_cap, args.format, args.out)
            doc, code = cmd_compute(config) if base is None else _compute_in(config, base)
            _emit(render(doc, args.format), args.out)
            return code
        if args.command == "verify-paper":
            path = args.fixtures or data_path("fixtures.json")
            fixtures = json.loads(path.read_text())
            buf = io.StringIO()
            code = cmd_verify_paper(fixtures, InvariantConfig(args.trunc, args.dec_bound, args.orbit_cap), buf)
            _emit(buf.getvalue(), args.out)
            return code
        if args.command == "eval-expr":
            lines = list(args.expr)
            if args.file:
                lines += [ln.strip() for ln in args.file.read_text().splitlines() if ln.strip()]
            if not lines:
                parser.error("give --expr or --file")
            symbols = json.loads((args.symbols or data_path("pgo8_symbols.json")).read_text())
            rows = eval_expressions(lines, symbols, args.group, args.trunc)
            if args.format == "json":
                text = json.dumps({"schema": SCHEMA, "group": args.group, "results": rows},
                                  indent=2) + "\n"
            else:
                text = "".join(f"{r['q'] if r['q'] is not None else r['sym2']}"
                               f"{'q' if isinstance(r['q'], int) else ''}\t{r['expr']}\n" for r in rows)
            _emit(text, args.out)
            return EXIT_OK
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except (SpecError, ExprSyntaxError, UnknownSymbolError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    return EXIT_USAGE


def _compute_in(config: RunConfig, base: Path) -> tuple[dict, int]:
    """Run a catalog whose explicit lattice files are relative to the catalog."""
    import os
    old = Path.cwd()
    os.chdir(base)
    try:
        return cmd_compute(config)
    finally:
        os.chdir(old)


if __name__ == "__main__":
    sys.exit(main())
