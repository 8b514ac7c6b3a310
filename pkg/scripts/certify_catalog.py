"""Sweep a catalog and report, per group, whether the truncated SDec bound meets Dec."""
import argparse
import json
import time

from invlattice.cli import data_path
from invlattice.invariants import InvariantConfig, compute_report


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--catalog", default=str(data_path("catalog.json")))
    ap.add_argument("--trunc", type=int, default=InvariantConfig().trunc)
    ap.add_argument("--json", help="also write the reports here")
    args = ap.parse_args()

    config = InvariantConfig(trunc=args.trunc)
    specs = json.loads(open(args.catalog).read())
    reports, uncertified = [], []
    t_all = time.perf_counter()
    print(f"{'group':<12} {'Sym2^W':>7} {'Dec':>5} {'bound':>5} {'f':>5}  ind       certified  secs")
    for text in specs:
        t0 = time.perf_counter()
        rep = compute_report(text, config)
        q = rep.q_multiples
        cell = lambda name: (str(q[name][0][0]) if q[name] and len(q[name][0]) == 1 else "-")
        ok = rep.sdec_equals_dec_certified
        if not ok:
            uncertified.append(text)
        print(f"{text:<12} {cell('sym2_w'):>7} {cell('dec'):>5} {cell('over_sdec'):>5} {cell('f_bound'):>5}"
              f"  {str(rep.ind):<9} {str(ok):<10} {time.perf_counter() - t0:.1f}")
        reports.append(rep.to_dict())
    print(f"\n{len(specs) - len(uncertified)}/{len(specs)} certified at N={args.trunc}"
          f" in {time.perf_counter() - t_all:.0f} s")
    if uncertified:
        print("not certified:", ", ".join(uncertified))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=2)


if __name__ == "__main__":
    main()
