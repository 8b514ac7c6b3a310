"""Smallest truncation order N at which over_sdec meets Dec, per catalog group."""
import argparse
import json
import time

from invlattice.cli import data_path
from invlattice.invariants import dec_group, over_sdec, q_multiple
from invlattice.isogeny import GroupSpec, lattice_for


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--catalog", default=str(data_path("catalog.json")))
    ap.add_argument("--max-trunc", type=int, default=5)
    ap.add_argument("--group", action="append", help="restrict to these groups")
    args = ap.parse_args()

    specs = args.group or json.loads(open(args.catalog).read())
    needed: dict[int | None, list[str]] = {}
    for text in specs:
        spec = GroupSpec.parse(text)
        rs = spec.root_system()
        lat = lattice_for(spec, rs)
        dec = dec_group(rs, lat)
        t0 = time.perf_counter()
        trail, first = [], None
        for N in range(3, args.max_trunc + 1):
            bound = over_sdec(rs, lat, N)
            trail.append(str(q_multiple(rs, bound)))
            if bound == dec:
                first = N
                break
        needed.setdefault(first, []).append(text)
        print(f"{text:<12} Dec={q_multiple(rs, dec)}q  bounds " + " > ".join(trail)
              + f"  N*={first}  ({time.perf_counter() - t0:.1f} s)")
    print()
    for N in sorted(needed, key=lambda k: (k is None, k or 0)):
        label = f"N={N}" if N else f"not reached by N={args.max_trunc}"
        print(f"{label}: {len(needed[N])} groups" + ("" if N == 3 else ": " + ", ".join(needed[N])))


if __name__ == "__main__":
    main()
