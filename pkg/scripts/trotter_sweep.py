"""First-order Trotter error versus time step, written as CSV for plotting.

    python3 scripts/trotter_sweep.py --encoding VC --lattice 2x2 --out vc_sweep.csv
"""
import argparse

import numpy as np

from flowtrotter.config import parse_lattice
from flowtrotter.exact import trotter_error_sweep, write_sweep_csv
from flowtrotter.lattice import Lattice
from flowtrotter.trotter import CompilationPlan


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--encoding", default="VC")
    ap.add_argument("--lattice", default="2x2")
    ap.add_argument("--bc", default="open")
    ap.add_argument("--strategy", default="line")
    ap.add_argument("--j", type=float, default=1.0)
    ap.add_argument("--dt-min", type=float, default=0.01)
    ap.add_argument("--dt-max", type=float, default=0.4)
    ap.add_argument("--points", type=int, default=12)
    ap.add_argument("--out", default="trotter_sweep.csv")
    args = ap.parse_args(argv)
    w, h = parse_lattice(args.lattice)
    dts = np.geomspace(args.dt_min, args.dt_max, args.points)
    rows = trotter_error_sweep(CompilationPlan(args.encoding, args.strategy, J=args.j),
                               Lattice(w, h, args.bc), [float(d) for d in dts])
    write_sweep_csv(rows, args.out)
    slope = np.polyfit(np.log([d for d, _ in rows]), np.log([e for _, e in rows]), 1)[0]
    print(f"wrote {len(rows)} rows to {args.out}; log-log slope {slope:.3f}")


if __name__ == "__main__":
    main()
