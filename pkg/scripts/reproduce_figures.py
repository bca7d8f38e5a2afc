#!/usr/bin/env python3
"""Grid data behind the standard figures for the d=5 lattice.

Emits, per figure kind, CSV files plus a JSON schema sidecar under
results/figures/<kind>/.  The contour grids are kept moderate; raise
--gamma-points / --t-points for denser maps.
"""

import argparse
import json
import sys
from pathlib import Path

from qwsearch.cli import main as qwsearch_main

P_VALUES = [0.91, 0.5, 0.4, 0.1]

SWEEPS = {
    "overlaps": {"sweep.gamma_points": 600},
    "contour": {"sweep.gamma_points": 121, "sweep.t_points": 201},
    "timeseries": {},
    "volume": {"volume.p_min": 0.05, "volume.p_max": 0.95, "volume.p_points": 91},
}


def run(kinds: list[str], out_dir: str, threads: int) -> int:
    for kind in kinds:
        out = Path(out_dir) / kind
        out.mkdir(parents=True, exist_ok=True)
        config = out / "config.json"
        payload = {
            "graph.family": "path-power",
            "graph.p": P_VALUES,
            "graph.d": 5,
            "target.vertex": "corner",
            "output.path": str(out),
            "figure.kind": kind,
        }
        payload.update(SWEEPS[kind])
        config.write_text(json.dumps(payload, indent=2))
        code = qwsearch_main(
            ["figures", "--config", str(config), "--threads", str(threads)]
        )
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--figure", choices=sorted(SWEEPS), action="append",
                        help="repeatable; default is all four kinds")
    parser.add_argument("--out", default="results/figures")
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()
    sys.exit(run(args.figure or sorted(SWEEPS), args.out, args.threads))
