#!/usr/bin/env python3
"""Produce the four run-time scaling figures from CLI sweeps.

Figure 1: global protocol, openness groups omega in {1, 0.9, 0.5}, five
          success-probability targets per group (15 curves).
Figure 2: the same groupings for the local protocol.
Figure 3: global protocol at p = 0.5 for omega = 0, 0.1, ..., 1 (11 curves).
Figure 4: the same for the local protocol.

Sweep CSVs land in <outdir>/data, figure specs and SVGs in <outdir>. The
renderer is the TypeScript package under frontend/ (build it first with
`npm run build`). N grids and the p tolerance are reduced relative to the
published plots so the whole script stays at desk scale; pass a larger
--n-max to push the asymptotes further.
"""

import argparse
import json
import subprocess
import sys
from pathlib import Path

from adiasearch.cli import main as cli_main

REPO = Path(__file__).resolve().parent.parent
RENDERER = REPO / "frontend" / "dist" / "render.js"

GUIDES = [{"slope": 0.5, "label": "slope 1/2"},
          {"slope": 1.0, "label": "slope 1"},
          {"slope": 1.5, "label": "slope 3/2"}]


def run_sweep(out: Path, schedule: str, omega: float, p: float, args) -> Path:
    if not out.exists() or args.force:
        code = cli_main(["sweep", "--n-min", str(args.n_min),
                         "--n-max", str(args.n_max), "--omega", str(omega),
                         "--sigma", "1", "--schedule", schedule,
                         "--p-target", str(p), "--p-tol", str(args.p_tol),
                         "--jobs", str(args.jobs), "--out", str(out)])
        if code != 0:
            raise SystemExit(f"sweep failed ({code}): {out.name}")
    return out


def render(spec_path: Path, out_path: Path) -> None:
    proc = subprocess.run(["node", str(RENDERER), "--spec", str(spec_path),
                           "--out", str(out_path)])
    if proc.returncode != 0:
        raise SystemExit(f"render failed for {spec_path.name}")
    print(f"wrote {out_path}")


def grouped_by_p(outdir: Path, datadir: Path, schedule: str, num: int, args) -> None:
    curves = []
    for omega in (1.0, 0.9, 0.5):
        for p in (0.4, 0.5, 0.6, 0.7, 0.8):
            csv = run_sweep(datadir / f"{schedule}_w{omega}_p{p}.csv",
                            schedule, omega, p, args)
            curves.append({"path": str(csv), "label": f"omega={omega}, p={p}"})
    spec = {"title": f"{schedule} protocol: run time vs list length",
            "curves": curves, "guides": GUIDES}
    spec_path = outdir / f"fig{num}.json"
    spec_path.write_text(json.dumps(spec, indent=2), encoding="utf-8")
    render(spec_path, outdir / f"fig{num}.svg")


def grouped_by_omega(outdir: Path, datadir: Path, schedule: str, num: int, args) -> None:
    curves = []
    for tenths in range(11):
        omega = round(tenths / 10, 1)
        csv = run_sweep(datadir / f"{schedule}_w{omega}_p0.5.csv",
                        schedule, omega, 0.5, args)
        curves.append({"path": str(csv), "label": f"omega={omega}"})
    spec = {"title": f"{schedule} protocol at p=0.5: openness interpolation",
            "curves": curves, "guides": GUIDES}
    spec_path = outdir / f"fig{num}.json"
    spec_path.write_text(json.dumps(spec, indent=2), encoding="utf-8")
    render(spec_path, outdir / f"fig{num}.svg")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default=str(REPO / "figures"))
    parser.add_argument("--n-min", type=int, default=16)
    parser.add_argument("--n-max", type=int, default=1024)
    parser.add_argument("--p-tol", type=float, default=5e-3)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--force", action="store_true",
                        help="recompute sweeps even if the CSV exists")
    args = parser.parse_args()

    if not RENDERER.exists():
        print("frontend renderer missing; run `npm install && npm run build` "
              "in frontend/ first", file=sys.stderr)
        return 1
    outdir = Path(args.outdir)
    datadir = outdir / "data"
    datadir.mkdir(parents=True, exist_ok=True)

    grouped_by_p(outdir, datadir, "global", 1, args)
    grouped_by_p(outdir, datadir, "local", 2, args)
    grouped_by_omega(outdir, datadir, "global", 3, args)
    grouped_by_omega(outdir, datadir, "local", 4, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
