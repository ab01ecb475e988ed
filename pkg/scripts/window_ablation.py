#!/usr/bin/env python3
"""Inner-window length ablation: PUPE for window lengths {2n, 3n, 4n}.

The 2-packet inner window is expected to do best (shorter windows localize
interference before cancellation). Writes one CSV per window length plus a
combined summary to stdout.
"""

import argparse
import dataclasses
import pathlib

from aura import config, harness
from aura.config import SystemConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ka", type=float, default=5.0)
    ap.add_argument("--ebn0", type=float, default=4.0, help="operating point, dB")
    ap.add_argument("--lens", default="2,3,4", help="window lengths in packets")
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    base = dataclasses.replace(SystemConfig(), K_a=args.ka,
                               u=max(1, round(args.ka / 2)))
    for w in (int(x) for x in args.lens.split(",")):
        cfg = dataclasses.replace(config.with_eb_n0(base, args.ebn0),
                                  inner_len_packets=w)
        config.validate(cfg)
        results = harness.run_trials(cfg, args.seed, args.trials)
        point = harness.aggregate(results, args.ebn0)
        sweep = harness.SweepResult(config=config.to_dict(cfg), points=[point])
        out = outdir / f"window_{w}n_ka{args.ka:g}.csv"
        harness.write_csv(harness.sweep_rows(cfg, sweep, args.seed), out)
        print(f"window {w}n: pupe={point.mean_pupe:.5f} "
              f"[{point.ci95_lo:.5f}, {point.ci95_hi:.5f}] -> {out}")


if __name__ == "__main__":
    main()
