"""Command-line interface for the simulation harness."""

from __future__ import annotations

import dataclasses
import sys

import click

from . import config as config_mod, harness


def _parse_grid(spec: str):
    try:
        lo, hi, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise click.BadParameter(f"expected lo:hi:step, got {spec!r}")
    return lo, hi, step


def _load(config_path: str, detector: str | None) -> config_mod.SystemConfig:
    cfg = config_mod.load_config(config_path)
    if detector is not None and detector != cfg.detector_mode:
        n_p = 256 if detector == "preamble" else 0
        cfg = dataclasses.replace(cfg, detector_mode=detector, n_p=n_p)
        config_mod.validate(cfg)
    return cfg


detector_option = click.option("--detector", type=click.Choice(["energy", "preamble"]),
                               default=None, help="Override the detector front end "
                               "(preamble mode defaults to n_p=256).")
workers_option = click.option("--workers", type=int, default=1, show_default=True)
seed_option = click.option("--seed", type=int, default=None,
                           help="Master seed (defaults to the config's seed).")


@click.group()
def main():
    """Asynchronous unsourced random access link simulator."""


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--trials", type=int, required=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@seed_option
@detector_option
@workers_option
def run(config_path, trials, out_path, seed, detector, workers):
    """Run trials at the config's own operating point and write one CSV row."""
    cfg = _load(config_path, detector)
    master_seed = cfg.seed if seed is None else seed
    results = harness.run_trials(cfg, master_seed, trials, workers)
    point = harness.aggregate(results, config_mod.eb_n0_db(cfg))
    sweep = harness.SweepResult(config=config_mod.to_dict(cfg), points=[point])
    harness.write_csv(harness.sweep_rows(cfg, sweep, master_seed), out_path)
    harness.write_metadata(cfg, str(out_path) + ".meta.json")
    click.echo(f"pupe={point.mean_pupe:.6g} [{point.ci95_lo:.6g}, {point.ci95_hi:.6g}] "
               f"arrivals={point.arrivals} -> {out_path}")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--ebn0", "grid", required=True, help="lo:hi:step in dB")
@click.option("--trials", type=int, required=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@seed_option
@detector_option
@workers_option
def sweep(config_path, grid, trials, out_path, seed, detector, workers):
    """PUPE versus Eb/N0 sweep."""
    cfg = _load(config_path, detector)
    master_seed = cfg.seed if seed is None else seed
    lo, hi, step = _parse_grid(grid)
    ebn0s = []
    x = lo
    while x <= hi + 1e-9:
        ebn0s.append(x)
        x += step
    result = harness.run_sweep(cfg, ebn0s, trials, master_seed, workers)
    harness.write_csv(harness.sweep_rows(cfg, result, master_seed), out_path)
    harness.write_metadata(cfg, str(out_path) + ".meta.json")
    for p in result.points:
        click.echo(f"{p.eb_n0_db:6.2f} dB: pupe={p.mean_pupe:.6g} "
                   f"[{p.ci95_lo:.6g}, {p.ci95_hi:.6g}] ({p.arrivals} arrivals)")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--eps", type=float, default=0.05, show_default=True)
@click.option("--ebn0", "grid", required=True, help="lo:hi:step in dB")
@click.option("--trials", type=int, required=True)
@click.option("--out", "out_path", default=None, type=click.Path())
@seed_option
@detector_option
@workers_option
def minebn0(config_path, eps, grid, trials, out_path, seed, detector, workers):
    """Smallest Eb/N0 on the grid meeting the target PUPE."""
    cfg = _load(config_path, detector)
    master_seed = cfg.seed if seed is None else seed
    found, result = harness.find_min_eb_n0(cfg, eps, _parse_grid(grid), trials,
                                           master_seed, workers)
    if out_path:
        harness.write_csv(harness.sweep_rows(cfg, result, master_seed), out_path)
        harness.write_metadata(cfg, str(out_path) + ".meta.json",
                               extra={"target_eps": eps, "min_eb_n0_db": found})
    if found is None:
        click.echo("not found: no grid point meets the target")
        sys.exit(1)
    click.echo(f"min Eb/N0 = {found:g} dB (target pupe <= {eps:g})")


@main.command("ablate-window")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--lens", default="2,3,4", show_default=True,
              help="Comma-separated inner window lengths, in packets.")
@click.option("--ebn0", type=float, required=True, help="Operating Eb/N0 in dB.")
@click.option("--trials", type=int, required=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@seed_option
@detector_option
@workers_option
def ablate_window(config_path, lens, ebn0, trials, out_path, seed, detector, workers):
    """PUPE at one Eb/N0 for several inner window lengths."""
    cfg = _load(config_path, detector)
    master_seed = cfg.seed if seed is None else seed
    rows = []
    for w in (int(x) for x in lens.split(",")):
        cfg_w = dataclasses.replace(cfg, inner_len_packets=w)
        config_mod.validate(cfg_w)
        cfg_w = config_mod.with_eb_n0(cfg_w, ebn0)
        results = harness.run_trials(cfg_w, master_seed, trials, workers)
        point = harness.aggregate(results, ebn0)
        rows.extend(harness.sweep_rows(
            cfg_w, harness.SweepResult(config=config_mod.to_dict(cfg_w),
                                       points=[point]), master_seed))
        click.echo(f"inner={w}n: pupe={point.mean_pupe:.6g} "
                   f"[{point.ci95_lo:.6g}, {point.ci95_hi:.6g}]")
    harness.write_csv(rows, out_path)
    harness.write_metadata(cfg, str(out_path) + ".meta.json")


if __name__ == "__main__":
    main()
