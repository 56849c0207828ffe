"""Command-line front end: figure sweeps and Monte-Carlo runs to CSV/JSON files.

Subcommands: ``fisher``, ``crlb``, ``crlb-pointing``, ``montecarlo``. Each
reads an optional YAML scenario (``--config``), optionally layered on a named
figure profile (``--profile fig5`` .. ``fig10``), and writes a table whose
metadata echoes the fully resolved configuration. Exit codes: 0 success,
2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import json
import math
import sys
import warnings
from dataclasses import asdict
from typing import Dict, List, Optional, Sequence, Tuple

import click
import yaml

from . import __version__
from .beam import beamwidth
from .config import ConfigError, PROFILES, ScenarioConfig, apply_profile
from .estimator import monte_carlo
from .fisher import SweepResult, crlb, crlb_location_only, fisher_information
from .focal_plane import NoiseModel
from .numerics import DomainError
from .pointing import PointingChannel, crlb_general

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_SIGMA_P_GATE = 0.1


def _resolve(config_path: Optional[str], profile: Optional[str],
             seed: Optional[int]) -> ScenarioConfig:
    data: Dict = {}
    if config_path is not None:
        with open(config_path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh) or {}
    if profile is not None:
        data = apply_profile(data, profile)
    cfg = ScenarioConfig.from_dict(data)
    if seed is not None:
        cfg.mc.seed = seed
    cfg.validate()
    return cfg


def _metadata(cfg: ScenarioConfig, generator: str, profile: Optional[str],
              extra_warnings: Sequence[str] = ()) -> Dict:
    meta: Dict = {
        "tool": "aoatrack",
        "version": __version__,
        "generator": generator,
        "config": cfg.to_dict(),
    }
    if profile is not None:
        meta["profile"] = profile
    if extra_warnings:
        meta["warnings"] = list(extra_warnings)
    return meta


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def _json_safe(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def write_sweep(result: SweepResult, out: str, fmt: str) -> None:
    if fmt == "json":
        payload = {
            "metadata": result.metadata,
            "columns": list(result.columns),
            "rows": [[_json_safe(v) for v in row] for row in result.rows],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"# {key}: {json.dumps(result.metadata[key], sort_keys=True)}"
                 for key in sorted(result.metadata)]
        lines.append(",".join(result.columns))
        lines.extend(",".join(_fmt(v) for v in row) for row in result.rows)
        text = "\n".join(lines) + "\n"
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _run(cfg_builder, runner) -> None:
    """Shared error handling: config problems exit 2, numerical problems exit 3."""
    try:
        cfg = cfg_builder()
    except (ConfigError, FileNotFoundError, yaml.YAMLError) as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    try:
        runner(cfg)
    except (DomainError, ArithmeticError) as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)


def common_options(fn):
    fn = click.option("--config", "config_path", type=click.Path(), default=None,
                      help="YAML scenario file; omitted fields use defaults.")(fn)
    fn = click.option("--profile", type=click.Choice(sorted(PROFILES)), default=None,
                      help="Named figure preset applied under the config file.")(fn)
    fn = click.option("--out", required=True, type=click.Path(),
                      help="Output file path.")(fn)
    fn = click.option("--seed", type=int, default=None,
                      help="Override the Monte-Carlo seed.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                      default="csv", help="Output format for sweep tables.")(fn)
    return fn


@click.group()
@click.version_option(version=__version__, prog_name="aoatrack")
def main() -> None:
    """Angle-of-arrival information bounds for Gaussian-beam tracking."""


@main.command("fisher")
@common_options
def cmd_fisher(config_path, profile, out, seed, fmt) -> None:
    """Energy-only Fisher information vs angle, one curve per beamwidth."""
    def runner(cfg: ScenarioConfig) -> None:
        grid = cfg.theta_grid()
        g = cfg.geometry()
        n = cfg.noise_model()
        rows: List[Tuple[float, ...]] = []
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            for phi in cfg.beamwidth_list or [None]:
                p = cfg.beam_params(beamwidth=phi)
                phi_val = beamwidth(p)
                for theta in grid:
                    fb = fisher_information(p, g, n, theta)
                    rows.append((theta, phi_val, fb.energy))
        result = SweepResult(columns=("theta_rad", "phi_rad", "fisher_energy"),
                             rows=rows,
                             metadata=_metadata(cfg, "fisher", profile,
                                                _warning_messages(caught)))
        write_sweep(result, out, fmt)

    _run(lambda: _resolve(config_path, profile, seed), runner)


@main.command("crlb")
@common_options
def cmd_crlb(config_path, profile, out, seed, fmt) -> None:
    """Joint and location-only CRLB vs angle, grouped by beamwidth or detector count."""
    def runner(cfg: ScenarioConfig) -> None:
        grid = cfg.theta_grid()
        n = cfg.noise_model()
        rows: List[Tuple[float, ...]] = []
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            for phi in cfg.beamwidth_list or [None]:
                p = cfg.beam_params(beamwidth=phi)
                phi_val = beamwidth(p)
                for m_count in cfg.detector_count_list or [None]:
                    g = cfg.geometry(detector_count=m_count)
                    for theta in grid:
                        rows.append((theta, phi_val, g.detector_count,
                                     crlb(p, g, n, theta),
                                     crlb_location_only(p, g, n, theta)))
        result = SweepResult(
            columns=("theta_rad", "phi_rad", "detector_count",
                     "crlb_joint", "crlb_location_only"),
            rows=rows,
            metadata=_metadata(cfg, "crlb", profile, _warning_messages(caught)))
        write_sweep(result, out, fmt)

    _run(lambda: _resolve(config_path, profile, seed), runner)


@main.command("crlb-pointing")
@common_options
def cmd_crlb_pointing(config_path, profile, out, seed, fmt) -> None:
    """CRLB vs angle for several pointing-jitter levels (sigma_p = 0 included)."""
    def runner(cfg: ScenarioConfig) -> None:
        grid = cfg.theta_grid()
        p = cfg.beam_params()
        g = cfg.geometry()
        phi_val = beamwidth(p)
        sigma_ps = list(cfg.sigma_p_list) if cfg.sigma_p_list is not None \
            else [cfg.noise.sigma_p]
        if 0.0 not in sigma_ps:
            sigma_ps.insert(0, 0.0)
        extra = [f"sigma_p = {sp:g} rad exceeds {_SIGMA_P_GATE:g} x beamwidth "
                 f"({phi_val:g} rad)" for sp in sigma_ps if sp > _SIGMA_P_GATE * phi_val]
        rows: List[Tuple[float, ...]] = []
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            for sp in sigma_ps:
                n = cfg.noise_model(sigma_p=sp)
                if sp == 0.0:
                    for theta in grid:
                        rows.append((theta, sp, crlb(p, g, n, theta)))
                else:
                    ch = PointingChannel(p, g, n)
                    for theta in grid:
                        rows.append((theta, sp, crlb_general(ch, theta)))
        result = SweepResult(
            columns=("theta_rad", "sigma_p_rad", "crlb"),
            rows=rows,
            metadata=_metadata(cfg, "crlb-pointing", profile,
                               extra + _warning_messages(caught)))
        write_sweep(result, out, fmt)

    _run(lambda: _resolve(config_path, profile, seed), runner)


@main.command("montecarlo")
@common_options
def cmd_montecarlo(config_path, profile, out, seed, fmt) -> None:
    """Monte-Carlo ML estimation across the theta grid; always writes JSON."""
    def runner(cfg: ScenarioConfig) -> None:
        p = cfg.beam_params()
        g = cfg.geometry()
        n = cfg.noise_model()
        reports = []
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            for theta in cfg.theta_grid():
                report = monte_carlo(p, g, n, theta, cfg.mc.trials, cfg.mc.seed)
                reports.append({k: _json_safe(v) for k, v in asdict(report).items()})
        payload = {
            "metadata": _metadata(cfg, "montecarlo", profile, _warning_messages(caught)),
            "reports": reports,
        }
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")

    _run(lambda: _resolve(config_path, profile, seed), runner)


def _warning_messages(caught) -> List[str]:
    seen: List[str] = []
    for w in caught:
        msg = str(w.message)
        if msg not in seen:
            seen.append(msg)
    return seen


if __name__ == "__main__":
    main()
