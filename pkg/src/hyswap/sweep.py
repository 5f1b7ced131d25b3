"""Parameter sweeps to CSV, with a flat key=value config format.

Example config::

    # entanglement and success probability against channel loss
    schemes = dv, he-spd, he-ho
    alpha_values = 0.3, 0.7
    one_minus_T_range = 0:1:0.05
    T_prime = 1.0
    cutoff = 12
    homodyne.x_max = 6.0
    homodyne.points = 201
    output_path = sweep.csv
    parallelism = 1

``T_values`` may be given instead of ``one_minus_T_range``.  Rows are
emitted in config order (schemes outermost, then alpha, then T) and the
output is byte-identical for any worker count.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .closed_form import closed_form
from .protocols import (
    default_cutoff,
    dv_swap,
    he_swap_homodyne,
    he_swap_spd,
)
from .optics import homodyne_grid

__all__ = ["CSV_COLUMNS", "SCHEME_ALIASES", "SweepConfig", "ConfigError",
           "parse_config", "evaluate_point", "run_sweep", "format_value"]

CSV_COLUMNS = [
    "scheme", "alpha", "T", "T_prime", "cutoff",
    "p_sim", "E_sim", "p_closed", "E_closed", "err_p", "err_E",
]

# CLI vocabulary -> internal scheme names
SCHEME_ALIASES = {"dv": "dv", "he-spd": "he_spd", "he-ho": "he_ho"}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    schemes: tuple[str, ...]
    alpha_values: tuple[float, ...]
    T_values: tuple[float, ...]
    T_prime: float
    cutoff: int
    x_max: float
    points: int
    output_path: str
    parallelism: int


_KNOWN_KEYS = {
    "schemes", "alpha_values", "T_values", "one_minus_T_range", "T_prime",
    "cutoff", "homodyne.x_max", "homodyne.points", "output_path",
    "parallelism",
}


def _split_list(raw: str) -> list[str]:
    parts = [p.strip() for p in raw.replace(",", " ").split()]
    return [p for p in parts if p]


def _parse_floats(raw: str, key: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in _split_list(raw))
    except ValueError:
        raise ConfigError(f"invalid value for {key}: {raw!r}")


def _parse_range(raw: str, key: str) -> tuple[float, ...]:
    try:
        start_s, stop_s, step_s = raw.split(":")
        start, stop, step = float(start_s), float(stop_s), float(step_s)
    except ValueError:
        raise ConfigError(f"invalid value for {key}: {raw!r} (want start:stop:step)")
    if step <= 0.0 or stop < start:
        raise ConfigError(f"invalid value for {key}: {raw!r}")
    count = int(round((stop - start) / step)) + 1
    return tuple(start + i * step for i in range(count))


def parse_config(path: str) -> SweepConfig:
    """Parse a flat key=value sweep config; unknown keys are errors."""
    entries: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno} is not a key = value pair: {line!r}")
        key, _, raw = stripped.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config key: {key}")
        if key in entries:
            raise ConfigError(f"duplicate config key: {key}")
        entries[key] = raw

    for required in ("schemes", "alpha_values", "output_path"):
        if required not in entries:
            raise ConfigError(f"missing config key: {required}")
    if ("T_values" in entries) == ("one_minus_T_range" in entries):
        raise ConfigError(
            "config needs exactly one of T_values, one_minus_T_range"
        )

    schemes = tuple(_split_list(entries["schemes"]))
    for s in schemes:
        if s not in SCHEME_ALIASES:
            raise ConfigError(f"invalid value for schemes: {s!r}")
    alphas = _parse_floats(entries["alpha_values"], "alpha_values")
    if "T_values" in entries:
        ts = _parse_floats(entries["T_values"], "T_values")
    else:
        ts = tuple(1.0 - v for v in _parse_range(entries["one_minus_T_range"], "one_minus_T_range"))

    def _scalar(key, conv, default):
        if key not in entries:
            return default
        try:
            return conv(entries[key])
        except ValueError:
            raise ConfigError(f"invalid value for {key}: {entries[key]!r}")

    cfg = SweepConfig(
        schemes=schemes,
        alpha_values=alphas,
        T_values=ts,
        T_prime=_scalar("T_prime", float, 1.0),
        cutoff=_scalar("cutoff", int, default_cutoff()),
        x_max=_scalar("homodyne.x_max", float, 6.0),
        points=_scalar("homodyne.points", int, 201),
        output_path=entries["output_path"],
        parallelism=_scalar("parallelism", int, 1),
    )
    if cfg.parallelism < 1:
        raise ConfigError("invalid value for parallelism: must be >= 1")
    if cfg.cutoff < 2:
        raise ConfigError("invalid value for cutoff: must be >= 2")
    return cfg


def evaluate_point(scheme: str, alpha: float, T: float, T_prime: float,
                   cutoff: int, x_max: float = 6.0, points: int = 201) -> dict:
    """One (scheme, alpha, T) evaluation: simulated and closed-form row."""
    internal = SCHEME_ALIASES.get(scheme)
    if internal is None:
        raise ValueError(f"unknown scheme {scheme!r}")
    if internal == "dv":
        sim = dv_swap(T, T_prime, cutoff)
    elif internal == "he_spd":
        sim = he_swap_spd(alpha, T, T_prime, cutoff)
    else:
        sim = he_swap_homodyne(alpha, T, T_prime, cutoff, homodyne_grid(x_max, points))
    ref = closed_form(internal, alpha, T, T_prime)
    p_sim = sim.total_success_probability
    e_sim = sim.averaged_negativity
    return {
        "scheme": scheme,
        "alpha": alpha,
        "T": T,
        "T_prime": T_prime,
        "cutoff": cutoff,
        "p_sim": p_sim,
        "E_sim": e_sim,
        "p_closed": ref.p,
        "E_closed": ref.E,
        "err_p": abs(p_sim - ref.p),
        "err_E": abs(e_sim - ref.E),
    }


def format_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _job(args) -> dict:
    return evaluate_point(*args)


def run_sweep(config: SweepConfig) -> int:
    """Run every configured point and write the CSV; returns the row count.

    Points are computed by a bounded worker pool when parallelism > 1
    but always written in config order, so the output bytes never depend
    on scheduling.
    """
    jobs = [
        (scheme, alpha, T, config.T_prime, config.cutoff, config.x_max, config.points)
        for scheme in config.schemes
        for alpha in config.alpha_values
        for T in config.T_values
    ]
    if config.parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
            rows = list(pool.map(_job, jobs))
    else:
        rows = [_job(j) for j in jobs]
    out = Path(config.output_path)
    with out.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([format_value(row[col]) for col in CSV_COLUMNS])
    return len(rows)
