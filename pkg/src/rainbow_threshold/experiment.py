"""Monte Carlo sweeps around the rainbow connection threshold.

Each trial samples G(n, p) with ``p = multiplier * conjectured_threshold(n, r)``,
measures the diameter, runs the repair procedure and records whether the
repaired colouring was machine-verified as a rainbow colouring.
"""
from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path as FilePath
from typing import Iterable

import numpy as np

from .colouring import enumerate_rainbow_r_paths, random_colouring
from .graph import UNBOUNDED, diameter, gnp_generate, is_connected
from .repair import default_pool_size, repair_colouring
from .rng import derive_seed, make_rng
from .thresholds import conjectured_threshold, expected_rainbow_r_path_count

SWEEP = "Sweep"
EXPECTATION_CHECK = "ExpectationCheck"

DEFAULT_MULTIPLIERS = (0.5, 0.7, 0.85, 1.0, 1.15, 1.3, 1.5)

# stream id for picking the sampled pair in expectation checks
_PAIR_STREAM = 2


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    n_values: list[int] = field(default_factory=lambda: [200])
    r: int = 3
    epsilon: float = 0.0
    multipliers: list[float] = field(default_factory=lambda: list(DEFAULT_MULTIPLIERS))
    trials: int = 20
    master_seed: int = 0
    k_threshold: int = 1
    pool_size: int | None = None
    mode: str = SWEEP
    # not in the trial-level contract: opt-in wall-clock timing, which breaks byte-identical reruns
    record_timing: bool = False
    n_jobs: int = 1

    def __post_init__(self):
        if self.trials < 0:
            raise ConfigError(f"trials must be non-negative, got {self.trials}")
        if any(m <= 0 for m in self.multipliers):
            raise ConfigError("multipliers must be positive")
        if self.r < 3:
            raise ConfigError(f"r must be at least 3, got {self.r}")
        if any(n < 2 for n in self.n_values):
            raise ConfigError("every n must be at least 2")
        if self.epsilon < 0:
            raise ConfigError(f"epsilon must be non-negative, got {self.epsilon}")
        if self.mode not in (SWEEP, EXPECTATION_CHECK):
            raise ConfigError(f"unknown mode {self.mode!r}")

    def base_probability(self, n: int) -> float:
        """Conjectured threshold at epsilon 0; multipliers scale this value.

        ``epsilon`` is echoed into the output but does not move the grid.
        """
        return conjectured_threshold(n, self.r, 0.0)

    def probability(self, n: int, multiplier: float) -> tuple[float, bool]:
        raw = multiplier * self.base_probability(n)
        return min(max(raw, 0.0), 1.0), raw > 1.0

    def effective_pool_size(self) -> int:
        return default_pool_size(self.r) if self.pool_size is None else self.pool_size


_LIST_KEYS = {"n_values": int, "multipliers": float}
_SCALAR_KEYS = {
    "r": int,
    "epsilon": float,
    "trials": int,
    "master_seed": int,
    "k_threshold": int,
    "pool_size": int,
    "mode": str,
    "record_timing": lambda s: s.strip().lower() in ("1", "true", "yes"),
    "n_jobs": int,
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse flat ``key=value`` lines; lists are comma-separated, ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            if key in _LIST_KEYS:
                values[key] = [_LIST_KEYS[key](x) for x in value.split(",") if x.strip()]
            elif key in _SCALAR_KEYS:
                values[key] = None if key == "pool_size" and value.lower() in ("", "none") else _SCALAR_KEYS[key](value)
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
    return ExperimentConfig(**values)


def load_config(path) -> ExperimentConfig:
    return parse_config(FilePath(path).read_text())


def format_config(cfg: ExperimentConfig) -> list[str]:
    out = []
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        if isinstance(value, list):
            value = ",".join(repr(x) if isinstance(x, float) else str(x) for x in value)
        elif isinstance(value, float):
            value = repr(value)
        out.append(f"{f.name}={value}")
    return out


@dataclass
class TrialRecord:
    n: int
    r: int
    multiplier: float
    p: float
    trial_index: int
    seed: int
    connected: bool
    diameter: int | float
    diam_le_r: bool
    repair_status: str
    dangerous_count: int
    recoloured_count: int
    verified_rainbow: bool
    elapsed_ms: float | None


CSV_COLUMNS = [f.name for f in fields(TrialRecord)]


def trial_seed(master_seed: int, n: int, multiplier_index: int, trial_index: int) -> int:
    return derive_seed(master_seed, n, multiplier_index, trial_index)


def run_trial(cfg: ExperimentConfig, n: int, mi: int, t: int) -> TrialRecord:
    multiplier = cfg.multipliers[mi]
    p, _ = cfg.probability(n, multiplier)
    seed = trial_seed(cfg.master_seed, n, mi, t)
    start = time.perf_counter()
    g = gnp_generate(n, p, seed)
    diam = diameter(g)
    try:
        outcome = repair_colouring(
            g, seed, cfg.r, cfg.k_threshold, cfg.effective_pool_size()
        )
        status = outcome.status
        dangerous = len(outcome.report)
        recoloured = len(outcome.repaired_paths)
        verified = outcome.verified
    except Exception as exc:  # a failed trial is recorded, never fatal to the sweep
        status, dangerous, recoloured, verified = f"Error:{type(exc).__name__}", -1, -1, False
    elapsed = (time.perf_counter() - start) * 1000.0 if cfg.record_timing else None
    return TrialRecord(
        n=n,
        r=cfg.r,
        multiplier=multiplier,
        p=p,
        trial_index=t,
        seed=seed,
        connected=is_connected(g),
        diameter=diam,
        diam_le_r=diam <= cfg.r,
        repair_status=status,
        dangerous_count=dangerous,
        recoloured_count=recoloured,
        verified_rainbow=verified,
        elapsed_ms=elapsed,
    )


def _run_cell(args):
    cfg, n, mi = args
    return [run_trial(cfg, n, mi, t) for t in range(cfg.trials)]


def run_threshold_sweep(cfg: ExperimentConfig, cells: Iterable[tuple[int, int]] | None = None) -> list[TrialRecord]:
    """Run every ``(n, multiplier)`` cell, or only ``cells`` given as ``(n, multiplier_index)``.

    Records come back ordered by ``(n, multiplier, trial_index)`` whether or
    not the cells ran in worker processes.
    """
    if cfg.mode != SWEEP:
        raise ConfigError(f"run_threshold_sweep needs mode={SWEEP}, got {cfg.mode}")
    if cells is None:
        cells = [(n, mi) for n in cfg.n_values for mi in range(len(cfg.multipliers))]
    jobs = [(cfg, n, mi) for n, mi in cells]
    if cfg.n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.n_jobs) as pool:
            chunks = list(pool.map(_run_cell, jobs))
    else:
        chunks = [_run_cell(job) for job in jobs]
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda rec: (rec.n, rec.multiplier, rec.trial_index))
    return records


@dataclass
class ExpectationSummary:
    n: int
    r: int
    p: float
    trials: int
    empirical_mean: float
    prediction: float
    relative_error: float
    counts: list[int] = field(repr=False, default_factory=list)


def run_expectation_check(cfg: ExperimentConfig) -> list[ExpectationSummary]:
    """Mean number of rainbow r-paths joining a random pair, against ``r!/r^r n^(r-1) p^r``.

    One fresh graph, colouring and uniformly random pair per trial; every
    rainbow r-path is counted (no truncation).
    """
    if cfg.mode != EXPECTATION_CHECK:
        raise ConfigError(f"run_expectation_check needs mode={EXPECTATION_CHECK}, got {cfg.mode}")
    out = []
    for n in cfg.n_values:
        for mi, multiplier in enumerate(cfg.multipliers):
            p, _ = cfg.probability(n, multiplier)
            counts = []
            for t in range(cfg.trials):
                seed = trial_seed(cfg.master_seed, n, mi, t)
                g = gnp_generate(n, p, seed)
                c = random_colouring(g, cfg.r, seed)
                u, v = make_rng(seed, _PAIR_STREAM).choice(n, size=2, replace=False).tolist()
                counts.append(len(enumerate_rainbow_r_paths(c, u, v, cfg.r, None)))
            mean = float(np.mean(counts)) if counts else 0.0
            pred = expected_rainbow_r_path_count(n, cfg.r, p)
            rel = abs(mean - pred) / pred if pred > 0 else (0.0 if mean == 0 else math.inf)
            out.append(ExpectationSummary(n, cfg.r, p, cfg.trials, mean, pred, rel, counts))
    return out


def _render(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "inf" if value == UNBOUNDED else repr(value)
    return str(value)


def render_csv(records: list[TrialRecord], cfg: ExperimentConfig | None = None) -> str:
    buf = io.StringIO()
    if cfg is not None:
        for line in format_config(cfg):
            buf.write(f"# {line}\n")
        clamped = any(cfg.probability(n, m)[1] for n in cfg.n_values for m in cfg.multipliers)
        buf.write(f"# clamped={'true' if clamped else 'false'}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow([_render(v) for v in asdict(rec).values()])
    return buf.getvalue()


def emit_csv(records: list[TrialRecord], destination, cfg: ExperimentConfig | None = None) -> None:
    """Write ``#`` preamble lines echoing ``cfg``, a header row and one row per record."""
    text = render_csv(records, cfg)
    try:
        with open(destination, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write results to {destination}: {exc}") from exc


def _parse_bool(s: str) -> bool:
    if s not in ("true", "false"):
        raise ValueError(f"not a boolean: {s!r}")
    return s == "true"


def _parse_diameter(s: str):
    return UNBOUNDED if s == "inf" else int(s)


_PARSERS = {
    "n": int,
    "r": int,
    "multiplier": float,
    "p": float,
    "trial_index": int,
    "seed": int,
    "connected": _parse_bool,
    "diameter": _parse_diameter,
    "diam_le_r": _parse_bool,
    "repair_status": str,
    "dangerous_count": int,
    "recoloured_count": int,
    "verified_rainbow": _parse_bool,
    "elapsed_ms": lambda s: None if s == "" else float(s),
}


def read_csv(source) -> tuple[list[TrialRecord], list[str]]:
    """Parse an emitted results file back into records plus its preamble lines."""
    text = FilePath(source).read_text()
    preamble = [ln[1:].strip() for ln in text.splitlines() if ln.startswith("#")]
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.reader(body)
    header = next(reader)
    if header != CSV_COLUMNS:
        raise ValueError(f"unexpected header {header}")
    records = [
        TrialRecord(**{k: _PARSERS[k](v) for k, v in zip(header, row)}) for row in reader
    ]
    return records, preamble
