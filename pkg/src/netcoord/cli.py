"""Experiment runner.

Each experiment writes ``<output>.csv`` (columns ``x,y,series``) and a
``<output>.json`` sidecar holding the resolved config and run metadata.
Flags override values from ``--config``; unknown config keys are rejected.

    python -m netcoord --experiment beta-min --n 14 --theta 0.3 --delta 0.1
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import datetime
import io
import json
import os
import subprocess
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats

from . import design, game, gibbs, graph, lll

EXPERIMENTS = (
    "monotonicity-beta-k",
    "beta-min",
    "edge-augmentation",
    "regular-vs-irregular",
    "clt-histogram",
    "poi-scatter",
    "verify-suite",
)
OUTPUT_ENV = "NETCOORD_OUTPUT_DIR"


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    experiment: str = "verify-suite"
    n: int = 14
    theta: float = 0.3
    beta_lo: float = 0.0
    beta_hi: float = 3.0
    beta_points: int = 61
    betas: list[float] = field(default_factory=lambda: [0.1, 0.5, 1.0])
    k_list: list[int] | None = None
    edges: int | None = None
    edge_steps: int | None = None
    delta: float = 0.1
    seed: int = 0
    graphs: int = 100
    samples: int = 100_000
    n_list: list[int] | None = None
    degree: int = 6
    bins: int = 60
    graph_file: str | None = None
    output: str | None = None

    def beta_grid(self) -> np.ndarray:
        return np.linspace(self.beta_lo, self.beta_hi, self.beta_points)


@dataclass
class SeriesOutput:
    metadata: dict
    rows: list[tuple[float, float, str]]

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "series"])
        for x, y, label in self.rows:
            w.writerow([repr(float(x)), repr(float(y)), label])
        return buf.getvalue()

    def write(self, stem) -> tuple[Path, Path]:
        stem = Path(stem)
        stem.parent.mkdir(parents=True, exist_ok=True)
        csv_path, json_path = stem.with_suffix(".csv"), stem.with_suffix(".json")
        csv_path.write_text(self.csv_text())
        json_path.write_text(json.dumps(self.metadata, indent=2, sort_keys=True) + "\n")
        return csv_path, json_path


_FIELDS = {f.name: f for f in dataclasses.fields(ExperimentConfig)}
_LIST_INT = {"k_list", "n_list"}
_LIST_FLOAT = {"betas"}
_INT = {"n", "beta_points", "edges", "edge_steps", "seed", "graphs", "samples", "degree", "bins"}
_FLOAT = {"theta", "beta_lo", "beta_hi", "delta"}


def _coerce(key, value):
    try:
        if value is None:
            return None
        if key in _LIST_INT:
            items = value.split(",") if isinstance(value, str) else value
            return [int(v) for v in items]
        if key in _LIST_FLOAT:
            items = value.split(",") if isinstance(value, str) else value
            return [float(v) for v in items]
        if key in _INT:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(value)
            return int(value)
        if key in _FLOAT:
            return float(value)
        return str(value)
    except (TypeError, ValueError):
        raise ConfigError(f"malformed value for {key}: {value!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="netcoord", description=__doc__.split("\n")[0], allow_abbrev=False)
    p.add_argument("--config", help="JSON file with config keys")
    for name in _FIELDS:
        p.add_argument("--" + name.replace("_", "-"), dest=name, default=None)
    return p


def parse_config(argv=None) -> ExperimentConfig:
    """Resolve defaults < config file < command-line flags."""
    args = _parser().parse_args(argv)
    values: dict = {}
    if args.config:
        try:
            raw = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        unknown = sorted(set(raw) - set(_FIELDS))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        values.update({k: _coerce(k, v) for k, v in raw.items()})
    for name in _FIELDS:
        v = getattr(args, name)
        if v is not None:
            values[name] = _coerce(name, v)
    cfg = ExperimentConfig(**values)
    validate(cfg)
    return cfg


def validate(cfg: ExperimentConfig) -> None:
    """Reject configs that violate preconditions, before any computation."""
    if cfg.experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {cfg.experiment!r}; choose from {', '.join(EXPERIMENTS)}")
    if cfg.n < 2:
        raise ConfigError("n must be at least 2")
    if cfg.beta_points < 2 or cfg.beta_lo < 0 or cfg.beta_hi < cfg.beta_lo:
        raise ConfigError("beta grid needs 0 <= beta_lo <= beta_hi and at least 2 points")
    if any(b < 0 for b in cfg.betas):
        raise ConfigError("betas must be nonnegative")
    if not 0 < cfg.delta < 1:
        raise ConfigError("delta must lie in (0, 1)")
    exact = {"monotonicity-beta-k", "beta-min", "edge-augmentation", "regular-vs-irregular", "poi-scatter"}
    sizes = cfg.n_list if cfg.experiment == "poi-scatter" and cfg.n_list else [cfg.n]
    if cfg.experiment in exact and max(sizes) > gibbs.MAX_STREAM_N:
        raise ConfigError(f"n={max(sizes)} exceeds exact enumeration cap {gibbs.MAX_STREAM_N}")
    if cfg.experiment == "beta-min" and cfg.theta == 0.5:
        raise ConfigError("beta-min is undefined at theta = 0.5")
    if cfg.experiment == "clt-histogram" and cfg.samples < 1000:
        raise ConfigError("clt-histogram needs samples >= 1000")
    if cfg.k_list:
        for k in cfg.k_list:
            if not 1 <= k <= cfg.n - 1 or (cfg.n * k) % 2:
                raise ConfigError(f"no connected {k}-regular graph on {cfg.n} vertices")
    if cfg.edges is not None and not cfg.n - 1 <= cfg.edges <= cfg.n * (cfg.n - 1) // 2:
        raise ConfigError(f"edges={cfg.edges} outside [{cfg.n - 1}, {cfg.n * (cfg.n - 1) // 2}]")


def _git_describe() -> str:
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"], capture_output=True,
                             text=True, timeout=5, cwd=Path(__file__).parent)
        return out.stdout.strip() or "unknown"
    except (OSError, subprocess.SubprocessError):
        return "unknown"


def _load_graph(cfg):
    return graph.read_edge_list(cfg.graph_file) if cfg.graph_file else None


def _monotonicity(cfg):
    ks = cfg.k_list or [k for k in (3, 5, 7, 9, 11, 13) if k < cfg.n and (cfg.n * k) % 2 == 0]
    betas = cfg.beta_grid()
    rows = []
    for k in ks:
        mu = gibbs.stationary_prob_star(graph.build_k_regular(cfg.n, k), cfg.theta, betas)
        rows += [(b, m, f"K={k}") for b, m in zip(betas, mu)]
    return rows


def _beta_min(cfg):
    g0 = _load_graph(cfg)
    if g0 is not None:
        res = gibbs.beta_min(g0, cfg.theta, cfg.delta)
        return [(0, res.beta_min, "exact")]
    ks = cfg.k_list or [k for k in range(2, cfg.n) if (cfg.n * k) % 2 == 0]
    rows = []
    for k in ks:
        rows.append((k, gibbs.beta_min(graph.build_k_regular(cfg.n, k), cfg.theta, cfg.delta).beta_min, "exact"))
    for k in ks:
        rows.append((k, gibbs.beta_min_upper_bound(k, cfg.n, cfg.theta, cfg.delta), "bound"))
    return rows


def _edge_augmentation(cfg):
    rng = np.random.default_rng(cfg.seed)
    g = _load_graph(cfg) or graph.random_spanning_tree(cfg.n, rng)
    free = graph.non_edges(g)
    order = rng.permutation(len(free))
    steps = len(free) if cfg.edge_steps is None else min(cfg.edge_steps, len(free))
    betas = np.asarray(cfg.betas)
    rows = []
    for t in range(steps + 1):
        if t:
            g = graph.add_edge_successor(g, *free[order[t - 1]])
        mu = gibbs.stationary_prob_star(g, cfg.theta, betas)
        rows += [(g.m, m, f"beta={b:g}") for b, m in zip(betas, np.atleast_1d(mu))]
    return rows


def _regular_vs_irregular(cfg):
    m = cfg.edges if cfg.edges is not None else cfg.n * cfg.degree // 2
    rng = np.random.default_rng(cfg.seed)
    seq = design.optimal_degree_sequence(cfg.n, m)
    reg = design.realize_degree_sequence(seq, rng)
    betas = np.asarray(cfg.betas)
    rows = [(design.degree_variance(reg), mu, f"regular beta={b:g}")
            for b, mu in zip(betas, np.atleast_1d(gibbs.stationary_prob_star(reg, cfg.theta, betas)))]
    for _ in range(cfg.graphs):
        h = graph.random_connected_graph(cfg.n, m, rng)
        if h.is_regular():
            continue
        var = design.degree_variance(h)
        mu = np.atleast_1d(gibbs.stationary_prob_star(h, cfg.theta, betas))
        rows += [(var, v, f"irregular beta={b:g}") for b, v in zip(betas, mu)]
    return rows


def _clt(cfg):
    rows = []
    for n in cfg.n_list or [64, 256, 1024]:
        rng = np.random.default_rng([cfg.seed, n])
        g = graph.erdos_renyi(n, min(1.0, 10 / n), rng)
        sigma = np.sqrt(design.potential_variance(g, cfg.theta).sigma2)
        z = design.sample_ising_potential(g, cfg.theta, rng, cfg.samples) / sigma
        dens, edges_ = np.histogram(z, bins=cfg.bins, range=(-4, 4), density=True)
        rows += [(0.5 * (lo + hi), d, f"N={n}") for lo, hi, d in zip(edges_[:-1], edges_[1:], dens)]
        rows.append((n, stats.kstest(z, "norm").statistic, "ks"))
    return rows


def _poi(cfg):
    rows = []
    c = 0.25 - cfg.theta / 2
    beta = cfg.betas[0]
    for n in cfg.n_list or [10, 12, 14]:
        rng = np.random.default_rng([cfg.seed, n])
        m = n * cfg.degree // 2
        reg = graph.build_k_regular(n, cfg.degree)
        for _ in range(cfg.graphs):
            h = graph.random_connected_graph(n, m, rng)
            if h.is_regular():
                continue
            r = design.price_of_irregularity(reg, h, cfg.theta, beta)
            x = n * r.degree_variance
            rows.append((x, r.exact_poi, f"N={n}"))
            rows.append((x, 0.5 * beta * beta * c * c * x, f"approx N={n}"))
    return rows


def verify_suite(seed: int = 0) -> list[tuple[str, bool]]:
    """Quick invariant battery over small random graphs."""
    rng = np.random.default_rng(seed)
    checks = []
    for t in range(5):
        n = int(rng.integers(4, 9))
        g = graph.random_connected_graph(n, int(rng.integers(n - 1, n * (n - 1) // 2 + 1)), rng)
        theta = float(rng.uniform(-1, 2))
        beta = float(rng.uniform(0.1, 2))
        checks.append((f"exact potential #{t}", game.verify_exact_potential(g, theta)))
        mu = gibbs.exact_gibbs(g, theta, beta).probabilities
        P = lll.transition_matrix(g, theta, beta)
        checks.append((f"stationarity #{t}", float(np.abs(mu @ P - mu).sum()) < 1e-10))
        checks.append((f"normalisation #{t}", abs(mu.sum() - 1) < 1e-12))
        spins = gibbs.exact_gibbs(g, theta, beta, potential="ising").probabilities
        checks.append((f"spin parameterisation #{t}", float(np.abs(spins - mu).max()) < 1e-12))
        if theta != 0.5:
            ex = gibbs.stationary_prob_star(g, theta, beta)
            lb = gibbs.spectral_lower_bound_general(g, theta, beta)
            checks.append((f"spectral bound #{t}", lb <= ex + 1e-12))
        free = graph.non_edges(g)
        if free and theta != 0.5:
            s = graph.add_edge_successor(g, *free[0])
            checks.append((f"edge augmentation #{t}",
                           gibbs.stationary_prob_star(s, theta, beta) > gibbs.stationary_prob_star(g, theta, beta)))
        spins_all = 2 * game.all_profiles(n).astype(np.int64) - 1
        var = float(np.var(game.ising_potential(g, spins_all, theta)))
        sig = design.potential_variance(g, theta).sigma2
        checks.append((f"variance identity #{t}", abs(var - sig) <= 1e-9 * sig))
    return checks


def _verify(cfg):
    checks = verify_suite(cfg.seed)
    passed = sum(ok for _, ok in checks)
    print(f"verify-suite: {passed} passed, {len(checks) - passed} failed")
    for name, ok in checks:
        if not ok:
            print(f"  FAIL {name}")
    return [(i, float(ok), name) for i, (name, ok) in enumerate(checks)]


_RUNNERS = {
    "monotonicity-beta-k": _monotonicity,
    "beta-min": _beta_min,
    "edge-augmentation": _edge_augmentation,
    "regular-vs-irregular": _regular_vs_irregular,
    "clt-histogram": _clt,
    "poi-scatter": _poi,
    "verify-suite": _verify,
}


def run(cfg: ExperimentConfig, write: bool = True) -> SeriesOutput:
    validate(cfg)
    rows = _RUNNERS[cfg.experiment](cfg)
    meta = {
        "config": dataclasses.asdict(cfg),
        "seeds": [cfg.seed],
        "git_describe": _git_describe(),
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "rows": len(rows),
    }
    out = SeriesOutput(meta, rows)
    if write:
        stem = cfg.output or str(Path(os.environ.get(OUTPUT_ENV, ".")) / cfg.experiment)
        out.write(stem)
    return out


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        out = run(cfg)
    except (ConfigError, graph.GraphError, ValueError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"netcoord: error: {msg}", file=sys.stderr)
        return 2
    if cfg.experiment == "verify-suite" and any(y == 0 for _, y, _ in out.rows):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
