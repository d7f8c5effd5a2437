"""Parameter sweeps: one CSV row per generated instance."""

from __future__ import annotations

import csv
import io
import itertools
import json
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .bounds import alpha_of, main_upper_bound, sharpness_lower_bound
from .constructions import (
    ConstructionWarning,
    c5_blowup,
    conjecture_family,
    random_near_extremal,
    sharpness_graph,
    turan_graph,
)
from .exact import SolveOptions, min_deletions_exact
from .graph import Graph
from .pipeline import run_pipeline

COLUMNS = (
    "generator", "n", "r", "alpha", "t", "e", "exact", "exact_status",
    "pipeline", "fallback", "main_upper", "sharp_lower", "ms", "status",
)
KINDS = ("turan", "c5blowup", "sharpness", "conjecture", "random")


def parse_rational(value) -> Fraction | float | int:
    """Accept ints, floats and ``"p/q"`` strings; strings stay exact."""
    if isinstance(value, str):
        return Fraction(value.strip())
    return value


def _sizes(value) -> list[int]:
    if isinstance(value, str):
        return [int(x) for x in value.split(",") if x.strip()]
    return [int(x) for x in value]


def make_instance(kind: str, params: dict[str, Any]) -> tuple[Graph, dict]:
    """Build a generator's graph and a JSON-ready description of it."""
    p = dict(params)
    if kind == "turan":
        G = turan_graph(int(p["n"]), int(p["r"]))
        return G, {"kind": kind, "n": int(p["n"]), "r": int(p["r"])}
    if kind == "c5blowup":
        sizes = _sizes(p["sizes"])
        return c5_blowup(sizes), {"kind": kind, "sizes": sizes}
    if kind == "conjecture":
        r = int(p["r"])
        cycle, joined = _sizes(p["sizes"]), _sizes(p.get("join_sizes", []))
        return conjecture_family(r, cycle, joined), {"kind": kind, "r": r, "sizes": cycle, "join_sizes": joined}
    if kind == "sharpness":
        G, spec = sharpness_graph(int(p["n"]), int(p["r"]), parse_rational(p["alpha"]))
        return G, {"kind": kind, **spec.to_dict()}
    if kind == "random":
        n, r, t, seed = int(p["n"]), int(p["r"]), int(p["t"]), int(p.get("seed", 0))
        return random_near_extremal(n, r, t, seed), {"kind": kind, "n": n, "r": r, "t": t, "seed": seed}
    raise ValueError(f"unknown generator kind {kind!r}; choose from {', '.join(KINDS)}")


@dataclass(frozen=True)
class SweepTask:
    kind: str
    params: dict
    r: int
    exact: bool
    time_limit: float
    timing: bool


def _label(kind: str, params: dict) -> str:
    inner = ";".join(f"{k}={params[k]}" for k in sorted(params) if k != "r")
    return f"{kind}[{inner}]" if inner else kind


def _fmt(x: float) -> str:
    return repr(float(x))


def run_task(task: SweepTask) -> dict[str, str]:
    row = dict.fromkeys(COLUMNS, "")
    row["generator"] = _label(task.kind, task.params)
    row["r"] = str(task.r)
    start = time.perf_counter()
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConstructionWarning)
            G, _ = make_instance(task.kind, {"r": task.r, **task.params})
        t, alpha = alpha_of(G, task.r)
        row.update(n=str(G.n), e=str(G.m), t=str(t), alpha=_fmt(alpha))
        row["main_upper"] = _fmt(main_upper_bound(G.n, task.r, alpha))
        row["sharp_lower"] = _fmt(sharpness_lower_bound(G.n, task.r, alpha))
        if task.exact:
            res = min_deletions_exact(G, SolveOptions(r=task.r, time_limit=task.time_limit, want_partition=False))
            row["exact"], row["exact_status"] = str(res.best_value), res.status.value
        pipe = run_pipeline(G, task.r)
        row["pipeline"], row["fallback"] = str(pipe.deletions), str(pipe.used_fallback).lower()
        row["status"] = "ok"
    except Exception as exc:  # recorded per row; the sweep keeps going
        row["status"] = f"error: {type(exc).__name__}: {exc}".replace("\n", " ")
    if task.timing:
        row["ms"] = f"{(time.perf_counter() - start) * 1000:.1f}"
    return row


def expand_config(config: dict) -> list[SweepTask]:
    """Cartesian product of each generator's grid, in config order.

    ``random`` generators are repeated for every entry of ``seeds`` unless
    the generator sets its own seed. ``r`` may be an int or a list.
    """
    rs = config.get("r", 2)
    rs = rs if isinstance(rs, list) else [rs]
    seeds = config.get("seeds", [0])
    exact_cfg = config.get("exact", {})
    exact = bool(exact_cfg.get("enabled", True))
    time_limit = float(exact_cfg.get("time_limit_s", 0) or 0)
    timing = bool(config.get("timing", False))
    tasks = []
    for gen in config.get("generators", []):
        kind = gen["kind"]
        if kind not in KINDS:
            raise ValueError(f"unknown generator kind {kind!r}")
        grid = gen.get("grid", {})
        keys = list(grid)
        for combo in itertools.product(*(grid[k] for k in keys)):
            params = {**gen.get("params", {}), **dict(zip(keys, combo))}
            gen_rs = [params.pop("r")] if "r" in params else rs
            seed_list = [params.pop("seed")] if "seed" in params else seeds
            for r in gen_rs:
                if kind == "random":
                    for seed in seed_list:
                        tasks.append(SweepTask(kind, {**params, "seed": seed}, int(r), exact, time_limit, timing))
                else:
                    tasks.append(SweepTask(kind, params, int(r), exact, time_limit, timing))
    return tasks


def run_sweep(config: dict, jobs: int = 1) -> list[dict[str, str]]:
    tasks = expand_config(config)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_task, tasks))
    return [run_task(task) for task in tasks]


def rows_to_csv(rows: list[dict[str, str]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def load_config(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
