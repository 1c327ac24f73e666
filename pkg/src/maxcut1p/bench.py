"""Leaf-count and timing sweeps over generated instances."""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .errors import Unsatisfiable
from .oracle import GeneratorConfig, generate_instance
from .reduction import max_cut_general, max_cut_nonneg

FIELDS = ("n", "k", "mode", "wall_ms", "leaves", "value")
MAX_RETRIES = 50


@dataclass(frozen=True)
class BenchRow:
    n: int
    k: int
    mode: str
    wall_ms: float
    leaves: int
    value: int


def _instance(n: int, k: int, wmin: int, wmax: int, seed: int):
    for attempt in range(MAX_RETRIES):
        try:
            return generate_instance(GeneratorConfig(n, k, wmin, wmax, seed + attempt * 7919))
        except Unsatisfiable:
            continue
    raise Unsatisfiable(f"no instance with n={n}, k={k} after {MAX_RETRIES} seeds")


def sweep(
    n_list: Iterable[int],
    k_list: Iterable[int],
    repetitions: int = 1,
    seed: int = 0,
    modes: Sequence[str] = ("general",),
    weight_min: int = 0,
    weight_max: int = 10,
) -> list[BenchRow]:
    rows = []
    k_list = list(k_list)
    for n in n_list:
        for k in k_list:
            for rep in range(repetitions):
                inst = _instance(n, k, weight_min, weight_max, seed + 1000 * rep + 31 * n + k)
                values = {}
                for mode in modes:
                    solver = max_cut_nonneg if mode == "nonneg" else max_cut_general
                    start = time.perf_counter()
                    cut, stats = solver(inst)
                    wall = (time.perf_counter() - start) * 1000.0
                    if stats.leaf_count > 3**k:
                        raise AssertionError(f"{stats.leaf_count} leaves exceed 3^{k}")
                    values[mode] = cut.value
                    rows.append(BenchRow(n, k, mode, wall, stats.leaf_count, cut.value))
                if len(set(values.values())) > 1:
                    raise AssertionError(f"modes disagree on n={n}, k={k}: {values}")
    return rows


def write_csv(rows: Iterable[BenchRow], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(FIELDS)
    for r in rows:
        writer.writerow((r.n, r.k, r.mode, f"{r.wall_ms:.3f}", r.leaves, r.value))


def growth_ratios(rows: Iterable[BenchRow]) -> dict[tuple[int, str, int], float]:
    """Median wall time at k divided by the median at k-1, per (n, mode, k)."""
    by: dict[tuple[int, str, int], list[float]] = {}
    for r in rows:
        by.setdefault((r.n, r.mode, r.k), []).append(r.wall_ms)
    med = {key: statistics.median(v) for key, v in by.items()}
    out = {}
    for (n, mode, k), m in sorted(med.items()):
        prev = med.get((n, mode, k - 1))
        if prev:
            out[(n, mode, k)] = m / prev
    return out
