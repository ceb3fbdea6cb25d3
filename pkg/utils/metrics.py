from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from models.bench import BenchRecord

# metrics.py: Aggregation of benchmark records into the per-size summary and the steps/n trend.
# Wall time is reported alongside the operation counts but no decision is made on it.

SUMMARY_COLUMNS = [
    "row", "structure", "backend", "n", "reps",
    "steps_mean", "steps_std", "queries_mean", "queries_std", "ops_mean",
    "wall_time_mean", "wall_time_std", "steps_per_n", "queries_per_n", "ops_per_n",
    "verified", "trend_slope", "final_first_ratio",
]


def records_frame(records: Sequence[BenchRecord]) -> pd.DataFrame:
    """One row per record, sorted by (structure, backend, n, seed)."""
    frame = pd.DataFrame([r.model_dump() for r in records])
    if frame.empty:
        return pd.DataFrame(columns=list(BenchRecord.model_fields))
    return frame.sort_values(["structure", "backend", "n", "seed"], kind="mergesort").reset_index(drop=True)


def fit_trend(sizes: Sequence[int], per_n: Sequence[float]) -> Dict[str, float]:
    """
    Least-squares slope of a per-n ratio against log2 n, and the ratio of its last to first value.
    A flat ratio (slope near 0, final/first near 1) is the linear-total-work signature.
    """
    if len(sizes) < 2:
        return {"trend_slope": 0.0, "final_first_ratio": 1.0}
    x = np.log2(np.asarray(sizes, dtype=float))
    y = np.asarray(per_n, dtype=float)
    slope = float(np.polyfit(x, y, 1)[0])
    ratio = float(y[-1] / y[0]) if y[0] else float("inf")
    return {"trend_slope": slope, "final_first_ratio": ratio}


def summarize(records: Sequence[BenchRecord]) -> pd.DataFrame:
    """
    Per-(structure, backend, n) summary plus one trend row per (structure, backend).
    Step-by-step:
    1. Group the runs and take mean and standard deviation of steps, queries and wall time.
    2. Normalise the means by n.
    3. Fit the trend of the leading per-n ratio (steps, or primitive ops when no steps were taken).
    """
    frame = records_frame(records)
    rows: List[Dict] = []
    for (structure, backend), group in frame.groupby(["structure", "backend"], sort=True):
        # Step 1: per-size statistics
        stats = group.groupby("n").agg(
            reps=("seed", "count"),
            steps_mean=("total_skiplist_steps", "mean"),
            steps_std=("total_skiplist_steps", "std"),
            queries_mean=("total_range_queries", "mean"),
            queries_std=("total_range_queries", "std"),
            ops_mean=("primitive_ops", "mean"),
            wall_time_mean=("wall_time", "mean"),
            wall_time_std=("wall_time", "std"),
            verified=("verified", "all"),
        ).reset_index().fillna({"steps_std": 0.0, "queries_std": 0.0, "wall_time_std": 0.0})
        # Step 2: per-n ratios
        stats["steps_per_n"] = stats["steps_mean"] / stats["n"]
        stats["queries_per_n"] = stats["queries_mean"] / stats["n"]
        stats["ops_per_n"] = stats["ops_mean"] / stats["n"]
        for record in stats.to_dict("records"):
            rows.append({"row": "data", "structure": structure, "backend": backend, **record})
        # Step 3: trend
        lead = "steps_per_n" if stats["steps_mean"].sum() > 0 else "ops_per_n"
        trend = fit_trend(stats["n"].tolist(), stats[lead].tolist())
        rows.append({"row": "summary", "structure": structure, "backend": backend,
                     "verified": bool(stats["verified"].all()), **trend})
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)
