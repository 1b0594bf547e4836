"""Machine-readable report assembly: JSON, CSV, and optional figures.

All numerical commands funnel their results through `build_report`, which
produces the common payload {command, config_echo, results, pass,
worst_case}.  Serialization normalizes the extended-real and complex
conventions used across the library: complex numbers become [re, im]
pairs and -inf becomes the string "-inf" (JSON has no infinities).
"""

from __future__ import annotations

import dataclasses
import json
import math
import numbers
import os

import numpy as np


def jsonable(obj):
    """Recursively convert a result object to plain JSON-safe types."""
    if hasattr(obj, "to_jsonable"):
        return jsonable(obj.to_jsonable())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return [z.real, z.imag]
    if isinstance(obj, numbers.Integral):
        return int(obj)
    if isinstance(obj, numbers.Real):
        x = float(obj)
        if x == float("-inf"):
            return "-inf"
        if x == float("inf"):
            return "inf"
        if math.isnan(x):
            return "nan"
        return x
    return obj


def build_report(command: str, config_echo: dict, results,
                 passed: bool | None = None,
                 worst_case: float | None = None) -> dict:
    """Assemble the common top-level payload for one CLI invocation."""
    results = jsonable(results)
    if passed is None:
        passed = bool(results.get("pass", True)) if isinstance(results, dict) \
            else True
    if worst_case is None and isinstance(results, dict):
        worst_case = results.get("worst_case")
    return {
        "command": command,
        "config_echo": jsonable(config_echo),
        "results": results,
        "pass": bool(passed),
        "worst_case": jsonable(worst_case),
    }


def dumps_json(report: dict) -> str:
    """Deterministic JSON encoding: sorted keys, fixed separators."""
    return json.dumps(report, sort_keys=True, indent=2,
                      separators=(",", ": "))


def _flatten(prefix: str, obj, rows: list):
    if isinstance(obj, dict):
        for key in sorted(obj):
            _flatten(f"{prefix}.{key}" if prefix else str(key),
                     obj[key], rows)
    elif isinstance(obj, list):
        if obj and all(isinstance(v, (int, float)) for v in obj):
            rows.append((prefix, ";".join(repr(v) for v in obj)))
        else:
            for i, v in enumerate(obj):
                _flatten(f"{prefix}.{i}", v, rows)
    else:
        rows.append((prefix, obj))


def dumps_csv(report: dict) -> str:
    """Flatten the payload to two-column key,value CSV for external tools."""
    rows: list = []
    _flatten("", report, rows)
    lines = ["key,value"]
    for key, value in rows:
        text = "" if value is None else str(value)
        if "," in text or '"' in text or "\n" in text:
            text = '"' + text.replace('"', '""') + '"'
        lines.append(f"{key},{text}")
    return "\n".join(lines) + "\n"


def _numeric(value) -> float | None:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return None
    return float(value) if math.isfinite(value) else None


def render_figures(report: dict, outdir: str) -> list[str]:
    """Write summary figures for a verification payload to `outdir`.

    One bar chart of worst-case discrepancies per suite, and one per-check
    chart for each suite that carries named checks.  Returns the paths
    written.  The renderer is deliberately tolerant: payloads without
    recognizable check structure produce no figures.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(outdir, exist_ok=True)
    results = report.get("results", {})
    suites = results.get("suites") if isinstance(results, dict) else None
    if suites is None:
        suites = [results] if isinstance(results, dict) else []
    paths: list[str] = []

    names, worsts = [], []
    for s in suites:
        w = _numeric(s.get("worst_case"))
        if s.get("suite") and w is not None:
            names.append(s["suite"])
            worsts.append(max(w, 1e-18))
    if names:
        fig, ax = plt.subplots(figsize=(7, 3.5))
        ax.bar(names, worsts, color="#4878a8")
        ax.set_yscale("log")
        ax.set_ylabel("worst-case discrepancy")
        ax.set_title("verification suites: worst case per suite")
        ax.tick_params(axis="x", rotation=30)
        fig.tight_layout()
        path = os.path.join(outdir, "suites_worst_case.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)

    for s in suites:
        checks = s.get("checks")
        if not isinstance(checks, list) or not checks:
            continue
        labels, values, colors = [], [], []
        for i, c in enumerate(checks):
            if not isinstance(c, dict):
                continue
            worst = None
            for key, val in c.items():
                if "worst" in key or key.startswith("max_"):
                    v = _numeric(val)
                    if v is not None:
                        worst = max(worst or 0.0, abs(v))
            labels.append(str(c.get("check", c.get("case", i))))
            values.append(max(worst if worst is not None else 0.0, 1e-18))
            colors.append("#4878a8" if c.get("pass", True) else "#b04040")
        if not labels:
            continue
        fig, ax = plt.subplots(figsize=(7, 3.5))
        ax.bar(labels, values, color=colors)
        ax.set_yscale("log")
        ax.set_ylabel("worst |discrepancy|")
        ax.set_title(f"suite {s.get('suite', '?')}: per-check worst case")
        ax.tick_params(axis="x", rotation=30)
        fig.tight_layout()
        path = os.path.join(outdir, f"suite_{s.get('suite', 'results')}.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths
