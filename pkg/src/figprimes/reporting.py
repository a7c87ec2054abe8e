"""Report envelope shared by every CLI task, plus json/csv/text renderers.

The envelope key order is part of the contract; renderers are pure functions
of the envelope (and the optional tabular attachment), so identical inputs
always serialize to identical bytes.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

FORMATS = ("json", "csv", "text")

ENVELOPE_KEYS = (
    "task",
    "params",
    "range",
    "verified",
    "counterexamples",
    "counterexample_total",
    "witness_sample",
    "stats",
    "errata",
    "elapsed_ms",
)


@dataclass
class Table:
    """Tabular attachment used by the csv renderer."""

    header: list[str]
    rows: list[list[object]]


def build_envelope(
    task: str,
    params: dict,
    range_: tuple[int, int] | None = None,
    verified: bool | None = None,
    counterexamples: list | None = None,
    counterexample_total: int = 0,
    witness_sample: list | None = None,
    stats: dict | None = None,
    errata: list | None = None,
    elapsed_ms: int = 0,
) -> dict:
    env = {
        "task": task,
        "params": params,
        "range": list(range_) if range_ is not None else None,
        "verified": verified,
        "counterexamples": counterexamples if counterexamples is not None else [],
        "counterexample_total": counterexample_total,
        "witness_sample": witness_sample if witness_sample is not None else [],
        "stats": stats if stats is not None else {},
    }
    if errata is not None:
        env["errata"] = errata
    env["elapsed_ms"] = elapsed_ms
    return env


def render_json(env: dict) -> bytes:
    return (json.dumps(env, indent=2) + "\n").encode("utf-8")


def render_csv(env: dict, table: Table | None) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if table is None:
        # fall back to a key/value dump of the scalar envelope fields
        writer.writerow(["key", "value"])
        for key in ("task", "range", "verified", "counterexample_total", "elapsed_ms"):
            writer.writerow([key, env.get(key)])
        for key, value in env["stats"].items():
            writer.writerow([f"stats.{key}", value])
    else:
        writer.writerow(table.header)
        for row in table.rows:
            writer.writerow(row)
    return buf.getvalue().encode("utf-8")


def render_text(env: dict) -> bytes:
    lines = [f"task: {env['task']}"]
    if env["params"]:
        pairs = " ".join(f"{k}={v}" for k, v in env["params"].items())
        lines.append(f"params: {pairs}")
    if env["range"] is not None:
        lines.append(f"range: [{env['range'][0]}, {env['range'][1]}]")
    if env["verified"] is not None:
        lines.append(f"verified: {env['verified']}")
    total = env["counterexample_total"]
    lines.append(f"counterexamples: {total}")
    if env["counterexamples"]:
        shown = ", ".join(str(c) for c in env["counterexamples"][:10])
        lines.append(f"  first: {shown}")
    for w in env["witness_sample"][:5]:
        lines.append(f"  witness: {w}")
    for key, value in env["stats"].items():
        lines.append(f"stats.{key}: {value}")
    for e in env.get("errata", []) or []:
        lines.append(f"errata: {e}")
    lines.append(f"elapsed_ms: {env['elapsed_ms']}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def render_report(env: dict, fmt: str, table: Table | None = None) -> bytes:
    if fmt == "json":
        return render_json(env)
    if fmt == "csv":
        return render_csv(env, table)
    if fmt == "text":
        return render_text(env)
    raise ValueError(f"unknown format {fmt!r}")
