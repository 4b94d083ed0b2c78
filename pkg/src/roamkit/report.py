"""Versioned JSON reports.  Output is byte-stable for fixed inputs."""

from __future__ import annotations

import json

SCHEMA = "roamkit/1"
VERDICTS = ("pass", "fail", "uncertified", "radius-insufficient")


def make_report(check, group, parameters, verdict, result, seed, version,
                witnesses=(), heuristics=(), timings=None) -> dict:
    if verdict not in VERDICTS:
        raise ValueError(f"unknown verdict {verdict!r}")
    if verdict == "uncertified" and not heuristics:
        raise ValueError("an uncertified verdict must name the heuristic that fired")
    rep = {
        "schema": SCHEMA,
        "tool": "roamkit",
        "version": version,
        "check": check,
        "group": group,
        "parameters": parameters,
        "seed": seed,
        "verdict": verdict,
        "result": result,
        "witnesses": list(witnesses),
        "heuristics": sorted(set(heuristics)),
    }
    if timings is not None:
        rep["timings"] = timings
    return rep


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"


def loads(text: str) -> dict:
    rep = json.loads(text)
    if rep.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {rep.get('schema')!r}")
    return rep
