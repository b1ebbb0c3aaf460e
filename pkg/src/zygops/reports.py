"""Report envelopes, canonical JSON, and CSV emission.

The payload section of a report is deterministic: canonical JSON with sorted
keys and repr-exact floats, so identical config and toolkit version
reproduce identical bytes.  Timestamps and wall-clock timings live only in
the envelope.  Files are written atomically (temp file + rename).
"""

from __future__ import annotations

import json
import os
import tempfile
import time
from datetime import datetime, timezone
from pathlib import Path

SCHEMA_VERSION = 1


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, tight separators, no NaN/Inf."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def atomic_write_text(path: str | Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class StageTimer:
    """Wall-clock per pipeline stage, reported in the envelope."""

    def __init__(self):
        self.timings = {}
        self._start = None
        self._stage = None

    def start(self, stage: str):
        self._stage = stage
        self._start = time.perf_counter()

    def stop(self):
        if self._stage is not None:
            self.timings[self._stage] = round(time.perf_counter() - self._start, 6)
            self._stage = None


def make_envelope(version: str, command: str, payload: dict, timings: dict) -> dict:
    return {
        "toolkit": "zygops",
        "version": version,
        "command": command,
        "created_at": datetime.now(timezone.utc).isoformat(),
        "timings": dict(timings),
        "payload": payload,
    }


def write_report(path: str | Path, envelope: dict):
    """Envelope JSON with the payload serialized canonically.

    The payload is embedded as parsed JSON, but the bytes compared by golden
    tests come from `payload_bytes` of the same dict, so the round trip is
    loss-free (canonical JSON of a canonical-JSON-parse is a fixed point).
    """
    atomic_write_text(path, json.dumps(envelope, indent=2, sort_keys=True, allow_nan=False) + "\n")


def payload_bytes(payload: dict) -> bytes:
    return canonical_json(payload).encode("utf-8")


def write_csv(path: str | Path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(x) for x in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def _csv_cell(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def profile_rows(payload: dict):
    """Flatten every profile in an analyze payload to (quantity, level, x, value)."""
    rows = []

    def add_sup(name: str, sup: dict):
        for idx, (r, s) in enumerate(sup.get("per_level", [])):
            rows.append((name, idx, r, s))
        for r, s in sup.get("probes", []):
            rows.append((name + ".probe", -1, r, s))

    def add_limsup(name: str, prof: dict):
        for idx, (eps, _cnt, s) in enumerate(prof.get("levels", [])):
            rows.append((name, idx, eps, s))

    results = payload.get("results", {})
    bound = results.get("boundedness")
    if bound:
        for qname, q in bound.get("quantities", {}).items():
            if "sup" in q:
                add_sup(f"sup.{qname}", q["sup"])
        for cname, c in bound.get("weighted_conditions", {}).items():
            add_sup(f"condition.{cname}", c)
        add_sup("u_norm.seminorm", bound["u_norm"]["seminorm"])
        for fname, fam in bound.get("family_audits", {}).items():
            for idx, (r, v) in enumerate(fam.get("per_level", [])):
                rows.append((f"family.{fname}", idx, r, v))
    ess = results.get("essential_norm")
    if ess:
        for qname, q in ess.get("abc", {}).items():
            if "limsup" in q:
                add_limsup(f"limsup.{qname}", q["limsup"])
    wt = results.get("weighted_type")
    if wt:
        add_sup("weighted.sup_side", wt["sup_side"])
        add_limsup("weighted.limsup", wt["limsup_profile"])
    return rows


def monomial_rows(payload: dict):
    results = payload.get("results", {})
    bound = results.get("boundedness") or {}
    mono = results.get("monomials") or bound.get("monomials")
    if not mono:
        return []
    return [(j, v) for j, v in mono.get("terms", [])]


def agreement_rows(payload: dict):
    rows = []
    results = payload.get("results", {})
    bound = results.get("boundedness")
    if bound and "agreement" in bound:
        verdicts = bound["agreement"]["verdicts"]
        matrix = bound["agreement"]["matrix"]
        names = sorted(matrix)
        rows.append(("criterion", *names, "verdict"))
        for i in names:
            rows.append((i, *(matrix[i][j] for j in names), verdicts[i]))
    return rows
