"""CSV / JSON serialisation shared by the command line."""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction


def fmt_value(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.12g}"
    if x is None:
        return ""
    return str(x)


def to_csv(rows: list[dict], columns=None, config: dict | None = None) -> str:
    buf = io.StringIO()
    if config is not None:
        buf.write("# config: " + json.dumps(config, sort_keys=True, default=_json_default) + "\n")
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt_value(row.get(c)) for c in columns])
    return buf.getvalue()


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    if hasattr(o, "tolist"):
        return o.tolist()
    if hasattr(o, "item"):
        return o.item()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _clean(o):
    if isinstance(o, float) and math.isinf(o):
        return "inf" if o > 0 else "-inf"
    if isinstance(o, dict):
        return {str(k): _clean(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_clean(v) for v in o]
    return o


def to_json(obj: dict, config: dict | None = None) -> str:
    payload = dict(obj)
    if config is not None:
        payload = {"config": config, **payload}
    return json.dumps(_clean(payload), indent=2, sort_keys=True, default=_json_default) + "\n"


def read_csv(text: str) -> list[dict]:
    """Parse CSV emitted by :func:`to_csv`, skipping ``#`` comment lines."""
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))
