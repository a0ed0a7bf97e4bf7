"""Deterministic JSON and CSV rendering for command-line reports.

The JSON writer formats every float with 17 significant digits so that
values round-trip exactly and reports are byte-identical across runs and
platforms.  The CSV writer follows RFC 4180 quoting and uses the shortest
exact decimal representation for floats.
"""

import csv
import io
import json
import math

from .errors import NonFinite


def _float_token(x):
    if math.isnan(x) or math.isinf(x):
        raise NonFinite(f"cannot serialize non-finite value {x!r}")
    if x == int(x) and abs(x) < 1e16:
        return "%.1f" % x
    return "%.17g" % x


def _emit(obj, out, indent):
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.write("  " * (indent + 1))
            out.write(json.dumps(str(key)))
            out.write(": ")
            _emit(value, out, indent + 1)
            out.write(",\n" if i + 1 < len(obj) else "\n")
        out.write(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.write("[]")
            return
        out.write("[\n")
        for i, value in enumerate(obj):
            out.write("  " * (indent + 1))
            _emit(value, out, indent + 1)
            out.write(",\n" if i + 1 < len(obj) else "\n")
        out.write(pad + "]")
    elif isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        out.write(json.dumps(obj))
    elif isinstance(obj, float):
        out.write(_float_token(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} to a report")


def render_json(payload):
    """Serialize a report payload; insertion order of keys is preserved."""
    out = io.StringIO()
    _emit(payload, out, 0)
    out.write("\n")
    return out.getvalue()


def _csv_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            raise NonFinite(f"cannot serialize non-finite value {value!r}")
        return repr(value)
    return value


def render_csv(header, rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\r\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return out.getvalue()
