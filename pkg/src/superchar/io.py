"""JSON and CSV output.  Every payload carries ``schema_version``."""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .exact import Cyclotomic

SCHEMA_VERSION = "1.0"

__all__ = ["SCHEMA_VERSION", "label_json", "table_payload", "orbit_payload", "terms_payload",
           "dumps", "table_csv", "write_output"]


def label_json(label) -> Any:
    if hasattr(label, "to_json"):
        return label.to_json()
    if isinstance(label, tuple):
        return [label_json(x) for x in label]
    return str(label)


def _value(v) -> Any:
    if isinstance(v, Cyclotomic):
        return v.to_json()
    if isinstance(v, Fraction):
        return str(v)
    return v


def table_payload(kind: str, n: int, p: int, char_names: Sequence, class_names: Sequence,
                  class_sizes: Sequence[int], table: Sequence[Sequence[Cyclotomic]], **extra) -> dict:
    """Supercharacter table: rows are characters, columns are superclasses."""
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "n": n,
        "p": p,
        "characters": [{"label": label_json(c), "name": str(c)} for c in char_names],
        "superclasses": [{"label": label_json(c), "name": str(c), "size": int(s)}
                         for c, s in zip(class_names, class_sizes)],
        "values": [[str(v) for v in row] for row in table],
        "exact_values": [[_value(v) for v in row] for row in table],
    }
    out.update(extra)
    return out


def orbit_payload(kind: str, n: int, p: int, matrices: np.ndarray, dec, ambient: str = "G") -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "n": n,
        "p": p,
        "ambient": ambient,
        "orbits": [
            {"label": label_json(name), "name": str(name), "size": int(size),
             "representative": matrices[rep].tolist()}
            for name, size, rep in zip(dec.names, dec.sizes, dec.reps)
        ],
    }


def terms_payload(terms: dict, **extra) -> dict:
    """Graded element or tensor as ``{label: coefficient}`` with string keys, in sorted order."""
    def key(lab):
        if isinstance(lab, tuple):
            return " ⊗ ".join(str(x) for x in lab)
        return str(lab)

    items = sorted(((key(k), str(v)) for k, v in terms.items()), key=lambda kv: kv[0])
    out = {"schema_version": SCHEMA_VERSION}
    out.update(extra)
    out["terms"] = dict(items)
    return out


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def table_csv(payload: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["schema_version", payload["schema_version"]])
    w.writerow(["character \\ superclass"] + [c["name"] for c in payload["superclasses"]])
    w.writerow(["size"] + [c["size"] for c in payload["superclasses"]])
    for ch, row in zip(payload["characters"], payload["values"]):
        w.writerow([ch["name"]] + row)
    return buf.getvalue()


def write_output(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
