"""File writers: JSON, CSV, OFF and SVG (via matplotlib).

Every writer is deterministic: identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json

import numpy as np

from . import __version__
from .exactfield import TowerScalar

__all__ = [
    "metadata",
    "config_hash",
    "vertices_to_json",
    "json_dumps",
    "load_json",
    "vertices_to_csv",
    "rows_to_csv",
    "write_off",
    "write_svg",
]

TOOL = "e8fold"


def config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def metadata(config: dict, **extra) -> dict:
    meta = {"tool": TOOL, "version": __version__, "config": config, "config_hash": config_hash(config)}
    meta.update(extra)
    return meta


def json_dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def vertices_to_json(vertices, meta: dict, edges=None, extra: dict | None = None) -> dict:
    doc = {
        "meta": meta,
        "vertices": [[x.encode() for x in v] for v in vertices],
        "approx": [[round(float(x), 12) for x in v] for v in vertices],
    }
    if edges is not None:
        doc["edges"] = [list(e) for e in edges]
    if extra:
        doc.update(extra)
    return doc


def load_json(text: str) -> dict:
    """Parse a document written by ``vertices_to_json``; vertices come back exact."""
    doc = json.loads(text)
    if "meta" not in doc or doc["meta"].get("tool") != TOOL:
        raise ValueError("not an e8fold JSON document")
    if "vertices" in doc:
        doc["exact"] = [tuple(TowerScalar.decode(f) for f in v) for v in doc["vertices"]]
    return doc


def _csv_text(header_lines, columns, rows) -> str:
    buf = io.StringIO()
    for line in header_lines:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _meta_lines(meta: dict) -> list:
    return [json.dumps(meta, sort_keys=True, separators=(",", ":"))]


def vertices_to_csv(vertices, meta: dict) -> str:
    dim = len(vertices[0]) if vertices else 0
    cols = ["index"] + [f"x{k}" for k in range(dim)] + [f"x{k}_exact" for k in range(dim)]
    rows = []
    for i, v in enumerate(vertices):
        rows.append([i] + [repr(round(float(x), 12)) for x in v] + [" ".join(x.encode()) for x in v])
    return _csv_text(_meta_lines(meta), cols, rows)


def rows_to_csv(columns, rows, meta: dict) -> str:
    return _csv_text(_meta_lines(meta), columns, rows)


def write_off(points: np.ndarray, shells, meta: dict) -> str:
    """OFF text with one vertex block per shell, separated by comment lines."""
    lines = ["OFF"]
    for line in _meta_lines(meta):
        lines.append(f"# {line}")
    lines.append(f"{len(points)} 0 0")
    for k, (norm, idx, _) in enumerate(shells):
        lines.append(f"# shell {k} norm {norm:.12f} count {len(idx)}")
        for i in idx:
            lines.append(" ".join(f"{c:.12f}" for c in points[i]))
    return "\n".join(lines) + "\n"


def write_svg(points: np.ndarray, meta: dict, edges=None, cull_fraction: float = 0.0, title: str = "") -> str:
    """2D point/edge cloud through matplotlib's SVG backend."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.collections import LineCollection

    if not 0.0 <= cull_fraction < 1.0:
        raise ValueError("cull fraction must be in [0, 1)")
    pts = np.asarray(points, dtype=float)[:, :2]
    with matplotlib.rc_context({"svg.hashsalt": TOOL, "svg.fonttype": "none", "path.simplify": False}):
        fig, ax = plt.subplots(figsize=(8, 8))
        ax.set_aspect("equal")
        ax.axis("off")
        if edges:
            segs = _cull(pts, edges, cull_fraction)
            ax.add_collection(LineCollection(segs, linewidths=0.2, colors="0.45", alpha=0.6))
        r = np.hypot(pts[:, 0], pts[:, 1])
        ax.scatter(pts[:, 0], pts[:, 1], s=4, c=r, cmap="viridis", linewidths=0)
        if title:
            ax.set_title(title)
        lim = float(r.max()) * 1.05 if len(r) else 1.0
        ax.set_xlim(-lim, lim)
        ax.set_ylim(-lim, lim)
        buf = io.StringIO()
        desc = json.dumps(meta, sort_keys=True, separators=(",", ":"))
        fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": TOOL, "Description": desc})
        plt.close(fig)
    return buf.getvalue()


def _cull(pts, edges, fraction):
    """Drop the given fraction of edges closest to the centre (by outer endpoint radius)."""
    e = np.asarray(edges, dtype=np.int64)
    r = np.hypot(pts[:, 0], pts[:, 1])
    outer = np.maximum(r[e[:, 0]], r[e[:, 1]])
    order = np.lexsort((e[:, 1], e[:, 0], outer))
    keep = order[int(round(fraction * len(e))):]
    keep.sort()
    return pts[e[keep]]
