"""Command-line front end.

Subcommands: generate, fold, verify, project, export, tables.  Standard output
carries only the requested document; progress and errors go to standard error.
Relative output paths are resolved against ``$E8FOLD_OUTDIR`` when it is set.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import __version__
from . import export as ex
from . import rootsys as rs

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
FORMATS = ("json", "csv", "svg", "off")
VERIFY_SECTIONS = ("isomorphism", "quaternions", "octonions", "orbits", "projections")
ORBIT_INPUTS = ("421", "241", "142")


class ConfigError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    group: str = "E8"
    orbit: str | None = None
    construction: str | None = None
    input: str | None = None
    output: str | None = None
    format: str = "json"
    edges: bool = False
    projection: str = "petrie"
    sections: tuple = ()
    table: str = "default"
    tolerance: float = 1e-9
    cull_fraction: float = 0.0

    @classmethod
    def from_dict(cls, d: dict) -> RunConfig:
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**d)
        cfg.validate()
        return cfg

    def hashable(self) -> dict:
        d = dataclasses.asdict(self)
        d.pop("output")
        d["sections"] = list(self.sections)
        return d

    def validate(self):
        from .polytopes import CONSTRUCTIONS

        allowed = {
            "generate": ("json", "csv"),
            "fold": ("json", "csv"),
            "verify": ("json",),
            "project": FORMATS,
            "export": ("json", "csv"),
            "tables": ("json", "csv"),
        }
        if self.command not in allowed:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in allowed[self.command]:
            raise ConfigError(f"{self.command} supports formats {list(allowed[self.command])}")
        if self.tolerance <= 0:
            raise ConfigError("tolerance must be positive")
        if not 0.0 <= self.cull_fraction < 1.0:
            raise ConfigError("cull fraction must lie in [0, 1)")
        if self.command == "generate":
            if (self.orbit is None) == (self.construction is None):
                raise ConfigError("generate needs exactly one of --orbit or --construction")
            if self.construction is not None and self.construction not in CONSTRUCTIONS:
                raise ConfigError(f"unknown construction {self.construction!r}")
            if self.group not in rs.GROUP_NAMES:
                raise ConfigError(f"unknown group {self.group!r}")
        if self.command == "project":
            if self.projection not in ("petrie", "platonic"):
                raise ConfigError("projection must be petrie or platonic")
            if not self.input:
                raise ConfigError("project needs --input")
        if self.command == "export" and not self.input:
            raise ConfigError("export needs --input")
        if self.command == "verify":
            bad = set(self.sections) - set(VERIFY_SECTIONS)
            if bad:
                raise ConfigError(f"unknown verify sections {sorted(bad)}")
        if self.command == "tables" and self.table not in ("default", "mirror", "all"):
            raise ConfigError("table must be default, mirror or all")


# ---------------------------------------------------------------- helpers

def _progress(label):
    return rs.stderr_progress(label)


def _orbit(group: str, orbit: str, with_edges: bool):
    spec = rs.group(group)
    if group == "E8" and orbit == "421":
        poly = rs.e8_roots_direct()
    else:
        label = rs.E8_ORBITS.get(orbit, orbit) if group == "E8" else orbit
        poly = rs.orbit_from_label(spec, label, progress=_progress(f"orbit {orbit}"))
    if with_edges:
        rs.edge_graph(poly, rs.min_squared_distance(poly), progress=_progress(f"edges {orbit}"))
    return poly


def _construction(name: str, with_edges: bool):
    from .polytopes import construction

    qs = construction(name)
    poly = rs.OrbitPolytope(qs.elements, provenance={"construction": name})
    if with_edges:
        rs.edge_graph(poly, rs.min_squared_distance(poly))
    return poly


def _input_vertices(name: str, with_edges: bool):
    """Named orbit, named construction, or a JSON file written by ``generate``."""
    from .polytopes import CONSTRUCTIONS

    if name in ORBIT_INPUTS:
        return _orbit("E8", name, with_edges)
    if name in CONSTRUCTIONS:
        return _construction(name, with_edges)
    path = Path(name)
    if not path.is_file():
        raise ConfigError(f"input {name!r} is neither a known set nor a file")
    doc = ex.load_json(path.read_text())
    poly = rs.OrbitPolytope(tuple(doc["exact"]), provenance={"file": str(path)})
    if "edges" in doc:
        poly.edges = [tuple(e) for e in doc["edges"]]
    elif with_edges:
        rs.edge_graph(poly, rs.min_squared_distance(poly))
    return poly


def _resolve(path: str) -> Path:
    p = Path(path)
    base = os.environ.get("E8FOLD_OUTDIR")
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, output: str | None):
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    p = _resolve(output)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text, encoding="utf-8", newline="\n")


def _meta(cfg: RunConfig, **extra):
    return ex.metadata(cfg.hashable(), **extra)


# ---------------------------------------------------------------- commands

def _cmd_generate(cfg: RunConfig):
    if cfg.orbit is not None:
        poly = _orbit(cfg.group, cfg.orbit, cfg.edges)
    else:
        poly = _construction(cfg.construction, cfg.edges)
    extra = {"vertex_count": len(poly), "dimension": len(poly.vertices[0])}
    norms = sorted(poly.shells, key=float)
    extra["squared_norms"] = [n.encode() for n in norms]
    if poly.edges is not None:
        extra["edge_count"] = len(poly.edges)
    meta = _meta(cfg, **extra)
    if cfg.format == "json":
        text = ex.json_dumps(ex.vertices_to_json(poly.vertices, meta, poly.edges))
    else:
        text = ex.vertices_to_csv(poly.vertices, meta)
    _emit(text, cfg.output)
    return EXIT_OK


def _enc(v):
    return [x.encode() for x in v]


def _cmd_fold(cfg: RunConfig):
    from .report import fold_table

    rows = fold_table()
    meta = _meta(cfg, row_count=len(rows))
    if cfg.format == "json":
        doc = {"meta": meta, "rows": [
            {**r, "root": _enc(r["root"]), "L": _enc(r["L"]), "R": _enc(r["R"])} for r in rows
        ]}
        text = ex.json_dumps(doc)
    else:
        def fmt(v):
            return " ".join(f"{float(x):.6f}" for x in v)

        cols = ["index", "block", "root", "L", "R", "class_L", "class_R", "t_class", "seed_star"]
        body = [
            [r["index"], r["block"], fmt(r["root"]), fmt(r["L"]), fmt(r["R"]), r["class_L"], r["class_R"],
             int(r["t_class"]), "*" if r["seed_star"] else ""]
            for r in rows
        ]
        text = ex.rows_to_csv(cols, body, meta)
    _emit(text, cfg.output)
    return EXIT_OK


def _cmd_verify(cfg: RunConfig):
    from . import report

    sections = cfg.sections or ("isomorphism",)
    builders = {
        "isomorphism": report.isomorphism_report,
        "quaternions": report.quaternion_report,
        "octonions": report.octonion_report,
        "orbits": lambda: report.orbit_report(progress=_progress("edges")),
        "projections": report.projection_report,
    }
    results = []
    for name in VERIFY_SECTIONS:
        if name in sections:
            print(f"verify: {name}", file=sys.stderr, flush=True)
            results.append(builders[name]().as_dict())
    ok = all(r["pass"] for r in results)
    doc = {"meta": _meta(cfg), "pass": ok, "sections": results}
    _emit(ex.json_dumps(doc), cfg.output)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_project(cfg: RunConfig):
    import numpy as np

    from . import geom

    poly = _input_vertices(cfg.input, cfg.edges and cfg.format == "svg")
    dim = len(poly.vertices[0])
    exact_norms = None
    if cfg.projection == "petrie":
        basis = geom.e8_petrie_basis() if dim == 8 else geom.h4_petrie_basis()
        rows = basis.rows if dim == 8 else basis.rows[:, :4]
        pts = geom.project(poly.vertices, geom.ProjectionBasis(rows, basis.label))
        basis_meta = [[round(float(x), 12) for x in r] for r in rows]
    else:
        pts = geom.platonic_3d(poly.vertices)
        exact_norms = geom.platonic_3d_exact_norms(poly.vertices)
        basis_meta = "U rows 0-2"
    # Petrie shells are the rings of the (X, Y) plane; Platonic shells are 3D
    ring_pts = pts[:, :2] if cfg.projection == "petrie" else pts
    part = geom.shell_partition(ring_pts, cfg.tolerance, exact_norms)
    meta = _meta(cfg, vertex_count=len(poly), basis=basis_meta, shell_counts=part.counts)
    if cfg.format == "svg":
        text = ex.write_svg(pts, meta, poly.edges if cfg.edges else None, cfg.cull_fraction,
                            title=f"{cfg.input} {cfg.projection}")
    elif cfg.format == "off":
        text = ex.write_off(pts, part.groups, meta)
    else:
        shell_of = np.empty(len(pts), dtype=int)
        for k, (_, idx, _) in enumerate(part.groups):
            shell_of[idx] = k
        shells = [{"norm": round(n, 12), "count": len(idx), "exact_norm2": e.encode() if e is not None else None}
                  for n, idx, e in part.groups]
        if cfg.format == "json":
            doc = {"meta": meta, "shells": shells,
                   "points": [[round(float(c), 12) for c in p] for p in pts], "shell": shell_of.tolist()}
            text = ex.json_dumps(doc)
        else:
            cols = ["index", "shell"] + [f"p{k}" for k in range(pts.shape[1])]
            body = [[i, int(shell_of[i])] + [repr(round(float(c), 12)) for c in p] for i, p in enumerate(pts)]
            text = ex.rows_to_csv(cols, body, meta)
    _emit(text, cfg.output)
    return EXIT_OK


def _cmd_export(cfg: RunConfig):
    path = Path(cfg.input)
    doc = ex.load_json(path.read_text(encoding="utf-8"))
    exact = doc.pop("exact", None)
    if cfg.format == "json":
        text = ex.json_dumps(doc)
    else:
        if exact is None:
            raise ConfigError("CSV export needs a vertex document")
        text = ex.vertices_to_csv(exact, doc["meta"])
    _emit(text, cfg.output)
    return EXIT_OK


def _table_doc(name, t, qo):
    return {
        "name": name,
        "triads": [list(x) for x in t.triads],
        "grid": t.grid(),
        "quadrant_closed": qo.is_quadrant_closed(t),
        "palindromic": qo.is_palindromic_table(t),
    }


def _cmd_tables(cfg: RunConfig):
    from . import quatoct as qo

    if cfg.table == "default":
        docs = [_table_doc("default", qo.default_table(), qo)]
    elif cfg.table == "mirror":
        docs = [_table_doc("mirror", qo.select_table(qo.MIRROR_TRIADS), qo)]
    else:
        docs = [_table_doc(f"table{i:03d}", t, qo) for i, t in enumerate(qo.enumerate_octonion_tables())]
    meta = _meta(cfg, table_count=len(docs))
    if cfg.format == "json":
        text = ex.json_dumps({"meta": meta, "tables": docs})
    else:
        cols = ["name", "triads", "quadrant_closed", "palindromic"] + [f"row{i}" for i in range(8)]
        body = [
            [d["name"], " ".join("".join(map(str, t)) for t in d["triads"]), int(d["quadrant_closed"]),
             int(d["palindromic"])] + [" ".join(map(str, row)) for row in d["grid"]]
            for d in docs
        ]
        text = ex.rows_to_csv(cols, body, meta)
    _emit(text, cfg.output)
    return EXIT_OK


COMMANDS = {
    "generate": _cmd_generate,
    "fold": _cmd_fold,
    "verify": _cmd_verify,
    "project": _cmd_project,
    "export": _cmd_export,
    "tables": _cmd_tables,
}


def run(cfg: RunConfig) -> int:
    cfg.validate()
    return COMMANDS[cfg.command](cfg)


# ---------------------------------------------------------------- parsing

def build_parser() -> argparse.ArgumentParser:
    from .polytopes import CONSTRUCTIONS

    p = argparse.ArgumentParser(prog="e8fold", description="Exact E8 / H4 folding toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp, formats, default="json"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("-o", "--output", help="output file (default: stdout)")

    g = sub.add_parser("generate", help="vertices (and edges) of an orbit or named construction")
    g.add_argument("--group", default="E8", choices=rs.GROUP_NAMES)
    sel = g.add_mutually_exclusive_group(required=True)
    sel.add_argument("--orbit", help="ringed-node label such as 0001, or 421/241/142 for E8")
    sel.add_argument("--construction", choices=CONSTRUCTIONS)
    g.add_argument("--edges", action="store_true", help="also compute the minimal-distance edge graph")
    out(g, ("json", "csv"))

    f = sub.add_parser("fold", help="per-root fold table in Pascal block order")
    out(f, ("json", "csv"))

    v = sub.add_parser("verify", help="run invariant checks; exit status 1 if any fails")
    for s in VERIFY_SECTIONS:
        v.add_argument(f"--{s}", action="store_true")
    v.add_argument("--all", action="store_true")
    out(v, ("json",))

    pr = sub.add_parser("project", help="2D/3D projections and norm shells")
    mode = pr.add_mutually_exclusive_group()
    mode.add_argument("--petrie", dest="projection", action="store_const", const="petrie")
    mode.add_argument("--platonic", dest="projection", action="store_const", const="platonic")
    pr.add_argument("--input", required=True, help="421, 241, 142, a construction name, or a generate JSON file")
    pr.add_argument("--edges", action="store_true")
    pr.add_argument("--cull-fraction", type=float, default=0.0)
    pr.add_argument("--tolerance", type=float, default=1e-9, help="shell grouping tolerance")
    out(pr, FORMATS)

    e = sub.add_parser("export", help="re-emit a JSON document as JSON or CSV")
    e.add_argument("--input", required=True)
    out(e, ("json", "csv"))

    t = sub.add_parser("tables", help="octonion multiplication tables")
    which = t.add_mutually_exclusive_group()
    for name in ("default", "mirror", "all"):
        which.add_argument(f"--{name}", dest="table", action="store_const", const=name)
    out(t, ("json", "csv"))
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    d = {"command": ns.command, "format": ns.format, "output": ns.output}
    if ns.command == "generate":
        d.update(group=ns.group, orbit=ns.orbit, construction=ns.construction, edges=ns.edges)
    elif ns.command == "verify":
        chosen = VERIFY_SECTIONS if ns.all else tuple(s for s in VERIFY_SECTIONS if getattr(ns, s))
        d["sections"] = chosen
    elif ns.command == "project":
        d.update(projection=ns.projection or "petrie", input=ns.input, edges=ns.edges,
                 cull_fraction=ns.cull_fraction, tolerance=ns.tolerance)
    elif ns.command == "export":
        d["input"] = ns.input
    elif ns.command == "tables":
        d["table"] = ns.table or "default"
    return RunConfig.from_dict(d)


def _error(kind: str, exc: Exception) -> int:
    print(json.dumps({"error": kind, "message": str(exc)}, sort_keys=True), file=sys.stderr)
    return EXIT_ERROR


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return run(config_from_args(ns))
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_ERROR
    except ConfigError as exc:
        return _error("config", exc)
    except OSError as exc:
        return _error("io", exc)
    except ValueError as exc:
        return _error("invariant", exc)


if __name__ == "__main__":
    sys.exit(main())
