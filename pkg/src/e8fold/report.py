"""Verification reports shared by the CLI ``verify`` and ``fold`` commands."""

from __future__ import annotations

import time
from collections import Counter

from . import foldcore as fc
from . import linalg as la
from . import polytopes as pt
from . import quatoct as qo
from . import rootsys as rs
from .exactfield import PHI, SQRT_PHI


class Report:
    def __init__(self, section: str):
        self.section = section
        self.checks: list = []

    def add(self, name: str, ok: bool, value=None):
        self.checks.append({"name": name, "pass": bool(ok), "value": _plain(value)})
        return ok

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def as_dict(self) -> dict:
        return {"section": self.section, "pass": self.passed, "checks": self.checks}


def _plain(v):
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if hasattr(v, "encode") and hasattr(v, "numerators"):
        return v.encode()
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)


def isomorphism_report() -> Report:
    rep = Report("isomorphism")
    props = fc.u_property_report()
    for which in ("U", "U_inverse"):
        p = props[which]
        rep.add(f"{which}.symmetric", p["symmetric"])
        rep.add(f"{which}.trace_zero", not p["trace"], p["trace"])
        rep.add(f"{which}.det_one", p["det"] == 1, p["det"])
        rep.add(f"{which}.charpoly_palindromic", p["palindromic"], list(p["charpoly"]))
    rep.add("U.U_inverse_identity", props["product_is_identity"])
    rep.add("U_inverse.matches_exact_inverse", props["inverse_matches"])
    rep.add("U_inverse.one_phi_exchange", props["exchange_rule"])
    rep.add("U.gate_construction", props["gates_match"])

    roots = rs.e8_roots_direct().vertices
    pairs = fc.fold_all(roots)
    classes = Counter((p.norm_class_left, p.norm_class_right) for p in pairs)
    rep.add(
        "fold.norm_classes",
        classes == Counter({("small", "large"): 96, ("large", "small"): 96, ("small", "small"): 24, ("large", "large"): 24}),
        {f"{a}/{b}": n for (a, b), n in sorted(classes.items())},
    )
    neg_ok = all(
        fc.fold(la.vec_neg(r), check=False).neg() == p for r, p in zip(roots, pairs)
    )
    rep.add("fold.negation_equivariant", neg_ok)

    try:
        dec = fc.decompose(roots)
        rep.add("decompose.four_600_cells", True, dec.edge_counts)
        icos = pt.make_I().as_set()
        for name in dec.sets():
            rep.add(f"decompose.{name}_unit_equals_I", set(dec.unit(name)) == icos)
    except fc.FoldError as exc:
        rep.add("decompose.four_600_cells", False, str(exc))

    try:
        table = fc.map_lr(roots)
        rep.add("mapLR.well_defined", True, len(table))
    except fc.FoldError as exc:
        rep.add("mapLR.well_defined", False, str(exc))
        return rep
    rep.add("mapLR.involution", all(table[table[k]] == k for k in table))
    rev_ok = True
    swap_ok = True
    for p in pairs:
        if p.t_class:
            s = 1 if p.norm_class_left == "large" else -1
            rev_ok &= p.right == tuple(s * x for x in reversed(p.left))
        else:
            nl, nr = la.norm2(p.left), la.norm2(p.right)
            swap_ok &= nr in (nl * PHI * PHI, nl / (PHI * PHI))
    rep.add("mapLR.t_class_reversal_sign", rev_ok)
    rep.add("mapLR.norm_class_exchange", swap_ok)
    rep.add("mapLR.closed_form_agrees", all(fc.map_lr_closed_form(k[1]) == v[1] for k, v in table.items()))

    rebuilt = fc.unfold(pt.make_I().elements)
    rep.add("unfold.round_trip", set(rebuilt) == set(roots), len(rebuilt))

    e = fc.exp_iU_numeric()
    rep.add("expiU.unitary", e.unitarity_residual < 1e-12, e.unitarity_residual)
    rep.add("expiU.imag_trace_zero", abs(e.im_trace) < 1e-12, e.im_trace)
    rep.add("expiU.real_trace_near_4", abs(e.re_trace - 4) <= 0.5, e.re_trace)
    return rep


def quaternion_report() -> Report:
    rep = Report("quaternions")
    T, Tp = pt.make_T(), pt.make_Tp()
    I, Ip = pt.make_I(), pt.make_Ip()
    S, Sp = pt.make_S(), pt.make_Sp()
    rep.add("T.order", len(T) == 24, len(T))
    rep.add("Tp.order", len(Tp) == 24, len(Tp))
    rep.add("F4.order", len(pt.make_F4()) == 48, len(pt.make_F4()))
    rep.add("S.order", len(S) == 96, len(S))
    rep.add("Sp.order", len(Sp) == 96, len(Sp))
    rep.add("I.order", len(I) == 120, len(I))
    rep.add("I.group", pt.is_group(I))
    rep.add("Ip.order", len(Ip) == 120, len(Ip))
    rep.add("Ip.coset_of_I", pt.is_coset_of(Ip, I) and qo.products_within(Ip, [qo.qconj(x) for x in Ip], I))
    j1, j2 = pt.make_J(1), pt.make_J(2)
    rep.add("J.order", len(j1) == 600, len(j1))
    rep.add("J.formulas_agree", j1.as_set() == j2.as_set())
    jp = pt.make_Jp()
    rep.add("Jp.order", len(jp) == 600, len(jp))
    rep.add("dual_snub.order", len(pt.make_dual_snub()) == 144, len(pt.make_dual_snub()))
    filt = pt.seed_constraint_filter(S)
    alpha = pt.make_seeds()[2]
    rep.add("seed_filter.count", len(filt) == 48, len(filt))
    rep.add("seed_filter.contains_alpha", alpha in filt)
    mapping = pt.e8_to_j_map()
    jset = j1.as_set()
    tens = all(len(v) == 10 and set(v) <= jset for v in mapping.values())
    coincident = sum(len(set(v)) < 10 for v in mapping.values())
    rep.add("E8_to_J.ten_per_root", tens, {"roots_with_coincident_halves": coincident})
    mult = Counter(x for v in mapping.values() for x in v)
    rep.add("E8_to_J.uniform_multiplicity_4", set(mult) == jset and set(mult.values()) == {4}, sorted(set(mult.values())))
    return rep


def octonion_report() -> Report:
    rep = Report("octonions")
    sts = qo.enumerate_sts7()
    tables = qo.enumerate_octonion_tables()
    rep.add("sts7.count", len(sts) == 30, len(sts))
    rep.add("tables.count", len(tables) == 480, len(tables))
    d = qo.default_table()
    rep.add("default.first_triad_123", d.triads[0] == (1, 2, 3), [list(t) for t in d.triads])
    quat_ok = all(
        d.sc[a][b] == (1, c) for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2))
    )
    rep.add("default.quaternion_relations", quat_ok)
    rep.add("default.quadrant_closed", qo.is_quadrant_closed(d))
    rep.add("mirror.palindromic", qo.is_palindromic_table(qo.select_table(qo.MIRROR_TRIADS)))
    rep.add("default.not_palindromic", not qo.is_palindromic_table(d))
    return rep


def orbit_report(progress=None) -> Report:
    rep = Report("orbits")
    e8 = rs.group("E8")
    t0 = time.perf_counter()
    roots = rs.e8_roots_direct()
    rep.add("421.count", len(roots) == 240, len(roots))
    rep.add("421.edges", len(rs.edge_graph(roots, 2)) == 6720, len(roots.edges))
    for name, n, ne, r2 in (("241", 2160, 69120, 8), ("142", 17280, 483840, 32)):
        poly = rs.orbit_from_label(e8, rs.E8_ORBITS[name])
        edges = rs.edge_graph(poly, 2, progress=progress)
        rep.add(f"{name}.count", len(poly) == n, len(poly))
        rep.add(f"{name}.edges", len(edges) == ne, len(edges))
        rep.add(f"{name}.radius_squared", poly.radius2() == r2, poly.radius2())
    rep.add("elapsed_seconds", True, round(time.perf_counter() - t0, 3))
    return rep


def projection_report() -> Report:
    import numpy as np

    from . import geom

    rep = Report("projections")
    basis = geom.e8_petrie_basis().rows
    dev = np.abs(basis - geom.PRINTED_BASIS).max(axis=1)
    for k, axis in enumerate("XYZ"):
        rep.add(f"basis.{axis}_within_5e-4", dev[k] <= 5e-4, float(dev[k]))
    e8 = rs.group("E8")
    roots = rs.e8_roots_direct().vertices
    part = geom.shell_partition(geom.platonic_3d(roots), 1e-9, geom.platonic_3d_exact_norms(roots))
    rep.add("421.eight_shells", len(part.groups) == 8, part.counts)
    rep.add("421.phi_quadruples", geom.phi_quadruples(part) is not None)
    for name, outer in (("241", [24, 30]), ("142", [40, 60])):
        poly = rs.orbit_from_label(e8, rs.E8_ORBITS[name])
        sp = geom.shell_partition(geom.platonic_3d(poly.vertices), 1e-9)
        rep.add(f"{name}.outer_shells", sp.counts[-2:] == outer, sp.counts[-2:])
    return rep


def fold_table() -> list:
    """Rows in Pascal-block order: index, block, root, L, R, classes, t_class, seed star."""
    roots = rs.e8_roots_direct()
    blocks = rs.canonical_pascal_order(roots.vertices)
    star_pool = pt.seed_constraint_filter(pt.make_S()).as_set()
    rows = []
    idx = 0
    rootset = roots.vertex_set()
    for b, block in enumerate(blocks):
        for v in block:
            if v not in rootset:
                continue
            p = fc.fold(v, check=False)
            scale = SQRT_PHI if p.norm_class_left == "small" else SQRT_PHI * (PHI - 1)
            unit_left = la.vec_scale(scale, p.left)
            rows.append({
                "index": idx,
                "block": b,
                "root": v,
                "L": p.left,
                "R": p.right,
                "class_L": p.norm_class_left,
                "class_R": p.norm_class_right,
                "t_class": p.t_class,
                "seed_star": unit_left in star_pool,
            })
            idx += 1
    return rows
