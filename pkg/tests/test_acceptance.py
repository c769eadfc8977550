"""Acceptance suite: one test per criterion, thresholds pinned below.

Run with ``pytest -v tests/test_acceptance.py``; each criterion yields exactly
one PASSED/FAILED line, and a summary block is printed at the end.
"""

import time
from collections import Counter

import numpy as np

from e8fold import foldcore as fc
from e8fold import geom
from e8fold import linalg as la
from e8fold import polytopes as pt
from e8fold import quatoct as qo
from e8fold import rootsys as rs
from e8fold.exactfield import PHI, SQRT2, ONE

# -- pinned thresholds -------------------------------------------------------
C1_SECONDS = 1.0
C2_EDGE_SECONDS = 600.0
C3_SECONDS = 1.0
C4_SECONDS = 5.0
C7_UNITARITY = 1e-12
C7_IMAG_TRACE = 1e-12
C7_REAL_TRACE_WINDOW = 0.5
C7_REAL_TRACE_FROZEN = 4.003701114674875
C7_FROZEN_TOL = 1e-12
C8_SECONDS = 30.0
C10_SECONDS = 60.0
C11_BASIS_TOL = 5e-4
C11_GROUPING_TOL = 1e-9

E8 = rs.group("E8")


def test_c01_e8_construction():
    t0 = time.perf_counter()
    roots = rs.e8_roots_direct()
    edges = rs.edge_graph(roots, 2)
    elapsed = time.perf_counter() - t0
    integer = [v for v in roots.vertices if all(x.is_rational() and x.to_fraction().denominator == 1 for x in v)]
    assert len(roots) == 240
    assert len(integer) == 112 and len(roots) - len(integer) == 128
    assert all(la.norm2(v) == 2 for v in roots.vertices)
    assert len(edges) == 6720
    assert elapsed < C1_SECONDS


def test_c02_orbit_engine():
    progress = rs.stderr_progress("1_42 edges")
    o241 = rs.orbit_from_label(E8, rs.E8_ORBITS["241"])
    assert len(o241) == 2160
    assert len(rs.edge_graph(o241, 2)) == 69120
    o142 = rs.orbit_from_label(E8, rs.E8_ORBITS["142"])
    assert len(o142) == 17280
    t0 = time.perf_counter()
    e142 = rs.edge_graph(o142, 2, progress=progress)
    assert time.perf_counter() - t0 < C2_EDGE_SECONDS
    assert len(e142) == 483840
    # stated radii, with edges of length sqrt(2)
    assert o241.radius2() == (2 * SQRT2) ** 2
    assert o142.radius2() == (4 * SQRT2) ** 2


def test_c03_u_properties():
    t0 = time.perf_counter()
    u, ui = fc.build_U(), fc.build_U_inverse()
    cp = la.charpoly(u)
    ok = (
        la.is_symmetric(u)
        and la.trace(u) == 0
        and la.det(u) == 1
        and la.mat_mul(u, ui) == la.identity(8)
        and la.is_palindromic(cp)
        and fc.exchange_one_phi(fc.U_NUMERATOR) == fc.U_INV_NUMERATOR
    )
    elapsed = time.perf_counter() - t0
    assert ok
    assert cp.coeffs == tuple(reversed(cp.coeffs))
    assert elapsed < C3_SECONDS


def test_c04_fold_decomposition():
    t0 = time.perf_counter()
    roots = rs.e8_roots_direct().vertices
    dec = fc.decompose(roots)
    icos = pt.make_I().as_set()
    units_ok = all(set(dec.unit(name)) == icos for name in dec.sets())
    elapsed = time.perf_counter() - t0
    small, large = PHI - 1, PHI
    assert large / small == PHI * PHI
    assert len(set(dec.h4L)) == len(set(dec.phi_h4L)) == 120
    assert len(set(dec.h4R)) == len(set(dec.phi_h4R)) == 120
    assert all(la.norm2(v) == small for v in dec.h4L + dec.h4R)
    assert all(la.norm2(v) == large for v in dec.phi_h4L + dec.phi_h4R)
    assert set(dec.edge_counts.values()) == {720}
    assert units_ok and pt.is_group(pt.make_I())
    assert elapsed < C4_SECONDS


def test_c05_map_lr():
    roots = rs.e8_roots_direct().vertices
    table = fc.map_lr(roots)
    assert len(table) == 480
    assert all(table[table[k]] == k for k in table)
    for p in fc.fold_all(roots):
        if p.t_class:
            sign = 1 if p.norm_class_left == "large" else -1
            assert p.right == tuple(sign * x for x in reversed(p.left))
        else:
            assert p.norm_class_left != p.norm_class_right


def test_c06_unfold_round_trip():
    rebuilt = fc.unfold(pt.make_I().elements)
    assert set(rebuilt) == rs.e8_roots_direct().vertex_set()
    assert len(rebuilt) == 240


def test_c07_exp_iU():
    e = fc.exp_iU_numeric()
    assert e.unitarity_residual < C7_UNITARITY
    assert abs(e.im_trace) < C7_IMAG_TRACE
    assert abs(e.re_trace - 4) <= C7_REAL_TRACE_WINDOW
    assert abs(e.re_trace - C7_REAL_TRACE_FROZEN) < C7_FROZEN_TOL


def test_c08_quaternion_constructions():
    t0 = time.perf_counter()
    T, Tp = pt.make_T(), pt.make_Tp()
    S, Sp = pt.make_S(), pt.make_Sp()
    I, Ip = pt.make_I(), pt.make_Ip()
    J, Jp = pt.make_J(1), pt.make_Jp()
    assert len(T) == len(Tp) == 24
    assert len(T.as_set() | Tp.as_set()) == 48 == len(pt.make_F4())
    assert len(S) == len(Sp) == 96
    assert len(I) == len(Ip) == 120
    assert pt.is_group(I)
    # I' does not contain 1; its closure is the coset relation I' o conj(I') = I
    assert qo.products_within(Ip, [qo.qconj(x) for x in Ip], I) and pt.is_coset_of(Ip, I)
    assert len(J) == len(Jp) == 600
    assert len(pt.make_dual_snub()) == 144
    assert J.as_set() == pt.make_J(2).as_set()
    filt = pt.seed_constraint_filter(S)
    assert len(filt) == 48 and pt.make_seeds()[2] in filt
    assert time.perf_counter() - t0 < C8_SECONDS


def test_c09_e8_to_j_mapping():
    mapping = pt.e8_to_j_map()
    jset = pt.make_J().as_set()
    assert len(mapping) == 240
    assert all(len(v) == 10 and set(v) <= jset for v in mapping.values())
    mult = Counter(x for v in mapping.values() for x in v)
    assert set(mult) == jset
    assert set(mult.values()) == {240 * 10 // 600}


def test_c10_octonion_tables():
    t0 = time.perf_counter()
    assert len(qo.enumerate_sts7()) == 30
    assert len(qo.enumerate_octonion_tables()) == 480
    d = qo.default_table()
    assert d.triads[0] == (1, 2, 3)
    e = [tuple(ONE if k == i else 0 * ONE for k in range(8)) for i in range(8)]
    assert qo.oct_mul(e[1], e[2], d) == e[3]
    assert qo.oct_mul(e[2], e[3], d) == e[1]
    assert qo.oct_mul(e[3], e[1], d) == e[2]
    assert qo.oct_mul(e[1], e[1], d) == tuple(-x for x in e[0])
    assert qo.is_palindromic_table(qo.select_table(qo.MIRROR_TRIADS))
    assert not qo.is_palindromic_table(d)
    assert time.perf_counter() - t0 < C10_SECONDS


def test_c11_projections():
    roots = rs.e8_roots_direct().vertices
    part = geom.shell_partition(geom.platonic_3d(roots), C11_GROUPING_TOL, geom.platonic_3d_exact_norms(roots))
    assert len(part.groups) == 8
    assert geom.phi_quadruples(part) is not None
    for name, outer in (("241", [24, 30]), ("142", [40, 60])):
        poly = rs.orbit_from_label(E8, rs.E8_ORBITS[name])
        counts = geom.shell_partition(geom.platonic_3d(poly.vertices), C11_GROUPING_TOL).counts
        assert counts[-2:] == outer
    dev = np.abs(geom.e8_petrie_basis().rows - geom.PRINTED_BASIS)
    assert dev.max() <= C11_BASIS_TOL, f"max deviation per row {dev.max(axis=1)}"
