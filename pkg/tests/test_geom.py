import math

import numpy as np
import pytest

from e8fold import geom
from e8fold import linalg as la
from e8fold import polytopes as pt
from e8fold import rootsys as rs
from e8fold.exactfield import PHI

ROOTS = rs.e8_roots_direct().vertices
PHI_F = (1 + math.sqrt(5)) / 2


def ring_counts(pts2d, tol=1e-9):
    return geom.shell_partition(pts2d, tol).counts


def test_e8_petrie_has_eight_rings_of_30():
    pts = geom.project(ROOTS, geom.e8_petrie_basis(), dims=2)
    assert ring_counts(pts) == [30] * 8


def test_600_cell_petrie_has_four_rings_of_30():
    basis = geom.h4_petrie_basis()
    pts = np.array([[float(x) for x in v] for v in pt.make_I()]) @ basis.rows[:2, :4].T
    assert ring_counts(pts) == [30] * 4


def test_h4_petrie_rows_orthogonal():
    rows = geom.h4_petrie_basis().rows[:, :4]
    g = rows @ rows.T
    assert abs(g[0, 1]) < 1e-12 and abs(g[0, 2]) < 1e-12 and abs(g[1, 2]) < 1e-12


def test_y_axis_matches_printed_values():
    rows = geom.e8_petrie_basis().rows
    assert np.abs(rows[1] - geom.PRINTED_BASIS[1]).max() < 1e-4


def test_project_shape_checks():
    with pytest.raises(la.ShapeError):
        geom.project(pt.make_I().elements, geom.e8_petrie_basis())
    with pytest.raises(la.ShapeError):
        geom.platonic_3d(pt.make_I().elements)
    with pytest.raises(ValueError):
        geom.ProjectionBasis(np.ones((2, 8)), "degenerate")


def test_platonic_421_shells():
    pts = geom.platonic_3d(ROOTS)
    part = geom.shell_partition(pts, 1e-9, geom.platonic_3d_exact_norms(ROOTS))
    assert part.counts == [4, 24, 40, 48, 30, 40, 24, 30]
    assert sum(part.counts) == 240
    low, high = geom.phi_quadruples(part)
    for a, b in zip(low, high):
        assert part.groups[b][2] == part.groups[a][2] * PHI * PHI
        assert part.norms[b] == pytest.approx(PHI_F * part.norms[a])


def test_platonic_exact_norms_agree_with_float():
    pts = geom.platonic_3d(ROOTS)
    exact = geom.platonic_3d_exact_norms(ROOTS)
    assert np.allclose((pts**2).sum(axis=1), [float(e) for e in exact], atol=1e-12)


def test_shell_partition_tolerance():
    pts = np.array([[1.0, 0], [0, 1.0 + 1e-12], [2.0, 0], [0, 2.5]])
    assert geom.shell_partition(pts, 1e-9).counts == [2, 1, 1]
    assert geom.shell_partition(pts, 1e-15).counts == [1, 1, 1, 1]
    assert geom.shell_partition(pts, 0.6).counts == [2, 2]
    with pytest.raises(ValueError):
        geom.shell_partition(pts, 0)


def test_outer_shells_241():
    poly = rs.orbit_from_label(rs.group("E8"), rs.E8_ORBITS["241"])
    counts = geom.shell_partition(geom.platonic_3d(poly.vertices), 1e-9).counts
    assert counts[-2:] == [24, 30]
    assert sum(counts) == 2160


def test_icosahedron_columns():
    cols = [c for c in geom.icosahedron_from_U() if any(c)]
    verts = cols + [la.vec_neg(c) for c in cols]
    assert len(set(verts)) == 12
    d = {la.norm2(la.vec_sub(a, b)) for a in verts for b in verts if a != b}
    m = min(d, key=float)
    for a in verts:
        assert sum(1 for b in verts if b != a and la.norm2(la.vec_sub(a, b)) == m) == 5
