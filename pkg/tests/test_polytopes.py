from collections import Counter
from fractions import Fraction

import pytest

from e8fold import linalg as la
from e8fold import polytopes as pt
from e8fold import quatoct as qo
from e8fold import rootsys as rs
from e8fold.exactfield import ONE, ZERO

IDENTITY = (ONE, ZERO, ZERO, ZERO)


@pytest.fixture(scope="module")
def icosians():
    return pt.make_I()


@pytest.fixture(scope="module")
def cell120():
    return pt.make_J()


def test_24_cells():
    t, tp = pt.make_T(), pt.make_Tp()
    assert len(t) == len(tp) == 24
    assert pt.is_group(t)
    assert len(pt.make_F4()) == 48
    assert pt.make_F4().as_set() == t.as_set() | tp.as_set()
    assert all(la.norm2(v) == 1 for v in tp)


def test_icosians_against_h4_orbit(icosians):
    orbit = rs.orbit_from_label(rs.group("H4"), "1000")
    assert len(icosians) == 120
    # same shape: unit vectors, 720 minimal edges, 12 neighbours each
    assert all(la.norm2(v) == 1 for v in icosians)
    poly = rs.OrbitPolytope(icosians.elements)
    assert len(rs.edge_graph(poly, rs.min_squared_distance(poly))) == 720
    assert len(orbit) == 120


def test_icosians_form_group(icosians):
    assert pt.is_group(icosians)
    assert IDENTITY in icosians


def test_snub_split(icosians):
    s, t = pt.make_S(), pt.make_T()
    assert len(s) == 96
    assert s.as_set() | t.as_set() == icosians.as_set()
    assert not (s.as_set() & t.as_set())


def test_primed_sets(icosians):
    ip, sp = pt.make_Ip(), pt.make_Sp()
    assert len(ip) == 120 and len(sp) == 96
    assert pt.is_coset_of(ip, icosians)
    assert IDENTITY not in ip
    assert sp.as_set() == ip.as_set() - pt.make_Tp().as_set()


def test_seeds():
    c, cp, alpha, beta = pt.make_seeds()
    assert la.norm2(alpha) == 1
    assert qo.qpow(alpha, 5) in (IDENTITY, tuple(-x for x in IDENTITY))
    assert qo.qpow(beta, 5) not in (IDENTITY, tuple(-x for x in IDENTITY))
    with pytest.raises(pt.SeedError):
        pt.make_I(seed=beta)


def test_seed_filter():
    s = pt.make_S()
    f = pt.seed_constraint_filter(s)
    assert len(f) == 48
    assert pt.make_seeds()[2] in f


def test_j_is_h4_orbit(cell120, icosians):
    """Independent oracle: reflecting any J element under W(H4) regenerates J."""
    assert len(cell120) == 600
    orbit = rs.weyl_orbit(rs.group("H4"), cell120.elements[0])
    assert orbit.vertex_set() == cell120.as_set()
    assert rs.weyl_orbit(rs.group("H4"), icosians.elements[0]).vertex_set() == icosians.as_set()


@pytest.mark.parametrize("formula", [1, 2, 3])
def test_j_formulas_agree(formula, cell120):
    assert pt.make_J(formula).as_set() == cell120.as_set()


def test_j_invariant_under_icosians(cell120, icosians):
    assert qo.products_within(icosians, cell120, cell120)
    assert qo.products_within(cell120, icosians, cell120)


def test_j_prime():
    jp = pt.make_Jp()
    assert len(jp) == 600
    assert len(pt.make_Jp(1)) == 600
    assert len({la.norm2(v) for v in jp}) == 1


def test_a_prime_is_5_cell():
    ap, a = pt.make_A()
    assert len(ap) == len(a) == 5
    for x in ap:
        assert la.norm2(x) == 1
    for i, x in enumerate(ap.elements):
        for y in ap.elements[i + 1:]:
            assert la.dot(x, y) == Fraction(-1, 4)
    assert IDENTITY in a


def test_dual_snub():
    d = pt.make_dual_snub()
    assert len(d) == 144


@pytest.mark.parametrize("mode", pt.PERM_MODES)
def test_perm_orbits(mode):
    alpha = pt.make_seeds()[2]
    orbit = pt.perm_orbit(alpha, mode)
    assert len(orbit) == 96
    assert all(la.norm2(v) == 1 for v in orbit)
    if mode == "oSign":
        assert orbit.as_set() | pt.make_T().as_set() == pt.make_I().as_set()


def test_perm_orbit_bad_mode():
    with pytest.raises(ValueError):
        pt.perm_orbit(pt.make_seeds()[2], "Spin")


def test_galois_conj_involution(icosians):
    for v in icosians.elements[:20]:
        assert pt.galois_conj(pt.galois_conj(v)) == v


def test_e8_to_j(cell120):
    m = pt.e8_to_j_map()
    assert len(m) == 240
    jset = cell120.as_set()
    assert all(len(v) == 10 and set(v) <= jset for v in m.values())
    mult = Counter(x for v in m.values() for x in v)
    assert set(mult) == jset
    assert set(mult.values()) == {4}


@pytest.mark.parametrize("name", pt.CONSTRUCTIONS)
def test_construction_lookup(name):
    assert len(pt.construction(name)) > 0


def test_unknown_construction():
    with pytest.raises(KeyError):
        pt.construction("Z")
