"""Root systems, Weyl-orbit closure and edge graphs.

Orbits are generated in Dynkin-label coordinates. Labels live in Z[phi]
(stored as pairs ``(a, b)`` meaning ``a + b*phi``; the entries may be ints or
Fractions), so a reflection is a handful of integer operations. Only the final
vertex set is converted to TowerScalar coordinates.
"""

from __future__ import annotations

import itertools
import math
import sys
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg as la
from .exactfield import ONE, PHI, ZERO, TowerScalar, ts_from_parts

__all__ = [
    "GroupSpec",
    "OrbitLabel",
    "OrbitPolytope",
    "group",
    "GROUP_NAMES",
    "E8_ORBITS",
    "e8_roots_direct",
    "canonical_pascal_order",
    "PASCAL_BLOCK_SIZES",
    "weyl_orbit",
    "orbit_from_label",
    "fundamental_weights",
    "edge_graph",
    "min_squared_distance",
    "canonical_sort",
    "vertex_sort_key",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class GroupSpec:
    name: str
    rank: int
    simple_roots: tuple
    cartan: tuple

    def __post_init__(self):
        if self.rank > 8:
            raise ValueError("rank is limited to 8")
        if len(self.simple_roots) != self.rank:
            raise ValueError("need one simple root per node")

    @classmethod
    def from_roots(cls, name: str, roots) -> GroupSpec:
        roots = tuple(la.vec(r) for r in roots)
        n = len(roots)
        cartan = tuple(
            tuple(2 * la.dot(roots[i], roots[j]) / la.norm2(roots[j]) for j in range(n))
            for i in range(n)
        )
        return cls(name, n, roots, cartan)

    @property
    def dim(self) -> int:
        return len(self.simple_roots[0])


@dataclass(frozen=True)
class OrbitLabel:
    bits: tuple

    def __str__(self):
        return "".join(str(b) for b in self.bits)

    @classmethod
    def parse(cls, text: str) -> OrbitLabel:
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"orbit label must be a 0/1 string, got {text!r}")
        return cls(tuple(int(c) for c in text))


@dataclass
class OrbitPolytope:
    vertices: tuple
    edges: list | None = None
    provenance: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.vertices)

    @property
    def shells(self) -> dict:
        """Exact squared norm -> vertex indices."""
        out: dict = {}
        for i, v in enumerate(self.vertices):
            out.setdefault(la.norm2(v), []).append(i)
        return out

    def vertex_set(self) -> set:
        return set(self.vertices)

    def radius2(self) -> TowerScalar:
        norms = {la.norm2(v) for v in self.vertices}
        if len(norms) != 1:
            raise ValueError("vertices do not share a single norm")
        return norms.pop()


# -- group catalogue ---------------------------------------------------------

def _unit(n, i, s=1):
    v = [0] * n
    v[i] = s
    return v


def _e8_roots():
    # Bourbaki labelling: 1-3-4-5-6-7-8 chain, node 2 attached to node 4.
    roots = [[HALF, -HALF, -HALF, -HALF, -HALF, -HALF, -HALF, HALF], [1, 1, 0, 0, 0, 0, 0, 0]]
    for i in range(6):
        v = [0] * 8
        v[i], v[i + 1] = -1, 1
        roots.append(v)
    return roots


def _a_roots(n):
    out = []
    for i in range(n):
        v = [0] * (n + 1)
        v[i], v[i + 1] = 1, -1
        out.append(v)
    return out


def _d_roots(n):
    out = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        out.append(v)
    v = [0] * n
    v[n - 2], v[n - 1] = 1, 1
    out.append(v)
    return out


def _b_roots(n):
    out = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        out.append(v)
    out.append(_unit(n, n - 1))
    return out


def _f4_roots():
    return [[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [HALF, -HALF, -HALF, -HALF]]


_IPHI = PHI - 1  # 1/phi


def _h4_roots():
    # Unit icosians; chain 1-2-3 with single bonds and a 5-bond between nodes 3 and 4.
    h = TowerScalar.rational(HALF)
    return [
        [-_IPHI * h, -h, PHI * h, ZERO],
        [ZERO, ONE, ZERO, ZERO],
        [ZERO, -h, -_IPHI * h, -PHI * h],
        [ZERO, ZERO, ZERO, ONE],
    ]


def _h3_roots():
    return [r[1:] for r in _h4_roots()[1:]]


_BUILDERS = {
    "E8": _e8_roots,
    "H4": _h4_roots,
    "H3": _h3_roots,
    "A3": lambda: _a_roots(3),
    "A4": lambda: _a_roots(4),
    "B3": lambda: _b_roots(3),
    "B4": lambda: _b_roots(4),
    "D4": lambda: _d_roots(4),
    "D6": lambda: _d_roots(6),
    "F4": _f4_roots,
}
GROUP_NAMES = tuple(_BUILDERS)

# Named E8 orbits in Bourbaki labelling.
E8_ORBITS = {
    "421": "00000001",
    "241": "10000000",
    "142": "01000000",
}

_GROUP_CACHE: dict = {}


def group(name: str) -> GroupSpec:
    key = name.upper()
    if key not in _BUILDERS:
        raise KeyError(f"unknown group {name!r}; choose from {', '.join(GROUP_NAMES)}")
    if key not in _GROUP_CACHE:
        _GROUP_CACHE[key] = GroupSpec.from_roots(key, _BUILDERS[key]())
    return _GROUP_CACHE[key]


# -- direct E8 construction ---------------------------------------------------

def e8_roots_direct() -> OrbitPolytope:
    h = TowerScalar.rational(HALF)
    verts = []
    for i, j in itertools.combinations(range(8), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = [ZERO] * 8
            v[i] = TowerScalar.rational(si)
            v[j] = TowerScalar.rational(sj)
            verts.append(tuple(v))
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            verts.append(tuple(h if s > 0 else -h for s in signs))
    return OrbitPolytope(
        canonical_sort(verts), provenance={"group": "E8", "construction": "direct"}
    )


PASCAL_BLOCK_SIZES = (1, 8, 28, 56, 35, 35, 56, 28, 8, 1)


def _first_nonzero_positive(v):
    for x in v:
        if x:
            return x > 0
    return False


def canonical_pascal_order(roots) -> list:
    """Order the 240 roots plus the 16 vectors +-e_i into ten Pascal-row blocks.

    Returns a list of ten lists of vectors. Blocks 0-4 are (all +1/2), +e_i, the
    half vectors with two minus signs, the integer roots whose first nonzero
    entry is positive, and the half vectors with four minus signs that start
    with +1/2. Blocks 5-9 are the negations of blocks 4-0. Each block is in
    descending lexicographic order.
    """
    roots = list(roots)
    rootset = set(roots)
    if len(rootset) != 240 or rootset != e8_roots_direct().vertex_set():
        raise ValueError("input must be the full set of 240 E8 roots")
    half = [r for r in roots if all(abs(x) == HALF for x in r)]
    integer = [r for r in roots if not all(abs(x) == HALF for x in r)]

    def minus(v):
        return sum(1 for x in v if x < 0)

    units = [tuple(ONE if k == i else ZERO for k in range(8)) for i in range(8)]
    left = [
        [r for r in half if minus(r) == 0],
        units,
        [r for r in half if minus(r) == 2],
        [r for r in integer if _first_nonzero_positive(r)],
        [r for r in half if minus(r) == 4 and r[0] > 0],
    ]
    blocks = left + [[la.vec_neg(v) for v in blk] for blk in reversed(left)]
    return [sorted(b, key=_lex_key, reverse=True) for b in blocks]


def _lex_key(v):
    return tuple((float(x), x.key()) for x in v)


# -- ordering ------------------------------------------------------------------

def vertex_sort_key(v):
    return (tuple(float(x) for x in v), tuple(x.key() for x in v))


def canonical_sort(vertices) -> tuple:
    return tuple(sorted(set(vertices), key=vertex_sort_key))


# -- orbit engine ----------------------------------------------------------------

def _to_zphi(x: TowerScalar):
    """a + b*phi with a, b rational, or None if x is outside Q(sqrt5)."""
    n, d = x.numerators, x.denominator
    if any(n[k] for k in (1, 3, 4, 5, 6, 7)):
        return None
    c0, c2 = Fraction(n[0], d), Fraction(n[2], d)
    b, a = 2 * c2, c0 - c2
    return (_simplify(a), _simplify(b))


def _simplify(q: Fraction):
    return q.numerator if q.denominator == 1 else q


def _zmul(p, q):
    a, b = p
    c, d = q
    bd = b * d
    return (a * c + bd, a * d + b * c + bd)


def fundamental_weights(spec: GroupSpec) -> tuple:
    """omega_i with 2<omega_i, alpha_j>/<alpha_j, alpha_j> = delta_ij."""
    ct_inv = la.mat_inverse(la.transpose(spec.cartan))
    dim = spec.dim
    out = []
    for i in range(spec.rank):
        w = la.zero_vec(dim)
        for k in range(spec.rank):
            c = ct_inv[k][i]
            if c:
                w = la.vec_add(w, la.vec_scale(c, spec.simple_roots[k]))
        out.append(w)
    return tuple(out)


def _labels(spec: GroupSpec, weight):
    return [2 * la.dot(weight, a) / la.norm2(a) for a in spec.simple_roots]


def _bfs_labels(start, cartan_z, order, progress=None):
    rank = len(start)
    seen = {start}
    queue = deque([start])
    while queue:
        lam = queue.popleft()
        for i in order:
            li = lam[i]
            if li == (0, 0):
                continue
            row = cartan_z[i]
            new = tuple(
                lam[j] if row[j] == (0, 0) else _zsub(lam[j], _zmul(li, row[j]))
                for j in range(rank)
            )
            if new not in seen:
                seen.add(new)
                queue.append(new)
                if progress is not None and len(seen) % 20000 == 0:
                    progress(len(seen))
    return seen


def _zsub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _labels_to_coords(spec: GroupSpec, labels, weights):
    """Vectorised x = sum_i (a_i + b_i phi) omega_i."""
    rank, dim = spec.rank, spec.dim
    # columns: omega_i and phi*omega_i, as integer numerators over a common denominator
    basis = list(weights) + [la.vec_scale(PHI, w) for w in weights]
    den = math.lcm(*(x.denominator for w in basis for x in w))
    coef = np.zeros((2 * rank, dim * 8), dtype=object)
    for r, w in enumerate(basis):
        for j, x in enumerate(w):
            scale = den // x.denominator
            for k in range(8):
                coef[r, j * 8 + k] = x.numerators[k] * scale
    lab_den = math.lcm(
        1, *(Fraction(c).denominator for lam in labels for p in lam for c in p)
    )
    rows = [[int(Fraction(p[0]) * lab_den) for p in lam] + [int(Fraction(p[1]) * lab_den) for p in lam] for lam in labels]
    lab = np.array(rows, dtype=object)
    bound = (int(np.abs(lab).max()) if len(rows) else 0) * int(np.abs(coef).sum(axis=0).max())
    if bound < 2**62:
        prod = lab.astype(np.int64) @ coef.astype(np.int64)
    else:
        prod = lab @ coef
    total_den = den * lab_den
    verts = []
    for row in prod.tolist():
        verts.append(
            tuple(TowerScalar._raw(tuple(int(v) for v in row[j * 8 : j * 8 + 8]), total_den) for j in range(dim))
        )
    return verts


def weyl_orbit(spec: GroupSpec, weight, *, reverse_order: bool = False, progress=None) -> OrbitPolytope:
    """Closure of ``weight`` under the simple reflections of ``spec``."""
    weight = la.vec(weight)
    if len(weight) != spec.dim:
        raise la.ShapeError("weight dimension does not match the simple roots")
    labels = [_to_zphi(x) for x in _labels(spec, weight)]
    cartan_z = [[_to_zphi(x) for x in row] for row in spec.cartan]
    order = list(range(spec.rank))
    if reverse_order:
        order.reverse()
    if any(p is None for p in labels) or any(p is None for row in cartan_z for p in row):
        verts = _bfs_coords(spec, weight, order)
    else:
        seen = _bfs_labels(tuple(labels), cartan_z, order, progress)
        labs = sorted(seen, key=lambda lam: tuple((float(Fraction(a)), float(Fraction(b))) for a, b in lam))
        # weight = sum lambda_i omega_i + (component orthogonal to the root span)
        weights = fundamental_weights(spec)
        span_part = la.zero_vec(spec.dim)
        for lam_i, w in zip(labels, weights):
            span_part = la.vec_add(span_part, la.vec_scale(ts_from_parts(*lam_i), w))
        residual = la.vec_sub(weight, span_part)
        verts = _labels_to_coords(spec, labs, weights)
        if any(residual):
            verts = [la.vec_add(v, residual) for v in verts]
    return OrbitPolytope(
        canonical_sort(verts),
        provenance={"group": spec.name, "weight": [x.encode() for x in weight]},
    )


def _bfs_coords(spec, weight, order):
    roots = spec.simple_roots
    scales = [2 / la.norm2(a) for a in roots]
    seen = {weight}
    queue = deque([weight])
    while queue:
        v = queue.popleft()
        for i in order:
            d = la.dot(v, roots[i])
            if not d:
                continue
            w = la.vec_sub(v, la.vec_scale(d * scales[i], roots[i]))
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return list(seen)


def orbit_from_label(spec: GroupSpec, label: OrbitLabel | str, **kw) -> OrbitPolytope:
    """Orbit of sum of fundamental weights over the ringed nodes."""
    if isinstance(label, str):
        label = OrbitLabel.parse(label)
    if len(label.bits) != spec.rank:
        raise ValueError(f"{spec.name} needs a {spec.rank}-bit orbit label")
    weights = fundamental_weights(spec)
    w = la.zero_vec(spec.dim)
    for b, om in zip(label.bits, weights):
        if b:
            w = la.vec_add(w, om)
    if not any(label.bits):
        raise ValueError("the all-zero (snub) label has no Weyl-orbit realisation here")
    poly = weyl_orbit(spec, w, **kw)
    poly.provenance["orbit"] = str(label)
    return poly


# -- edges -------------------------------------------------------------------------

def _rational_matrix(vertices):
    """Common-denominator integer matrix, or None if any coordinate is irrational."""
    if not all(x.is_rational() for v in vertices for x in v):
        return None
    den = math.lcm(1, *(x.denominator for v in vertices for x in v))
    return np.array([[x.numerators[0] * (den // x.denominator) for x in v] for v in vertices], dtype=object), den


def _pairs_at(coords: np.ndarray, target: float, tol: float, chunk: int, progress=None):
    """Upper-triangle pairs (i < j) whose squared distance is within tol of target."""
    n = len(coords)
    norms = np.einsum("ij,ij->i", coords, coords)
    out_i, out_j = [], []
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        block = coords[start:stop]
        gram = block @ coords[start:].T
        d2 = norms[start:stop, None] + norms[None, start:] - 2.0 * gram
        ii, jj = np.nonzero(np.abs(d2 - target) <= tol)
        keep = jj > ii
        out_i.append(ii[keep] + start)
        out_j.append(jj[keep] + start)
        if progress is not None:
            progress(stop, n)
    if not out_i:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(out_i), np.concatenate(out_j)


def edge_graph(poly: OrbitPolytope, squared_length, *, chunk: int = 1024, progress=None) -> list:
    """All vertex pairs (i, j), i < j, at exact squared distance ``squared_length``."""
    target = TowerScalar.coerce(squared_length)
    verts = poly.vertices
    if len(verts) < 2:
        return []
    buckets = _norm_buckets(verts)
    tf = float(target)
    rat = _rational_matrix(verts)
    edges: list = []
    for (ia, na), (ib, nb) in itertools.combinations_with_replacement(buckets, 2):
        # |r_a - r_b|^2 <= d^2 is necessary for two spheres to host an edge
        if (math.sqrt(na) - math.sqrt(nb)) ** 2 > tf * (1 + 1e-9) + 1e-12:
            continue
        edges.extend(_bucket_edges(verts, rat, ia, ib, target, tf, chunk, progress))
    edges.sort()
    poly.edges = edges
    return edges


def _norm_buckets(verts):
    groups: dict = {}
    for i, v in enumerate(verts):
        groups.setdefault(la.norm2(v), []).append(i)
    return [(np.array(ix), float(n)) for n, ix in groups.items()]


def _bucket_edges(verts, rat, ia, ib, target, tf, chunk, progress):
    same = ia is ib or np.array_equal(ia, ib)
    idx = ia if same else np.concatenate([ia, ib])
    if rat is not None:
        mat_int, den = rat
        sub = mat_int[idx]
        scaled = target * den * den
        if not scaled.is_rational():
            return []
        t_int = scaled.to_fraction()
        if t_int.denominator != 1:
            return []
        max_entry = int(np.abs(sub).max()) if len(sub) else 0
        if 4 * len(sub[0]) * max_entry * max_entry < 2**52:
            pi, pj = _pairs_at(sub.astype(np.float64), float(t_int), 0.5, chunk, progress)
            cand = list(zip(pi.tolist(), pj.tolist()))
            exact = True
        else:
            cand, exact = None, False
        if not exact:
            cand = _float_candidates(verts, idx, tf, chunk, progress)
    else:
        cand = _float_candidates(verts, idx, tf, chunk, progress)
        exact = False
    out = []
    split = len(ia)
    for i, j in cand:
        if not same and (i < split) == (j < split):
            continue
        a, b = int(idx[i]), int(idx[j])
        if not exact and la.norm2(la.vec_sub(verts[a], verts[b])) != target:
            continue
        out.append((a, b) if a < b else (b, a))
    return out


def _float_candidates(verts, idx, tf, chunk, progress):
    coords = np.array([[float(x) for x in verts[k]] for k in idx])
    pi, pj = _pairs_at(coords, tf, 1e-7 * max(1.0, tf), chunk, progress)
    return list(zip(pi.tolist(), pj.tolist()))


def min_squared_distance(poly: OrbitPolytope) -> TowerScalar:
    """Exact minimal nonzero squared distance between two vertices."""
    coords = np.array([[float(x) for x in v] for v in poly.vertices])
    norms = np.einsum("ij,ij->i", coords, coords)
    d2 = norms[:, None] + norms[None, :] - 2 * coords @ coords.T
    np.fill_diagonal(d2, np.inf)
    i, j = np.unravel_index(np.argmin(d2), d2.shape)
    return la.norm2(la.vec_sub(poly.vertices[i], poly.vertices[j]))


def stderr_progress(label: str):
    def report(done, total=None):
        msg = f"{label}: {done}" + (f"/{total}" if total else "")
        print(msg, file=sys.stderr, flush=True)

    return report
