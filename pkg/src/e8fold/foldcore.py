"""The golden folding matrix U, the E8 -> 4 x H4 fold, mapLR and unfolding."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .exactfield import ONE, PHI, SQRT_PHI, ZERO, TowerScalar, ts_from_parts, ts_inv
from .rootsys import OrbitPolytope, canonical_sort, e8_roots_direct, edge_graph, min_squared_distance

__all__ = [
    "FoldPair",
    "H4Decomposition",
    "FoldError",
    "CNOT",
    "SWAP",
    "U_NUMERATOR",
    "U_INV_NUMERATOR",
    "build_U",
    "build_U_inverse",
    "build_U_from_gates",
    "exchange_one_phi",
    "fold",
    "fold_all",
    "decompose",
    "map_lr",
    "map_lr_closed_form",
    "unfold",
    "exp_iU_numeric",
    "u_property_report",
]


class FoldError(ValueError):
    pass


def _zp(a, b):
    return ts_from_parts(a, b)


_P = _zp(0, 1)
_1MP = _zp(1, -1)
_MPP = _zp(-1, -1)  # -phi^2
_PM1 = _zp(-1, 1)
_0, _1, _M1 = ZERO, ONE, -ONE

# 2*sqrt(phi)*U. Row 3 is the transpose of column 3 so that the matrix is symmetric.
U_NUMERATOR = la.mat([
    [_1MP, 0, 0, 0, 0, 0, 0, _MPP],
    [0, -1, _P, 0, 0, _P, 1, 0],
    [0, _P, 0, -1, 1, 0, _P, 0],
    [0, 0, -1, _P, _P, 1, 0, 0],
    [0, 0, 1, _P, _P, -1, 0, 0],
    [0, _P, 0, 1, -1, 0, _P, 0],
    [0, 1, _P, 0, 0, _P, -1, 0],
    [_MPP, 0, 0, 0, 0, 0, 0, _1MP],
])

U_INV_NUMERATOR = la.mat([
    [_PM1, 0, 0, 0, 0, 0, 0, _MPP],
    [0, -_P, 1, 0, 0, 1, _P, 0],
    [0, 1, 0, -_P, _P, 0, 1, 0],
    [0, 0, -_P, 1, 1, _P, 0, 0],
    [0, 0, _P, 1, 1, -_P, 0, 0],
    [0, 1, 0, _P, -_P, 0, 1, 0],
    [0, _P, 1, 0, 0, 1, -_P, 0],
    [_MPP, 0, 0, 0, 0, 0, 0, _PM1],
])

CNOT = la.mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
SWAP = la.mat([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])

_SCALE = ts_inv(2 * SQRT_PHI)  # 1 / (2 sqrt(phi))


def build_U():
    return la.mat_scale(_SCALE, U_NUMERATOR)


def build_U_inverse():
    return la.mat_scale(_SCALE, U_INV_NUMERATOR)


def _stack(top, bottom):
    return tuple(top) + tuple(bottom)


def _hcat(left, right):
    return tuple(a + b for a, b in zip(left, right))


def build_U_from_gates():
    """U = (phi * Lp (D SWAP) Lp^T - Lm (D CNOT) Lm^T) / (2 sqrt(phi)).

    Lp = [I; R] and Lm = [I; -R] with R the 4x4 reversal, D = diag(-1, 1, 1, 1).
    """
    ident = la.identity(4)
    rev = tuple(reversed(ident))
    d = la.diag([-1, 1, 1, 1])
    lp = _stack(ident, rev)
    lm = _stack(ident, la.mat_scale(-1, rev))
    swap_part = la.mat_mul(la.mat_mul(lp, la.mat_mul(d, SWAP)), la.transpose(lp))
    cnot_part = la.mat_mul(la.mat_mul(lm, la.mat_mul(d, CNOT)), la.transpose(lm))
    numer = la.mat_add(la.mat_scale(PHI, swap_part), la.mat_scale(-1, cnot_part))
    return la.mat_scale(_SCALE, numer)


def exchange_one_phi(m):
    """Swap 1 <-> phi in every a + b*phi entry, leaving -phi^2 entries alone."""
    out = []
    for row in m:
        new = []
        for x in row:
            if x == _MPP:
                new.append(x)
                continue
            c = x.coeffs
            if any(c[k] for k in (1, 3, 4, 5, 6, 7)):
                raise ValueError("entry is not in Q(phi)")
            b = 2 * c[2]
            a = c[0] - c[2]
            new.append(ts_from_parts(b, a))
        out.append(tuple(new))
    return tuple(out)


# -- folding ------------------------------------------------------------------------

_U = build_U()
_U_INV = build_U_inverse()
_INV_PHI = PHI - 1


@dataclass(frozen=True)
class FoldPair:
    left: tuple
    right: tuple
    norm_class_left: str
    norm_class_right: str

    @property
    def t_class(self) -> bool:
        return self.norm_class_left == self.norm_class_right

    def neg(self) -> FoldPair:
        return FoldPair(la.vec_neg(self.left), la.vec_neg(self.right), self.norm_class_left, self.norm_class_right)


def _norm_class(v) -> str:
    n = la.norm2(v)
    if n == _INV_PHI:
        return "small"
    if n == PHI:
        return "large"
    raise FoldError(f"unexpected folded squared norm {n!r}")


_ROOTSET = None


def _roots():
    global _ROOTSET
    if _ROOTSET is None:
        _ROOTSET = e8_roots_direct()
    return _ROOTSET


def fold(root, *, check: bool = True) -> FoldPair:
    root = la.vec(root)
    if check and root not in _roots().vertex_set():
        raise FoldError("vector is not an E8 root")
    image = la.mat_vec(_U, root)
    left, right = image[:4], image[4:]
    return FoldPair(left, right, _norm_class(left), _norm_class(right))


def fold_all(roots=None) -> list:
    roots = _roots().vertices if roots is None else roots
    return [fold(r, check=False) for r in roots]


@dataclass
class H4Decomposition:
    h4L: tuple
    phi_h4L: tuple
    h4R: tuple
    phi_h4R: tuple
    edge_counts: dict = field(default_factory=dict)

    def sets(self) -> dict:
        return {"h4L": self.h4L, "phi_h4L": self.phi_h4L, "h4R": self.h4R, "phi_h4R": self.phi_h4R}

    def unit(self, name: str) -> tuple:
        """Rescale one of the four sets to unit norm."""
        s = self.sets()[name]
        factor = SQRT_PHI if name.startswith("h4") else SQRT_PHI * _INV_PHI
        return canonical_sort(la.vec_scale(factor, v) for v in s)


def _is_unit_group(elems) -> bool:
    from .quatoct import products_within

    return products_within(elems, elems, elems)


def decompose(roots=None, *, check_group: bool = True) -> H4Decomposition:
    pairs = fold_all(roots)
    if len(pairs) != 240:
        raise FoldError("decomposition needs all 240 roots")
    buckets = {("L", "small"): set(), ("L", "large"): set(), ("R", "small"): set(), ("R", "large"): set()}
    for p in pairs:
        buckets[("L", p.norm_class_left)].add(p.left)
        buckets[("R", p.norm_class_right)].add(p.right)
    dec = H4Decomposition(
        canonical_sort(buckets[("L", "small")]),
        canonical_sort(buckets[("L", "large")]),
        canonical_sort(buckets[("R", "small")]),
        canonical_sort(buckets[("R", "large")]),
    )
    for name, verts in dec.sets().items():
        if len(verts) != 120:
            raise FoldError(f"{name} has {len(verts)} vertices, expected 120")
        poly = OrbitPolytope(verts)
        edges = edge_graph(poly, min_squared_distance(poly))
        dec.edge_counts[name] = len(edges)
        if len(edges) != 720:
            raise FoldError(f"{name} has {len(edges)} minimal edges, expected 720")
    for small, large in (("h4L", "phi_h4L"), ("h4R", "phi_h4R")):
        if set(la.vec_scale(PHI, v) for v in dec.sets()[small]) != set(dec.sets()[large]):
            raise FoldError(f"{large} is not phi * {small}")
    if check_group:
        for name in ("h4L", "h4R"):
            if not _is_unit_group(dec.unit(name)):
                raise FoldError(f"unit-rescaled {name} is not closed under quaternion product")
    return dec


# -- mapLR -------------------------------------------------------------------------

def map_lr(roots=None) -> dict:
    """Fold-induced lookup: ('L', v) -> ('R', w) and ('R', w) -> ('L', v)."""
    table: dict = {}
    for p in fold_all(roots):
        for key, val in ((("L", p.left), ("R", p.right)), (("R", p.right), ("L", p.left))):
            if key in table and table[key] != val:
                raise FoldError(f"mapLR is not well defined at {key}")
            table[key] = val
    if len(table) != 480:
        raise FoldError(f"mapLR table has {len(table)} entries, expected 480")
    return table


# phi^(3/2) = (sqrt(phi) + sqrt5 sqrt(phi)) / 2 and phi^(-3/2) = (3 sqrt(phi) - sqrt5 sqrt(phi)) / 2
def _split_ab(x: TowerScalar):
    n, d = x.numerators, x.denominator
    if any(n[k] for k in (0, 1, 2, 3, 5, 7)):
        raise FoldError("coordinate is not in sqrt(phi) * Q(sqrt5)")
    c1, c2 = n[4], n[6]
    from fractions import Fraction

    return Fraction(c1 + 3 * c2, 2 * d), Fraction(c1 - c2, 2 * d)


_PHI_32 = TowerScalar((0, 0, 0, 0, "1/2", 0, "1/2", 0))
_PHI_M32 = TowerScalar((0, 0, 0, 0, "3/2", 0, "-1/2", 0))


def map_lr_closed_form(v):
    """Reverse the coordinates and exchange phi^(3/2) <-> phi^(-3/2) in each."""
    out = []
    for x in reversed(v):
        if not x:
            out.append(ZERO)
            continue
        a, b = _split_ab(x)
        out.append(_PHI_32 * b + _PHI_M32 * a)
    return tuple(out)


# -- unfolding ---------------------------------------------------------------------

def _check_600cell(unit_set):
    verts = tuple(unit_set)
    if len(set(verts)) != 120:
        raise FoldError(f"expected 120 distinct vertices, got {len(set(verts))}")
    if any(la.norm2(v) != ONE for v in verts):
        raise FoldError("all vertices must have unit norm")
    poly = OrbitPolytope(canonical_sort(verts))
    n_edges = len(edge_graph(poly, min_squared_distance(poly)))
    if n_edges != 720:
        raise FoldError(f"minimal-distance graph has {n_edges} edges, expected 720")


def unfold(h4_unit) -> tuple:
    """Rebuild the 240 E8 roots from one unit-norm 600-cell."""
    _check_600cell(h4_unit)
    inv_sqrt_phi = ts_inv(SQRT_PHI)
    out = set()
    for v in h4_unit:
        for scale in (inv_sqrt_phi, SQRT_PHI):
            left = la.vec_scale(scale, v)
            out.add(la.mat_vec(_U_INV, left + map_lr_closed_form(left)))
    return canonical_sort(out)


# -- analytic properties -------------------------------------------------------------

def _u_float():
    return np.array([[float(x) for x in row] for row in _U])


@dataclass(frozen=True)
class ExpIU:
    matrix: np.ndarray
    eigenvalues: np.ndarray
    unitarity_residual: float
    re_trace: float
    im_trace: float


def exp_iU_numeric() -> ExpIU:
    u = _u_float()
    w, v = np.linalg.eigh(u)
    e = (v * np.exp(1j * w)) @ v.T
    resid = float(np.abs(e.conj().T @ e - np.eye(8)).max())
    tr = np.trace(e)
    return ExpIU(e, w, resid, float(tr.real), float(tr.imag))


def _props(m) -> dict:
    cp = la.charpoly(m)
    return {
        "symmetric": la.is_symmetric(m),
        "trace": la.trace(m),
        "det": la.det(m),
        "charpoly": cp.coeffs,
        "palindromic": la.is_palindromic(cp),
    }


def u_property_report() -> dict:
    u, ui = build_U(), build_U_inverse()
    return {
        "U": _props(u),
        "U_inverse": _props(ui),
        "product_is_identity": la.mat_mul(u, ui) == la.identity(8),
        "inverse_matches": la.mat_inverse(u) == ui,
        "exchange_rule": exchange_one_phi(U_NUMERATOR) == U_INV_NUMERATOR,
        "gates_match": build_U_from_gates() == u,
    }
