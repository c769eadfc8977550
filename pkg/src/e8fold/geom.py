"""Float-layer projections and norm-shell analysis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .foldcore import build_U

__all__ = [
    "ProjectionBasis",
    "ShellPartition",
    "PRINTED_BASIS",
    "h4_petrie_basis",
    "e8_petrie_basis",
    "u_float",
    "project",
    "platonic_3d",
    "platonic_3d_exact_norms",
    "shell_partition",
    "icosahedron_from_U",
    "phi_quadruples",
]

PHI = (1 + math.sqrt(5)) / 2


@dataclass(frozen=True)
class ProjectionBasis:
    rows: np.ndarray
    label: str

    def __post_init__(self):
        if np.linalg.matrix_rank(self.rows) != len(self.rows):
            raise ValueError("basis rows are linearly dependent")


# Published three-digit values of U.{x, y, z}, kept for comparison.
PRINTED_BASIS = np.array([
    [0, .252, .427, -.319, .319, .427, .781, 0],
    [.0821, 0, -.393, .636, .636, .393, 0, .348],
    [-.242, 0, -.132, .215, .215, .132, 0, -1.03],
])


def u_float() -> np.ndarray:
    return np.array([[float(x) for x in row] for row in build_U()])


def h4_petrie_basis() -> ProjectionBasis:
    """Van Oss / Petrie plane of the 600-cell, plus a third axis."""
    s15 = 2 * math.sin(2 * math.pi / 15)
    s30 = 2 * math.sin(2 * math.pi / 30)
    kappa = s15 * s30  # 4 sin(2pi/15) sin(2pi/30)
    x = [0, PHI * s30, s15, 0, 0, 0, 0, 0]
    y = [-kappa, 0, 0, 1, 0, 0, 0, 0]
    z = [1, 0, 0, kappa, 0, 0, 0, 0]
    return ProjectionBasis(np.array([x, y, z], dtype=float), "h4-petrie")


def e8_petrie_basis() -> ProjectionBasis:
    rows = (u_float() @ h4_petrie_basis().rows.T).T
    return ProjectionBasis(rows, "e8-petrie")


def _as_float(vertices) -> np.ndarray:
    if isinstance(vertices, np.ndarray):
        return vertices.astype(float)
    return np.array([[float(x) for x in v] for v in vertices], dtype=float).reshape(len(vertices), -1)


def project(vertices, basis: ProjectionBasis, dims: int | None = None) -> np.ndarray:
    pts = _as_float(vertices)
    rows = basis.rows if dims is None else basis.rows[:dims]
    if pts.shape[1] != rows.shape[1]:
        raise la.ShapeError(f"vertices are {pts.shape[1]}-dimensional, basis is {rows.shape[1]}-dimensional")
    return pts @ rows.T


def platonic_3d(vertices, coords=(0, 1, 2)) -> np.ndarray:
    """Coordinates ``coords`` of U.v for each 8D vertex."""
    pts = _as_float(vertices)
    if pts.shape[1] != 8:
        raise la.ShapeError("platonic projection needs 8D vertices")
    return (pts @ u_float().T)[:, list(coords)]


def platonic_3d_exact_norms(vertices, coords=(0, 1, 2)) -> list:
    u = build_U()
    rows = [u[c] for c in coords]
    out = []
    for v in vertices:
        p = [la.dot(r, v) for r in rows]
        out.append(la.norm2(tuple(p)))
    return out


@dataclass
class ShellPartition:
    groups: list  # (norm, indices, exact squared norm or None)
    tolerance: float
    meta: dict = field(default_factory=dict)

    @property
    def counts(self) -> list:
        return [len(ix) for _, ix, _ in self.groups]

    @property
    def norms(self) -> list:
        return [n for n, _, _ in self.groups]


def shell_partition(points, tolerance: float = 1e-9, exact_norms=None) -> ShellPartition:
    """Group points by Euclidean norm; consecutive sorted norms closer than ``tolerance`` share a shell."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    pts = np.asarray(points, dtype=float)
    r = np.sqrt((pts**2).sum(axis=1))
    order = np.argsort(r, kind="stable")
    groups: list = []
    last = None
    for i in order:
        if last is not None and r[i] - last <= tolerance:
            groups[-1][1].append(int(i))
        else:
            groups.append([float(r[i]), [int(i)], None])
        last = r[i]
    for g in groups:
        g[1].sort()
        g[0] = float(np.mean(r[g[1]]))
        if exact_norms is not None:
            vals = {exact_norms[i] for i in g[1]}
            g[2] = vals.pop() if len(vals) == 1 else None
    return ShellPartition([tuple(g) for g in groups], tolerance)


def icosahedron_from_U(rows=(1, 2, 3)) -> tuple:
    """Columns of the chosen rows of 2 sqrt(phi) U, as exact 3-vectors."""
    from .foldcore import U_NUMERATOR

    return tuple(tuple(U_NUMERATOR[r][c] for r in rows) for c in range(8))


def phi_quadruples(part: ShellPartition, tol: float = 1e-9):
    """Split the nonzero shells into Q and phi*Q, four shells each (one may be shared).

    Returns index pairs into ``part.groups`` or None. When exact squared norms are
    attached, the phi^2 ratio is also required to hold exactly.
    """
    import itertools

    from .exactfield import PHI as PHI_EXACT

    nz = [k for k, (n, _, _) in enumerate(part.groups) if n > tol]
    for low in itertools.combinations(nz, 4):
        high = []
        for k in low:
            target = PHI * part.groups[k][0]
            match = [m for m in nz if abs(part.groups[m][0] - target) <= tol * max(1.0, target)]
            if len(match) != 1:
                break
            high.append(match[0])
        else:
            if set(low) | set(high) != set(nz):
                continue
            exact_ok = all(
                part.groups[a][2] is None
                or part.groups[b][2] is None
                or part.groups[b][2] == part.groups[a][2] * PHI_EXACT * PHI_EXACT
                for a, b in zip(low, high)
            )
            if exact_ok:
                return list(low), high
    return None
