"""Quaternions, octonions and the 480 octonion multiplication tables.

Quaternions and octonions are plain tuples of TowerScalar (length 4 or 8).
An octonion table is given by seven oriented triads (a, b, c) meaning
e_a e_b = e_c together with its cyclic shifts.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .exactfield import ONE, ZERO, TowerScalar

__all__ = [
    "qmul",
    "qconj",
    "qnorm2",
    "qpow",
    "qinv",
    "quat",
    "products_within",
    "OctTable",
    "InvalidTableError",
    "oct_mul",
    "oct_conj",
    "oct_norm2",
    "enumerate_sts7",
    "enumerate_octonion_tables",
    "select_table",
    "default_table",
    "MIRROR_TRIADS",
    "is_quadrant_closed",
    "is_palindromic_table",
    "prq",
    "algebra_operators",
    "oct_exp",
]


# -- quaternions ----------------------------------------------------------------------

def quat(*coords) -> tuple:
    if len(coords) == 1:
        coords = tuple(coords[0])
    if len(coords) != 4:
        raise ValueError("a quaternion has 4 coordinates")
    return tuple(TowerScalar.coerce(c) for c in coords)


def qmul(a, b) -> tuple:
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def qconj(a) -> tuple:
    return (a[0], -a[1], -a[2], -a[3])


def qnorm2(a) -> TowerScalar:
    return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]


def qinv(a) -> tuple:
    n = qnorm2(a)
    return tuple(x / n for x in qconj(a))


def qpow(a, k: int) -> tuple:
    if k < 0:
        return qpow(qinv(a), -k)
    out = (ONE, ZERO, ZERO, ZERO)
    for _ in range(k):
        out = qmul(out, a)
    return out


_PLAIN, _ROOT2 = (0, 2), (1, 3)


def _root2_parity(elems):
    """0 if every coordinate is in Q(sqrt5), 1 if every one is in sqrt2*Q(sqrt5), else None."""
    seen = set()
    for q in elems:
        for x in q:
            n = x.numerators
            if any(n[4:]):
                return None
            if n[0] or n[2]:
                seen.add(0)
            if n[1] or n[3]:
                seen.add(1)
    if len(seen) > 1:
        return None
    return seen.pop() if seen else 0


def _zphi_scaled(elems, parity=0):
    """Quaternions over Q(sqrt5) (after removing sqrt2**parity) as integer
    (a, b) pairs of a + b*phi over one common denominator."""
    lo, hi = _ROOT2 if parity else _PLAIN
    den = math.lcm(1, *(x.denominator for q in elems for x in q))
    out = []
    for q in elems:
        row = []
        for x in q:
            n, k = x.numerators, den // x.denominator
            # c + d sqrt5 = (c - d) + 2 d phi
            row.append(((n[lo] - n[hi]) * k, 2 * n[hi] * k))
        out.append(tuple(row))
    return out, den


def _zq_mul(x, y):
    def m(p, q):
        a, b = p
        c, d = q
        bd = b * d
        return (a * c + bd, a * d + b * c + bd)

    def add(*ps):
        return (sum(p[0] for p in ps), sum(p[1] for p in ps))

    def neg(p):
        return (-p[0], -p[1])

    a0, a1, a2, a3 = x
    b0, b1, b2, b3 = y
    return (
        add(m(a0, b0), neg(m(a1, b1)), neg(m(a2, b2)), neg(m(a3, b3))),
        add(m(a0, b1), m(a1, b0), m(a2, b3), neg(m(a3, b2))),
        add(m(a0, b2), neg(m(a1, b3)), m(a2, b0), m(a3, b1)),
        add(m(a0, b3), m(a1, b2), neg(m(a2, b1)), m(a3, b0)),
    )


def products_within(left, right, target) -> bool:
    """Exact test that a o b lies in ``target`` for all a in left, b in right."""
    left, right, target = list(left), list(right), list(target)
    parities = [_root2_parity(s) for s in (left, right, target)]
    if None in parities:
        pool = set(target)
        return all(qmul(a, b) in pool for a in left for b in right)
    pl, pr, pt = parities
    if (pl + pr - pt) % 2:
        # every product lands in the other sqrt2 class
        return not (left and right)
    (ls, dl), (rs, dr), (ts, dt) = (_zphi_scaled(s, p) for s, p in zip((left, right, target), parities))
    # a b = t with a = s^pl A/dl etc.  <=>  f A B dt = T dl dr, f = 2^((pl+pr-pt)/2)
    e = (pl + pr - pt) // 2
    fl, fr = (2**e, 1) if e >= 0 else (1, 2 ** (-e))
    scale_ab, scale_t = fl * dt, fr * dl * dr
    pool = {tuple((scale_t * a, scale_t * b) for a, b in q) for q in ts}
    for a in ls:
        for b in rs:
            prod = _zq_mul(a, b)
            if tuple((scale_ab * x, scale_ab * y) for x, y in prod) not in pool:
                return False
    return True


# -- octonion tables -----------------------------------------------------------------

class InvalidTableError(ValueError):
    pass


@dataclass(frozen=True)
class OctTable:
    """Signed structure constants: ``sc[a][b] = (sign, c)`` with e_a e_b = sign * e_c."""

    triads: tuple
    sc: tuple

    @classmethod
    def from_triads(cls, triads) -> OctTable:
        triads = tuple(tuple(int(x) for x in t) for t in triads)
        _check_sts(triads)
        sc = [[None] * 8 for _ in range(8)]
        for i in range(8):
            sc[0][i] = (1, i)
            sc[i][0] = (1, i)
        for i in range(1, 8):
            sc[i][i] = (-1, 0)
        for a, b, c in triads:
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                sc[x][y] = (1, z)
                sc[y][x] = (-1, z)
        return cls(triads, tuple(tuple(r) for r in sc))

    def grid(self) -> list:
        """8x8 signed-index grid: entry s*k encodes e_i e_j = s*e_k (0 means +-1)."""
        return [[s * k if k else s for s, k in row] for row in self.sc]


def _check_sts(triads):
    if len(triads) != 7:
        raise InvalidTableError("need exactly 7 triads")
    pairs = set()
    for t in triads:
        if len(t) != 3 or len(set(t)) != 3 or not all(1 <= x <= 7 for x in t):
            raise InvalidTableError(f"bad triad {t}")
        for p in itertools.combinations(sorted(t), 2):
            if p in pairs:
                raise InvalidTableError(f"pair {p} covered twice")
            pairs.add(p)
    if len(pairs) != 21:
        raise InvalidTableError("triads do not cover every pair")


def oct_mul(x, y, table: OctTable | None = None) -> tuple:
    sc = (table or default_table()).sc
    out = [ZERO] * 8
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = sc[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            s, k = row[j]
            p = xi * yj
            out[k] = out[k] + p if s > 0 else out[k] - p
    return tuple(out)


def oct_conj(x) -> tuple:
    return (x[0],) + tuple(-c for c in x[1:])


def oct_norm2(x) -> TowerScalar:
    total = ZERO
    for c in x:
        if c:
            total = total + c * c
    return total


def _int_mul(sc, x, y):
    out = [0] * 8
    for i, xi in enumerate(x):
        if xi:
            row = sc[i]
            for j, yj in enumerate(y):
                if yj:
                    s, k = row[j]
                    out[k] += s * xi * yj
    return out


@lru_cache(maxsize=1)
def _test_vectors():
    vecs = []
    for a, b in itertools.combinations(range(8), 2):
        v = [0] * 8
        v[a] = v[b] = 1
        vecs.append(v)
    return vecs


def _composes(sc) -> bool:
    """|xy|^2 = |x|^2 |y|^2 for every x, y of the form e_a + e_b."""
    vecs = _test_vectors()
    for x in vecs:
        for y in vecs:
            if sum(c * c for c in _int_mul(sc, x, y)) != 4:
                return False
    return True


def enumerate_sts7() -> list:
    """All 30 Steiner triple systems on the points 1..7."""
    points = range(1, 8)
    triples = list(itertools.combinations(points, 3))
    out = []

    def rec(chosen, covered):
        if len(chosen) == 7:
            out.append(tuple(chosen))
            return
        pair = next(p for p in itertools.combinations(points, 2) if p not in covered)
        for t in triples:
            if pair[0] in t and pair[1] in t:
                pairs = set(itertools.combinations(t, 2))
                if pairs & covered:
                    continue
                rec(chosen + [t], covered | pairs)

    rec([], set())
    return out


def _orientations(system):
    for flips in itertools.product((False, True), repeat=7):
        yield tuple((b, a, c) if f else (a, b, c) for (a, b, c), f in zip(system, flips))


def enumerate_octonion_tables() -> list:
    """The 480 oriented STS(7) whose algebra passes the composition filter."""
    out = []
    for system in enumerate_sts7():
        for triads in _orientations(system):
            t = OctTable.from_triads(triads)
            if _composes(t.sc):
                out.append(t)
    return out


def select_table(triads) -> OctTable:
    t = OctTable.from_triads(triads)
    if not _composes(t.sc):
        raise InvalidTableError("triads do not define a composition algebra")
    return t


MIRROR_TRIADS = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 6, 4), (2, 5, 7), (3, 4, 7), (3, 5, 6))


@lru_cache(maxsize=1)
def default_table() -> OctTable:
    """Cayley-Dickson doubling of the quaternions, e_{4+k} = (0, e_k)."""

    def basis(i):
        v = [0] * 8
        v[i] = 1
        return v

    def qm(a, b):
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        return [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ]

    def qc(a):
        return [a[0], -a[1], -a[2], -a[3]]

    def cd(x, y):
        a, b, c, d = x[:4], x[4:], y[:4], y[4:]
        left = [p - q for p, q in zip(qm(a, c), qm(qc(d), b))]
        right = [p + q for p, q in zip(qm(d, a), qm(b, qc(c)))]
        return left + right

    triads = []
    for a, b, c in itertools.combinations(range(1, 8), 3):
        prod = cd(basis(a), basis(b))
        if prod[c]:
            triads.append((a, b, c) if prod[c] > 0 else (b, a, c))
    return select_table(triads)


def is_quadrant_closed(t: OctTable) -> bool:
    """Low half {1, e1, e2, e3} is a subalgebra and the high half {e4..e7} is its module."""
    for i in range(8):
        for j in range(8):
            k = t.sc[i][j][1]
            if ((i >= 4) != (j >= 4)) != (k >= 4):
                return False
    return True


def _walsh(k):
    return tuple(-1 if bin(k & j).count("1") % 2 else 1 for j in range(8))


_WALSH = {_walsh(k) for k in range(8)} | {tuple(-x for x in _walsh(k)) for k in range(8)}


def is_palindromic_table(t: OctTable) -> bool:
    """Symmetry of the table under the half-turn (i, j) -> (7 - i, 7 - j).

    Product indices must agree, and along each row the sign pattern of
    entry(i, j) * entry(7 - i, 7 - j) must be a Walsh character (up to sign).
    """
    sc = t.sc
    for i in range(8):
        if any(sc[i][j][1] != sc[7 - i][7 - j][1] for j in range(8)):
            return False
        row = tuple(sc[i][j][0] * sc[7 - i][7 - j][0] for j in range(8))
        if row not in _WALSH:
            return False
    return True


# -- list-aware operators ------------------------------------------------------------

def _is_element(x) -> bool:
    return isinstance(x, tuple) and len(x) in (4, 8) and all(isinstance(c, TowerScalar) for c in x)


def _as_list(x, dim):
    if isinstance(x, (int, TowerScalar)):
        v = [ZERO] * dim
        v[0] = TowerScalar.coerce(x)
        return [tuple(v)]
    if _is_element(x):
        return [x]
    return list(x)


def _dim_of(*args):
    for a in args:
        if _is_element(a):
            return len(a)
        if isinstance(a, (list, tuple, set, frozenset)) and a and not isinstance(a, TowerScalar):
            first = next(iter(a))
            if _is_element(first):
                return len(first)
    return 4


def _mul(x, y, table):
    return qmul(x, y) if len(x) == 4 else oct_mul(x, y, table)


def prq(p, r, q, left: bool = False, table: OctTable | None = None):
    """[p, q]:r, i.e. p(rq) or (pr)q. Lists broadcast and deduplicate in order."""
    single = all(_is_element(a) or isinstance(a, (int, TowerScalar)) for a in (p, r, q))
    dim = _dim_of(p, r, q)
    ps, rs, qs = _as_list(p, dim), _as_list(r, dim), _as_list(q, dim)
    seen = {}
    for a in ps:
        for b in rs:
            ab = _mul(a, b, table) if left else None
            for c in qs:
                v = _mul(ab, c, table) if left else _mul(a, _mul(b, c, table), table)
                seen.setdefault(v, None)
    out = list(seen)
    return out[0] if single else out


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _conj(x):
    return qconj(x) if len(x) == 4 else oct_conj(x)


def algebra_operators(x, y, z=None, table: OctTable | None = None) -> dict:
    half = TowerScalar.rational(1) / 2
    xy, yx = _mul(x, y, table), _mul(y, x, table)
    xyb, yxb = _mul(x, _conj(y), table), _mul(y, _conj(x), table)
    comm = _sub(xy, yx)
    rec = {
        "conjugate": _conj(x),
        "scalar_plus": tuple(half * c for c in _add(xyb, yxb)),
        "scalar_minus": tuple(half * c for c in _sub(xyb, yxb)),
        "commutator": comm,
        "anticommutator": _add(xy, yx),
        "kronecker": tuple(a * b for a in x for b in y),
    }
    if z is not None:
        assoc = _sub(_mul(xy, z, table), _mul(x, _mul(y, z, table), table))
        bracket = _sub(_mul(comm, z, table), _mul(z, comm, table))
        rec["derivation"] = _sub(bracket, tuple(3 * c for c in assoc))
    return rec


def oct_exp(x) -> tuple:
    """Numeric exponential of a quaternion or octonion (float tuple)."""
    f = [float(c) for c in x]
    s, v = f[0], f[1:]
    theta = math.sqrt(sum(c * c for c in v))
    scale = math.exp(s)
    if theta == 0.0:
        return (scale,) + (0.0,) * len(v)
    k = scale * math.sin(theta) / theta
    return (scale * math.cos(theta),) + tuple(k * c for c in v)
