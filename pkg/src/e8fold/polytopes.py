"""Named quaternionic constructions: T, T', S, S', I, I', A', A, J, J', F4 and friends."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg as la
from .exactfield import ONE, PHI, SQRT2, ZERO, TowerScalar, ts_galois5, ts_inv
from .quatoct import products_within, prq, qconj, qmul, qnorm2, qpow, quat
from .rootsys import vertex_sort_key

__all__ = [
    "QuatSet",
    "SeedError",
    "make_T",
    "make_Tp",
    "make_F4",
    "make_seeds",
    "make_S",
    "make_I",
    "make_Ip",
    "make_Sp",
    "make_A",
    "make_J",
    "make_Jp",
    "make_dual_snub",
    "seed_constraint_filter",
    "conjugate_power_conditions",
    "perm_orbit",
    "galois_conj",
    "is_group",
    "is_coset_of",
    "e8_to_j_map",
    "construction",
    "CONSTRUCTIONS",
]

HALF = TowerScalar.rational(Fraction(1, 2))
INV_SQRT2 = ts_inv(SQRT2)
_ONE_Q = (ONE, ZERO, ZERO, ZERO)


class SeedError(ValueError):
    pass


@dataclass(frozen=True)
class QuatSet:
    elements: tuple
    label: str

    @classmethod
    def of(cls, elems, label: str) -> QuatSet:
        return cls(tuple(sorted(set(elems), key=vertex_sort_key)), label)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.as_set()

    def as_set(self) -> frozenset:
        return frozenset(self.elements)

    def __or__(self, other):
        return QuatSet.of(self.elements + other.elements, f"{self.label}+{other.label}")

    def __sub__(self, other):
        drop = other.as_set()
        return QuatSet.of((x for x in self.elements if x not in drop), f"{self.label}-{other.label}")


@lru_cache(maxsize=None)
def make_T() -> QuatSet:
    elems = []
    for i in range(4):
        for s in (1, -1):
            v = [0] * 4
            v[i] = s
            elems.append(quat(v))
    for signs in itertools.product((1, -1), repeat=4):
        elems.append(tuple(HALF * s for s in signs))
    return QuatSet.of(elems, "T")


@lru_cache(maxsize=None)
def make_Tp() -> QuatSet:
    elems = []
    for i, j in itertools.combinations(range(4), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = [ZERO] * 4
            v[i] = INV_SQRT2 * si
            v[j] = INV_SQRT2 * sj
            elems.append(tuple(v))
    return QuatSet.of(elems, "Tp")


def make_F4() -> QuatSet:
    return QuatSet.of(make_T().elements + make_Tp().elements, "F4")


@lru_cache(maxsize=None)
def make_seeds() -> tuple:
    """(c, c', alpha, beta) as exact quaternions."""
    inv_phi = PHI - 1
    sqrt5 = 2 * PHI - 1
    c = quat(HALF, HALF, -HALF, -HALF)
    cp = (ZERO, ZERO, INV_SQRT2, -INV_SQRT2)
    alpha = (inv_phi * HALF, HALF, PHI * HALF, ZERO)
    k = ts_inv(2 * SQRT2)
    beta = (-PHI * k, sqrt5 * k, -inv_phi * k, ZERO)
    return c, cp, alpha, beta


def _check_seed(seed):
    if qnorm2(seed) != ONE:
        raise SeedError("seed must have unit norm")
    p5 = qpow(seed, 5)
    if p5 not in (_ONE_Q, tuple(-x for x in _ONE_Q)):
        raise SeedError("seed must satisfy p^5 = +-1")


def make_I(seed=None, base: QuatSet | None = None, label: str = "I") -> QuatSet:
    """prq(seed^0..4, 1, base)."""
    seed = make_seeds()[2] if seed is None else seed
    base = make_T() if base is None else base
    _check_seed(seed)
    powers = [qpow(seed, i) for i in range(5)]
    return QuatSet.of(prq(powers, 1, list(base)), label)


def make_S(seed=None, base: QuatSet | None = None, label: str = "S") -> QuatSet:
    """Union of seed^i o base for i = 1..4."""
    seed = make_seeds()[2] if seed is None else seed
    base = make_T() if base is None else base
    _check_seed(seed)
    powers = [qpow(seed, i) for i in range(1, 5)]
    out = QuatSet.of(prq(powers, 1, list(base)), label)
    return out


@lru_cache(maxsize=None)
def _I():
    return make_I()


@lru_cache(maxsize=None)
def make_Ip() -> QuatSet:
    """alpha-rotations of T'; a right coset I o x of the icosians, x in T'."""
    return make_I(make_seeds()[2], make_Tp(), "Ip")


@lru_cache(maxsize=None)
def make_Sp() -> QuatSet:
    s = make_Ip() - make_Tp()
    return QuatSet(s.elements, "Sp")


def galois_conj(q) -> tuple:
    return tuple(ts_galois5(x) for x in q)


def _j_coset_reps():
    c, cp, alpha, _ = make_seeds()
    g = galois_conj(qconj(alpha))
    return [qmul(cp, qpow(g, j)) for j in range(5)]


@lru_cache(maxsize=None)
def make_A() -> tuple:
    """(A', A): A' is a regular 5-cell of coset representatives of J / I containing -c'."""
    _, cp, _, _ = make_seeds()
    quarter = TowerScalar.rational(Fraction(-1, 4))
    icos = _I().elements
    cosets = [sorted((qmul(r, u) for u in icos), key=vertex_sort_key) for r in _j_coset_reps()]
    start = tuple(-x for x in cp)
    if start not in set(cosets[0]):
        raise SeedError("-c' is not a representative of the first coset")

    def search(chosen, k):
        if k == 5:
            return list(chosen)
        for x in cosets[k]:
            if all(la.dot(x, y) == quarter for y in chosen):
                found = search(chosen + [x], k + 1)
                if found:
                    return found
        return None

    a_prime = search([start], 1)
    if a_prime is None:
        raise SeedError("no regular 5-cell of coset representatives")
    ap = QuatSet.of(a_prime, "Ap")
    a = QuatSet.of((qconj(qmul(cp, x)) for x in ap), "A")
    return ap, a


def make_J(formula: int = 2) -> QuatSet:
    """120-cell J. formula 1: c' o conj_g(alpha)^j o alpha^i o T; 2: prq(A', alpha^0..4, T)."""
    c, cp, alpha, _ = make_seeds()
    t = list(make_T())
    powers = [qpow(alpha, i) for i in range(5)]
    if formula == 1:
        g = galois_conj(qconj(alpha))
        left = [qmul(cp, qpow(g, j)) for j in range(5)]
        return QuatSet.of(prq(left, powers, t), "J")
    if formula == 2:
        return QuatSet.of(prq(list(make_A()[0]), powers, t), "J")
    if formula == 3:
        return QuatSet.of(prq(list(make_A()[0]), 1, list(_I())), "J")
    raise ValueError("formula must be 1, 2 or 3")


def make_Jp(formula: int = 2) -> QuatSet:
    """120-cell J' from T'. formula 1 uses c in place of c'; 2 is prq(A', alpha^0..4, T')."""
    c, _, alpha, _ = make_seeds()
    tp = list(make_Tp())
    powers = [qpow(alpha, i) for i in range(5)]
    if formula == 1:
        g = galois_conj(qconj(alpha))
        left = [qmul(c, qpow(g, j)) for j in range(5)]
        return QuatSet.of(prq(left, powers, tp), "Jp")
    if formula == 2:
        return QuatSet.of(prq(list(make_A()[0]), powers, tp), "Jp")
    if formula == 3:
        return QuatSet.of(prq(list(make_A()[0]), 1, list(make_Ip())), "Jp")
    raise ValueError("formula must be 1, 2 or 3")


def make_dual_snub() -> QuatSet:
    return QuatSet.of(make_Sp().elements + make_T().elements + make_Tp().elements, "dual-snub")


def seed_constraint_filter(s: QuatSet) -> QuatSet:
    keep = []
    for p in s:
        try:
            _check_seed(p)
        except SeedError:
            continue
        keep.append(p)
    return QuatSet.of(keep, f"{s.label}*")


def conjugate_power_conditions(p) -> dict:
    """conj(p) = +-p^4, conj(p^4) = +-p, conj(p^2) = p^3, conj(p^3) = p^2."""
    pw = [qpow(p, k) for k in range(5)]

    def pm(a, b):
        return a == b or a == tuple(-x for x in b)

    return {
        "p1": pm(qconj(pw[1]), pw[4]),
        "p4": pm(qconj(pw[4]), pw[1]),
        "p2": qconj(pw[2]) == pw[3],
        "p3": qconj(pw[3]) == pw[2],
    }


_EVEN_PERMS = [p for p in itertools.permutations(range(4)) if sum(1 for i, j in itertools.combinations(p, 2) if i > j) % 2 == 0]
PERM_MODES = ("Rotate", "oSign", "eSign")


def perm_orbit(seed, mode: str = "Rotate") -> QuatSet:
    """Even position permutations combined with all, odd, or even sign changes."""
    if mode not in PERM_MODES:
        raise ValueError(f"unsupported mode {mode!r}; choose from {PERM_MODES}")
    seed = quat(seed)
    out = set()
    for signs in itertools.product((1, -1), repeat=4):
        odd = signs.count(-1) % 2 == 1
        if (mode == "oSign" and not odd) or (mode == "eSign" and odd):
            continue
        for perm in _EVEN_PERMS:
            out.add(tuple(seed[perm[k]] * signs[k] for k in range(4)))
    return QuatSet.of(out, f"orbit:{mode}")


def is_group(s: QuatSet) -> bool:
    return _ONE_Q in s.as_set() and products_within(s, s, s)


def is_coset_of(s: QuatSet, g: QuatSet) -> bool:
    """True when s = g o x for one (hence every) x in s."""
    x = s.elements[0]
    return {qmul(h, x) for h in g} == s.as_set()


def e8_to_j_map() -> dict:
    """Each root -> the 10 J vertices a o u, a in A', u its two unit-scaled folded halves."""
    from .foldcore import fold_all
    from .exactfield import SQRT_PHI
    from .rootsys import e8_roots_direct

    ap = make_A()[0]
    small = SQRT_PHI
    large = SQRT_PHI * (PHI - 1)
    out = {}
    roots = e8_roots_direct().vertices
    for r, p in zip(roots, fold_all(roots)):
        units = []
        for v, cls in ((p.left, p.norm_class_left), (p.right, p.norm_class_right)):
            units.append(la.vec_scale(small if cls == "small" else large, v))
        out[r] = [qmul(a, u) for u in units for a in ap]
    return out


CONSTRUCTIONS = ("T", "Tp", "S", "Sp", "I", "Ip", "A", "Ap", "J", "Jp", "F4", "dual-snub")


def construction(name: str) -> QuatSet:
    builders = {
        "T": make_T,
        "Tp": make_Tp,
        "S": make_S,
        "Sp": make_Sp,
        "I": _I,
        "Ip": make_Ip,
        "A": lambda: make_A()[1],
        "Ap": lambda: make_A()[0],
        "J": make_J,
        "Jp": make_Jp,
        "F4": make_F4,
        "dual-snub": make_dual_snub,
    }
    if name not in builders:
        raise KeyError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")
    return builders[name]()
