"""Surface models, orientation-preserving isometries and the basic triangle.

Three models are used, one per curvature class:

* sphere: unit vectors in R^3, isometries are 3x3 rotation matrices;
* Euclidean plane: complex numbers, isometries z -> alpha z + beta stored as
  the 2x2 matrix [[alpha, beta], [0, 1]];
* hyperbolic plane: the Poincare disk, isometries are Mobius maps
  z -> (p z + q) / (conj(q) z + conj(p)) stored as [[p, q], [conj q, conj p]]
  with |p|^2 - |q|^2 = 1.

The basic triangle has its O vertex at the origin (north pole on the sphere),
its A vertex on the positive real axis (the x axis), and B at polar angle pi/c,
so that (A, B, O) runs counterclockwise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .presentation import CurvatureClass, Letter, VonDyckParams, _coerce

__all__ = [
    "EPS", "FINGERPRINT_STEP", "Isometry", "Triangle", "ModelMismatch",
    "identity", "compose", "inverse", "apply", "renormalize", "rotation",
    "build_basic_triangle", "generator_isometry", "evaluate_word",
    "fingerprint", "fingerprint_candidates", "point_coords", "PointIndex",
    "distance", "midpoint", "reflect", "angle_at", "orientation", "turn_sign",
    "max_displacement", "is_identity",
]

EPS = 1e-9
FINGERPRINT_STEP = 1e-6

SPH, EUC, HYP = CurvatureClass.SPHERICAL, CurvatureClass.EUCLIDEAN, CurvatureClass.HYPERBOLIC


class ModelMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Isometry:
    kind: CurvatureClass
    matrix: np.ndarray

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return compose(self, other)

    def __call__(self, p):
        return apply(self, p)

    def __repr__(self):
        return f"Isometry({self.kind.value}, {np.round(self.matrix, 6).tolist()})"


def identity(kind: CurvatureClass) -> Isometry:
    if kind == SPH:
        return Isometry(kind, np.eye(3))
    return Isometry(kind, np.eye(2, dtype=complex))


def renormalize(g: Isometry) -> Isometry:
    """Project a drifted matrix back onto its isometry group."""
    m = g.matrix
    if g.kind == SPH:
        u, _, vt = np.linalg.svd(m)
        return Isometry(SPH, u @ vt)
    if g.kind == EUC:
        alpha = m[0, 0] / m[1, 1]
        beta = m[0, 1] / m[1, 1]
        alpha /= abs(alpha)
        return Isometry(EUC, np.array([[alpha, beta], [0, 1]], dtype=complex))
    p = (m[0, 0] + m[1, 1].conjugate()) / 2
    q = (m[0, 1] + m[1, 0].conjugate()) / 2
    s = math.sqrt(abs(p) ** 2 - abs(q) ** 2)
    p, q = p / s, q / s
    return Isometry(HYP, np.array([[p, q], [q.conjugate(), p.conjugate()]]))


def compose(g: Isometry, h: Isometry) -> Isometry:
    """The isometry ``p -> g(h(p))``."""
    if g.kind != h.kind:
        raise ModelMismatch(f"cannot compose {g.kind.value} with {h.kind.value}")
    return renormalize(Isometry(g.kind, g.matrix @ h.matrix))


def inverse(g: Isometry) -> Isometry:
    m = g.matrix
    if g.kind == SPH:
        return Isometry(SPH, m.T.copy())
    if g.kind == EUC:
        alpha, beta = m[0, 0], m[0, 1]
        ai = alpha.conjugate()
        return Isometry(EUC, np.array([[ai, -ai * beta], [0, 1]], dtype=complex))
    p, q = m[0, 0], m[0, 1]
    return Isometry(HYP, np.array([[p.conjugate(), -q], [-q.conjugate(), p]]))


def _check_point(kind, p):
    if kind == SPH:
        if np.ndim(p) != 1 or len(p) != 3:
            raise ModelMismatch("spherical isometry needs a 3-vector")
    elif np.ndim(p) != 0:
        raise ModelMismatch("planar isometry needs a complex number")


def apply(g: Isometry, p):
    _check_point(g.kind, p)
    m = g.matrix
    if g.kind == SPH:
        return m @ p
    z = complex(p)
    return (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])


def _to_origin(kind, c):
    """An isometry sending the point c to the model's base point."""
    if kind == SPH:
        return inverse(_from_origin(kind, c))
    if kind == EUC:
        return Isometry(EUC, np.array([[1, -c], [0, 1]], dtype=complex))
    s = 1 / math.sqrt(1 - abs(c) ** 2)
    return Isometry(HYP, s * np.array([[1, -c], [-c.conjugate(), 1]], dtype=complex))


def _from_origin(kind, c):
    if kind == SPH:
        c = np.asarray(c, dtype=float)
        n = np.array([0.0, 0.0, 1.0])
        axis = np.cross(n, c)
        s = np.linalg.norm(axis)
        if s < 1e-15:
            return identity(SPH) if c[2] > 0 else Isometry(SPH, np.diag([1.0, -1.0, -1.0]))
        return _axis_rotation(axis / s, math.atan2(s, float(n @ c)))
    return inverse(_to_origin(kind, c))


def _axis_rotation(axis, theta):
    k = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
    return Isometry(SPH, np.eye(3) + math.sin(theta) * k + (1 - math.cos(theta)) * (k @ k))


def rotation(kind: CurvatureClass, center, theta: float) -> Isometry:
    """Counterclockwise rotation by ``theta`` about ``center``."""
    if kind == SPH:
        c = np.asarray(center, dtype=float)
        return _axis_rotation(c / np.linalg.norm(c), theta)
    if kind == EUC:
        u = cmath.exp(1j * theta)
        return Isometry(EUC, np.array([[u, center * (1 - u)], [0, 1]], dtype=complex))
    half = cmath.exp(0.5j * theta)
    r0 = Isometry(HYP, np.array([[half, 0], [0, half.conjugate()]], dtype=complex))
    return compose(_from_origin(HYP, center), compose(r0, _to_origin(HYP, center)))


# --- metric helpers ---------------------------------------------------------

def distance(kind, p, q) -> float:
    if kind == SPH:
        return math.acos(max(-1.0, min(1.0, float(np.dot(p, q)))))
    if kind == EUC:
        return abs(p - q)
    w = abs((p - q) / (1 - q.conjugate() * p))
    return 2 * math.atanh(min(w, 1 - 1e-16))


def midpoint(kind, p, q):
    """Geodesic midpoint of the segment pq."""
    if kind == SPH:
        m = np.asarray(p) + np.asarray(q)
        return m / np.linalg.norm(m)
    if kind == EUC:
        return (p + q) / 2
    to0 = _to_origin(HYP, p)
    w = apply(to0, q)
    r = abs(w)
    if r == 0:
        return p
    mid = math.tanh(math.atanh(r) / 2) * w / r
    return apply(inverse(to0), mid)


def reflect(kind, p, q, z):
    """Reflect ``z`` across the geodesic through ``p`` and ``q``."""
    if kind == SPH:
        n = np.cross(p, q)
        n = n / np.linalg.norm(n)
        return z - 2 * np.dot(z, n) * n
    if kind == EUC:
        u = (q - p) / abs(q - p)
        return p + u * u * (z - p).conjugate()
    to0 = _to_origin(HYP, p)
    w = apply(to0, q)
    u = w / abs(w)
    zz = apply(to0, z)
    return apply(inverse(to0), u * u * zz.conjugate())


def _tangent(kind, p, q):
    """Unit direction at p of the geodesic towards q, as a complex number
    in an oriented frame at p."""
    if kind == SPH:
        p = np.asarray(p)
        t = np.asarray(q) - np.dot(p, q) * p
        # oriented frame at p: e1, e2 = p x e1
        e1 = np.cross([0.0, 0.0, 1.0], p)
        if np.linalg.norm(e1) < 1e-12:
            e1 = np.array([1.0, 0.0, 0.0])
        e1 = e1 / np.linalg.norm(e1)
        e2 = np.cross(p, e1)
        v = complex(np.dot(t, e1), np.dot(t, e2))
        return v / abs(v)
    if kind == EUC:
        v = q - p
        return v / abs(v)
    v = apply(_to_origin(HYP, p), q)
    return v / abs(v)


def angle_at(kind, p, q, r) -> float:
    """Unsigned angle at p between the geodesics pq and pr."""
    return abs(cmath.phase(_tangent(kind, p, r) / _tangent(kind, p, q)))


def orientation(kind, p, q, r) -> int:
    """+1 if the geodesic triangle (p, q, r) is counterclockwise, -1 if not."""
    s = (_tangent(kind, p, r) / _tangent(kind, p, q)).imag
    return 1 if s > 0 else -1


def turn_sign(kind, center, points: Sequence) -> int:
    """+1 if ``points`` wind counterclockwise around ``center``, -1 if
    clockwise (summing signed angles seen from ``center``)."""
    total = 0.0
    n = len(points)
    dirs = [_tangent(kind, center, pt) for pt in points]
    for i in range(n):
        total += cmath.phase(dirs[(i + 1) % n] / dirs[i])
    if abs(total) < math.pi:
        return 0
    return 1 if total > 0 else -1


# --- the basic triangle -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class Triangle:
    kind: CurvatureClass
    vA: object
    vB: object
    vO: object

    @property
    def vertices(self):
        return (self.vA, self.vB, self.vO)

    def angles(self):
        k = self.kind
        return (angle_at(k, self.vA, self.vB, self.vO),
                angle_at(k, self.vB, self.vO, self.vA),
                angle_at(k, self.vO, self.vA, self.vB))


def _side_from_angles(kind, opposite, adj1, adj2):
    """Length of the side opposite ``opposite`` from the dual law of cosines."""
    v = (math.cos(opposite) + math.cos(adj1) * math.cos(adj2)) / (math.sin(adj1) * math.sin(adj2))
    if kind == SPH:
        return math.acos(max(-1.0, min(1.0, v)))
    return math.acosh(max(1.0, v))


@lru_cache(maxsize=None)
def build_basic_triangle(params) -> Triangle:
    p = _coerce(params)
    kind = p.curvature
    al, be, ga = math.pi / p.a, math.pi / p.b, math.pi / p.c
    phi = ga
    if kind == EUC:
        # law of sines with |AB| = 1
        oa = math.sin(be) / math.sin(ga)
        ob = math.sin(al) / math.sin(ga)
        return Triangle(kind, complex(oa, 0), ob * cmath.exp(1j * phi), 0j)
    oa = _side_from_angles(kind, be, al, ga)
    ob = _side_from_angles(kind, al, be, ga)
    if kind == SPH:
        def at(d, th):
            return np.array([math.sin(d) * math.cos(th), math.sin(d) * math.sin(th), math.cos(d)])
        return Triangle(kind, at(oa, 0.0), at(ob, phi), np.array([0.0, 0.0, 1.0]))
    return Triangle(kind, complex(math.tanh(oa / 2), 0),
                    math.tanh(ob / 2) * cmath.exp(1j * phi), 0j)


@lru_cache(maxsize=None)
def _generators(p: VonDyckParams):
    t = build_basic_triangle(p)
    x = rotation(t.kind, t.vA, 2 * math.pi / p.a)
    y = rotation(t.kind, t.vB, 2 * math.pi / p.b)
    return {Letter.X: x, Letter.Y: y, Letter.Xinv: inverse(x), Letter.Yinv: inverse(y)}


def generator_isometry(params, letter: Letter) -> Isometry:
    """x rotates by 2pi/a about A, y by 2pi/b about B, both counterclockwise."""
    return _generators(_coerce(params))[Letter(letter)]


def evaluate_word(w: Iterable[Letter], params) -> Isometry:
    p = _coerce(params)
    gens = _generators(p)
    g = identity(p.curvature)
    for letter in w:
        g = compose(g, gens[letter])
    return g


# --- identity of isometries -------------------------------------------------

def point_coords(p) -> tuple[float, ...]:
    if np.ndim(p) == 1:
        return tuple(float(v) for v in p)
    z = complex(p)
    return (z.real, z.imag)


def _quantize(coords, step):
    return tuple(int(round(v / step)) for v in coords)


def _near_keys(coords, step, slack=0.05):
    """The rounded key plus alternatives for coordinates sitting within
    ``slack`` (in steps) of a rounding boundary."""
    opts = []
    for v in coords:
        s = v / step
        k = round(s)
        frac = s - math.floor(s)
        if abs(frac - 0.5) < slack:
            lo = math.floor(s)
            opts.append((int(k), int(lo) if k != lo else int(lo) + 1))
        else:
            opts.append((int(k),))
    return [tuple(c) for c in product(*opts)]


def _probe_coords(g: Isometry, probes) -> tuple[float, ...]:
    out: list[float] = []
    for pt in probes:
        out.extend(point_coords(apply(g, pt)))
    return tuple(out)


def fingerprint(g: Isometry, triangle: Triangle, tol: float = FINGERPRINT_STEP) -> tuple:
    """Quantized images of the basic triangle's vertices under ``g``."""
    return _quantize(_probe_coords(g, triangle.vertices), tol)


def fingerprint_candidates(g: Isometry, triangle: Triangle, tol: float = FINGERPRINT_STEP) -> list:
    """``fingerprint`` first, then the keys a tiny perturbation could yield."""
    return _near_keys(_probe_coords(g, triangle.vertices), tol)


def max_displacement(g: Isometry, probes) -> float:
    worst = 0.0
    for pt in probes:
        worst = max(worst, float(np.linalg.norm(np.asarray(point_coords(apply(g, pt)))
                                                - np.asarray(point_coords(pt)))))
    return worst


def is_identity(g: Isometry, probes, tol: float = EPS) -> bool:
    return max_displacement(g, probes) < tol


class PointIndex:
    """Deduplicate surface points (or tuples of points) up to a quantization
    step, robust to values straddling a rounding boundary."""

    def __init__(self, step: float = FINGERPRINT_STEP):
        self.step = step
        self._ids: dict[tuple, int] = {}
        self.items: list = []

    def __len__(self):
        return len(self.items)

    @staticmethod
    def _coords(obj):
        if isinstance(obj, tuple):
            out: list[float] = []
            for p in obj:
                out.extend(point_coords(p))
            return out
        return point_coords(obj)

    def find(self, obj):
        for key in _near_keys(self._coords(obj), self.step):
            i = self._ids.get(key)
            if i is not None:
                return i
        return None

    def add(self, obj) -> tuple[int, bool]:
        """Return ``(id, is_new)``."""
        i = self.find(obj)
        if i is not None:
            return i, False
        i = len(self.items)
        self._ids[_quantize(self._coords(obj), self.step)] = i
        self.items.append(obj)
        return i, True
