"""Independent oracles used by the tests.

Nothing here imports the geometry kernel or the group engine. Elements of
D(a,b,c) are represented through the Tits reflection representation of the
Coxeter group with Coxeter numbers (a, b, c): x = s1 s2 and y = s2 s3, so
that xy = s1 s3. The representation is faithful, which makes it a decision
procedure for the word problem.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


# --- exact arithmetic in Q(sqrt(d)) -------------------------------------------

class QSqrt:
    """p + q sqrt(d) with rational p, q."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q=0, d=2):
        self.p, self.q, self.d = Fraction(p), Fraction(q), d

    def __add__(self, o):
        return QSqrt(self.p + o.p, self.q + o.q, self.d)

    def __mul__(self, o):
        return QSqrt(self.p * o.p + self.d * self.q * o.q, self.p * o.q + self.q * o.p, self.d)

    def __eq__(self, o):
        return self.p == o.p and self.q == o.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"{self.p}+{self.q}r{self.d}"


def _two_cos(m: int):
    """2 cos(pi / m) exactly, for the Coxeter numbers used in the tests."""
    table = {2: (0, 0, 2), 3: (1, 0, 2), 4: (0, 1, 2), 6: (0, 1, 3)}
    p, q, d = table[m]
    return QSqrt(p, q, d)


def _mat_mul(A, B):
    n = len(A)
    return tuple(tuple(_sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _sum(xs):
    xs = list(xs)
    out = xs[0]
    for x in xs[1:]:
        out = out + x
    return out


class ExactTits:
    """Exact rotation-subgroup representation for (a,b,c) with entries in
    a single quadratic field (e.g. (3,3,3), (4,4,4), (2,4,4))."""

    def __init__(self, a, b, c):
        m = {(0, 1): a, (1, 2): b, (0, 2): c}
        d = 3 if 6 in (a, b, c) else 2
        one, zero = QSqrt(1, 0, d), QSqrt(0, 0, d)
        coef = [[zero] * 3 for _ in range(3)]
        for (i, j), mij in m.items():
            v = _two_cos(mij)
            v = QSqrt(v.p, v.q, d)
            coef[i][j] = coef[j][i] = v
        # s_i(e_j) = e_j - 2 B(e_i, e_j) e_i with B(e_i, e_j) = -cos(pi / m_ij)
        refl = []
        for i in range(3):
            M = [[one if r == col else zero for col in range(3)] for r in range(3)]
            for j in range(3):
                if j != i:
                    M[i][j] = coef[i][j]
            M[i][i] = QSqrt(-1, 0, d)
            refl.append(tuple(tuple(row) for row in M))
        x = _mat_mul(refl[0], refl[1])
        y = _mat_mul(refl[1], refl[2])
        self.identity = tuple(tuple(one if r == col else zero for col in range(3)) for r in range(3))
        xi = self.power(x, a - 1)
        yi = self.power(y, b - 1)
        self.gens = (x, y, xi, yi)   # indexed like the letters X, Y, Xinv, Yinv

    def power(self, M, k):
        out = self.identity if k == 0 else M
        for _ in range(k - 1):
            out = _mat_mul(out, M)
        return out

    def evaluate(self, word):
        out = self.identity
        for letter in word:
            out = _mat_mul(out, self.gens[int(letter)])
        return out


def float_tits_generators(a, b, c):
    """Floating-point x, y of the Tits representation."""
    m = np.array([[1, a, c], [a, 1, b], [c, b, 1]], dtype=float)
    B = -np.cos(np.pi / m)
    refl = []
    for i in range(3):
        S = np.eye(3)
        S[i, :] -= 2 * B[i, :]
        refl.append(S)
    return refl[0] @ refl[1], refl[1] @ refl[2]


def matrix_closure_order(a, b, c, cap=10_000) -> int:
    """Order of <x, y> by brute-force closure of floating-point matrices."""
    x, y = float_tits_generators(a, b, c)
    gens = [x, y, np.linalg.inv(x), np.linalg.inv(y)]

    def key(M):
        return tuple(np.round(M, 6).ravel() + 0.0)

    seen = {key(np.eye(3))}
    frontier = [np.eye(3)]
    while frontier:
        nxt = []
        for M in frontier:
            for g in gens:
                P = M @ g
                k = key(P)
                if k not in seen:
                    seen.add(k)
                    nxt.append(P)
        frontier = nxt
        if len(seen) > cap:
            raise RuntimeError("closure did not terminate")
    return len(seen)


def reduced_words(max_len: int):
    """All freely reduced words (as tuples of ints 0..3) up to max_len."""
    out = [()]
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for l in range(4):
                if w and w[-1] ^ l == 2:
                    continue
                nxt.append(w + (l,))
        out.extend(nxt)
        layer = nxt
    return out


def shortest_word_classes(tits: ExactTits, max_len: int):
    """Map exact matrix -> lexicographically least shortest word, over all
    freely reduced words up to max_len (visited in length-lex order, each
    evaluated from its prefix)."""
    first = {tits.identity: ()}
    layer = [((), tits.identity)]
    for _ in range(max_len):
        nxt = []
        for w, M in layer:
            for l in range(4):
                if w and w[-1] ^ l == 2:
                    continue
                P = _mat_mul(M, tits.gens[l])
                nxt.append((w + (l,), P))
                if P not in first:
                    first[P] = w + (l,)
        layer = nxt
    return first


# --- B(2,3) -------------------------------------------------------------------

class B23Oracle:
    """Decide equality in <x, y | x^3, y^3, [x,y,x], [x,y,y]> through a
    coset table of the trivial subgroup (relator-driven enumeration)."""

    def __init__(self):
        from sympy.combinatorics.fp_groups import FpGroup
        from sympy.combinatorics.free_groups import free_group

        F, x, y = free_group("x y")
        c = x**-1 * y**-1 * x * y
        self.group = FpGroup(F, [x**3, y**3, c**-1 * x**-1 * c * x, c**-1 * y**-1 * c * y])
        table = self.group.coset_enumeration([])
        table.compress()
        table.standardize()
        self.table = table.table
        # columns are ordered x, x^-1, y, y^-1
        self.col = {"x": 0, "X": 1, "y": 2, "Y": 3}

    def trace(self, letters: str) -> int:
        coset = 0
        for ch in letters:
            coset = self.table[coset][self.col[ch]]
        return coset

    @staticmethod
    def normal_form_word(a, b, c) -> str:
        comm = "XYxy"
        return "x" * a + "y" * b + comm * c


# --- Euclidean triples ----------------------------------------------------------

def brute_force_euclidean(limit=12):
    out = set()
    for a, b, c in itertools.product(range(2, limit + 1), repeat=3):
        if a <= b <= c and Fraction(1, a) + Fraction(1, b) + Fraction(1, c) == 1:
            out.add((a, b, c))
    return out


# --- geodesic arcs ---------------------------------------------------------------

def svg_arc_midpoint(p0, p1, r, sweep):
    """Midpoint of the SVG minor arc from p0 to p1 (screen coordinates,
    y pointing down) with the given radius and sweep flag, following the
    SVG implementation notes for center selection."""
    d = abs(p1 - p0)
    h = math.sqrt(max(r * r - d * d / 4, 0.0))
    mid = (p0 + p1) / 2
    n = (p1 - p0) / d * 1j
    for center in (mid + n * h, mid - n * h):
        a0 = math.atan2((p0 - center).imag, (p0 - center).real)
        a1 = math.atan2((p1 - center).imag, (p1 - center).real)
        da = (a1 - a0) % (2 * math.pi)
        # sweep 1: angle increases; the minor arc needs da < pi
        if (sweep == 1 and da < math.pi) or (sweep == 0 and da > math.pi):
            half = da / 2 if sweep == 1 else (da - 2 * math.pi) / 2
            return center + r * complex(math.cos(a0 + half), math.sin(a0 + half))
    raise ValueError("no center")
