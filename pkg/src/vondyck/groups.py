"""Group elements with resolved identity.

Elements are materialized by breadth-first search from the identity over
right multiplication by x, y, x^-1, y^-1. Identity of elements is decided
by an exact key: a geometric fingerprint for von Dyck groups acting on
their triangle tiling, or an exact normal form for the two finite models
(the toy Z6 and the Burnside group B(2,3)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import geometry as geo
from .presentation import (CurvatureClass, Letter, Word, _coerce,
                           format_word)

__all__ = [
    "LETTERS", "GroupModel", "GeometricModel", "ToyZ6", "BurnsideB23",
    "GroupElement", "ElementStore", "UnboundedEnumerationError",
    "ElementNotFound", "enumerate_elements", "multiply", "canonical_word",
    "b23_multiply", "b23_power", "make_model",
]

LETTERS = (Letter.X, Letter.Y, Letter.Xinv, Letter.Yinv)


class UnboundedEnumerationError(ValueError):
    pass


class ElementNotFound(KeyError):
    pass


class GroupModel:
    """Interface shared by the three group models.

    ``orders`` gives the orders of x, y and xy; ``finite`` says whether an
    unbounded enumeration is guaranteed to terminate.
    """

    name = "abstract"
    orders: tuple[int, int, int]
    finite: bool

    def identity(self):
        raise NotImplementedError

    def generator(self, letter: Letter):
        raise NotImplementedError

    def mul(self, p, q):
        raise NotImplementedError

    def keys(self, p) -> list:
        """Candidate identity keys for ``p``; the first one is canonical."""
        return [self.key(p)]

    def key(self, p):
        return p

    def payload_json(self, p):
        return p

    def evaluate(self, w: Iterable[Letter]):
        g = self.identity()
        for letter in w:
            g = self.mul(g, self.generator(letter))
        return g


class GeometricModel(GroupModel):
    """D(a,b,c) acting on its triangle tiling by rotations."""

    name = "geometric"

    def __init__(self, params, tol: float = geo.FINGERPRINT_STEP):
        self.params = _coerce(params)
        self.tol = tol
        self.kind = self.params.curvature
        self.triangle = geo.build_basic_triangle(self.params)
        self.orders = (self.params.a, self.params.b, self.params.c)
        self.finite = self.kind == CurvatureClass.SPHERICAL

    def __repr__(self):
        return f"GeometricModel{self.params}"

    def identity(self):
        return geo.identity(self.kind)

    def generator(self, letter):
        return geo.generator_isometry(self.params, letter)

    def mul(self, p, q):
        return geo.compose(p, q)

    def key(self, p):
        return geo.fingerprint(p, self.triangle, self.tol)

    def keys(self, p):
        return geo.fingerprint_candidates(p, self.triangle, self.tol)

    def payload_json(self, p):
        return [list(geo.point_coords(geo.apply(p, v))) for v in self.triangle.vertices]


class ToyZ6(GroupModel):
    """Z6 = <x, y | x^2 = y^3 = [x, y] = 1> with x = 3 and y = 2."""

    name = "z6"
    orders = (2, 3, 6)
    finite = True
    _gens = {Letter.X: 3, Letter.Y: 2, Letter.Xinv: 3, Letter.Yinv: 4}

    def __repr__(self):
        return "ToyZ6()"

    def identity(self):
        return 0

    def generator(self, letter):
        return self._gens[Letter(letter)]

    def mul(self, p, q):
        return (p + q) % 6


def b23_multiply(u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    """Product of normal forms x^a y^b [x,y]^c in B(2,3).

    [x,y] = x^-1 y^-1 x y is central, so y^b x^a = x^a y^b [x,y]^(-ab),
    giving (a1+a2, b1+b2, c1+c2-a2*b1) mod 3.
    """
    a1, b1, c1 = u
    a2, b2, c2 = v
    return ((a1 + a2) % 3, (b1 + b2) % 3, (c1 + c2 - a2 * b1) % 3)


def b23_power(u, k: int):
    out = (0, 0, 0)
    for _ in range(k % 3):
        out = b23_multiply(out, u)
    return out


class BurnsideB23(GroupModel):
    """B(2,3) = <x, y | x^3 = y^3 = [x,y,x] = [x,y,y] = 1>, order 27."""

    name = "b23"
    orders = (3, 3, 3)
    finite = True
    _gens = {Letter.X: (1, 0, 0), Letter.Y: (0, 1, 0),
             Letter.Xinv: (2, 0, 0), Letter.Yinv: (0, 2, 0)}

    def __repr__(self):
        return "BurnsideB23()"

    def identity(self):
        return (0, 0, 0)

    def generator(self, letter):
        return self._gens[Letter(letter)]

    def mul(self, p, q):
        return b23_multiply(p, q)

    def payload_json(self, p):
        return list(p)


def make_model(name: str, params=None) -> GroupModel:
    if name == "z6":
        return ToyZ6()
    if name == "b23":
        return BurnsideB23()
    if name == "geometric":
        if params is None:
            raise ValueError("geometric model needs (a, b, c)")
        return GeometricModel(params)
    raise ValueError(f"unknown model {name!r}")


@dataclass
class GroupElement:
    id: int
    word: Word
    payload: object
    key: object
    layer: int

    @property
    def text(self) -> str:
        return format_word(self.word)


@dataclass
class ElementStore:
    model: GroupModel
    elements: list[GroupElement] = field(default_factory=list)
    index: dict = field(default_factory=dict)
    right_action: list[list] = field(default_factory=list)
    complete: bool = False
    max_word_length: int | None = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i) -> GroupElement:
        return self.elements[i]

    def lookup(self, payload):
        """Id of the stored element equal to ``payload``, or None."""
        for k in self.model.keys(payload):
            i = self.index.get(k)
            if i is not None:
                return i
        return None

    def id_of(self, payload) -> int:
        i = self.lookup(payload)
        if i is None:
            raise ElementNotFound(payload)
        return i

    def id_of_word(self, w: Iterable[Letter]) -> int:
        return self.id_of(self.model.evaluate(w))

    def act(self, i: int, letter: Letter):
        return self.right_action[i][letter]

    def is_interior(self, i: int) -> bool:
        return all(t is not None for t in self.right_action[i])

    @property
    def interior(self) -> frozenset:
        return frozenset(e.id for e in self.elements if self.is_interior(e.id))

    def _add(self, payload, word, layer) -> int:
        i = len(self.elements)
        key = self.model.key(payload)
        self.elements.append(GroupElement(i, tuple(word), payload, key, layer))
        self.index[key] = i
        self.right_action.append([None] * 4)
        return i

    def to_json(self) -> dict:
        return {
            "schema": "vondyck.store/1",
            "model": self.model.name,
            "params": list(self.model.orders),
            "complete": self.complete,
            "max_word_length": self.max_word_length,
            "elements": [
                {"id": e.id, "word": e.text, "layer": e.layer,
                 "fingerprint": list(e.key) if isinstance(e.key, tuple) else e.key}
                for e in self.elements
            ],
            "action": {letter.name: [row[letter] for row in self.right_action]
                       for letter in LETTERS},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def enumerate_elements(model: GroupModel, max_word_length: int | None = None) -> ElementStore:
    """Breadth-first closure of the identity under right multiplication.

    ``max_word_length=None`` means unbounded and is only accepted for
    models known to be finite. Elements are numbered by BFS layer and,
    within a layer, by canonical word in the order X < Y < Xinv < Yinv;
    the canonical word is the lexicographically least shortest word.
    When the bound stops the search early the store is partial
    (``complete`` is False) and unknown actions are left as None.
    """
    if max_word_length is None and not model.finite:
        raise UnboundedEnumerationError(f"{model!r} may be infinite; give a word-length bound")
    store = ElementStore(model, max_word_length=max_word_length)
    store._add(model.identity(), (), 0)
    gens = {letter: model.generator(letter) for letter in LETTERS}
    layer = [0]
    depth = 0
    while layer:
        expand = max_word_length is None or depth < max_word_length
        nxt = []
        for i in layer:
            src = store.elements[i]
            for letter in LETTERS:
                prod = model.mul(src.payload, gens[letter])
                j = store.lookup(prod)
                if j is None and expand:
                    j = store._add(prod, src.word + (letter,), depth + 1)
                    nxt.append(j)
                store.right_action[i][letter] = j
        if not expand:
            break
        layer = nxt
        depth += 1
    store.complete = all(t is not None for row in store.right_action for t in row)
    return store


def multiply(store: ElementStore, i: int, j: int) -> int:
    p = store.model.mul(store.elements[i].payload, store.elements[j].payload)
    k = store.lookup(p)
    if k is None:
        raise ElementNotFound(f"product of {i} and {j} is not in the store")
    return k


def canonical_word(store: ElementStore, i: int) -> Word:
    if not 0 <= i < len(store.elements):
        raise ElementNotFound(i)
    return store.elements[i].word
