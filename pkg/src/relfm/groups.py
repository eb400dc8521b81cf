"""Finitely generated abelian groups, homomorphisms and semidirect products.

Elements of ``Z^r + Z/n1 + ... + Z/nk`` are plain integer tuples whose
torsion coordinates are kept reduced into ``[0, n_i)``.  A semidirect
product pairs a finite group (given by its multiplication table) with an
abelian group on which it acts through pullback-style automorphisms:

    (g, a) * (g', a') = (g g', act(g')(a) + a')

For this law to be associative ``act`` must reverse products,
``act(g h) = act(h) o act(g)``, which is how pullback along automorphisms
behaves.  Contexts check this at construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import (
    ContextMismatchError,
    InvalidActionError,
    InvalidGroupError,
    ShapeMismatchError,
)

Element = tuple[int, ...]


@dataclass(frozen=True)
class FGAbelian:
    free_rank: int = 0
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_orders", tuple(self.torsion_orders))
        if self.free_rank < 0:
            raise InvalidGroupError("free rank must be non-negative")
        if any(n < 2 for n in self.torsion_orders):
            raise InvalidGroupError("torsion orders must be >= 2")

    @property
    def dim(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    def order_of_coordinate(self, i: int) -> int:
        """0 for a free coordinate, the cyclic order otherwise."""
        return 0 if i < self.free_rank else self.torsion_orders[i - self.free_rank]

    def __repr__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{n}" for n in self.torsion_orders]
        return " + ".join(parts) or "0"

    def reduce(self, x: Iterable[int]) -> Element:
        x = tuple(x)
        if len(x) != self.dim:
            raise ShapeMismatchError(f"element {x} has length {len(x)}, group {self!r} needs {self.dim}")
        r = self.free_rank
        return x[:r] + tuple(v % n for v, n in zip(x[r:], self.torsion_orders))

    def element(self, x: Iterable[int]) -> Element:
        return self.reduce(x)

    def zero(self) -> Element:
        return (0,) * self.dim

    def add(self, x: Element, y: Element) -> Element:
        if len(x) != self.dim or len(y) != self.dim:
            raise ShapeMismatchError(f"cannot add {x} and {y} in {self!r}")
        return self.reduce(a + b for a, b in zip(x, y))

    def neg(self, x: Element) -> Element:
        return self.reduce(-a for a in x)

    def sub(self, x: Element, y: Element) -> Element:
        return self.add(x, self.neg(y))

    def scale(self, n: int, x: Element) -> Element:
        return self.reduce(n * a for a in x)

    def basis(self) -> list[Element]:
        return [tuple(int(i == j) for j in range(self.dim)) for i in range(self.dim)]

    def direct_sum(self, *others: FGAbelian) -> FGAbelian:
        """Direct sum, free summands first.

        Coordinates are reordered; :class:`DirectSum` keeps track of where
        each summand lands.
        """
        groups = (self,) + others
        return FGAbelian(
            sum(g.free_rank for g in groups),
            sum((g.torsion_orders for g in groups), ()),
        )

    def __contains__(self, x) -> bool:
        try:
            return self.reduce(x) == tuple(x)
        except (ShapeMismatchError, TypeError):
            return False


class DirectSum:
    """A direct sum of abelian groups with injections and projections."""

    def __init__(self, *summands: FGAbelian):
        self.summands = tuple(summands)
        self.group = summands[0].direct_sum(*summands[1:]) if summands else FGAbelian()
        free_off = 0
        tors_off = sum(g.free_rank for g in summands)
        self._index: list[list[int]] = []
        for g in summands:
            idx = list(range(free_off, free_off + g.free_rank))
            idx += list(range(tors_off, tors_off + len(g.torsion_orders)))
            free_off += g.free_rank
            tors_off += len(g.torsion_orders)
            self._index.append(idx)

    def join(self, *parts: Element) -> Element:
        if len(parts) != len(self.summands):
            raise ShapeMismatchError("wrong number of summands")
        out = [0] * self.group.dim
        for g, idx, x in zip(self.summands, self._index, parts):
            x = g.reduce(x)
            for i, v in zip(idx, x):
                out[i] = v
        return tuple(out)

    def split(self, x: Element) -> tuple[Element, ...]:
        x = self.group.reduce(x)
        return tuple(tuple(x[i] for i in idx) for idx in self._index)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by an integer matrix (rows index the target)."""

    source: FGAbelian
    target: FGAbelian
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.dim or any(len(row) != self.source.dim for row in m):
            raise ShapeMismatchError(
                f"matrix shape does not match {self.source!r} -> {self.target!r}"
            )
        # a torsion generator of order n must land on an element killed by n
        for j in range(self.source.free_rank, self.source.dim):
            n = self.source.order_of_coordinate(j)
            for i in range(self.target.dim):
                t = self.target.order_of_coordinate(i)
                v = n * m[i][j]
                if (t == 0 and v != 0) or (t and v % t):
                    raise InvalidActionError(
                        f"image of a generator of order {n} does not have order dividing {n}"
                    )

    @classmethod
    def identity(cls, group: FGAbelian) -> GroupHom:
        return cls(group, group, tuple(group.basis()))

    @classmethod
    def zero(cls, source: FGAbelian, target: FGAbelian) -> GroupHom:
        return cls(source, target, ((0,) * source.dim,) * target.dim)

    def __call__(self, x: Element) -> Element:
        return hom_apply(self, x)

    def compose(self, inner: GroupHom) -> GroupHom:
        """``self o inner``."""
        if inner.target != self.source:
            raise ShapeMismatchError("homomorphisms are not composable")
        cols = [self(inner(e)) for e in inner.source.basis()]
        rows = tuple(tuple(col[i] for col in cols) for i in range(self.target.dim))
        return GroupHom(inner.source, self.target, rows)

    def same_map(self, other: GroupHom) -> bool:
        if (self.source, self.target) != (other.source, other.target):
            return False
        return all(self(e) == other(e) for e in self.source.basis())


def add(group: FGAbelian, x: Element, y: Element) -> Element:
    return group.add(x, y)


def hom_apply(h: GroupHom, x: Element) -> Element:
    if len(x) != h.source.dim:
        raise ShapeMismatchError(f"element {tuple(x)} is not in {h.source!r}")
    x = h.source.reduce(x)
    return h.target.reduce(sum(r * v for r, v in zip(row, x)) for row in h.matrix)


class FiniteGroup:
    """A finite group presented by its multiplication table.

    ``table[i][j]`` is the label of ``labels[i] * labels[j]``.
    """

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[str]]):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels) or not self.labels:
            raise InvalidGroupError("group labels must be distinct and non-empty")
        pos = {g: i for i, g in enumerate(self.labels)}
        if len(table) != len(self.labels) or any(len(r) != len(self.labels) for r in table):
            raise InvalidGroupError("multiplication table must be square over the labels")
        try:
            self._mul = {
                (g, h): table[pos[g]][pos[h]] for g in self.labels for h in self.labels
            }
        except KeyError as exc:
            raise InvalidGroupError(f"unknown label {exc}") from None
        if any(v not in pos for v in self._mul.values()):
            raise InvalidGroupError("table entries must be group labels")
        ids = [e for e in self.labels if all(self._mul[e, g] == g == self._mul[g, e] for g in self.labels)]
        if not ids:
            raise InvalidGroupError("no identity element")
        self.identity = ids[0]
        for a, b, c in product(self.labels, repeat=3):
            if self._mul[self._mul[a, b], c] != self._mul[a, self._mul[b, c]]:
                raise InvalidGroupError(f"not associative at ({a}, {b}, {c})")
        self._inv = {}
        for g in self.labels:
            inv = [h for h in self.labels if self._mul[g, h] == self.identity]
            if not inv:
                raise InvalidGroupError(f"{g} has no inverse")
            self._inv[g] = inv[0]

    @classmethod
    def trivial(cls, label: str = "e") -> FiniteGroup:
        return cls([label], [[label]])

    @classmethod
    def cyclic(cls, n: int, prefix: str = "r") -> FiniteGroup:
        labels = ["e"] + [f"{prefix}{k}" for k in range(1, n)]
        return cls(labels, [[labels[(i + j) % n] for j in range(n)] for i in range(n)])

    def mul(self, g: str, h: str) -> str:
        try:
            return self._mul[g, h]
        except KeyError:
            raise InvalidGroupError(f"{g!r} or {h!r} is not a label of this group") from None

    def inv(self, g: str) -> str:
        return self._inv[g]

    def __contains__(self, g) -> bool:
        return g in self._inv

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and (self.labels, self._mul) == (other.labels, other._mul)

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"FiniteGroup({list(self.labels)})"


@dataclass(frozen=True)
class SemidirectElement:
    g: str
    a: Element


@dataclass(frozen=True, eq=False)
class SemidirectContext:
    """The group ``finite |x abelian`` with the pullback composition law."""

    finite: FiniteGroup
    abelian: FGAbelian
    action: Mapping[str, GroupHom] = field(default_factory=dict)

    def __post_init__(self):
        act = {}
        for g in self.finite.labels:
            h = self.action.get(g)
            if h is None:
                h = GroupHom.identity(self.abelian)
            if h.source != self.abelian or h.target != self.abelian:
                raise InvalidActionError(f"action of {g} is not an endomorphism of {self.abelian!r}")
            act[g] = h
        if set(self.action) - set(self.finite.labels):
            raise InvalidActionError("action given for labels outside the finite group")
        object.__setattr__(self, "action", act)
        if not act[self.finite.identity].same_map(GroupHom.identity(self.abelian)):
            raise InvalidActionError("identity must act trivially")
        for g in self.finite.labels:
            for h in self.finite.labels:
                gh = self.finite.mul(g, h)
                if not act[gh].same_map(act[h].compose(act[g])):
                    raise InvalidActionError(
                        f"act({g}*{h}) != act({h}) o act({g}); pullback actions reverse products"
                    )

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, SemidirectContext):
            return NotImplemented
        return (
            self.finite == other.finite
            and self.abelian == other.abelian
            and all(self.action[g].same_map(other.action[g]) for g in self.finite.labels)
        )

    def __hash__(self) -> int:
        return hash((self.finite, self.abelian))

    def element(self, g: str, a: Iterable[int]) -> SemidirectElement:
        if g not in self.finite:
            raise ShapeMismatchError(f"{g!r} is not in the finite group")
        return SemidirectElement(g, self.abelian.reduce(a))

    def identity(self) -> SemidirectElement:
        return SemidirectElement(self.finite.identity, self.abelian.zero())

    def compose(self, e1: SemidirectElement, e2: SemidirectElement) -> SemidirectElement:
        for e in (e1, e2):
            if e.g not in self.finite or len(e.a) != self.abelian.dim:
                raise ContextMismatchError(f"{e} does not belong to this context")
        return SemidirectElement(
            self.finite.mul(e1.g, e2.g),
            self.abelian.add(self.action[e2.g](e1.a), e2.a),
        )

    def inverse(self, e: SemidirectElement) -> SemidirectElement:
        gi = self.finite.inv(e.g)
        return SemidirectElement(gi, self.abelian.neg(self.action[gi](e.a)))


def semidirect_compose(ctx: SemidirectContext, e1: SemidirectElement, e2: SemidirectElement) -> SemidirectElement:
    return ctx.compose(e1, e2)


class FanoGroup(SemidirectContext):
    """``Aut(X/T) |x (Pic(X) + Z)``; the last coordinate is the shift."""

    pic: FGAbelian

    @classmethod
    def build(cls, aut: FiniteGroup, pic: FGAbelian, pic_action: Mapping[str, GroupHom]) -> FanoGroup:
        layout = DirectSum(pic, FGAbelian(1))
        total = layout.group
        action = {}
        for g, h in pic_action.items():
            if h.source != pic or h.target != pic:
                raise InvalidActionError(f"action of {g} is not an endomorphism of Pic")
            cols = [layout.join(h(x), s) for x, s in map(layout.split, total.basis())]
            action[g] = GroupHom(total, total, tuple(tuple(c[i] for c in cols) for i in range(total.dim)))
        ctx = cls(aut, total, action)
        object.__setattr__(ctx, "pic", pic)
        object.__setattr__(ctx, "_layout", layout)
        return ctx

    def transform(self, aut: str, pic: Iterable[int], shift: int) -> SemidirectElement:
        return self.element(aut, self._layout.join(tuple(pic), (shift,)))

    def parts(self, e: SemidirectElement) -> tuple[str, Element, int]:
        pic, (shift,) = self._layout.split(e.a)
        return e.g, pic, shift


def fano_group(aut: FiniteGroup, pic: FGAbelian, pic_action: Mapping[str, GroupHom] | None = None) -> FanoGroup:
    """Full relative Fourier-Mukai group of a Fano or anti-Fano fibration.

    Every element is a trivial transform f_*(- (x) L)[n]; the shift summand
    carries the trivial action.
    """
    return FanoGroup.build(aut, pic, pic_action or {})
