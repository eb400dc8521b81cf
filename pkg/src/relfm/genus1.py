"""Relative Fourier-Mukai transforms of a Weierstrass fibration.

The group FM_T(D(X)) sits in an extension

    1 -> Aut^0 -> FM_T(D(X)) --ch~--> SL(2, Z) -> 1,

where ch~ records the action on the (rank, degree) of a fibre and
Aut^0 = Aut(X/T) |x (2Z x Pic^0(X)) is the subgroup of trivial transforms
f_*(- (x) L)[n] with L of fibre degree 0 and n even.

Elements are modelled by :class:`FMWord`: a word in the elementary transforms
(kernel I_Delta, twist by O(sigma), and the odd shift [1]) together with a
trivial transform.  No cocycle for the extension is known, so two words are
considered equal when they have the same ch~ image and the same trivial
part.  This is coarser than equality in FM_T and the library never claims to
decide the latter.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from . import lattice
from .errors import (
    ContextMismatchError,
    InvalidActionError,
    InvalidContextError,
    NonZeroFibreDegreeError,
    NotSemistableClassError,
    OddShiftError,
    ShapeMismatchError,
    ZeroClassError,
)
from .groups import Element, FGAbelian, FiniteGroup, GroupHom, fano_group
from .lattice import IDENTITY, KClass, SL2Matrix


class ElementaryGen(enum.Enum):
    PHI_ONE = "PhiOne"
    PHI_ONE_INV = "PhiOneInv"
    PHI_TWO = "PhiTwo"
    PHI_TWO_INV = "PhiTwoInv"
    ODD_SHIFT = "OddShift"

    def __str__(self) -> str:
        return self.value


PhiOne = ElementaryGen.PHI_ONE
PhiOneInv = ElementaryGen.PHI_ONE_INV
PhiTwo = ElementaryGen.PHI_TWO
PhiTwoInv = ElementaryGen.PHI_TWO_INV
OddShift = ElementaryGen.ODD_SHIFT

# kernel I_Delta: O_C -> O_C[1] and O_x -> I_x, hence [[-1, 1], [0, -1]]
A = SL2Matrix(-1, 1, 0, -1)
# twist by O(x0) raises the degree by the rank
B = SL2Matrix(1, 0, 1, 1)
MINUS_I = SL2Matrix(-1, 0, 0, -1)

GENERATOR_MATRICES = {
    PhiOne: A,
    PhiOneInv: lattice.invert(A),
    PhiTwo: B,
    PhiTwoInv: lattice.invert(B),
    OddShift: MINUS_I,
}

_BASE = {PhiOne: (PhiOne, 1), PhiOneInv: (PhiOne, -1), PhiTwo: (PhiTwo, 1), PhiTwoInv: (PhiTwo, -1)}
_INV = {PhiOne: PhiOneInv, PhiTwo: PhiTwoInv}


def generator_matrix(gen: ElementaryGen) -> SL2Matrix:
    return GENERATOR_MATRICES[gen]


class WeierstrassContext:
    """Arithmetic data of a Weierstrass fibration X -> T.

    ``pullback[f]`` is f^* on Pic(X).  Pullbacks reverse products and must
    preserve the fibre degree.  ``base_coords`` lists the coordinates of
    Pic(X) spanned by p^* Pic(T); the rest form the relative part, and the
    retraction defined by the section splits Pic^0(X) along them.
    """

    def __init__(
        self,
        aut: FiniteGroup,
        pic: FGAbelian,
        pullback: Mapping[str, GroupHom],
        fibre_degree: GroupHom,
        base_coords: Iterable[int] = (),
    ):
        if fibre_degree.source != pic or fibre_degree.target != FGAbelian(1):
            raise InvalidContextError("fibre degree must be a homomorphism Pic(X) -> Z")
        self.base_coords = tuple(sorted(set(base_coords)))
        if any(not 0 <= i < pic.dim for i in self.base_coords):
            raise InvalidContextError("base summand coordinates out of range")
        basis = pic.basis()
        for i in self.base_coords:
            if fibre_degree(basis[i]) != (0,):
                raise InvalidContextError("line bundles pulled back from the base have fibre degree 0")
        self._pullback = {f: pullback.get(f) or GroupHom.identity(pic) for f in aut.labels}
        self.group = fano_group(aut, pic, self._pullback)
        for f, fstar in self._pullback.items():
            if any(fibre_degree(fstar(x)) != fibre_degree(x) for x in basis):
                raise InvalidActionError(f"pullback by {f} changes the fibre degree")
        self.aut = aut
        self.pic = pic
        self.fibre_degree = fibre_degree

    def pullback(self, f: str, x: Iterable[int]) -> Element:
        return self._pullback[f](tuple(x))

    def degree(self, x: Element) -> int:
        return self.fibre_degree(self.pic.reduce(x))[0]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, WeierstrassContext):
            return NotImplemented
        return (
            self.group == other.group
            and self.fibre_degree.same_map(other.fibre_degree)
            and self.base_coords == other.base_coords
        )

    def __hash__(self) -> int:
        return hash((self.pic, self.base_coords))

    def transform(self, aut: str | None = None, pic: Iterable[int] | None = None, shift: int = 0) -> TrivialTransform:
        return TrivialTransform(
            self,
            self.aut.identity if aut is None else aut,
            self.pic.zero() if pic is None else tuple(pic),
            shift,
        )

    def identity(self) -> TrivialTransform:
        return self.transform()

    def inverse(self, t: TrivialTransform) -> TrivialTransform:
        _check_context(self, t)
        g, pic, shift = self.group.parts(self.group.inverse(self.group.transform(t.aut, t.pic, t.shift)))
        return TrivialTransform(self, g, pic, shift)


def _trivial_context() -> WeierstrassContext:
    pic = FGAbelian(0)
    return WeierstrassContext(FiniteGroup.trivial(), pic, {}, GroupHom.zero(pic, FGAbelian(1)))


TRIVIAL_CONTEXT = _trivial_context()


@dataclass(frozen=True)
class TrivialTransform:
    """The autoequivalence f_*(- (x) L)[n] with deg(L_t) = 0 and n even."""

    context: WeierstrassContext = field(repr=False, compare=True)
    aut: str
    pic: Element
    shift: int

    def __post_init__(self):
        ctx = self.context
        if self.aut not in ctx.aut:
            raise ShapeMismatchError(f"{self.aut!r} is not a relative automorphism of this context")
        object.__setattr__(self, "pic", ctx.pic.reduce(self.pic))
        if self.shift % 2:
            raise OddShiftError(f"shift {self.shift} is odd; Aut^0 contains only even shifts")
        if ctx.degree(self.pic) != 0:
            raise NonZeroFibreDegreeError(
                f"line bundle {self.pic} has fibre degree {ctx.degree(self.pic)}"
            )

    def __mul__(self, other: TrivialTransform) -> TrivialTransform:
        return compose_trivial(self, other)


def _check_context(ctx: WeierstrassContext, *ts: TrivialTransform) -> None:
    for t in ts:
        if t.context is not ctx and t.context != ctx:
            raise ContextMismatchError("trivial transforms come from different fibration contexts")


def compose_trivial(t1: TrivialTransform, t2: TrivialTransform) -> TrivialTransform:
    """``t1 o t2`` = (f1 f2, f2^* L1 + L2, n1 + n2)."""
    ctx = t1.context
    _check_context(ctx, t2)
    g = ctx.group
    e = g.compose(g.transform(t1.aut, t1.pic, t1.shift), g.transform(t2.aut, t2.pic, t2.shift))
    return TrivialTransform(ctx, *g.parts(e))


def pic0_split(ctx: WeierstrassContext, x: Iterable[int]) -> tuple[Element, Element]:
    """Split a fibre-degree-0 line bundle into (relative part, base part)."""
    x = ctx.pic.reduce(x)
    deg = ctx.degree(x)
    if deg != 0:
        raise NonZeroFibreDegreeError(f"{x} has fibre degree {deg}")
    base = tuple(v if i in ctx.base_coords else 0 for i, v in enumerate(x))
    fibre = tuple(0 if i in ctx.base_coords else v for i, v in enumerate(x))
    return fibre, base


Syllable = tuple[ElementaryGen, int]


def _normalize(signed: Iterable[tuple[ElementaryGen, int]]) -> tuple[Syllable, ...]:
    """Merge runs of the same generator, given as (base, signed exponent)."""
    out: list[list] = []
    for base, k in signed:
        if out and out[-1][0] is base:
            out[-1][1] += k
            if out[-1][1] == 0:
                out.pop()
        elif k:
            out.append([base, k])
    result = []
    for base, k in out:
        if base is OddShift:
            result.append((OddShift, k))
        else:
            result.append((base, k) if k > 0 else (_INV[base], -k))
    return tuple(result)


def _signed(syllables: Iterable[Syllable]) -> Iterator[tuple[ElementaryGen, int]]:
    for gen, n in syllables:
        if gen is OddShift:
            yield OddShift, n
        else:
            base, s = _BASE[gen]
            yield base, s * n


@dataclass(frozen=True, eq=False)
class FMWord:
    """A formal product of elementary transforms and a trivial transform.

    ``syllables`` is a run-length encoded word: ``(PhiTwo, 5)`` stands for
    five consecutive PhiTwo letters.
    """

    syllables: tuple[Syllable, ...] = ()
    trivial: TrivialTransform | None = None

    def __post_init__(self):
        object.__setattr__(self, "syllables", _normalize(_signed(self.syllables)))
        if self.trivial is None:
            object.__setattr__(self, "trivial", TRIVIAL_CONTEXT.identity())

    @classmethod
    def from_letters(cls, letters: Iterable[ElementaryGen], trivial: TrivialTransform | None = None) -> FMWord:
        return cls(tuple((g, 1) for g in letters), trivial)

    def letters(self) -> Iterator[ElementaryGen]:
        for gen, n in self.syllables:
            for _ in range(n):
                yield gen

    @property
    def length(self) -> int:
        """Number of letters."""
        return sum(n for _, n in self.syllables)

    @property
    def syllable_count(self) -> int:
        return len(self.syllables)

    @property
    def shift_parity(self) -> int:
        return sum(n for g, n in self.syllables if g is OddShift) % 2

    def __mul__(self, other: FMWord) -> FMWord:
        return FMWord(self.syllables + other.syllables, compose_trivial(self.trivial, other.trivial))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FMWord):
            return NotImplemented
        return ch_tilde(self) == ch_tilde(other) and self.trivial == other.trivial

    def __hash__(self) -> int:
        return hash(ch_tilde(self))

    def __str__(self) -> str:
        return " ".join(g.value if n == 1 else f"{g.value}^{n}" for g, n in self.syllables) or "1"


def ch_tilde(w: FMWord) -> SL2Matrix:
    """Action on fibre (rank, degree); the trivial part acts as the identity."""
    result = IDENTITY
    for gen, n in w.syllables:
        result = lattice.multiply(result, lattice.power(GENERATOR_MATRICES[gen], n))
    return result


def _fix_sign(word: list[tuple[ElementaryGen, int]]) -> bool:
    # A^k B A^l = -A^(k-1) B A B A^(l-1) (since ABA = -BAB), same for inverses
    for i in range(len(word) - 2):
        (g1, k), (g2, j), (g3, l) = word[i:i + 3]
        if g1 is PhiOne and g2 is PhiTwo and g3 is PhiOne and abs(j) == 1:
            s = j
            if k * s > 0 and l * s > 0:
                word[i:i + 3] = [(PhiOne, k - s), (PhiTwo, s), (PhiOne, s), (PhiTwo, s), (PhiOne, l - s)]
                return True
    return False


def factor_sl2(m: SL2Matrix, trivial: TrivialTransform | None = None) -> FMWord:
    """Factor ``m`` into the elementary transforms PhiOne, PhiTwo.

    Lower transvections are powers of B; upper ones come from
    ``[[1, k], [0, 1]] = (-1)^k A^(-k)``.  A leftover sign -I is absorbed by
    rewriting a pattern ``A B A`` as ``B A B`` when one is present, and
    otherwise by one OddShift.  The word has O(log max|entry|) syllables.
    """
    ops, sign = lattice.transvection_decomposition(m)
    word: list[tuple[ElementaryGen, int]] = []
    for kind, k in ops:
        if kind == "L":
            word.append((PhiTwo, k))
        else:
            word.append((PhiOne, -k))
            if k % 2:
                sign = -sign
    if sign < 0 and _fix_sign(word):
        sign = 1
    if sign < 0:
        word.append((OddShift, 1))
    return FMWord(_normalize(word), trivial)


def wit_index(m: SL2Matrix, v: KClass) -> tuple[int, KClass]:
    """WIT index and (rank, degree) of the transform of a semistable sheaf.

    ``m`` is the ch~ matrix of a transform with a sheaf kernel.  The image
    class either satisfies the semistable sign convention (index 0) or its
    negative does (index 1).
    """
    if v.is_zero():
        raise ZeroClassError("the zero class is not the class of a semistable sheaf")
    if not v.is_positive():
        raise NotSemistableClassError(f"{tuple(v)} violates rank > 0, or rank = 0 and degree > 0")
    w = lattice.apply(m, v)
    if w.is_positive():
        return 0, w
    return 1, -w
