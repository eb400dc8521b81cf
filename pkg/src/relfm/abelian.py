"""Isometry calculus for abelian schemes.

An isomorphism f: X x_T X^ -> Y x_T Y^ is a 2x2 matrix [[alpha, beta],
[gamma, delta]] of morphisms.  Its dagger is [[d^, -b^], [-c^, a^]], where
^ is the dual-morphism involution, and f is isometric when f^dagger is the
inverse of f.  Relative Fourier-Mukai partners always admit such an
isometric isomorphism; this module only provides that necessary test and
says nothing about sufficiency outside the surjective-slope setting.

Endomorphism data is supplied, not computed from geometry:

* ``EndContext.integer_pp()``: End_T(X) = Z with a principal polarization.
  Entries are integers read through the polarization, the involution is the
  identity, and U(X x_T X^) is SL(2, Z).
* ``EndContext.represented_ring(...)``: entries are n x n integer matrices
  and the involution is ``M -> P M^T P^-1`` for a unimodular ``P``.

:func:`xi` returns the rational symmetric matrix a semihomogeneous kernel
would need as its slope.  Whether such a bundle exists depends on the slope
map being surjective, which is not checked here.  Abelian schemes over a
normal base have finitely many relative Fourier-Mukai partners, but no
enumeration is offered.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

import sympy

from .errors import (
    ContextMismatchError,
    InvalidContextError,
    NotInU0Error,
    NotIsometricError,
    ShapeMismatchError,
    WrongModeError,
)
from .groups import DirectSum, Element, FGAbelian, FiniteGroup, SemidirectContext
from .lattice import SL2Matrix, transvection_decomposition


class EndMode(enum.Enum):
    INTEGER_PP = "integer_pp"
    REPRESENTED_RING = "represented_ring"


class EndContext:
    def __init__(self, mode: EndMode, dimension: int = 1,
                 generators: Mapping[str, Any] | None = None, involution: Any = None):
        self.mode = EndMode(mode)
        self.dimension = dimension
        self.generators: dict[str, sympy.ImmutableMatrix] = {}
        if self.mode is EndMode.INTEGER_PP:
            return
        n = dimension
        if n < 1:
            raise InvalidContextError("dimension must be positive")
        P = self._integer_matrix(involution if involution is not None else sympy.eye(n))
        if P.det() not in (1, -1):
            raise InvalidContextError("involution matrix must be unimodular")
        self._P, self._Pinv = P, P.inv()
        for name, g in (generators or {}).items():
            self.generators[name] = self._integer_matrix(g)
        for name, g in self.generators.items():
            if self.hat(self.hat(g)) != g:
                raise InvalidContextError(f"involution does not square to the identity on {name}")
            for other in self.generators.values():
                if self.hat(g * other) != self.hat(other) * self.hat(g):
                    raise InvalidContextError("involution must reverse products")

    @classmethod
    def integer_pp(cls) -> EndContext:
        return cls(EndMode.INTEGER_PP)

    @classmethod
    def represented_ring(cls, dimension: int, generators: Mapping[str, Any], involution: Any = None) -> EndContext:
        return cls(EndMode.REPRESENTED_RING, dimension, generators, involution)

    def _integer_matrix(self, rows) -> sympy.ImmutableMatrix:
        m = sympy.ImmutableMatrix(rows)
        if m.shape != (self.dimension, self.dimension):
            raise ShapeMismatchError(f"expected a {self.dimension}x{self.dimension} matrix, got {m.shape}")
        if not all(v.is_integer for v in m):
            raise ShapeMismatchError("ring elements must have integer entries")
        return m

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndContext):
            return NotImplemented
        if self.mode != other.mode:
            return False
        if self.mode is EndMode.INTEGER_PP:
            return True
        return (self.dimension, self._P, self.generators) == (other.dimension, other._P, other.generators)

    def __hash__(self) -> int:
        return hash((self.mode, self.dimension))

    @property
    def is_pp(self) -> bool:
        return self.mode is EndMode.INTEGER_PP

    # ring arithmetic; entries are ints or ImmutableMatrix depending on mode

    def coerce(self, x):
        if self.is_pp:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ShapeMismatchError(f"entry {x!r} is not an integer")
            return x
        if isinstance(x, int):
            return x * self.one()
        return self._integer_matrix(x)

    def zero(self):
        return 0 if self.is_pp else sympy.zeros(self.dimension).as_immutable()

    def one(self):
        return 1 if self.is_pp else sympy.eye(self.dimension).as_immutable()

    def hat(self, x):
        if self.is_pp:
            return x
        return (self._P * x.T * self._Pinv).as_immutable()

    def is_isogeny(self, x) -> bool:
        if self.is_pp:
            return x != 0
        return x.det() != 0

    def inverse_q(self, x):
        """Inverse in End (x) Q."""
        if self.is_pp:
            return Fraction(1, x)
        return x.inv().as_immutable()

    def to_q(self, x):
        return Fraction(x) if self.is_pp else x


@dataclass(frozen=True)
class IsomMatrix:
    alpha: Any
    beta: Any
    gamma: Any
    delta: Any
    context: EndContext = field(default_factory=EndContext.integer_pp, repr=False)

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, self.context.coerce(getattr(self, name)))

    @classmethod
    def identity(cls, context: EndContext | None = None) -> IsomMatrix:
        ctx = context or EndContext.integer_pp()
        return cls(ctx.one(), ctx.zero(), ctx.zero(), ctx.one(), ctx)

    @classmethod
    def from_rows(cls, rows, context: EndContext | None = None) -> IsomMatrix:
        (a, b), (c, d) = rows
        return cls(a, b, c, d, context or EndContext.integer_pp())

    def entries(self) -> tuple:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def __matmul__(self, other: IsomMatrix) -> IsomMatrix:
        """Composition ``self o other``."""
        if other.context != self.context:
            raise ContextMismatchError("matrices use different endomorphism contexts")
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return IsomMatrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.context)

    def is_identity(self) -> bool:
        ctx = self.context
        return self.entries() == (ctx.one(), ctx.zero(), ctx.zero(), ctx.one())

    def det(self) -> int:
        if not self.context.is_pp:
            raise WrongModeError("determinant is only defined for integer entries")
        return self.alpha * self.delta - self.beta * self.gamma


def dagger(f: IsomMatrix) -> IsomMatrix:
    hat = f.context.hat
    return IsomMatrix(hat(f.delta), -hat(f.beta), -hat(f.gamma), hat(f.alpha), f.context)


def is_isometric(f: IsomMatrix) -> bool:
    fd = dagger(f)
    return (fd @ f).is_identity() and (f @ fd).is_identity()


def u_iso_pp(f: IsomMatrix) -> SL2Matrix:
    """Read an isometric f through the principal polarization."""
    if not f.context.is_pp:
        raise WrongModeError("U = SL(2, Z) needs End = Z with a principal polarization")
    if not is_isometric(f):
        raise NotIsometricError(f"{f} is not isometric")
    return SL2Matrix(*f.entries())


# (lambda^-1)_* o Phi^P and L (x) -, read through lambda
P = SL2Matrix(0, -1, 1, 0)
Q = SL2Matrix(1, 0, 1, 1)
PP_GENERATORS = {"P": P, "Q": Q}


def factor_u_pp(m: SL2Matrix) -> tuple[tuple[str, int], ...]:
    """Word in P and Q as ``(name, signed exponent)`` syllables.

    Upper transvections are ``[[1, k], [0, 1]] = P^-1 Q^-k P`` and -I is P^2.
    """
    ops, sign = transvection_decomposition(m)
    word: list[list] = []

    def push(name: str, k: int) -> None:
        if word and word[-1][0] == name:
            word[-1][1] += k
            if word[-1][1] == 0:
                word.pop()
        elif k:
            word.append([name, k])

    for kind, k in ops:
        if kind == "L":
            push("Q", k)
        else:
            push("P", -1)
            push("Q", -k)
            push("P", 1)
    if sign < 0:
        push("P", 2)
    return tuple((name, k) for name, k in word)


def pp_word_product(word: Iterable[tuple[str, int]]) -> SL2Matrix:
    result = SL2Matrix(1, 0, 0, 1)
    for name, k in word:
        result = result @ PP_GENERATORS[name] ** k
    return result


def in_u0(f: IsomMatrix) -> bool:
    return f.context.is_isogeny(f.beta)


def xi(f: IsomMatrix) -> tuple[tuple[Any, Any], tuple[Any, Any]]:
    """Slope datum [[b^-1 a, -b^-1], [-(b^)^-1, d b^-1]] over End (x) Q."""
    ctx = f.context
    if not in_u0(f):
        raise NotInU0Error("beta is not an isogeny")
    binv = ctx.inverse_q(f.beta)
    bhat_inv = ctx.inverse_q(ctx.hat(f.beta))
    result = (
        (binv * ctx.to_q(f.alpha), -binv),
        (-bhat_inv, ctx.to_q(f.delta) * binv),
    )
    if is_isometric(f) and not is_symmetric(ctx, result):
        raise AssertionError(f"xi({f}) is not symmetric although f is isometric")
    return result


def is_symmetric(ctx: EndContext, m) -> bool:
    """Symmetric under the involution extended to Q, i.e. equal to its dual."""
    (a, b), (c, d) = m
    return ctx.hat(a) == a and ctx.hat(d) == d and ctx.hat(b) == c


def _h(ctx: EndContext, n: int) -> IsomMatrix:
    # [[n, -1], [1, 0]] is isometric for every integer n
    return IsomMatrix(n * ctx.one(), -ctx.one(), ctx.one(), ctx.zero(), ctx)


def _h_inv(ctx: EndContext, n: int) -> IsomMatrix:
    return IsomMatrix(ctx.zero(), ctx.one(), -ctx.one(), n * ctx.one(), ctx)


def factor_u0(f: IsomMatrix) -> tuple[IsomMatrix, IsomMatrix]:
    """Write an isometric f as g o h with g, h in U_0.

    h = [[n, -1], [1, 0]] and g = f h^-1, whose beta entry is alpha + n beta.
    n = 0 (h = J) when alpha is an isogeny, otherwise n = 1 (h = K); in the
    represented-ring mode further n are tried in the order 1, -1, 2, -2, ...
    """
    if not is_isometric(f):
        raise NotIsometricError(f"{f} is not isometric")
    ctx = f.context
    # det(alpha + n beta) is a polynomial of degree <= dim in n
    candidates = [0]
    for k in range(1, ctx.dimension + 2):
        candidates += [k, -k]
    for n in candidates:
        if ctx.is_isogeny(f.alpha + n * f.beta):
            h = _h(ctx, n)
            g = f @ _h_inv(ctx, n)
            return g, h
    raise NotInU0Error("alpha + n beta is never an isogeny; f cannot be split through U_0")


class AbelianTrivialContext:
    """Kernel of gamma_X: Z + (X(T) x X^(T) x Pic(T)) with the direct product law."""

    def __init__(self, sections: FGAbelian, dual_sections: FGAbelian, pic_base: FGAbelian):
        self.sections = sections
        self.dual_sections = dual_sections
        self.pic_base = pic_base
        self._layout = DirectSum(FGAbelian(1), sections, dual_sections, pic_base)
        self.group = SemidirectContext(FiniteGroup.trivial(), self._layout.group)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AbelianTrivialContext):
            return NotImplemented
        return (self.sections, self.dual_sections, self.pic_base) == (
            other.sections, other.dual_sections, other.pic_base)

    def __hash__(self) -> int:
        return hash((self.sections, self.dual_sections, self.pic_base))

    def element(self, n: int = 0, x: Sequence[int] | None = None,
                L: Sequence[int] | None = None, M: Sequence[int] | None = None) -> AbelianTrivial:
        return AbelianTrivial(
            self, n,
            self.sections.zero() if x is None else tuple(x),
            self.dual_sections.zero() if L is None else tuple(L),
            self.pic_base.zero() if M is None else tuple(M),
        )

    def identity(self) -> AbelianTrivial:
        return self.element()

    def inverse(self, t: AbelianTrivial) -> AbelianTrivial:
        return self._from_group(self.group.inverse(self._to_group(t)))

    def _to_group(self, t: AbelianTrivial):
        return self.group.element(self.group.finite.identity, self._layout.join((t.n,), t.x, t.L, t.M))

    def _from_group(self, e) -> AbelianTrivial:
        (n,), x, L, M = self._layout.split(e.a)
        return AbelianTrivial(self, n, x, L, M)


@dataclass(frozen=True)
class AbelianTrivial:
    """The transform E -> T_x*(E) (x) L (x) p^*M [n]."""

    context: AbelianTrivialContext = field(repr=False)
    n: int
    x: Element
    L: Element
    M: Element

    def __post_init__(self):
        ctx = self.context
        object.__setattr__(self, "x", ctx.sections.reduce(self.x))
        object.__setattr__(self, "L", ctx.dual_sections.reduce(self.L))
        object.__setattr__(self, "M", ctx.pic_base.reduce(self.M))

    def __mul__(self, other: AbelianTrivial) -> AbelianTrivial:
        return compose_abelian_trivial(self, other)


def compose_abelian_trivial(t1: AbelianTrivial, t2: AbelianTrivial) -> AbelianTrivial:
    ctx = t1.context
    if t2.context is not ctx and t2.context != ctx:
        raise ContextMismatchError("abelian trivial transforms come from different contexts")
    return ctx._from_group(ctx.group.compose(ctx._to_group(t1), ctx._to_group(t2)))
