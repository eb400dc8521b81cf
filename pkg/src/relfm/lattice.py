"""Reduced K-lattice of a genus-one fibre and the SL(2, Z) action on it.

A class in the reduced Grothendieck group is recorded by its (rank, degree)
pair.  The Euler form is the symplectic pairing

    e((r1, d1), (r2, d2)) = r1*d2 - r2*d1,

which is what Riemann-Roch gives on a curve of arithmetic genus one (the
canonical sheaf is trivial, so chi(E, F) = rk E deg F - rk F deg E).  The
oracle module recomputes the same numbers from cohomology dimensions.

All arithmetic uses Python integers, so entries are unbounded.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DeterminantError, OrientationReversingError

__all__ = [
    "KClass",
    "SL2Matrix",
    "IDENTITY",
    "euler_form",
    "apply",
    "multiply",
    "invert",
    "power",
    "transvection_decomposition",
]


@dataclass(frozen=True)
class KClass:
    rank: int
    degree: int

    def __add__(self, other: KClass) -> KClass:
        return KClass(self.rank + other.rank, self.degree + other.degree)

    def __sub__(self, other: KClass) -> KClass:
        return KClass(self.rank - other.rank, self.degree - other.degree)

    def __neg__(self) -> KClass:
        return KClass(-self.rank, -self.degree)

    def __mul__(self, n: int) -> KClass:
        return KClass(n * self.rank, n * self.degree)

    __rmul__ = __mul__

    def __iter__(self) -> Iterator[int]:
        yield self.rank
        yield self.degree

    def is_zero(self) -> bool:
        return self.rank == 0 and self.degree == 0

    def is_positive(self) -> bool:
        """Sign convention satisfied by classes of nonzero semistable sheaves."""
        return self.rank > 0 or (self.rank == 0 and self.degree > 0)


class SL2Matrix:
    """Integer 2x2 matrix ``[[a, b], [c, d]]`` with ``a*d - b*c == 1``.

    Construction checks the determinant.  A det = -1 matrix raises the
    dedicated :class:`OrientationReversingError`.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int):
        det = a * d - b * c
        if det != 1:
            cls = OrientationReversingError if det == -1 else DeterminantError
            raise cls(f"matrix [[{a}, {b}], [{c}, {d}]] has determinant {det}, not 1")
        self._set(a, b, c, d)

    def _set(self, a, b, c, d):
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def _trusted(cls, a: int, b: int, c: int, d: int) -> SL2Matrix:
        # products and inverses of SL2 matrices; skips the determinant check
        m = object.__new__(cls)
        m._set(a, b, c, d)
        return m

    @classmethod
    def from_rows(cls, rows) -> SL2Matrix:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def __setattr__(self, name, value):
        raise AttributeError("SL2Matrix is immutable")

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def max_abs_entry(self) -> int:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SL2Matrix):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash(self.entries())

    def __repr__(self) -> str:
        return f"SL2Matrix([[{self.a}, {self.b}], [{self.c}, {self.d}]])"

    def __matmul__(self, other: SL2Matrix) -> SL2Matrix:
        return multiply(self, other)

    def __neg__(self) -> SL2Matrix:
        return SL2Matrix._trusted(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, n: int) -> SL2Matrix:
        return power(self, n)


IDENTITY = SL2Matrix(1, 0, 0, 1)


def euler_form(x: KClass, y: KClass) -> int:
    return x.rank * y.degree - y.rank * x.degree


def apply(m: SL2Matrix, v: KClass) -> KClass:
    """Act on the (rank, degree) column vector."""
    return KClass(m.a * v.rank + m.b * v.degree, m.c * v.rank + m.d * v.degree)


def multiply(m1: SL2Matrix, m2: SL2Matrix) -> SL2Matrix:
    return SL2Matrix._trusted(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )


def invert(m: SL2Matrix) -> SL2Matrix:
    return SL2Matrix._trusted(m.d, -m.b, -m.c, m.a)


def power(m: SL2Matrix, n: int) -> SL2Matrix:
    """``m**n`` by repeated squaring; negative ``n`` uses the inverse."""
    if n < 0:
        m, n = invert(m), -n
    result = IDENTITY
    while n:
        if n & 1:
            result = multiply(result, m)
        n >>= 1
        if n:
            m = multiply(m, m)
    return result


def transvection_decomposition(m: SL2Matrix) -> tuple[list[tuple[str, int]], int]:
    """Write ``m = T_1 ... T_n * (e I)`` with elementary transvections.

    Each factor is ``("L", k)`` for ``[[1, 0], [k, 1]]`` or ``("U", k)`` for
    ``[[1, k], [0, 1]]``; ``e`` is +1 or -1.  The first column is reduced
    by the Euclidean algorithm with truncated quotients, so ``n`` is
    O(log max|entry|).
    """
    a, b, c, d = m.entries()
    ops: list[tuple[str, int]] = []

    def push(kind: str, k: int) -> None:
        if ops and ops[-1][0] == kind:
            k += ops.pop()[1]
        if k:
            ops.append((kind, k))

    while a and c:
        if abs(a) >= abs(c):
            q = abs(a) // abs(c) * (1 if (a > 0) == (c > 0) else -1)
            a, b = a - q * c, b - q * d
            push("U", q)
        else:
            q = abs(c) // abs(a) * (1 if (a > 0) == (c > 0) else -1)
            c, d = c - q * a, d - q * b
            push("L", q)
    if a == 0:
        # det = 1 forces c = +-1; move the column to (-1, c), then clear c
        k = -c
        a, b = a + k * c, b + k * d
        push("U", -k)
        j = c
        c, d = c + j * a, d + j * b
        push("L", -j)
    # now c = 0 and a = d = e = +-1
    e = a
    push("U", b * e)
    return ops, e
