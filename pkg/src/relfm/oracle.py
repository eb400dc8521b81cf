"""Brute-force verifiers used to cross-check the main modules.

Nothing here calls :func:`relfm.lattice.euler_form` or any factorizer.  The
Euler characteristics are computed from cohomology dimensions on a curve of
arithmetic genus one, and factorizations by exhaustive breadth-first search.
"""
from __future__ import annotations

from collections import deque
from typing import Optional, Sequence

MAX_BFS_LEN = 12

# A letter is (generator index, +1 or -1); a word is a tuple of letters.
Letter = tuple[int, int]
Word = tuple[Letter, ...]
_Mat = tuple[int, int, int, int]


def _line_bundle_cohomology(deg: int, trivial: bool = True) -> tuple[int, int]:
    """(h^0, h^1) of a line bundle of degree ``deg`` on a genus-one curve.

    In degree 0 the answer depends on whether the bundle is trivial; chi is
    0 in both cases.
    """
    if deg > 0:
        return deg, 0
    if deg < 0:
        return 0, -deg
    return (1, 1) if trivial else (0, 0)


def line_bundle_chi(d1: int, d2: int) -> int:
    """chi(L1, L2) for line bundles of degrees d1, d2.

    Ext^i(L1, L2) = H^i(L1^* (x) L2), a line bundle of degree d2 - d1.
    """
    h0, h1 = _line_bundle_cohomology(d2 - d1)
    return h0 - h1


def skyscraper_chi() -> int:
    """chi(O_C, O_x) for a smooth point x.

    Hom(O_C, O_x) = H^0(O_x) is one-dimensional and H^1 of a skyscraper
    vanishes.
    """
    hom = 1
    ext1 = 0
    return hom - ext1


def skyscraper_chi_reversed() -> int:
    """chi(O_x, O_C), via Serre duality with trivial dualizing sheaf."""
    return -skyscraper_chi()


def _mul(p: _Mat, q: _Mat) -> _Mat:
    a, b, c, d = p
    e, f, g, h = q
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _inv(p: _Mat) -> _Mat:
    a, b, c, d = p
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError("generator is not invertible over Z")
    return (d * det, -b * det, -c * det, a * det)


def _as_tuple(m) -> _Mat:
    if hasattr(m, "entries"):
        return tuple(m.entries())
    return tuple(m)


def _alphabet(generators: Sequence) -> list[tuple[Letter, _Mat]]:
    out = []
    for i, g in enumerate(generators):
        t = _as_tuple(g)
        out.append(((i, 1), t))
        out.append(((i, -1), _inv(t)))
    return out


def word_product(word: Word, generators: Sequence) -> _Mat:
    """Multiply out a word, left to right."""
    alphabet = dict(_alphabet(generators))
    result = (1, 0, 0, 1)
    for letter in word:
        result = _mul(result, alphabet[letter])
    return result


def ball(generators: Sequence, radius: int) -> dict[_Mat, Word]:
    """Every matrix reachable by a word of length <= radius.

    Maps each matrix to its minimal word, lexicographically first under the
    letter order g0, g0^-1, g1, g1^-1, ...
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if radius > MAX_BFS_LEN:
        raise ValueError(f"radius is capped at {MAX_BFS_LEN}")
    alphabet = _alphabet(generators)
    identity = (1, 0, 0, 1)
    seen: dict[_Mat, Word] = {identity: ()}
    frontier = [identity]
    for _ in range(radius):
        nxt = []
        for mat in frontier:
            word = seen[mat]
            for letter, g in alphabet:
                prod = _mul(mat, g)
                if prod not in seen:
                    seen[prod] = word + (letter,)
                    nxt.append(prod)
        frontier = nxt
    return seen


def bfs_factor(m, generators: Sequence, max_len: int) -> Optional[Word]:
    """Shortest word in the generators and their inverses whose product is ``m``.

    Returns ``None`` when no word of length <= max_len exists.  Ties are broken
    by lexicographic word order (see :func:`ball`).
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    if max_len > MAX_BFS_LEN:
        raise ValueError(f"max_len is capped at {MAX_BFS_LEN}")
    target = _as_tuple(m)
    alphabet = _alphabet(generators)
    identity = (1, 0, 0, 1)
    if target == identity:
        return ()
    seen = {identity}
    queue = deque([(identity, ())])
    while queue:
        mat, word = queue.popleft()
        if len(word) == max_len:
            continue
        for letter, g in alphabet:
            prod = _mul(mat, g)
            if prod in seen:
                continue
            w = word + (letter,)
            if prod == target:
                return w
            seen.add(prod)
            queue.append((prod, w))
    return None


def syllable_product(syllables: Sequence[tuple[object, int]]) -> _Mat:
    """Multiply ``g1^k1 g2^k2 ...`` for 2x2 integer matrices ``g`` (any object
    with ``entries()`` or a 4-tuple) and signed exponents.

    Used for remultiplication certificates, so it shares no code with the
    library's matrix type.
    """
    result = (1, 0, 0, 1)
    for g, k in syllables:
        base = _as_tuple(g)
        if k < 0:
            base, k = _inv(base), -k
        acc = (1, 0, 0, 1)
        while k:
            if k & 1:
                acc = _mul(acc, base)
            base = _mul(base, base)
            k >>= 1
        result = _mul(result, acc)
    return result
