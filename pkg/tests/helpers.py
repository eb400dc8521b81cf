"""Random generators shared by the test modules."""
from __future__ import annotations

import random
from math import gcd

from relfm.lattice import SL2Matrix


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def _t_window(base: int, step: int, bound: int) -> tuple[int, int] | None:
    """Integers t with |base + t*step| <= bound (None means unconstrained)."""
    if step == 0:
        return None if abs(base) <= bound else (1, 0)
    lo, hi = -bound - base, bound - base
    if step < 0:
        step, lo, hi = -step, -hi, -lo
    return _ceil_div(lo, step), hi // step


def random_sl2(rng: random.Random, bound: int) -> SL2Matrix:
    """A random SL(2, Z) matrix with every entry in [-bound, bound]."""
    while True:
        a = rng.randint(-bound, bound)
        c = rng.randint(-bound, bound)
        if gcd(a, c) != 1:
            continue
        if c == 0:
            return SL2Matrix(a, rng.randint(-bound, bound), 0, a)
        if abs(c) == 1:
            x, y = 0, c
        else:
            x = pow(a, -1, abs(c))
            y = (1 - a * x) // c
        # d = x + t c, b = -y + t a
        lo, hi = -10**30, 10**30
        for w in (_t_window(x, c, bound), _t_window(-y, a, bound)):
            if w is not None:
                lo, hi = max(lo, w[0]), min(hi, w[1])
        if lo > hi:
            continue
        t = rng.randint(lo, hi) if hi - lo < 10**29 else 0
        m = SL2Matrix(a, -y + t * a, c, x + t * c)
        if m.max_abs_entry() <= bound:
            return m


def random_word_matrix(rng: random.Random, length: int) -> SL2Matrix:
    from relfm.genus1 import A, B
    m = SL2Matrix(1, 0, 0, 1)
    for _ in range(length):
        m = m @ rng.choice([A, B, A ** -1, B ** -1])
    return m


# contexts


def s3_group():
    from itertools import permutations

    from relfm.groups import FiniteGroup

    perms = list(permutations(range(3)))
    label = {p: "".join(map(str, p)) for p in perms}
    # (s t)(i) = s(t(i))
    table = [[label[tuple(s[t[i]] for i in range(3))] for t in perms] for s in perms]
    return FiniteGroup([label[p] for p in perms], table), {label[p]: p for p in perms}


def permutation_pullbacks(group, perms, pic, coords):
    """f^* on ``pic`` permuting ``coords`` by the inverse permutation."""
    from relfm.groups import GroupHom

    out = {}
    for g, p in perms.items():
        rows = [list(r) for r in pic.basis()]
        for i in coords:
            rows[i] = [0] * pic.dim
        for k, i in enumerate(coords):
            # P_p^T: e_{p(k)} -> e_k
            rows[coords[k]][coords[p[k]]] = 1
        out[g] = GroupHom(pic, pic, rows)
    return out


def swap_context():
    """Pic = Z^2 of fibre degree 0, Aut = Z/2 swapping the two generators."""
    from relfm.genus1 import WeierstrassContext
    from relfm.groups import FGAbelian, FiniteGroup, GroupHom

    pic = FGAbelian(2)
    aut = FiniteGroup(["e", "s"], [["e", "s"], ["s", "e"]])
    swap = GroupHom(pic, pic, [[0, 1], [1, 0]])
    return WeierstrassContext(aut, pic, {"s": swap}, GroupHom(pic, FGAbelian(1), [[0, 0]]))


def split_context():
    """Pic = Z_fib + Z_sigma + Z_base with trivial automorphisms."""
    from relfm.genus1 import WeierstrassContext
    from relfm.groups import FGAbelian, FiniteGroup, GroupHom

    pic = FGAbelian(3)
    return WeierstrassContext(FiniteGroup.trivial(), pic, {},
                              GroupHom(pic, FGAbelian(1), [[0, 1, 0]]), base_coords=[2])


def s3_context():
    """S3 permuting three degree-0 classes; section, base and Z/2 summands fixed.

    Pic = Z^5 + Z/2, coordinates: 0-2 permuted, 3 the section (fibre degree
    1), 4 pulled back from the base, 5 torsion.
    """
    from relfm.genus1 import WeierstrassContext
    from relfm.groups import FGAbelian, GroupHom

    aut, perms = s3_group()
    pic = FGAbelian(5, (2,))
    pull = permutation_pullbacks(aut, perms, pic, [0, 1, 2])
    deg = GroupHom(pic, FGAbelian(1), [[0, 0, 0, 1, 0, 0]])
    return WeierstrassContext(aut, pic, pull, deg, base_coords=[4])


def random_pic0(rng, ctx, bound=20):
    """Random fibre-degree-0 element of ``ctx.pic``."""
    while True:
        x = tuple(rng.randint(-bound, bound) for _ in range(ctx.pic.dim))
        x = ctx.pic.reduce(x)
        if ctx.degree(x) == 0:
            return x
        # project out the degree using any coordinate of degree +-1
        for i, e in enumerate(ctx.pic.basis()):
            if abs(ctx.degree(e)) == 1:
                x = list(x)
                x[i] -= ctx.degree(tuple(x)) * ctx.degree(e)
                return ctx.pic.reduce(x)


def random_trivial(rng, ctx, bound=20):
    return ctx.transform(rng.choice(ctx.aut.labels), random_pic0(rng, ctx, bound),
                         2 * rng.randint(-bound, bound))
