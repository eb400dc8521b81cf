"""Command-line front end.

Each invocation prints one document with the fields ``command``, ``inputs``,
``result`` and ``certificates`` (or ``error``).  Integers are written as
decimal strings.  Exit codes: 0 success, 1 domain error, 2 malformed input
or config.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import abelian, genus1, lattice, oracle
from .config import FibrationConfig, load, parse_int
from .errors import ConfigError, DomainError
from .genus1 import ElementaryGen, FMWord
from .lattice import KClass, SL2Matrix

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int(text: str) -> int:
    try:
        return parse_int(text)
    except ConfigError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


# rendering


def jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, SL2Matrix):
        return [[str(v) for v in row] for row in x.rows()]
    if isinstance(x, KClass):
        return {"rank": str(x.rank), "degree": str(x.degree)}
    if isinstance(x, abelian.IsomMatrix):
        return [[jsonable(x.alpha), jsonable(x.beta)], [jsonable(x.gamma), jsonable(x.delta)]]
    if hasattr(x, "tolist"):  # sympy matrices
        return [[str(v) for v in row] for row in x.tolist()]
    if hasattr(x, "is_Rational") and x.is_Rational:
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, ElementaryGen):
        return x.value
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _text_lines(prefix: str, value: Any) -> list[str]:
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            lines += _text_lines(f"{prefix}.{k}" if prefix else k, v)
        return lines or [f"{prefix}: {{}}"]
    return [f"{prefix}: {_text_value(value)}"]


def _text_value(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    return str(v)


def render(doc: dict, fmt: str) -> str:
    doc = jsonable(doc)
    if fmt == "machine":
        return json.dumps(doc, sort_keys=False, separators=(",", ":"))
    return "\n".join(_text_lines("", doc))


# argument helpers


def _matrix(v: Sequence[int]) -> SL2Matrix:
    return SL2Matrix(*v)


def _word_tokens(w: FMWord) -> list[str]:
    return [g.value if n == 1 else f"{g.value}^{n}" for g, n in w.syllables]


def _pp_tokens(word) -> list[str]:
    return [name if k == 1 else f"{name}^{k}" for name, k in word]


_TOKEN = re.compile(r"^([A-Za-z]+)(?:\^([+-]?[0-9]+))?$")


def _parse_word(tokens: Sequence[str]) -> FMWord:
    syllables = []
    for tok in tokens:
        m = _TOKEN.match(tok)
        if not m:
            raise UsageError(f"bad generator token {tok!r}")
        try:
            gen = ElementaryGen(m.group(1))
        except ValueError:
            raise UsageError(f"unknown generator {m.group(1)!r}") from None
        n = int(m.group(2) or 1)
        if n < 0:
            raise UsageError("exponents must be positive; use the Inv generators")
        syllables.append((gen, n))
    return FMWord(tuple(syllables))


def _end_context(cfg: FibrationConfig | None) -> abelian.EndContext:
    if cfg is None:
        return abelian.EndContext.integer_pp()
    if cfg.end_context is None:
        raise UsageError(f"a {cfg.kind} config has no endomorphism context")
    return cfg.end_context


def _ring_entry(text: str, ctx: abelian.EndContext):
    if ctx.is_pp:
        return _int(text)
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(f"ring entry {text!r} is not a JSON matrix") from None
    if isinstance(value, list):
        return [[parse_int(v) for v in row] for row in value]
    return parse_int(value)


def _isom(entries: Sequence[str], cfg: FibrationConfig | None) -> abelian.IsomMatrix:
    ctx = _end_context(cfg)
    try:
        vals = [_ring_entry(e, ctx) for e in entries]
    except (argparse.ArgumentTypeError, ConfigError) as exc:
        raise UsageError(str(exc)) from None
    return abelian.IsomMatrix(*vals, context=ctx)


def _need(cfg: FibrationConfig | None, kind: str) -> FibrationConfig:
    if cfg is None or cfg.kind != kind:
        raise UsageError(f"this command needs --config with a {kind} context")
    return cfg


def _fields(text: str, n: int, what: str) -> list[str]:
    parts = text.split(":")
    if len(parts) != n:
        raise UsageError(f"{what} must have {n} ':'-separated fields, got {text!r}")
    return parts


def _coords(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(parse_int(v) for v in text.split(","))
    except ConfigError as exc:
        raise UsageError(str(exc)) from None


def _one_int(text: str) -> int:
    try:
        return parse_int(text)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None


# commands; each returns (inputs, result, certificates)


def cmd_euler(args, cfg):
    v, w = KClass(*args.v), KClass(*args.w)
    return {"v": v, "w": w}, lattice.euler_form(v, w), {}


def cmd_act(args, cfg):
    m, v = _matrix(args.m), KClass(*args.v)
    return {"m": m, "v": v}, lattice.apply(m, v), {}


def cmd_multiply(args, cfg):
    m1, m2 = _matrix(args.m1), _matrix(args.m2)
    return {"m1": m1, "m2": m2}, lattice.multiply(m1, m2), {}


def cmd_invert(args, cfg):
    m = _matrix(args.m)
    inv = lattice.invert(m)
    return {"m": m}, inv, {"product_is_identity": lattice.multiply(m, inv) == lattice.IDENTITY}


def _remultiplication(product: SL2Matrix, target: SL2Matrix) -> dict:
    return {"remultiplication": {"ok": product == target, "product": product}}


def cmd_factor(args, cfg):
    m = _matrix(args.m)
    w = genus1.factor_sl2(m)
    result = {"word": _word_tokens(w), "length": w.length, "syllables": w.syllable_count,
              "shift_parity": w.shift_parity}
    prod = oracle.syllable_product([(genus1.generator_matrix(g), n) for g, n in w.syllables])
    return {"m": m}, result, _remultiplication(SL2Matrix(*prod), m)


def cmd_ch(args, cfg):
    w = _parse_word(args.word)
    return {"word": _word_tokens(w)}, genus1.ch_tilde(w), {}


def cmd_factor_pp(args, cfg):
    m = _matrix(args.m)
    word = abelian.factor_u_pp(m)
    prod = oracle.syllable_product([(abelian.PP_GENERATORS[name], k) for name, k in word])
    return {"m": m}, {"word": _pp_tokens(word)}, _remultiplication(SL2Matrix(*prod), m)


def cmd_wit(args, cfg):
    m, v = _matrix(args.m), KClass(*args.v)
    index, cls = genus1.wit_index(m, v)
    return {"m": m, "v": v}, {"index": index, "transform": cls}, {}


def cmd_dagger(args, cfg):
    f = _isom(args.f, cfg)
    fd = abelian.dagger(f)
    return {"f": f}, fd, {"involution": abelian.dagger(fd) == f}


def cmd_isometric(args, cfg):
    f = _isom(args.f, cfg)
    return {"f": f}, abelian.is_isometric(f), {}


def cmd_u_iso(args, cfg):
    f = _isom(args.f, cfg)
    return {"f": f}, abelian.u_iso_pp(f), {}


def cmd_in_u0(args, cfg):
    f = _isom(args.f, cfg)
    return {"f": f}, abelian.in_u0(f), {}


def cmd_xi(args, cfg):
    f = _isom(args.f, cfg)
    x = abelian.xi(f)
    return {"f": f}, [list(row) for row in x], {"symmetric": abelian.is_symmetric(f.context, x)}


def cmd_factor_u0(args, cfg):
    f = _isom(args.f, cfg)
    g, h = abelian.factor_u0(f)
    certs = {
        "remultiplication": {"ok": g @ h == f, "product": g @ h},
        "g_in_u0": abelian.in_u0(g),
        "h_in_u0": abelian.in_u0(h),
        "g_isometric": abelian.is_isometric(g),
        "h_isometric": abelian.is_isometric(h),
    }
    return {"f": f}, {"g": g, "h": h}, certs


def _trivial(text: str, ctx: genus1.WeierstrassContext) -> genus1.TrivialTransform:
    aut, pic, shift = _fields(text, 3, "trivial transform AUT:PIC:SHIFT")
    return ctx.transform(aut, _coords(pic), _one_int(shift))


def _trivial_doc(t: genus1.TrivialTransform) -> dict:
    return {"aut": t.aut, "pic": list(t.pic), "shift": t.shift}


def cmd_compose_trivial(args, cfg):
    ctx = _need(cfg, "weierstrass").weierstrass
    t1, t2 = _trivial(args.t1, ctx), _trivial(args.t2, ctx)
    t = genus1.compose_trivial(t1, t2)
    certs = {"even_shift": t.shift % 2 == 0, "fibre_degree_zero": ctx.degree(t.pic) == 0}
    return {"t1": _trivial_doc(t1), "t2": _trivial_doc(t2)}, _trivial_doc(t), certs


def cmd_split_pic(args, cfg):
    ctx = _need(cfg, "weierstrass").weierstrass
    v = tuple(args.v)
    fibre, base = genus1.pic0_split(ctx, v)
    ok = ctx.pic.add(fibre, base) == ctx.pic.reduce(v)
    return {"v": list(v)}, {"fibre": list(fibre), "base": list(base)}, {"reconstructs": ok}


def _abelian_trivial(text: str, ctx: abelian.AbelianTrivialContext) -> abelian.AbelianTrivial:
    n, x, L, M = _fields(text, 4, "abelian trivial transform N:X:L:M")
    return ctx.element(_one_int(n), _coords(x), _coords(L), _coords(M))


def _abelian_doc(t: abelian.AbelianTrivial) -> dict:
    return {"n": t.n, "x": list(t.x), "L": list(t.L), "M": list(t.M)}


def cmd_compose_abelian(args, cfg):
    ctx = _need(cfg, "abelian").abelian_trivial
    t1, t2 = _abelian_trivial(args.t1, ctx), _abelian_trivial(args.t2, ctx)
    t = abelian.compose_abelian_trivial(t1, t2)
    return {"t1": _abelian_doc(t1), "t2": _abelian_doc(t2)}, _abelian_doc(t), {}


def cmd_compose_fano(args, cfg):
    grp = _need(cfg, "fano").fano

    def parse(text):
        aut, pic, shift = _fields(text, 3, "transform AUT:PIC:SHIFT")
        return grp.transform(aut, _coords(pic), _one_int(shift))

    def doc(e):
        g, pic, shift = grp.parts(e)
        return {"aut": g, "pic": list(pic), "shift": shift}

    e1, e2 = parse(args.t1), parse(args.t2)
    return {"t1": doc(e1), "t2": doc(e2)}, doc(grp.compose(e1, e2)), {}


def run_verify(max_len: int) -> tuple[dict, bool]:
    """Cross-check the library against the oracle module."""
    checks: dict[str, bool] = {}
    checks["euler_vs_line_bundle_chi"] = all(
        lattice.euler_form(KClass(1, d1), KClass(1, d2)) == oracle.line_bundle_chi(d1, d2)
        for d1 in range(-50, 51) for d2 in range(-50, 51)
    )
    checks["euler_vs_skyscraper_chi"] = (
        lattice.euler_form(KClass(1, 0), KClass(0, 1)) == oracle.skyscraper_chi()
        and lattice.euler_form(KClass(0, 1), KClass(1, 0)) == oracle.skyscraper_chi_reversed()
    )
    s = genus1.FMWord.from_letters([genus1.PhiTwo, genus1.PhiOne, genus1.PhiTwo])
    sm = genus1.ch_tilde(s)
    checks["generator_relations"] = (
        sm == SL2Matrix(0, 1, -1, 0) and sm ** 2 == genus1.MINUS_I and sm ** 4 == lattice.IDENTITY
    )
    ab = [genus1.A, genus1.B]
    witnesses = oracle.ball(ab, max_len)
    checks["factor_sl2_vs_bfs"] = all(
        genus1.ch_tilde(genus1.factor_sl2(SL2Matrix(*m))) == SL2Matrix(*oracle.word_product(w, ab))
        for m, w in witnesses.items()
    )
    pq = [abelian.P, abelian.Q]
    witnesses_pp = oracle.ball(pq, max_len)
    checks["factor_u_pp_vs_bfs"] = all(
        abelian.pp_word_product(abelian.factor_u_pp(SL2Matrix(*m))) == SL2Matrix(*oracle.word_product(w, pq))
        for m, w in witnesses_pp.items()
    )
    result = {
        "checks": checks,
        "matrices_checked": {"genus_one": len(witnesses), "principally_polarized": len(witnesses_pp)},
    }
    return result, all(checks.values())


def cmd_verify(args, cfg):
    max_len = args.max_bfs_len
    if not 0 <= max_len <= oracle.MAX_BFS_LEN:
        raise UsageError(f"--max-bfs-len must be between 0 and {oracle.MAX_BFS_LEN}")
    result, ok = run_verify(max_len)
    return {"max_bfs_len": max_len}, result, {"all_passed": ok}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="fibration context file (JSON)")
    common.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS)

    parser = _Parser(prog="relfm", parents=[common],
                                     description="Exact arithmetic in groups of relative Fourier-Mukai transforms.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func: Callable, help: str, **positionals):
        p = sub.add_parser(name, parents=[common], help=help)
        for dest, (nargs, kind, meta) in positionals.items():
            p.add_argument(dest, nargs=nargs, type=kind, metavar=meta)
        p.set_defaults(func=func)
        return p

    mat = (4, _int, "ENTRY")
    cls = (2, _int, "RANK_DEG")
    isom = (4, str, "ENTRY")
    add("euler", cmd_euler, "Euler form of two (rank, degree) classes", v=cls, w=cls)
    add("act", cmd_act, "apply an SL(2,Z) matrix to a class", m=mat, v=cls)
    add("multiply", cmd_multiply, "product of two SL(2,Z) matrices", m1=mat, m2=mat)
    add("invert", cmd_invert, "inverse of an SL(2,Z) matrix", m=mat)
    add("factor", cmd_factor, "factor into PhiOne, PhiTwo (and OddShift)", m=mat)
    add("ch", cmd_ch, "ch~ of a word such as 'PhiTwo PhiOne^3'", word=("*", str, "GEN"))
    add("factor-pp", cmd_factor_pp, "factor into the principally polarized generators P, Q", m=mat)
    add("wit", cmd_wit, "WIT index and transformed class of a semistable sheaf", m=mat, v=cls)
    add("dagger", cmd_dagger, "dagger of an isomorphism matrix", f=isom)
    add("isometric", cmd_isometric, "is f isometric", f=isom)
    add("u-iso", cmd_u_iso, "U = SL(2,Z) image of an isometric f (End = Z, PP)", f=isom)
    add("in-u0", cmd_in_u0, "is beta an isogeny", f=isom)
    add("xi", cmd_xi, "slope datum of f in U_0", f=isom)
    add("factor-u0", cmd_factor_u0, "write an isometric f as g h with g, h in U_0", f=isom)
    add("compose-trivial", cmd_compose_trivial, "compose AUT:PIC:SHIFT trivial transforms (weierstrass)",
        t1=(None, str, "T1"), t2=(None, str, "T2"))
    add("compose-abelian", cmd_compose_abelian, "compose N:X:L:M kernel elements (abelian)",
        t1=(None, str, "T1"), t2=(None, str, "T2"))
    add("compose-fano", cmd_compose_fano, "compose AUT:PIC:SHIFT transforms (fano)",
        t1=(None, str, "T1"), t2=(None, str, "T2"))
    add("split-pic", cmd_split_pic, "split a fibre-degree-0 line bundle (weierstrass)",
        v=("*", _int, "COORD"))
    verify = add("verify", cmd_verify, "run the oracle cross-check suite")
    verify.add_argument("--max-bfs-len", type=_int, default=6)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        fmt = "machine" if "machine" in (argv if argv is not None else sys.argv[1:]) else "text"
        print(render({"command": None, "error": {"type": "MalformedInput", "message": str(exc)}}, fmt), file=out)
        return EXIT_USAGE
    fmt = getattr(args, "format", "text")
    doc: dict[str, Any] = {"command": args.command}
    code = EXIT_OK
    try:
        cfg = load(args.config) if getattr(args, "config", None) else None
        inputs, result, certs = args.func(args, cfg)
        doc.update(inputs=inputs, result=result, certificates=certs)
        if args.command == "verify" and not certs["all_passed"]:
            code = EXIT_DOMAIN
    except DomainError as exc:
        name = type(exc).__name__.removesuffix("Error")
        doc["error"] = {"type": name, "invariant": exc.invariant, "message": str(exc)}
        code = EXIT_DOMAIN
    except (ConfigError, UsageError) as exc:
        doc["error"] = {"type": "MalformedInput", "message": str(exc)}
        code = EXIT_USAGE
    print(render(doc, fmt), file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
