"""Fibration context files.

A context is a JSON document::

    {
      "schema": 1,
      "kind": "weierstrass",
      "pic": {"free_rank": 3, "torsion": [],
              "fibre_degree": [0, 1, 0], "base_summand": [2]},
      "aut": {"elements": ["e", "s"],
              "table": [["e", "s"], ["s", "e"]],
              "pic_action": {"s": [[0, 1, 0], [1, 0, 0], [0, 0, 1]]}}
    }

``kind`` is one of ``weierstrass``, ``abelian`` or ``fano``.  Abelian contexts
carry ``end_context`` (``{"mode": "integer_pp"}`` or ``{"mode":
"represented_ring", "dimension": n, "generators": {...}, "involution":
[[...]]}``) and the groups ``sections``, ``dual_sections`` and ``pic_base``.
Integers may be written as JSON numbers or decimal strings.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .abelian import AbelianTrivialContext, EndContext, EndMode
from .errors import ConfigError, DomainError
from .genus1 import WeierstrassContext
from .groups import FanoGroup, FGAbelian, FiniteGroup, GroupHom, fano_group

SCHEMA_VERSION = 1
KINDS = ("weierstrass", "abelian", "fano")

_INT_RE = re.compile(r"^[+-]?[0-9]+$")


def parse_int(value: Any, where: str = "value") -> int:
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _INT_RE.match(value.strip()):
        return int(value)
    raise ConfigError(f"{where}: expected an integer, got {value!r}")


def _int_list(value: Any, where: str) -> list[int]:
    if not isinstance(value, list):
        raise ConfigError(f"{where}: expected a list")
    return [parse_int(v, f"{where}[{i}]") for i, v in enumerate(value)]


def _int_matrix(value: Any, where: str) -> list[list[int]]:
    if not isinstance(value, list):
        raise ConfigError(f"{where}: expected a list of rows")
    return [_int_list(row, f"{where}[{i}]") for i, row in enumerate(value)]


def _group(node: Any, where: str) -> FGAbelian:
    if node is None:
        return FGAbelian()
    if not isinstance(node, dict):
        raise ConfigError(f"{where}: expected an object with free_rank and torsion")
    unknown = set(node) - {"free_rank", "torsion", "fibre_degree", "base_summand"}
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    return FGAbelian(parse_int(node.get("free_rank", 0), f"{where}.free_rank"),
                     tuple(_int_list(node.get("torsion", []), f"{where}.torsion")))


def _aut(node: Any, pic: FGAbelian) -> tuple[FiniteGroup, dict[str, GroupHom]]:
    if node is None:
        return FiniteGroup.trivial(), {}
    if not isinstance(node, dict) or "elements" not in node or "table" not in node:
        raise ConfigError("aut: expected an object with elements and table")
    labels = node["elements"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ConfigError("aut.elements: expected a list of labels")
    group = FiniteGroup(labels, node["table"])
    action = {}
    for g, rows in (node.get("pic_action") or {}).items():
        action[g] = GroupHom(pic, pic, _int_matrix(rows, f"aut.pic_action.{g}"))
    return group, action


def _end_context(node: Any) -> EndContext:
    if node is None:
        return EndContext.integer_pp()
    if not isinstance(node, dict) or "mode" not in node:
        raise ConfigError("end_context: expected an object with a mode")
    try:
        mode = EndMode(node["mode"])
    except ValueError:
        raise ConfigError(f"end_context.mode: unknown mode {node['mode']!r}") from None
    if mode is EndMode.INTEGER_PP:
        return EndContext.integer_pp()
    n = parse_int(node.get("dimension"), "end_context.dimension")
    gens = {name: _int_matrix(m, f"end_context.generators.{name}")
            for name, m in (node.get("generators") or {}).items()}
    inv = node.get("involution")
    return EndContext.represented_ring(n, gens, None if inv is None else _int_matrix(inv, "end_context.involution"))


@dataclass
class FibrationConfig:
    kind: str
    weierstrass: WeierstrassContext | None = None
    fano: FanoGroup | None = None
    end_context: EndContext | None = None
    abelian_trivial: AbelianTrivialContext | None = None


def build(doc: Any) -> FibrationConfig:
    """Validate a parsed document and build its contexts.

    Invalid mathematical data (a non-associative table, an action that moves
    the fibre degree, ...) is reported as :class:`ConfigError` as well.
    """
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema {doc.get('schema')!r}; expected {SCHEMA_VERSION}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"kind must be one of {', '.join(KINDS)}")
    try:
        if kind == "abelian":
            return FibrationConfig(
                kind,
                end_context=_end_context(doc.get("end_context")),
                abelian_trivial=AbelianTrivialContext(
                    _group(doc.get("sections"), "sections"),
                    _group(doc.get("dual_sections"), "dual_sections"),
                    _group(doc.get("pic_base"), "pic_base"),
                ),
            )
        pic_spec = doc.get("pic")
        pic = _group(pic_spec, "pic")
        aut, action = _aut(doc.get("aut"), pic)
        if kind == "fano":
            return FibrationConfig(kind, fano=fano_group(aut, pic, action))
        if not isinstance(pic_spec, dict) or "fibre_degree" not in pic_spec or "base_summand" not in pic_spec:
            raise ConfigError("weierstrass configs must declare pic.fibre_degree and pic.base_summand")
        deg = GroupHom(pic, FGAbelian(1), [_int_list(pic_spec["fibre_degree"], "pic.fibre_degree")])
        base = _int_list(pic_spec["base_summand"], "pic.base_summand")
        return FibrationConfig(kind, weierstrass=WeierstrassContext(aut, pic, action, deg, base))
    except (DomainError, TypeError) as exc:
        raise ConfigError(f"invalid {kind} context: {exc}") from exc


def load(path: str | Path) -> FibrationConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    return build(doc)
