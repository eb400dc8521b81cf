import json
from pathlib import Path

import pytest

from relfm.config import build, load, parse_int
from relfm.errors import ConfigError

DATA = Path(__file__).parent / "data"


def test_parse_int():
    assert parse_int("-12345678901234567890") == -12345678901234567890
    assert parse_int(7) == 7
    for bad in (True, 1.0, "1.0", "", None):
        with pytest.raises(ConfigError):
            parse_int(bad)


@pytest.mark.parametrize("name", ["swap", "split", "abelian", "gauss", "fano"])
def test_shipped_configs_load(name):
    cfg = load(DATA / f"{name}.json")
    assert cfg.kind == json.loads((DATA / f"{name}.json").read_text())["kind"]


def test_weierstrass_built():
    cfg = load(DATA / "swap.json")
    ctx = cfg.weierstrass
    assert ctx.pullback("s", (1, 0)) == (0, 1)


def doc(**kw):
    base = {"schema": 1, "kind": "weierstrass",
            "pic": {"free_rank": 1, "fibre_degree": [0], "base_summand": []}}
    base.update(kw)
    return base


@pytest.mark.parametrize("bad", [
    [],
    doc(schema=2),
    doc(kind="k3"),
    doc(pic={"free_rank": 1}),
    doc(pic={"free_rank": 1, "fibre_degree": [0], "base_summand": [], "colour": 3}),
    doc(pic={"free_rank": "one", "fibre_degree": [0], "base_summand": []}),
    doc(aut={"elements": ["e", "s"], "table": [["e", "s"], ["s", "s"]]}),
    doc(aut={"elements": ["e", "s"], "table": [["e", "s"], ["s", "e"]], "pic_action": {"s": [[2]]}}),
    doc(pic={"free_rank": 1, "fibre_degree": [1], "base_summand": [0]}),
    {"schema": 1, "kind": "abelian", "end_context": {"mode": "tropical"}},
    {"schema": 1, "kind": "abelian",
     "end_context": {"mode": "represented_ring", "dimension": 2, "involution": [[2, 0], [0, 1]]}},
])
def test_bad_configs(bad):
    with pytest.raises(ConfigError):
        build(bad)


def test_unreadable(tmp_path):
    with pytest.raises(ConfigError):
        load(tmp_path / "nope.json")
    p = tmp_path / "broken.json"
    p.write_text("{schema: 1")
    with pytest.raises(ConfigError):
        load(p)
