"""JSON artifacts.

Every artifact is an object carrying ``schema_version`` and ``kind``.
Nodes are '0'/'1' strings (root ``""``); exact rationals are written as
``"p/q"`` strings and floats as JSON numbers, so a load/dump cycle is
byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .tree import TreeSeq, check_node

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def number(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(v, int):
        return v
    return float(v)


def parse_number(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return v
    raise SchemaError(f"not a number: {v!r}")


def numbers_map(d) -> dict:
    return {k: number(v) for k, v in sorted(d.items())}


def parse_numbers_map(d) -> dict:
    if not isinstance(d, dict):
        raise SchemaError("expected a JSON object")
    return {check_node(k): parse_number(v) for k, v in d.items()}


def envelope(kind: str, **payload) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **payload}


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def loads(text: str, kind: str | None = None) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"malformed JSON: {e}") from None
    if not isinstance(obj, dict) or "schema_version" not in obj:
        raise SchemaError("artifact has no schema_version")
    if obj["schema_version"] != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {obj['schema_version']!r}")
    if kind is not None and obj.get("kind") != kind:
        raise SchemaError(f"expected a {kind!r} artifact, got {obj.get('kind')!r}")
    return obj


def write(path, obj: dict) -> None:
    Path(path).write_text(dumps(obj))


def read(path, kind: str | None = None) -> dict:
    return loads(Path(path).read_text(), kind)


def seq_to_json(Z: TreeSeq, spec: dict | None = None) -> dict:
    obj = envelope("tree_seq", nodes=list(Z.nodes))
    if spec is not None:
        obj["spec"] = spec
    return obj


def seq_from_json(obj: dict) -> TreeSeq:
    nodes = obj.get("nodes")
    if not isinstance(nodes, list) or not all(isinstance(a, str) for a in nodes):
        raise SchemaError("'nodes' must be a list of strings")
    return TreeSeq.from_nodes(nodes)


def family_to_json(F) -> dict:
    return envelope(
        "interpolant_family",
        sequence=list(F.sequence.nodes),
        root_adjoined=F.root_adjoined,
        xi=dict(sorted(F.xi.items())),
        cuts=dict(sorted(F.cuts.items())),
        members={z: numbers_map(K) for z, K in sorted(F.members.items())},
        gamma=numbers_map(F.gamma),
        norm_sq=numbers_map(F.norm_sq),
        stopping_max=numbers_map(F.stopping_max),
        norm_constant=float(F.norm_constant),
        stopping_constant=float(F.stopping_constant),
        short_landings=list(F.short_landings),
    )


def weaksim_to_json(W) -> dict:
    return envelope(
        "weaksim_interpolant",
        z0=W.z0, branch=W.branch, stem_top=W.stem_top,
        sep_constant=number(W.sep_constant),
        energy=number(W.energy), constant=number(W.constant),
        f=numbers_map(W.f), violations=list(W.violations),
    )
