"""JSON wire formats.

partition_system.json:
    {"axes": [{"size": N, "partitions": [[[elem, ...], ...], ...]}],
     "unital": bool}
box_family.json:
    {"system": <inline object or path string>, "boxes": [[factor, ...]]}
    where factor is "full" or {"p": int, "b": int}
tiling json:
    {"m": [...], "q": [...], "starts": [[...], ...]}
multipile tree json:
    {"leaf": [factor, ...]}
    | {"axis": i, "partition": p, "children": {"<block>": <tree>}}

Rationals are serialized as "p/q" strings, never floats.  Block order is
canonical on write and tolerated unordered on read.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from .boxes import BlockRef, Box, BoxFamily
from .multipiles import Leaf, MultipileTree, Node
from .partitions import (
    PartitionSystem,
    elems_of,
    make_partition,
    trivial_partition,
)
from .torus import TorusSpec, TorusTiling


def fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


# --- partition systems --------------------------------------------------

def system_to_obj(system: PartitionSystem) -> dict[str, Any]:
    axes = []
    for size, family in zip(system.axis_sizes, system.families):
        axes.append(
            {
                "size": size,
                "partitions": [
                    [list(elems_of(m)) for m in p.blocks] for p in family
                ],
            }
        )
    return {"axes": axes, "unital": system.is_unital}


def system_from_obj(obj: dict[str, Any]) -> PartitionSystem:
    sizes = []
    families = []
    for axis in obj["axes"]:
        size = int(axis["size"])
        family = [make_partition(size, blocks) for blocks in axis["partitions"]]
        if obj.get("unital") and not any(p.is_trivial for p in family):
            family.append(trivial_partition(size))
        sizes.append(size)
        families.append(tuple(family))
    return PartitionSystem(tuple(sizes), tuple(families))


# --- box families -------------------------------------------------------

def _factor_to_obj(f: Optional[BlockRef]) -> Any:
    if f is None:
        return "full"
    return {"p": f.partition, "b": f.block}


def _factor_from_obj(obj: Any) -> Optional[BlockRef]:
    if obj == "full":
        return None
    return BlockRef(int(obj["p"]), int(obj["b"]))


def family_to_obj(G: BoxFamily) -> dict[str, Any]:
    return {
        "system": system_to_obj(G.system),
        "boxes": [[_factor_to_obj(f) for f in K.factors] for K in G.boxes],
    }


def family_from_obj(
    obj: dict[str, Any], base_dir: Optional[Path] = None
) -> BoxFamily:
    raw = obj["system"]
    if isinstance(raw, str):
        path = Path(raw)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        raw = json.loads(path.read_text())
    system = system_from_obj(raw)
    boxes = tuple(
        Box(system, tuple(_factor_from_obj(f) for f in factors))
        for factors in obj["boxes"]
    )
    return BoxFamily(system, boxes)


# --- tilings ------------------------------------------------------------

def tiling_to_obj(t: TorusTiling) -> dict[str, Any]:
    return {
        "m": list(t.spec.m),
        "q": list(t.spec.q),
        "starts": [list(s) for s in t.starts],
    }


def tiling_from_obj(obj: dict[str, Any]) -> TorusTiling:
    spec = TorusSpec(tuple(int(v) for v in obj["m"]), tuple(int(v) for v in obj["q"]))
    starts = tuple(tuple(int(v) for v in s) for s in obj["starts"])
    return TorusTiling(spec, starts)


# --- multipile trees ----------------------------------------------------

def tree_to_obj(tree: MultipileTree) -> dict[str, Any]:
    if isinstance(tree, Leaf):
        return {"leaf": [_factor_to_obj(f) for f in tree.box.factors]}
    return {
        "axis": tree.axis,
        "partition": tree.partition,
        "children": {str(b): tree_to_obj(c) for b, c in enumerate(tree.children)},
    }


def tree_from_obj(obj: dict[str, Any], system: PartitionSystem) -> MultipileTree:
    if "leaf" in obj:
        factors = tuple(_factor_from_obj(f) for f in obj["leaf"])
        return Leaf(Box(system, factors))
    children_raw = obj["children"]
    children = tuple(
        tree_from_obj(children_raw[str(b)], system)
        for b in range(len(children_raw))
    )
    return Node(int(obj["axis"]), int(obj["partition"]), children)


# --- file helpers -------------------------------------------------------

def load_json(path: Union[str, Path]) -> Any:
    return json.loads(Path(path).read_text())


def dump_json(obj: Any, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def detect_and_load(path: Union[str, Path]):
    """Load a tiling or a box family, deciding by the top-level keys."""
    obj = load_json(path)
    if "starts" in obj:
        return tiling_from_obj(obj)
    if "boxes" in obj:
        return family_from_obj(obj, base_dir=Path(path).parent)
    raise ValueError("file is neither a tiling nor a box family")
