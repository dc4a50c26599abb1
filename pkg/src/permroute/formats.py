"""Stable on-disk formats.

Circuit JSON:
    {"vertices": [{"id": 1, "class": 1}, ...],
     "edges": [{"id": 1, "tail": 1, "out_port": 1, "head": 2, "in_port": 2}, ...],
     "classes": [[1, 2], [3]]}

Distance-instance JSON:
    {"n": 4, "pi": [2, 1, 4, 3], "generators": [[[1, 2], [3, 4]]], "k": 1}

Permutations serialize as one-line image lists. All ids and ports are
1-based positive integers. Emission is deterministic: identical values
produce identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .circuits import Edge, Polarization, SwitchingCircuit, validate_circuit
from .errors import ValidationError
from .perms import IdsGeneratorSet, Permutation, Transposition, validate_ids
from .transforms import IdsDistanceInstance

SCHEMA_VERSION = 1


def _is_scalar(value: Any) -> bool:
    return value is None or isinstance(value, (bool, int, float, str))


def _render(value: Any, pad: str) -> str:
    if _is_scalar(value):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = sorted((str(k), v) for k, v in value.items())
        if all(_is_scalar(v) for _, v in items):
            return "{" + ", ".join(f"{json.dumps(k)}: {json.dumps(v)}" for k, v in items) + "}"
        body = ",\n".join(f"{pad}  {json.dumps(k)}: {_render(v, pad + '  ')}" for k, v in items)
        return "{\n" + body + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        # scalar lists (like permutation image tables) stay on one line,
        # as do lists of scalar pairs (transpositions, classes)
        if all(_is_scalar(v) for v in value):
            return "[" + ", ".join(json.dumps(v) for v in value) + "]"
        if all(
            isinstance(v, (list, tuple)) and all(_is_scalar(x) for x in v) for v in value
        ):
            return "[" + ", ".join(_render(v, pad) for v in value) + "]"
        body = ",\n".join(f"{pad}  {_render(v, pad + '  ')}" for v in value)
        return "[\n" + body + f"\n{pad}]"
    raise TypeError(f"not JSON-serializable: {type(value)!r}")


def dumps_json(obj: Any) -> str:
    """Deterministic JSON: sorted keys, two-space indent, scalar lists inline."""
    return _render(obj, "") + "\n"


def _require(obj: dict, key: str, kind: type, where: str):
    if key not in obj:
        raise ValidationError(f"{where}: missing key {key!r}")
    value = obj[key]
    if kind is int and isinstance(value, bool):
        raise ValidationError(f"{where}: {key!r} must be an integer")
    if not isinstance(value, kind):
        raise ValidationError(f"{where}: {key!r} must be {kind.__name__}")
    return value


def circuit_to_obj(circuit: SwitchingCircuit, polarization: Polarization) -> dict:
    class_of = polarization.class_of()
    return {
        "vertices": [{"id": v, "class": class_of[v]} for v in circuit.vertices],
        "edges": [
            {
                "id": e.id,
                "tail": e.tail,
                "out_port": e.out_port,
                "head": e.head,
                "in_port": e.in_port,
            }
            for e in circuit.edges
        ],
        "classes": [list(members) for members in polarization.classes],
    }


def circuit_from_obj(obj: Any) -> tuple[SwitchingCircuit, Polarization]:
    if not isinstance(obj, dict):
        raise ValidationError("circuit file: top level must be a JSON object")
    vertices_raw = _require(obj, "vertices", list, "circuit file")
    edges_raw = _require(obj, "edges", list, "circuit file")
    classes_raw = _require(obj, "classes", list, "circuit file")

    vertices = []
    declared_class: dict[int, int] = {}
    for i, v in enumerate(vertices_raw):
        if not isinstance(v, dict):
            raise ValidationError(f"vertex #{i + 1}: must be an object")
        vid = _require(v, "id", int, f"vertex #{i + 1}")
        cid = _require(v, "class", int, f"vertex #{i + 1}")
        vertices.append(vid)
        declared_class[vid] = cid

    edges = []
    for i, e in enumerate(edges_raw):
        if not isinstance(e, dict):
            raise ValidationError(f"edge #{i + 1}: must be an object")
        edges.append(
            Edge(
                id=_require(e, "id", int, f"edge #{i + 1}"),
                tail=_require(e, "tail", int, f"edge #{i + 1}"),
                out_port=_require(e, "out_port", int, f"edge #{i + 1}"),
                head=_require(e, "head", int, f"edge #{i + 1}"),
                in_port=_require(e, "in_port", int, f"edge #{i + 1}"),
            )
        )

    classes = []
    for i, members in enumerate(classes_raw):
        if not isinstance(members, list) or not all(
            isinstance(m, int) and not isinstance(m, bool) for m in members
        ):
            raise ValidationError(f"class #{i + 1}: must be a list of vertex ids")
        classes.append(tuple(members))

    circuit = SwitchingCircuit(tuple(vertices), tuple(edges))
    polarization = Polarization(tuple(classes))
    validate_circuit(circuit, polarization)
    class_of = polarization.class_of()
    for vid, cid in declared_class.items():
        if class_of.get(vid) != cid:
            raise ValidationError(
                f"vertex {vid}: declared class {cid} disagrees with the classes list"
            )
    return circuit, polarization


def dumps_circuit(circuit: SwitchingCircuit, polarization: Polarization) -> str:
    return dumps_json(circuit_to_obj(circuit, polarization))


def loads_circuit(text: str) -> tuple[SwitchingCircuit, Polarization]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"circuit file: invalid JSON ({exc})") from None
    return circuit_from_obj(obj)


def ids_instance_to_obj(instance: IdsDistanceInstance) -> dict:
    return {
        "n": instance.ids.n,
        "pi": list(instance.pi.image),
        "generators": [
            [[t.x, t.y] for t in gen] for gen in instance.ids.generators
        ],
        "k": instance.bound_k,
    }


def ids_instance_from_obj(obj: Any, k_override: int | None = None) -> IdsDistanceInstance:
    if not isinstance(obj, dict):
        raise ValidationError("instance file: top level must be a JSON object")
    n = _require(obj, "n", int, "instance file")
    pi_raw = _require(obj, "pi", list, "instance file")
    gens_raw = _require(obj, "generators", list, "instance file")
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in pi_raw):
        raise ValidationError("instance file: 'pi' must be a list of integers")
    if len(pi_raw) != n:
        raise ValidationError(f"instance file: 'pi' has {len(pi_raw)} entries, n is {n}")
    generators = []
    for j, gen in enumerate(gens_raw, start=1):
        if not isinstance(gen, list):
            raise ValidationError(f"generator #{j}: must be a list of [x, y] pairs")
        pairs = []
        for pair in gen:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(p, int) and not isinstance(p, bool) for p in pair)
            ):
                raise ValidationError(f"generator #{j}: must be a list of [x, y] pairs")
            pairs.append(Transposition(pair[0], pair[1]))
        generators.append(tuple(pairs))
    ids = IdsGeneratorSet(n, tuple(generators))
    validate_ids(ids)
    if k_override is not None:
        k = k_override
    else:
        if "k" not in obj:
            raise ValidationError("instance file: missing bound 'k' (and no --k given)")
        k = _require(obj, "k", int, "instance file")
    return IdsDistanceInstance(ids=ids, pi=Permutation(pi_raw), bound_k=k)


def dumps_ids_instance(instance: IdsDistanceInstance) -> str:
    return dumps_json(ids_instance_to_obj(instance))


def loads_ids_instance(text: str, k_override: int | None = None) -> IdsDistanceInstance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"instance file: invalid JSON ({exc})") from None
    return ids_instance_from_obj(obj, k_override)
