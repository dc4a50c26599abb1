"""Polarized switching circuits and their routings.

A switching circuit is a directed multigraph (loops and parallel edges
allowed) in which every vertex has equal in- and out-valency d(v), and the
edges into and out of each vertex carry port labels 1..d(v) on each side.
A routing chooses a permutation in S_{d(v)} per vertex; an edge arriving
at in-port i leaves through out-port rho(i), so every routing induces a
permutation of the edge set whose orbits partition the edges into directed
cycles.

A polarization groups vertices of equal valency into classes; a routing is
stored per class, so respecting the polarization is structural rather than
checked, and unpolarised vertices are just singleton classes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .errors import CapExceededError, ValidationError
from .perms import Permutation

DEFAULT_MAX_ROUTINGS = 1 << 20


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    out_port: int
    head: int
    in_port: int


@dataclass(frozen=True)
class SwitchingCircuit:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def valencies(self) -> dict[int, int]:
        """Out-valency per vertex (equal to in-valency on a valid circuit)."""
        out: dict[int, int] = {v: 0 for v in self.vertices}
        for e in self.edges:
            out[e.tail] = out.get(e.tail, 0) + 1
        return out


@dataclass(frozen=True)
class Polarization:
    """Partition of the vertex set; class id = 1-based position in `classes`."""

    classes: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return max((len(c) for c in self.classes), default=0)

    def class_of(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for cid, members in enumerate(self.classes, start=1):
            for v in members:
                out[v] = cid
        return out

    @classmethod
    def singletons(cls, circuit: SwitchingCircuit) -> "Polarization":
        return cls(tuple((v,) for v in circuit.vertices))


@dataclass(frozen=True)
class Routing:
    """One permutation per polarization class, aligned with class ids."""

    perms: tuple[Permutation, ...]

    def for_class(self, class_id: int) -> Permutation:
        return self.perms[class_id - 1]


def validate_circuit(
    circuit: SwitchingCircuit, polarization: Polarization
) -> tuple[int, int]:
    """Check every structural invariant; return (width, max valency).

    Rejects: empty circuits, duplicate vertex or edge ids, edge ids not
    numbered 1..#E, edges touching unknown vertices, port-label gaps or
    duplicates, in/out valency imbalance (valency 0 included), vertices
    missing from or repeated in the polarization, and classes mixing
    valencies.
    """
    if not circuit.vertices:
        raise ValidationError("empty circuit: no vertices")
    if len(set(circuit.vertices)) != len(circuit.vertices):
        raise ValidationError("duplicate vertex id")
    for v in circuit.vertices:
        if v < 1:
            raise ValidationError(f"vertex id {v} is not a positive integer")

    ids = sorted(e.id for e in circuit.edges)
    if ids != list(range(1, len(circuit.edges) + 1)):
        raise ValidationError(
            f"edge ids must be exactly 1..{len(circuit.edges)} with no gaps"
        )

    vset = set(circuit.vertices)
    out_ports: dict[int, list[int]] = {v: [] for v in circuit.vertices}
    in_ports: dict[int, list[int]] = {v: [] for v in circuit.vertices}
    for e in circuit.edges:
        if e.tail not in vset or e.head not in vset:
            raise ValidationError(f"edge {e.id} references an unknown vertex")
        out_ports[e.tail].append(e.out_port)
        in_ports[e.head].append(e.in_port)

    valency: dict[int, int] = {}
    for v in circuit.vertices:
        d_out, d_in = len(out_ports[v]), len(in_ports[v])
        if d_out == 0 and d_in == 0:
            raise ValidationError(f"vertex {v} has valency 0")
        if d_out != d_in:
            raise ValidationError(
                f"vertex {v}: out-valency {d_out} != in-valency {d_in}"
            )
        want = list(range(1, d_out + 1))
        if sorted(out_ports[v]) != want:
            raise ValidationError(
                f"vertex {v}: out-port labels {sorted(out_ports[v])} are not exactly 1..{d_out}"
            )
        if sorted(in_ports[v]) != want:
            raise ValidationError(
                f"vertex {v}: in-port labels {sorted(in_ports[v])} are not exactly 1..{d_in}"
            )
        valency[v] = d_out

    covered: set[int] = set()
    for cid, members in enumerate(polarization.classes, start=1):
        if not members:
            raise ValidationError(f"class {cid} is empty")
        for v in members:
            if v not in vset:
                raise ValidationError(f"class {cid} contains unknown vertex {v}")
            if v in covered:
                raise ValidationError(f"vertex {v} appears in more than one class")
            covered.add(v)
        vals = {valency[v] for v in members}
        if len(vals) > 1:
            raise ValidationError(
                f"class {cid} mixes valencies {sorted(vals)}; equivalent vertices must have the same valency"
            )
    missing = vset - covered
    if missing:
        raise ValidationError(f"vertices {sorted(missing)} missing from the polarization")

    return polarization.width, max(valency.values())


def class_valencies(circuit: SwitchingCircuit, polarization: Polarization) -> tuple[int, ...]:
    """Valency of each class, aligned with class ids (circuit must be valid)."""
    val = circuit.valencies()
    return tuple(val[members[0]] for members in polarization.classes)


def identity_routing(circuit: SwitchingCircuit, polarization: Polarization) -> Routing:
    return Routing(tuple(Permutation.identity(d) for d in class_valencies(circuit, polarization)))


class _Engine:
    """Precomputed successor tables for fast cycle counting over routings."""

    def __init__(self, circuit: SwitchingCircuit, polarization: Polarization):
        validate_circuit(circuit, polarization)
        self.circuit = circuit
        self.polarization = polarization
        self.degrees = class_valencies(circuit, polarization)
        class_of = polarization.class_of()
        out_edge: dict[tuple[int, int], int] = {}
        for e in circuit.edges:
            out_edge[(e.tail, e.out_port)] = e.id - 1
        # per edge: index of head's class (0-based), in-port - 1, and the
        # edge reached through each possible out-port of the head
        self.head_class = []
        self.in_port0 = []
        self.succ_by_port = []
        for e in circuit.edges:
            cid = class_of[e.head]
            d = self.degrees[cid - 1]
            self.head_class.append(cid - 1)
            self.in_port0.append(e.in_port - 1)
            self.succ_by_port.append(tuple(out_edge[(e.head, p)] for p in range(1, d + 1)))

    def successor(self, perm_images: list[tuple[int, ...]]) -> list[int]:
        """0-based successor array for the routing given as per-class images."""
        return [
            table[perm_images[c][i] - 1]
            for table, c, i in zip(self.succ_by_port, self.head_class, self.in_port0)
        ]

    def cycle_count(self, perm_images: list[tuple[int, ...]]) -> int:
        succ = self.successor(perm_images)
        seen = bytearray(len(succ))
        count = 0
        for start in range(len(succ)):
            if seen[start]:
                continue
            count += 1
            p = start
            while not seen[p]:
                seen[p] = 1
                p = succ[p]
        return count


def _check_enumeration_cap(degrees: tuple[int, ...], max_routings: int) -> int:
    total = 1
    for d in degrees:
        total *= math.factorial(d)
    if total > max_routings:
        raise CapExceededError(
            f"{total} respecting routings exceed the enumeration cap of {max_routings}"
        )
    return total


def successor_permutation(
    circuit: SwitchingCircuit, polarization: Polarization, routing: Routing
) -> Permutation:
    """The edge-id permutation induced by a routing: the edge arriving at
    vertex v on in-port i continues through the out-port rho_v(i)."""
    engine = _Engine(circuit, polarization)
    images = _routing_images(engine, routing)
    return Permutation(s + 1 for s in engine.successor(images))


def _routing_images(engine: _Engine, routing: Routing) -> list[tuple[int, ...]]:
    if len(routing.perms) != len(engine.degrees):
        raise ValidationError(
            f"routing has {len(routing.perms)} class permutations, polarization has {len(engine.degrees)} classes"
        )
    for cid, (perm, d) in enumerate(zip(routing.perms, engine.degrees), start=1):
        if perm.n != d:
            raise ValidationError(
                f"class {cid}: routing degree {perm.n} does not match class valency {d}"
            )
    return [p.image for p in routing.perms]


def count_routing_cycles(
    circuit: SwitchingCircuit, polarization: Polarization, routing: Routing
) -> int:
    """Number of directed cycles in the edge decomposition induced by the routing."""
    engine = _Engine(circuit, polarization)
    return engine.cycle_count(_routing_images(engine, routing))


def enumerate_routings(
    circuit: SwitchingCircuit,
    polarization: Polarization,
    max_routings: int = DEFAULT_MAX_ROUTINGS,
) -> Iterator[Routing]:
    """Yield every respecting routing exactly once.

    Order is pinned for reproducibility: classes ascending by id, each
    class's permutations in lexicographic order of their image tables, the
    last class varying fastest.
    """
    engine = _Engine(circuit, polarization)
    _check_enumeration_cap(engine.degrees, max_routings)
    per_class = [
        [Permutation(img) for img in itertools.permutations(range(1, d + 1))]
        for d in engine.degrees
    ]
    for combo in itertools.product(*per_class):
        yield Routing(tuple(combo))


@dataclass(frozen=True)
class MaxRoutingResult:
    max_cycles: int
    optimal_count: int
    witness: Routing


def max_routing(
    circuit: SwitchingCircuit,
    polarization: Polarization,
    max_routings: int = DEFAULT_MAX_ROUTINGS,
) -> MaxRoutingResult:
    """Maximize the cycle count over all respecting routings.

    Returns the maximum, how many routings attain it, and the first
    attaining routing in enumeration order.
    """
    engine = _Engine(circuit, polarization)
    _check_enumeration_cap(engine.degrees, max_routings)
    per_class = [
        list(itertools.permutations(range(1, d + 1))) for d in engine.degrees
    ]
    best = 0
    best_count = 0
    best_combo: tuple[tuple[int, ...], ...] | None = None
    for combo in itertools.product(*per_class):
        cycles = engine.cycle_count(list(combo))
        if cycles > best:
            best, best_count, best_combo = cycles, 1, combo
        elif cycles == best:
            best_count += 1
    assert best_combo is not None
    witness = Routing(tuple(Permutation(img) for img in best_combo))
    return MaxRoutingResult(best, best_count, witness)


def count_routings_with_cycles(
    circuit: SwitchingCircuit,
    polarization: Polarization,
    target: int,
    max_routings: int = DEFAULT_MAX_ROUTINGS,
) -> int:
    """How many respecting routings induce exactly `target` cycles."""
    engine = _Engine(circuit, polarization)
    _check_enumeration_cap(engine.degrees, max_routings)
    per_class = [
        list(itertools.permutations(range(1, d + 1))) for d in engine.degrees
    ]
    count = 0
    for combo in itertools.product(*per_class):
        if engine.cycle_count(list(combo)) == target:
            count += 1
    return count


def decide_routing(
    circuit: SwitchingCircuit,
    polarization: Polarization,
    k: int,
    max_routings: int = DEFAULT_MAX_ROUTINGS,
) -> bool:
    """Is there a respecting routing with at least k cycles?"""
    return max_routing(circuit, polarization, max_routings).max_cycles >= k


def cycle_count_distribution(
    circuit: SwitchingCircuit,
    polarization: Polarization,
    max_routings: int = DEFAULT_MAX_ROUTINGS,
) -> dict[int, int]:
    """Histogram: cycle count -> number of respecting routings inducing it."""
    engine = _Engine(circuit, polarization)
    _check_enumeration_cap(engine.degrees, max_routings)
    per_class = [
        list(itertools.permutations(range(1, d + 1))) for d in engine.degrees
    ]
    out: dict[int, int] = {}
    for combo in itertools.product(*per_class):
        c = engine.cycle_count(list(combo))
        out[c] = out.get(c, 0) + 1
    return out
