"""The Boolean gadget circuits and their cycle-count truth tables.

Each gadget is a small polarized switching circuit with one polarization
class per literal slot. Routing a class with the swap (1 2) means "true",
routing it with the identity means "false"; a negated literal slot differs
from the positive one exactly by exchanging the in-port labels 1 and 2 at
that slot's vertices, which flips the slot's truth-table rows.

The required tables (the contract every construction is verified against):

    I(a):     2 cycles if a, else 1
    E(a,b):   2 cycles if a == b, else 1
    F(a,b):   1 cycle if a == b == 0, 3 if a == b == 1, else 2
    G(a,b):   2 cycles if a == b == 0, else 4   (disjoint union of F(a,b) and E(not a, b))
    A(a,b,c): 1 cycle if a == b == c == 0, else 3

Cycle-count parity forces F's classes to have odd size (toggling a class
recomposes the successor permutation with one transposition per vertex),
so F is built on two vertices, one per variable, and G on four.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .circuits import (
    Edge,
    Polarization,
    Routing,
    SwitchingCircuit,
    count_routing_cycles,
    validate_circuit,
)
from .cnf import Literal
from .errors import GadgetVerificationError, ValidationError
from .perms import Permutation

IDENTITY2 = Permutation((1, 2))
SWAP2 = Permutation((2, 1))


@dataclass
class IdAllocator:
    """Hands out fresh vertex and edge ids so fragments compose by plain
    disjoint union, without any renaming."""

    next_vertex: int = 1
    next_edge: int = 1

    def vertex(self) -> int:
        v = self.next_vertex
        self.next_vertex += 1
        return v

    def edge(self) -> int:
        e = self.next_edge
        self.next_edge += 1
        return e


@dataclass(frozen=True)
class GadgetFragment:
    name: str
    literals: tuple[Literal, ...]
    circuit: SwitchingCircuit
    polarization: Polarization
    # literal slot (0-based) -> class id in this fragment's polarization
    class_of_literal: tuple[int, ...]


def _require_distinct(literals: Sequence[Literal]) -> None:
    variables = [l.variable for l in literals]
    if len(set(variables)) != len(variables):
        raise ValidationError(
            f"gadget slots must use distinct variables, got {[str(l) for l in literals]}"
        )


def _fragment(
    name: str,
    literals: Sequence[Literal],
    alloc: IdAllocator | None,
    vertex_count_per_slot: Sequence[int],
    wiring: Callable[[Sequence[Sequence[int]]], list[tuple[int, int, int, int]]],
) -> GadgetFragment:
    """Assemble a fragment from a wiring function.

    `wiring` receives the per-slot vertex id lists and returns edge tuples
    (tail, out_port, head, in_port) for the all-positive gadget; negated
    slots then get their in-port labels 1 and 2 exchanged.
    """
    _require_distinct(literals)
    alloc = alloc or IdAllocator()
    slots = [[alloc.vertex() for _ in range(k)] for k in vertex_count_per_slot]
    raw = wiring(slots)
    negated: set[int] = set()
    for lit, members in zip(literals, slots):
        if lit.negated:
            negated.update(members)
    edges = []
    for tail, out_port, head, in_port in raw:
        if head in negated:
            in_port = 3 - in_port
        edges.append(Edge(alloc.edge(), tail, out_port, head, in_port))
    circuit = SwitchingCircuit(
        vertices=tuple(v for slot in slots for v in slot),
        edges=tuple(edges),
    )
    polarization = Polarization(tuple(tuple(slot) for slot in slots))
    return GadgetFragment(
        name=name,
        literals=tuple(literals),
        circuit=circuit,
        polarization=polarization,
        class_of_literal=tuple(range(1, len(slots) + 1)),
    )


def build_I(lit: Literal, alloc: IdAllocator | None = None) -> GadgetFragment:
    """One vertex, two crossed loops: 2 cycles iff the literal holds."""

    def wiring(slots):
        (v,) = slots[0]
        return [(v, 1, v, 2), (v, 2, v, 1)]

    return _fragment("I", [lit], alloc, [1], wiring)


def build_E(lit1: Literal, lit2: Literal, alloc: IdAllocator | None = None) -> GadgetFragment:
    """Two vertices joined by two parallel pairs: 2 cycles iff the slots agree."""

    def wiring(slots):
        (u,), (w,) = slots
        return [
            (u, 1, w, 1),
            (u, 2, w, 2),
            (w, 1, u, 1),
            (w, 2, u, 2),
        ]

    return _fragment("E", [lit1, lit2], alloc, [1, 1], wiring)


def build_F(lit1: Literal, lit2: Literal, alloc: IdAllocator | None = None) -> GadgetFragment:
    """Two vertices, a crossing pair and one loop each: counts 1/2/2/3."""

    def wiring(slots):
        (u,), (w,) = slots
        return [
            (u, 1, w, 2),
            (w, 1, u, 2),
            (u, 2, u, 1),
            (w, 2, w, 1),
        ]

    return _fragment("F", [lit1, lit2], alloc, [1, 1], wiring)


def build_G(lit1: Literal, lit2: Literal, alloc: IdAllocator | None = None) -> GadgetFragment:
    """Disjoint union of F(a,b) and E(not a, b): 4 cycles iff a or b, else 2."""

    def wiring(slots):
        (uf, ue), (wf, we) = slots
        edges = [
            # F part on (uf, wf)
            (uf, 1, wf, 2),
            (wf, 1, uf, 2),
            (uf, 2, uf, 1),
            (wf, 2, wf, 1),
            # E part on (ue, we), first slot negated below
            (ue, 1, we, 1),
            (ue, 2, we, 2),
            (we, 1, ue, 1),
            (we, 2, ue, 2),
        ]
        return edges

    _require_distinct([lit1, lit2])
    alloc = alloc or IdAllocator()
    fragment = _fragment("G", [lit1, lit2], alloc, [2, 2], wiring)
    # the E half sees the first slot negated: exchange in-ports at ue,
    # on top of whatever lit1's own polarity already did
    ue = fragment.polarization.classes[0][1]
    edges = tuple(
        Edge(e.id, e.tail, e.out_port, e.head, 3 - e.in_port) if e.head == ue else e
        for e in fragment.circuit.edges
    )
    circuit = SwitchingCircuit(fragment.circuit.vertices, edges)
    return GadgetFragment(
        name="G",
        literals=fragment.literals,
        circuit=circuit,
        polarization=fragment.polarization,
        class_of_literal=fragment.class_of_literal,
    )


def build_A(
    lit1: Literal, lit2: Literal, lit3: Literal, alloc: IdAllocator | None = None
) -> GadgetFragment:
    """Twelve vertices in three classes of four: 3 cycles iff some slot holds."""

    def wiring(slots):
        a, b, c = slots  # four vertices per slot
        return [
            (a[0], 2, b[0], 2),
            (b[0], 2, c[0], 2),
            (a[3], 1, b[3], 1),
            (b[3], 1, c[3], 1),
            (a[0], 1, a[1], 2),
            (a[1], 2, b[0], 1),
            (b[0], 1, b[1], 2),
            (b[1], 2, c[0], 1),
            (c[0], 1, c[1], 2),
            (a[1], 1, a[2], 2),
            (a[2], 2, b[1], 1),
            (b[1], 1, b[2], 2),
            (b[2], 2, c[1], 1),
            (c[1], 1, c[2], 2),
            (a[2], 1, a[3], 2),
            (a[3], 2, b[2], 1),
            (b[2], 1, b[3], 2),
            (b[3], 2, c[2], 1),
            (c[2], 1, c[3], 2),
            (c[2], 2, a[0], 2),
            (c[3], 1, a[0], 1),
            (c[1], 2, a[1], 1),
            (c[0], 2, a[2], 1),
            (c[3], 2, a[3], 1),
        ]

    return _fragment("A", [lit1, lit2, lit3], alloc, [4, 4, 4], wiring)


def expected_cycles(name: str, values: tuple[int, ...]) -> int:
    """Required cycle count for a gadget under slot truth values."""
    if name == "I":
        (a,) = values
        return 2 if a else 1
    if name == "E":
        a, b = values
        return 2 if a == b else 1
    if name == "F":
        a, b = values
        if a == b:
            return 3 if a else 1
        return 2
    if name == "G":
        a, b = values
        return 2 if (a, b) == (0, 0) else 4
    if name == "A":
        return 1 if values == (0, 0, 0) else 3
    raise ValidationError(f"unknown gadget {name!r}")


def routing_for_values(fragment: GadgetFragment, values: Sequence[int]) -> Routing:
    """Routing that assigns each slot's truth value: swap for 1, identity for 0."""
    if len(values) != len(fragment.class_of_literal):
        raise ValidationError("one truth value per literal slot is required")
    perms = [IDENTITY2] * len(fragment.polarization.classes)
    for slot, value in enumerate(values):
        perms[fragment.class_of_literal[slot] - 1] = SWAP2 if value else IDENTITY2
    return Routing(tuple(perms))


@dataclass(frozen=True)
class GadgetTableRow:
    gadget: str
    assignment: tuple[int, ...]
    expected: int
    actual: int

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class GadgetReport:
    rows: tuple[GadgetTableRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def mismatches(self) -> tuple[GadgetTableRow, ...]:
        return tuple(r for r in self.rows if not r.ok)


Builders = Mapping[str, Callable[..., GadgetFragment]]

DEFAULT_BUILDERS: dict[str, Callable[..., GadgetFragment]] = {
    "I": build_I,
    "E": build_E,
    "F": build_F,
    "G": build_G,
    "A": build_A,
}

SLOT_COUNTS = {"I": 1, "E": 2, "F": 2, "G": 2, "A": 3}


def verify_gadget_tables(builders: Builders | None = None) -> GadgetReport:
    """Route every gadget over every assignment and compare with its table.

    Returns the full 22-row report (I: 2 rows, E/F/G: 4 each, A: 8). Any
    mismatch raises GadgetVerificationError naming the first offending
    gadget and assignment; the partial report rides on the exception.
    """
    builders = dict(DEFAULT_BUILDERS) if builders is None else dict(builders)
    rows: list[GadgetTableRow] = []
    for name in ("I", "E", "F", "G", "A"):
        build = builders[name]
        slots = SLOT_COUNTS[name]
        fragment = build(*(Literal(v) for v in range(1, slots + 1)))
        validate_circuit(fragment.circuit, fragment.polarization)
        for values in itertools.product((0, 1), repeat=slots):
            actual = count_routing_cycles(
                fragment.circuit, fragment.polarization, routing_for_values(fragment, values)
            )
            rows.append(GadgetTableRow(name, values, expected_cycles(name, values), actual))
    report = GadgetReport(tuple(rows))
    if not report.ok:
        first = report.mismatches[0]
        raise GadgetVerificationError(
            f"gadget {first.gadget} at assignment {first.assignment}: "
            f"expected {first.expected} cycles, got {first.actual}",
            report=report,
        )
    return report
