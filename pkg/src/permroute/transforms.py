"""The three constructive transformations, with witness maps.

* 3-SAT formula -> polarized switching circuit whose respecting routings
  reach M = 3b + 4g + 2i + 2e cycles exactly on satisfying assignments
  (b, g, i, e counting the 3-, 2-, 1-literal and equivalence gadgets).
* Valency-2 circuit -> subgroup-distance instance over disjoint-support
  involutions, and back. Both directions carry the routing <-> group
  element correspondence, under which cycle counts agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuits import (
    Edge,
    Polarization,
    Routing,
    SwitchingCircuit,
    class_valencies,
    identity_routing,
    successor_permutation,
    validate_circuit,
)
from .cnf import Assignment, CnfFormula, Literal, is_3sat_normalized
from .errors import ValidationError
from .gadgets import (
    IDENTITY2,
    SWAP2,
    GadgetFragment,
    IdAllocator,
    build_A,
    build_E,
    build_G,
    build_I,
)
from .perms import (
    IdsGeneratorSet,
    Permutation,
    Transposition,
    ids_element,
    validate_ids,
)


@dataclass(frozen=True)
class SplitFormula:
    """A 3-SAT formula rewritten so every variable occurs at most 3 times.

    The j-th occurrence of variable x_i becomes a fresh variable (keeping
    the literal's polarity), and chained equivalences tie the copies of
    each original variable together. `formula` holds only the rewritten
    original clauses; `equivalence_clauses` holds the chain pairs.
    origin[y-1] = (original variable, occurrence number) for variable y.
    """

    formula: CnfFormula
    origin: tuple[tuple[int, int], ...]
    equivalence_clauses: tuple[tuple[int, int], ...]

    @property
    def num_variables(self) -> int:
        return self.formula.num_variables

    def cnf(self) -> CnfFormula:
        """The whole split formula as plain CNF, equivalences expanded into
        two 2-literal clauses each."""
        clauses = list(self.formula.clauses)
        for p, q in self.equivalence_clauses:
            clauses.append((Literal(p), Literal(q, True)))
            clauses.append((Literal(p, True), Literal(q)))
        return CnfFormula(self.formula.num_variables, tuple(clauses))


def split_variables(formula: CnfFormula) -> SplitFormula:
    """Rename each occurrence of each variable apart and chain them with
    equivalences; the model count is preserved."""
    if not is_3sat_normalized(formula):
        raise ValidationError("input must be 3-SAT normalized (1..3 distinct-variable literals per clause)")
    occurrence_count: dict[int, int] = {}
    copies: dict[int, list[int]] = {}
    origin: list[tuple[int, int]] = []
    new_clauses: list[tuple[Literal, ...]] = []
    next_y = 1
    for clause in formula.clauses:
        lits = []
        for lit in clause:
            j = occurrence_count.get(lit.variable, 0) + 1
            occurrence_count[lit.variable] = j
            copies.setdefault(lit.variable, []).append(next_y)
            origin.append((lit.variable, j))
            lits.append(Literal(next_y, lit.negated))
            next_y += 1
        new_clauses.append(tuple(lits))
    equivalences: list[tuple[int, int]] = []
    for var in sorted(copies):
        ys = copies[var]
        for a, b in zip(ys, ys[1:]):
            equivalences.append((a, b))
    return SplitFormula(
        formula=CnfFormula(next_y - 1, tuple(new_clauses)),
        origin=tuple(origin),
        equivalence_clauses=tuple(equivalences),
    )


@dataclass(frozen=True)
class SatCircuitInstance:
    """Circuit built from a 3-SAT formula, with the bookkeeping needed to
    decode routings back into assignments."""

    circuit: SwitchingCircuit
    polarization: Polarization
    target_m: int
    count_b: int
    count_g: int
    count_i: int
    count_e: int
    # class id - 1 -> split-formula variable routed by that class
    class_to_variable: tuple[int, ...]
    split: SplitFormula


def sat_to_circuit(formula: CnfFormula) -> SatCircuitInstance:
    """Instantiate one gadget per split-formula clause and merge all vertices
    of each variable into a single polarization class.

    Clause gadgets: 3 literals -> A, 2 -> G, 1 -> I; each equivalence -> E.
    """
    split = split_variables(formula)
    alloc = IdAllocator()
    members: list[list[int]] = [[] for _ in range(split.num_variables)]
    fragments: list[GadgetFragment] = []
    b = g = i = e = 0

    def place(fragment: GadgetFragment, literals: tuple[Literal, ...]) -> None:
        for slot, lit in enumerate(literals):
            cls = fragment.polarization.classes[fragment.class_of_literal[slot] - 1]
            members[lit.variable - 1].extend(cls)
        fragments.append(fragment)

    for clause in split.formula.clauses:
        if len(clause) == 3:
            frag = build_A(*clause, alloc=alloc)
            b += 1
        elif len(clause) == 2:
            frag = build_G(*clause, alloc=alloc)
            g += 1
        else:
            frag = build_I(clause[0], alloc=alloc)
            i += 1
        place(frag, clause)
    for p, q in split.equivalence_clauses:
        frag = build_E(Literal(p), Literal(q), alloc=alloc)
        e += 1
        place(frag, (Literal(p), Literal(q)))

    circuit = SwitchingCircuit(
        vertices=tuple(v for f in fragments for v in f.circuit.vertices),
        edges=tuple(edge for f in fragments for edge in f.circuit.edges),
    )
    polarization = Polarization(tuple(tuple(m) for m in members))
    return SatCircuitInstance(
        circuit=circuit,
        polarization=polarization,
        target_m=3 * b + 4 * g + 2 * i + 2 * e,
        count_b=b,
        count_g=g,
        count_i=i,
        count_e=e,
        class_to_variable=tuple(range(1, split.num_variables + 1)),
        split=split,
    )


def assignment_to_routing(sci: SatCircuitInstance, assignment: Assignment) -> Routing:
    """Route each variable class with the swap iff its variable is true."""
    perms = []
    for cid in range(1, len(sci.polarization.classes) + 1):
        variable = sci.class_to_variable[cid - 1]
        perms.append(SWAP2 if assignment.value(variable) else IDENTITY2)
    return Routing(tuple(perms))


@dataclass(frozen=True)
class IdsDistanceInstance:
    """Decision instance: is some product of the generators within Cayley
    distance bound_k of pi?"""

    ids: IdsGeneratorSet
    pi: Permutation
    bound_k: int

    def __post_init__(self):
        if self.pi.n != self.ids.n:
            raise ValidationError(
                f"pi has degree {self.pi.n} but the generators act on {self.ids.n} points"
            )
        if not 0 <= self.bound_k <= self.ids.n:
            raise ValidationError(f"bound {self.bound_k} outside 0..{self.ids.n}")


def valency2_classes(circuit: SwitchingCircuit, polarization: Polarization) -> tuple[int, ...]:
    """Class ids of valency-2 classes, ascending; these produce the generators."""
    return tuple(
        cid
        for cid, d in enumerate(class_valencies(circuit, polarization), start=1)
        if d == 2
    )


def circuit_to_ids(
    circuit: SwitchingCircuit, polarization: Polarization, k: int
) -> IdsDistanceInstance:
    """Translate a valency-<=2 routing question into a distance question.

    Points are edge ids; pi is the identity-routing successor permutation;
    each valency-2 class contributes the product of the transpositions of
    its vertices' two out-edges (valency-1 classes generate only the
    identity and are dropped). A routing with at least k cycles exists iff
    the distance is at most #E - k.
    """
    width, max_valency = validate_circuit(circuit, polarization)
    if max_valency > 2:
        raise ValidationError(f"valency {max_valency} > 2; the translation needs valency <= 2")
    n = circuit.num_edges
    if not 0 <= k <= n:
        raise ValidationError(f"cycle target {k} outside 0..{n}")
    pi = successor_permutation(circuit, polarization, identity_routing(circuit, polarization))
    out_edges: dict[int, dict[int, int]] = {}
    for edge in circuit.edges:
        out_edges.setdefault(edge.tail, {})[edge.out_port] = edge.id
    generators = []
    for cid in valency2_classes(circuit, polarization):
        gen = []
        for v in polarization.classes[cid - 1]:
            a, bb = out_edges[v][1], out_edges[v][2]
            gen.append(Transposition(min(a, bb), max(a, bb)))
        generators.append(tuple(gen))
    ids = IdsGeneratorSet(n, tuple(generators))
    validate_ids(ids)
    return IdsDistanceInstance(ids=ids, pi=pi, bound_k=n - k)


@dataclass(frozen=True)
class IdsCircuit:
    """Circuit form of a distance instance, with the generator <-> class map.

    Cycle counts of respecting routings equal cycle counts of pi * eta on
    the n POINTS of the instance (not on the circuit's edges), so the
    routing threshold is k_routing = n - bound_k.
    """

    instance: IdsDistanceInstance
    circuit: SwitchingCircuit
    polarization: Polarization
    k_routing: int
    # generator j (1-based) -> class id generator_class[j-1]
    generator_class: tuple[int, ...]


def ids_to_circuit(instance: IdsDistanceInstance) -> IdsCircuit:
    """Build the point/pair circuit for a distance instance.

    One valency-1 vertex per point, one valency-2 vertex per transposition
    (x y) of each generator, wired through pi; points outside every
    generator support get a direct pass-through edge to their pi-image so
    valencies balance. Classes: one per generator, singletons for the
    point vertices.
    """
    validate_ids(instance.ids)
    n = instance.ids.n
    pi = instance.pi
    next_vertex = n + 1
    next_edge = 1
    edges: list[Edge] = []
    q_vertices: list[int] = []
    classes: list[tuple[int, ...]] = []
    generator_class: list[int] = []
    support: set[int] = set()
    for gen in instance.ids.generators:
        q_of_gen = []
        for x, y in gen:
            q = next_vertex
            next_vertex += 1
            q_of_gen.append(q)
            q_vertices.append(q)
            support.update((x, y))
            edges.append(Edge(next_edge, x, 1, q, 1)); next_edge += 1
            edges.append(Edge(next_edge, y, 1, q, 2)); next_edge += 1
            edges.append(Edge(next_edge, q, 1, pi(x), 1)); next_edge += 1
            edges.append(Edge(next_edge, q, 2, pi(y), 1)); next_edge += 1
        classes.append(tuple(q_of_gen))
        generator_class.append(len(classes))
    for point in range(1, n + 1):
        if point not in support:
            edges.append(Edge(next_edge, point, 1, pi(point), 1))
            next_edge += 1
    for point in range(1, n + 1):
        classes.append((point,))
    circuit = SwitchingCircuit(
        vertices=tuple(range(1, n + 1)) + tuple(q_vertices),
        edges=tuple(edges),
    )
    polarization = Polarization(tuple(classes))
    return IdsCircuit(
        instance=instance,
        circuit=circuit,
        polarization=polarization,
        k_routing=n - instance.bound_k,
        generator_class=tuple(generator_class),
    )


def subset_routing(ic: IdsCircuit, subset: frozenset[int] | set[int] | tuple[int, ...]) -> Routing:
    """The respecting routing corresponding to a generator subset: each
    selected generator's class gets the swap, everything else the identity."""
    chosen = set(subset)
    degrees = class_valencies(ic.circuit, ic.polarization)
    perms = [Permutation.identity(d) for d in degrees]
    for j, cid in enumerate(ic.generator_class, start=1):
        if j in chosen:
            perms[cid - 1] = SWAP2
    return Routing(tuple(perms))


def routing_to_group_element(ic: IdsCircuit, routing: Routing) -> Permutation:
    """Decode a respecting routing into the corresponding group element:
    the product of the generators whose class is routed with the swap."""
    degrees = class_valencies(ic.circuit, ic.polarization)
    if len(routing.perms) != len(degrees):
        raise ValidationError(
            f"routing has {len(routing.perms)} class permutations, expected {len(degrees)}"
        )
    for cid, (perm, d) in enumerate(zip(routing.perms, degrees), start=1):
        if perm.n != d:
            raise ValidationError(
                f"class {cid}: routing degree {perm.n} does not match class valency {d}"
            )
    subset = [
        j
        for j, cid in enumerate(ic.generator_class, start=1)
        if routing.perms[cid - 1] == SWAP2
    ]
    return ids_element(ic.instance.ids, subset)
