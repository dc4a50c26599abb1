"""Shared random-instance generators and independent oracles.

The decomposition oracle here deliberately avoids the routing machinery:
it enumerates set partitions of the edge set and keeps those whose blocks
are balanced and weakly connected (exactly the edge sets traceable as one
closed trail), so it can cross-check max_routing from a different angle.
"""

import random
from collections import Counter, defaultdict

from permroute import (
    CnfFormula,
    Edge,
    IdsDistanceInstance,
    IdsGeneratorSet,
    Literal,
    Permutation,
    Polarization,
    SwitchingCircuit,
    Transposition,
)


def random_permutation(rng: random.Random, n: int) -> Permutation:
    img = list(range(1, n + 1))
    rng.shuffle(img)
    return Permutation(img)


def random_circuit(rng: random.Random, max_vertices=4, max_valency=2, max_edges=8) -> SwitchingCircuit:
    while True:
        nv = rng.randint(1, max_vertices)
        valencies = [rng.randint(1, max_valency) for _ in range(nv)]
        if sum(valencies) <= max_edges:
            break
    vertices = tuple(range(1, nv + 1))
    out_stubs = [(v, p) for v in vertices for p in range(1, valencies[v - 1] + 1)]
    in_stubs = list(out_stubs)
    rng.shuffle(in_stubs)
    edges = tuple(
        Edge(i + 1, t, tp, h, hp)
        for i, ((t, tp), (h, hp)) in enumerate(zip(out_stubs, in_stubs))
    )
    return SwitchingCircuit(vertices, edges)


def random_polarization(rng: random.Random, circuit: SwitchingCircuit) -> Polarization:
    by_valency = defaultdict(list)
    for v, d in sorted(circuit.valencies().items()):
        by_valency[d].append(v)
    classes = []
    for d in sorted(by_valency):
        group = by_valency[d]
        rng.shuffle(group)
        while group:
            k = rng.randint(1, len(group))
            classes.append(tuple(sorted(group[:k])))
            group = group[k:]
    rng.shuffle(classes)
    return Polarization(tuple(classes))


def random_ids_instance(rng: random.Random, max_n=8, max_t=3, max_width=3) -> IdsDistanceInstance:
    n = rng.randint(2, max_n)
    points = list(range(1, n + 1))
    rng.shuffle(points)
    generators = []
    for _ in range(rng.randint(0, max_t)):
        if len(points) < 2:
            break
        pairs = []
        for _ in range(rng.randint(1, max_width)):
            if len(points) < 2:
                break
            x, y = points.pop(), points.pop()
            pairs.append(Transposition(min(x, y), max(x, y)))
        if pairs:
            generators.append(tuple(pairs))
    return IdsDistanceInstance(
        ids=IdsGeneratorSet(n, tuple(generators)),
        pi=random_permutation(rng, n),
        bound_k=rng.randint(0, n),
    )


def random_3sat(rng: random.Random, max_vars=6, max_clauses=5) -> CnfFormula:
    """Random 3-SAT formula in which every declared variable occurs."""
    nv = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        width = min(rng.randint(1, 3), nv)
        chosen = rng.sample(range(1, nv + 1), width)
        clauses.append(tuple(Literal(v, rng.random() < 0.5) for v in chosen))
    used = sorted({l.variable for c in clauses for l in c})
    remap = {v: i + 1 for i, v in enumerate(used)}
    remapped = tuple(
        tuple(Literal(remap[l.variable], l.negated) for l in c) for c in clauses
    )
    return CnfFormula(len(used), remapped)


# ---------------------------------------------------------------- oracles


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _is_closed_trail_set(block) -> bool:
    # one closed trail covering the block exists iff in-degree equals
    # out-degree at every vertex and the block is weakly connected
    if Counter(e.tail for e in block) != Counter(e.head for e in block):
        return False
    vertices = {e.tail for e in block} | {e.head for e in block}
    adjacency = defaultdict(set)
    for e in block:
        adjacency[e.tail].add(e.head)
        adjacency[e.head].add(e.tail)
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vertices


def decomposition_max_cycles(circuit: SwitchingCircuit) -> int:
    """Max number of blocks over all partitions of the edges into closed trails."""
    best = 0
    for part in set_partitions(list(circuit.edges)):
        if len(part) > best and all(_is_closed_trail_set(b) for b in part):
            best = len(part)
    return best
