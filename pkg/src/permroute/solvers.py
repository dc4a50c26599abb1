"""Brute-force decision and optimization oracles.

Everything here enumerates exhaustively and is meant for desk-scale
instances: subgroup distance by generator-subset enumeration, Cayley
distance by breadth-first search over all of S_n, and a capped closure
for small general generator lists. Caps raise instead of approximating.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .errors import CapExceededError, ValidationError
from .perms import IdsGeneratorSet, Permutation, _cycle_count_raw, cayley_distance, validate_ids
from .transforms import IdsDistanceInstance

DEFAULT_MAX_GENERATORS = 24
DEFAULT_MAX_BFS_DEGREE = 7
DEFAULT_MAX_CLOSURE = 1 << 20


def _gray_toggle_order(t: int) -> Iterable[tuple[int, int]]:
    """Yield (mask, toggled generator index 0-based) walking the Gray code.

    Successive masks differ in exactly one bit, so the running group
    element is updated by applying one generator's transpositions.
    """
    for k in range(1, 1 << t):
        bit = (k & -k).bit_length() - 1
        yield k ^ (k >> 1), bit


def distance_to_ids_subgroup(
    instance: IdsDistanceInstance, max_generators: int = DEFAULT_MAX_GENERATORS
) -> tuple[int, tuple[int, ...]]:
    """Exact min over all 2^t subgroup elements of the distance to pi.

    Returns (distance, witness subset of 1-based generator indices). Ties
    prefer the least subset bitmask (bit j-1 standing for generator j), so
    results are deterministic and independent of enumeration order.
    """
    validate_ids(instance.ids)
    gens = instance.ids.generators
    t = len(gens)
    if t > max_generators:
        raise CapExceededError(f"{t} generators exceed the subset-enumeration cap of {max_generators}")
    n = instance.ids.n
    pi_img = instance.pi.image
    eta = list(range(1, n + 1))

    def current_distance() -> int:
        # d(eta, pi) = n - cycles(eta^-1 pi) and eta is an involution
        return n - _cycle_count_raw(tuple(eta[p - 1] for p in pi_img))

    best_d = current_distance()
    best_mask = 0
    for mask, bit in _gray_toggle_order(t):
        for x, y in gens[bit]:
            eta[x - 1], eta[y - 1] = eta[y - 1], eta[x - 1]
        d = current_distance()
        if d < best_d or (d == best_d and mask < best_mask):
            best_d, best_mask = d, mask
    subset = tuple(j + 1 for j in range(t) if best_mask >> j & 1)
    return best_d, subset


def decide_distance(
    instance: IdsDistanceInstance, max_generators: int = DEFAULT_MAX_GENERATORS
) -> bool:
    """Is some element of the generated subgroup within bound_k of pi?"""
    distance, _ = distance_to_ids_subgroup(instance, max_generators)
    return distance <= instance.bound_k


def count_elements_at_distance(
    instance: IdsDistanceInstance,
    distance: int,
    max_generators: int = DEFAULT_MAX_GENERATORS,
) -> int:
    """How many subgroup elements lie at exactly the given distance from pi."""
    validate_ids(instance.ids)
    gens = instance.ids.generators
    t = len(gens)
    if t > max_generators:
        raise CapExceededError(f"{t} generators exceed the subset-enumeration cap of {max_generators}")
    n = instance.ids.n
    pi_img = instance.pi.image
    eta = list(range(1, n + 1))
    count = 1 if n - _cycle_count_raw(tuple(pi_img)) == distance else 0
    for _, bit in _gray_toggle_order(t):
        for x, y in gens[bit]:
            eta[x - 1], eta[y - 1] = eta[y - 1], eta[x - 1]
        if n - _cycle_count_raw(tuple(eta[p - 1] for p in pi_img)) == distance:
            count += 1
    return count


def bfs_cayley_distance(
    p: Permutation, q: Permutation, max_degree: int = DEFAULT_MAX_BFS_DEGREE
) -> int:
    """Shortest-path distance from p to q in the graph on S_n whose edges
    are right-multiplications by transpositions.

    Independent of the cycle-count formula on purpose: this is the oracle
    used to validate it. Degree is capped (state space n!).
    """
    if p.n != q.n:
        raise ValidationError(f"degree mismatch: {p.n} vs {q.n}")
    n = p.n
    if n > max_degree:
        raise CapExceededError(f"degree {n} exceeds the BFS cap of {max_degree}")
    start, goal = p.image, q.image
    if start == goal:
        return 0
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        d = dist[cur]
        for i, j in pairs:
            nxt = list(cur)
            nxt[i], nxt[j] = nxt[j], nxt[i]
            key = tuple(nxt)
            if key not in dist:
                if key == goal:
                    return d + 1
                dist[key] = d + 1
                queue.append(key)
    raise AssertionError("unreachable: S_n is connected under transpositions")


def capped_closure(
    generators: Iterable[Permutation],
    n: int | None = None,
    cap: int = DEFAULT_MAX_CLOSURE,
) -> frozenset[Permutation]:
    """The full subgroup generated by the given permutations, if its size
    stays within the cap.

    With no generators the degree n must be supplied; the closure is {I}.
    """
    gens = list(generators)
    if gens:
        n = gens[0].n
        for g in gens:
            if g.n != n:
                raise ValidationError("generators must share one degree")
    elif n is None:
        raise ValidationError("degree n is required when there are no generators")
    identity = Permutation.identity(n)
    elements = {identity}
    frontier = deque([identity])
    while frontier:
        e = frontier.popleft()
        for g in gens:
            product = Permutation(e.image[j - 1] for j in g.image)
            if product not in elements:
                if len(elements) >= cap:
                    raise CapExceededError(f"closure exceeds the cap of {cap} elements")
                elements.add(product)
                frontier.append(product)
    return frozenset(elements)


def distance_via_closure(
    instance: IdsDistanceInstance, cap: int = DEFAULT_MAX_CLOSURE
) -> int:
    """Distance computed the slow way: materialize the subgroup, minimize.

    Cross-check for distance_to_ids_subgroup; both enumerate the same
    subgroup, by different routes.
    """
    gens = [
        _generator_permutation(instance.ids, j)
        for j in range(1, len(instance.ids.generators) + 1)
    ]
    closure = capped_closure(gens, n=instance.ids.n, cap=cap)
    return min(cayley_distance(eta, instance.pi) for eta in closure)


def _generator_permutation(ids: IdsGeneratorSet, j: int) -> Permutation:
    return Permutation.from_cycles(ids.n, [(t.x, t.y) for t in ids.generators[j - 1]])
