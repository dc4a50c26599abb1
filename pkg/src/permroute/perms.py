"""Permutation algebra on the points 1..n.

Permutations are stored as image tables. The composition convention is
"apply the right argument first": compose(p, q) maps i to p(q(i)). All
distance facts below are convention-independent because cycle type is
preserved under inversion.

Also defines involution generator sets with globally disjoint supports
(each generator a product of disjoint transpositions, no point shared
between any two transpositions anywhere in the set), which generate
elementary Abelian subgroups of exponent 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import ValidationError


class Permutation:
    """A bijection on {1..n}, held as the tuple of images of 1, 2, ..., n."""

    __slots__ = ("image",)

    def __init__(self, image: Iterable[int]):
        img = tuple(image)
        if sorted(img) != list(range(1, len(img) + 1)):
            raise ValidationError(f"not a permutation of 1..{len(img)}: {img!r}")
        self.image = img

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Iterable[int]]) -> "Permutation":
        """Build a permutation of 1..n from disjoint cycles of points."""
        img = list(range(1, n + 1))
        seen: set[int] = set()
        for cycle in cycles:
            cyc = list(cycle)
            for point in cyc:
                if not 1 <= point <= n:
                    raise ValidationError(f"cycle point {point} outside 1..{n}")
                if point in seen:
                    raise ValidationError(f"point {point} appears in two cycles")
                seen.add(point)
            for i, point in enumerate(cyc):
                img[point - 1] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, point: int) -> int:
        return self.image[point - 1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"Permutation({list(self.image)})"

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        """Orbits of length >= 2, each starting at its smallest point."""
        out = []
        seen = [False] * self.n
        for start in range(1, self.n + 1):
            if seen[start - 1] or self.image[start - 1] == start:
                continue
            cyc = []
            p = start
            while not seen[p - 1]:
                seen[p - 1] = True
                cyc.append(p)
                p = self.image[p - 1]
            out.append(tuple(cyc))
        return out


class Transposition(NamedTuple):
    x: int
    y: int


def compose(p: Permutation, q: Permutation) -> Permutation:
    """compose(p, q)(i) = p(q(i)); q is applied first."""
    if p.n != q.n:
        raise ValidationError(f"degree mismatch: {p.n} vs {q.n}")
    pi = p.image
    return Permutation(pi[j - 1] for j in q.image)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for i, v in enumerate(p.image):
        inv[v - 1] = i + 1
    return Permutation(inv)


def cycle_count(p: Permutation) -> int:
    """Number of orbits of p on {1..n}, counting fixed points as 1-cycles."""
    return _cycle_count_raw(p.image)


def _cycle_count_raw(image: tuple[int, ...]) -> int:
    seen = bytearray(len(image))
    count = 0
    for start in range(len(image)):
        if seen[start]:
            continue
        count += 1
        p = start
        while not seen[p]:
            seen[p] = 1
            p = image[p] - 1
    return count


def cayley_distance(p: Permutation, q: Permutation) -> int:
    """Minimum number of transpositions turning p into q.

    Equals n minus the number of cycles of p^-1 q, which is the graph
    distance in the Cayley graph of S_n generated by all transpositions.
    """
    if p.n != q.n:
        raise ValidationError(f"degree mismatch: {p.n} vs {q.n}")
    inv_p = inverse(p)
    return p.n - _cycle_count_raw(tuple(inv_p.image[j - 1] for j in q.image))


@dataclass(frozen=True)
class IdsGeneratorSet:
    """Involution generators with globally disjoint supports.

    Each generator is a nonempty tuple of transpositions; no point may
    appear twice anywhere in the whole set. The generated subgroup is
    elementary Abelian of exponent 2, with exactly 2^t distinct elements.
    """

    n: int
    generators: tuple[tuple[Transposition, ...], ...]

    @property
    def width(self) -> int:
        return max((len(g) for g in self.generators), default=0)

    def support(self) -> frozenset[int]:
        return frozenset(p for g in self.generators for t in g for p in t)


def validate_ids(gens: IdsGeneratorSet) -> int:
    """Check the disjoint-support invariants and return the width max_j r_j.

    Raises ValidationError naming the first repeated point, the first
    out-of-range point, or the first empty generator.
    """
    seen: set[int] = set()
    for j, gen in enumerate(gens.generators, start=1):
        if len(gen) == 0:
            raise ValidationError(f"generator {j} is empty")
        for t in gen:
            for point in (t.x, t.y):
                if not 1 <= point <= gens.n:
                    raise ValidationError(
                        f"generator {j}: point {point} outside 1..{gens.n}"
                    )
                if point in seen:
                    raise ValidationError(
                        f"point {point} appears in more than one transposition"
                    )
                seen.add(point)
            if t.x == t.y:
                raise ValidationError(f"generator {j}: degenerate transposition ({t.x} {t.y})")
    return gens.width


def ids_element(gens: IdsGeneratorSet, subset: Iterable[int]) -> Permutation:
    """Product of the selected generators (1-based indices).

    Order is irrelevant: disjoint supports make the generators commute.
    """
    img = list(range(1, gens.n + 1))
    for j in subset:
        if not 1 <= j <= len(gens.generators):
            raise ValidationError(f"generator index {j} outside 1..{len(gens.generators)}")
        for x, y in gens.generators[j - 1]:
            img[x - 1], img[y - 1] = img[y - 1], img[x - 1]
    return Permutation(img)


def all_ids_elements(gens: IdsGeneratorSet) -> Iterator[tuple[tuple[int, ...], Permutation]]:
    """Yield (subset, element) for every subset of generators, in bitmask order."""
    t = len(gens.generators)
    for mask in range(1 << t):
        subset = tuple(j + 1 for j in range(t) if mask >> j & 1)
        yield subset, ids_element(gens, subset)
