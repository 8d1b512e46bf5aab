"""3D-Matching instances: disjoint P, Q, R of size n and a list of triples."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .errors import InstanceError


@dataclass(frozen=True)
class ThreeDMInstance:
    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        triples = tuple(tuple(int(i) for i in s) for s in self.triples)
        object.__setattr__(self, "triples", triples)
        if self.n < 1:
            raise InstanceError("3DM needs n >= 1")
        if not triples:
            raise InstanceError("3DM needs at least one triple")
        for j, s in enumerate(triples):
            if len(s) != 3:
                raise InstanceError(f"triple {j} does not have three entries")
            if any(not 0 <= i < self.n for i in s):
                raise InstanceError(f"triple {j} = {s} has an index outside [0, {self.n})")
        if len(set(triples)) != len(triples):
            raise InstanceError("duplicate triple")

    @property
    def m(self) -> int:
        return len(self.triples)

    def covers_all(self) -> bool:
        """Every element of P, Q and R lies in some triple."""
        return all(
            {s[axis] for s in self.triples} == set(range(self.n)) for axis in range(3)
        )


def all_instances(n: int, m_max: int) -> Iterator[ThreeDMInstance]:
    """Every instance with universe size n and 1..m_max triples, in lex order."""
    pool = list(product(range(n), repeat=3))
    for m in range(1, m_max + 1):
        for combo in combinations(pool, m):
            yield ThreeDMInstance(n, combo)


def random_instance(rng, n: int, m: int) -> ThreeDMInstance:
    pool = list(product(range(n), repeat=3))
    if m > len(pool):
        raise InstanceError(f"only {len(pool)} distinct triples exist for n={n}")
    return ThreeDMInstance(n, tuple(sorted(rng.sample(pool, m))))
