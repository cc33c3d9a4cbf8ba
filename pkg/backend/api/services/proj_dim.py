"""
Projective dimension of R/I(T) for a forest T.

Components add up. Inside a component with a vertex of degree >= 2 we pick a
splitting vertex v with neighbours v_1..v_n (v_1 a leaf) and use

    pd(T) = max(pd(T - v_1), pd(T - {v, v_1, ..., v_n}) + n)

A component whose degrees are all 1 is a single edge, with pd 1.
"""
import logging
import random
from dataclasses import dataclass, field

from api.errors import DomainError
from api.services.graph_core import (
    Edge,
    Forest,
    SplittingVertex,
    select_splitting_vertex,
    split_components,
    splitting_vertices,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PdStep:
    """One evaluated split in the recursion."""
    vertex: int
    n: int
    edges: int  # size of the component being split
    pd_prime: int  # pd(T')
    pd_double_prime: int  # pd(T'')
    value: int
    depth: int


@dataclass
class PdResult:
    value: int
    trace: list[PdStep] = field(default_factory=list)
    components: list[int] = field(default_factory=list)  # per-component values


def _choose_split(sub: Forest, rng: random.Random | None) -> SplittingVertex:
    if rng is None:
        return select_splitting_vertex(sub)
    candidates = splitting_vertices(sub)
    if not candidates:
        return select_splitting_vertex(sub)
    chosen = rng.choice(candidates)
    deg = sub.degrees
    leaves = [w for w in chosen.neighbors if deg[w] == 1]
    inner = [w for w in chosen.neighbors if deg[w] > 1]
    rng.shuffle(leaves)
    return SplittingVertex(vertex=chosen.vertex, neighbors=tuple(leaves + inner))


class PdCalculator:
    """Memoised evaluation of the recursion on edge subsets of one forest."""

    def __init__(self, forest: Forest, rng: random.Random | None = None):
        self.forest = forest
        self.rng = rng
        self.memo: dict[frozenset[Edge], int] = {}
        self.trace: list[PdStep] = []

    def pd_edges(self, edges: frozenset[Edge], depth: int = 0) -> int:
        return sum(self.pd_component(c, depth) for c in split_components(edges))

    def pd_component(self, edges: frozenset[Edge], depth: int = 0) -> int:
        if not edges:
            return 0
        if edges in self.memo:
            return self.memo[edges]

        sub = self.forest.restrict(edges)
        if max(sub.degrees) <= 1:
            value = len(edges)
        else:
            split = _choose_split(sub, self.rng)
            v, nbrs = split.vertex, split.neighbors
            v1 = nbrs[0]
            closed = {v, *nbrs}
            t_prime = frozenset(e for e in edges if v1 not in e)
            t_double = frozenset(e for e in edges if not closed.intersection(e))
            a_prime = self.pd_edges(t_prime, depth + 1)
            a_double = self.pd_edges(t_double, depth + 1)
            value = max(a_prime, a_double + len(nbrs))
            self.trace.append(PdStep(
                vertex=v, n=len(nbrs), edges=len(edges),
                pd_prime=a_prime, pd_double_prime=a_double, value=value, depth=depth,
            ))

        self.memo[edges] = value
        return value


def pd_forest(f: Forest, rng: random.Random | None = None) -> PdResult:
    """pd of R/I(f); 0 for an edgeless forest."""
    calc = PdCalculator(f, rng=rng)
    per_component = [calc.pd_component(c) for c in split_components(f.edges)]
    value = sum(per_component)
    logger.debug(f"pd={value} over {len(per_component)} components, {len(calc.trace)} splits")
    return PdResult(value=value, trace=calc.trace, components=per_component)


def pd_line(r: int) -> int:
    if r < 2:
        raise DomainError(f"Line graph needs r >= 2, got {r}")
    s, residue = divmod(r, 3)
    return 2 * s + 1 if residue == 2 else 2 * s


def pd_double_star(r: int, s: int) -> int:
    if r < 0 or s < 0:
        raise DomainError(f"Double star needs r, s >= 0, got ({r}, {s})")
    return max(r, s) + 1
