"""
Squarefree monomials, edge ideals and the generator-count invariants
mu, nu, rho that bound the arithmetical rank from above by mu - rho + 1.
"""
import logging
from dataclasses import dataclass
from typing import Iterable

from api.errors import DomainError, NoEdges
from api.services.graph_core import Forest

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class SquarefreeMonomial:
    vars: tuple[int, ...]

    def __post_init__(self):
        if list(self.vars) != sorted(set(self.vars)):
            object.__setattr__(self, "vars", tuple(sorted(set(self.vars))))

    @classmethod
    def of(cls, *vars: int) -> "SquarefreeMonomial":
        return cls(tuple(sorted(set(vars))))

    @property
    def var_set(self) -> frozenset[int]:
        return frozenset(self.vars)

    @property
    def degree(self) -> int:
        return len(self.vars)

    def divides(self, other: "SquarefreeMonomial") -> bool:
        return self.var_set <= other.var_set

    def divides_product(self, a: "SquarefreeMonomial", b: "SquarefreeMonomial") -> bool:
        """True iff self divides a*b; squarefree, so only the variable union matters."""
        return self.var_set <= (a.var_set | b.var_set)

    def render(self, labels: tuple[str, ...] | list[str] = ()) -> str:
        return "*".join(labels[i] if i < len(labels) else f"x{i}" for i in self.vars)


def edge_monomial(u: int, v: int) -> SquarefreeMonomial:
    return SquarefreeMonomial.of(u, v)


@dataclass(frozen=True)
class MonomialIdeal:
    """Squarefree monomial ideal given by its minimal generators."""
    generators: tuple[SquarefreeMonomial, ...]
    nvars: int

    @classmethod
    def from_generators(cls, gens: Iterable[SquarefreeMonomial], nvars: int | None = None) -> "MonomialIdeal":
        unique = sorted(set(gens))
        if any(g.degree == 0 for g in unique):
            raise DomainError("The unit monomial cannot be a generator here")
        minimal = [g for g in unique if not any(h != g and h.divides(g) for h in unique)]
        if len(minimal) < len(unique):
            logger.debug(f"Dropped {len(unique) - len(minimal)} non-minimal generators")
        top = max((max(g.vars) for g in minimal), default=-1) + 1
        if nvars is None:
            nvars = top
        elif nvars < top:
            raise DomainError(f"nvars={nvars} is smaller than the largest variable index {top - 1}")
        return cls(generators=tuple(minimal), nvars=nvars)

    def divisibility_counts(self) -> list[int]:
        """|M_i| for every variable: how many generators x_i divides."""
        counts = [0] * self.nvars
        for g in self.generators:
            for i in g.vars:
                counts[i] += 1
        return counts


@dataclass(frozen=True)
class AraInvariants:
    mu: int
    nu: int
    rho: int
    upper_bound: int  # mu - rho + 1


@dataclass(frozen=True)
class AraBounds:
    """pd <= ara <= mu - rho + 1 for one edge ideal."""
    pd: int
    upper_bound: int
    invariants: AraInvariants

    @property
    def collapsed(self) -> bool:
        return self.pd == self.upper_bound


def edge_ideal(f: Forest) -> MonomialIdeal:
    if not f.edges:
        raise NoEdges("Edge ideal of an edgeless graph is zero")
    return MonomialIdeal.from_generators((edge_monomial(u, v) for u, v in f.edges), nvars=f.n)


def mu(ideal: MonomialIdeal) -> int:
    return len(ideal.generators)


def rho(ideal: MonomialIdeal) -> int:
    if not ideal.generators:
        raise DomainError("rho is undefined for the zero ideal")
    counts = ideal.divisibility_counts()
    return max(min(counts[i] for i in g.vars) for g in ideal.generators)


def edge_rho(f: Forest) -> int:
    """rho of I(f) via the max over edges of the smaller endpoint degree."""
    if not f.edges:
        raise NoEdges("rho is undefined without edges")
    deg = f.degrees
    return max(min(deg[u], deg[v]) for u, v in f.edges)


def minimal_primes(ideal: MonomialIdeal) -> list[frozenset[int]]:
    """
    All inclusion-minimal variable sets meeting every generator.

    Branches on the variables of the first generator not yet hit; a finished
    hitting set is kept only when each of its variables has a private generator.
    """
    gens = [g.var_set for g in ideal.generators]
    if not gens:
        raise DomainError("Minimal primes of the zero ideal are undefined here")
    found: set[frozenset[int]] = set()
    visited: set[frozenset[int]] = set()

    def is_minimal(cover: frozenset[int]) -> bool:
        for x in cover:
            rest = cover - {x}
            if all(g & rest for g in gens):
                return False
        return True

    def extend(cover: frozenset[int]):
        if cover in visited:
            return
        visited.add(cover)
        for g in gens:
            if not g & cover:
                for x in sorted(g):
                    extend(cover | {x})
                return
        if cover not in found and is_minimal(cover):
            found.add(cover)

    extend(frozenset())
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def nu(ideal: MonomialIdeal) -> int:
    counts = ideal.divisibility_counts()
    return min(max(counts[i] for i in prime) for prime in minimal_primes(ideal))


def ara_upper_bound(ideal: MonomialIdeal) -> int:
    return mu(ideal) - rho(ideal) + 1


def invariants(ideal: MonomialIdeal) -> AraInvariants:
    m, n, r = mu(ideal), nu(ideal), rho(ideal)
    if n != r:
        logger.error(f"nu={n} differs from rho={r} for {len(ideal.generators)} generators")
    return AraInvariants(mu=m, nu=n, rho=r, upper_bound=m - r + 1)


def ara_bounds(f: Forest, pd_value: int | None = None) -> AraBounds:
    """Interval pd <= ara <= mu - rho + 1 for the edge ideal of a forest."""
    from api.services.proj_dim import pd_forest

    inv = invariants(edge_ideal(f))
    if pd_value is None:
        pd_value = pd_forest(f).value
    return AraBounds(pd=pd_value, upper_bound=inv.upper_bound, invariants=inv)
