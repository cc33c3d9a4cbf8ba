"""
Lyubeznik resolutions of monomial ideals for a fixed generator order.

A symbol u(f_{i_1}, ..., f_{i_t}) with i_1 < ... < i_t is admissible when no
f_q with q < i_h divides lcm(f_{i_h}, ..., f_{i_t}) for any h < t. The
admissible symbols span a subcomplex of the Taylor complex with

    d(u(f_{i_1}, ..., f_{i_t})) = sum_j (-1)^(j+1) lcm(all) / lcm(all but i_j) u(... without i_j ...)

and L^0 the rank-one module. Indices are 0-based throughout.
"""
import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Sequence

from api.enums import OrderMode
from api.errors import DomainError, InternalError, NotMinimal

logger = logging.getLogger(__name__)

Symbol = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[tuple[int, int], ...]  # sorted (variable, exponent > 0)

    @classmethod
    def of(cls, exps: dict[int, int] | Iterable[tuple[int, int]]) -> "Monomial":
        items = exps.items() if isinstance(exps, dict) else exps
        acc: dict[int, int] = defaultdict(int)
        for var, e in items:
            if e < 0:
                raise DomainError(f"Negative exponent {e} for variable {var}")
            acc[var] += e
        return cls(tuple(sorted((v, e) for v, e in acc.items() if e > 0)))

    @classmethod
    def squarefree(cls, *vars: int) -> "Monomial":
        return cls.of({v: 1 for v in vars})

    @property
    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    @property
    def is_unit(self) -> bool:
        return not self.exponents

    def lcm(self, other: "Monomial") -> "Monomial":
        a, b = self.as_dict, other.as_dict
        return Monomial.of({v: max(a.get(v, 0), b.get(v, 0)) for v in a.keys() | b.keys()})

    def divides(self, other: "Monomial") -> bool:
        b = other.as_dict
        return all(b.get(v, 0) >= e for v, e in self.exponents)

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other; other must divide self."""
        if not other.divides(self):
            raise DomainError("Quotient by a non-divisor")
        a = self.as_dict
        for v, e in other.exponents:
            a[v] -= e
        return Monomial.of(a)

    def times(self, other: "Monomial") -> "Monomial":
        return Monomial.of(list(self.exponents) + list(other.exponents))

    def render(self, labels: Sequence[str] = ()) -> str:
        if self.is_unit:
            return "1"
        parts = []
        for v, e in self.exponents:
            name = labels[v] if v < len(labels) else f"x{v}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


ONE = Monomial(())


def lcm_of(gens: Sequence[Monomial], symbol: Iterable[int]) -> Monomial:
    out = ONE
    for i in symbol:
        out = out.lcm(gens[i])
    return out


@dataclass(frozen=True)
class DiffEntry:
    row: int  # index in L^t
    col: int  # index in L^(t-1)
    sign: int
    monomial: Monomial

    @property
    def degree(self) -> int:
        return self.monomial.degree


@dataclass
class LyubeznikComplex:
    ordered_gens: list[Monomial]
    symbols_by_dim: dict[int, list[Symbol]]  # t >= 1; L^0 is the single empty symbol
    differential: dict[int, list[DiffEntry]] = field(default_factory=dict)

    @property
    def max_dim(self) -> int:
        return max(self.symbols_by_dim, default=0)

    def basis(self, t: int) -> list[Symbol]:
        if t == 0:
            return [()]
        return self.symbols_by_dim.get(t, [])

    def rank(self, t: int) -> int:
        return len(self.basis(t))


def _check_gens(gens: Sequence[Monomial]) -> None:
    if not gens:
        raise DomainError("Need at least one generator")
    if any(g.is_unit for g in gens):
        raise DomainError("The unit monomial cannot be a generator")
    if len(set(gens)) != len(gens):
        raise DomainError("Generators must be pairwise distinct")


def admissible_symbols(gens: Sequence[Monomial]) -> dict[int, list[Symbol]]:
    """
    Admissible index tuples grouped by length, each list in lexicographic order.

    A tuple is admissible iff its tail (dropping the first index) is admissible
    and no generator before the first index divides the lcm of the whole tuple.
    """
    _check_gens(gens)
    by_dim: dict[int, list[Symbol]] = {1: [(i,) for i in range(len(gens))]}
    t = 1
    while by_dim.get(t):
        grown: list[Symbol] = []
        for sigma in by_dim[t]:
            sigma_lcm = lcm_of(gens, sigma)
            for i in range(sigma[0]):
                whole = gens[i].lcm(sigma_lcm)
                if not any(gens[q].divides(whole) for q in range(i)):
                    grown.append((i,) + sigma)
        t += 1
        if grown:
            by_dim[t] = sorted(grown)
    return by_dim


def taylor_symbols(gens: Sequence[Monomial]) -> dict[int, list[Symbol]]:
    """Every nonempty index tuple, grouped by length."""
    _check_gens(gens)
    m = len(gens)
    return {t: list(combinations(range(m), t)) for t in range(1, m + 1)}


def _differential_entries(gens: Sequence[Monomial], rows: list[Symbol], cols: list[Symbol]) -> list[DiffEntry]:
    col_index = {sym: k for k, sym in enumerate(cols)}
    entries = []
    for r, sigma in enumerate(rows):
        top = lcm_of(gens, sigma)
        for j in range(len(sigma)):
            face = sigma[:j] + sigma[j + 1:]
            if face not in col_index:
                raise InternalError(f"Face {face} of admissible symbol {sigma} is not admissible")
            coeff = top.quotient(lcm_of(gens, face))
            # j is 0-based, so (-1)^(j+1) with 1-based j becomes (-1)^j
            sign = 1 if j % 2 == 0 else -1
            entries.append(DiffEntry(row=r, col=col_index[face], sign=sign, monomial=coeff))
    return entries


def build_complex(gens: Sequence[Monomial], order: OrderMode | str = OrderMode.GIVEN, workers: int = 4) -> LyubeznikComplex:
    ordered = list(gens)
    if OrderMode(order) is OrderMode.LEX:
        ordered = sorted(ordered, key=lambda g: g.exponents)
    symbols = admissible_symbols(ordered)
    c = LyubeznikComplex(ordered_gens=ordered, symbols_by_dim=symbols)

    dims = sorted(symbols)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = pool.map(lambda t: (t, _differential_entries(ordered, c.basis(t), c.basis(t - 1))), dims)
        for t, entries in results:
            c.differential[t] = entries
    logger.info(f"Lyubeznik complex on {len(ordered)} generators, ranks {[c.rank(t) for t in dims]}")
    return c


def differential(c: LyubeznikComplex, t: int) -> list[DiffEntry]:
    """Sparse matrix of d_t: rows index L^t, columns index L^(t-1)."""
    if not 1 <= t <= c.max_dim:
        raise DomainError(f"Dimension {t} outside 1..{c.max_dim}")
    if t not in c.differential:
        c.differential[t] = _differential_entries(c.ordered_gens, c.basis(t), c.basis(t - 1))
    return c.differential[t]


def dense_matrix(c: LyubeznikComplex, t: int) -> list[list[tuple[int, Monomial] | None]]:
    """d_t as a rows x cols grid of (sign, monomial) or None."""
    grid: list[list[tuple[int, Monomial] | None]] = [[None] * c.rank(t - 1) for _ in range(c.rank(t))]
    for e in differential(c, t):
        grid[e.row][e.col] = (e.sign, e.monomial)
    return grid


def composition_vanishes(c: LyubeznikComplex) -> bool:
    """d_(t-1) after d_t is zero for every t >= 2, compared term by term."""
    for t in range(2, c.max_dim + 1):
        upper = differential(c, t)
        lower_by_row: dict[int, list[DiffEntry]] = defaultdict(list)
        for e in differential(c, t - 1):
            lower_by_row[e.row].append(e)
        acc: dict[tuple[int, int, Monomial], int] = defaultdict(int)
        for e in upper:
            for f in lower_by_row[e.col]:
                acc[(e.row, f.col, e.monomial.times(f.monomial))] += e.sign * f.sign
        if any(v != 0 for v in acc.values()):
            logger.error(f"d_{t - 1} * d_{t} is not zero")
            return False
    return True


def is_minimal(c: LyubeznikComplex) -> bool:
    return not any(e.monomial.is_unit for t in range(1, c.max_dim + 1) for e in differential(c, t))


def betti_numbers(c: LyubeznikComplex) -> list[int]:
    """beta_1..beta_max as ranks of L^1..L^max. Raises NotMinimal for a non-minimal complex."""
    if not is_minimal(c):
        raise NotMinimal("Complex is not minimal; ranks would overestimate Betti numbers")
    return [c.rank(t) for t in range(1, c.max_dim + 1)]


def euler_characteristic(c: LyubeznikComplex) -> int:
    return sum((-1) ** t * c.rank(t) for t in range(0, c.max_dim + 1))


def linearity_check(c: LyubeznikComplex) -> bool:
    """Degree-2 generators and every entry of d_t, t >= 2, of degree 1."""
    if not is_minimal(c):
        raise NotMinimal("Linearity is only meaningful for a minimal complex")
    if any(g.degree != 2 for g in c.ordered_gens):
        return False
    return all(e.degree == 1 for t in range(2, c.max_dim + 1) for e in differential(c, t))


# ---------------------------------------------------------------------------
# double stars
# ---------------------------------------------------------------------------

def double_star_generators(r: int, s: int) -> list[Monomial]:
    """ab, ax_1..ax_r, by_1..by_s with a=0, b=1, x_i=1+i, y_j=1+r+j."""
    if r < 0 or s < 0:
        raise DomainError(f"Double star needs r, s >= 0, got ({r}, {s})")
    gens = [Monomial.squarefree(0, 1)]
    gens += [Monomial.squarefree(0, 1 + i) for i in range(1, r + 1)]
    gens += [Monomial.squarefree(1, 1 + r + j) for j in range(1, s + 1)]
    return gens


def double_star_resolution(r: int, s: int) -> LyubeznikComplex:
    return build_complex(double_star_generators(r, s), OrderMode.GIVEN)


def double_star_betti(r: int, s: int) -> list[int]:
    """beta_1 = 1 + r + s and beta_t = C(r+1, t) + C(s+1, t) up to t = max(r, s) + 1."""
    if r < 0 or s < 0:
        raise DomainError(f"Double star needs r, s >= 0, got ({r}, {s})")
    return [1 + r + s] + [comb(r + 1, t) + comb(s + 1, t) for t in range(2, max(r, s) + 2)]


# ---------------------------------------------------------------------------
# order search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderReport:
    order: tuple[int, ...]  # positions into the input list
    ranks: tuple[int, ...]
    minimal: bool


def search_orders(gens: Sequence[Monomial], max_gens: int = 7) -> list[OrderReport]:
    """Lyubeznik ranks and minimality for every order of a small generator list."""
    _check_gens(gens)
    if len(gens) > max_gens:
        raise DomainError(f"Order search is limited to {max_gens} generators, got {len(gens)}")
    reports = []
    for perm in permutations(range(len(gens))):
        c = build_complex([gens[i] for i in perm], workers=1)
        reports.append(OrderReport(
            order=perm,
            ranks=tuple(c.rank(t) for t in range(1, c.max_dim + 1)),
            minimal=is_minimal(c),
        ))
    return reports
