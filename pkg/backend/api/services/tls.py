"""
Tree-like systems of squarefree monomials.

A system is an ordered list q_0, q_1, ... where every element is a single
monomial (an isolated summand) or a sum a_i + b_i of two monomials, all
summands are pairwise distinct, and each sum has an earlier element with a
summand dividing a_i * b_i. Such a system generates its support up to radical.

When the support is the edge-monomial set of a forest, the dividing summand of
an element is unique (its edge lies between the two edges of the element), which
gives predecessors, strict chains and the strict-chain decomposition.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from api.errors import (
    InvalidSystem,
    IsolatedElement,
    NotASubtree,
    NotForestSupport,
    NotStretched,
    PreconditionViolated,
    SupportMismatch,
)
from api.services.graph_core import Edge, normalize_edge
from api.services.monomial_ideal import SquarefreeMonomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TlsElement:
    left: SquarefreeMonomial
    right: SquarefreeMonomial | None = None  # None for an isolated summand

    @property
    def is_isolated(self) -> bool:
        return self.right is None

    @property
    def summands(self) -> tuple[SquarefreeMonomial, ...]:
        return (self.left,) if self.right is None else (self.left, self.right)

    @property
    def var_set(self) -> frozenset[int]:
        out = self.left.var_set
        if self.right is not None:
            out = out | self.right.var_set
        return out

    def contains(self, m: SquarefreeMonomial) -> bool:
        return m == self.left or m == self.right

    def other(self, m: SquarefreeMonomial) -> SquarefreeMonomial | None:
        """The summand next to m (None when the element is isolated)."""
        if m == self.left:
            return self.right
        if m == self.right:
            return self.left
        raise ValueError(f"{m} is not a summand of this element")

    def render(self, labels: Sequence[str] = ()) -> str:
        if self.right is None:
            return self.left.render(labels)
        return f"{self.left.render(labels)} + {self.right.render(labels)}"


def iso(m: SquarefreeMonomial) -> TlsElement:
    return TlsElement(left=m)


def pair(a: SquarefreeMonomial, b: SquarefreeMonomial) -> TlsElement:
    return TlsElement(left=a, right=b)


@dataclass(frozen=True)
class TreeLikeSystem:
    elements: tuple[TlsElement, ...]
    nvars: int

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> TlsElement:
        return self.elements[i]

    @property
    def summands(self) -> list[SquarefreeMonomial]:
        return [m for q in self.elements for m in q.summands]

    def position_of(self, m: SquarefreeMonomial) -> int | None:
        for i, q in enumerate(self.elements):
            if q.contains(m):
                return i
        return None

    def is_isolated_summand(self, m: SquarefreeMonomial) -> bool:
        pos = self.position_of(m)
        return pos is not None and self.elements[pos].is_isolated

    def render(self, labels: Sequence[str] = ()) -> str:
        return "\n".join(q.render(labels) for q in self.elements)


@dataclass(frozen=True)
class StrictChain:
    positions: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class TlsValidation:
    ok: bool
    violation: str | None = None
    position: int | None = None


def make_system(elements: Iterable[TlsElement], nvars: int | None = None) -> TreeLikeSystem:
    elems = tuple(elements)
    top = max((max(q.var_set) for q in elems), default=-1) + 1
    return TreeLikeSystem(elements=elems, nvars=max(top, nvars or 0))


def support(s: TreeLikeSystem) -> frozenset[SquarefreeMonomial]:
    return frozenset(s.summands)


def _dividing_positions(elements: Sequence[TlsElement], i: int) -> list[int]:
    q = elements[i]
    return [
        j for j in range(i)
        if any(m.divides_product(q.left, q.right) for m in elements[j].summands)
    ]


def validate_tls(s: TreeLikeSystem) -> TlsValidation:
    """Check the tree-like condition; any summand of an earlier element may serve as divisor."""
    seen: set[SquarefreeMonomial] = set()
    for i, q in enumerate(s.elements):
        for m in q.summands:
            if m.degree == 0:
                return TlsValidation(False, f"element {i} has a unit summand", i)
        if q.right is not None and q.left == q.right:
            return TlsValidation(False, f"element {i} repeats the summand {q.left.vars}", i)
        for m in q.summands:
            if m in seen:
                return TlsValidation(False, f"summand {m.vars} appears twice", i)
            seen.add(m)
        if not q.is_isolated and not _dividing_positions(s.elements, i):
            return TlsValidation(False, f"no earlier summand divides the product in element {i}", i)
    return TlsValidation(True)


def require_valid(s: TreeLikeSystem) -> None:
    result = validate_tls(s)
    if not result.ok:
        raise InvalidSystem(result.violation or "invalid tree-like system", position=result.position)


def equivalent(first: TreeLikeSystem, second: TreeLikeSystem) -> bool:
    """Both valid and generated from the same support."""
    return validate_tls(first).ok and validate_tls(second).ok and support(first) == support(second)


# ---------------------------------------------------------------------------
# forest supports
# ---------------------------------------------------------------------------

def require_forest_support(s: TreeLikeSystem) -> None:
    """All summands are edge monomials and together they form a forest."""
    edges = []
    for m in s.summands:
        if m.degree != 2:
            raise NotForestSupport(f"Summand {m.vars} is not an edge monomial")
        edges.append(normalize_edge(*m.vars))
    if len(set(edges)) != len(edges):
        raise NotForestSupport("Support repeats an edge monomial")
    g = nx.Graph()
    g.add_edges_from(edges)
    if g.number_of_edges() and not nx.is_forest(g):
        raise NotForestSupport("Support edges contain a cycle")


def _predecessor(s: TreeLikeSystem, i: int) -> int:
    q = s.elements[i]
    if q.is_isolated:
        raise IsolatedElement(f"Element {i} is an isolated summand and has no predecessor", position=i)
    found = _dividing_positions(s.elements, i)
    if not found:
        raise InvalidSystem(f"Element {i} has no earlier divisor", position=i)
    if len(found) > 1:
        raise NotForestSupport(f"Element {i} has several earlier divisors {found}", position=i)
    return found[0]


def predecessor(s: TreeLikeSystem, i: int) -> int:
    require_forest_support(s)
    return _predecessor(s, i)


def strict_subtree_ending_at(s: TreeLikeSystem, i: int) -> StrictChain:
    require_forest_support(s)
    chain = [i]
    while not s.elements[chain[-1]].is_isolated:
        chain.append(_predecessor(s, chain[-1]))
    return StrictChain(positions=tuple(reversed(chain)))


def is_strict(s: TreeLikeSystem) -> bool:
    """Only the head is isolated and every predecessor is the element right before."""
    if not s.elements or not validate_tls(s).ok:
        return False
    if not s.elements[0].is_isolated or any(q.is_isolated for q in s.elements[1:]):
        return False
    try:
        require_forest_support(s)
        return all(_predecessor(s, i) == i - 1 for i in range(1, len(s)))
    except (NotForestSupport, InvalidSystem):
        return False


def decompose_strict(s: TreeLikeSystem) -> list[StrictChain]:
    """
    Split a system over a stretched-forest support into maximal strict chains,
    ordered by their heads.

    Raises:
        NotStretched: some element has two followers
    """
    require_forest_support(s)
    followers: dict[int, list[int]] = {i: [] for i in range(len(s))}
    for i, q in enumerate(s.elements):
        if not q.is_isolated:
            followers[_predecessor(s, i)].append(i)

    for i, after in followers.items():
        if len(after) > 1:
            raise NotStretched(f"Element {i} has followers {after}; support is not a stretched forest", position=i)

    chains = []
    for i, q in enumerate(s.elements):
        if not q.is_isolated:
            continue
        chain = [i]
        while followers[chain[-1]]:
            chain.append(followers[chain[-1]][0])
        chains.append(StrictChain(positions=tuple(chain)))
    return chains


# ---------------------------------------------------------------------------
# rearrangements
# ---------------------------------------------------------------------------

def subsystem(s: TreeLikeSystem, positions: Iterable[int]) -> TreeLikeSystem:
    return TreeLikeSystem(elements=tuple(s.elements[p] for p in positions), nvars=s.nvars)


def restrict_to_component(s: TreeLikeSystem, component: Iterable[Edge]) -> TreeLikeSystem:
    """Elements holding an edge monomial of the component, in their original order."""
    require_forest_support(s)
    wanted = {SquarefreeMonomial.of(u, v) for u, v in component}
    positions = [i for i, q in enumerate(s.elements) if any(m in wanted for m in q.summands)]
    return subsystem(s, positions)


def juxtapose(*systems: TreeLikeSystem) -> TreeLikeSystem:
    """Concatenate systems whose supports are disjoint."""
    seen: set[SquarefreeMonomial] = set()
    for part in systems:
        overlap = seen & support(part)
        if overlap:
            raise SupportMismatch(f"Supports overlap in {sorted(m.vars for m in overlap)}")
        seen |= support(part)
    return TreeLikeSystem(
        elements=tuple(q for part in systems for q in part.elements),
        nvars=max((part.nvars for part in systems), default=0),
    )


def push_to_top(s: TreeLikeSystem, positions: Sequence[int]) -> TreeLikeSystem:
    """Move the subtree at `positions` (in the given order) in front of everything else."""
    if len(set(positions)) != len(positions) or any(not 0 <= p < len(s) for p in positions):
        raise NotASubtree(f"Positions {list(positions)} are not distinct positions of the system")
    head = subsystem(s, positions)
    if not validate_tls(head).ok:
        raise NotASubtree(f"Positions {list(positions)} do not form a tree-like system")
    chosen = set(positions)
    rest = [q for i, q in enumerate(s.elements) if i not in chosen]
    result = TreeLikeSystem(elements=head.elements + tuple(rest), nvars=s.nvars)
    if not validate_tls(result).ok:
        raise NotASubtree(f"Positions {list(positions)} are not a subtree of the system")
    return result


def replace_subsequence(
    s: TreeLikeSystem, positions: Iterable[int], replacement: TreeLikeSystem
) -> TreeLikeSystem:
    """Put `replacement` in place of the elements at `positions`; the rest follows in order."""
    chosen = set(positions)
    removed = {m for i in chosen for m in s.elements[i].summands}
    if removed != support(replacement):
        raise SupportMismatch(
            "Replacement support differs from the replaced elements",
            missing=sorted(m.vars for m in removed - support(replacement)),
            extra=sorted(m.vars for m in support(replacement) - removed),
        )
    rest = [q for i, q in enumerate(s.elements) if i not in chosen]
    result = TreeLikeSystem(elements=replacement.elements + tuple(rest), nvars=max(s.nvars, replacement.nvars))
    require_valid(result)
    return result


def reorder_valid(elements: Sequence[TlsElement], nvars: int) -> TreeLikeSystem:
    """
    Stable topological reorder: repeatedly take the earliest remaining element
    whose divisor condition is met by the elements already placed.
    """
    remaining = list(elements)
    placed: list[TlsElement] = []
    placed_summands: list[SquarefreeMonomial] = []
    while remaining:
        for k, q in enumerate(remaining):
            if q.is_isolated or any(m.divides_product(q.left, q.right) for m in placed_summands):
                placed.append(q)
                placed_summands.extend(q.summands)
                del remaining[k]
                break
        else:
            raise InvalidSystem(f"No valid order exists; {len(remaining)} elements lack a divisor")
    result = TreeLikeSystem(elements=tuple(placed), nvars=nvars)
    require_valid(result)
    return result


# ---------------------------------------------------------------------------
# tree inversion
# ---------------------------------------------------------------------------

def _check_inversion_input(a: Sequence[SquarefreeMonomial], b: Sequence[SquarefreeMonomial]) -> None:
    r = len(a) - 1
    if r < 2:
        raise PreconditionViolated(f"Tree inversion needs r >= 2, got r={r}")
    if len(b) != r:
        raise PreconditionViolated(f"Expected {r} right summands b_1..b_r, got {len(b)}")
    everything = list(a) + list(b)
    if any(m.degree != 2 for m in everything):
        raise PreconditionViolated("Tree inversion works on edge monomials only")
    if len(set(everything)) != len(everything):
        raise PreconditionViolated("Monomials of the chain must be pairwise distinct")
    for i in range(1, r + 1):
        if not a[i - 1].divides_product(a[i], b[i - 1]):
            raise PreconditionViolated(f"a_{i - 1} does not divide a_{i} * b_{i}", index=i)


def _normalize_last(a0, a1, a2, b2):
    """Order (a2, b2) so that a2 holds the variable a0 shares with a1."""
    shared = a0.var_set & a1.var_set
    if len(shared) != 1:
        raise PreconditionViolated("a_{r-2} and a_{r-1} must share exactly one variable")
    (x,) = shared
    if x not in a2.var_set:
        a2, b2 = b2, a2
    return a2, b2


def _invert(a: list[SquarefreeMonomial], b: list[SquarefreeMonomial]) -> list[TlsElement]:
    # b[k] holds b_{k+1}
    r = len(a) - 1
    a_last, b_last = _normalize_last(a[r - 2], a[r - 1], a[r], b[r - 1])
    if r == 2:
        return [iso(a[1]), pair(a[0], b_last), pair(a_last, b[0])]
    # the shorter chain ends with a_r' + b_{r-1}
    inner = _invert(a[: r - 1] + [a_last], b[: r - 1])
    return [iso(a[r - 1]), pair(a[r - 2], b_last)] + inner[1:]


def tree_inversion(
    a: Sequence[SquarefreeMonomial], b: Sequence[SquarefreeMonomial], nvars: int | None = None
) -> TreeLikeSystem:
    """
    Rewrite the strict chain a_0; a_1 + b_1; ...; a_r + b_r into an equivalent
    strict system whose starting point is a_{r-1}.

    Args:
        a: a_0..a_r, where a_{i-1} divides a_i * b_i
        b: b_1..b_r
    Raises:
        PreconditionViolated: r < 2, non-edge or repeated monomials, broken divisibility
    """
    _check_inversion_input(a, b)
    out = make_system(_invert(list(a), list(b)), nvars)
    require_valid(out)
    return out


def chain_as_inversion_input(
    s: TreeLikeSystem, chain: StrictChain, a_last: SquarefreeMonomial
) -> tuple[list[SquarefreeMonomial], list[SquarefreeMonomial]]:
    """Label a strict chain as (a_0..a_r, b_1..b_r) with a_r = a_last."""
    positions = chain.positions
    tail = s.elements[positions[-1]]
    if not tail.contains(a_last) or tail.is_isolated:
        raise PreconditionViolated(f"{a_last.vars} is not a summand of the chain's last sum")
    r = len(positions) - 1
    a: list[SquarefreeMonomial] = [None] * (r + 1)  # type: ignore[list-item]
    b: list[SquarefreeMonomial] = [None] * r  # type: ignore[list-item]
    a[r], b[r - 1] = a_last, tail.other(a_last)
    for k in range(r - 1, 0, -1):
        q = s.elements[positions[k]]
        between = [m for m in q.summands if m.divides_product(a[k + 1], b[k])]
        if len(between) != 1:
            raise PreconditionViolated(f"Chain element {positions[k]} does not link to its follower")
        a[k] = between[0]
        b[k - 1] = q.other(a[k])
    a[0] = s.elements[positions[0]].left
    return a, b


def invert_chain(s: TreeLikeSystem, chain: StrictChain, a_last: SquarefreeMonomial) -> TreeLikeSystem:
    """Tree-invert a strict chain of s in place; the new starting point goes to the top."""
    a, b = chain_as_inversion_input(s, chain, a_last)
    inverted = tree_inversion(a, b, nvars=s.nvars)
    return replace_subsequence(s, chain.positions, inverted)
