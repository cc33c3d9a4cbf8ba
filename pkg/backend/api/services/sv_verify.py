"""
Schmitt-Vogel partition checking.

Blocks P_0..P_r of monomials generate (P) up to radical via the block sums
q_i = sum of p^e(p) over P_i when
  (i)   the blocks cover the target set P,
  (ii)  P_0 has exactly one element,
  (iii) for every block i > 0 and distinct p, p' in P_i some element of an
        earlier block divides p * p'.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations

from api.errors import InvalidSystem
from api.services.monomial_ideal import SquarefreeMonomial
from api.services.tls import TreeLikeSystem, support, validate_tls

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SvPartition:
    blocks: tuple[tuple[SquarefreeMonomial, ...], ...]
    exponents: dict[SquarefreeMonomial, int] = field(default_factory=dict, hash=False, compare=False)
    target: frozenset[SquarefreeMonomial] | None = None  # defaults to the union of the blocks

    def exponent(self, m: SquarefreeMonomial) -> int:
        return self.exponents.get(m, 1)


@dataclass(frozen=True)
class SvCheck:
    ok: bool
    violation: str | None = None
    condition: str | None = None  # "i", "ii" or "iii"
    block: int | None = None


def sv_check(part: SvPartition) -> SvCheck:
    blocks = part.blocks
    if not blocks:
        return SvCheck(False, "partition has no blocks", "ii")

    covered = {m for block in blocks for m in block}
    target = part.target if part.target is not None else frozenset(covered)
    missing = target - covered
    if missing:
        return SvCheck(False, f"blocks miss {sorted(m.vars for m in missing)}", "i")

    if len(set(blocks[0])) != 1:
        return SvCheck(False, f"first block has {len(set(blocks[0]))} elements", "ii", 0)

    if any(part.exponent(m) < 1 for m in covered):
        return SvCheck(False, "exponents must be positive", "i")

    earlier: list[SquarefreeMonomial] = list(blocks[0])
    for i, block in enumerate(blocks[1:], start=1):
        for p, p2 in combinations(sorted(set(block)), 2):
            if not any(m.divides_product(p, p2) for m in earlier):
                return SvCheck(
                    False,
                    f"no earlier element divides {p.vars} * {p2.vars} in block {i}",
                    "iii",
                    i,
                )
        earlier.extend(block)
    return SvCheck(True)


def tls_to_partition(s: TreeLikeSystem) -> SvPartition:
    """
    One block per element, in system order, all exponents 1. Juxtaposed strict
    chains come out as consecutive runs, each starting with its head as a singleton.

    Raises:
        InvalidSystem: s is not tree-like or is empty
    """
    check = validate_tls(s)
    if not check.ok:
        raise InvalidSystem(check.violation or "invalid tree-like system", position=check.position)
    if not s.elements:
        raise InvalidSystem("Empty system has no partition")
    blocks = tuple(q.summands for q in s.elements)
    return SvPartition(blocks=blocks, target=support(s))


def verify_system(s: TreeLikeSystem, target: frozenset[SquarefreeMonomial] | None = None) -> SvCheck:
    """tls_to_partition + sv_check against `target` (the system's own support by default)."""
    try:
        part = tls_to_partition(s)
    except InvalidSystem as e:
        return SvCheck(False, e.message, "iii", e.details.get("position"))
    if target is not None:
        part = SvPartition(blocks=part.blocks, target=target)
    return sv_check(part)
