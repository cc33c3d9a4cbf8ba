"""
Brute-force vanishing-locus comparison over small prime fields.

Two generating sets have the same radical only if they vanish on the same
points; enumerating all of F_p^n gives independent evidence for a tree-like
system (it is not a proof, since F_p is not algebraically closed).

F_2 is walked in Gray-code order with incremental term updates; other primes
are evaluated in numpy chunks of base-p digit vectors. The point space is split
into ranges that run on a thread pool and the results are merged in range order.
"""
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from api import config
from api.errors import CapExceeded, DomainError
from api.services.monomial_ideal import SquarefreeMonomial
from api.services.tls import TreeLikeSystem, support

logger = logging.getLogger(__name__)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class DensePoly:
    """Sum of squarefree terms with coefficients in F_p."""
    terms: tuple[tuple[tuple[int, ...], int], ...]
    p: int

    @classmethod
    def from_terms(cls, terms: dict[frozenset[int], int] | Iterable[tuple[Iterable[int], int]], p: int) -> "DensePoly":
        if not _is_prime(p):
            raise DomainError(f"{p} is not prime")
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[tuple[int, ...], int] = {}
        for vars, coeff in items:
            key = tuple(sorted(set(vars)))
            acc[key] = (acc.get(key, 0) + coeff) % p
        return cls(terms=tuple(sorted((k, c) for k, c in acc.items() if c)), p=p)

    @classmethod
    def from_monomials(cls, monomials: Iterable[SquarefreeMonomial], p: int) -> "DensePoly":
        return cls.from_terms([(m.vars, 1) for m in monomials], p)

    @property
    def variables(self) -> set[int]:
        return {i for vars, _ in self.terms for i in vars}

    def remap(self, mapping: dict[int, int]) -> "DensePoly":
        return DensePoly.from_terms([([mapping[i] for i in vars], c) for vars, c in self.terms], self.p)


def evaluate(poly: DensePoly, point: Sequence[int]) -> int:
    """Plain per-term evaluation at one point."""
    total = 0
    for vars, coeff in poly.terms:
        value = coeff
        for i in vars:
            value = value * point[i] % poly.p
        total = (total + value) % poly.p
    return total


@dataclass(frozen=True)
class OracleResult:
    equal: bool
    witness: tuple[int, ...] | None  # first point where exactly one side vanishes
    inclusion_ok: bool  # every common zero of ps is a common zero of qs
    points: int
    p: int


@dataclass(frozen=True)
class _RangeOutcome:
    start: int
    witness: tuple[int, ...] | None
    inclusion_ok: bool


# ---------------------------------------------------------------------------
# F_2: Gray-code walk
# ---------------------------------------------------------------------------

class _GrayWalker:
    """Tracks term and polynomial values while single bits flip."""

    def __init__(self, polys: Sequence[DensePoly], n: int):
        self.terms: list[tuple[int, tuple[int, ...]]] = []  # (poly index, vars)
        for k, poly in enumerate(polys):
            for vars, coeff in poly.terms:
                if coeff % 2:
                    self.terms.append((k, vars))
        self.by_var: list[list[int]] = [[] for _ in range(n)]
        for t, (_, vars) in enumerate(self.terms):
            for i in vars:
                self.by_var[i].append(t)
        self.npolys = len(polys)

    def reset(self, point: list[int]):
        self.missing = [sum(1 for i in vars if not point[i]) for _, vars in self.terms]
        self.parity = [0] * self.npolys
        for t, (k, _) in enumerate(self.terms):
            if self.missing[t] == 0:
                self.parity[k] ^= 1
        self.nonzero = sum(self.parity)

    def flip(self, i: int, now_one: bool):
        step = -1 if now_one else 1
        for t in self.by_var[i]:
            before = self.missing[t] == 0
            self.missing[t] += step
            if before != (self.missing[t] == 0):
                k = self.terms[t][0]
                self.parity[k] ^= 1
                self.nonzero += 1 if self.parity[k] else -1


def _gray(i: int) -> int:
    return i ^ (i >> 1)


def _bits(code: int, n: int) -> list[int]:
    return [(code >> b) & 1 for b in range(n)]


def _walk_f2(qs, ps, n: int, start: int, end: int) -> _RangeOutcome:
    q_walk, p_walk = _GrayWalker(qs, n), _GrayWalker(ps, n)
    point = _bits(_gray(start), n)
    q_walk.reset(point)
    p_walk.reset(point)
    witness = None
    inclusion_ok = True
    for i in range(start, end):
        if i > start:
            bit = (i & -i).bit_length() - 1
            point[bit] ^= 1
            q_walk.flip(bit, bool(point[bit]))
            p_walk.flip(bit, bool(point[bit]))
        q_zero = q_walk.nonzero == 0
        p_zero = p_walk.nonzero == 0
        if q_zero != p_zero and witness is None:
            witness = tuple(point)
        if p_zero and not q_zero:
            inclusion_ok = False
        if witness is not None and not inclusion_ok:
            break
    return _RangeOutcome(start=start, witness=witness, inclusion_ok=inclusion_ok)


# ---------------------------------------------------------------------------
# odd p: numpy odometer
# ---------------------------------------------------------------------------

def _values(poly: DensePoly, digits: np.ndarray) -> np.ndarray:
    out = np.zeros(digits.shape[0], dtype=np.int64)
    for vars, coeff in poly.terms:
        term = np.full(digits.shape[0], coeff, dtype=np.int64)
        for i in vars:
            term = term * digits[:, i] % poly.p
        out = (out + term) % poly.p
    return out


def _all_vanish(polys: Sequence[DensePoly], digits: np.ndarray) -> np.ndarray:
    mask = np.ones(digits.shape[0], dtype=bool)
    for poly in polys:
        mask &= _values(poly, digits) == 0
    return mask


def _walk_odometer(qs, ps, n: int, p: int, start: int, end: int) -> _RangeOutcome:
    idx = np.arange(start, end, dtype=np.int64)
    powers = p ** np.arange(n, dtype=np.int64)
    digits = (idx[:, None] // powers[None, :]) % p
    q_zero = _all_vanish(qs, digits)
    p_zero = _all_vanish(ps, digits)
    differ = np.flatnonzero(q_zero != p_zero)
    witness = tuple(int(d) for d in digits[differ[0]]) if differ.size else None
    inclusion_ok = not bool(np.any(p_zero & ~q_zero))
    return _RangeOutcome(start=start, witness=witness, inclusion_ok=inclusion_ok)


# ---------------------------------------------------------------------------

def vanishing_equal(
    qs: Sequence[DensePoly],
    ps: Sequence[DensePoly],
    p: int,
    n: int,
    cap: int | None = None,
    workers: int | None = None,
    chunk: int | None = None,
) -> OracleResult:
    """
    Compare the common zero sets of qs and ps on all of F_p^n.

    Raises:
        CapExceeded: n is above the configured cap for p
        DomainError: p is not prime
    """
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    limit = cap if cap is not None else config.oracle_cap(p)
    if n > limit:
        raise CapExceeded(f"{n} variables exceed the F_{p} cap of {limit}", n=n, cap=limit, p=p)
    for poly in list(qs) + list(ps):
        if poly.p != p:
            raise DomainError(f"Polynomial over F_{poly.p} passed to an F_{p} check")
        if poly.variables and max(poly.variables) >= n:
            raise DomainError(f"Polynomial uses a variable beyond the {n} enumerated ones")

    total = p ** n
    chunk = chunk or config.ARA_ORACLE_CHUNK
    ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]

    def run(start: int, end: int) -> _RangeOutcome:
        if p == 2:
            return _walk_f2(qs, ps, n, start, end)
        return _walk_odometer(qs, ps, n, p, start, end)

    outcomes: list[_RangeOutcome] = []
    if len(ranges) == 1:
        outcomes.append(run(*ranges[0]))
    else:
        with ThreadPoolExecutor(max_workers=workers or config.ARA_ORACLE_WORKERS) as pool:
            futures = {pool.submit(run, s, e): s for s, e in ranges}
            for future in as_completed(futures):
                outcomes.append(future.result())
                logger.debug(f"F_{p} range starting at {futures[future]} done")

    outcomes.sort(key=lambda o: o.start)
    witness = next((o.witness for o in outcomes if o.witness is not None), None)
    inclusion_ok = all(o.inclusion_ok for o in outcomes)
    logger.info(f"F_{p}^{n}: {total} points, equal={witness is None}, inclusion_ok={inclusion_ok}")
    return OracleResult(equal=witness is None, witness=witness, inclusion_ok=inclusion_ok, points=total, p=p)


def tls_vanishing_check(
    s: TreeLikeSystem,
    primes: Iterable[int],
    target: Iterable[SquarefreeMonomial] | None = None,
    cap: int | None = None,
) -> dict[int, OracleResult]:
    """
    Compare the system's elements with its support (or `target`) over each prime.
    Only variables that occur are enumerated; witnesses use that compressed order.
    """
    target_set = frozenset(target) if target is not None else support(s)
    used = sorted({i for q in s.elements for i in q.var_set} | {i for m in target_set for i in m.vars})
    mapping = {v: k for k, v in enumerate(used)}
    n = len(used)

    report: dict[int, OracleResult] = {}
    for p in primes:
        qs = [DensePoly.from_monomials(q.summands, p).remap(mapping) for q in s.elements]
        ps = [DensePoly.from_monomials([m], p).remap(mapping) for m in sorted(target_set)]
        report[p] = vanishing_equal(qs, ps, p, n, cap=cap)
    return report


def witness_in_original_vars(s: TreeLikeSystem, result: OracleResult, target=None) -> dict[int, int]:
    """Expand a compressed witness back to original variable indices."""
    target_set = frozenset(target) if target is not None else support(s)
    used = sorted({i for q in s.elements for i in q.var_set} | {i for m in target_set for i in m.vars})
    if result.witness is None:
        return {}
    return dict(zip(used, result.witness))
