"""
Seeded random inputs for property checks: Prüfer trees, forests, stretched
forests, random squarefree ideals and strict divisibility chains.
"""
import logging
import random

import networkx as nx

from api.services.graph_core import Forest, build_forest, is_stretched
from api.services.monomial_ideal import MonomialIdeal, SquarefreeMonomial, edge_monomial

logger = logging.getLogger(__name__)


def random_tree(n: int, rng: random.Random) -> Forest:
    """Uniform labelled tree on n vertices via a random Prüfer sequence."""
    if n <= 1:
        return build_forest(max(n, 0), [])
    if n == 2:
        return build_forest(2, [(0, 1)])
    sequence = [rng.randrange(n) for _ in range(n - 2)]
    tree = nx.from_prufer_sequence(sequence)
    return build_forest(n, tree.edges)


def random_forest(n: int, rng: random.Random, max_parts: int = 3) -> Forest:
    """Disjoint union of Prüfer trees on a random split of n vertices."""
    order = list(range(n))
    rng.shuffle(order)
    parts = rng.randint(1, max(1, min(max_parts, n // 2 or 1)))
    cuts = sorted(rng.sample(range(1, n), parts - 1)) if n > 1 and parts > 1 else []
    edges = []
    for lo, hi in zip([0] + cuts, cuts + [n]):
        block = order[lo:hi]
        piece = random_tree(len(block), rng)
        edges += [(block[u], block[v]) for u, v in piece.edges]
    return build_forest(n, edges)


def compact(f: Forest) -> Forest:
    """Drop isolated vertices and renumber the rest in increasing order."""
    used = sorted({v for e in f.edges for v in e})
    index = {v: k for k, v in enumerate(used)}
    return build_forest(
        len(used),
        [(index[u], index[v]) for u, v in f.edges],
        [f.label(v) for v in used],
    )


def stretch(f: Forest, rng: random.Random) -> Forest:
    """Delete random offending edges until no edge joins two vertices of degree > 2."""
    edges = set(f.edges)
    while True:
        current = build_forest(f.n, edges, [f.label(v) for v in range(f.n)])
        if is_stretched(current):
            return current
        deg = current.degrees
        offending = sorted(e for e in edges if min(deg[e[0]], deg[e[1]]) > 2)
        edges.discard(rng.choice(offending))


def random_stretched_forest(rng: random.Random, min_vertices: int = 2, max_vertices: int = 40) -> Forest:
    """A stretched forest with at least one edge, renumbered without isolated vertices."""
    n = rng.randint(max(2, min_vertices), max_vertices)
    base = random_tree(n, rng) if rng.random() < 0.6 else random_forest(n, rng)
    f = compact(stretch(base, rng))
    logger.debug(f"random stretched forest: {f.n} vertices, {len(f.edges)} edges")
    return f


def random_squarefree_ideal(rng: random.Random, max_vars: int = 10, max_gens: int = 8) -> MonomialIdeal:
    nvars = rng.randint(2, max_vars)
    count = rng.randint(1, max_gens)
    gens = []
    for _ in range(count):
        size = rng.randint(1, min(4, nvars))
        gens.append(SquarefreeMonomial.of(*rng.sample(range(nvars), size)))
    return MonomialIdeal.from_generators(gens, nvars=nvars)


def random_divisibility_chain(
    r: int, rng: random.Random
) -> tuple[list[SquarefreeMonomial], list[SquarefreeMonomial], int]:
    """
    Edge monomials a_0..a_r and b_1..b_r on a tree with a_{i-1} | a_i * b_i.

    a_{i-1} = pq is the middle edge of the path a_i - a_{i-1} - b_i; which end
    a_i hangs from is random. Vertex names are shuffled afterwards.
    """
    nvars = 2 * r + 2
    names = list(range(nvars))
    rng.shuffle(names)
    fresh = iter(range(2, nvars))
    middle = (0, 1)
    a_edges, b_edges = [middle], []
    for _ in range(r):
        p, q = middle if rng.random() < 0.5 else middle[::-1]
        a_i, b_i = (p, next(fresh)), (q, next(fresh))
        a_edges.append(a_i)
        b_edges.append(b_i)
        middle = a_i
    a = [edge_monomial(names[u], names[v]) for u, v in a_edges]
    b = [edge_monomial(names[u], names[v]) for u, v in b_edges]
    return a, b, nvars
