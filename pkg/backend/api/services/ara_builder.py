"""
Tree-like systems of length pd for edge ideals of stretched forests, plus the
closed-form systems for double stars and line graphs.

The builder works one connected component at a time. For a component it picks
a splitting vertex v with neighbours v_1..v_n (v_n the only possible non-leaf)
and the neighbours w_1..w_m of v_n other than v:

* all degrees 1: a single edge
* v_n a leaf: a star, every edge monomial isolated
* n >= 3 (then m = 1): vv_n; vv_1 + v_n w_1; vv_2; ...; vv_{n-1}; then T''
* n = 2: start from a system for T' = T - v_1 and rewrite it until vv_2 and
  some v_2 w_i are isolated summands, then emit vv_2; vv_1 + v_2 w_i; rest.

The n = 2 rewriting loop is capped by ARA_BUILDER_MAX_STEPS.
"""
import logging
from dataclasses import dataclass, field
from typing import Any

from api import config
from api.enums import CaseTag, FamilyName
from api.errors import DomainError, InternalError, NoEdges, NotStretched
from api.services.graph_core import (
    Edge,
    Forest,
    is_stretched,
    make_double_star,
    make_line,
    make_star,
    select_splitting_vertex,
    split_components,
)
from api.services.monomial_ideal import SquarefreeMonomial, ara_upper_bound, edge_ideal, edge_monomial
from api.services.proj_dim import PdCalculator, pd_double_star, pd_line
from api.services.tls import (
    TlsElement,
    TreeLikeSystem,
    invert_chain,
    iso,
    juxtapose,
    make_system,
    pair,
    reorder_valid,
    replace_subsequence,
    restrict_to_component,
    strict_subtree_ending_at,
    support,
    validate_tls,
)

logger = logging.getLogger(__name__)


@dataclass
class AraCertificate:
    system: TreeLikeSystem
    claimed_ara: int
    pd_value: int
    case_log: list[tuple[CaseTag, dict[str, Any]]] = field(default_factory=list)
    labels: tuple[str, ...] = ()
    family: str | None = None


@dataclass(frozen=True)
class _SplitContext:
    """Fixed data of one n = 2 component while its system is rewritten."""
    v: int
    v1: int
    v2: int
    ws: tuple[int, ...]
    a_prime: int
    a_double: int
    t_double: frozenset[Edge]

    @property
    def vv1(self) -> SquarefreeMonomial:
        return edge_monomial(self.v, self.v1)

    @property
    def vv2(self) -> SquarefreeMonomial:
        return edge_monomial(self.v, self.v2)

    def v2w(self, w: int) -> SquarefreeMonomial:
        return edge_monomial(self.v2, w)


def _monomials(edges) -> set[SquarefreeMonomial]:
    return {edge_monomial(u, v) for u, v in edges}


class StretchedTlsBuilder:

    def __init__(self, forest: Forest, max_steps: int | None = None):
        self.forest = forest
        self.max_steps = max_steps or config.ARA_BUILDER_MAX_STEPS
        self.pd = PdCalculator(forest)
        self.memo: dict[frozenset[Edge], TreeLikeSystem] = {}
        self.case_log: list[tuple[CaseTag, dict[str, Any]]] = []

    def _log(self, tag: CaseTag, **data):
        self.case_log.append((tag, data))
        logger.debug(f"{tag.value}: {data}")

    def build(self, edges: frozenset[Edge]) -> TreeLikeSystem:
        parts = [self.build_component(c) for c in split_components(edges)]
        if not parts:
            return TreeLikeSystem(elements=(), nvars=self.forest.n)
        return juxtapose(*parts)

    def build_component(self, edges: frozenset[Edge]) -> TreeLikeSystem:
        if edges in self.memo:
            return self.memo[edges]

        sub = self.forest.restrict(edges)
        deg = sub.degrees
        if max(deg) <= 1:
            (edge,) = edges
            self._log(CaseTag.MATCHING, edge=list(edge))
            system = make_system([iso(edge_monomial(*edge))], self.forest.n)
        else:
            split = select_splitting_vertex(sub)
            v, nbrs = split.vertex, split.neighbors
            vn = nbrs[-1]
            if deg[vn] == 1:
                self._log(CaseTag.STAR_COMPONENT, center=v, n=len(nbrs))
                system = make_system([iso(edge_monomial(v, w)) for w in nbrs], self.forest.n)
            else:
                ws = tuple(w for w in sub.neighbors(vn) if w != v)
                if len(nbrs) >= 3:
                    system = self._build_many_leaves(edges, v, nbrs, ws)
                else:
                    system = self._build_two_neighbours(edges, v, nbrs[0], vn, ws)

        expected = self.pd.pd_component(edges)
        if len(system) != expected:
            raise InternalError(f"Built {len(system)} elements for a component with pd {expected}")
        if support(system) != _monomials(edges):
            raise InternalError("Built system does not have the component's edge monomials as support")
        check = validate_tls(system)
        if not check.ok:
            raise InternalError(f"Built system is not tree-like: {check.violation}")

        self.memo[edges] = system
        return system

    # --- n >= 3 ---------------------------------------------------------

    def _build_many_leaves(self, edges, v: int, nbrs: tuple[int, ...], ws: tuple[int, ...]) -> TreeLikeSystem:
        vn = nbrs[-1]
        if len(ws) != 1:
            raise NotStretched(f"Edge {self.forest.label(v)}-{self.forest.label(vn)} has both endpoints of degree > 2")
        self._log(CaseTag.N_BIG, v=v, n=len(nbrs), w=ws[0])
        head = [
            iso(edge_monomial(v, vn)),
            pair(edge_monomial(v, nbrs[0]), edge_monomial(vn, ws[0])),
        ] + [iso(edge_monomial(v, vi)) for vi in nbrs[1:-1]]
        closed = {v, vn}
        t_double = frozenset(e for e in edges if not closed.intersection(e))
        return juxtapose(make_system(head, self.forest.n), self.build(t_double))

    # --- n = 2 ----------------------------------------------------------

    def _build_two_neighbours(self, edges, v: int, v1: int, v2: int, ws: tuple[int, ...]) -> TreeLikeSystem:
        t_prime = frozenset(e for e in edges if v1 not in e)
        t_double = frozenset(e for e in edges if v not in e and v2 not in e)
        ctx = _SplitContext(
            v=v, v1=v1, v2=v2, ws=ws,
            a_prime=self.pd.pd_edges(t_prime),
            a_double=self.pd.pd_edges(t_double),
            t_double=t_double,
        )
        sigma = self.build(t_prime)
        for _ in range(self.max_steps):
            done, sigma = self._step(sigma, ctx)
            if done:
                return sigma
        raise InternalError(
            f"Case dispatch did not settle within {self.max_steps} steps at vertex {self.forest.label(v)}"
        )

    def _component_of(self, w: int, ctx: _SplitContext) -> frozenset[Edge]:
        for piece in split_components(ctx.t_double):
            if any(w in e for e in piece):
                return piece
        return frozenset()

    def _step(self, sigma: TreeLikeSystem, ctx: _SplitContext) -> tuple[bool, TreeLikeSystem]:
        """One round of case dispatch. Returns (finished, system)."""
        vv2 = ctx.vv2
        iso_ws = [w for w in ctx.ws if sigma.is_isolated_summand(ctx.v2w(w))]
        vv2_isolated = sigma.is_isolated_summand(vv2)

        if vv2_isolated and iso_ws:
            w = iso_ws[0]
            used = {sigma.position_of(vv2), sigma.position_of(ctx.v2w(w))}
            rest = [q for i, q in enumerate(sigma) if i not in used]
            self._log(CaseTag.CASE_1, v=ctx.v, w=w)
            return True, make_system([iso(vv2), pair(ctx.vv1, ctx.v2w(w))] + rest, sigma.nvars)

        if vv2_isolated:
            return self._case_2(sigma, ctx)
        return self._case_3(sigma, ctx, iso_ws)

    def _case_2(self, sigma: TreeLikeSystem, ctx: _SplitContext) -> tuple[bool, TreeLikeSystem]:
        ws_set = set(ctx.ws)
        others = {w: sigma[sigma.position_of(ctx.v2w(w))].other(ctx.v2w(w)) for w in ctx.ws}

        for w in ctx.ws:
            if others[w].var_set & ws_set:
                chain = strict_subtree_ending_at(sigma, sigma.position_of(ctx.v2w(w)))
                if len(chain) < 3:
                    raise InternalError("Case 2.1 chain is too short to invert")
                self._log(CaseTag.CASE_2_1, v=ctx.v, w=w, chain=len(chain))
                return False, invert_chain(sigma, chain, ctx.v2w(w))

        pieces = {w: self._component_of(w, ctx) for w in ctx.ws}
        pd_c = {w: self.pd.pd_edges(pieces[w]) for w in ctx.ws}
        pd_bar = {w: self.pd.pd_edges(pieces[w] | {tuple(sorted((ctx.v2, w)))}) for w in ctx.ws}
        deficits = [w for w in ctx.ws if pd_c[w] < pd_bar[w]]

        if not deficits:
            w1 = ctx.ws[0]
            used = {sigma.position_of(ctx.vv2), sigma.position_of(ctx.v2w(w1))}
            rest = [q for i, q in enumerate(sigma) if i not in used]
            self._log(CaseTag.CASE_2_2_1, v=ctx.v, w=w1, a_prime=ctx.a_prime, a_double=ctx.a_double)
            head = [iso(ctx.vv2), pair(ctx.vv1, ctx.v2w(w1)), iso(others[w1])]
            return True, make_system(head + rest, sigma.nvars)

        w = deficits[0]
        wanted = _monomials(pieces[w]) | {ctx.v2w(w)}
        positions = [i for i, q in enumerate(sigma) if all(m in wanted for m in q.summands)]
        replacement = juxtapose(make_system([iso(ctx.v2w(w))], sigma.nvars), self.build(pieces[w]))
        self._log(CaseTag.CASE_2_2_2, v=ctx.v, w=w, pd_c=pd_c[w], pd_bar=pd_bar[w])
        return False, replace_subsequence(sigma, positions, replacement)

    def _case_3(self, sigma: TreeLikeSystem, ctx: _SplitContext, iso_ws: list[int]) -> tuple[bool, TreeLikeSystem]:
        vv2 = ctx.vv2
        p = sigma.position_of(vv2)
        q = sigma[p]
        partner = q.other(vv2)

        # the chain ending at vv_2 + b must start at an isolated v_2 w_i
        chain = strict_subtree_ending_at(sigma, p)
        start = sigma[chain.positions[0]].left
        if start not in {ctx.v2w(w) for w in ctx.ws}:
            self._log(CaseTag.CASE_3_INVERT, v=ctx.v, chain=len(chain))
            return False, invert_chain(sigma, chain, vv2)

        if ctx.a_prime <= ctx.a_double + 1:
            self._log(CaseTag.CASE_3_1A, v=ctx.v, a_prime=ctx.a_prime, a_double=ctx.a_double)
            split_q = make_system([iso(vv2), iso(partner)], sigma.nvars)
            return False, replace_subsequence(sigma, [p], split_q)

        h = next((w for w in ctx.ws if w in partner.var_set), None)
        if h is None:
            raise InternalError("The partner of vv_2 does not touch any w_i")

        outside = [w for w in iso_ws if w != h and sigma.position_of(ctx.v2w(w)) not in chain.positions]
        if outside:
            j = outside[0]
            k = sigma.position_of(ctx.v2w(j))
            elements = list(sigma.elements)
            elements[p] = TlsElement(left=ctx.v2w(j), right=partner)
            elements[k] = iso(vv2)
            self._log(CaseTag.CASE_3_1B, v=ctx.v, w=j, h=h)
            return False, reorder_valid(elements, sigma.nvars)

        if len(ctx.ws) == 1:
            self._log(CaseTag.CASE_3_2, v=ctx.v, m=1)
            head = make_system([iso(vv2), iso(ctx.v2w(ctx.ws[0]))], sigma.nvars)
            return False, juxtapose(head, self.build(ctx.t_double))

        for w in ctx.ws:
            piece = self._component_of(w, ctx)
            own = _monomials(piece)
            touching = [i for i, el in enumerate(sigma) if any(m in own for m in el.summands)]
            if self.pd.pd_edges(piece) < len(touching):
                extra = {m for i in touching for m in sigma[i].summands} - own
                if len(extra) != 1:
                    raise InternalError(f"Expected one foreign summand next to component of w={w}, found {len(extra)}")
                (head_mono,) = extra
                replacement = juxtapose(make_system([iso(head_mono)], sigma.nvars), self.build(piece))
                self._log(CaseTag.CASE_3_2, v=ctx.v, m=len(ctx.ws), w=w, h=h)
                return False, replace_subsequence(sigma, touching, replacement)

        raise InternalError("Case 3.2 found no component with a length deficit")


def _labels_for(f: Forest) -> tuple[str, ...]:
    return tuple(f.label(i) for i in range(f.n))


def build_stretched_tls(f: Forest, max_steps: int | None = None) -> AraCertificate:
    """
    Tree-like system of length pd(R/I(f)) for a stretched forest.

    Raises:
        NoEdges: f has no edge
        NotStretched: some edge has both endpoints of degree > 2
    """
    if not f.edges:
        raise NoEdges("Nothing to certify: the forest has no edges")
    if not is_stretched(f):
        raise NotStretched(
            "Forest is not stretched; use a family (double-star, line) for closed-form certificates"
        )
    builder = StretchedTlsBuilder(f, max_steps=max_steps)
    system = builder.build(f.edges)
    pd_value = builder.pd.pd_edges(f.edges)
    logger.info(f"Built tree-like system of length {len(system)} (pd={pd_value}) in {len(builder.case_log)} steps")
    return AraCertificate(
        system=system,
        claimed_ara=len(system),
        pd_value=pd_value,
        case_log=builder.case_log,
        labels=_labels_for(f),
    )


def head_shape_holds(f: Forest, system: TreeLikeSystem) -> bool:
    """
    Each component's elements start the way the construction promises: vv_2;
    vv_1 + v_2 w for n = 2, and vv_n; vv_1 + v_n w_1; vv_2 ... vv_{n-1}
    (leaves in any order) for n >= 3.
    """
    return all(
        _component_head_shape(f.restrict(piece), restrict_to_component(system, piece))
        for piece in split_components(f.edges)
    )


def _component_head_shape(f: Forest, system: TreeLikeSystem) -> bool:
    deg = f.degrees
    if max(deg) <= 1:
        return len(system) == 1
    split = select_splitting_vertex(f)
    v, nbrs = split.vertex, split.neighbors
    vn = nbrs[-1]
    if deg[vn] == 1:
        return all(q.is_isolated for q in system)
    n = len(nbrs)
    if len(system) < n or system[0] != iso(edge_monomial(v, vn)):
        return False
    second = system[1]
    if second.is_isolated:
        return False
    leaves = set(nbrs[:-1])
    if v not in second.left.var_set:
        return False
    (first_leaf,) = second.left.var_set - {v}
    if first_leaf not in leaves:
        return False
    if vn not in second.right.var_set or v in second.right.var_set:
        return False
    rest = {q.left for q in system[2:n] if q.is_isolated}
    return rest == {edge_monomial(v, leaf) for leaf in leaves - {first_leaf}}


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def double_star_tls(r: int, s: int) -> AraCertificate:
    """ab; ax_i + by_i for i <= min(r, s); then the leftover leaves of the larger side."""
    f = make_double_star(r, s)
    a, b = 0, 1

    def x(i):
        return 1 + i

    def y(j):
        return 1 + r + j

    elements = [iso(edge_monomial(a, b))]
    for i in range(1, min(r, s) + 1):
        elements.append(pair(edge_monomial(a, x(i)), edge_monomial(b, y(i))))
    if r <= s:
        elements += [iso(edge_monomial(b, y(j))) for j in range(r + 1, s + 1)]
    else:
        elements += [iso(edge_monomial(a, x(i))) for i in range(s + 1, r + 1)]
    return AraCertificate(
        system=make_system(elements, f.n),
        claimed_ara=len(elements),
        pd_value=pd_double_star(r, s),
        labels=_labels_for(f),
        family=FamilyName.DOUBLE_STAR.value,
    )


def line_tls(r: int) -> AraCertificate:
    """The residue-class lists for L_r (vertex i-1 is x_i)."""
    f = make_line(r)

    def xx(i, j):
        return edge_monomial(i - 1, j - 1)

    s, residue = divmod(r, 3)
    blocks = s - 1 if residue == 0 else s
    elements: list[TlsElement] = []
    for k in range(1, blocks + 1):
        elements.append(iso(xx(3 * k - 1, 3 * k)))
        elements.append(pair(xx(3 * k - 2, 3 * k - 1), xx(3 * k, 3 * k + 1)))
    if residue == 0:
        elements += [iso(xx(3 * s - 2, 3 * s - 1)), iso(xx(3 * s - 1, 3 * s))]
    elif residue == 2:
        elements.append(iso(xx(3 * s + 1, 3 * s + 2)))
    return AraCertificate(
        system=make_system(elements, f.n),
        claimed_ara=len(elements),
        pd_value=pd_line(r),
        labels=_labels_for(f),
        family=FamilyName.LINE.value,
    )


def star_tls(r: int) -> AraCertificate:
    f = make_star(r)
    elements = [iso(edge_monomial(0, i)) for i in range(1, r + 1)]
    return AraCertificate(
        system=make_system(elements, f.n),
        claimed_ara=r,
        pd_value=r,
        labels=_labels_for(f),
        family=FamilyName.STAR.value,
    )


def bound_is_sharp_line(r: int) -> bool:
    """Whether ara I(L_r) reaches mu - rho + 1."""
    if r < 2:
        raise DomainError(f"Line graph needs r >= 2, got {r}")
    return pd_line(r) == ara_upper_bound(edge_ideal(make_line(r)))


def family_certificate(name: FamilyName | str, args: list[int]) -> AraCertificate:
    name = FamilyName(name)
    if name is FamilyName.STAR and len(args) == 1:
        return star_tls(args[0])
    if name is FamilyName.LINE and len(args) == 1:
        return line_tls(args[0])
    if name is FamilyName.DOUBLE_STAR and len(args) == 2:
        return double_star_tls(args[0], args[1])
    raise DomainError(f"Family {name.value} does not take {len(args)} arguments")


def family_forest(name: FamilyName | str, args: list[int]) -> Forest:
    name = FamilyName(name)
    if name is FamilyName.STAR and len(args) == 1:
        return make_star(args[0])
    if name is FamilyName.LINE and len(args) == 1:
        return make_line(args[0])
    if name is FamilyName.DOUBLE_STAR and len(args) == 2:
        return make_double_star(args[0], args[1])
    raise DomainError(f"Family {name.value} does not take {len(args)} arguments")
