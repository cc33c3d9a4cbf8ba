import random

import pytest

from api.enums import CaseTag, FamilyName
from api.errors import DomainError, InternalError, NoEdges, NotStretched
from api.services.ara_builder import (
    bound_is_sharp_line,
    build_stretched_tls,
    double_star_tls,
    family_certificate,
    head_shape_holds,
    line_tls,
    star_tls,
)
from api.services.graph_core import build_forest, make_double_star, make_line
from api.services.monomial_ideal import SquarefreeMonomial, ara_upper_bound, edge_ideal, edge_monomial
from api.services.proj_dim import pd_double_star, pd_forest, pd_line
from api.services.radical_oracle import tls_vanishing_check
from api.services.sv_verify import verify_system
from api.services.tls import decompose_strict, iso, pair, support, validate_tls
from api.utils.forest_generators import random_stretched_forest

E = SquarefreeMonomial.of


def _edge_set(f):
    return frozenset(edge_monomial(u, v) for u, v in f.edges)


def test_example_1_certificate(example_1):
    cert = build_stretched_tls(example_1)
    v, v1, v2, v3, w1, a, b, c = range(8)
    assert cert.system.elements == (
        iso(E(v, v3)),
        pair(E(v, v1), E(v3, w1)),
        iso(E(v, v2)),
        iso(E(w1, a)),
        iso(E(w1, b)),
        iso(E(w1, c)),
    )
    assert cert.claimed_ara == cert.pd_value == 6
    assert sorted(len(chain) for chain in decompose_strict(cert.system)) == [1, 1, 1, 1, 2]
    assert [tag for tag, _ in cert.case_log] == [CaseTag.N_BIG, CaseTag.STAR_COMPONENT]
    assert head_shape_holds(example_1, cert.system)


def test_example_2_certificate(example_2):
    cert = build_stretched_tls(example_2)
    v, v1, v2, w1, w2, a, b, c, d = range(9)
    assert cert.system.elements == (
        iso(E(v, v2)),
        pair(E(v, v1), E(v2, w1)),
        pair(E(v2, w2), E(w1, a)),
        iso(E(a, c)),
        pair(E(a, b), E(c, d)),
    )
    assert cert.pd_value == 5
    assert sorted(len(chain) for chain in decompose_strict(cert.system)) == [2, 3]
    tags = [tag for tag, _ in cert.case_log]
    assert tags[-2:] == [CaseTag.CASE_3_1B, CaseTag.CASE_1]
    assert CaseTag.N_BIG in tags
    assert head_shape_holds(example_2, cert.system)


def test_case_log_records_split_data(example_2):
    cert = build_stretched_tls(example_2)
    data = dict(cert.case_log)[CaseTag.CASE_3_1B]
    assert data == {"v": 0, "w": 4, "h": 3}


def test_line_four():
    cert = build_stretched_tls(make_line(4))
    assert cert.system.elements == (iso(E(1, 2)), pair(E(0, 1), E(2, 3)))


def test_step_cap(example_2):
    with pytest.raises(InternalError):
        build_stretched_tls(example_2, max_steps=1)


def test_rejects_unstretched_and_empty():
    with pytest.raises(NotStretched):
        build_stretched_tls(make_double_star(3, 3))
    with pytest.raises(NoEdges):
        build_stretched_tls(build_forest(3, []))


def test_disconnected_forest():
    f = build_forest(5, [(0, 1), (2, 3), (3, 4)])
    cert = build_stretched_tls(f)
    assert pd_forest(f).value == 3
    assert len(cert.system) == cert.claimed_ara == 3
    assert support(cert.system) == _edge_set(f)
    assert head_shape_holds(f, cert.system)


def test_inverts_chain_not_starting_at_an_isolated_split_edge():
    # the system for T - 0 is 34; 23 + 46; 14 + 56; 47, where 14 + 56 hangs
    # off a chain headed by 34 while 47 is the only free isolated v_2 w
    f = build_forest(8, [(0, 1), (1, 4), (2, 3), (3, 4), (4, 6), (4, 7), (5, 6)])
    cert = build_stretched_tls(f)
    target = _edge_set(f)
    assert cert.pd_value == len(cert.system) == 4
    assert cert.system.elements == (
        iso(E(1, 4)),
        pair(E(0, 1), E(3, 4)),
        pair(E(2, 3), E(4, 6)),
        pair(E(4, 7), E(5, 6)),
    )
    assert dict(cert.case_log)[CaseTag.CASE_3_1B] == {"v": 1, "w": 7, "h": 6}
    assert verify_system(cert.system, target).ok
    assert head_shape_holds(f, cert.system)
    assert sum(len(chain) for chain in decompose_strict(cert.system)) == 4


@pytest.mark.parametrize("r,s", [(r, s) for r in range(0, 9) for s in range(0, 9)])
def test_double_star_family(r, s):
    cert = double_star_tls(r, s)
    assert len(cert.system) == pd_double_star(r, s) == max(r, s) + 1
    assert validate_tls(cert.system).ok
    assert support(cert.system) == _edge_set(make_double_star(r, s))
    assert ara_upper_bound(edge_ideal(make_double_star(r, s))) == max(r, s) + 1


def test_double_star_2_3():
    cert = family_certificate(FamilyName.DOUBLE_STAR, [2, 3])
    a, b, x1, x2, y1, y2, y3 = range(7)
    assert cert.system.elements == (
        iso(E(a, b)),
        pair(E(a, x1), E(b, y1)),
        pair(E(a, x2), E(b, y2)),
        iso(E(b, y3)),
    )


@pytest.mark.parametrize("r", range(2, 31))
def test_line_family(r):
    cert = line_tls(r)
    assert len(cert.system) == pd_line(r) == pd_forest(make_line(r)).value
    assert validate_tls(cert.system).ok
    assert support(cert.system) == _edge_set(make_line(r))
    assert bound_is_sharp_line(r) == (r <= 6)


def test_star_family():
    cert = star_tls(4)
    assert len(cert.system) == 4 and all(q.is_isolated for q in cert.system)


def test_family_arguments():
    with pytest.raises(DomainError):
        family_certificate("line", [2, 3])
    with pytest.raises(ValueError):
        family_certificate("cycle", [4])


def test_random_stretched_forests():
    rng = random.Random(2024)
    oracle_runs = 0
    for _ in range(200):
        f = random_stretched_forest(rng, max_vertices=40)
        cert = build_stretched_tls(f)
        target = _edge_set(f)

        assert len(cert.system) == pd_forest(f).value
        assert support(cert.system) == target
        assert verify_system(cert.system, target).ok
        assert head_shape_holds(f, cert.system), f.edge_list
        chains = decompose_strict(cert.system)
        assert sorted(i for chain in chains for i in chain.positions) == list(range(len(cert.system)))

        primes = [p for p, limit in ((2, 14), (3, 10)) if f.n <= limit]
        if primes:
            oracle_runs += 1
            for p, result in tls_vanishing_check(cert.system, primes, target=target).items():
                assert result.equal and result.inclusion_ok, (p, f.edge_list)
    assert oracle_runs > 0


def test_dropping_an_element_breaks_the_certificate(example_1, example_2):
    for f in (example_1, example_2, make_line(7)):
        cert = build_stretched_tls(f)
        target = _edge_set(f)
        for k in range(len(cert.system)):
            elements = cert.system.elements[:k] + cert.system.elements[k + 1:]
            corrupted = type(cert.system)(elements=elements, nvars=cert.system.nvars)
            assert not verify_system(corrupted, target).ok


def test_dropping_an_isolated_summand_is_seen_by_the_oracle(example_1):
    cert = build_stretched_tls(example_1)
    corrupted = type(cert.system)(elements=cert.system.elements[:-1], nvars=cert.system.nvars)
    result = tls_vanishing_check(corrupted, [2], target=_edge_set(example_1))[2]
    assert not result.equal
    assert result.witness is not None
