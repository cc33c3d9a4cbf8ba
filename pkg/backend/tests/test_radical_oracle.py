import itertools
import random

import pytest

from api.errors import CapExceeded, DomainError
from api.services.ara_builder import build_stretched_tls, double_star_tls
from api.services.monomial_ideal import SquarefreeMonomial
from api.services.radical_oracle import (
    DensePoly,
    evaluate,
    tls_vanishing_check,
    vanishing_equal,
    witness_in_original_vars,
)
from api.services.tls import iso, make_system, pair

E = SquarefreeMonomial.of


def _brute_force_equal(qs, ps, p, n):
    for point in itertools.product(range(p), repeat=n):
        q_zero = all(evaluate(q, point) == 0 for q in qs)
        p_zero = all(evaluate(f, point) == 0 for f in ps)
        if q_zero != p_zero:
            return False
    return True


def _random_poly(rng, n, p):
    terms = []
    for _ in range(rng.randint(1, 3)):
        vars = rng.sample(range(n), rng.randint(1, min(3, n)))
        terms.append((vars, rng.randint(1, p - 1)))
    return DensePoly.from_terms(terms, p)


def test_dense_poly():
    poly = DensePoly.from_terms([((0, 1), 1), ((1, 0), 2), ((2,), 4)], 3)
    assert poly.terms == (((2,), 1),)  # 1 + 2 = 0 mod 3, 4 = 1 mod 3
    assert poly.variables == {2}
    assert evaluate(poly, [0, 0, 2]) == 2
    assert poly.remap({2: 0}).terms == (((0,), 1),)
    with pytest.raises(DomainError):
        DensePoly.from_terms({frozenset({0}): 1}, 4)


def test_single_binomial_against_its_monomials():
    # xy + zw vanishes where xy = zw = 0 fails, e.g. x = y = z = w = 1 over F_2
    q = [DensePoly.from_monomials([E(0, 1), E(2, 3)], 2)]
    ps = [DensePoly.from_monomials([E(0, 1)], 2), DensePoly.from_monomials([E(2, 3)], 2)]
    result = vanishing_equal(q, ps, 2, 4)
    assert not result.equal
    assert result.inclusion_ok
    assert result.points == 16
    assert result.witness == (1, 1, 1, 1)


def test_gray_walk_and_odometer_match_brute_force():
    rng = random.Random(5)
    for p in (2, 3, 5):
        for _ in range(25):
            n = rng.randint(1, 5)
            qs = [_random_poly(rng, n, p) for _ in range(rng.randint(1, 3))]
            ps = [_random_poly(rng, n, p) for _ in range(rng.randint(1, 3))]
            assert vanishing_equal(qs, ps, p, n).equal == _brute_force_equal(qs, ps, p, n)


@pytest.mark.parametrize("p", [2, 3])
def test_chunked_runs_agree(p):
    rng = random.Random(p)
    n = 6
    qs = [_random_poly(rng, n, p) for _ in range(3)]
    ps = [_random_poly(rng, n, p) for _ in range(2)]
    whole = vanishing_equal(qs, ps, p, n)
    chunked = vanishing_equal(qs, ps, p, n, workers=3, chunk=7)
    assert chunked == whole


def test_caps_and_field_checks():
    q = [DensePoly.from_monomials([E(0, 1)], 2)]
    with pytest.raises(CapExceeded):
        vanishing_equal(q, q, 2, 5, cap=4)
    with pytest.raises(DomainError):
        vanishing_equal(q, q, 6, 2)
    with pytest.raises(DomainError):
        vanishing_equal(q, [DensePoly.from_monomials([E(0, 1)], 3)], 2, 2)
    with pytest.raises(DomainError):
        vanishing_equal(q, q, 2, 1)


def test_certificates_pass_over_small_fields(example_2):
    cert = build_stretched_tls(example_2)
    for p, result in tls_vanishing_check(cert.system, [2, 3, 5]).items():
        assert result.equal and result.inclusion_ok, p

    for p, result in tls_vanishing_check(double_star_tls(2, 3).system, [2, 3]).items():
        assert result.equal and result.inclusion_ok, p


def test_unused_variables_are_compressed():
    # only variables 10..13 occur
    system = make_system([iso(E(10, 11)), pair(E(11, 12), E(10, 13))])
    result = tls_vanishing_check(system, [2])[2]
    assert result.points == 2 ** 4


def test_witness_in_original_vars():
    system = make_system([pair(E(4, 5), E(6, 7))])
    target = frozenset({E(4, 5), E(6, 7)})
    result = tls_vanishing_check(system, [2], target=target)[2]
    assert not result.equal
    witness = witness_in_original_vars(system, result, target)
    assert set(witness) == {4, 5, 6, 7}
    assert witness == {4: 1, 5: 1, 6: 1, 7: 1}
