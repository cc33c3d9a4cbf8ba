import pytest

from api.errors import DomainError, NotMinimal
from api.services.lyubeznik import (
    Monomial,
    admissible_symbols,
    betti_numbers,
    build_complex,
    composition_vanishes,
    dense_matrix,
    differential,
    double_star_betti,
    double_star_generators,
    double_star_resolution,
    euler_characteristic,
    is_minimal,
    linearity_check,
    search_orders,
    taylor_symbols,
)

M = Monomial.squarefree

# T_{2,3}: a=0, b=1, x1=2, x2=3, y1=4, y2=5, y3=6; order ab, ax1, ax2, by1, by2, by3
A, B, X1, X2, Y1, Y2, Y3 = range(7)


# syzygy matrices of T_{2,3} as usually printed: rows are symbols of L^t, columns
# symbols of L^(t-1), both in the bases below (L^2 lists ax1, ax2 right after ab)
PRINTED_BASIS = {
    1: [(0,), (1,), (2,), (3,), (4,), (5,)],
    2: [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (0, 5), (3, 4), (3, 5), (4, 5)],
    3: [(0, 1, 2), (0, 3, 4), (0, 3, 5), (0, 4, 5), (3, 4, 5)],
    4: [(0, 3, 4, 5)],
}
PRINTED_MATRICES = {
    2: [
        "-x1  b   0   0   0   0",
        "-x2  0   b   0   0   0",
        " 0  -x2  x1  0   0   0",
        "-y1  0   0   a   0   0",
        "-y2  0   0   0   a   0",
        "-y3  0   0   0   0   a",
        " 0   0   0  -y2  y1  0",
        " 0   0   0  -y3  0   y1",
        " 0   0   0   0  -y3  y2",
    ],
    3: [
        "x2 -x1  b   0   0   0   0   0   0",
        "0   0   0   y2 -y1  0   a   0   0",
        "0   0   0   y3  0  -y1  0   a   0",
        "0   0   0   0   y3 -y2  0   0   a",
        "0   0   0   0   0   0   y3 -y2  y1",
    ],
    4: ["0 -y3 y2 -y1 a"],
}
VARIABLES = {"a": A, "b": B, "x1": X1, "x2": X2, "y1": Y1, "y2": Y2, "y3": Y3}


def _printed_entry(token: str):
    if token == "0":
        return None
    sign = -1 if token.startswith("-") else 1
    return sign, M(VARIABLES[token.lstrip("-")])


@pytest.fixture
def t23():
    return double_star_resolution(2, 3)


def _entries(c, t):
    """{(row symbol, col symbol): (sign, monomial)} for d_t."""
    rows, cols = c.basis(t), c.basis(t - 1)
    return {(rows[e.row], cols[e.col]): (e.sign, e.monomial) for e in differential(c, t)}


def test_double_star_generators():
    assert double_star_generators(2, 3) == [M(A, B), M(A, X1), M(A, X2), M(B, Y1), M(B, Y2), M(B, Y3)]
    with pytest.raises(DomainError):
        double_star_generators(-1, 2)


def test_t23_ranks_and_symbols(t23):
    assert [t23.rank(t) for t in range(5)] == [1, 6, 9, 5, 1]
    assert t23.basis(2) == [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (3, 4), (3, 5), (4, 5)]
    assert t23.basis(3) == [(0, 1, 2), (0, 3, 4), (0, 3, 5), (0, 4, 5), (3, 4, 5)]
    assert t23.basis(4) == [(0, 3, 4, 5)]


def test_t23_matrix_shapes(t23):
    for t, shape in {1: (6, 1), 2: (9, 6), 3: (5, 9), 4: (1, 5)}.items():
        grid = dense_matrix(t23, t)
        assert (len(grid), len(grid[0])) == shape
    assert [len(differential(t23, t)) for t in (2, 3, 4)] == [18, 15, 4]


@pytest.mark.parametrize("t", [2, 3, 4])
def test_t23_matches_printed_matrices(t23, t):
    grid = dense_matrix(t23, t)
    rows, cols = t23.basis(t), t23.basis(t - 1)
    assert sorted(rows) == sorted(PRINTED_BASIS[t])
    permuted = [
        [grid[rows.index(r)][cols.index(c)] for c in PRINTED_BASIS[t - 1]]
        for r in PRINTED_BASIS[t]
    ]
    printed = [[_printed_entry(tok) for tok in line.split()] for line in PRINTED_MATRICES[t]]
    assert permuted == printed


def test_t23_top_row(t23):
    row = dense_matrix(t23, 4)[0]
    assert row == [None, (-1, M(Y3)), (1, M(Y2)), (-1, M(Y1)), (1, M(A))]


def test_t23_entries(t23):
    d2 = _entries(t23, 2)
    assert d2[((0, 1), (1,))] == (1, M(B))
    assert d2[((0, 1), (0,))] == (-1, M(X1))

    d3 = _entries(t23, 3)
    assert d3[((0, 1, 2), (1, 2))] == (1, M(B))
    assert d3[((0, 1, 2), (0, 2))] == (-1, M(X1))
    assert d3[((0, 1, 2), (0, 1))] == (1, M(X2))
    assert d3[((3, 4, 5), (4, 5))] == (1, M(Y1))
    assert d3[((3, 4, 5), (3, 5))] == (-1, M(Y2))
    assert d3[((3, 4, 5), (3, 4))] == (1, M(Y3))

    d1 = _entries(t23, 1)
    assert d1[((3,), ())] == (1, M(B, Y1))


def test_t23_is_a_minimal_linear_complex(t23):
    assert composition_vanishes(t23)
    assert is_minimal(t23)
    assert linearity_check(t23)
    assert euler_characteristic(t23) == 0
    assert betti_numbers(t23) == [6, 9, 5, 1]


@pytest.mark.parametrize("r,s", [(r, s) for r in range(0, 9) for s in range(0, 9)])
def test_double_star_betti_formula(r, s):
    c = double_star_resolution(r, s)
    assert betti_numbers(c) == double_star_betti(r, s)
    assert c.max_dim == max(r, s) + 1
    assert composition_vanishes(c)


def test_double_star_betti_values():
    assert double_star_betti(1, 0) == [2, 1]
    assert double_star_betti(0, 0) == [1]
    assert double_star_betti(4, 2)[:2] == [7, 13]
    assert linearity_check(double_star_resolution(5, 5))


def test_path_orders():
    ab, bc, cd = M(0, 1), M(1, 2), M(2, 3)
    reports = {r.order: r for r in search_orders([ab, bc, cd])}
    assert len(reports) == 6

    # ab, cd, bc: the full triple survives and d_3 has a unit entry
    outer_first = reports[(0, 2, 1)]
    assert outer_first.ranks == (3, 3, 1)
    assert not outer_first.minimal

    middle_first = reports[(1, 0, 2)]
    assert middle_first.ranks == (3, 2)
    assert middle_first.minimal


def test_triangle_is_minimal_in_every_order():
    reports = search_orders([M(0, 1), M(1, 2), M(0, 2)])
    assert all(r.minimal and r.ranks == (3, 2) for r in reports)


def test_longer_path_has_no_minimal_order():
    gens = [M(0, 1), M(1, 2), M(2, 3), M(3, 4)]
    assert not any(r.minimal for r in search_orders(gens))
    with pytest.raises(NotMinimal):
        linearity_check(build_complex(gens))
    with pytest.raises(NotMinimal):
        betti_numbers(build_complex(gens))


def test_minimal_but_not_linear():
    c = build_complex([M(0, 1), M(2, 3)])
    assert is_minimal(c)
    assert not linearity_check(c)
    assert betti_numbers(c) == [2, 1]


def test_lyubeznik_symbols_sit_inside_taylor():
    gens = double_star_generators(2, 2)
    lyubeznik, taylor = admissible_symbols(gens), taylor_symbols(gens)
    for t, symbols in lyubeznik.items():
        assert set(symbols) <= set(taylor[t])
    assert sum(len(s) for s in lyubeznik.values()) < sum(len(s) for s in taylor.values())


def test_coprime_pair_matches_taylor():
    gens = [M(0, 1), M(2, 3)]
    assert admissible_symbols(gens) == taylor_symbols(gens)


def test_single_generator():
    c = build_complex([Monomial.of({0: 2, 1: 1})])
    assert betti_numbers(c) == [1]
    assert euler_characteristic(c) == 0


def test_non_squarefree_generators():
    # xy, x^2, y^2: the middle generator first keeps the complex minimal
    c = build_complex([Monomial.of({0: 1, 1: 1}), Monomial.of({0: 2}), Monomial.of({1: 2})])
    assert composition_vanishes(c)
    assert is_minimal(c)
    assert betti_numbers(c) == [3, 2]


def test_lex_order():
    c = build_complex([M(2, 3), M(0, 1), M(1, 2)], order="lex")
    assert c.ordered_gens == [M(0, 1), M(1, 2), M(2, 3)]


def test_domain_errors(t23):
    with pytest.raises(DomainError):
        differential(t23, 0)
    with pytest.raises(DomainError):
        differential(t23, 5)
    with pytest.raises(DomainError):
        admissible_symbols([M(0, 1), M(0, 1)])
    with pytest.raises(DomainError):
        admissible_symbols([])
    with pytest.raises(DomainError):
        search_orders([M(i, i + 1) for i in range(8)])
    with pytest.raises(DomainError):
        Monomial.of({0: -1})
