import random

import pytest

from api.errors import (
    InvalidSystem,
    IsolatedElement,
    NotASubtree,
    NotForestSupport,
    NotStretched,
    PreconditionViolated,
    SupportMismatch,
)
from api.services.monomial_ideal import SquarefreeMonomial
from api.services.tls import (
    decompose_strict,
    equivalent,
    invert_chain,
    is_strict,
    iso,
    juxtapose,
    make_system,
    pair,
    predecessor,
    push_to_top,
    reorder_valid,
    replace_subsequence,
    restrict_to_component,
    strict_subtree_ending_at,
    support,
    tree_inversion,
    validate_tls,
)
from api.utils.forest_generators import random_divisibility_chain

E = SquarefreeMonomial.of

# Example 2 labels: v=0, v1=1, v2=2, w1=3, w2=4, a=5, b=6, c=7, d=8
VV1, VV2, V2W1, V2W2, W1A, AC, AB, CD = E(0, 1), E(0, 2), E(2, 3), E(2, 4), E(3, 5), E(5, 7), E(5, 6), E(7, 8)


@pytest.fixture
def example_2_system():
    return make_system([iso(VV2), pair(VV1, V2W1), pair(V2W2, W1A), iso(AC), pair(AB, CD)], 9)


def test_either_summand_may_divide(example_2_system):
    # V2W1 is the right summand of element 1 and the only divisor of element 2
    assert validate_tls(example_2_system).ok
    assert predecessor(example_2_system, 2) == 1


def test_validation_failures():
    assert not validate_tls(make_system([pair(E(0, 1), E(2, 3))])).ok
    repeated = validate_tls(make_system([iso(E(0, 1)), pair(E(0, 1), E(1, 2))]))
    assert not repeated.ok and repeated.position == 1
    same = validate_tls(make_system([iso(E(0, 1)), pair(E(1, 2), E(1, 2))]))
    assert not same.ok


def test_isolated_element_has_no_predecessor(example_2_system):
    with pytest.raises(IsolatedElement):
        predecessor(example_2_system, 0)


def test_strict_subtrees(example_2_system):
    assert strict_subtree_ending_at(example_2_system, 2).positions == (0, 1, 2)
    assert strict_subtree_ending_at(example_2_system, 4).positions == (3, 4)
    chains = decompose_strict(example_2_system)
    assert [c.positions for c in chains] == [(0, 1, 2), (3, 4)]
    assert is_strict(make_system([iso(VV2), pair(VV1, V2W1), pair(V2W2, W1A)]))
    assert not is_strict(example_2_system)


def test_decompose_rejects_two_followers():
    # bc; ab + cd; eb + cf around the edge bc whose ends have degree 3
    a, b, c, d, e, f = range(6)
    s = make_system([iso(E(b, c)), pair(E(a, b), E(c, d)), pair(E(e, b), E(c, f))])
    assert validate_tls(s).ok
    with pytest.raises(NotStretched):
        decompose_strict(s)


def test_forest_support_required():
    s = make_system([iso(E(0, 1, 2)), pair(E(0, 3), E(1, 4))])
    with pytest.raises(NotForestSupport):
        decompose_strict(s)
    cycle = make_system([iso(E(0, 1)), pair(E(1, 2), E(0, 2))])
    with pytest.raises(NotForestSupport):
        predecessor(cycle, 1)


def test_equivalent_and_juxtapose(example_2_system):
    reordered = make_system([iso(AC), pair(AB, CD), iso(VV2), pair(VV1, V2W1), pair(V2W2, W1A)], 9)
    assert equivalent(example_2_system, reordered)
    assert not equivalent(example_2_system, make_system([iso(VV2)], 9))

    first = make_system([iso(E(0, 1))])
    second = make_system([iso(E(2, 3)), pair(E(1, 2), E(3, 4))])
    joined = juxtapose(first, second)
    assert len(joined) == 3 and validate_tls(joined).ok
    with pytest.raises(SupportMismatch):
        juxtapose(first, make_system([iso(E(0, 1))]))


def test_restrict_to_component(example_2_system):
    part = restrict_to_component(example_2_system, [(5, 7), (5, 6), (7, 8)])
    assert part.elements == (iso(AC), pair(AB, CD))


def test_push_to_top(example_2_system):
    moved = push_to_top(example_2_system, [3, 4])
    assert moved.elements[:2] == (iso(AC), pair(AB, CD))
    assert validate_tls(moved).ok
    with pytest.raises(NotASubtree):
        push_to_top(example_2_system, [4])
    with pytest.raises(NotASubtree):
        push_to_top(example_2_system, [1, 1])


def test_replace_subsequence(example_2_system):
    out = replace_subsequence(example_2_system, [3, 4], make_system([iso(AB), iso(CD), iso(AC)]))
    assert out.elements[:3] == (iso(AB), iso(CD), iso(AC))
    assert support(out) == support(example_2_system)
    with pytest.raises(SupportMismatch):
        replace_subsequence(example_2_system, [3, 4], make_system([iso(AB)]))


def test_reorder_valid_is_stable(example_2_system):
    shuffled = [pair(AB, CD), pair(V2W2, W1A), iso(AC), pair(VV1, V2W1), iso(VV2)]
    out = reorder_valid(shuffled, 9)
    assert out.elements == (iso(AC), pair(AB, CD), iso(VV2), pair(VV1, V2W1), pair(V2W2, W1A))
    assert equivalent(out, example_2_system)
    with pytest.raises(InvalidSystem):
        reorder_valid([pair(AB, CD), pair(V2W2, W1A)], 9)


def test_tree_inversion_of_three_chain():
    # a0 = bc, a1 = ab, b1 = cd, a2 = ea, b2 = bf
    a, b, c, d, e, f = range(6)
    out = tree_inversion([E(b, c), E(a, b), E(a, e)], [E(c, d), E(b, f)])
    assert out.elements == (iso(E(a, b)), pair(E(b, c), E(a, e)), pair(E(b, f), E(c, d)))
    assert is_strict(out)


def test_tree_inversion_preconditions():
    with pytest.raises(PreconditionViolated):
        tree_inversion([E(0, 1), E(1, 2)], [E(0, 3)])
    with pytest.raises(PreconditionViolated):
        tree_inversion([E(0, 1), E(1, 2), E(2, 3)], [E(0, 4), E(5, 6)])
    with pytest.raises(PreconditionViolated):
        tree_inversion([E(0, 1), E(1, 2), E(2, 3)], [E(0, 4)])


def test_random_tree_inversions():
    rng = random.Random(31337)
    for _ in range(120):
        r = rng.randint(2, 8)
        a, b, nvars = random_divisibility_chain(r, rng)
        chain = make_system([iso(a[0])] + [pair(a[i], b[i - 1]) for i in range(1, r + 1)], nvars)
        assert is_strict(chain)

        out = tree_inversion(a, b, nvars)
        assert is_strict(out)
        assert len(out) == r + 1
        assert support(out) == support(chain)
        assert out.elements[0] == iso(a[r - 1])


def test_invert_chain_in_place(example_2_system):
    chain = strict_subtree_ending_at(example_2_system, 2)
    out = invert_chain(example_2_system, chain, W1A)
    assert out.elements[:3] == (iso(V2W1), pair(VV2, W1A), pair(V2W2, VV1))
    assert equivalent(out, example_2_system)
    assert out.elements[3:] == (iso(AC), pair(AB, CD))
