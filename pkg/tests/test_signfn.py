import json
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from glweight.perm import Permutation, all_permutations, merge_neighbors, parse_permutation, swap_neighbors
from glweight.signfn import (
    SignFunction,
    distinguished_indices,
    distinguished_pairs,
    evaluate_sign,
    merge_neighbors_sign,
    neighbor_edges,
    sign_function,
    sign_parities,
    swap_neighbors_sign,
)


def P(text, k=None):
    return parse_permutation(text, k)


def test_distinguished_indices():
    assert distinguished_indices(P("(1 3 2)")) == {3}
    assert distinguished_indices(P("(1 2 3)")) == {2, 3}
    assert distinguished_indices(Permutation.identity(3)) == set()


def test_distinguished_pairs_132():
    assert distinguished_pairs(P("(1 3 2)")) == {(1, 2), (1, 3), (2, 3)}


@pytest.mark.parametrize(
    "cycles, k, expected",
    [
        ("Id", 2, "0"),
        ("(1 2)", 2, "i2"),
        ("(1 2 3)", 3, "i2+i3"),
        ("(1 3 2)", 3, "i3+i2+(i3+i2)*(i1+i2)"),
        ("(1 3)(2 4)", 4, "i3+i4+(i2+i4)*(i1+i3)"),
        ("(1 4 2)", 4, "(i2+i4)*(i1+i4)"),
        ("(1 2 4 3)", 4, "i2+i4+i1*i4+i1*i3+i4*i3"),
        ("(1 4 3 2)", 4, "i4+(i1+i3)*(i4+i2)"),
    ],
)
def test_sign_functions_of_small_permutations(cycles, k, expected):
    assert sign_function(P(cycles, k)) == SignFunction.parse(expected, k)


def test_reduction_mod_two():
    f = SignFunction.build(3, [1, 1, 2], [(1, 2), (2, 1), (3, 3)])
    assert f.linear == {2, 3} and not f.quadratic


def test_evaluate_sign():
    f = sign_function(P("(1 3 2)"))
    assert evaluate_sign(f, [0, 0, 0]) == 0
    assert evaluate_sign(f, [0, 0, 1]) == 1
    assert evaluate_sign(f, [1, 1, 0]) == 1
    with pytest.raises(ValueError):
        evaluate_sign(f, [0, 1])


def test_sign_parities():
    assert sign_parities([1, 2, 3], 2) == [0, 0, 1]


@given(st.permutations(list(range(1, 6))))
def test_all_even_indices_give_sign_zero(images):
    # classical gl(m): every sign is +1
    assert sign_function(Permutation(tuple(images)))([0] * 5) == 0


def test_json_and_str_roundtrip():
    for s in all_permutations(4):
        f = sign_function(s)
        assert SignFunction.from_json(json.loads(json.dumps(f.to_json())), 4) == f
        assert SignFunction.parse(str(f), 4) == f


def test_parse_errors():
    with pytest.raises(ValueError):
        SignFunction.parse("i1*i2*i3", 3)
    with pytest.raises(ValueError):
        SignFunction.parse("j1", 3)
    with pytest.raises(ValueError):
        SignFunction.parse("i4", 3)


def test_neighbor_edges():
    assert neighbor_edges(P("(1 3 2)"), 1) == (2, 1, 3, 1)


def test_swap_rule_matches_direct_computation_at_all_parities():
    # compare as functions too, not only as reduced forms
    for s in all_permutations(4):
        f = sign_function(s)
        for l in range(1, 4):
            g = swap_neighbors_sign(f, s, l)
            h = sign_function(swap_neighbors(s, l))
            assert all(g(p) == h(p) for p in product((0, 1), repeat=4))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_swap_rule_exhaustive(k):
    for s in all_permutations(k):
        f = sign_function(s)
        for l in range(1, k):
            assert swap_neighbors_sign(f, s, l) == sign_function(swap_neighbors(s, l))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
@pytest.mark.parametrize("glue", ["ac", "bd"])
def test_merge_rule_exhaustive(k, glue):
    for s in all_permutations(k):
        f = sign_function(s)
        for l in range(1, k):
            assert merge_neighbors_sign(f, s, l, glue) == sign_function(merge_neighbors(s, l, glue).perm)


def test_loop_variable_splits_off():
    # (1 2): gluing closes a loop; f = i2 and the loop variable is i2 or i1
    s = P("(1 2)")
    assert merge_neighbors_sign(sign_function(s), s, 1, "ac").is_zero()
    assert merge_neighbors_sign(sign_function(s), s, 1, "bd").is_zero()


def test_swap_position_out_of_range():
    s = P("(1 2)")
    with pytest.raises(ValueError):
        swap_neighbors_sign(sign_function(s), s, 2)
