import json
import random
import threading
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glweight.glrec import (
    GLWeightSystem,
    IntegralityError,
    recurrence_terms,
    reducible_positions,
    specialize,
    target_inversions,
    w_gl,
    w_gl_diagram,
)
from glweight.perm import (
    ChordDiagram,
    Permutation,
    all_chord_diagrams,
    all_four_term_relations,
    all_permutations,
    base_point_rotation,
    concatenate,
    parse_permutation,
    rotate_diagram,
)
from glweight.poly import C, Polynomial

perms = st.integers(1, 6).flatmap(lambda k: st.permutations(list(range(1, k + 1)))).map(
    lambda xs: Permutation(tuple(xs))
)


def P(text, k=None):
    return parse_permutation(text, k)


def fixture_rows():
    text = resources.files("glweight").joinpath("data/result_table.json").read_text()
    return json.loads(text)


def test_worked_example():
    assert w_gl(P("(1 3 2)")) == C(3) - C(0) * C(2) + C(1) ** 2


def test_base_cases():
    assert w_gl(Permutation(())) == 1
    assert w_gl(P("(1)")) == C(1)
    for k in range(1, 7):
        assert w_gl(Permutation(tuple(list(range(2, k + 1)) + [1]))) == C(k)


@given(perms, perms)
@settings(max_examples=40, deadline=None)
def test_multiplicative_over_concatenation(a, b):
    assert w_gl(concatenate(a, b)) == w_gl(a) * w_gl(b)


@given(perms)
@settings(max_examples=60, deadline=None)
def test_classical_gl1(sigma):
    # in gl(1) every C_k is E11^k and C0 = 1, so w = E11^k
    t = Polynomial.var(1, "x")
    value = w_gl(sigma).substitute({i: (1 if i == 0 else t**i) for i in range(sigma.k + 1)})
    assert value == t**sigma.k


@given(perms)
@settings(max_examples=60, deadline=None)
def test_weight_at_most_k(sigma):
    # C0 has weight 1, C_i weight i; merges can only lower the weight
    assert w_gl(sigma).weighted_degree() <= sigma.k


@pytest.mark.parametrize("row", fixture_rows(), ids=lambda r: f"{r['k']}:{r['cycles']}")
def test_fixture_table(row):
    sigma = Permutation(tuple(row["sigma"]))
    assert w_gl(sigma) == Polynomial.parse(row["value"])


def test_fixture_printed_value_is_refuted():
    # the one corrected row: its printed value fails the gl(1) specialisation
    (row,) = [r for r in fixture_rows() if "printed_value" in r]
    printed = Polynomial.parse(row["printed_value"])
    assert printed != w_gl(Permutation(tuple(row["sigma"])))
    t = Polynomial.var(1, "x")
    gl1 = {0: 1, **{i: t**i for i in range(1, 5)}}
    assert printed.substitute(gl1) == t**4 + t**2 - t
    assert Polynomial.parse(row["value"]).substitute(gl1) == t**4


def test_diagram_values():
    assert w_gl_diagram(ChordDiagram(((1, 2), (3, 4)))) == C(2) ** 2
    assert w_gl_diagram(ChordDiagram(((1, 3), (2, 4)))) == C(2) ** 2 - C(0) * C(2) + C(1) ** 2


def test_specialize():
    assert specialize(P("(1 3 2)"), 2, 1) == C(3) - C(2) + C(1) ** 2
    assert specialize(P("(1 3 2)"), 1, 1) == C(3) + C(1) ** 2
    with pytest.raises(ValueError):
        specialize(P("(1 2)"), -1, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_four_term_relations(n):
    for rel in all_four_term_relations(n):
        w = [w_gl_diagram(d) for d in rel]
        assert w[0] - w[1] + w[2] - w[3] == 0


def test_four_term_relations_are_not_vacuous():
    nonzero = sum(
        1 for rel in all_four_term_relations(3) if w_gl_diagram(rel.plus_p) != w_gl_diagram(rel.minus_p)
    )
    assert nonzero > 0


@pytest.mark.parametrize("k", range(1, 6))
def test_rotation_invariance(k):
    for s in all_permutations(k):
        assert w_gl(base_point_rotation(s)) == w_gl(s)


@pytest.mark.parametrize("n", range(1, 5))
def test_diagram_rotation_invariance(n):
    for d in all_chord_diagrams(n):
        r = d
        for _ in range(2 * n):
            r = rotate_diagram(r)
            assert w_gl_diagram(r) == w_gl_diagram(d)


def test_reduction_decreases_target_inversions():
    for s in all_permutations(5):
        images = tuple(v - 1 for v in s.images)
        for l in reducible_positions(images):
            swapped = tuple(v - 1 for v in recurrence_terms(s, l + 1)[0].images)
            assert target_inversions(swapped) == target_inversions(images) - 1


def test_recurrence_identity_at_every_position():
    # the rule holds at any position, not only the ones the evaluator picks
    for s in all_permutations(4):
        for l in range(1, 4):
            swap, (ac, loop_ac), (bd, loop_bd) = recurrence_terms(s, l)
            rhs = w_gl(swap) + C(0) ** loop_ac * w_gl(ac) - C(0) ** loop_bd * w_gl(bd)
            assert rhs == w_gl(s)


@pytest.mark.parametrize("policy", ["leftmost", "rightmost", "random"])
def test_policies_agree(policy):
    ref = GLWeightSystem("leftmost")
    other = GLWeightSystem(policy, seed=7)
    rng = random.Random(3)
    for _ in range(20):
        images = list(range(1, 7))
        rng.shuffle(images)
        s = Permutation(tuple(images))
        assert other(s) == ref(s)


def test_cache_roundtrip(tmp_path):
    path = tmp_path / "memo.jsonl"
    a = GLWeightSystem()
    a(P("(1 4 3 2)"))
    written = a.save(path)
    assert written == len(a) > 0
    assert a.save(path) == 0
    b = GLWeightSystem()
    assert b.load(path) == written
    assert b(P("(1 4 3 2)")) == a(P("(1 4 3 2)"))


def test_corrupt_cache_records_are_skipped(tmp_path):
    path = tmp_path / "memo.jsonl"
    bogus = Polynomial.const(1).to_json()
    path.write_text(
        "not json\n"
        + json.dumps({"key": [1, 1], "value": bogus}) + "\n"
        + json.dumps({"key": [2, 1], "value": [{"coeff_num": 1, "coeff_den": 2, "monomial": []}]}) + "\n"
    )
    s = GLWeightSystem()
    assert s.load(path) == 1
    # the non-integral record is dropped on use and recomputed
    assert s(P("(1 2)")) == C(2)


def test_integrality_guard():
    s = GLWeightSystem()
    s._cache[(1, 0)] = Polynomial.const(Polynomial.parse("1/2").constant_term())
    with pytest.raises(IntegralityError):
        s(P("(1 2)"))


def test_concurrent_evaluation():
    s = GLWeightSystem()
    perms = list(all_permutations(5))
    results = {}

    def work(chunk):
        for p in chunk:
            results[p] = s(p)

    threads = [threading.Thread(target=work, args=(perms[i::4],)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(results[p] == w_gl(p) for p in perms)
