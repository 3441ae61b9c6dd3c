import itertools

import pytest

from helpers import (
    all_reduced_words,
    b3_signed_oracle,
    bruhat_leq_subword,
    compose_lines,
    invert_line,
    inversions,
)
from tnncells.coxeter import (
    CoxeterSystem,
    MalformedMatrixError,
    NonFiniteTypeError,
    NotReducedError,
    NotShorteningError,
    SystemMismatchError,
    coxeter_matrix,
    symmetric_group,
)


# ------------------------------------------------------------- construction

def test_a3_is_s4(s4):
    assert s4.order == 24
    assert s4.nroots == 6
    assert s4.length(s4.w0) == 6


def test_a1_minimal():
    W = CoxeterSystem([[1]])
    assert W.order == 2
    assert W.nroots == 1
    assert W.reflections == (W.gens[0],)


def test_b3_order_against_signed_oracle(b3):
    oracle = b3_signed_oracle()
    assert b3.order == len(oracle) == 48
    assert sorted(oracle.values()) == sorted(int(x) for x in b3.lengths)


@pytest.mark.parametrize("name,order,nroots", [
    ("A2", 6, 3),
    ("B2", 8, 4),
    ("G2", 12, 6),
    ("I2(7)", 14, 7),
    ("H3", 120, 15),
    ("D4", 192, 12),
])
def test_small_types(name, order, nroots, cache_dir):
    W = CoxeterSystem(coxeter_matrix(name), cache_dir=cache_dir)
    assert (W.order, W.nroots) == (order, nroots)
    assert int(W.lengths[W.w0]) == nroots


def test_coxeter_matrix_b3_layout():
    assert coxeter_matrix("B3") == [[1, 4, 2], [4, 1, 3], [2, 3, 1]]


def test_malformed_matrices():
    for bad in (
        [],
        [[1, 3]],
        [[1, 3], [2, 1]],
        [[2, 3], [3, 1]],
        [[1, 1], [1, 1]],
        [[1, 3.0], [3.0, 1]],
    ):
        with pytest.raises(MalformedMatrixError):
            CoxeterSystem(bad)
    with pytest.raises(MalformedMatrixError):
        coxeter_matrix("Z9")


def test_nonfinite_affine_rejected():
    with pytest.raises(NonFiniteTypeError):
        CoxeterSystem([[1, 3, 3], [3, 1, 3], [3, 3, 1]])


def test_order_bound_rejected():
    with pytest.raises(NonFiniteTypeError):
        CoxeterSystem(coxeter_matrix("A3"), order_bound=10)


def test_element_id_range_checked(s4):
    with pytest.raises(SystemMismatchError):
        s4.length(24)
    with pytest.raises(SystemMismatchError):
        s4.mult(0, -1)


# -------------------------------------------------------------- arithmetic

def test_multiply_basics(s4):
    for w in range(s4.order):
        assert s4.mult(0, w) == w
        assert s4.mult(w, 0) == w
    for s in s4.gens:
        assert s4.mult(s, s) == 0


def test_multiply_matches_one_line_composition(s4):
    for a in range(s4.order):
        for b in range(s4.order):
            assert s4.one_line(s4.mult(a, b)) == compose_lines(
                s4.one_line(a), s4.one_line(b))


def test_involution_example(s4):
    w = s4.from_one_line([2, 1, 4, 3])
    assert s4.mult(w, w) == 0


def test_inverse(s4, b3):
    w = s4.from_one_line([3, 4, 1, 2])
    assert s4.inverse(w) == w
    assert s4.one_line(s4.inverse(w)) == invert_line(s4.one_line(w))
    for W in (s4, b3):
        assert W.inverse(0) == 0
        for t in W.reflections:
            assert W.inverse(t) == t
        for w in range(W.order):
            assert W.mult(w, W.inverse(w)) == 0
            assert W.length(W.inverse(w)) == W.length(w)


def test_length(s4):
    assert s4.length(0) == 0
    assert s4.length(s4.w0) == 6
    assert s4.length(s4.from_one_line([3, 4, 1, 2])) == 4
    for w in range(s4.order):
        assert s4.length(w) == inversions(s4.one_line(w))


def test_length_changes_by_one(s4, b3):
    for W in (s4, b3):
        for w in range(W.order):
            for i in range(W.rank):
                assert abs(W.length(int(W.rmult[w][i])) - W.length(w)) == 1


def test_one_line_roundtrip(s4):
    assert s4.one_line(s4.w0) == (4, 3, 2, 1)
    for w in range(s4.order):
        assert s4.from_one_line(s4.one_line(w)) == w


def test_reduced_words_are_lex_minimal(s3, s4):
    for W in (s3, s4):
        for w in range(W.order):
            word = W.reduced_word(w)
            assert W.element_by_word(word) == w
            assert len(word) == W.length(w)
            assert word == min(all_reduced_words(W, w))


def test_descents(s4, b3):
    for W in (s4, b3):
        for w in range(W.order):
            right = {i for i in range(W.rank)
                     if W.length(int(W.rmult[w][i])) < W.length(w)}
            assert set(W.right_descents(w)) == right
            left = {i for i in range(W.rank)
                    if W.length(W.mult(W.gens[i], w)) < W.length(w)}
            assert set(W.left_descents(w)) == left


# -------------------------------------------------------------- reflections

def test_reflection_set(s4, b3):
    for W in (s4, b3):
        assert len(W.reflections) == W.nroots == W.length(W.w0)
        conjugates = {W.mult(W.mult(w, s), W.inverse(w))
                      for w in range(W.order) for s in W.gens}
        assert set(W.reflections) == conjugates
        for t in W.reflections:
            assert W.mult(t, t) == 0
            assert W.length(t) % 2 == 1


def test_refl_str_type_a(s4):
    strs = sorted(s4.refl_str(t) for t in s4.reflections)
    assert strs == ["(1 2)", "(1 3)", "(1 4)", "(2 3)", "(2 4)", "(3 4)"]


# ------------------------------------------------------------- Bruhat order

def test_bruhat_extremes(s4):
    for w in range(s4.order):
        assert s4.bruhat_leq(0, w)
        assert s4.bruhat_leq(w, s4.w0)
    assert not s4.bruhat_leq(s4.w0, 0)
    assert s4.bruhat_leq(s4.from_one_line([3, 4, 1, 2]),
                         s4.from_one_line([4, 3, 2, 1]))


def test_bruhat_matches_subword_oracle(s3, s4, b3):
    for W in (s3, s4, b3):
        for u in range(W.order):
            for w in range(W.order):
                assert W.bruhat_leq(u, w) == bruhat_leq_subword(W, u, w)


def test_bruhat_covers(s4, b3):
    for W in (s4, b3):
        for w in range(W.order):
            covers = W.bruhat_covers(w)
            expect = {v for v in range(W.order)
                      if W.length(v) == W.length(w) - 1 and W.bruhat_leq(v, w)}
            assert set(covers) == expect
    below_w0 = s4.bruhat_covers(s4.w0)
    assert len(below_w0) == 3
    assert all(s4.length(v) == 5 for v in below_w0)


def test_bruhat_closure_of_covers(s3, s4, b3):
    # u <= w iff w reachable from u by cover steps
    for W in (s3, s4, b3):
        for w in range(W.order):
            reach = {w}
            stack = [w]
            while stack:
                z = stack.pop()
                for v in W.bruhat_covers(z):
                    if v not in reach:
                        reach.add(v)
                        stack.append(v)
            assert reach == {u for u in range(W.order) if W.bruhat_leq(u, w)}


# ---------------------------------------------------------- strong exchange

def test_strong_exchange_examples(s4):
    assert s4.strong_exchange([0], s4.gens[0]) == 0
    # s1 s2 * s2 = s1: the deleted letter is the second one
    assert s4.strong_exchange([0, 1], s4.gens[1]) == 1


def test_strong_exchange_exhaustive(s4):
    for w in range(s4.order):
        word = list(s4.reduced_word(w))
        for t in s4.reflections:
            if s4.length(s4.mult(w, t)) < s4.length(w):
                i = s4.strong_exchange(word, t)
                assert s4.element_by_word(word[:i] + word[i + 1:]) == s4.mult(w, t)


def test_strong_exchange_errors(s4):
    with pytest.raises(NotReducedError):
        s4.strong_exchange([0, 0], s4.gens[0])
    with pytest.raises(NotShorteningError):
        s4.strong_exchange([0], s4.gens[1])


# ----------------------------------------------------------- parabolic part

def test_parabolic_factor_examples(s4):
    J = (0, 2)
    w_min, u = s4.parabolic_factor(s4.w0, J)
    assert s4.one_line(w_min) == (3, 4, 1, 2)
    assert s4.one_line(u) == (2, 1, 4, 3)
    assert s4.parabolic_factor(0, J) == (0, 0)
    u0 = s4.parabolic(J).u0
    assert s4.parabolic_factor(u0, J) == (0, u0)


def test_parabolic_factor_exhaustive(s4, b3):
    for W in (s4, b3):
        for J in itertools.chain.from_iterable(
                itertools.combinations(range(W.rank), k) for k in range(W.rank + 1)):
            sub = W.parabolic(J)
            for w in range(W.order):
                wp, u = W.parabolic_factor(w, J)
                assert W.mult(wp, u) == w
                assert W.length(wp) + W.length(u) == W.length(w)
                assert wp in sub.min_set and u in sub.member
                # wp really is the shortest element of the coset w * W_J
                coset = [W.mult(w, v) for v in sub.elements]
                assert W.length(wp) == min(W.length(z) for z in coset)


def test_coset_reps(s4):
    full = tuple(range(s4.rank))
    assert s4.min_coset_reps(full) == (0,)
    assert s4.max_coset_reps(full) == (s4.w0,)
    assert set(s4.min_coset_reps(())) == set(range(s4.order))
    assert set(s4.max_coset_reps(())) == set(range(s4.order))
    J = (0, 2)
    assert len(s4.min_coset_reps(J)) == 6
    sub = s4.parabolic(J)
    for w_min, w_max in zip(sub.min_reps, sub.max_reps):
        assert w_max == s4.mult(w_min, sub.u0)
        assert s4.length(w_max) == s4.length(w_min) + s4.length(sub.u0)


def test_max_reps_unique_factorization(s4, b3):
    # every x in W^J_max is w' * u0 for exactly one w' in W^J, lengths adding
    for W in (s4, b3):
        for J in itertools.chain.from_iterable(
                itertools.combinations(range(W.rank), k) for k in range(W.rank + 1)):
            sub = W.parabolic(J)
            assert len(sub.max_set) == len(sub.min_reps) == W.order // len(sub.elements)
            for x in sub.max_reps:
                hits = [wp for wp in sub.min_reps
                        if W.mult(wp, sub.u0) == x
                        and W.length(x) == W.length(wp) + W.length(sub.u0)]
                assert len(hits) == 1


def test_projection_order_preserving(s4, b3):
    for W in (s4, b3):
        leq = W.leq_matrix()
        for J in itertools.chain.from_iterable(
                itertools.combinations(range(W.rank), k) for k in range(W.rank + 1)):
            proj = [W.projection_WJ(w, J) for w in range(W.order)]
            for u in range(W.order):
                for w in range(W.order):
                    if leq[w, u]:
                        assert leq[proj[w], proj[u]]


# -------------------------------------------------------------------- cache

def test_cache_roundtrip(tmp_path):
    d = str(tmp_path)
    W1 = CoxeterSystem(coxeter_matrix("A2"), cache_dir=d)
    m1 = W1.leq_matrix().copy()
    W2 = CoxeterSystem(coxeter_matrix("A2"), cache_dir=d)
    assert W2._perms == W1._perms
    assert (W2.leq_matrix() == m1).all()
    assert list(W2.lengths) == list(W1.lengths)


def test_symmetric_group_helper():
    W = symmetric_group(3)
    assert W.order == 6 and W.is_type_a()
