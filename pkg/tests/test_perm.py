import itertools

from hypothesis import given, strategies as st

from operadkit import perm as P


def perms(max_n=6):
    return st.integers(0, max_n).flatmap(lambda n: st.permutations(list(range(1, n + 1))).map(tuple))


def same_degree_pair():
    return st.integers(0, 6).flatmap(
        lambda n: st.tuples(st.permutations(list(range(1, n + 1))).map(tuple),
                            st.permutations(list(range(1, n + 1))).map(tuple)))


@given(perms())
def test_inverse(p):
    n = len(p)
    assert P.compose(p, P.inverse(p)) == P.identity(n)
    assert P.compose(P.inverse(p), p) == P.identity(n)


@given(same_degree_pair())
def test_act_on_tuple_is_a_left_action(pair):
    s, t = pair
    xs = tuple("abcdef"[: len(s)])
    assert P.act_on_tuple(P.compose(s, t), xs) == P.act_on_tuple(s, P.act_on_tuple(t, xs))


@given(perms())
def test_word_in_transpositions(p):
    n = len(p)
    acc = P.identity(n)
    for i in P.word_in_transpositions(p):
        acc = P.compose(acc, P.transposition(n, i))
    assert acc == p


def test_all_perms_counts():
    assert [len(P.all_perms(n)) for n in range(6)] == [1, 1, 2, 6, 24, 120]


def test_block_perm_moves_blocks():
    # blocks of sizes 2, 1 swapped: positions 1,2 go to 2,3 and 3 goes to 1
    assert P.block_perm((2, 1), (2, 1)) == (2, 3, 1)
    assert P.block_perm((1, 2, 3), (1, 0, 2)) == (1, 2, 3)


def test_block_perm_is_a_homomorphism():
    sizes = (2, 0, 1)
    for s, t in itertools.product(P.all_perms(3), repeat=2):
        moved = tuple(sizes[i - 1] for i in P.inverse(t))
        # (s t)<sizes> = s<t.sizes> t<sizes>
        assert P.block_perm(P.compose(s, t), sizes) == P.compose(
            P.block_perm(s, moved), P.block_perm(t, sizes))


def test_direct_sum():
    assert P.direct_sum([(2, 1), (), (1,)]) == (2, 1, 3)
