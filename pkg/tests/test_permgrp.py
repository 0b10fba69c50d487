import random

import pytest
from hypothesis import given, strategies as st

from hamprim.permgrp import (Permutation, PermGroup, coset_action, format_word, is_semiregular,
                             load_generators, load_subgroup, orbit, orbits, parse_word, schreier_tree,
                             suborbits, tree_word, word_element, word_element_signed)
from hamprim.psl2 import pairs_action, psl2_group


def perm(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def test_group_orders():
    assert PermGroup([perm(4, (0, 1, 2, 3)), perm(4, (0, 1))]).order() == 24
    assert psl2_group(7).order() == 168
    assert PermGroup(load_generators("m11.gens")).order() == 7920
    assert PermGroup(load_generators("m12.gens")).order() == 95040


def test_membership():
    S4 = PermGroup([perm(4, (0, 1, 2, 3)), perm(4, (0, 1))])
    A4 = PermGroup([perm(4, (0, 1, 2)), perm(4, (1, 2, 3))])
    assert A4.order() == 12
    assert A4.contains(perm(4, (0, 1), (2, 3)))
    assert not A4.contains(perm(4, (0, 1)))
    assert S4.sanity_check()


def test_orbit_examples():
    g = perm(6, (0, 1, 2))
    assert sorted(orbit([0], [g])) == [0, 1, 2]
    assert orbits(6, [g]) == [[0, 1, 2], [3], [4], [5]]
    assert sorted(orbit([3], [perm(6, (3, 4)), perm(6, (4, 5))])) == [3, 4, 5]


def test_right_action_convention():
    a, b = perm(3, (0, 1)), perm(3, (1, 2))
    # 0 goes to 1 under a, then 1 goes to 2 under b
    assert (a * b)(0) == 2
    assert 0 ** (a * b) == b(a(0))


def test_coset_action_of_s3():
    S3 = PermGroup([perm(3, (0, 1, 2)), perm(3, (0, 1))])
    H = PermGroup([perm(3, (0, 1))], 3)
    ca = coset_action(S3, H)
    assert ca.degree == 3
    assert PermGroup(ca.generators).order() == 6
    assert all(g(0) == 0 for g in ca.stabilizer_generators())


def test_coset_action_rejects_non_subgroup():
    A3 = PermGroup([perm(3, (0, 1, 2))])
    with pytest.raises(ValueError):
        coset_action(A3, PermGroup([perm(3, (0, 1))]))


def test_semiregular_examples():
    assert is_semiregular(Permutation.identity(4)) is None
    assert is_semiregular(perm(4, (0, 1), (2, 3))) == (2, 2)
    assert is_semiregular(perm(4, (0, 1))) is None
    act = pairs_action(19)
    assert is_semiregular(act.generators[0]) == (10, 19)


def test_m11_on_s5_cosets():
    parent, sub = load_subgroup("m11_s5.sub")
    ca = coset_action(PermGroup(parent), PermGroup(sub))
    assert ca.degree == 66
    lengths = sorted(s.length for s in suborbits(ca.generators, 0, ca.stabilizer_generators())[1:])
    assert sum(lengths) == 65


def test_suborbits_of_petersen_action():
    # S5 on 2-subsets: suborbit lengths 1, 3, 6, all self-paired
    pairs = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    idx = {p: k for k, p in enumerate(pairs)}

    def lift(g):
        return Permutation(idx[tuple(sorted((g(a), g(b))))] for a, b in pairs)

    gens = [lift(perm(5, (0, 1, 2, 3, 4))), lift(perm(5, (0, 1)))]
    subs = suborbits(gens, 0)
    assert [s.length for s in subs] == [1, 3, 6]
    assert all(s.self_paired for s in subs)


def test_word_format_roundtrip_example():
    assert parse_word("a b^-1 a^2") == [1, -2, 1, 1]
    assert format_word([1, -2, 1, 1]) == "a b^-1 a^2"


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3]), max_size=12))
def test_word_roundtrip(word):
    # format_word cancels adjacent inverse letters, so compare the elements
    gens = [perm(6, (0, 1, 2, 3, 4, 5)), perm(6, (0, 1)), perm(6, (2, 4), (3, 5))]
    assert word_element_signed(gens, parse_word(format_word(word)), 6) == word_element_signed(gens, word, 6)


@given(st.integers(2, 9), st.randoms(use_true_random=False))
def test_inverse_and_power(n, rnd):
    img = list(range(n))
    rnd.shuffle(img)
    g = Permutation(img)
    assert (g * ~g).is_identity()
    assert (g ** g.order()).is_identity()
    assert g ** -1 == g.inverse()


@given(st.randoms(use_true_random=False))
def test_schreier_words_reach_points(rnd):
    gens = load_generators("m11.gens")
    n = gens[0].degree
    tree = schreier_tree(0, gens)
    x = rnd.randrange(n)
    assert word_element(gens, tree_word(tree, x), n)(0) == x


def test_random_elements_are_members():
    G = PermGroup(load_generators("m11.gens"))
    rng = random.Random(3)
    for _ in range(20):
        assert G.contains(G.chain.random_element(rng))
