import random
from itertools import permutations

import pytest

from invofact.counting import count_factorizations, inner_factor, involution_count
from invofact.factorize import (
    InvolutionPair,
    enumerate_factorizations,
    is_exchanging,
    lemma1_factors,
    lemma3_factors,
    partial_matchings,
)
from invofact.oracle import brute_force_pairs
from invofact.permutation import (
    Permutation,
    compose,
    cycle_decomposition,
    cycle_type,
    from_cycles,
    is_involution,
    parse_cycles,
)


def test_lemma1_fixed_point():
    (pair,) = lemma1_factors([0])
    assert pair.tau1 == pair.tau2 == Permutation.identity(1)


def test_lemma1_three_cycle():
    frags = lemma1_factors([0, 1, 2])
    assert len(frags) == 3
    assert frags[1].tau2 == from_cycles(3, [[0, 1]])
    assert frags[1].tau1 == from_cycles(3, [[1, 2]])
    for f in frags:
        assert f.product() == from_cycles(3, [[0, 1, 2]])


@pytest.mark.parametrize("k", range(1, 13))
def test_lemma1_k_distinct_factorizations(k):
    cycle = list(range(k))
    frags = lemma1_factors(cycle)
    assert len(set(frags)) == k
    sigma = from_cycles(k, [cycle])
    for f in frags:
        assert is_involution(f.tau1) and is_involution(f.tau2)
        assert compose(f.tau2, f.tau1) == sigma


def test_lemma1_on_arbitrary_cycle_points():
    cycle = [5, 2, 7, 0]
    sigma = from_cycles(8, [cycle])
    frags = lemma1_factors(cycle, n=8)
    assert len(set(frags)) == 4
    assert all(f.product() == sigma for f in frags)


def test_lemma3_two_five_cycles():
    frags = lemma3_factors(range(5), range(5, 10))
    j3 = from_cycles(10, [[0, 8], [1, 7], [2, 6], [3, 5], [4, 9]])
    j2 = from_cycles(10, [[0, 7], [1, 6], [2, 5], [3, 9], [4, 8]])
    assert frags[3] == InvolutionPair(tau1=j2, tau2=j3)
    sigma = from_cycles(10, [list(range(5)), list(range(5, 10))])
    assert len(set(frags)) == 5
    for f in frags:
        assert f.product() == sigma
        assert is_exchanging(f, range(5), range(5, 10))


def test_lemma3_fixed_points():
    (pair,) = lemma3_factors([0], [1])
    assert pair.tau1 == pair.tau2 == Permutation([1, 0])


def test_lemma3_two_three_cycles():
    frags = lemma3_factors([0, 1, 2], [3, 4, 5])
    tau2 = parse_cycles("(1,4)(2,6)(3,5)", one_based=True)
    tau1 = parse_cycles("(1,6)(2,5)(3,4)", one_based=True)
    assert InvolutionPair(tau1, tau2) in frags


def test_lemma3_unequal_lengths():
    with pytest.raises(ValueError, match="equal length"):
        lemma3_factors([0, 1], [2, 3, 4])
    with pytest.raises(ValueError):
        lemma3_factors([0, 1], [1, 2])


def test_partial_matchings():
    assert list(partial_matchings(0)) == [()]
    assert list(partial_matchings(1)) == [()]
    assert list(partial_matchings(2)) == [(), ((0, 1),)]
    assert len(list(partial_matchings(4))) == 10 == inner_factor(1, 4)


@pytest.mark.parametrize("c", range(9))
def test_partial_matchings_distinct_and_disjoint(c):
    ms = list(partial_matchings(c))
    assert ms[0] == ()
    assert len(ms) == len(set(ms)) == involution_count(c)
    for m in ms:
        points = [x for pair in m for x in pair]
        assert len(points) == len(set(points))


def test_enumerate_identity_three():
    got = list(enumerate_factorizations(Permutation.identity(3)))
    expected = [Permutation.identity(3)] + [from_cycles(3, [t]) for t in ([1, 2], [0, 1], [0, 2])]
    assert len(got) == 4
    assert {(p.tau1, p.tau2) for p in got} == {(t, t) for t in expected}


def test_enumerate_single_cycle():
    sigma = from_cycles(9, [[0, 4, 2, 8, 1, 3, 5, 7, 6]])
    got = list(enumerate_factorizations(sigma))
    assert got == lemma1_factors([0, 4, 2, 8, 1, 3, 5, 7, 6])


def test_enumerate_two_three_cycles():
    sigma = parse_cycles("(1,2,3)(4,5,6)", one_based=True)
    got = list(enumerate_factorizations(sigma))
    exchanging = [p for p in got if is_exchanging(p, [0, 1, 2], [3, 4, 5])]
    assert len(got) == 12
    assert len(exchanging) == 3


def test_enumeration_is_deterministic_and_lazy():
    sigma = Permutation.identity(30)
    it = enumerate_factorizations(sigma)
    first = [next(it) for _ in range(5)]
    assert first == [p for _, p in zip(range(5), enumerate_factorizations(sigma))]
    assert first[0] == InvolutionPair(sigma, sigma)


def check_factorizations(sigma):
    pairs = list(enumerate_factorizations(sigma))
    assert len(pairs) == count_factorizations(cycle_type(sigma))
    assert len({(p.tau1.images, p.tau2.images) for p in pairs}) == len(pairs)
    cycles = cycle_decomposition(sigma)
    cycle_sets = {frozenset(c) for c in cycles}
    for p in pairs:
        assert is_involution(p.tau1) and is_involution(p.tau2)
        assert compose(p.tau2, p.tau1) == sigma
        for c in cycles:
            image1 = frozenset(p.tau1(x) for x in c)
            assert image1 == frozenset(p.tau2(x) for x in c)
            assert image1 in cycle_sets and len(image1) == len(c)
    return pairs


@pytest.mark.parametrize("n", range(7))
def test_enumeration_all_permutations(n):
    for images in permutations(range(n)):
        check_factorizations(Permutation(images))


def test_enumeration_random_permutations():
    rng = random.Random(11)
    for _ in range(200):
        images = list(range(rng.randint(0, 10)))
        rng.shuffle(images)
        check_factorizations(Permutation(images))


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_matches_brute_force_sets(n):
    rng = random.Random(n)
    samples = list(permutations(range(n)))
    for images in rng.sample(samples, min(len(samples), 40)):
        sigma = Permutation(images)
        got = {(p.tau1, p.tau2) for p in enumerate_factorizations(sigma)}
        assert got == brute_force_pairs(sigma)


def test_is_exchanging():
    frag = lemma1_factors([0, 1, 2], n=6)[0]
    assert not is_exchanging(frag, [0, 1, 2], [3, 4, 5])


def test_checked_constructor_rejects_non_factorizations():
    sigma = from_cycles(3, [[0, 1, 2]])
    with pytest.raises(ValueError):
        InvolutionPair.checked(Permutation.identity(3), Permutation.identity(3), sigma)
    with pytest.raises(ValueError):
        InvolutionPair.checked(sigma, Permutation.identity(3), sigma)
