import itertools
import random

import numpy as np
import pytest

from minuscule.catalog import all_entries
from minuscule.coxeter import (
    ParabolicQuotient, braid_obstruction, commutation_class, coset_canonicalize,
    coxeter_element, generator,
    heap_poset, identity, inverse, is_below_left, is_fully_commutative, length,
    longest_rep, minuscule_weights, parabolic_quotient, parse_type, reduced_word,
    reduced_words, root_system, weight_quotient, word_element,
)
from minuscule.errors import CapacityError, DomainError, NonUniqueError
from minuscule.poset import ideal_lattice, ideals, is_isomorphic
from minuscule.toggle import cycle_type

SYSTEMS = [("A", 1), ("A", 2), ("A", 4), ("B", 2), ("B", 4), ("C", 3), ("C", 5),
           ("D", 4), ("D", 5), ("E", 6), ("E", 7)]
POSITIVE_ROOTS = {"A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n, "C": lambda n: n * n,
                  "D": lambda n: n * (n - 1), "E": lambda n: {6: 36, 7: 63}[n]}


def random_word(rng, rank, length_):
    return [rng.randint(1, rank) for _ in range(length_)]


def type_a_permutation(n, word):
    """Permutation of 1..n+1 for a word in A_n, with s_j swapping positions j and j+1."""
    perm = list(range(n + 1))
    for j in reversed(word):
        perm[j - 1], perm[j] = perm[j], perm[j - 1]
    return perm


@pytest.mark.parametrize("t,n", SYSTEMS)
def test_root_counts_and_cartan(t, n):
    rs = root_system(t, n)
    assert len(rs.positive_roots) == POSITIVE_ROOTS[t](n)
    assert (np.diag(rs.cartan) == 2).all()
    off = rs.cartan[~np.eye(n, dtype=bool)]
    assert (off <= 0).all()
    assert (np.asarray(rs.positive_roots) >= 0).all()


def test_inadmissible_systems():
    for t, n in [("A", 0), ("B", 1), ("D", 2), ("E", 8), ("F", 4), ("E", 5)]:
        with pytest.raises(DomainError):
            root_system(t, n)
    assert parse_type("d5").name == "D5"
    with pytest.raises(DomainError):
        parse_type("Q3")


@pytest.mark.parametrize("t,n", SYSTEMS)
def test_defining_relations(t, n):
    rs = root_system(t, n)
    e = identity(rs)
    for i in range(1, n + 1):
        s = generator(rs, i)
        assert s * s == e and length(rs, s) == 1
    for i, j in itertools.combinations(range(1, n + 1), 2):
        m = rs.bond_order(i, j)
        assert m in (2, 3, 4)
        st = generator(rs, i) * generator(rs, j)
        power = e
        for k in range(1, m + 1):
            power = power * st
            assert (power == e) == (k == m)


def test_generator_errors_and_small_cases():
    rs = root_system("A", 1)
    assert generator(rs, 1).matrix.tolist() == [[-1]]
    with pytest.raises(IndexError):
        generator(rs, 2)
    a2 = root_system("A", 2)
    assert word_element(a2, [1, 2, 1]) == word_element(a2, [2, 1, 2])


@pytest.mark.parametrize("t,n", SYSTEMS)
def test_length_matches_reduced_word(t, n):
    rs = root_system(t, n)
    rng = random.Random(n * 31 + ord(t))
    for _ in range(500 if n <= 5 else 150):
        w = word_element(rs, random_word(rng, n, rng.randint(0, 3 * n)))
        word = reduced_word(rs, w)
        assert len(word) == length(rs, w)
        assert word_element(rs, word) == w
        assert inverse(rs, w) * w == identity(rs)


def test_type_a_length_is_inversion_count():
    rng = random.Random(4)
    rs = root_system("A", 4)
    for _ in range(300):
        word = random_word(rng, 4, rng.randint(0, 14))
        perm = type_a_permutation(4, word)
        inv = sum(perm[a] > perm[b] for a in range(5) for b in range(a + 1, 5))
        assert length(rs, word_element(rs, word)) == inv


def test_longest_element_of_a4():
    rs = root_system("A", 4)
    w0 = longest_rep(parabolic_quotient(rs, []))
    assert length(rs, w0) == 10


def test_reduced_word_examples():
    rs = root_system("A", 4)
    assert reduced_word(rs, identity(rs)) == ()
    assert reduced_word(rs, generator(rs, 3)) == (3,)
    w = word_element(rs, [3, 2, 4, 1, 3, 2])
    assert len(reduced_word(rs, w)) == 6


def test_full_commutativity_examples():
    a2 = root_system("A", 2)
    assert not is_fully_commutative(a2, word_element(a2, [1, 2, 1]))
    assert reduced_words(a2, word_element(a2, [1, 2, 1])) == {(1, 2, 1), (2, 1, 2)}
    assert is_fully_commutative(a2, identity(a2))
    a4 = root_system("A", 4)
    assert is_fully_commutative(a4, word_element(a4, [3, 2, 4, 1, 3, 2]))


@pytest.mark.parametrize("t,n", [("A", 3), ("A", 4), ("B", 3), ("C", 3), ("D", 4)])
def test_full_commutativity_against_word_enumeration(t, n):
    rs = root_system(t, n)
    rng = random.Random(17)
    seen = set()
    for _ in range(150):
        w = word_element(rs, random_word(rng, n, rng.randint(0, 9)))
        if w in seen:
            continue
        seen.add(w)
        words = reduced_words(rs, w)
        literal = commutation_class(rs, next(iter(words))) == words
        assert is_fully_commutative(rs, w) == literal


def test_commutation_class_capacity():
    rs = root_system("A", 7)
    with pytest.raises(CapacityError):
        commutation_class(rs, (1, 3, 5, 7, 1, 3, 5, 7), limit=10)


def test_heap_poset_shape():
    rs = root_system("A", 4)
    P = heap_poset(rs, (1, 3))
    assert P.n == 2 and not P.covers
    braid = (1, 2, 1)
    assert braid_obstruction(root_system("A", 2), braid) == (0, 1, 2)


def test_quotient_sizes():
    assert len(weight_quotient(root_system("A", 4), 2)) == 10
    assert len(weight_quotient(root_system("E", 6), 1)) == 27
    assert len(weight_quotient(root_system("E", 7), 7)) == 56
    assert len(parabolic_quotient(root_system("A", 3), [])) == 24
    with pytest.raises(IndexError):
        parabolic_quotient(root_system("A", 3), [4])


def test_quotient_reps_are_minimal():
    rs = root_system("B", 3)
    pq = weight_quotient(rs, 1)
    for w in pq.reps:
        for j in pq.J:
            assert length(rs, w * generator(rs, j)) > length(rs, w)
    for a, b in pq.weak_order.covers:
        u, v = pq.reps[a], pq.reps[b]
        assert pq.lengths[b] == pq.lengths[a] + 1
        assert any(generator(rs, k) * u == v for k in range(1, rs.rank + 1))


def test_quotient_matches_coset_enumeration_in_a3():
    # canonicalizing all 24 group elements must land exactly on the representatives
    rs = root_system("A", 3)
    full = parabolic_quotient(rs, [])
    pq = parabolic_quotient(rs, [1, 3])
    reps = {coset_canonicalize(pq, w) for w in full.reps}
    assert reps == set(pq.reps)
    for w in full.reps:
        x = coset_canonicalize(pq, w)
        # x and w lie in the same coset: x^-1 w is in the subgroup generated by J
        u = inverse(rs, x) * w
        assert set(reduced_word(rs, u)) <= {1, 3}


def test_longest_rep_examples():
    a1 = root_system("A", 1)
    assert longest_rep(parabolic_quotient(a1, [])) == generator(a1, 1)
    a4 = root_system("A", 4)
    w = longest_rep(weight_quotient(a4, 2))
    assert reduced_word(a4, w) in commutation_class(a4, (3, 2, 4, 1, 3, 2))
    b4 = root_system("B", 4)
    assert length(b4, longest_rep(weight_quotient(b4, 1))) == 10
    # two representatives of the same maximal length
    tied = ParabolicQuotient(a4, frozenset(), [identity(a4), generator(a4, 1), generator(a4, 2)],
                             [0, 1, 1], None, {})
    with pytest.raises(NonUniqueError):
        longest_rep(tied)


def test_coset_canonicalize_examples():
    rs = root_system("A", 2)
    pq = parabolic_quotient(rs, [2])
    assert coset_canonicalize(pq, generator(rs, 2)) == identity(rs)
    for w in pq.reps:
        assert coset_canonicalize(pq, w) == w
        assert coset_canonicalize(pq, w * generator(rs, 2)) == w


def test_coxeter_element():
    a1 = root_system("A", 1)
    assert coxeter_element(a1, [1]) == generator(a1, 1)
    a2 = root_system("A", 2)
    c = coxeter_element(a2, (1, 2))
    assert length(a2, c) == 2
    assert c * c * c == identity(a2) and c * c != identity(a2)
    with pytest.raises(DomainError):
        coxeter_element(a2, (1, 1))


def test_coxeter_elements_of_a3_have_one_cycle_type_per_quotient():
    rs = root_system("A", 3)
    for k in (1, 2, 3):
        pq = weight_quotient(rs, k)
        types = set()
        for ordering in itertools.permutations((1, 2, 3)):
            c = coxeter_element(rs, ordering)
            perm = np.array([pq.index[coset_canonicalize(pq, c * w)] for w in pq.reps])
            types.add(tuple(sorted(cycle_type(perm).items())))
        assert len(types) == 1


def test_minuscule_quotients_are_fully_commutative_distributive_lattices():
    for e in all_entries(7):
        rs, pq = e.rs, e.quotient
        assert all(is_fully_commutative(rs, w) for w in pq.reps)
        # weak order on W^J is J(P) for the minuscule poset P
        assert len(ideals(e.poset)) == len(pq)
        assert is_isomorphic(pq.weak_order, ideal_lattice(e.poset)) is not None


def test_is_below_left():
    rs = root_system("A", 4)
    w = word_element(rs, [3, 2, 4, 1, 3, 2])
    assert is_below_left(rs, generator(rs, 2), w)
    assert is_below_left(rs, identity(rs), w)
    assert not is_below_left(rs, generator(rs, 3), w)


def test_minuscule_weights_table():
    assert minuscule_weights(root_system("A", 3)) == (1, 2, 3)
    assert minuscule_weights(root_system("B", 4)) == (1,)
    assert minuscule_weights(root_system("C", 5)) == (5,)
    assert minuscule_weights(root_system("D", 5)) == (1, 2, 5)
    assert minuscule_weights(root_system("E", 6)) == (1, 6)
    assert minuscule_weights(root_system("E", 7)) == (7,)
