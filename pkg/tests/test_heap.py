import itertools
import random

import numpy as np
import pytest

import minuscule.heap as heap_mod
from conftest import random_linear_extension
from minuscule.catalog import all_entries, entry
from minuscule.coxeter import (
    commutation_class, generator, identity, length, reduced_words, root_system,
    weight_quotient, word_element,
)
from minuscule.errors import (
    DomainError, MixedParityError, NotBelowError, NotFullyCommutativeError, NotMinusculeError,
    NotRankedError, NotReducedError,
)
from minuscule.heap import (
    LabeledHeap, bipartite_ordering, coxeter_toggle_word, heap_of, heap_to_dot, heap_to_text,
    label_toggle, minuscule_heap, phi, phi_inverse, phi_table, verify_equivariance,
    verify_generator_actions,
)
from minuscule.poset import chain, from_covers, ideals, is_isomorphic, linear_extensions, product
from minuscule.toggle import IdealSpace, apply_word, cycle_type, even_odd_word

A4 = root_system("A", 4)
A4_WORD = (3, 2, 4, 1, 3, 2)


def test_small_heaps():
    h = heap_of(A4, (2,))
    assert h.poset.n == 1 and h.labels == (2,)
    h = heap_of(A4, (1, 3))
    assert h.poset.n == 2 and not h.poset.covers


def test_a4_heap_is_two_by_three_rectangle():
    h = heap_of(A4, A4_WORD)
    assert is_isomorphic(h.poset, product(chain(2), chain(3))) is not None
    # earlier letters sit higher: position 0 is the unique maximal element
    assert h.poset.maximal() == [0] and h.poset.minimal() == [5]
    assert h.chains == {2: (5, 1), 3: (4, 0), 1: (3,), 4: (2,)}


def test_heap_errors():
    with pytest.raises(NotReducedError):
        heap_of(A4, (1, 1))
    with pytest.raises(NotFullyCommutativeError):
        heap_of(root_system("A", 2), (1, 2, 1))
    with pytest.raises(IndexError):
        heap_of(A4, (5,))


def test_minuscule_heaps():
    assert minuscule_heap(A4, 2).poset.n == 6
    assert minuscule_heap(root_system("E", 6), 1).poset.n == 16
    assert minuscule_heap(root_system("E", 7), 7).poset.n == 27
    assert minuscule_heap(root_system("B", 4), 1).poset.n == 10
    with pytest.raises(NotMinusculeError):
        minuscule_heap(root_system("B", 4), 2)
    with pytest.raises(NotMinusculeError):
        minuscule_heap(root_system("E", 7), 1)


def test_label_classes_are_chains_without_covers():
    for e in all_entries(7):
        h = e.heap
        for k, chain_ in h.chains.items():
            for a, b in zip(chain_, chain_[1:]):
                assert h.poset.leq(a, b)
                assert (a, b) not in h.poset.covers


def test_reverse_linear_extensions_give_all_reduced_words():
    h = heap_of(A4, A4_WORD)
    words = {tuple(h.labels[x] for x in reversed(ext)) for ext in linear_extensions(h.poset)}
    assert words == reduced_words(A4, h.element)


def test_heap_independent_of_reduced_word():
    for e in all_entries(5):
        word = e.heap.source_word
        if len(word) > 12:
            continue
        for other in commutation_class(e.rs, word):
            assert is_isomorphic(heap_of(e.rs, other).poset, e.heap.poset, labels=True) is not None


def test_phi_basics():
    h = heap_of(A4, A4_WORD)
    assert phi(h, 0) == identity(A4)
    assert phi(h, 1 << 5) == generator(A4, 2)
    full = phi(h, h.poset.full)
    assert full == word_element(A4, A4_WORD) and length(A4, full) == 6


def test_phi_does_not_depend_on_the_linear_extension():
    rng = random.Random(9)
    for name in ("A4:2", "D5:5", "E6"):
        h = entry(name).heap
        for I in ideals(h.poset):
            members = [x for x in random_linear_extension(rng, h.poset) if I >> x & 1]
            m = identity(h.rs)
            for x in members:
                m = generator(h.rs, h.labels[x]) * m
            assert m == phi(h, I)


def test_phi_is_a_length_preserving_order_embedding():
    for e in all_entries(7):
        h, pq = e.heap, e.quotient
        space = IdealSpace(h.poset)
        phis = phi_table(h, space)
        assert set(phis) == set(pq.reps)
        for I, w in zip(space.ideals, phis):
            assert length(h.rs, w) == I.bit_count()
            assert phi_inverse(h, w) == I
        # covering ideals map to weak-order covers
        index = {I: i for i, I in enumerate(space.ideals)}
        for I, w in zip(space.ideals, phis):
            for x in range(h.poset.n):
                J = I | 1 << x
                if J != I and J in index:
                    assert phis[index[J]] == generator(h.rs, h.labels[x]) * w


def test_phi_inverse_examples_and_errors():
    h = heap_of(A4, A4_WORD)
    assert phi_inverse(h, identity(A4)) == 0
    assert phi_inverse(h, generator(A4, 2)) == 1 << 5
    with pytest.raises(NotBelowError):
        phi_inverse(h, generator(A4, 3))


def test_label_toggle_changes_at_most_one_element():
    for name in ("A4:2", "B4", "D5:5", "E6"):
        h = entry(name).heap
        for k in range(1, h.rs.rank + 1):
            word = label_toggle(h, k)
            for I in ideals(h.poset):
                assert (apply_word(h.poset, word, I) ^ I).bit_count() <= 1


def test_label_toggle_examples():
    h = heap_of(A4, A4_WORD)
    assert label_toggle(h, 2) == (1, 5)
    assert label_toggle(heap_of(A4, (1,)), 3) == ()
    single = heap_of(A4, (4,))
    assert label_toggle(single, 4) == (0,)


def test_coxeter_toggle_word_order():
    h = heap_of(A4, A4_WORD)
    assert coxeter_toggle_word(h, (1, 2, 3, 4)) == (2,) + (0, 4) + (1, 5) + (3,)
    rank1 = heap_of(root_system("A", 1), (1,))
    assert coxeter_toggle_word(rank1, (1,)) == label_toggle(rank1, 1)
    with pytest.raises(DomainError):
        coxeter_toggle_word(h, (1, 2, 3))


def test_bipartite_ordering_reproduces_even_odd_toggling():
    for e in all_entries(7):
        h = e.heap
        space = IdealSpace(h.poset)
        bo = bipartite_ordering(h)
        assert sorted(bo) == list(range(1, h.rs.rank + 1))
        assert np.array_equal(space.permutation(coxeter_toggle_word(h, bo)),
                              space.permutation(even_odd_word(h.poset)))


def test_bipartite_ordering_errors():
    rs = root_system("A", 2)
    mixed = LabeledHeap(rs, from_covers(3, [(0, 1), (1, 2)], labels=(1, 1, 2)), (2, 1, 1))
    with pytest.raises(MixedParityError):
        bipartite_ordering(mixed)
    pentagon = from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], labels=(1, 2, 1, 2, 1))
    with pytest.raises(NotRankedError):
        bipartite_ordering(LabeledHeap(rs, pentagon, (1, 2, 1, 2, 1)))
    assert bipartite_ordering(heap_of(root_system("A", 1), (1,))) == (1,)


def test_equivariance_for_all_a4_orderings():
    h = minuscule_heap(A4, 2)
    pq = weight_quotient(A4, 2)
    space = IdealSpace(h.poset)
    rowmotion_type = cycle_type(space.permutation())
    for ordering in itertools.permutations(range(1, 5)):
        r = verify_equivariance(h, pq, ordering, space)
        assert r.ok and r.checked == 10
        assert cycle_type(space.permutation(coxeter_toggle_word(h, ordering))) == rowmotion_type


def test_equivariance_for_e7_random_orderings():
    e = entry("E7")
    rng = random.Random(1)
    for _ in range(3):
        ordering = tuple(rng.sample(range(1, 8), 7))
        r = verify_equivariance(e.heap, e.quotient, ordering)
        assert r.ok and r.checked == 56


def test_generator_actions_on_b4():
    e = entry("B4:1")
    assert verify_generator_actions(e.heap, e.quotient) is None


def test_equivariance_detects_a_wrong_convention(monkeypatch):
    # multiplying the Coxeter element in the opposite order must be caught
    e = entry("A4:2")
    original = heap_mod.coxeter_element
    monkeypatch.setattr(heap_mod, "coxeter_element",
                        lambda rs, ordering: original(rs, tuple(reversed(ordering))))
    r = verify_equivariance(e.heap, e.quotient, (1, 2, 3, 4))
    assert not r.ok
    I, expected, got = r.counterexample
    assert expected != got


def test_exports():
    h = heap_of(A4, A4_WORD)
    text = heap_to_text(h)
    assert "label 0 3" in text and text.startswith("# heap of A4")
    assert 'label="s3"' in heap_to_dot(h)
