import math
import random

import pytest

from nbtrace.primitivity import (
    apply_whitehead,
    classification_counts,
    crit_sum,
    is_primitive,
    is_proper_power,
    pi_and_crit_size,
    primitivity_rank,
    whitehead_moves,
)
from nbtrace.stallings import bouquet, canonical_form, core_of_word, fold
from nbtrace.words import Word, cyclic_reduce, enumerate_cyclically_reduced, parse_word


def test_whitehead_move_counts():
    assert list(whitehead_moves(1)) == []
    assert len(list(whitehead_moves(2))) == 12  # 2r(4^(r-1)-1)
    assert len(list(whitehead_moves(3))) == 90


def test_whitehead_moves_are_automorphisms():
    # images of a basis must again generate the whole group: folding the
    # wedge of image loops must give the full bouquet
    for r in (2, 3):
        for mv in whitehead_moves(r):
            images = [apply_whitehead(mv, Word((g,), r)) for g in range(1, r + 1)]
            darts = []
            n = 1
            for img in images:
                prev = 0
                for i, ell in enumerate(img.letters):
                    nxt = 0 if i == len(img.letters) - 1 else n
                    if i < len(img.letters) - 1:
                        n += 1
                    if ell > 0:
                        darts.append((prev, ell, nxt))
                    else:
                        darts.append((nxt, -ell, prev))
                    prev = nxt
            g = fold(n, darts, r)
            assert g == bouquet(r)


def test_is_primitive_basics():
    assert is_primitive(parse_word("a", 2), 2)
    assert is_primitive(parse_word("b", 2), 2)
    assert not is_primitive(parse_word("aa", 1), 1)
    assert not is_primitive(parse_word("abAB", 2), 2)
    assert not is_primitive(Word((), 2), 2)


def test_is_primitive_longer_words():
    assert is_primitive(parse_word("aba", 2), 2)
    assert is_primitive(parse_word("aab", 2), 2)
    assert is_primitive(parse_word("abb", 2), 2)
    assert not is_primitive(parse_word("aabb", 2), 2)
    assert not is_primitive(parse_word("abab", 2), 2)
    # primitive in rank 3 via the extra generator staying free
    assert is_primitive(parse_word("abc", 3), 3)


def test_is_primitive_invariances():
    rng = random.Random(11)
    words = [w for w in enumerate_cyclically_reduced(2, 4)]
    sample = rng.sample(words, 20)
    for w in sample:
        p = is_primitive(w, 2)
        assert is_primitive(w.inverse(), 2) == p
        rot = Word(w.letters[1:] + w.letters[:1], 2)
        assert is_primitive(rot, 2) == p
        swapped = Word(tuple(-x if abs(x) == 1 else x for x in w.letters), 2)
        # inverting one generator's name is an automorphism
        assert is_primitive(swapped, 2) == p


def test_is_proper_power():
    assert is_proper_power(parse_word("aa", 2))
    assert is_proper_power(parse_word("abab", 2))
    assert is_proper_power(parse_word("Baab", 2))  # conjugate of aa
    assert not is_proper_power(parse_word("ab", 2))
    assert not is_proper_power(parse_word("aab", 2))
    assert not is_proper_power(Word((), 2))


def test_classification_empty_word():
    cls = primitivity_rank(Word((), 2))
    assert cls.pi == 0
    assert cls.crit == ()


def test_classification_single_letter():
    cls = primitivity_rank(parse_word("a", 2))
    assert cls.pi == math.inf
    assert cls.crit_size == 0


def test_classification_square():
    cls = primitivity_rank(parse_word("aa", 2))
    assert cls.pi == 1
    assert cls.crit_size == 1
    assert canonical_form(cls.crit[0]) == canonical_form(bouquet(2, labels=[1]))


def test_classification_commutator():
    cls = primitivity_rank(parse_word("abAB", 2))
    assert cls.pi == 2
    assert cls.crit_size == 1
    assert canonical_form(cls.crit[0]) == canonical_form(bouquet(2))


def test_classification_fourth_power():
    # critical subgroups of a^4 are <a> and <a^2>
    cls = primitivity_rank(parse_word("aaaa", 2))
    assert cls.pi == 1
    assert cls.crit_size == 2


def test_classification_sixth_power():
    # divisors 1, 2, 3 of 6 give three critical subgroups
    cls = primitivity_rank(parse_word("aaaaaa", 2))
    assert cls.pi == 1
    assert cls.crit_size == 3


def test_pi_one_iff_proper_power_small():
    for t in (2, 3, 4):
        for w in enumerate_cyclically_reduced(2, t):
            pi, _ = pi_and_crit_size(w)
            assert (pi == 1) == is_proper_power(w)


def test_crit_members_contain_word_imprimitively():
    from nbtrace.stallings import basis_of, contains, rewrite_in_basis

    for text in ("aa", "abAB", "aabb", "aaaa"):
        w = parse_word(text, 2)
        cls = primitivity_rank(w)
        for h in cls.crit:
            assert h.rank == cls.pi
            assert contains(h, w)
            rew = rewrite_in_basis(h, basis_of(h), w)
            if h.rank == 1:
                assert len(rew) >= 2
            else:
                assert not is_primitive(rew, h.rank)


def test_classification_stable_under_random_tree_choice():
    rng = random.Random(5)
    reps = set()
    for t in range(1, 7):
        for w in enumerate_cyclically_reduced(2, t):
            from nbtrace.primitivity import _orbit_canonical, _signed_permutations

            reps.add(_orbit_canonical(cyclic_reduce(w).letters, 2, _signed_permutations(2)))
    for letters in sorted(reps):
        w = Word(letters, 2)
        base = primitivity_rank(w)
        for _ in range(2):
            alt = primitivity_rank(w, _tree_rng=rng)
            assert alt.pi == base.pi
            assert alt.crit_size == base.crit_size


def test_crit_sum_values():
    assert crit_sum(2, 1, 1) == 0  # single letters are primitive
    assert crit_sum(2, 2, 1) == 4  # the four squares, one critical subgroup each
    assert crit_sum(2, 2, 2) == 0
    assert crit_sum(2, 3, 1) == 4  # the four cubes
    # length 4: four 4th powers contribute 2 each, eight squares of
    # two-letter non-powers contribute 1 each
    assert crit_sum(2, 4, 1) == 16


def test_crit_sum_length_four_rank_two():
    # 8 commutator-shaped + 16 xxyy-shaped + 16 xyxY-shaped words, all in
    # the automorphism orbit of aabb with a single critical subgroup
    assert crit_sum(2, 4, 2) == 40


def test_crit_sum_reduced_domain_at_least_cyclic():
    for m in (1, 2):
        assert crit_sum(2, 4, m, domain="reduced") >= crit_sum(2, 4, m, domain="cyclic")


def test_classification_counts_partition_words():
    from nbtrace.words import count_cyclically_reduced

    counts = classification_counts(2, 4)
    assert sum(n for n, _ in counts.values()) == count_cyclically_reduced(2, 4).count
    assert counts[1] == (12, 16)
    assert counts[2] == (40, 40)
    assert counts[math.inf] == (32, 0)


def test_crit_sum_rejects_bad_rank():
    with pytest.raises(ValueError):
        crit_sum(2, 4, 0)
    with pytest.raises(ValueError):
        crit_sum(2, 4, 3)
