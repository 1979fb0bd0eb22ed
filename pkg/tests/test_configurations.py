"""Configuration enumeration against an independent brute-force oracle."""

from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb

import pytest

from bhlab import configurations as conf
from bhlab.errors import CapExceeded

PARTITION_NUMBERS = {1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11}


# ---------------------------------------------------------------------------
# independent oracle: enumerate k x l matrices cell by cell

def _set_partitions(n):
    """All set partitions of range(n) as assignment vectors (restricted growth)."""
    def rec(i, assign, used):
        if i == n:
            yield tuple(assign)
            return
        for v in range(used + 1):
            assign.append(v)
            yield from rec(i + 1, assign, max(used, v + 1))
            assign.pop()

    yield from rec(0, [], 0)


def brute_classes(k, l):
    """Canonical forms of valid classes, via explicit matrix enumeration."""
    classes = set()
    for assign in _set_partitions(k * l):
        cols = [tuple(assign[j * k + i] for i in range(k)) for j in range(l)]
        nvars = max(assign) + 1
        col_sets = [set(c) for c in cols]
        if any(all(v in cs for cs in col_sets) for v in range(nvars)):
            continue  # a variable occupies every column
        col_multisets = [tuple(sorted(c)) for c in cols]
        if len(set(col_multisets)) != l:
            continue  # two equal columns
        per_col_counts = [[c.count(v) for c in cols] for v in range(nvars)]
        separable = all(sum(1 for x in row if x) == 1 for row in per_col_counts)
        flat = all(max(row) <= 1 for row in per_col_counts)
        if not (separable or flat):
            continue  # repetition mixed with sharing
        # label-free invariant: least sorted count-row multiset over column perms
        best = None
        for sigma in permutations(range(l)):
            cand = tuple(sorted(tuple(row[j] for j in sigma) for row in per_col_counts))
            if best is None or cand < best:
                best = cand
        classes.add(best)
    return classes


@pytest.mark.parametrize("k,l", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (2, 4)])
def test_enumeration_matches_brute_force(k, l):
    ours = {c.vectors for c in conf.enumerate_conf(k, l)}
    assert ours == brute_classes(k, l)


def test_counts_for_two_columns_follow_partition_numbers():
    for k, pk in PARTITION_NUMBERS.items():
        assert len(conf.enumerate_conf(k, 2)) == comb(pk + 1, 2)


def test_shape_2_3_table_is_exact():
    classes = conf.enumerate_conf(2, 3)
    assert len(classes) == 7
    stats = sorted((s.d, s.p) for s in map(conf.conf_stats, classes))
    assert stats == sorted([
        (3, Fraction(1, 4)), (4, Fraction(1, 8)), (5, Fraction(1, 16)),
        (6, Fraction(5, 32)), (3, Fraction(1, 4)), (4, Fraction(1, 4)),
        (5, Fraction(3, 16))])


def test_rejected_matrix_shapes_are_absent():
    for c in conf.enumerate_conf(2, 3):
        for vec in c.vectors:
            assert min(vec) == 0  # no variable occupies every column
        cols = c.columns()
        assert len(set(cols)) == len(cols)  # no two equal columns


def test_upto_and_separable_families():
    assert len(conf.enumerate_conf_upto(2, 3)) == 8
    assert len(conf.enumerate_conf_upto(2, 2)) == 4
    sconf22 = conf.enumerate_sconf(2, 2)
    assert sconf22 == conf.enumerate_conf_upto(2, 2)  # l=2 is always separable
    sconf23 = [c for c in conf.enumerate_conf(2, 3) if c.is_separable()]
    assert len(sconf23) == 4
    assert len(conf.enumerate_sconf(1, 5)) == 1


def test_dp_statistics_match_exhaustive_reference():
    for k, l in [(1, 2), (2, 2), (3, 2), (2, 3), (2, 4), (4, 2)]:
        for c in conf.enumerate_conf(k, l):
            assert conf.conf_stats(c) == conf.conf_stats_exhaustive(c)


def test_statistics_for_two_column_shapes():
    by_stats = sorted((s.d, s.p) for s in map(conf.conf_stats, conf.enumerate_conf(2, 2)))
    assert by_stats == [(2, Fraction(1, 2)), (3, Fraction(1, 4)), (4, Fraction(3, 8))]


def test_general_distribution_statistics_reduce_to_uniform():
    half = Fraction(1, 2)
    for c in conf.enumerate_conf_upto(2, 3):
        general = conf.conf_stats_general(c, [(0, half), (1, half)])
        assert general == conf.conf_stats(c)


def test_general_distribution_statistics_biased_hand_value():
    # single shared variable per column pair on (ab|ab): p = sum q_a^2 over points
    c = conf.enumerate_conf(1, 2)[0]
    dist = [(0, Fraction(3, 4)), (1, Fraction(1, 4))]
    stats = conf.conf_stats_general(c, dist)
    assert stats.p == Fraction(9, 16) + Fraction(1, 16)


def test_cmax_and_closed_form_probability():
    for h, g in [(1, 1), (2, 1), (3, 1), (2, 2), (2, 3), (3, 2)]:
        c = conf.cmax(h, g + 1)
        assert c.d == h * (g + 1)
        assert conf.conf_stats(c).p == conf.cmax_p_closed(h, g)
    assert conf.cmax_p_closed(2, 1) == Fraction(3, 8)
    assert conf.cmax_p_closed(1, 5) == Fraction(1, 32)
    assert conf.cmax_p_closed(2, 2) == Fraction(5, 32)


def test_all_distinct_class_maximizes_root_of_p_for_two_columns():
    for h in range(1, 6):
        top = conf.cmax(h, 2)
        p_top = conf.conf_stats(top).p
        for c in conf.enumerate_conf_upto(h, 2):
            s = conf.conf_stats(c)
            # p^(1/d) <= p_top^(1/(2h))  <=>  p^(2h) <= p_top^d
            assert s.p ** (2 * h) <= p_top ** s.d


def test_all_distinct_class_maximizes_over_separable_families_even_h():
    for h in (2, 4):
        for g in (1, 2):
            top_p = conf.cmax_p_closed(h, g)
            top_d = h * (g + 1)
            for c in conf.enumerate_sconf(h, g + 1):
                s = conf.conf_stats(c)
                assert s.p ** top_d <= top_p ** s.d


def test_two_column_cmax_root_is_monotone_in_d():
    prev_p, prev_d = None, None
    for d in range(1, 65):
        p = conf.cmax_p_closed(d, 1)
        if prev_p is not None:
            # prev_p^(1/(2 prev_d)) <= p^(1/(2d))
            assert prev_p**d <= p**prev_d
        prev_p, prev_d = p, d


def test_canonicalization_is_idempotent_and_injective():
    for k, l in [(2, 2), (2, 3), (3, 2)]:
        seen = set()
        for c in conf.enumerate_conf(k, l):
            assert conf.canonical(c.vectors) == c
            assert c.vectors not in seen
            seen.add(c.vectors)


def test_automorphism_count_matches_violation_census():
    # FF(t, d) / |Aut| must equal the number of distinct violation instances
    # on t indices; count those directly for small t.
    t = 5
    for c in conf.enumerate_conf_upto(2, 2) + conf.enumerate_conf(2, 3):
        d = c.d
        instances = set()
        for assign in permutations(range(t), d):
            cols = []
            for j in range(c.l):
                col = []
                for var, vec in enumerate(c.vectors):
                    col.extend([assign[var]] * vec[j])
                cols.append(tuple(sorted(col)))
            instances.add(tuple(sorted(cols)))
        ff = 1
        for i in range(d):
            ff *= t - i
        assert ff % conf.automorphism_count(c) == 0
        assert ff // conf.automorphism_count(c) == len(instances)


def test_sharp_family_satisfies_its_defining_bounds():
    h, d = 2, 2
    family = conf.enumerate_conf_sharp(h, d)
    assert family
    for c in family:
        k = c.k
        assert 1 <= k <= h and c.l >= 2
        assert c.d >= d + 1 - h + k
        for j in range(c.l):
            assert c.delete_column_distinct(j) <= d - h + k


def test_sharp_family_can_be_empty():
    assert conf.enumerate_conf_sharp(2, 20) == []


def test_enumeration_cap_is_enforced():
    with pytest.raises(CapExceeded):
        conf.enumerate_conf(5, 5)
    with pytest.raises(CapExceeded):
        big = conf.canonical(tuple((1, 0) for _ in range(30)) + tuple((0, 1) for _ in range(30)))
        conf.conf_stats(big)


def test_json_export_shape():
    c = conf.enumerate_conf(2, 2)[0]
    rec = conf.conf_to_json(c, conf.conf_stats(c))
    assert set(rec) == {"k", "l", "columns", "d", "p"}
    assert rec["k"] == 2 and rec["l"] == 2
    assert "/" in rec["p"]
