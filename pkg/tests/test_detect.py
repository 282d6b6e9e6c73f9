import itertools
import random

import pytest

from sumsetfree import (
    BudgetExceededError,
    CyclicProduct,
    GroundSet,
    IndexedMultiset,
    IntegerInterval,
    InvalidSignatureError,
    PreconditionError,
    Signature,
    StructureError,
    ap3_of_degenerate,
    contains_sumset,
    count_all_sumsets,
    enumerate_sumsets,
    introduces_sumset,
    is_degenerate,
    is_hilbert_cube_free,
    is_sidon,
    verify_multiset,
)
from sumsetfree.detect import cube3_sum_relations, has_cube_dim3_by_sum_system

from oracles import (
    cyclic_decompositions,
    interval_decompositions,
    sidon_by_sums,
)

SIG22 = Signature((2, 2))
SIG23 = Signature((2, 3))
SIG33 = Signature((3, 3))
SIG222 = Signature((2, 2, 2))


def interval_set(elems, n=None):
    if n is None:
        n = max(elems)
    return GroundSet(IntegerInterval(n), elems)


def test_smallest_pair_witness():
    w = contains_sumset(interval_set([1, 2, 3]), SIG22)
    assert w is not None
    assert w.offset == 1
    assert w.summands == ((0, 1), (0, 1))
    assert w.values() == (1, 2, 3)


def test_enumeration_of_short_interval():
    ws = list(enumerate_sumsets(interval_set([1, 2, 3, 4]), SIG22))
    listed = {(w.offset, w.summands) for w in ws}
    assert listed == {
        (1, ((0, 1), (0, 1))),
        (1, ((0, 1), (0, 2))),
        (1, ((0, 2), (0, 1))),
        (2, ((0, 1), (0, 1))),
    }
    assert len(ws) == 4
    assert len({frozenset(w.values()) for w in ws}) == 3


def test_sidon_set_has_no_pair_sumset():
    gs = interval_set([1, 2, 5, 11])
    assert contains_sumset(gs, SIG22) is None
    assert list(enumerate_sumsets(gs, SIG22)) == []
    assert is_sidon(gs)


def test_enumeration_budget():
    gs = interval_set(list(range(1, 13)))
    with pytest.raises(BudgetExceededError):
        list(enumerate_sumsets(gs, SIG22, limit=5))
    assert len(list(enumerate_sumsets(gs, SIG22, limit=10**6))) > 5


def test_detector_returns_first_enumerated():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(4, 12)
        elems = [x for x in range(1, n + 1) if rng.random() < 0.6]
        if not elems:
            continue
        gs = interval_set(elems, n)
        for sig in (SIG22, SIG23, SIG222):
            ws = list(enumerate_sumsets(gs, sig))
            found = contains_sumset(gs, sig)
            if ws:
                assert found is not None
                assert (found.offset, found.summands) == (ws[0].offset, ws[0].summands)
            else:
                assert found is None


def test_enumeration_matches_direct_loops_interval():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randrange(3, 11)
        elems = [x for x in range(1, n + 1) if rng.random() < 0.7]
        if not elems:
            continue
        gs = interval_set(elems, n)
        for sig in (SIG22, SIG23, SIG33, SIG222):
            got = {(w.offset, w.summands) for w in enumerate_sumsets(gs, sig)}
            want = set(interval_decompositions(elems, sig.lengths))
            assert got == want, (elems, sig.lengths)


def test_enumeration_matches_direct_loops_cyclic():
    rng = random.Random(13)
    for _ in range(30):
        n = rng.randrange(3, 9)
        cp = CyclicProduct((n,))
        elems = [(x,) for x in range(n) if rng.random() < 0.6]
        gs = GroundSet(cp, elems)
        for sig in (SIG22, SIG23):
            got = {
                (w.offset[0], tuple(tuple(d[0] for d in L) for L in w.summands))
                for w in enumerate_sumsets(gs, sig)
            }
            want = set(cyclic_decompositions(n, [e[0] for e in elems], sig.lengths))
            assert got == want, (n, elems, sig.lengths)


def test_equal_summand_pair_in_small_group():
    # 1 + {0,2} + {0,2} covers {1,3} in Z_4, so {1,3} is not pair-free
    gs = GroundSet(CyclicProduct((4,)), [(1,), (3,)])
    w = contains_sumset(gs, SIG22)
    assert w is not None
    assert w.summands == (((0,), (2,)), ((0,), (2,)))
    assert not is_sidon(gs)


def test_two_torsion_pair_is_not_sidon():
    gs = GroundSet(CyclicProduct((2, 2)), [(0, 0), (1, 0)])
    assert not is_sidon(gs)
    assert contains_sumset(gs, SIG22) is not None


def test_is_sidon_matches_classical_sum_test():
    rng = random.Random(17)
    for _ in range(1000):
        elems = [x for x in range(1, 51) if rng.random() < 0.15]
        if len(elems) < 2:
            continue
        gs = interval_set(elems, 50)
        assert is_sidon(gs) == sidon_by_sums(elems)
        assert is_sidon(gs) == (contains_sumset(gs, SIG22) is None)


def test_incremental_detection_agrees_with_full_rescan():
    rng = random.Random(19)
    for sig in (SIG22, SIG23, SIG222):
        for _ in range(60):
            n = rng.randrange(5, 14)
            chosen = []
            for c in range(1, n + 1):
                if rng.random() < 0.5:
                    continue
                grows = introduces_sumset(chosen, c, sig, IntegerInterval(n))
                rescan = (
                    contains_sumset(interval_set(chosen + [c], n), sig) is not None
                )
                assert grows == rescan, (chosen, c, sig.lengths)
                if not grows:
                    chosen.append(c)


def test_incremental_detection_in_groups():
    rng = random.Random(23)
    cp = CyclicProduct((3, 4))
    universe = [cp.element_at(i) for i in range(cp.cardinality)]
    for _ in range(40):
        chosen = []
        for x in universe:
            if rng.random() < 0.4:
                continue
            grows = introduces_sumset(chosen, x, SIG22, cp)
            rescan = contains_sumset(GroundSet(cp, chosen + [x]), SIG22) is not None
            assert grows == rescan
            if not grows:
                chosen.append(x)


def test_hilbert_cube_freeness():
    assert not is_hilbert_cube_free(interval_set(list(range(1, 9))), 3)
    assert is_hilbert_cube_free(interval_set([1, 2, 4, 8, 13, 21, 31, 45]), 3)
    assert is_hilbert_cube_free(interval_set([1, 2]), 2)
    with pytest.raises(InvalidSignatureError):
        is_hilbert_cube_free(interval_set([1, 2]), 1)


def test_cube3_sum_system_agrees_with_detector():
    rng = random.Random(29)
    for _ in range(40):
        n = rng.randrange(8, 16)
        elems = [x for x in range(1, n + 1) if rng.random() < 0.8]
        if not elems:
            continue
        gs = interval_set(elems, n)
        assert has_cube_dim3_by_sum_system(gs) == (
            contains_sumset(gs, SIG222) is not None
        )


def test_cube3_relations_reject_bad_points():
    iv = IntegerInterval(30)
    x, d1, d2, d3 = 1, 2, 5, 9
    pts = (x, x + d1, x + d2, x + d1 + d2, x + d3, x + d1 + d3, x + d2 + d3,
           x + d1 + d2 + d3)
    assert cube3_sum_relations(pts, iv)
    broken = pts[:7] + (pts[7] + 1,)
    assert not cube3_sum_relations(broken, iv)
    with pytest.raises(StructureError):
        cube3_sum_relations(pts[:7], iv)


def test_multiset_verification_example():
    iv = IntegerInterval(16)
    ms = IndexedMultiset(iv, SIG22, {(1, 1): 0, (2, 1): 1, (1, 2): 2, (2, 2): 3})
    assert verify_multiset(ms) == ((0, 1), (0, 2))
    bad = IndexedMultiset(iv, SIG22, {(1, 1): 0, (2, 1): 1, (1, 2): 2, (2, 2): 4})
    assert verify_multiset(bad) is None
    repeated = IndexedMultiset(iv, SIG22, {(1, 1): 0, (2, 1): 0, (1, 2): 2, (2, 2): 2})
    assert verify_multiset(repeated) is None
    with pytest.raises(StructureError):
        IndexedMultiset(iv, SIG22, {(1, 1): 0})


def test_multiset_round_trip_from_witnesses():
    rng = random.Random(31)
    for _ in range(30):
        n = rng.randrange(4, 12)
        elems = [x for x in range(1, n + 1) if rng.random() < 0.7]
        gs = interval_set(elems or [1], n)
        for sig in (SIG22, SIG23, SIG222):
            for w in itertools.islice(enumerate_sumsets(gs, sig), 5):
                got = verify_multiset(IndexedMultiset.from_witness(w))
                assert got is not None
                assert got[0] == tuple(w.offset + d for d in w.summands[0])
                assert got[1:] == w.summands[1:]


def test_degeneracy_and_progression_extraction():
    iv = IntegerInterval(16)
    assert is_degenerate(((0, 1), (0, 1)), iv)
    assert ap3_of_degenerate(((0, 1), (0, 1))) == (0, 1, 2)
    assert ap3_of_degenerate(((0, 2), (0, 2))) == (0, 2, 4)
    assert not is_degenerate(((0, 1), (0, 2)), iv)
    with pytest.raises(PreconditionError):
        ap3_of_degenerate(((0, 1), (0, 2)))
    with pytest.raises(StructureError):
        is_degenerate(((0, 0), (0, 1)), iv)


def test_ap3_lies_inside_the_sumset_values():
    rng = random.Random(37)
    for _ in range(50):
        L1 = tuple(sorted(rng.sample(range(0, 9), rng.randrange(2, 4))))
        L2 = tuple(sorted(rng.sample(range(0, 9), rng.randrange(2, 4))))
        values = {a + b for a in L1 for b in L2}
        if len(values) == len(L1) * len(L2):
            continue
        a, b, c = ap3_of_degenerate((L1, L2))
        assert b - a == c - b > 0
        assert {a, b, c} <= values


def test_count_all_sumsets_small_values():
    assert count_all_sumsets(4, SIG22) == (4, 3)
    assert count_all_sumsets(2, SIG22) == (0, 0)
    with pytest.raises(BudgetExceededError):
        count_all_sumsets(100, SIG222, budget=10**6)


def test_count_all_matches_direct_loops():
    for n in range(1, 9):
        for sig in (SIG22, SIG23):
            decomps = interval_decompositions(range(1, n + 1), sig.lengths)
            value_sets = set()
            for x, combo in decomps:
                value_sets.add(
                    frozenset(x + sum(p) for p in itertools.product(*combo))
                )
            assert count_all_sumsets(n, sig) == (len(decomps), len(value_sets))
