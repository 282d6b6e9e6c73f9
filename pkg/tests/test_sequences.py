import math

import pytest

from sumsetfree import (
    DyadicParams,
    GroundSet,
    IntegerInterval,
    InvalidInputError,
    SequencePrefix,
    Signature,
    contains_sumset,
    counting_function,
    dyadic_random_sequence,
    greedy_sequence,
    liminf_statistic,
)

from oracles import greedy_sidon

SIG22 = Signature((2, 2))
SIG23 = Signature((2, 3))


def test_greedy_pair_free_start():
    g = greedy_sequence(SIG22, 45)
    assert g.terms == (1, 2, 4, 8, 13, 21, 31, 45)
    assert g.provenance == "greedy limit=45"
    assert len(g) == 8


def test_greedy_matches_difference_oracle():
    for limit in (10, 45, 120, 300):
        assert greedy_sequence(SIG22, limit).terms == tuple(greedy_sidon(limit))


def test_greedy_other_signatures():
    assert greedy_sequence(SIG23, 8).terms == (1, 2, 3, 5, 8)
    assert greedy_sequence(Signature((3,)), 10).terms == (1, 2)


def test_greedy_prefixes_are_free():
    for sig in (SIG22, SIG23, Signature((2, 2, 2))):
        g = greedy_sequence(sig, 60)
        gs = GroundSet(IntegerInterval(60), g.terms)
        assert contains_sumset(gs, sig) is None


def test_prefix_validation():
    with pytest.raises(InvalidInputError):
        SequencePrefix(SIG22, (1, 1, 2), "x")
    with pytest.raises(InvalidInputError):
        SequencePrefix(SIG22, (0, 3), "x")
    with pytest.raises(InvalidInputError):
        SequencePrefix(SIG22, (2, 2), "x")


def test_counting_function():
    g = greedy_sequence(SIG22, 45)
    assert counting_function(g, 21) == 6
    assert counting_function(g, 20.5) == 5
    assert counting_function(g, 45) == 8
    assert counting_function(g, 0.5) == 0


def test_liminf_statistic():
    g = greedy_sequence(SIG22, 45)
    got = liminf_statistic(g, 45)
    assert got == pytest.approx(2.3267831840227657)
    want = 8 * math.sqrt(45 * math.log(45)) / 45
    assert got == pytest.approx(want)
    with pytest.raises(InvalidInputError):
        liminf_statistic(g, 1.0)


def test_dyadic_params():
    p = DyadicParams.for_signature(SIG22, epsilon=0.1, m_min=1, m_max=6, seed=0)
    assert p.alpha == pytest.approx(2 / 3 + 0.05)
    with pytest.raises(InvalidInputError):
        DyadicParams(epsilon=0.1, m_min=0, m_max=4, seed=0, alpha=0.5)
    with pytest.raises(InvalidInputError):
        DyadicParams(epsilon=0.1, m_min=1, m_max=0, seed=0, alpha=0.5)
    with pytest.raises(InvalidInputError):
        DyadicParams(epsilon=-1.0, m_min=1, m_max=3, seed=0, alpha=0.5)


def test_dyadic_rejects_mismatched_alpha():
    bad = DyadicParams(epsilon=0.1, m_min=1, m_max=4, seed=0, alpha=0.9)
    with pytest.raises(InvalidInputError):
        dyadic_random_sequence(SIG22, bad)


def test_dyadic_fixed_seed_run():
    p = DyadicParams.for_signature(SIG22, epsilon=0.1, m_min=1, m_max=6, seed=0)
    rep = dyadic_random_sequence(SIG22, p)
    assert rep.prefix.terms == (257, 269)
    assert rep.prefix.provenance == "dyadic epsilon=0.1 m=1..6 seed=0"
    assert not rep.experimental
    assert [b.m for b in rep.blocks] == [1, 2, 3, 4, 5, 6]
    assert [b.block_start for b in rep.blocks] == [64, 256, 1024, 4096, 16384, 65536]
    assert [b.block_size for b in rep.blocks] == [4, 16, 64, 256, 1024, 4096]
    assert [b.base_size for b in rep.blocks] == [3, 8, 16, 39, 112, 256]
    assert [b.sampled_size for b in rep.blocks] == [0, 2, 0, 0, 0, 0]
    assert [b.retained_size for b in rep.blocks] == [0, 2, 0, 0, 0, 0]
    assert all(b.obstruction_count == 0 for b in rep.blocks)
    assert not any(b.dense for b in rep.blocks)


def test_dyadic_is_deterministic():
    p = DyadicParams.for_signature(SIG22, epsilon=0.1, m_min=1, m_max=6, seed=0)
    a = dyadic_random_sequence(SIG22, p)
    b = dyadic_random_sequence(SIG22, p)
    assert a.prefix.terms == b.prefix.terms
    assert a.blocks == b.blocks


def test_dyadic_prefix_is_stable_under_extension():
    short = DyadicParams.for_signature(SIG22, epsilon=0.1, m_min=1, m_max=4, seed=0)
    long = DyadicParams.for_signature(SIG22, epsilon=0.1, m_min=1, m_max=6, seed=0)
    a = dyadic_random_sequence(SIG22, short)
    b = dyadic_random_sequence(SIG22, long)
    assert b.prefix.terms[: len(a.prefix.terms)] == a.prefix.terms
    assert b.blocks[:4] == a.blocks[:4]


def test_dyadic_prefixes_are_free():
    for sig, seeds in ((SIG22, (0, 1, 6)), (SIG23, (0, 1))):
        for seed in seeds:
            p = DyadicParams.for_signature(
                sig, epsilon=0.1, m_min=1, m_max=6, seed=seed
            )
            rep = dyadic_random_sequence(sig, p)
            if not rep.prefix.terms:
                continue
            top = max(rep.prefix.terms)
            gs = GroundSet(IntegerInterval(top), rep.prefix.terms)
            assert contains_sumset(gs, sig) is None


def test_dyadic_experimental_flag():
    for lengths, flag in (
        ((2, 2), False),
        ((2, 3), False),
        ((2, 2, 2), False),
        ((3, 3), True),
    ):
        sig = Signature(lengths)
        p = DyadicParams.for_signature(sig, epsilon=0.1, m_min=1, m_max=3, seed=0)
        assert dyadic_random_sequence(sig, p).experimental is flag
