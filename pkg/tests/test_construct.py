import pytest

from sumsetfree import (
    CyclicProduct,
    GroundSet,
    IntegerInterval,
    InvalidInputError,
    InvalidSignatureError,
    Signature,
    StructureError,
    behrend_set,
    contains_sumset,
    deletion_with_retries,
    integer_l222_construction,
    integer_l222_prime,
    is_sidon,
    mixed_radix_embed,
    primitive_root,
    random_deletion,
    zp3_construction,
)

from oracles import has_progression

SIG222 = Signature((2, 2, 2))


def test_progression_free_block_small_values():
    b = behrend_set(14)
    assert b.elements == (1, 2, 4, 5, 10, 11, 13, 14)
    assert b.ambient.describe() == "interval n=14"
    assert behrend_set(1).elements == (1,)


def test_progression_free_block_never_has_ap3():
    for n in (1, 2, 3, 5, 9, 20, 27, 40, 81, 200, 729):
        assert not has_progression(behrend_set(n).elements), n


def test_progression_free_block_sizes_at_powers():
    assert len(behrend_set(10**4).elements) == 512
    assert len(behrend_set(4096).elements) == 256


def test_deletion_seed_zero_report():
    rep = random_deletion(10**4, SIG222, 0)
    assert rep.to_dict() == {
        "n": 10000,
        "signature": [2, 2, 2],
        "seed": 0,
        "p": 0.003959549021916447,
        "sizes": {"S": 4, "bad": 0, "A": 4},
    }
    assert rep.base_size == 512
    assert rep.success_threshold == pytest.approx(0.5068222748053052)
    assert set(rep.result.as_set()) == set(rep.sampled) - set(rep.deleted)
    assert contains_sumset(rep.result, SIG222) is None


def test_deletion_is_deterministic():
    a = random_deletion(10**4, SIG222, 5)
    b = random_deletion(10**4, SIG222, 5)
    assert a.to_dict() == b.to_dict()
    assert a.result.elements == b.result.elements


def test_deletion_retries_move_to_next_seed():
    # seed 9 samples nothing at n = 10**4, so the retry loop advances
    rep, attempts, ok = deletion_with_retries(10**4, SIG222, 9, max_attempts=3)
    assert (attempts, ok, rep.seed) == (2, True, 10)
    assert len(rep.result.elements) >= rep.success_threshold


def test_deletion_validates_input():
    with pytest.raises(InvalidSignatureError):
        random_deletion(10**4, Signature((4,)), 0)
    with pytest.raises(InvalidInputError):
        random_deletion(1, SIG222, 0)


def test_primitive_roots():
    assert primitive_root(5) == 2
    assert primitive_root(7) == 3
    assert primitive_root(11) == 2
    assert primitive_root(13) == 2
    for bad in (1, 4, 6, 15):
        with pytest.raises(InvalidInputError):
            primitive_root(bad)


def test_log_surface_smallest_prime():
    z = zp3_construction(5)
    assert z.ambient.describe() == "product 4,4,4"
    assert z.elements == ((1, 1, 1), (2, 2, 3), (2, 3, 2), (3, 2, 2))
    assert contains_sumset(z, SIG222) is None


def test_log_surface_defining_equation():
    for p in (5, 7, 11, 13):
        theta = primitive_root(p)
        z = zp3_construction(p)
        assert len(z.elements) == (p - 3) ** 2
        for x1, x2, x3 in z.elements:
            assert 1 <= x1 <= p - 2 and 1 <= x2 <= p - 2 and 1 <= x3 <= p - 2
            total = pow(theta, x1, p) + pow(theta, x2, p) + pow(theta, x3, p)
            assert total % p == 1


def test_log_surface_rejects_non_primes():
    for bad in (2, 3, 4, 6):
        with pytest.raises(InvalidInputError):
            zp3_construction(bad)


def test_embedding_of_log_surface():
    e = mixed_radix_embed(zp3_construction(5))
    assert e.elements == (73, 147, 154, 210)
    assert e.ambient.describe() == "interval n=255 lo=0"
    assert contains_sumset(e, SIG222) is None


def test_embedding_weights():
    g = GroundSet(CyclicProduct((3, 5)), [(0, 0), (1, 2), (2, 4)])
    e = mixed_radix_embed(g)
    assert e.elements == (0, 13, 26)
    assert e.ambient.describe() == "interval n=29 lo=0"


def test_embedding_preserves_pair_freeness_small():
    cp = CyclicProduct((5, 5))
    g = GroundSet(cp, [(0, 0), (1, 0), (0, 1), (2, 3)])
    image = mixed_radix_embed(g)
    assert is_sidon(g) == is_sidon(image)


def test_embedding_needs_product_ambient():
    with pytest.raises(StructureError):
        mixed_radix_embed(GroundSet(IntegerInterval(5), [1, 2]))


def test_integer_construction_prime_choice():
    assert integer_l222_prime(256) == 5
    assert integer_l222_prime(4000) == 11
    assert integer_l222_prime(10**4) == 13
    with pytest.raises(InvalidInputError):
        integer_l222_prime(255)


def test_integer_construction_results():
    c = integer_l222_construction(256)
    assert c.elements == (73, 147, 154, 210)
    assert c.ambient.describe() == "interval n=255 lo=0"
    assert len(integer_l222_construction(4000).elements) == 64
    big = integer_l222_construction(10**4)
    assert len(big.elements) == 100
    assert big.ambient.describe() == "interval n=9999 lo=0"
    assert contains_sumset(c, SIG222) is None
    with pytest.raises(InvalidInputError):
        integer_l222_construction(100)
