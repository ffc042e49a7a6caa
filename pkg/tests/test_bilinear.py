import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import chisquare

from iovauth.bilinear import (
    BYTES, G1, HASH_DOMAINS, MEDIUM, SCALAR, TINY, DigestOracle, ScriptedOracle, ScriptedRandom,
    group_by_name, toy_setup,
)
from iovauth.errors import EncodingError, NonInvertible, OracleExhausted, ParameterError

MED = group_by_name("MEDIUM")


# -- toy arithmetic, brute-forced values ------------------------------------

def test_tiny_known_values(tiny):
    assert tiny.pair(3, 4) == 2
    assert tiny.pair(6, 4) == 4
    assert tiny.g2_exp(18, 5) == 3
    assert tiny.scalar_inv(5) == 9
    assert tiny.scalar_inv(4) == 3
    assert tiny.pair(tiny.P, tiny.P) == tiny.g == 2


def test_toy_pairing_matches_definition(tiny):
    for a, b in itertools.product(range(11), repeat=2):
        assert tiny.pair(a, b) == pow(2, a * b % 11, 23)


def test_bilinearity_exhaustive_tiny(tiny):
    G = tiny
    for a, b, x, y in itertools.product(range(11), repeat=4):
        lhs = G.pair(G.g1_mul(x, a), G.g1_mul(y, b))
        assert lhs == G.g2_exp(G.pair(a, b), x * y)


def test_non_degenerate(tiny, medium):
    for G in (tiny, medium):
        e = G.pair(G.P, G.P)
        assert e != G.g2_identity
        assert G.g2_exp(e, G.q) == G.g2_identity


def test_field_laws_exhaustive_tiny(tiny):
    G = tiny
    r = range(11)
    for a, b, c in itertools.product(r, repeat=3):
        assert G.scalar_mul(G.scalar_mul(a, b), c) == G.scalar_mul(a, G.scalar_mul(b, c))
        assert G.scalar_add(G.scalar_add(a, b), c) == G.scalar_add(a, G.scalar_add(b, c))
        assert G.scalar_mul(a, G.scalar_add(b, c)) == G.scalar_add(G.scalar_mul(a, b), G.scalar_mul(a, c))
    for k in range(1, 11):
        assert G.scalar_mul(k, G.scalar_inv(k)) == 1
    with pytest.raises(NonInvertible):
        G.scalar_inv(0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, MED.q - 1), st.integers(0, MED.q - 1), st.integers(0, MED.q - 1), st.integers(0, MED.q - 1))
def test_bilinearity_medium(a, b, x, y):
    G = MED
    assert G.pair(G.g1_mul(x, a), G.g1_mul(y, b)) == G.g2_exp(G.pair(a, b), x * y)


# -- encodings ----------------------------------------------------------------

def test_codec_roundtrip_exhaustive_tiny(tiny):
    G = tiny
    for k in range(11):
        assert G.decode_scalar(G.encode_scalar(k)) == k
        assert G.decode_g1(G.encode_g1(k)) == k
        b = G.g2_exp(G.g, k)
        assert G.decode_g2(G.encode_g2(b)) == b
    assert len(G.encode_g1(3)) == 1 and len(G.encode_g2(8)) == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(0, MED.q - 1))
def test_codec_roundtrip_medium(k):
    G = MED
    assert G.decode_scalar(G.encode_scalar(k)) == k
    assert G.decode_g1(G.encode_g1(k)) == k
    b = G.g2_exp(G.g, k)
    assert G.decode_g2(G.encode_g2(b)) == b


def test_decode_rejects_bad_input(tiny):
    G = tiny
    with pytest.raises(EncodingError):
        G.decode_g1(bytes([11]))
    with pytest.raises(EncodingError):
        G.decode_g1(b"\x00\x01")
    with pytest.raises(EncodingError):
        G.decode_g2(bytes([5]))  # 5 is not in the order-11 subgroup mod 23
    with pytest.raises(EncodingError):
        G.decode_g2(bytes([0]))


def test_toy_setup_validation():
    assert toy_setup(*TINY).q == 11
    assert toy_setup(*MEDIUM).p == MEDIUM[1]
    with pytest.raises(ParameterError):
        toy_setup(12, 23, 2)
    with pytest.raises(ParameterError):
        toy_setup(11, 29, 2)  # 11 does not divide 28
    with pytest.raises(ParameterError):
        toy_setup(11, 23, 5)  # order 22
    with pytest.raises(ParameterError):
        toy_setup(11, 23, 1)


def test_medium_params_shape():
    q, p, g0 = MEDIUM
    assert q.bit_length() == 64
    assert (p - 1) % q == 0
    assert pow(g0, q, p) == 1 and g0 != 1


# -- randomness ---------------------------------------------------------------

def test_random_scalar_seeded_reproducible(tiny):
    a = [tiny.random_scalar(random.Random(5)) for _ in range(3)]
    r1, r2 = random.Random(9), random.Random(9)
    assert [tiny.random_scalar(r1) for _ in range(50)] == [tiny.random_scalar(r2) for _ in range(50)]
    assert len(set(a)) == 1


def test_random_scalar_never_zero_and_uniform(tiny):
    rng = random.Random(12345)
    draws = [tiny.random_scalar(rng) for _ in range(100_000)]
    assert min(draws) >= 1 and max(draws) <= 10
    counts = [draws.count(v) for v in range(1, 11)]
    assert chisquare(counts).pvalue > 0.01


# -- hashing ------------------------------------------------------------------

def test_hash_deterministic_and_in_range(medium):
    G = medium
    a = G.hash_to_scalar("H0", (BYTES, "OBU-1"), (G1, 5))
    assert a == G.hash_to_scalar("H0", (BYTES, "OBU-1"), (G1, 5))
    assert 1 <= a < G.q


def test_hash_type_tags_disambiguate(medium):
    G = medium
    assert G.hash_to_scalar("H0", (SCALAR, 5)) != G.hash_to_scalar("H0", (G1, 5))
    assert G.hash_to_scalar("H0", (BYTES, "ab"), (BYTES, "c")) != G.hash_to_scalar("H0", (BYTES, "a"), (BYTES, "bc"))


def test_hash_nonzero_at_tiny(tiny):
    # at q=11 roughly 1 in 11 digests reduce to zero; the counter must resample
    for i in range(2000):
        assert 1 <= tiny.hash_to_scalar("H2", (BYTES, b"%d" % i)) < 11


def test_hash_domains_independent(medium):
    G = medium
    collisions = 0
    for i in range(1000):
        item = (BYTES, b"input-%d" % i)
        outs = [G.hash_to_scalar(d, item) for d in HASH_DOMAINS]
        collisions += len(outs) - len(set(outs))
    # chance rate is about 10 * 1000 / 2^64
    assert collisions == 0


def test_digest_oracle_matches_group(medium):
    oracle = DigestOracle(medium)
    assert oracle("H3", (BYTES, "RSU-1")) == medium.hash_to_scalar("H3", (BYTES, "RSU-1"))


def test_scripted_oracle_fifo_and_exhaustion():
    o = ScriptedOracle({"H0": [4, 7]})
    assert o("H0", (BYTES, "x")) == 4
    assert o("H0", (BYTES, "y")) == 7
    with pytest.raises(OracleExhausted):
        o("H0")
    with pytest.raises(OracleExhausted):
        o("H1")


def test_scripted_oracle_from_file(tmp_path):
    path = tmp_path / "oracle.txt"
    path.write_text("# toy vector\nH0 4\nH1 5\nH0 6\n\nH2 3\n")
    o = ScriptedOracle.from_file(path)
    assert [o("H0"), o("H0"), o("H1"), o("H2")] == [4, 6, 5, 3]


def test_scripted_random():
    r = ScriptedRandom([3, 4], random.Random(1))
    assert r.randrange(1, 11) == 3
    assert r.randrange(1, 11) == 4
    assert 1 <= r.randrange(1, 11) < 11
    with pytest.raises(OracleExhausted):
        ScriptedRandom([]).randrange(1, 11)


def test_kdf_length_and_label_separation(medium):
    a = medium.kdf(b"pseudonym", b"seed", 100)
    assert len(a) == 100
    assert a != medium.kdf(b"other", b"seed", 100)
    assert a[:64] == medium.kdf(b"pseudonym", b"seed", 64)


# -- production curve backend -------------------------------------------------

def test_production_bilinearity(a160):
    G = a160
    rng = random.Random(3)
    e = G.pair(G.P, G.P)
    assert e != G.g2_identity and G.g2_exp(e, G.q) == G.g2_identity
    for _ in range(2):
        a, b = G.random_scalar(rng), G.random_scalar(rng)
        assert G.pair(G.g1_mul(a, G.P), G.g1_mul(b, G.P)) == G.g2_exp(e, a * b)


def test_production_group_laws_and_codecs(a160):
    G = a160
    rng = random.Random(4)
    a, b = G.random_scalar(rng), G.random_scalar(rng)
    A, B = G.g1_mul(a, G.P), G.g1_mul(b, G.P)
    assert G.g1_add(A, B) == G.g1_mul(a + b, G.P)
    assert G.g1_add(A, G.g1_neg(A)) == G.g1_identity
    assert G.g1_mul(G.q, G.P) == G.g1_identity
    for pt in (A, G.g1_identity):
        assert G.decode_g1(G.encode_g1(pt)) == pt
    z = G.g2_exp(G.g, a)
    assert G.decode_g2(G.encode_g2(z)) == z
    assert G.g2_mul(z, G.g2_inv(z)) == G.g2_identity
    bad = bytearray(G.encode_g1(A))
    bad[-1] ^= 1
    with pytest.raises(EncodingError):
        G.decode_g1(bytes(bad))
