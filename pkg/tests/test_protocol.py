import random

import pytest

from pointpush.intrep import gen_A_bar
from pointpush.protocol import (
    BraidWord,
    ProtocolWord,
    alpha_automorphism,
    efficiency_estimate,
    hsp,
    parse_protocol,
    protocol_automorphism,
    random_protocol,
    to_braid_word,
)
from pointpush.words import FreeWord, apply_automorphism, compose, incidence_matrix

import math


def test_parse_full_cycle():
    p = parse_protocol("a1 a2 a3", 3)
    assert p == hsp(3)
    assert p.word_length == 3


def test_parse_reduces():
    p = parse_protocol("a1 a1^-1", 2)
    assert p.letters == ()
    assert p.word_length == 0


def test_parse_out_of_range():
    with pytest.raises(ValueError):
        parse_protocol("a5", 4)


def test_parse_bad_token():
    with pytest.raises(ValueError):
        parse_protocol("b2", 4)
    with pytest.raises(ValueError):
        parse_protocol("a2^2", 4)


def test_protocol_str_roundtrip():
    p = parse_protocol("a1 a2^-1 a1", 3)
    assert parse_protocol(str(p), 3) == p


def test_alpha3_action_four_obstacles():
    a = alpha_automorphism(3, 1, 4)
    assert a.images[2].letters == (-2, -1, -5, -4, 3, 4, 5, 1, 2)
    assert a.images[0].letters == (1,)
    assert a.images[4].letters == (5,)


def test_alpha1_action_two_obstacles():
    a = alpha_automorphism(1, 1, 2)
    assert a.images[0].letters == (-3, -2, 1, 2, 3)


def test_alpha_range_errors():
    with pytest.raises(ValueError):
        alpha_automorphism(0, 1, 3)
    with pytest.raises(ValueError):
        alpha_automorphism(4, 1, 3)
    with pytest.raises(ValueError):
        alpha_automorphism(1, 2, 3)


@pytest.mark.parametrize("n", range(2, 11))
def test_alpha_inverses_compose_to_identity(n):
    for j in range(1, n + 1):
        assert compose(
            alpha_automorphism(j, 1, n), alpha_automorphism(j, -1, n)
        ).is_identity()
        assert compose(
            alpha_automorphism(j, -1, n), alpha_automorphism(j, 1, n)
        ).is_identity()


def test_protocol_automorphism_empty_is_identity():
    assert protocol_automorphism(ProtocolWord(3, ())).is_identity()


def test_protocol_automorphism_cancelling_word():
    assert protocol_automorphism(parse_protocol("a1 a1^-1", 2)).is_identity()


def test_protocol_automorphism_full_cycle_norm():
    inc = incidence_matrix(protocol_automorphism(hsp(2)))
    assert inc.one_norm() <= 9


def test_protocol_automorphism_composes_left_to_right():
    p = parse_protocol("a1 a2^-1", 2)
    auto = protocol_automorphism(p)
    w = FreeWord(3, (1,))
    step1 = apply_automorphism(alpha_automorphism(1, 1, 2), w)
    step2 = apply_automorphism(alpha_automorphism(2, -1, 2), step1)
    assert apply_automorphism(auto, w) == step2


def test_braid_alpha1():
    b = to_braid_word(ProtocolWord(2, (1,)))
    assert b.letters == (1, 1)
    assert b.n_strings == 3


def test_braid_alpha2():
    b = to_braid_word(ProtocolWord(2, (2,)))
    assert b.letters == (1, 2, 2, -1)


def test_braid_taffy_puller():
    b = to_braid_word(parse_protocol("a1 a2^-1", 2))
    assert b.letters == (1, 1, 1, -2, -2, -1)
    assert str(b) == "s1 s1 s1 s2^-1 s2^-1 s1^-1"


def test_braid_is_pure():
    rng = random.Random(5)
    for n in (2, 3, 5):
        for _ in range(10):
            p = random_protocol(n, rng.randint(0, 8), rng)
            braid = to_braid_word(p)
            assert braid.n_strings == n + 1
            assert braid.permutation() == tuple(range(n + 1))


def test_braid_validates_indices():
    with pytest.raises(ValueError):
        BraidWord(3, (3,))


def test_hsp_lengths():
    for n in range(2, 11):
        assert hsp(n).word_length == n
    assert str(hsp(2)) == "a1 a2"
    assert str(hsp(4)) == "a1 a2 a3 a4"


def test_hsp_requires_two_obstacles():
    with pytest.raises(ValueError):
        hsp(1)


def test_efficiency_taffy_puller():
    p = parse_protocol("a1 a2^-1", 2)
    value = efficiency_estimate(p, math.log(3 + 2 * math.sqrt(2)))
    assert abs(value - math.log(1 + math.sqrt(2))) < 1e-12


def test_efficiency_zero_entropy():
    assert efficiency_estimate(hsp(3), 0.0) == 0.0


def test_efficiency_rejects_empty():
    with pytest.raises(ValueError):
        efficiency_estimate(ProtocolWord(2, ()), 1.0)


@pytest.mark.parametrize("n", range(2, 11))
def test_incidence_matches_unreduced_form(n):
    for j in range(1, n + 1):
        for sign in (1, -1):
            inc = incidence_matrix(alpha_automorphism(j, sign, n))
            assert inc == gen_A_bar(j, n)
            assert inc.rows[n] == tuple(0 if c != n else 1 for c in range(n + 1))
