import math
import random

import pytest

from pointpush.errors import BudgetExceededError
from pointpush.gsr import (
    W_apply,
    W_strategy,
    gsr_estimate,
    gsr_two_obstacles,
    order_lemma_failures,
    reconstruct_strategy,
    relation_lemma_failures,
    rho_k_bruteforce,
    sort_vec,
    standardize,
    verify_gsr_realized,
)
from pointpush.intrep import Hhat_matrix, gen_A, gen_E, gen_E_inverse, psi
from pointpush.protocol import parse_protocol
from pointpush.spectral import spectral_radius

SILVER = 1 + math.sqrt(2)


def test_rho_1_of_incidence_pair_is_one():
    result = rho_k_bruteforce([gen_A(1, 2), gen_A(2, 2)], 1)
    assert abs(result.value - 1.0) < 1e-12  # both matrices are unipotent


def test_rho_2_of_incidence_pair():
    result = rho_k_bruteforce([gen_A(1, 2), gen_A(2, 2)], 2)
    assert abs(result.value - SILVER) < 1e-10
    assert result.achieving == (1, 2)


def test_rho_2_of_generator_set():
    family = [gen_E(1, 2), gen_E_inverse(1, 2), gen_E(2, 2), gen_E_inverse(2, 2)]
    result = rho_k_bruteforce(family, 2)
    assert abs(result.value - SILVER) < 1e-10


def test_rho_k_budget():
    with pytest.raises(BudgetExceededError):
        rho_k_bruteforce([gen_A(k, 4) for k in range(1, 5)], 4, budget=100)


def test_gsr_estimate_singleton_is_flat():
    m = Hhat_matrix(2)
    rho = spectral_radius(m).radius
    estimate = gsr_estimate([m], 3)
    for result in estimate.rho_ks:
        assert abs(result.value - rho) < 1e-9
    assert estimate.monotone_ok


def test_gsr_estimate_three_obstacles():
    family = [gen_A(k, 3) for k in range(1, 4)]
    estimate = gsr_estimate(family, 3)
    target = spectral_radius(Hhat_matrix(3)).radius ** (1 / 3)
    assert abs(estimate.sup_value - target) < 1e-10
    assert estimate.sup_k == 3
    assert estimate.norm_ceiling == 3.0
    assert all(r.value <= 3.0 + 1e-12 for r in estimate.rho_ks)


def test_sort_vec():
    assert sort_vec((1, 3, 2)) == (3, 2, 1)
    assert sort_vec((1, 1, 1)) == (1, 1, 1)
    assert sort_vec((7, 3, 9)) == (9, 7, 3)
    with pytest.raises(ValueError):
        sort_vec((1, 0, 2))


def test_W_apply_first_step():
    assert W_apply(1, (1, 1, 1)) == (3, 3, 1)


def test_W_apply_second_step():
    assert W_apply(2, (3, 3, 1)) == (9, 7, 3)


def test_W_apply_tie_rule():
    a = (5, 5, 2)
    assert W_apply(1, a) == W_apply(2, a)


def test_W_apply_requires_sorted_input():
    with pytest.raises(ValueError):
        W_apply(1, (1, 2, 3))


def test_standardize_prefers_least_index():
    assert standardize((2,), (1, 1, 1)) == (1,)


def test_standardize_fixed_point():
    assert standardize((1, 1), (4, 3, 1)) == (1, 1)


def test_standardize_preserves_dynamics():
    rng = random.Random(6)
    for _ in range(50):
        n = rng.randint(2, 6)
        a = tuple(sorted((rng.randint(1, 20) for _ in range(n)), reverse=True))
        s = tuple(rng.randint(1, n) for _ in range(rng.randint(1, 5)))
        assert W_strategy(standardize(s, a), a) == W_strategy(s, a)


def test_reconstruct_strategy_matches_direct_product():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 6)
        a = tuple(sorted((rng.randint(1, 20) for _ in range(n)), reverse=True))
        ell = tuple(rng.randint(1, n) for _ in range(rng.randint(1, 5)))
        strategy, final = reconstruct_strategy(ell, a)
        assert W_strategy(strategy, a) == final


@pytest.mark.parametrize("n", [2, 3])
def test_verify_gsr_realized_small(n):
    report = verify_gsr_realized(n)
    assert report.ok, report.as_dict()
    assert report.max_abs_diff <= 1e-8
    assert report.cyclic_shifts_achieve
    if n == 2:
        assert abs(report.max_value - SILVER) < 1e-10


def test_verify_gsr_budget():
    with pytest.raises(BudgetExceededError):
        verify_gsr_realized(5, budget=10)


def test_two_obstacle_answer():
    result = gsr_two_obstacles()
    assert abs(result.value - SILVER) < 1e-10
    assert result.transpose_closed
    assert result.norms_equal
    # the named realizing pair really attains value^2 as a spectral radius
    realized = psi(parse_protocol(" ".join(result.realizing), 2))
    assert abs(spectral_radius(realized).radius - result.value**2) < 1e-9


def test_lemma_trials_clean():
    rng = random.Random(11)
    assert not any(relation_lemma_failures(200, rng).values())
    assert not any(order_lemma_failures(200, rng).values())


def test_greedy_matches_initial_segment_on_ones():
    # sorted((1..1) A(1)...A(k)) equals k greedy steps, for every k <= N <= 8
    for n in range(2, 9):
        ones = (1,) * n
        for k in range(1, n + 1):
            _, direct = reconstruct_strategy(tuple(range(1, k + 1)), ones)
            assert direct == W_strategy((1,) * k, ones)
