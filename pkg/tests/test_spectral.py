import math
import random

import pytest

from pointpush.exactmat import ExactMatrix
from pointpush.intrep import H_matrix, Hhat_matrix, gen_A, gen_E, psi
from pointpush.protocol import hsp, parse_protocol, random_protocol
from pointpush.spectral import (
    Classification,
    IntPolynomial,
    char_poly,
    classify_number,
    det,
    poly_roots,
    spectral_radius,
    spectral_radius_float,
    two_norm,
)

SILVER = 1 + math.sqrt(2)  # two-norm of the generator matrices at N=2


def test_char_poly_identity():
    assert char_poly(ExactMatrix.identity(2)) == IntPolynomial((1, -2, 1))


def test_char_poly_full_cycle_two_obstacles():
    # (x + 1)^2: both eigenvalues are -1, so the class has zero entropy
    assert char_poly(psi(hsp(2))) == IntPolynomial((1, 2, 1))


def test_char_poly_Hhat_two_obstacles():
    assert char_poly(Hhat_matrix(2)) == IntPolynomial((1, -6, 1))


def test_char_poly_is_monic_with_det_constant():
    rng = random.Random(4)
    for _ in range(10):
        n = rng.randint(2, 5)
        m = ExactMatrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        p = char_poly(m)
        assert p.coeffs[-1] == 1
        assert p.coeffs[0] == (-1) ** n * det(m)


def test_radius_Hhat_two_obstacles():
    report = spectral_radius(Hhat_matrix(2))
    assert abs(report.radius - (3 + 2 * math.sqrt(2))) < 1e-9
    assert report.lower_bracket <= report.radius + report.tolerance
    assert report.radius <= report.upper_bracket + report.tolerance


def test_radius_identity():
    assert abs(spectral_radius(ExactMatrix.identity(4)).radius - 1.0) < 1e-12


def test_radius_H3_exact_value():
    report = spectral_radius(H_matrix(3))
    assert report.radius >= 17 / 3
    assert abs(report.radius - (9 + 4 * math.sqrt(5))) < 1e-9


def test_radius_of_full_cycle_two_obstacles_is_one():
    assert abs(spectral_radius(H_matrix(2)).radius - 1.0) < 1e-9


def test_radius_numeric_matrix():
    report = spectral_radius([[0.0, 1.0], [1.0, 0.0]])
    assert abs(report.radius - 1.0) < 1e-10


def test_two_norm_generator():
    assert abs(two_norm(gen_E(1, 2)) - SILVER) < 1e-10


def test_two_norm_identity():
    assert abs(two_norm(ExactMatrix.identity(3)) - 1.0) < 1e-12


def test_two_norm_incidence_generator():
    assert abs(two_norm(gen_A(1, 2)) - SILVER) < 1e-10


def test_classify_pisot_quadratic():
    report = classify_number(IntPolynomial((1, -6, 1)), 3 + 2 * math.sqrt(2))
    assert report.kind is Classification.PISOT
    assert report.marginal_roots == ()


def test_classify_salem_quartic():
    # smallest quartic with the Salem pattern: x^4 - x^3 - x^2 - x + 1
    poly = IntPolynomial((1, -1, -1, -1, 1))
    lam = max(abs(r) for r, _ in poly_roots(poly))
    assert abs(lam - 1.7220838) < 1e-6
    report = classify_number(poly, lam)
    assert report.kind is Classification.SALEM
    assert report.reciprocal_partner is not None


def test_classify_not_applicable_at_one():
    report = classify_number(IntPolynomial((1, -2, 1)), 1.0)
    assert report.kind is Classification.NOT_APPLICABLE


def test_classify_other_pattern():
    # x^2 - 6x + 8 = (x-2)(x-4): conjugate far outside the unit circle
    report = classify_number(IntPolynomial((8, -6, 1)), 4.0)
    assert report.kind is Classification.OTHER


def test_classify_rejects_non_root():
    with pytest.raises(ValueError):
        classify_number(IntPolynomial((1, -6, 1)), 4.0)


def test_classify_handles_negative_dominant_root():
    # roots 1, -9 +- 4*sqrt(5): the radius is carried by a negative root
    report = classify_number(char_poly(H_matrix(3)), 9 + 4 * math.sqrt(5))
    assert report.kind is Classification.SALEM
    assert report.dominant_root.real < 0


def test_classify_stable_under_tighter_epsilon():
    for n in (3, 4, 5):
        poly = char_poly(H_matrix(n))
        lam = spectral_radius(H_matrix(n)).radius
        assert classify_number(poly, lam, 1e-6).kind is Classification.SALEM
        assert classify_number(poly, lam, 1e-8).kind is Classification.SALEM


def test_det_examples():
    assert det(Hhat_matrix(2)) == 1
    for n in range(2, 9):
        for k in range(1, n + 1):
            assert det(gen_E(k, n)) == 1
    assert det(ExactMatrix([[1, 2], [2, 4]])) == 0
    assert det(ExactMatrix([[0, 1], [1, 0]])) == -1


def test_det_of_protocol_images():
    rng = random.Random(9)
    for _ in range(50):
        n = rng.randint(2, 5)
        assert det(psi(random_protocol(n, rng.randint(0, 10), rng))) == 1


def test_root_product_matches_determinant():
    for m in (Hhat_matrix(3), H_matrix(4), gen_E(2, 5)):
        report = spectral_radius(m)
        product = 1.0
        for z in report.roots:
            product *= z
        d = det(m)
        assert abs(product.real - d) <= 1e-6 * max(1.0, abs(d))
        assert abs(product.imag) <= 1e-6 * max(1.0, abs(d))


def test_radius_between_trace_and_norm_bounds():
    for m in (Hhat_matrix(4), H_matrix(5)):
        radius = spectral_radius(m).radius
        assert abs(m.trace()) / m.dim <= radius + 1e-9
        assert radius <= m.one_norm() + 1e-9


def test_radius_is_multiplicative_under_powers():
    m = Hhat_matrix(3)
    base = spectral_radius(m).radius
    for k in range(1, 5):
        powered = spectral_radius(m.power(k)).radius
        assert abs(powered - base**k) <= 1e-8 * base**k


@pytest.mark.parametrize("n", range(2, 13))
def test_Hhat_char_poly_positive_at_norm_bound(n):
    # rho(Hhat) stays strictly below the one-norm bound 3^N - 2
    p = char_poly(Hhat_matrix(n))
    assert p(3**n - 2) > 0


def test_float_radius_shortcut_agrees():
    for m in (Hhat_matrix(2), psi(parse_protocol("a1 a2^-1", 2)), gen_E(1, 2)):
        assert abs(spectral_radius_float(m) - spectral_radius(m).radius) < 1e-9
