"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines alongside the pytest verdicts.  Tolerances are pinned here and never
loosened at runtime.
"""

import functools
import math
import random
import time

from pointpush import bounds
from pointpush.covers import expand_mod_q, phi
from pointpush.gsr import (
    gsr_estimate,
    order_lemma_failures,
    relation_lemma_failures,
    verify_gsr_realized,
)
from pointpush.intrep import (
    H_matrix,
    Hhat_matrix,
    column_sums,
    gen_A,
    gen_A_bar,
    psi_phi_consistency,
    verify_intermediate,
)
from pointpush.protocol import alpha_automorphism, hsp, parse_protocol, random_protocol
from pointpush.spectral import (
    Classification,
    IntPolynomial,
    char_poly,
    classify_number,
    poly_roots,
    spectral_radius,
)
from pointpush.words import growth_estimate, incidence_matrix
from pointpush.protocol import protocol_automorphism

LOG3 = math.log(3.0)


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                detail = fn() or ""
            except BaseException as exc:
                print(f"criterion {number:2d} FAIL  {title}: {exc}")
                raise
            print(f"criterion {number:2d} PASS  {title}{': ' + detail if detail else ''}")

        return run

    return wrap


@criterion(1, "trace identity for the full cycle, N=2..20, exact, <1s")
def test_criterion_1():
    start = time.perf_counter()
    for n in range(2, 21):
        assert H_matrix(n).trace() == -(3**n) + 3 * n + 1, n
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    return f"{elapsed:.3f}s"


@criterion(2, "Hhat column sums and trace, N=2..20, exact, <1s")
def test_criterion_2():
    start = time.perf_counter()
    for n in range(2, 21):
        hh = Hhat_matrix(n)
        assert hh.trace() == 3**n - n - 1, n
        expected = tuple(3**n - 2 * 3 ** (j - 1) for j in range(1, n + 1))
        assert column_sums(hh) == expected, n
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    return f"{elapsed:.3f}s"


@criterion(3, "intermediate-product closed forms, all k < N <= 12, exact")
def test_criterion_3():
    checked = 0
    for n in range(2, 13):
        for k in range(1, n):
            report = verify_intermediate(k, n)
            assert report.ok, report.as_dict()
            checked += report.cells_checked
    return f"{checked} cells"


@criterion(4, "exact N=2 answers: (x+1)^2, rho(Hhat)=3+2sqrt2, Eff(2)=log(1+sqrt2)")
def test_criterion_4():
    assert char_poly(H_matrix(2)) == IntPolynomial((1, 2, 1))
    assert abs(spectral_radius(H_matrix(2)).radius - 1.0) < 1e-9
    rho = spectral_radius(Hhat_matrix(2)).radius
    assert abs(rho - (3 + 2 * math.sqrt(2))) < 1e-9
    eff2 = bounds.eff_exact_two()
    assert abs(eff2 - 0.8813735870) < 1e-9
    assert abs(eff2 - bounds.eff_bounds(2).spectral_upper) < 1e-9


@criterion(5, "exhaustive GSR realization at N=3,4,5 within 1e-8, N=5 under 10s")
def test_criterion_5():
    details = []
    for n in (3, 4, 5):
        report = verify_gsr_realized(n)
        assert report.max_abs_diff <= 1e-8, report.as_dict()
        assert report.cyclic_shifts_achieve, report.as_dict()
        assert tuple(range(1, n + 1)) in report.achieving
        details.append(f"N={n}: {report.products} products in {report.elapsed:.2f}s")
        if n == 5:
            assert report.elapsed < 10.0, report.elapsed
    return "; ".join(details)


@criterion(6, "bound chain ordered N=2..20; N=20 gaps; monotone from N=3")
def test_criterion_6():
    slack = 1e-9
    rows = [bounds.eff_bounds(n) for n in range(2, 21)]
    for b in rows:
        chain = (b.closed_lower, b.spectral_lower, b.spectral_upper, b.closed_upper)
        for left, right in zip(chain, chain[1:]):
            assert left <= right + slack, (b.n_obstacles, chain)
        assert b.closed_upper <= LOG3 + slack
    last = rows[-1]
    assert abs(last.closed_upper - LOG3) < 1e-8
    assert abs(last.closed_lower - LOG3) < 0.15
    from_three = rows[1:]
    for a, b in zip(from_three, from_three[1:]):
        assert a.closed_lower < b.closed_lower
        assert a.closed_upper < b.closed_upper
    return f"N=20 upper gap {abs(last.closed_upper - LOG3):.2e}, lower gap {abs(last.closed_lower - LOG3):.4f}"


@criterion(7, "psi equals truncated cover matrix at t=-1; trivial at t=1 (100 words per N=2..6)")
def test_criterion_7():
    rng = random.Random(7777)
    words = 0
    for n in range(2, 7):
        for _ in range(100):
            p = random_protocol(n, rng.randint(0, 12), rng)
            report = psi_phi_consistency(p)
            assert report.ok, (n, str(p), report.as_dict())
            words += 1
    return f"{words} words"


def _multiset_match(a, b, tol):
    remaining = list(b)
    for z in a:
        idx = min(range(len(remaining)), key=lambda i: abs(remaining[i] - z))
        if abs(remaining[idx] - z) > tol:
            return False
        remaining.pop(idx)
    return not remaining


@criterion(8, "double-cover spectrum splits as C(1) and C(-1) eigenvalues (1e-6)")
def test_criterion_8():
    rng = random.Random(888)
    for n in (3, 4):
        for _ in range(20):
            p = random_protocol(n, rng.randint(1, 10), rng)
            m = phi(p, "full")
            big_roots = [r for r, _ in poly_roots(char_poly(expand_mod_q(m, 2)))]
            union = [
                r for r, _ in poly_roots(char_poly(m.evaluate_exact(1)))
            ] + [r for r, _ in poly_roots(char_poly(m.evaluate_exact(-1)))]
            assert _multiset_match(big_roots, union, 1e-6), (n, str(p))
    return "40 words"


@criterion(9, "word growth matches spectral entropy within 2% (<30s)")
def test_criterion_9():
    start = time.perf_counter()
    details = []

    taffy = protocol_automorphism(parse_protocol("a1 a2^-1", 2))
    report = growth_estimate(taffy, 1, 8)
    target = 3 + 2 * math.sqrt(2)
    rel = abs(report.ratios[7] - target) / target
    assert rel < 0.02, rel
    details.append(f"taffy: {rel:.1e} by iter 8")

    for n, cap in ((3, 10**6), (4, 10**6)):
        rho = spectral_radius(H_matrix(n)).radius
        auto = protocol_automorphism(hsp(n))
        report = growth_estimate(auto, 1, 12, length_cap=cap)
        rel = abs(report.growth_rate - rho) / rho
        assert rel < 0.02, (n, rel, report.lengths)
        details.append(f"HSP_{n}: {rel:.1e} at length {report.lengths[-1]}")

    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, elapsed
    return "; ".join(details) + f"; {elapsed:.2f}s"


@criterion(10, "incidence facts (j <= N <= 12) and the log-3 ceiling on every rho_k")
def test_criterion_10():
    for n in range(2, 13):
        for j in range(1, n + 1):
            for sign in (1, -1):
                inc = incidence_matrix(alpha_automorphism(j, sign, n))
                assert inc == gen_A_bar(j, n)
                assert inc.rows[n] == tuple(0 if c != n else 1 for c in range(n + 1))
            assert gen_A(j, n).one_norm() == 3
    ceilings = []
    for n in (2, 3, 4):
        estimate = gsr_estimate([gen_A(k, n) for k in range(1, n + 1)], n)
        for result in estimate.rho_ks:
            assert result.value <= 3.0 + 1e-12
            assert math.log(result.value) <= LOG3 + 1e-12
        ceilings.append(estimate.sup_value)
    return f"sup values {['%.6f' % c for c in ceilings]} all under 3"


@criterion(11, "strategy lemmas: 500 randomized trials each, zero failures")
def test_criterion_11():
    rng = random.Random(1111)
    rel = relation_lemma_failures(500, rng)
    assert not any(rel.values()), rel
    order = order_lemma_failures(500, rng)
    assert not any(order.values()), order
    return f"relation {rel}, dominance {order}"


@criterion(12, "Salem pattern for rho(H), Pisot for rho(Hhat), stable at eps 1e-8")
def test_criterion_12():
    marginal = 0
    for n in range(2, 21):
        for name, matrix in (("H", H_matrix(n)), ("Hhat", Hhat_matrix(n))):
            poly = char_poly(matrix)
            lam = spectral_radius(matrix).radius
            loose = classify_number(poly, lam, 1e-6)
            tight = classify_number(poly, lam, 1e-8)
            assert loose.kind == tight.kind, (n, name, loose.kind, tight.kind)
            marginal += len(loose.marginal_roots)
            if name == "H":
                expected = (
                    Classification.NOT_APPLICABLE if n == 2 else Classification.SALEM
                )
            else:
                expected = Classification.PISOT
            assert loose.kind is expected, (n, name, loose.kind)
    assert marginal == 0
    return "evidence only (numerical pattern, not proof); no marginal roots"
