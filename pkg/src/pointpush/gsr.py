"""Generalized spectral radius of the incidence family, by brute force and
by the sorted column-sum dynamics that identify the maximizing product.

For a finite matrix family, rho_k is the largest k-th root of a spectral
radius over all ordered k-fold products, and the generalized spectral
radius is sup_k rho_k.  Enumeration is exact and exhaustive up to a
configurable product budget (env var POINTPUSH_BUDGET overrides the
default), with deterministic lexicographic tie-breaking.

The incidence matrices act on column sums by c_j -> c_j + 2 c_k (j != k),
so right multiplication followed by sorting defines dynamics W_j on
nonincreasing positive integer vectors.  Greedily hitting the largest entry
(the all-ones strategy, after standardization) dominates every other
strategy, which is why the full cycle A(1)...A(N) attains the supremum;
``verify_gsr_realized`` confirms this exhaustively for small N.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass
from collections.abc import Sequence

from .errors import BudgetExceededError
from .exactmat import ExactMatrix, row_times_matrix
from .intrep import Hhat_matrix, gen_A, gen_E, gen_E_inverse
from .spectral import spectral_radius, spectral_radius_float, two_norm

DEFAULT_BUDGET = 10**6
_BUDGET_ENV = "POINTPUSH_BUDGET"


def product_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    return int(os.environ.get(_BUDGET_ENV, DEFAULT_BUDGET))


@dataclass(frozen=True)
class RhoKResult:
    value: float
    achieving: tuple[int, ...]  # 1-based indices into the matrix family
    k: int
    products: int
    elapsed: float

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "achieving": list(self.achieving),
            "k": self.k,
            "products": self.products,
            "elapsed": self.elapsed,
        }


def rho_k_bruteforce(
    matrices: Sequence[ExactMatrix], k: int, budget: int | None = None
) -> RhoKResult:
    """Exact enumeration of rho_k: max over all ordered k-products of
    rho(product)^(1/k), with the lexicographically least achieving tuple.

    Prefix products are shared down the enumeration tree, and a prefix is
    abandoned when the submultiplicative one-norm bound already caps every
    completion below the current best.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not matrices:
        raise ValueError("need at least one matrix")
    dims = {m.dim for m in matrices}
    if len(dims) != 1:
        raise ValueError("matrices must share a dimension")
    total = len(matrices) ** k
    cap = product_budget(budget)
    if total > cap:
        raise BudgetExceededError(
            f"{len(matrices)}^{k} = {total} products exceed budget {cap}"
        )

    start = time.perf_counter()
    norms = [float(m.one_norm()) for m in matrices]
    max_norm = max(norms)
    best = -1.0
    best_tuple: tuple[int, ...] = ()
    count = 0

    def recurse(prefix: ExactMatrix | None, norm_bound: float, chosen: list[int]):
        nonlocal best, best_tuple, count
        depth = len(chosen)
        if depth == k:
            count += 1
            value = spectral_radius_float(prefix) ** (1.0 / k)
            if value > best + 1e-13:
                best = value
                best_tuple = tuple(chosen)
            return
        # cheap cap: rho(P Q) <= ||P||_1 ||Q||_1 <= norm_bound * max_norm^(k - depth)
        if best > 0 and norm_bound * max_norm ** (k - depth) < (best - 1e-13) ** k:
            count += len(matrices) ** (k - depth)
            return
        for i, m in enumerate(matrices):
            nxt = m if prefix is None else prefix @ m
            recurse(nxt, norm_bound * norms[i] if prefix is not None else norms[i], chosen + [i + 1])

    recurse(None, 1.0, [])
    return RhoKResult(best, best_tuple, k, count, time.perf_counter() - start)


@dataclass(frozen=True)
class GsrEstimate:
    rho_ks: tuple[RhoKResult, ...]
    sup_value: float
    sup_k: int
    norm_ceiling: float
    monotone_ok: bool

    def as_dict(self) -> dict:
        return {
            "rho_ks": [r.as_dict() for r in self.rho_ks],
            "sup_value": self.sup_value,
            "sup_k": self.sup_k,
            "norm_ceiling": self.norm_ceiling,
            "monotone_ok": self.monotone_ok,
        }


def gsr_estimate(
    matrices: Sequence[ExactMatrix], big_k: int, budget: int | None = None
) -> GsrEstimate:
    """rho_k for k = 1..K with the sup over computed k.

    Reports the p-norm ceiling min over p in {1, inf} of max_i ||M_i||_p,
    and checks rho_{nk} >= rho_k on the pairs available below K.
    """
    if big_k < 1:
        raise ValueError("K must be >= 1")
    results = [rho_k_bruteforce(matrices, k, budget) for k in range(1, big_k + 1)]
    sup = max(results, key=lambda r: r.value)
    ceiling = min(
        max(float(m.one_norm()) for m in matrices),
        max(float(m.inf_norm()) for m in matrices),
    )
    monotone_ok = True
    for k in range(1, big_k + 1):
        for n in range(2, big_k // k + 1):
            if results[n * k - 1].value < results[k - 1].value - 1e-9:
                monotone_ok = False
    return GsrEstimate(
        rho_ks=tuple(results),
        sup_value=sup.value,
        sup_k=sup.k,
        norm_ceiling=ceiling,
        monotone_ok=monotone_ok,
    )


def sort_vec(v: Sequence[int]) -> tuple[int, ...]:
    """Sort a positive integer vector into nonincreasing order."""
    if any(x <= 0 for x in v):
        raise ValueError("entries must be positive")
    return tuple(sorted(v, reverse=True))


def W_apply(j: int, a: Sequence[int]) -> tuple[int, ...]:
    """One step of the sorted column-sum dynamics: a -> sorted(a A(j)).

    For nonincreasing positive a this is (a_1 + 2a_j, ..., a_{j-1} + 2a_j,
    a_{j+1} + 2a_j, ..., a_N + 2a_j, a_j).
    """
    n = len(a)
    if not 1 <= j <= n:
        raise ValueError(f"index {j} out of range 1..{n}")
    if list(a) != sorted(a, reverse=True):
        raise ValueError("input must be nonincreasing")
    return sort_vec(row_times_matrix(a, gen_A(j, n)))


def W_strategy(s: Sequence[int], a: Sequence[int]) -> tuple[int, ...]:
    """Apply a whole strategy left to right."""
    out = tuple(a)
    for j in s:
        out = W_apply(j, out)
    return out


def standardize(s: Sequence[int], a: Sequence[int]) -> tuple[int, ...]:
    """Canonical form of a strategy: at each step, take the least index
    holding the same value as the chosen one.  Leaves W output unchanged."""
    n = len(a)
    out = []
    b = tuple(a)
    for sm in s:
        if not 1 <= sm <= n:
            raise ValueError(f"strategy index {sm} out of range 1..{n}")
        sp = min(i for i in range(1, n + 1) if b[i - 1] == b[sm - 1])
        out.append(sp)
        b = W_apply(sp, b)
    return tuple(out)


def reconstruct_strategy(
    ell: Sequence[int], a: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """For an arbitrary index tuple, build the strategy whose W dynamics
    reproduce sorted(a A(l_1) ... A(l_k)); returns (strategy, final vector).

    Step recursion: with d the running unsorted vector, the next strategy
    index is the least position of sorted(d) carrying the value d[l].
    """
    n = len(a)
    d = list(a)
    s = []
    for j in ell:
        if not 1 <= j <= n:
            raise ValueError(f"index {j} out of range 1..{n}")
        ds = sorted(d, reverse=True)
        s.append(min(i for i in range(1, n + 1) if ds[i - 1] == d[j - 1]))
        d = list(row_times_matrix(d, gen_A(j, n)))
    return tuple(s), tuple(sorted(d, reverse=True))


@dataclass(frozen=True)
class GsrRealizedReport:
    n: int
    max_value: float
    target: float
    max_abs_diff: float
    achieving: tuple[tuple[int, ...], ...]
    cyclic_shifts_achieve: bool
    norm_dominance_ok: bool
    products: int
    elapsed: float

    @property
    def ok(self) -> bool:
        return (
            self.max_abs_diff <= 1e-8
            and self.cyclic_shifts_achieve
            and self.norm_dominance_ok
        )

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "max_value": self.max_value,
            "target": self.target,
            "max_abs_diff": self.max_abs_diff,
            "achieving": [list(t) for t in self.achieving],
            "cyclic_shifts_achieve": self.cyclic_shifts_achieve,
            "norm_dominance_ok": self.norm_dominance_ok,
            "products": self.products,
            "elapsed": self.elapsed,
            "ok": self.ok,
        }


def verify_gsr_realized(n: int, budget: int | None = None, rng=None) -> GsrRealizedReport:
    """Exhaustively confirm that the full cycle realizes rho_N.

    Enumerates all N^N ordered length-N products of the incidence family,
    compares the maximum against rho(Hhat(N))^(1/N), records every
    achieving tuple, checks that (1, 2, ..., N) and all its cyclic shifts
    achieve it, and spot-checks the one-norm dominance of the greedy
    product over random products of matching length.
    """
    if n < 2:
        raise ValueError("need at least 2 obstacles")
    cap = product_budget(budget)
    total = n**n
    if total > cap:
        raise BudgetExceededError(f"{n}^{n} = {total} products exceed budget {cap}")
    rng = rng or random.Random(0)

    start = time.perf_counter()
    mats = [gen_A(k, n) for k in range(1, n + 1)]
    target = spectral_radius(Hhat_matrix(n)).radius ** (1.0 / n)

    best = -1.0
    achieving: list[tuple[int, ...]] = []
    for tup in itertools.product(range(n), repeat=n):
        m = mats[tup[0]]
        for i in tup[1:]:
            m = m @ mats[i]
        value = spectral_radius_float(m) ** (1.0 / n)
        if value > best + 1e-12:
            best = value
            achieving = [tuple(i + 1 for i in tup)]
        elif abs(value - best) <= 1e-12:
            achieving.append(tuple(i + 1 for i in tup))

    shifts = {
        tuple((i + s) % n + 1 for i in range(n)) for s in range(n)
    }
    cyclic_ok = shifts <= set(achieving)

    # one-norm dominance of the greedy product B(k) over random products
    dominance_ok = True
    for _ in range(20):
        k = rng.randint(1, 3 * n)
        m_full, j = divmod(k, n)
        greedy = Hhat_matrix(n).power(m_full) if m_full else ExactMatrix.identity(n)
        for i in range(1, j + 1):
            greedy = greedy @ gen_A(i, n)
        random_prod = ExactMatrix.identity(n)
        for _ in range(k):
            random_prod = random_prod @ mats[rng.randrange(n)]
        if greedy.one_norm() < random_prod.one_norm():
            dominance_ok = False

    return GsrRealizedReport(
        n=n,
        max_value=best,
        target=target,
        max_abs_diff=abs(best - target),
        achieving=tuple(achieving),
        cyclic_shifts_achieve=cyclic_ok,
        norm_dominance_ok=dominance_ok,
        products=total,
        elapsed=time.perf_counter() - start,
    )


def _random_ordered(n: int, rng: random.Random, hi: int = 40) -> tuple[int, ...]:
    return tuple(sorted((rng.randint(1, hi) for _ in range(n)), reverse=True))


def _ge(a, b) -> bool:
    return all(x >= y for x, y in zip(a, b))


def _gt(a, b) -> bool:
    return all(x > y for x, y in zip(a, b))


def relation_lemma_failures(trials: int, rng: random.Random) -> dict[str, int]:
    """Randomized trials of the monotonicity/tie/cross rules of W_j.

    (a) a >= b implies a W_j >= b W_j; (b) strict version; (c) a_j = a_k
    with j < k gives equal outputs; (d) a_j > a_k gives strictly larger
    output; (e) j <= k with a > b gives a W_j > b W_k.  Returns failure
    counts per rule over ``trials`` trials each.
    """
    fails = {key: 0 for key in "abcde"}
    for _ in range(trials):
        n = rng.randint(2, 8)
        a = _random_ordered(n, rng)
        j = rng.randint(1, n)
        k = rng.randint(1, n)
        b = tuple(sorted((x - rng.randint(0, x - 1) for x in a), reverse=True))
        if not _ge(W_apply(j, a), W_apply(j, b)):
            fails["a"] += 1
        b_strict = tuple(
            sorted((max(1, x - rng.randint(1, 3)) for x in a), reverse=True)
        )
        if _gt(a, b_strict):
            if not _gt(W_apply(j, a), W_apply(j, b_strict)):
                fails["b"] += 1
            lo, hi = min(j, k), max(j, k)
            if not _gt(W_apply(lo, a), W_apply(hi, b_strict)):
                fails["e"] += 1
        lo, hi = min(j, k), max(j, k)
        if lo < hi:
            if a[lo - 1] == a[hi - 1] and W_apply(lo, a) != W_apply(hi, a):
                fails["c"] += 1
            if a[lo - 1] > a[hi - 1] and not _gt(W_apply(lo, a), W_apply(hi, a)):
                fails["d"] += 1
    return fails


def order_lemma_failures(trials: int, rng: random.Random) -> dict[str, int]:
    """Randomized trials of greedy-strategy dominance.

    (a) the all-ones strategy strictly beats any other standard strategy;
    (b) it weakly beats any strategy; (c) every raw index tuple is matched
    by the reconstructed strategy; (d) on the all-ones vector the initial
    segment (1..k) reproduces the greedy dynamics.  Returns failure counts.
    """
    fails = {key: 0 for key in "abcd"}
    for _ in range(trials):
        n = rng.randint(2, 8)
        a = _random_ordered(n, rng)
        k = rng.randint(1, 6)
        s = tuple(rng.randint(1, n) for _ in range(k))
        ones = (1,) * k
        std = standardize(s, a)
        w_ones = W_strategy(ones, a)
        w_s = W_strategy(s, a)
        if W_strategy(std, a) != w_s:
            fails["a"] += 1  # standardization must not change the output
        if std != ones and not _gt(w_ones, w_s):
            fails["a"] += 1
        if not _ge(w_ones, w_s):
            fails["b"] += 1
        ell = tuple(rng.randint(1, n) for _ in range(k))
        strategy, final = reconstruct_strategy(ell, a)
        if W_strategy(strategy, a) != final:
            fails["c"] += 1
        n_d = rng.randint(2, 8)
        k_d = rng.randint(1, n_d)
        ones_vec = (1,) * n_d
        _, direct = reconstruct_strategy(tuple(range(1, k_d + 1)), ones_vec)
        if direct != W_strategy((1,) * k_d, ones_vec):
            fails["d"] += 1
    return fails


@dataclass(frozen=True)
class TwoObstacleResult:
    value: float
    realizing: tuple[str, str]
    transpose_closed: bool
    norms_equal: bool

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "realizing": list(self.realizing),
            "transpose_closed": self.transpose_closed,
            "norms_equal": self.norms_equal,
        }


def gsr_two_obstacles() -> TwoObstacleResult:
    """The exact two-obstacle answer 1 + sqrt(2).

    The generator set {E(1)^+-1, E(2)^+-1} at N=2 is closed under
    transposition and all four matrices share the two-norm (3+2*sqrt(2))^(1/2),
    so the generalized spectral radius is already attained at k=2 by a
    matrix times its transpose; the pair ("a1", "a2^-1") realizes it.
    """
    family = {
        "a1": gen_E(1, 2),
        "a1^-1": gen_E_inverse(1, 2),
        "a2": gen_E(2, 2),
        "a2^-1": gen_E_inverse(2, 2),
    }
    mats = set(family.values())
    transpose_closed = all(m.transpose() in mats for m in mats)
    if not transpose_closed:
        raise AssertionError(
            "generator set is not transpose-closed; representation is broken"
        )
    norms = [two_norm(m) for m in family.values()]
    norms_equal = max(norms) - min(norms) <= 1e-9
    value = two_norm(family["a1"])
    realizing = ("a1", "a2^-1")  # E(1) E(2)^-1 = E(1) E(1)^T
    return TwoObstacleResult(
        value=value,
        realizing=realizing,
        transpose_closed=transpose_closed,
        norms_equal=norms_equal,
    )
