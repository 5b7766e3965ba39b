"""Exact integer representations of point-push protocols.

Restricting the double-cover chain action to the growing directions gives a
homomorphism of the protocol group into SL(N, Z): the generator a_k maps to
E(k) = I + T(k), where T(k) is zero outside row k and

    T(k)[k][j] = 2 * (-1)^(k-j+1)   for j < k,
    T(k)[k][k] = 0,
    T(k)[k][j] = 2 * (-1)^(j-k)     for j > k.

T(k)^2 = 0, so E(k)^-1 = I - T(k) exactly.  The entrywise absolute value
A(k) = |E(k)| is the reduced incidence matrix of a_k (and of its inverse):
it counts generator occurrences with cancellation ignored.

Two products drive the efficiency bounds for the full-cycle protocol
a_1 a_2 ... a_N:

    H(N)    = E(1) E(2) ... E(N)    spectral radius = exp(entropy),
    Hhat(N) = A(1) A(2) ... A(N)    realizes the generalized spectral
                                    radius of the incidence family.

Closed forms verified here cellwise: trace(H(N)) = -3^N + 3N + 1 via the
intermediate products H(k) (trace -3^k + 2k + N + 1 and explicit tail
columns), and Hhat's column sums 3^N - 2*3^(j-1) with trace 3^N - N - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .covers import phi
from .exactmat import ExactMatrix
from .protocol import ProtocolWord, iter_letters


@lru_cache(maxsize=None)
def gen_T(k: int, n: int) -> ExactMatrix:
    """The rank-one nilpotent part of the k-th generator matrix (N x N)."""
    if not 1 <= k <= n:
        raise ValueError(f"generator index {k} out of range 1..{n}")
    rows = [[0] * n for _ in range(n)]
    for j in range(1, n + 1):
        if j < k:
            rows[k - 1][j - 1] = 2 * (-1) ** (k - j + 1)
        elif j > k:
            rows[k - 1][j - 1] = 2 * (-1) ** (j - k)
    return ExactMatrix(rows)


@lru_cache(maxsize=None)
def gen_E(k: int, n: int) -> ExactMatrix:
    """Generator matrix E(k) = I + T(k); image of a_k in SL(N, Z)."""
    return ExactMatrix.identity(n) + gen_T(k, n)


@lru_cache(maxsize=None)
def gen_E_inverse(k: int, n: int) -> ExactMatrix:
    """E(k)^-1 = I - T(k), exact thanks to T(k)^2 = 0."""
    return ExactMatrix.identity(n) + (-gen_T(k, n))


@lru_cache(maxsize=None)
def gen_A(k: int, n: int) -> ExactMatrix:
    """Reduced incidence matrix A(k) = I + S(k) = |E(k)|, N x N, nonnegative."""
    if not 1 <= k <= n:
        raise ValueError(f"generator index {k} out of range 1..{n}")
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for j in range(n):
        if j != k - 1:
            rows[k - 1][j] = 2
    return ExactMatrix(rows)


@lru_cache(maxsize=None)
def gen_A_bar(k: int, n: int) -> ExactMatrix:
    """Unreduced incidence matrix of a_k on all N+1 loops.

    Row k has 2 everywhere off the diagonal; the last row is (0,...,0,1)
    because the outer loop is fixed, which is what justifies dropping the
    last row and column.
    """
    if not 1 <= k <= n:
        raise ValueError(f"generator index {k} out of range 1..{n}")
    m = n + 1
    rows = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    for j in range(m):
        if j != k - 1:
            rows[k - 1][j] = 2
    return ExactMatrix(rows)


def psi(p: ProtocolWord) -> ExactMatrix:
    """Image of a protocol word in SL(N, Z): the word-ordered product of
    generator matrices (inverse letters use the exact inverses)."""
    n = p.n_obstacles
    result = ExactMatrix.identity(n)
    for j, sign in iter_letters(p):
        result = result @ (gen_E(j, n) if sign == 1 else gen_E_inverse(j, n))
    return result


@lru_cache(maxsize=None)
def H_partial(k: int, n: int) -> ExactMatrix:
    """Initial-segment product E(1) ... E(k)."""
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    if k == 1:
        return gen_E(1, n)
    return H_partial(k - 1, n) @ gen_E(k, n)


def H_matrix(n: int) -> ExactMatrix:
    """E(1) E(2) ... E(N): the full-cycle protocol in SL(N, Z)."""
    if n < 2:
        raise ValueError("need at least 2 obstacles")
    return H_partial(n, n)


@lru_cache(maxsize=None)
def Hhat_partial(k: int, n: int) -> ExactMatrix:
    """Initial-segment product A(1) ... A(k)."""
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    if k == 1:
        return gen_A(1, n)
    return Hhat_partial(k - 1, n) @ gen_A(k, n)


def Hhat_matrix(n: int) -> ExactMatrix:
    """A(1) A(2) ... A(N): the incidence product realizing the generalized
    spectral radius of {A(1), ..., A(N)}."""
    if n < 2:
        raise ValueError("need at least 2 obstacles")
    return Hhat_partial(n, n)


@dataclass(frozen=True)
class CellMismatch:
    row: int  # 1-based
    col: int  # 1-based
    expected: int
    actual: int


@dataclass(frozen=True)
class IntermediateReport:
    """Cellwise check of the closed forms for the partial product H(k)."""

    k: int
    n: int
    cells_checked: int
    ok: bool
    first_mismatch: CellMismatch | None
    trace_ok: bool
    trace_expected: int
    trace_actual: int
    recursion_ok: bool

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "cells_checked": self.cells_checked,
            "ok": self.ok,
            "first_mismatch": None
            if self.first_mismatch is None
            else vars(self.first_mismatch),
            "trace_ok": self.trace_ok,
            "trace_expected": self.trace_expected,
            "trace_actual": self.trace_actual,
            "recursion_ok": self.recursion_ok,
        }


def verify_intermediate(k: int, n: int) -> IntermediateReport:
    """Check the tail columns, trace, and one-step recursion of H(k).

    Expected values, for every m = 1..N-k (columns past the k-th):
      H(k)[i][k+m] = 2 * 3^(k-i) * (-1)^(i+k+m)  for i <= k,
      H(k)[i][k+m] = 0                           for k < i <= N, i != k+m,
      H(k)[k+m][k+m] = 1,
    and trace(H(k)) = -3^k + 2k + N + 1.  The recursion check confirms
    H(k+1) = H(k) + H(k) T(k+1) column-by-column via the explicit product.
    """
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    h = H_partial(k, n)
    checked = 0
    mismatch = None
    for m in range(1, n - k + 1):
        col = k + m  # 1-based
        for i in range(1, n + 1):
            if i <= k:
                expected = 2 * 3 ** (k - i) * (-1) ** (i + k + m)
            elif i == col:
                expected = 1
            else:
                expected = 0
            actual = h.rows[i - 1][col - 1]
            checked += 1
            if actual != expected and mismatch is None:
                mismatch = CellMismatch(i, col, expected, actual)
    trace_expected = -(3**k) + 2 * k + n + 1
    trace_actual = h.trace()

    h_next = H_partial(k + 1, n)
    t_next = gen_T(k + 1, n)
    recursion_ok = h_next == h + (h @ t_next)

    ok = mismatch is None and trace_actual == trace_expected and recursion_ok
    return IntermediateReport(
        k=k,
        n=n,
        cells_checked=checked,
        ok=ok,
        first_mismatch=mismatch,
        trace_ok=trace_actual == trace_expected,
        trace_expected=trace_expected,
        trace_actual=trace_actual,
        recursion_ok=recursion_ok,
    )


def column_sums(m: ExactMatrix) -> tuple[int, ...]:
    """Row vector of column sums; satisfies c(M M') = c(M) M'."""
    return m.column_sums()


def column_sum_step(m: ExactMatrix, k: int) -> bool:
    """Check the one-step column-sum rule under right multiplication by A(k):

    c_j(M A(k)) = c_j(M) + 2 c_k(M) for j != k, and c_k unchanged.
    """
    n = m.dim
    if not 1 <= k <= n:
        raise ValueError(f"generator index {k} out of range 1..{n}")
    before = column_sums(m)
    after = column_sums(m @ gen_A(k, n))
    expected = tuple(
        before[j] if j == k - 1 else before[j] + 2 * before[k - 1] for j in range(n)
    )
    return after == expected


@dataclass(frozen=True)
class ConsistencyReport:
    """Outcome of checking psi against the cover evaluation at t = -1."""

    n: int
    cover: str
    ok: bool
    truncation_ok: bool
    last_row_ok: bool
    homology_ok: bool
    first_mismatch: CellMismatch | None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "cover": self.cover,
            "ok": self.ok,
            "truncation_ok": self.truncation_ok,
            "last_row_ok": self.last_row_ok,
            "homology_ok": self.homology_ok,
            "first_mismatch": None
            if self.first_mismatch is None
            else vars(self.first_mismatch),
        }


def psi_phi_consistency(p: ProtocolWord) -> ConsistencyReport:
    """Check that psi(p) is the cover matrix at t = -1 with the last row and
    column deleted: the full cover for even N, the prime cover for odd N.

    Also confirms the untruncated matrix has last row (0,...,0,1) (the outer
    loop stays fixed) and that the full-cover matrix at t = 1 is the
    identity (protocols act trivially on homology).
    """
    n = p.n_obstacles
    cover = "full" if n % 2 == 0 else "prime"
    at_minus_one = phi(p, cover).evaluate_exact(-1)
    truncated = at_minus_one.delete_last_row_col()
    expected = psi(p)

    mismatch = None
    for i in range(n):
        for j in range(n):
            if truncated.rows[i][j] != expected.rows[i][j]:
                mismatch = CellMismatch(
                    i + 1, j + 1, expected.rows[i][j], truncated.rows[i][j]
                )
                break
        if mismatch:
            break
    truncation_ok = mismatch is None

    last_row = at_minus_one.rows[n]
    last_row_ok = all(x == 0 for x in last_row[:n]) and abs(last_row[n]) == 1

    homology_ok = phi(p, "full").evaluate_exact(1) == ExactMatrix.identity(n + 1)

    return ConsistencyReport(
        n=n,
        cover=cover,
        ok=truncation_ok and last_row_ok and homology_ok,
        truncation_ok=truncation_ok,
        last_row_ok=last_row_ok,
        homology_ok=homology_ok,
        first_mismatch=mismatch,
    )
