"""Exact characteristic polynomials, certified spectral radii, and
Pisot/Salem pattern classification.

Everything exact runs over Python ints: characteristic polynomials via the
recursive-trace (Faddeev-LeVerrier) method, determinants via fraction-free
Bareiss elimination.  Roots come from mpmath at generous working precision
and are then Newton-polished against the exact polynomial; each root gets
an error bound from the residual/derivative ratio.  The degrees here stay
at or below a few dozen and the polynomials are well separated except for
deliberate multiplicities, so this is comfortably within budget.

Classification works on the characteristic polynomial's root *pattern*, not
the minimal polynomial: a dominant simple root of modulus lambda, everything
else on or inside the unit circle.  Cyclotomic-type factors (roots exactly
on the circle) are folded into the Salem test, and the dominant root is
matched to lambda by modulus because the extremal eigenvalue of the cycle
products alternates in sign with N.  Roots that sit suspiciously close to
the unit circle without being resolved by eps_unit are reported as marginal
rather than silently decided.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from collections.abc import Sequence

import mpmath as mp
import numpy as np

from .exactmat import ExactMatrix

DEFAULT_TOLERANCE = 1e-10
DEFAULT_EPS_UNIT = 1e-6
_BRACKET_POWER = 16  # exponent for the Gelfand norm bracket ||M^m||^(1/m)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients ascending (coeffs[i] multiplies x^i)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) > 1 and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        if self.degree == 0:
            return IntPolynomial((0,))
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def descending(self) -> list[int]:
        return list(reversed(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = "" if abs(c) == 1 and i > 0 else str(abs(c))
            var = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(("- " if c < 0 else "+ ") + (mag + var if mag or var else "0"))
        if not terms:
            return "0"
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def char_poly(m: ExactMatrix) -> IntPolynomial:
    """Exact monic characteristic polynomial det(xI - M).

    Recursive-trace method: every division is by construction exact over Z.
    """
    n = m.dim
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [list(row) for row in m.rows]
    c = -sum(mk[i][i] for i in range(n))
    coeffs[n - 1] = c
    rows = m.rows
    for k in range(2, n + 1):
        for i in range(n):
            mk[i][i] += c
        mk = [
            [sum(rows[i][t] * mk[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        tr = sum(mk[i][i] for i in range(n))
        assert tr % k == 0
        c = -(tr // k)
        coeffs[n - k] = c
    return IntPolynomial(tuple(coeffs))


def det(m: ExactMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = m.dim
    a = [list(row) for row in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _working_dps(p: IntPolynomial) -> int:
    # enough digits to absorb cancellation against the largest coefficient
    size = max(abs(c) for c in p.coeffs)
    return 40 + len(str(size))


def _trim(coeffs: list) -> list:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _to_primitive_int(coeffs: Sequence[Fraction]) -> tuple[int, ...]:
    denom = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    ints = [int(c * denom) for c in coeffs]
    content = math.gcd(*(abs(c) for c in ints)) or 1
    ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    rem = list(a)
    quot = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    db = len(b) - 1
    lead = b[-1]
    for shift in range(len(rem) - 1 - db, -1, -1):
        factor = rem[shift + db] / lead
        quot[shift] = factor
        if factor:
            for i, bc in enumerate(b):
                rem[shift + i] -= factor * bc
    return _trim(quot), _trim(rem)


def _fderivative(coeffs: Sequence[Fraction]) -> list[Fraction]:
    if len(coeffs) == 1:
        return [Fraction(0)]
    return [i * c for i, c in enumerate(coeffs) if i > 0]


def _fsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _is_zero(a: Sequence[Fraction]) -> bool:
    return len(a) == 1 and a[0] == 0


def _fgcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd over the rationals."""
    fa, fb = _trim(list(a)), _trim(list(b))
    while not _is_zero(fb):
        _, rem = _poly_divmod(fa, fb)
        fa, fb = fb, rem
    return [c / fa[-1] for c in fa]


def _fdiv(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    quot, rem = _poly_divmod(list(a), list(b))
    if not _is_zero(rem):
        raise ArithmeticError("division expected to be exact")
    return quot


def square_free_factors(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Square-free decomposition p = const * prod f_i^i by Yun's algorithm.

    Yun's intermediates are scale-sensitive, so everything runs over the
    rationals; only the emitted factors are normalized back to primitive
    integer polynomials.
    """
    if p.degree == 0:
        return []
    f = [Fraction(c) for c in p.coeffs]
    df = _fderivative(f)
    g = _fgcd(f, df)
    if len(g) == 1:
        return [(IntPolynomial(_to_primitive_int(f)), 1)]
    w = _fdiv(f, g)
    y = _fdiv(df, g)
    z = _fsub(y, _fderivative(w))
    factors: list[tuple[IntPolynomial, int]] = []
    i = 1
    while len(w) > 1:
        gi = _fgcd(w, z)
        if len(gi) > 1:
            factors.append((IntPolynomial(_to_primitive_int(gi)), i))
        w = _fdiv(w, gi)
        y = _fdiv(z, gi)
        z = _fsub(y, _fderivative(w))
        i += 1
    return factors


@functools.lru_cache(maxsize=512)
def poly_roots(p: IntPolynomial, dps: int | None = None) -> tuple[tuple[complex, float], ...]:
    """All roots with multiplicity, as (root, error bound) pairs.

    Multiplicities are split off exactly first (square-free decomposition),
    so the numerical solver only ever sees simple roots; mpmath supplies
    them at high working precision and a Newton polish against the exact
    factor tightens each one, with the residual/derivative ratio as the
    error bound.
    """
    if p.degree == 0:
        return ()
    dps = dps or _working_dps(p)
    out = []
    for factor, multiplicity in square_free_factors(p):
        dp = factor.derivative()
        with mp.workdps(dps):
            raw = mp.polyroots(
                [mp.mpf(c) for c in factor.descending()], maxsteps=400, extraprec=160
            )
            for r in raw:
                root = mp.mpc(r)
                bound = 10.0 ** (5 - dps)
                for _ in range(4):
                    d = dp(root)
                    if abs(d) == 0:
                        break
                    step = factor(root) / d
                    root = root - step
                    bound = float(abs(step)) + float(abs(factor(root) / d))
                out.extend([(complex(root), max(bound, 10.0 ** (5 - dps)))] * multiplicity)
    return tuple(out)


@dataclass(frozen=True)
class SpectralReport:
    """Spectral radius with its certification data.

    ``radius`` agrees with max |root| to within ``tolerance``; for exact
    matrices the Gelfand bracket |trace(M^m)/dim|^(1/m) <= rho <= ||M^m||_1^(1/m)
    is computed from exact integer powers as an independent check.
    """

    radius: float
    tolerance: float
    roots: tuple[complex, ...]
    root_errors: tuple[float, ...]
    classification: str | None = None
    upper_bracket: float | None = None
    lower_bracket: float | None = None

    def as_dict(self) -> dict:
        return {
            "radius": self.radius,
            "tolerance": self.tolerance,
            "roots": [[z.real, z.imag] for z in self.roots],
            "root_errors": list(self.root_errors),
            "classification": self.classification,
            "upper_bracket": self.upper_bracket,
            "lower_bracket": self.lower_bracket,
        }


def spectral_radius(m: ExactMatrix | Sequence | np.ndarray) -> SpectralReport:
    """Spectral radius, certified.

    Exact matrices go through the characteristic polynomial and polished
    roots; the exact norm bracket is reported alongside.  Plain numeric
    matrices use the eigensolver with a power-iteration cross-check.
    """
    if isinstance(m, ExactMatrix):
        return _spectral_radius_exact(m)
    return _spectral_radius_numeric(np.asarray(m, dtype=complex))


def _spectral_radius_exact(m: ExactMatrix) -> SpectralReport:
    p = char_poly(m)
    pairs = poly_roots(p)
    roots = tuple(r for r, _ in pairs)
    errors = tuple(e for _, e in pairs)
    radius = max(abs(r) for r in roots)
    tolerance = max(max(errors), radius * 1e-15, 1e-300)

    power = m.power(_BRACKET_POWER)
    upper = float(mp.mpf(power.one_norm()) ** (mp.mpf(1) / _BRACKET_POWER))
    lower = float(
        (mp.mpf(abs(power.trace())) / m.dim) ** (mp.mpf(1) / _BRACKET_POWER)
    )
    return SpectralReport(
        radius=float(radius),
        tolerance=tolerance,
        roots=roots,
        root_errors=errors,
        upper_bracket=upper,
        lower_bracket=lower,
    )


def _spectral_radius_numeric(a: np.ndarray) -> SpectralReport:
    eigs = np.linalg.eigvals(a)
    radius = float(max(abs(eigs)))
    # power iteration on M M^H brackets the 2-norm, and rho <= ||M||_2
    gram = a @ a.conj().T
    v = np.ones(a.shape[0], dtype=complex)
    norm_sq = 0.0
    for _ in range(200):
        w = gram @ v
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            break
        v = w / nw
        if abs(nw - norm_sq) <= 1e-13 * max(nw, 1.0):
            norm_sq = nw
            break
        norm_sq = nw
    two_norm_bound = math.sqrt(norm_sq) if norm_sq else float(np.linalg.norm(a, 2))
    tolerance = max(1e-12 * max(radius, 1.0), DEFAULT_TOLERANCE)
    return SpectralReport(
        radius=radius,
        tolerance=tolerance,
        roots=tuple(complex(z) for z in eigs),
        root_errors=tuple(tolerance for _ in eigs),
        upper_bracket=two_norm_bound * (1 + 1e-10),
    )


def spectral_radius_float(m: ExactMatrix | Sequence | np.ndarray) -> float:
    """Fast double-precision spectral radius (for enumeration inner loops)."""
    if isinstance(m, ExactMatrix):
        if m.dim == 2:
            # exact trace/det: eigenvalues of a 2x2 from the quadratic formula
            (a, b), (c, d) = m.rows
            tr = a + d
            disc = tr * tr - 4 * (a * d - b * c)
            if disc >= 0:
                s = math.sqrt(disc)
                return max(abs(tr + s), abs(tr - s)) / 2.0
            return math.sqrt(a * d - b * c)
        arr = np.array(m.rows, dtype=float)
    else:
        arr = np.asarray(m, dtype=complex)
    return float(max(abs(np.linalg.eigvals(arr))))


def two_norm(m: ExactMatrix | Sequence | np.ndarray) -> float:
    """Matrix 2-norm (rho(M M^T))^(1/2); exact Gram matrix when possible."""
    if isinstance(m, ExactMatrix):
        gram = m @ m.transpose()
        return math.sqrt(_spectral_radius_exact(gram).radius)
    a = np.asarray(m, dtype=complex)
    return math.sqrt(_spectral_radius_numeric(a @ a.conj().T).radius)


class Classification(str, Enum):
    PISOT = "Pisot"
    SALEM = "Salem"
    OTHER = "Other"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class ClassificationReport:
    """Root-pattern classification of an algebraic number.

    This is a *pattern* classification of the characteristic polynomial: no
    irreducibility is established, and roots exactly on the unit circle
    (cyclotomic-type factors) count toward the Salem pattern.  Roots within
    10*eps_unit of the circle but not within eps_unit are listed as marginal
    so borderline calls are visible instead of silent.
    """

    kind: Classification
    value: float
    eps_unit: float
    dominant_root: complex
    other_moduli: tuple[float, ...]
    marginal_roots: tuple[complex, ...]
    reciprocal_partner: float | None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "value": self.value,
            "eps_unit": self.eps_unit,
            "dominant_root": [self.dominant_root.real, self.dominant_root.imag],
            "other_moduli": list(self.other_moduli),
            "marginal_roots": [[z.real, z.imag] for z in self.marginal_roots],
            "reciprocal_partner": self.reciprocal_partner,
            "note": "pattern classification of the characteristic polynomial",
        }


def classify_number(
    p: IntPolynomial, lam: float, eps_unit: float = DEFAULT_EPS_UNIT
) -> ClassificationReport:
    """Classify the root pattern of ``p`` around the value ``lam``.

    NotApplicable unless lam > 1 + eps_unit.  Otherwise lam must match the
    modulus of exactly one root (the dominant one, possibly negative or
    complex).  Pisot: every other root strictly inside the unit circle.
    Salem: every other root on or inside, at least one within eps_unit of
    the circle, and exactly one strictly inside, whose modulus pairs
    reciprocally with lam.  Anything else: Other.
    """
    pairs = poly_roots(p)
    if not pairs:
        raise ValueError("cannot classify a constant polynomial")
    roots = [r for r, _ in pairs]
    moduli = [abs(r) for r in roots]

    match_tol = max(1e-9 * max(lam, 1.0), max(e for _, e in pairs))
    dominant_candidates = [i for i, m in enumerate(moduli) if abs(m - lam) <= match_tol]
    if not dominant_candidates:
        raise ValueError(
            f"{lam!r} does not match the modulus of any root of {p}"
        )

    if lam <= 1 + eps_unit:
        return ClassificationReport(
            kind=Classification.NOT_APPLICABLE,
            value=lam,
            eps_unit=eps_unit,
            dominant_root=roots[dominant_candidates[0]],
            other_moduli=tuple(
                m for i, m in enumerate(moduli) if i != dominant_candidates[0]
            ),
            marginal_roots=(),
            reciprocal_partner=None,
        )

    dom = dominant_candidates[0]
    others = [(roots[i], moduli[i]) for i in range(len(roots)) if i != dom]
    other_moduli = tuple(m for _, m in others)
    marginal = tuple(
        r for r, m in others if eps_unit < abs(m - 1.0) <= 10 * eps_unit
    )

    if len(dominant_candidates) > 1:
        kind = Classification.OTHER
        partner = None
    elif all(m < 1 - eps_unit for _, m in others):
        kind = Classification.PISOT
        partner = None
    else:
        inside = [(r, m) for r, m in others if m < 1 - eps_unit]
        on_circle = any(abs(m - 1.0) <= eps_unit for _, m in others)
        within = all(m <= 1 + eps_unit for _, m in others)
        partner = inside[0][1] if len(inside) == 1 else None
        reciprocal_ok = partner is not None and abs(partner * lam - 1.0) <= max(
            eps_unit, match_tol * partner
        )
        if within and on_circle and len(inside) == 1 and reciprocal_ok:
            kind = Classification.SALEM
        else:
            kind = Classification.OTHER
    return ClassificationReport(
        kind=kind,
        value=lam,
        eps_unit=eps_unit,
        dominant_root=roots[dom],
        other_moduli=other_moduli,
        marginal_roots=marginal,
        reciprocal_partner=partner,
    )
