"""Chain-level actions on cyclic covers of the punctured disk.

Protocols fix every puncture, so they act trivially on first homology and
lift to the Z-covers cut out by integer weight functionals on the loop
basis.  Two covers matter here:

* the full cover, where every loop d_1..d_{N+1} has weight 1;
* the prime cover, identical except the outer loop d_{N+1} has weight 0.

On either cover the one-chains form a free module over the Laurent ring
Z[t, t^-1] with one basis chain per loop, and a lifted automorphism is a
square Laurent matrix acting on row vectors from the right.  The matrix row
for a generator image is produced by a running-exponent scan of the image
word: starting at exponent 0, a positively traversed letter d_i emits
+t^cur k_i and then advances cur by the weight of d_i; an inverse letter
first retreats cur and then emits -t^cur k_i.  The scan ends at the weight
of the source loop, which is asserted.

Substituting t = -1 recovers the action on the double cover; substituting
any root of unity t = exp(2*pi*i*p/q) gives a piece of the action on the
corresponding q-fold cyclic cover, realized integrally by ``expand_mod_q``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from collections.abc import Iterable, Mapping

import numpy as np

from .errors import HomologyError
from .exactmat import ExactMatrix
from .protocol import ProtocolWord, alpha_automorphism, iter_letters
from .words import Automorphism


class LaurentPoly:
    """Integer Laurent polynomial, stored sparsely as exponent -> coefficient."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {int(e): int(c) for e, c in (coeffs or {}).items() if c != 0}
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    def items(self) -> Iterable[tuple[int, int]]:
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    def evaluate(self, z: complex) -> complex:
        return sum(c * z**e for e, c in self._coeffs.items())

    def evaluate_exact(self, t: int) -> int:
        """Exact integer value at t = 1 or t = -1 (the only integer units)."""
        if t == 1:
            return sum(self._coeffs.values())
        if t == -1:
            return sum(c if e % 2 == 0 else -c for e, c in self._coeffs.items())
        raise ValueError("exact evaluation only at t = 1 or t = -1")

    def fold_mod(self, q: int) -> "LaurentPoly":
        """Reduce exponents modulo q (the quotient ring Z[t]/(t^q - 1))."""
        out: dict[int, int] = {}
        for e, c in self._coeffs.items():
            r = e % q
            out[r] = out.get(r, 0) + c
        return LaurentPoly(out)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e in sorted(self._coeffs, reverse=True):
            c = self._coeffs[e]
            term = "" if abs(c) == 1 and e != 0 else str(abs(c))
            if e == 1:
                term += "t"
            elif e != 0:
                term += f"t^{e}"
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


class LaurentMatrix:
    """Square matrix over Z[t, t^-1], acting on row vectors from the right."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Iterable[LaurentPoly]]):
        tup = tuple(tuple(row) for row in entries)
        n = len(tup)
        if any(len(row) != n for row in tup):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", tup)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentMatrix is immutable")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls(
            [[LaurentPoly.one() if i == j else LaurentPoly.zero() for j in range(n)]
             for i in range(n)]
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentMatrix) and self.entries == other.entries

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        n = self.dim
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc: dict[int, int] = {}
                for k in range(n):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    for e1, c1 in a.items():
                        for e2, c2 in b.items():
                            e = e1 + e2
                            acc[e] = acc.get(e, 0) + c1 * c2
                row.append(LaurentPoly(acc))
            rows.append(row)
        return LaurentMatrix(rows)

    def evaluate(self, z: complex) -> np.ndarray:
        return np.array(
            [[p.evaluate(z) for p in row] for row in self.entries], dtype=complex
        )

    def evaluate_exact(self, t: int) -> ExactMatrix:
        return ExactMatrix([[p.evaluate_exact(t) for p in row] for row in self.entries])

    def to_json(self) -> str:
        return json.dumps(
            {
                "dim": self.dim,
                "entries": [
                    [sorted([e, c] for e, c in p.items()) for p in row]
                    for row in self.entries
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "LaurentMatrix":
        data = json.loads(text)
        return cls(
            [[LaurentPoly({e: c for e, c in entry}) for entry in row]
             for row in data["entries"]]
        )

    def __repr__(self) -> str:
        body = "; ".join(
            "[" + ", ".join(repr(p) for p in row) + "]" for row in self.entries
        )
        return f"LaurentMatrix({body})"


@dataclass(frozen=True)
class WeightFunctional:
    """Integer weights of the loop basis, defining a Z-cover of the disk."""

    weights: tuple[int, ...]

    @classmethod
    def full(cls, n_obstacles: int) -> "WeightFunctional":
        """Every loop d_1..d_{N+1} has weight 1."""
        return cls((1,) * (n_obstacles + 1))

    @classmethod
    def prime(cls, n_obstacles: int) -> "WeightFunctional":
        """Outer loop d_{N+1} has weight 0, the rest weight 1."""
        return cls((1,) * n_obstacles + (0,))


COVERS = ("full", "prime")


def _weights_for(cover: str, n_obstacles: int) -> WeightFunctional:
    if cover == "full":
        return WeightFunctional.full(n_obstacles)
    if cover == "prime":
        return WeightFunctional.prime(n_obstacles)
    raise ValueError(f"unknown cover {cover!r}; expected 'full' or 'prime'")


def lift_automorphism(a: Automorphism, iota: WeightFunctional) -> LaurentMatrix:
    """Lift a puncture-fixing automorphism to the cover defined by ``iota``.

    Requires the automorphism to act trivially on homology: each image word
    must have the same total signed count per generator as its source.  Row
    j of the result is the running-exponent scan of the image of d_j; the
    terminal exponent always lands on iota(d_j).
    """
    rank = a.rank
    if len(iota.weights) != rank:
        raise ValueError("weight functional rank disagrees with automorphism")
    for i, w in enumerate(a.images, start=1):
        signed = [0] * rank
        for x in w.letters:
            signed[abs(x) - 1] += 1 if x > 0 else -1
        expected = [1 if g == i else 0 for g in range(1, rank + 1)]
        if signed != expected:
            raise HomologyError(
                f"image of generator {i} abelianizes to {signed}, not trivial"
            )

    weights = iota.weights
    rows = []
    for i, w in enumerate(a.images, start=1):
        acc: list[dict[int, int]] = [{} for _ in range(rank)]
        cur = 0
        for x in w.letters:
            g = abs(x)
            if x > 0:
                d = acc[g - 1]
                d[cur] = d.get(cur, 0) + 1
                cur += weights[g - 1]
            else:
                cur -= weights[g - 1]
                d = acc[g - 1]
                d[cur] = d.get(cur, 0) - 1
        assert cur == weights[i - 1], "terminal exponent must equal the source weight"
        rows.append([LaurentPoly(d) for d in acc])
    return LaurentMatrix(rows)


@lru_cache(maxsize=None)
def _generator_lift(j: int, sign: int, n_obstacles: int, cover: str) -> LaurentMatrix:
    return lift_automorphism(
        alpha_automorphism(j, sign, n_obstacles), _weights_for(cover, n_obstacles)
    )


def phi(p: ProtocolWord, cover: str = "full") -> LaurentMatrix:
    """The Laurent-matrix representation of a protocol on the chosen cover.

    Left-to-right product of the generator lifts; the empty protocol maps
    to the identity.
    """
    n = p.n_obstacles
    _weights_for(cover, n)
    result = LaurentMatrix.identity(n + 1)
    for j, sign in iter_letters(p):
        result = result @ _generator_lift(j, sign, n, cover)
    return result


def mod_reduce(m: LaurentMatrix, q: int) -> LaurentMatrix:
    """Fold all exponents modulo q, landing in Z[t]/(t^q - 1).

    For q = 2 this is the double-cover action, with t acting as the deck
    involution; for q = 1 it collapses to the plain homology action.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    return LaurentMatrix([[p.fold_mod(q) for p in row] for row in m.entries])


def expand_mod_q(m: LaurentMatrix, q: int) -> ExactMatrix:
    """Integer matrix of the mod-q action on the q*(dim) chain basis.

    Basis order is t^0 k_1..t^0 k_n, t^1 k_1.., so the result is the block
    circulant whose (r, (r+e) mod q) block collects the t^e coefficients.
    The q-th roots of unity split it: its eigenvalue multiset is the union
    over all such roots w of the eigenvalues of m evaluated at w.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    folded = mod_reduce(m, q)
    n = m.dim
    blocks = [[[0] * n for _ in range(n)] for _ in range(q)]
    for i in range(n):
        for j in range(n):
            for e, c in folded.entries[i][j].items():
                blocks[e][i][j] = c
    big = [[0] * (q * n) for _ in range(q * n)]
    for r in range(q):
        for e in range(q):
            block = blocks[e]
            col = (r + e) % q
            for i in range(n):
                for j in range(n):
                    big[r * n + i][col * n + j] = block[i][j]
    return ExactMatrix(big)


@dataclass(frozen=True)
class UnityScanSample:
    numerator: int
    denominator: int
    radius: float


@dataclass(frozen=True)
class UnityScanReport:
    """Best spectral radius over root-of-unity substitutions t = e^(2*pi*i*p/q)."""

    value: float
    numerator: int
    denominator: int
    samples: tuple[UnityScanSample, ...]

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "at": {"numerator": self.numerator, "denominator": self.denominator},
            "samples": [
                {"numerator": s.numerator, "denominator": s.denominator, "radius": s.radius}
                for s in self.samples
            ],
        }


def unity_scan(p: ProtocolWord, cover: str = "full", q_max: int = 2) -> UnityScanReport:
    """Scan all primitive fractions p'/q with q <= q_max for the largest
    spectral radius of the evaluated representation.

    Each substitution bounds the growth on the corresponding cyclic cover
    from below, so the maximum is the best homological lower bound the scan
    can certify.
    """
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    matrix = phi(p, cover)
    samples = []
    best = None
    for q in range(1, q_max + 1):
        for num in range(q):
            if math.gcd(num, q) != 1:
                continue
            z = cmath.exp(2j * cmath.pi * num / q)
            vals = np.linalg.eigvals(matrix.evaluate(z))
            radius = float(max(abs(vals)))
            sample = UnityScanSample(num, q, radius)
            samples.append(sample)
            if best is None or radius > best.radius + 1e-15:
                best = sample
    assert best is not None
    return UnityScanReport(best.radius, best.numerator, best.denominator, tuple(samples))
