"""The four-term efficiency bound chain and its convergence to log 3.

For N >= 2 obstacles the maximal entropy per generator Eff(N) of a
point-push protocol satisfies

    (log(3^N - 3N - 1) - log N) / N
        <= log rho(H(N)) / N
        <= Eff(N)
        <= log rho(Hhat(N)) / N
        <= log(3^N - 2) / N,

so both closed forms squeeze Eff(N) to log 3 as N grows.  The left half is
the entropy of the full-cycle protocol (which costs N generators); the
right half is the generalized spectral radius of the incidence family.
Eff(N) itself is unknown for N >= 3; the full cycle is only conjectured to
be optimal, so its efficiency is reported as a clearly labelled conjectured
value, never as Eff(N).

The N = 2 case is settled exactly: Eff(2) = log(1 + sqrt(2)), realized by
the figure-eight protocol a1 a2^-1, while the full cycle a1 a2 has zero
entropy (the lower bound is vacuous there and is clamped to 0).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .errors import BoundOrderingError
from .intrep import H_matrix, Hhat_matrix
from .spectral import (
    DEFAULT_EPS_UNIT,
    ClassificationReport,
    char_poly,
    classify_number,
    spectral_radius,
)

LOG3 = math.log(3.0)
CHAIN_SLACK = 1e-9

TABLE_COLUMNS = (
    "N",
    "closed_lower",
    "spectral_lower",
    "spectral_upper",
    "closed_upper",
    "gap_to_log3_lower",
    "gap_to_log3_upper",
    "classification_H",
    "classification_Hhat",
)


def closed_lower(n: int) -> float:
    """(log(3^N - 3N - 1) - log N) / N, clamped to 0 while vacuous."""
    if n < 2:
        raise ValueError("need at least 2 obstacles")
    arg = 3**n - 3 * n - 1
    if arg <= n:
        return 0.0
    return (math.log(arg) - math.log(n)) / n


def closed_upper(n: int) -> float:
    """log(3^N - 2) / N."""
    if n < 2:
        raise ValueError("need at least 2 obstacles")
    return math.log(3**n - 2) / n


@dataclass(frozen=True)
class EfficiencyBounds:
    """One row of the bound chain, with the spectral data that produced it."""

    n_obstacles: int
    closed_lower: float
    spectral_lower: float
    spectral_upper: float
    closed_upper: float
    rho_H: float
    rho_Hhat: float
    spectral_tolerance: float
    lower_clamped: bool

    @property
    def conjectured_efficiency(self) -> float:
        """Efficiency of the full-cycle protocol; conjectured (not proven,
        except at N=2 where it is *not* the maximum) to realize Eff(N) for
        N >= 3."""
        return self.spectral_lower

    def as_dict(self) -> dict:
        return {
            "n_obstacles": self.n_obstacles,
            "closed_lower": self.closed_lower,
            "spectral_lower": self.spectral_lower,
            "spectral_upper": self.spectral_upper,
            "closed_upper": self.closed_upper,
            "rho_H": self.rho_H,
            "rho_Hhat": self.rho_Hhat,
            "spectral_tolerance": self.spectral_tolerance,
            "lower_clamped": self.lower_clamped,
            "conjectured_efficiency": self.conjectured_efficiency,
        }


def eff_bounds(n: int) -> EfficiencyBounds:
    """Assemble the bound chain for one N, aborting loudly if unordered."""
    if n < 2:
        raise ValueError("need at least 2 obstacles")
    rho_h = spectral_radius(H_matrix(n))
    rho_hh = spectral_radius(Hhat_matrix(n))
    lo_closed = closed_lower(n)
    hi_closed = closed_upper(n)
    lo_spec = math.log(rho_h.radius) / n
    hi_spec = math.log(rho_hh.radius) / n

    chain = (lo_closed, lo_spec, hi_spec, hi_closed)
    for left, right in zip(chain, chain[1:]):
        if left > right + CHAIN_SLACK:
            raise BoundOrderingError(
                f"bound chain unordered at N={n}: {chain}"
            )
    if hi_closed > LOG3 + CHAIN_SLACK:
        raise BoundOrderingError(f"closed upper bound exceeds log 3 at N={n}")
    return EfficiencyBounds(
        n_obstacles=n,
        closed_lower=lo_closed,
        spectral_lower=lo_spec,
        spectral_upper=hi_spec,
        closed_upper=hi_closed,
        rho_H=rho_h.radius,
        rho_Hhat=rho_hh.radius,
        spectral_tolerance=max(rho_h.tolerance, rho_hh.tolerance),
        lower_clamped=3**n - 3 * n - 1 <= n,
    )


def eff_exact_two() -> float:
    """The proven exact maximum at N=2: log(1 + sqrt(2)), realized by the
    figure-eight protocol a1 a2^-1."""
    return math.log(1.0 + math.sqrt(2.0))


@dataclass(frozen=True)
class TableRow:
    bounds: EfficiencyBounds
    classification_H: ClassificationReport
    classification_Hhat: ClassificationReport

    def values(self) -> tuple:
        b = self.bounds
        return (
            b.n_obstacles,
            b.closed_lower,
            b.spectral_lower,
            b.spectral_upper,
            b.closed_upper,
            abs(b.closed_lower - LOG3),
            abs(b.closed_upper - LOG3),
            self.classification_H.kind.value,
            self.classification_Hhat.kind.value,
        )

    def as_dict(self) -> dict:
        return dict(zip(TABLE_COLUMNS, self.values()))


def _classify_matrix(m, eps_unit: float) -> ClassificationReport:
    report = spectral_radius(m)
    return classify_number(char_poly(m), report.radius, eps_unit)


def eff_table(
    n_from: int,
    n_to: int,
    eps_unit: float = DEFAULT_EPS_UNIT,
    threads: int = 1,
) -> list[TableRow]:
    """Bound-chain rows for N = n_from..n_to with gap-to-log3 columns and
    the Pisot/Salem pattern classifications of both spectral radii."""
    if not 2 <= n_from <= n_to:
        raise ValueError("need 2 <= n_from <= n_to")

    def row(n: int) -> TableRow:
        return TableRow(
            bounds=eff_bounds(n),
            classification_H=_classify_matrix(H_matrix(n), eps_unit),
            classification_Hhat=_classify_matrix(Hhat_matrix(n), eps_unit),
        )

    ns = range(n_from, n_to + 1)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(row, ns))
    return [row(n) for n in ns]


def table_to_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for r in rows:
        writer.writerow(
            [v if isinstance(v, (int, str)) else f"{v:.10g}" for v in r.values()]
        )
    return buf.getvalue()


def table_to_json_obj(rows: list[TableRow]) -> list[dict]:
    return [r.as_dict() for r in rows]
