"""Square matrices over arbitrary-precision integers.

Entries are plain Python ints, so nothing here can overflow: products of
dozens of generator matrices reach magnitudes around 3^N and beyond, well
past any fixed-width type.  All the representation matrices of the package
(generator matrices, their products, incidence matrices, expanded cover
actions) live in this type.

Convention: matrices act on *row* vectors from the right, so the image of
the i-th basis vector is the i-th row, and a product ``A @ B`` means "apply
A, then B".
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence


class ExactMatrix:
    """Immutable square integer matrix."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Sequence[int]]):
        tup = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(tup)
        if n == 0:
            raise ValueError("matrix must be nonempty")
        if any(len(row) != n for row in tup):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", tup)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        n = self.dim
        bt = other.transpose().rows
        return ExactMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.rows]
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return ExactMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in row] for row in self.rows])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.rows)))

    def entrywise_abs(self) -> "ExactMatrix":
        return ExactMatrix([[abs(a) for a in row] for row in self.rows])

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim))

    def power(self, k: int) -> "ExactMatrix":
        if k < 0:
            raise ValueError("negative powers are not defined here")
        result = ExactMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    def one_norm(self) -> int:
        """Maximum absolute column sum (the norm induced by the vector 1-norm)."""
        n = self.dim
        return max(sum(abs(self.rows[i][j]) for i in range(n)) for j in range(n))

    def inf_norm(self) -> int:
        """Maximum absolute row sum."""
        return max(sum(abs(a) for a in row) for row in self.rows)

    def column_sums(self) -> tuple[int, ...]:
        n = self.dim
        return tuple(sum(self.rows[i][j] for i in range(n)) for j in range(n))

    def delete_last_row_col(self) -> "ExactMatrix":
        return ExactMatrix([row[:-1] for row in self.rows[:-1]])

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def to_json(self) -> str:
        return json.dumps({"dim": self.dim, "rows": self.to_lists()})

    @classmethod
    def from_json(cls, text: str) -> "ExactMatrix":
        data = json.loads(text)
        m = cls(data["rows"])
        if m.dim != data.get("dim", m.dim):
            raise ValueError("dim field disagrees with row data")
        return m

    def to_csv(self) -> str:
        return "\n".join(",".join(str(a) for a in row) for row in self.rows) + "\n"

    def __repr__(self) -> str:
        return f"ExactMatrix({self.to_lists()!r})"


def row_times_matrix(v: Sequence[int], m: ExactMatrix) -> tuple[int, ...]:
    """Row vector times matrix, exactly."""
    if len(v) != m.dim:
        raise ValueError(f"dimension mismatch: {len(v)} vs {m.dim}")
    n = m.dim
    return tuple(sum(v[i] * m.rows[i][j] for i in range(n)) for j in range(n))
