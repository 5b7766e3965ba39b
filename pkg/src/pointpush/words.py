"""Reduced words in free groups and their automorphisms.

Words are stored as flat sequences of signed generator indices: ``+i`` is
the i-th generator, ``-i`` its inverse, indices run from 1 to the rank
(0 is invalid).  Free reduction is done with a stack in a single pass, so
substitution followed by reduction stays linear in the substituted length;
that is the throughput bottleneck when iterating an automorphism to measure
word growth, where images reach millions of letters.

Everything here is immutable after construction and safe to share between
workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from collections.abc import Iterable, Sequence

from .errors import LengthCapError
from .exactmat import ExactMatrix

DEFAULT_LENGTH_CAP = 10**8


def _reduce_raw(letters: Iterable[int]) -> list[int]:
    out: list[int] = []
    append = out.append
    pop = out.pop
    for x in letters:
        if out and out[-1] == -x:
            pop()
        else:
            append(x)
    return out


def _invert_raw(letters: Sequence[int]) -> list[int]:
    return [-x for x in reversed(letters)]


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word; ``letters`` holds signed generator indices."""

    rank: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        prev = 0
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise ValueError(f"letter {x} out of range for rank {self.rank}")
            if x == -prev:
                raise ValueError("word is not freely reduced")
            prev = x

    @classmethod
    def identity(cls, rank: int) -> "FreeWord":
        return cls(rank, ())

    @classmethod
    def from_pairs(cls, rank: int, pairs: Iterable[tuple[int, int]]) -> "FreeWord":
        """Build from (index, sign) pairs, reducing as needed."""
        return reduce_word([i * s for i, s in pairs], rank)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((abs(x), 1 if x > 0 else -1) for x in self.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(self.rank, tuple(_invert_raw(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __repr__(self) -> str:
        return f"FreeWord(rank={self.rank}, letters={list(self.letters)!r})"


def reduce_word(letters: Iterable[int], rank: int) -> FreeWord:
    """Freely reduce a raw signed-letter sequence.

    The output equals the input in the free group; adjacent inverse pairs are
    cancelled until none remain (nested cancellations unwind via the stack).
    """
    raw = list(letters)
    for x in raw:
        if x == 0 or abs(x) > rank:
            raise ValueError(f"letter {x} out of range for rank {rank}")
    return FreeWord(rank, tuple(_reduce_raw(raw)))


def word_length(w: FreeWord) -> int:
    """Letter count of the reduced form."""
    return len(w.letters)


def occurrence_vector(w: FreeWord) -> tuple[int, ...]:
    """Count occurrences of each generator or its inverse.

    The 1-norm of the result is the word length.
    """
    counts = [0] * w.rank
    for x in w.letters:
        counts[abs(x) - 1] += 1
    return tuple(counts)


@dataclass(frozen=True)
class Automorphism:
    """A rank-n endomorphism given by the image word of each generator.

    In this package these always come from invertible stirring motions, but
    invertibility is not checked; composition and application only need the
    images.
    """

    rank: int
    images: tuple[FreeWord, ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise ValueError("need one image per generator")
        for w in self.images:
            if w.rank != self.rank:
                raise ValueError("image rank disagrees with automorphism rank")

    @classmethod
    def identity(cls, rank: int) -> "Automorphism":
        return cls(rank, tuple(FreeWord(rank, (i,)) for i in range(1, rank + 1)))

    @cached_property
    def _signed_images(self) -> dict[int, tuple[int, ...]]:
        # letter -> image letters, for both signs, so application is one lookup
        table: dict[int, tuple[int, ...]] = {}
        for i, w in enumerate(self.images, start=1):
            table[i] = w.letters
            table[-i] = tuple(_invert_raw(w.letters))
        return table

    def is_identity(self) -> bool:
        return all(w.letters == (i,) for i, w in enumerate(self.images, start=1))


def apply_automorphism(a: Automorphism, w: FreeWord) -> FreeWord:
    """Substitute generator images into ``w`` and freely reduce."""
    if a.rank != w.rank:
        raise ValueError(f"rank mismatch: automorphism {a.rank}, word {w.rank}")
    out = _apply_raw(a._signed_images, w.letters)
    return FreeWord(w.rank, tuple(out))


def _apply_raw(images: dict[int, tuple[int, ...]], word: Iterable[int]) -> list[int]:
    out: list[int] = []
    append = out.append
    pop = out.pop
    for s in word:
        for x in images[s]:
            if out and out[-1] == -x:
                pop()
            else:
                append(x)
    return out


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """The automorphism "do a, then b": ``compose(a, b)(w) == b(a(w))``.

    This matches the left-to-right convention used for stirring words, so
    the matrix of a composite is the product of the factors' matrices in
    word order.
    """
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    images = tuple(apply_automorphism(b, w) for w in a.images)
    return Automorphism(a.rank, images)


def incidence_matrix(a: Automorphism) -> ExactMatrix:
    """Occurrence-count matrix: row i counts the generators in the image of
    generator i (inverses counted together).  All entries are nonnegative."""
    return ExactMatrix([occurrence_vector(w) for w in a.images])


@dataclass(frozen=True)
class GrowthReport:
    """Word lengths under iteration and the derived growth-rate estimates.

    ``lengths[n]`` is the reduced length of the n-th iterate of the seed
    generator; ``ratios`` are consecutive quotients and converge to the
    exponential growth rate exp(h) much faster than ``nth_roots`` for the
    stretching classes of interest, so the last ratio is the headline
    estimate.  Both sequences are reported.
    """

    seed_index: int
    lengths: tuple[int, ...]
    ratios: tuple[float, ...]
    nth_roots: tuple[float, ...]
    truncated: bool
    length_cap: int

    @property
    def growth_rate(self) -> float:
        """Estimate of exp(h): the last consecutive-length ratio."""
        return self.ratios[-1]

    @property
    def entropy(self) -> float:
        return math.log(self.growth_rate)

    def as_dict(self) -> dict:
        return {
            "seed_index": self.seed_index,
            "lengths": list(self.lengths),
            "ratios": list(self.ratios),
            "nth_roots": list(self.nth_roots),
            "growth_rate": self.growth_rate,
            "entropy": self.entropy,
            "truncated": self.truncated,
            "length_cap": self.length_cap,
        }


def growth_estimate(
    a: Automorphism,
    seed_index: int,
    n_iters: int,
    length_cap: int = DEFAULT_LENGTH_CAP,
) -> GrowthReport:
    """Iterate ``a`` on a seed generator and record reduced word lengths.

    Stops early (setting ``truncated``) once the next substitution would
    exceed ``length_cap`` letters before reduction; the pre-reduction count
    is what drives time and memory, so the cap is enforced against it.

    Raises LengthCapError if the cap prevents even two iterations, which
    signals the seed/automorphism pair is too explosive for the cap.
    """
    if n_iters < 1:
        raise ValueError("n_iters must be >= 1")
    if not 1 <= seed_index <= a.rank:
        raise ValueError(f"seed_index {seed_index} out of range")
    images = a._signed_images
    image_len = {s: len(img) for s, img in images.items()}

    word: list[int] = [seed_index]
    lengths = [1]
    truncated = False
    for _ in range(n_iters):
        substituted = sum(image_len[s] for s in word)
        if substituted > length_cap:
            truncated = True
            break
        word = _apply_raw(images, word)
        lengths.append(len(word))
    if len(lengths) < 3 and truncated:
        raise LengthCapError(
            f"length cap {length_cap} exceeded before 2 iterations "
            f"(seed {seed_index})"
        )
    ratios = tuple(lengths[i + 1] / lengths[i] for i in range(len(lengths) - 1))
    nth_roots = tuple(lengths[n] ** (1.0 / n) for n in range(1, len(lengths)))
    return GrowthReport(
        seed_index=seed_index,
        lengths=tuple(lengths),
        ratios=ratios,
        nth_roots=nth_roots,
        truncated=truncated,
        length_cap=length_cap,
    )
