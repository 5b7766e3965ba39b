"""The point-push protocol language.

A stirring protocol with N fixed obstacles is a word in the free group on
the generators a_1..a_N, where a_j moves the stirrer once counterclockwise
around obstacle j.  Protocols act on the fundamental group of the
(N+1)-punctured disk, generated by loops d_1..d_{N+1}: d_i circles the i-th
obstacle counterclockwise for i <= N, and d_{N+1} is the clockwise loop
around everything (stirrer included).  Puncture numbering: the stirrer is
the left-most puncture, the obstacles are punctures 2..N+1.

With these adapted loops the generator action is a single conjugation,

    a_j: d_j -> P^-1 d_j P,   P = d_{j+1} ... d_N d_{N+1} d_1 ... d_{j-1},

and every other loop is fixed.  Protocol words compose left to right
("do the first letter, then the second"), matching the braid convention.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from collections.abc import Iterable

from .words import Automorphism, FreeWord, _invert_raw, _reduce_raw, compose

_TOKEN = re.compile(r"^a(\d+)(\^-1)?$")


@dataclass(frozen=True)
class ProtocolWord:
    """A freely reduced word in the stirring generators a_1..a_N.

    ``letters`` holds signed obstacle indices: +j for a_j, -j for its
    inverse.  The protocol word length L (the energy cost) is the reduced
    letter count.
    """

    n_obstacles: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.n_obstacles < 2:
            raise ValueError("need at least 2 obstacles")
        prev = 0
        for x in self.letters:
            if x == 0 or abs(x) > self.n_obstacles:
                raise ValueError(f"generator {x} out of range for N={self.n_obstacles}")
            if x == -prev:
                raise ValueError("protocol word is not freely reduced")
            prev = x

    @property
    def word_length(self) -> int:
        return len(self.letters)

    def inverse(self) -> "ProtocolWord":
        return ProtocolWord(self.n_obstacles, tuple(_invert_raw(self.letters)))

    def __mul__(self, other: "ProtocolWord") -> "ProtocolWord":
        if self.n_obstacles != other.n_obstacles:
            raise ValueError("obstacle counts differ")
        return ProtocolWord(
            self.n_obstacles, tuple(_reduce_raw(self.letters + other.letters))
        )

    def __str__(self) -> str:
        return " ".join(f"a{abs(x)}" if x > 0 else f"a{abs(x)}^-1" for x in self.letters)

    def __repr__(self) -> str:
        return f"ProtocolWord(N={self.n_obstacles}, {str(self)!r})"


@dataclass(frozen=True)
class BraidWord:
    """A word in the standard braid generators s_1..s_{n_strings-1}.

    Export-only: letters are freely reduced over the s-alphabet but no braid
    relations are applied.
    """

    n_strings: int
    letters: tuple[int, ...]

    def __post_init__(self):
        for x in self.letters:
            if x == 0 or abs(x) > self.n_strings - 1:
                raise ValueError(f"braid letter {x} out of range for {self.n_strings} strings")

    def permutation(self) -> tuple[int, ...]:
        """Endpoint permutation of the strings (0-based, position i -> perm[i])."""
        perm = list(range(self.n_strings))
        for x in self.letters:
            i = abs(x) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm)

    def __str__(self) -> str:
        return " ".join(f"s{abs(x)}" if x > 0 else f"s{abs(x)}^-1" for x in self.letters)

    def __repr__(self) -> str:
        return f"BraidWord(strings={self.n_strings}, {str(self)!r})"


def parse_protocol(text: str, n_obstacles: int) -> ProtocolWord:
    """Parse whitespace-separated tokens ``a<j>`` / ``a<j>^-1`` and reduce."""
    letters = []
    for token in text.split():
        m = _TOKEN.match(token)
        if not m:
            raise ValueError(f"bad protocol token {token!r}")
        j = int(m.group(1))
        if not 1 <= j <= n_obstacles:
            raise ValueError(f"generator index {j} out of range 1..{n_obstacles}")
        letters.append(-j if m.group(2) else j)
    return ProtocolWord(n_obstacles, tuple(_reduce_raw(letters)))


def _conjugator(j: int, n: int) -> list[int]:
    # P = d_{j+1} ... d_N d_{N+1} d_1 ... d_{j-1}: every loop except d_j, once
    return list(range(j + 1, n + 2)) + list(range(1, j))


def alpha_automorphism(j: int, sign: int, n_obstacles: int) -> Automorphism:
    """The automorphism of the rank-(N+1) free group induced by a_j^sign."""
    n = n_obstacles
    if not 1 <= j <= n:
        raise ValueError(f"generator index {j} out of range 1..{n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    rank = n + 1
    p = _conjugator(j, n)
    if sign == 1:
        img = _invert_raw(p) + [j] + p
    else:
        img = p + [j] + _invert_raw(p)
    images = [
        FreeWord(rank, tuple(img)) if i == j else FreeWord(rank, (i,))
        for i in range(1, rank + 1)
    ]
    return Automorphism(rank, tuple(images))


def protocol_automorphism(p: ProtocolWord) -> Automorphism:
    """Left-to-right composite of the letter automorphisms."""
    rank = p.n_obstacles + 1
    result = Automorphism.identity(rank)
    for x in p.letters:
        result = compose(result, alpha_automorphism(abs(x), 1 if x > 0 else -1, p.n_obstacles))
    return result


def _alpha_braid(j: int, sign: int) -> list[int]:
    # a_j = s_1 s_2 ... s_{j-1} s_j^2 s_{j-1}^-1 ... s_1^-1
    prefix = list(range(1, j))
    word = prefix + [j, j] + [-i for i in reversed(prefix)]
    return word if sign == 1 else _invert_raw(word)


def to_braid_word(p: ProtocolWord) -> BraidWord:
    """Expand each letter into its braid word on N+1 strings and reduce freely."""
    letters: list[int] = []
    for x in p.letters:
        letters.extend(_alpha_braid(abs(x), 1 if x > 0 else -1))
    return BraidWord(p.n_obstacles + 1, tuple(_reduce_raw(letters)))


def hsp(n_obstacles: int) -> ProtocolWord:
    """The full-cycle protocol a_1 a_2 ... a_N (stirrer on a hypotrochoid)."""
    if n_obstacles < 2:
        raise ValueError("need at least 2 obstacles")
    return ProtocolWord(n_obstacles, tuple(range(1, n_obstacles + 1)))


def efficiency_estimate(p: ProtocolWord, entropy: float) -> float:
    """Entropy per generator: entropy / L(p)."""
    if p.word_length == 0:
        raise ValueError("empty protocol has no efficiency")
    return entropy / p.word_length


def random_protocol(n_obstacles: int, length: int, rng: random.Random) -> ProtocolWord:
    """A random freely reduced protocol word of exactly ``length`` letters."""
    letters: list[int] = []
    while len(letters) < length:
        x = rng.randint(1, n_obstacles) * rng.choice((1, -1))
        if letters and letters[-1] == -x:
            continue
        letters.append(x)
    return ProtocolWord(n_obstacles, tuple(letters))


def iter_letters(p: ProtocolWord) -> Iterable[tuple[int, int]]:
    """Yield (generator index, sign) pairs of a protocol word."""
    for x in p.letters:
        yield abs(x), (1 if x > 0 else -1)
