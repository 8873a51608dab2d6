"""Binary words and prefix streams.

Words are plain Python strings over the characters '0' and '1'; the empty
word is ''.  Streams hand out arbitrarily long prefixes and must be
prefix-consistent: ``prefix(m) == prefix(n)[:m]`` whenever ``m <= n``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

__all__ = [
    "check_word",
    "double",
    "reverse",
    "pow_k",
    "pref",
    "max_block_deviation",
    "block_frequency_deviation",
    "BitStreamSource",
    "PeriodicSource",
    "ChampernowneSource",
]


def check_word(x: str) -> str:
    """Validate that x is a string over {0,1}; the empty word is fine."""
    if not isinstance(x, str) or x.strip("01"):
        raise ValueError(f"not a binary word: {x!r}")
    return x


def double(x: str) -> str:
    """'01' -> '0011': every bit written twice."""
    return "".join(c + c for c in x)


def reverse(x: str) -> str:
    return x[::-1]


def pow_k(x: str, k: int) -> str:
    """x concatenated with itself |x|**k times; |out| = |x|**(k+1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return x * (len(x) ** k)


def pref(x: str) -> str:
    """All prefixes of x in order of length; |out| = |x|(|x|+1)/2."""
    return "".join(x[: i + 1] for i in range(len(x)))


def max_block_deviation(bits: str, b: int) -> Fraction:
    """Worst absolute gap between the overlapping-occurrence frequency of a
    length-b block in ``bits`` and the uniform value 2**-b.

    Blocks that never occur count with frequency 0, so an all-zero string
    deviates by 1/2 at b = 1.
    """
    if not 1 <= b <= 16:
        raise ValueError("block length must be in 1..16")
    n = len(bits)
    if n < 2**b:
        raise ValueError(f"need at least 2**{b} bits, got {n}")
    windows = n - b + 1
    counts = Counter(bits[i : i + b] for i in range(windows))
    target = Fraction(1, 2**b)
    worst = Fraction(0)
    for value in range(2**b):
        block = format(value, f"0{b}b")
        dev = abs(Fraction(counts.get(block, 0), windows) - target)
        if dev > worst:
            worst = dev
    return worst


def block_frequency_deviation(source: "BitStreamSource", n: int, b: int) -> Fraction:
    return max_block_deviation(source.prefix(n), b)


class BitStreamSource:
    """One-sided infinite bit stream; only prefixes are ever materialised."""

    label = "source"

    def prefix(self, n: int) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


class PeriodicSource(BitStreamSource):
    """pattern repeated forever; pattern '0' gives the all-zero stream."""

    def __init__(self, pattern: str):
        check_word(pattern)
        if not pattern:
            raise ValueError("pattern must be non-empty")
        self.pattern = pattern
        self.label = f"periodic:{pattern}"

    def prefix(self, n: int) -> str:
        p = self.pattern
        return (p * (n // len(p) + 1))[:n]


class ChampernowneSource(BitStreamSource):
    """The binary Champernowne word: every binary word listed once, ordered
    by length and then lexicographically: 0 1 00 01 10 11 000 ..."""

    label = "champernowne"

    def __init__(self):
        self._buf = ""
        self._next_len = 1

    def prefix(self, n: int) -> str:
        while len(self._buf) < n:
            m = self._next_len
            self._buf += "".join(format(i, f"0{m}b") for i in range(1 << m))
            self._next_len += 1
        return self._buf[:n]
