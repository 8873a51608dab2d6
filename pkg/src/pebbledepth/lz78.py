"""LZ78: greedy dictionary parsing, pointer codings, decoding."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = [
    "Lz78Parse",
    "lz78_parse",
    "lz78_encoded_len",
    "lz78_decode",
    "elias_gamma",
]


@dataclass
class Lz78Parse:
    """Ordered phrase list.

    Phrase i (1-based) extends the dictionary entry at back_pointers[i-1]
    (0 is the empty word) by last_bits[i-1].  Every phrase is distinct
    except possibly the final one, which may repeat an earlier phrase when
    the input runs out mid-extension.
    """

    phrases: list[str] = field(default_factory=list)
    back_pointers: list[int] = field(default_factory=list)
    last_bits: list[str] = field(default_factory=list)

    def pairs(self) -> list[tuple[int, str]]:
        return list(zip(self.back_pointers, self.last_bits))

    def __len__(self) -> int:
        return len(self.phrases)


def lz78_parse(x: str) -> Lz78Parse:
    """Greedy left-to-right longest-match parse with dictionary seeded by
    the empty word."""
    index = {"": 0}
    parse = Lz78Parse()
    cur = ""
    for b in x:
        nxt = cur + b
        if nxt in index:
            cur = nxt
            continue
        parse.phrases.append(nxt)
        parse.back_pointers.append(index[cur])
        parse.last_bits.append(b)
        index[nxt] = len(index)
        cur = ""
    if cur:
        # input exhausted inside a known phrase; emit it as a (possibly
        # repeated) full phrase
        parse.phrases.append(cur)
        parse.back_pointers.append(index[cur[:-1]])
        parse.last_bits.append(cur[-1])
    return parse


def elias_gamma(m: int) -> str:
    """Gamma code of a positive integer: |code| = 2*floor(log2 m) + 1."""
    if m < 1:
        raise ValueError("gamma code needs a positive integer")
    s = format(m, "b")
    return "0" * (len(s) - 1) + s


def lz78_encoded_len(parse: Lz78Parse, coding: str = "plain") -> int:
    """Encoded bit count under one of the two pointer codings.

    plain: phrase i costs ceil(log2 i) pointer bits (a pointer into the
    dictionary of i entries including the empty word) plus one literal bit.
    gamma: pointer l(i) is sent as gamma(l(i)+1) plus one literal bit,
    giving a self-delimiting stream.
    """
    if coding == "plain":
        return sum((i - 1).bit_length() + 1 for i in range(1, len(parse) + 1))
    if coding == "gamma":
        return sum(
            len(elias_gamma(ptr + 1)) + 1 for ptr in parse.back_pointers
        )
    raise ValueError(f"unknown coding {coding!r}")


def lz78_decode(pairs: list[tuple[int, str]]) -> str:
    """Inverse of the parse: pointer-chase each (pointer, bit) pair."""
    dictionary = [""]
    out = []
    for ptr, bit in pairs:
        if not 0 <= ptr < len(dictionary):
            raise ValueError(f"dangling pointer {ptr}")
        if bit not in ("0", "1"):
            raise ValueError(f"bad literal bit {bit!r}")
        phrase = dictionary[ptr] + bit
        dictionary.append(phrase)
        out.append(phrase)
    return "".join(out)
