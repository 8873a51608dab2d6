"""Generators for the constructed sequences, as prefix-consistent streams.

Two families are built in stages:

* thm4 (parameters k > 2, v >= 1): stage m lists every length-m word
  without a 1-run of length k, palindromes first, then v+1 paired zones
  X flag Y where Y is the reversal of X, all zones separated by 1-flags
  whose lengths grow with the stage and the zone index.  Stages below k
  list all words of that length; a block of flags 1^k ... 1^(2k-1) sits
  between stage k-1 and stage k.

* remark1 (parameters k > 8, seed): stage j is R^(|R|) 1^k (R^-1)^(|R|)
  where |R| = k * t_j, t_j the smallest power of k at least j, and R is a
  hard-to-compress word without 1^k chosen by a seeded selector.

Both sources expose their internal unit structure so that witness inputs
for the hand-built transducers can be assembled elsewhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .lz78 import lz78_encoded_len, lz78_parse
from .words import BitStreamSource, check_word

__all__ = [
    "t_set",
    "Thm4Params",
    "Remark1Params",
    "Thm4Source",
    "Remark1Source",
    "PrefSource",
    "unit_out_len",
    "unit_out",
    "make_source",
]


@lru_cache(maxsize=64)
def t_set(n: int, k: int) -> tuple[str, ...]:
    """All length-n words with every 1-run shorter than k, lexicographic."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > 26:
        raise ValueError("n > 26 would materialise too many words")
    out = []
    word = []

    def grow(run: int) -> None:
        if len(word) == n:
            out.append("".join(word))
            return
        word.append("0")
        grow(0)
        word.pop()
        if run + 1 < k:
            word.append("1")
            grow(run + 1)
            word.pop()

    grow(0)
    return tuple(out)


@dataclass(frozen=True)
class Thm4Params:
    k: int
    v: int


@dataclass(frozen=True)
class Remark1Params:
    k: int
    v: int = 0  # compressor modulus; the sequence itself does not use it
    seed: int = 0
    selector: str = "sample-max-lz"
    samples: int = 64


# ---------------------------------------------------------------------------
# zone assignment for the thm4 family

def _zone_pair_counts(n_pairs: int, v: int) -> list[int]:
    per = n_pairs // v
    return [per] * v + [n_pairs - per * v]


def _zone_feasible(zone) -> bool:
    # a zone lists one element of each pair; its concatenation must start
    # and end with 0, so it needs a 0-starting element up front and a
    # 0-ending element at the back (pairs whose lex-smaller element starts
    # with 1 have both elements starting and ending with 1 and can serve
    # neither role)
    t = len(zone)
    if t == 0:
        return True
    if t == 1:
        lo = zone[0][0]
        return lo[0] == "0" and lo[-1] == "0"
    return sum(1 for lo, _ in zone if lo[0] == "0") >= 2


def _assign_zones(pairs, v):
    """Split the lex-sorted pair list into v+1 zones with the given counts,
    swapping pairs between zones when a zone lacks boundary-capable pairs.
    """
    counts = _zone_pair_counts(len(pairs), v)
    zones = []
    at = 0
    for c in counts:
        zones.append(list(pairs[at : at + c]))
        at += c

    def donor_ok(dz, give_idx):
        trial = dz[:give_idx] + dz[give_idx + 1 :]
        return _zone_feasible(trial)

    for zi, zone in enumerate(zones):
        guard = 0
        while not _zone_feasible(zone):
            guard += 1
            if guard > len(pairs) + 1:
                raise ValueError("cannot meet zone boundary constraints")
            need_both_ends = len(zone) == 1
            found = None
            for dj, dz in enumerate(zones):
                if dj == zi:
                    continue
                for pi in range(len(dz) - 1, -1, -1):
                    lo = dz[pi][0]
                    usable = (lo[0] == "0" and lo[-1] == "0") \
                        if need_both_ends else lo[0] == "0"
                    if usable and donor_ok(dz, pi):
                        found = (dj, pi)
                        break
                if found:
                    break
            if found is None:
                raise ValueError("cannot meet zone boundary constraints")
            dj, pi = found
            give = next((i for i, (lo, _) in enumerate(zone) if lo[0] == "1"), 0)
            zones[dj][pi], zone[give] = zone[give], zones[dj][pi]
    return zones


def _arrange_zone(zone) -> list[str]:
    """Pick one element per pair and an order so the concatenation starts
    and ends with 0 (the reversed listing then also starts with 0)."""
    t = len(zone)
    if t == 0:
        return []
    if t == 1:
        return [zone[0][0]]
    capable = [j for j, (lo, _) in enumerate(zone) if lo[0] == "0"]
    first, last = capable[0], capable[-1]
    order = [first] + [j for j in range(t) if j not in (first, last)] + [last]
    picked = []
    for pos, j in enumerate(order):
        lo, hi = zone[j]
        if pos == t - 1 and lo[-1] != "0":
            picked.append(hi)
        else:
            picked.append(lo)
    return picked


# ---------------------------------------------------------------------------
# unit plumbing shared by the sources and the witness builders
#
# thm4 units:   ("head", s)        output s
#               ("pal",  s, fl)    output s + 1^fl
#               ("zone", W, fl)    output W + 1^fl + reverse(W)
#               ("flagzone", fl)   output 1^fl
# remark1 units: ("square", w)     output w repeated |w| times
#               ("printflag", r)   output 1^r

def unit_out_len(unit) -> int:
    kind = unit[0]
    if kind == "head":
        return len(unit[1])
    if kind == "pal":
        return len(unit[1]) + unit[2]
    if kind == "zone":
        return 2 * len(unit[1]) + unit[2]
    if kind == "flagzone":
        return unit[1]
    if kind == "square":
        return len(unit[1]) ** 2
    if kind == "printflag":
        return unit[1]
    raise ValueError(f"unknown unit {unit[0]!r}")


def unit_out(unit) -> str:
    kind = unit[0]
    if kind == "head":
        return unit[1]
    if kind == "pal":
        return unit[1] + "1" * unit[2]
    if kind == "zone":
        return unit[1] + "1" * unit[2] + unit[1][::-1]
    if kind == "flagzone":
        return "1" * unit[1]
    if kind == "square":
        return unit[1] * len(unit[1])
    if kind == "printflag":
        return "1" * unit[1]
    raise ValueError(f"unknown unit {unit[0]!r}")


class _StagedSource(BitStreamSource):
    """Buffered stream built stage by stage from structural units."""

    def __init__(self):
        self._units = []
        self._buf = ""
        self._stage_end = {}

    def _more(self) -> None:
        raise NotImplementedError

    def ensure_len(self, n: int) -> None:
        while len(self._buf) < n:
            self._more()

    def prefix(self, n: int) -> str:
        self.ensure_len(n)
        return self._buf[:n]

    def units_covering(self, n: int):
        """Units whose outputs concatenate to at least n bits, with global
        start offsets: list of (start, unit)."""
        self.ensure_len(n)
        out = []
        at = 0
        for u in self._units:
            if at >= n:
                break
            out.append((at, u))
            at += unit_out_len(u)
        return out

    def _push_units(self, units) -> None:
        self._units.extend(units)
        self._buf += "".join(unit_out(u) for u in units)

    def stage_end(self, m: int) -> int:
        """Offset one past the last bit of stage m."""
        while m not in self._stage_end:
            self._more()
        return self._stage_end[m]


class Thm4Source(_StagedSource):
    def __init__(self, k: int, v: int):
        if k <= 2:
            raise ValueError("k must exceed 2")
        if v < 1:
            raise ValueError("v must be at least 1")
        super().__init__()
        self.k = k
        self.v = v
        self.label = f"thm4:k={k},v={v}"
        head = "".join(
            w for m in range(1, k) for w in _all_words(m)
        ) + "".join("1" * j for j in range(k, 2 * k))
        self._push_units([("head", head)])
        self._stage_end[k - 1] = len(head)
        self._next_stage = k

    def flag_len(self, m: int) -> int:
        return 2 * self.k + (m - self.k) * (self.v + 2)

    def _stage_units(self, m: int):
        words = t_set(m, self.k)
        pal = [w for w in words if w == w[::-1]]
        pairs = [(w, w[::-1]) for w in words if w < w[::-1]]
        f = self.flag_len(m)
        units = [("pal", "".join(pal), f)]
        for i, zone in enumerate(_assign_zones(pairs, self.v), start=1):
            picked = _arrange_zone(zone)
            if picked:
                units.append(("zone", "".join(picked), f + i))
            else:
                units.append(("flagzone", f + i))
        return units

    def _more(self) -> None:
        m = self._next_stage
        self._push_units(self._stage_units(m))
        self._stage_end[m] = len(self._buf)
        self._next_stage += 1


def _all_words(m: int) -> list[str]:
    return [format(i, f"0{m}b") for i in range(1 << m)]


class Remark1Source(_StagedSource):
    def __init__(self, k: int, seed: int = 0, selector: str = "sample-max-lz",
                 samples: int = 64):
        if k <= 8:
            raise ValueError("k must exceed 8")
        if selector not in ("sample-max-lz", "hash"):
            raise ValueError(f"unknown selector {selector!r}")
        super().__init__()
        self.k = k
        self.seed = seed
        self.selector = selector
        self.samples = samples
        self.label = f"remark1:k={k},seed={seed}"
        self._zone_words = {}
        self._next_stage = 1

    def block_len(self, j: int) -> int:
        # k times the smallest power of k that is >= j
        t = 1
        while t < j:
            t *= self.k
        return self.k * t

    def zone_word(self, j: int) -> str:
        w = self._zone_words.get(j)
        if w is None:
            w = self._select(j)
            self._zone_words[j] = w
        return w

    def _select(self, j: int) -> str:
        n = self.block_len(j)
        rng = random.Random(f"{self.seed}:{j}")
        if self.selector == "hash":
            return _sample_avoiding(rng, n, self.k)
        best = None
        best_score = -1
        for _ in range(self.samples):
            cand = _sample_avoiding(rng, n, self.k)
            score = lz78_encoded_len(lz78_parse(cand), "plain")
            if score > best_score:
                best, best_score = cand, score
        return best

    def stage_units(self, j: int):
        r = self.zone_word(j)
        return [("square", r), ("printflag", self.k), ("square", r[::-1])]

    def _more(self) -> None:
        j = self._next_stage
        self._push_units(self.stage_units(j))
        self._stage_end[j] = len(self._buf)
        self._next_stage += 1

    def divisibility_start(self, v: int) -> int:
        """Least stage index from which v divides every zone-word length."""
        if v < 1:
            raise ValueError("v must be >= 1")
        j = 1
        while self.block_len(j) % v:
            if self.block_len(j) > self.k * v * v:
                raise ValueError(f"modulus {v} never divides the zone lengths")
            j = self.block_len(j) // self.k + 1  # next jump in t_j
        return j

    def count_prefix_len(self, v: int) -> int:
        """Bits the compressor must copy verbatim before the zone lengths
        are all divisible by v."""
        p = self.divisibility_start(v)
        return sum(2 * self.block_len(j) ** 2 + self.k for j in range(1, p))


@lru_cache(maxsize=32)
def _avoid_counts(n: int, k: int) -> tuple:
    # counts[i][r] = completions of length i with current 1-run r
    counts = [[0] * k for _ in range(n + 1)]
    counts[0] = [1] * k
    for i in range(1, n + 1):
        for r in range(k):
            total = counts[i - 1][0]
            if r + 1 < k:
                total += counts[i - 1][r + 1]
            counts[i][r] = total
    return tuple(tuple(row) for row in counts)


def _sample_avoiding(rng, n: int, k: int) -> str:
    """Uniform sample from the 1^k-avoiding words of length n (unranking)."""
    counts = _avoid_counts(n, k)
    idx = rng.randrange(counts[n][0])
    out = []
    run = 0
    for i in range(n, 0, -1):
        zeros = counts[i - 1][0]
        if idx < zeros:
            out.append("0")
            run = 0
        else:
            idx -= zeros
            out.append("1")
            run += 1
    return "".join(out)


class PrefSource(BitStreamSource):
    """Concatenation of the inner stream's prefixes of lengths 1, 2, 3, ..."""

    def __init__(self, inner: BitStreamSource):
        self.inner = inner
        self.label = f"prefseq({inner.label})"
        self._buf = ""
        self._next = 1

    def prefix(self, n: int) -> str:
        while len(self._buf) < n:
            self._buf += self.inner.prefix(self._next)
            self._next += 1
        return self._buf[:n]


def make_source(name: str, *, pattern: str = "0", k: int | None = None,
                v: int | None = None, seed: int = 0, samples: int = 64,
                selector: str = "sample-max-lz",
                inner: str | None = None) -> BitStreamSource:
    """Factory behind the CLI's --seq flag."""
    if name == "zeros":
        return PeriodicWrapper("0")
    if name == "ones":
        return PeriodicWrapper("1")
    if name == "periodic":
        return PeriodicWrapper(pattern)
    if name == "champernowne":
        from .words import ChampernowneSource

        return ChampernowneSource()
    if name == "thm4":
        return Thm4Source(k if k is not None else 8, v if v is not None else 4)
    if name == "remark1":
        return Remark1Source(k if k is not None else 9, seed=seed,
                             selector=selector, samples=samples)
    if name == "prefseq":
        base = make_source(inner or "champernowne", pattern=pattern, k=k,
                           v=v, seed=seed)
        return PrefSource(base)
    raise ValueError(f"unknown sequence {name!r}")


def PeriodicWrapper(pattern: str):
    from .words import PeriodicSource

    check_word(pattern)
    return PeriodicSource(pattern)
