"""Machine descriptions as bit strings, enumeration, and the minimal
input-length complexity they induce.

The transducer coding is a unary state-count header, then per (state, bit)
in row major order the next state in ceil(log2 |Q|) bits and the output as
1^|w| 0 w.  Pebble machines add a unary pebble count, a finals bitmask and
one presence/absence flag per partial-table row.  Both codings are strict:
decode rejects any string that does not parse exactly, and machines are
enumerated in canonical (reachability-ordered) form only, so each machine
surfaces once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .fst import FstMachine, fst_run
from .pebble import LEFT_MARK, RIGHT_MARK, ACTIONS, PebbleMachine, pb_run
from .errors import DomainError
from .words import check_word

__all__ = [
    "ComplexityResult",
    "FstCodec",
    "PbCodec",
    "sigma_size",
    "enumerate_machines",
    "dk_fst",
    "dk_fst_bruteforce",
    "PbPoolEntry",
    "dk_pb_upper",
    "default_pb_pool",
    "density_curves",
]

_PB_SYMS = "01" + LEFT_MARK + RIGHT_MARK
_ACT_BITS = {"+1": "00", "-1": "01", "push": "10", "pop": "11"}
_BITS_ACT = {v: k for k, v in _ACT_BITS.items()}


@dataclass(frozen=True)
class ComplexityResult:
    value: float  # witness length, or math.inf when unreachable
    witness: tuple[str, str] | None  # (machine description bits, input)
    exact: bool


class _Cursor:
    __slots__ = ("bits", "at")

    def __init__(self, bits):
        self.bits = bits
        self.at = 0

    def take(self, n):
        if self.at + n > len(self.bits):
            raise ValueError("truncated description")
        out = self.bits[self.at : self.at + n]
        self.at += n
        return out

    def unary(self):
        count = 0
        while self.take(1) == "1":
            count += 1
        return count

    def word(self):
        n = self.unary()
        return self.take(n)

    def number(self, width):
        if width == 0:
            return 0
        return int(self.take(width), 2)

    def done(self):
        if self.at != len(self.bits):
            raise ValueError("trailing bits")


def _emit_word(w):
    return "1" * len(w) + "0" + w


class FstCodec:
    family = "fst"

    def encode(self, m: FstMachine) -> str:
        width = (m.n_states - 1).bit_length()
        parts = ["1" * m.n_states + "0"]
        for q in range(m.n_states):
            for b in "01":
                nxt = m.transitions[(q, b)]
                if width:
                    parts.append(format(nxt, f"0{width}b"))
                parts.append(_emit_word(m.outputs[(q, b)]))
        return "".join(parts)

    def decode(self, bits: str) -> FstMachine:
        check_word(bits)
        cur = _Cursor(bits)
        n = cur.unary()
        if n < 1:
            raise ValueError("empty state set")
        width = (n - 1).bit_length()
        trans, outs = {}, {}
        for q in range(n):
            for b in "01":
                nxt = cur.number(width)
                if nxt >= n:
                    raise ValueError("next state out of range")
                trans[(q, b)] = nxt
                outs[(q, b)] = cur.word()
        cur.done()
        return FstMachine(n, trans, outs)

    def enumerate(self, max_bits: int):
        if max_bits > 24:
            raise ValueError("enumeration bound too large for transducers")
        machines = []
        n = 1
        while True:
            width = (n - 1).bit_length()
            fixed = n + 1 + 2 * n * width
            if fixed + 2 * n > max_bits:  # every output costs at least '0'
                break
            budget = max_bits - fixed
            import itertools

            for outs in _word_tuples(2 * n, budget):
                for nexts in itertools.product(range(n), repeat=2 * n):
                    trans = {}
                    outputs = {}
                    i = 0
                    for q in range(n):
                        for b in "01":
                            trans[(q, b)] = nexts[i]
                            outputs[(q, b)] = outs[i]
                            i += 1
                    if _fst_canonical(n, trans):
                        machines.append(FstMachine(n, trans, outputs))
            n += 1
        return machines


def _word_tuples(count, budget):
    """Tuples of `count` words with total cost sum(2|w|+1) <= budget,
    ordered deterministically."""
    if count == 0:
        yield ()
        return
    rest_min = count - 1
    for w in _words_by_cost(budget - rest_min):
        for tail in _word_tuples(count - 1, budget - (2 * len(w) + 1)):
            yield (w,) + tail


def _words_by_cost(budget):
    length = 0
    while 2 * length + 1 <= budget:
        for i in range(1 << length):
            yield format(i, f"0{length}b") if length else ""
        length += 1


def _fst_canonical(n, trans):
    order = []
    seen = set()
    queue = [0]
    while queue:
        q = queue.pop(0)
        if q in seen:
            continue
        seen.add(q)
        order.append(q)
        queue.append(trans[(q, "0")])
        queue.append(trans[(q, "1")])
    order.extend(q for q in range(n) if q not in seen)
    return order == list(range(n))


class PbCodec:
    family = "pb"

    def encode(self, m: PebbleMachine) -> str:
        width = (m.n_states - 1).bit_length()
        parts = ["1" * m.n_states + "0", "1" * m.pebbles + "0"]
        parts.append("".join("1" if q in m.finals else "0"
                             for q in range(m.n_states)))
        for q in range(m.n_states):
            if q in m.finals:
                continue
            for sym in _PB_SYMS:
                for mask in range(1 << m.pebbles):
                    key = (q, sym, mask)
                    hit = m.transitions.get(key)
                    if hit is None:
                        parts.append("0")
                        continue
                    nxt, act = hit
                    parts.append("1")
                    if width:
                        parts.append(format(nxt, f"0{width}b"))
                    parts.append(_ACT_BITS[act])
                    parts.append(_emit_word(m.outputs.get(key, "")))
        return "".join(parts)

    def decode(self, bits: str) -> PebbleMachine:
        check_word(bits)
        cur = _Cursor(bits)
        n = cur.unary()
        if n < 1:
            raise ValueError("empty state set")
        k = cur.unary()
        if k > 4:
            raise ValueError("pebble count above cap")
        width = (n - 1).bit_length()
        finals = {q for q, c in enumerate(cur.take(n)) if c == "1"}
        trans, outs = {}, {}
        for q in range(n):
            if q in finals:
                continue
            for sym in _PB_SYMS:
                for mask in range(1 << k):
                    if cur.take(1) == "0":
                        continue
                    nxt = cur.number(width)
                    if nxt >= n:
                        raise ValueError("next state out of range")
                    act = _BITS_ACT[cur.take(2)]
                    key = (q, sym, mask)
                    trans[key] = (nxt, act)
                    outs[key] = cur.word()
        cur.done()
        return PebbleMachine(n, 0, finals, k, trans, outs)

    def enumerate(self, max_bits: int):
        if max_bits > 18:
            raise ValueError("enumeration bound too large for pebble machines")
        machines = []
        for n in range(1, max_bits):
            for k in range(0, 2):
                for finals_mask in range(1 << n):
                    finals = {q for q in range(n) if finals_mask >> q & 1}
                    header = (n + 1) + (k + 1) + n
                    rows = (n - len(finals)) * 4 * (1 << k)
                    if header + rows > max_bits:
                        continue
                    for m in self._row_fill(n, k, finals, max_bits - header):
                        machines.append(m)
        return machines

    def _row_fill(self, n, k, finals, budget):
        width = (n - 1).bit_length()
        keys = [
            (q, sym, mask)
            for q in range(n)
            if q not in finals
            for sym in _PB_SYMS
            for mask in range(1 << k)
        ]

        def rows(i, left):
            if i == len(keys):
                yield {}
                return
            remaining_min = len(keys) - i - 1
            if left - 1 >= remaining_min:
                for tail in rows(i + 1, left - 1):
                    yield tail
            defined_fixed = 1 + width + 2
            for nxt in range(n):
                for act in ACTIONS:
                    for w in _words_by_cost(left - defined_fixed
                                            - remaining_min):
                        cost = defined_fixed + 2 * len(w) + 1
                        if left - cost < remaining_min:
                            continue
                        for tail in rows(i + 1, left - cost):
                            filled = {keys[i]: (nxt, act, w)}
                            filled.update(tail)
                            yield filled

        for table in rows(0, budget):
            trans = {key: (nxt, act) for key, (nxt, act, _) in table.items()}
            outs = {key: w for key, (_, _, w) in table.items() if w}
            try:
                yield PebbleMachine(n, 0, finals, k, trans, outs)
            except ValueError:
                continue


def sigma_size(machine, codec=None) -> int:
    if codec is None:
        codec = FstCodec() if isinstance(machine, FstMachine) else PbCodec()
    return len(codec.encode(machine))


def enumerate_machines(codec, max_bits: int):
    return codec.enumerate(max_bits)


@lru_cache(maxsize=8)
def _fst_pool(max_bits: int):
    return tuple(FstCodec().enumerate(max_bits))


def _min_witness(machine: FstMachine, x: str):
    """Shortest input whose run emits exactly x, by breadth-first search on
    (state, matched-output-length) pairs; a minimal witness never repeats
    such a pair, so the search closes within |Q| * (|x|+1) nodes."""
    start = (machine.start, 0)
    parents = {start: None}
    frontier = [start]
    target = len(x)
    while frontier:
        grown = []
        for node in frontier:
            q, pos = node
            if pos == target:
                continue
            for b in "01":
                out = machine.outputs[(q, b)]
                if out and not x.startswith(out, pos):
                    continue
                child = (machine.transitions[(q, b)], pos + len(out))
                if child in parents:
                    continue
                parents[child] = (node, b)
                grown.append(child)
        frontier = grown
        for q in range(machine.n_states):
            node = (q, target)
            if node in parents:
                bits = []
                while parents[node] is not None:
                    node, b = parents[node]
                    bits.append(b)
                return "".join(reversed(bits))
    hits = [(q, target) in parents for q in range(machine.n_states)]
    if any(hits):  # pragma: no cover - handled inside the loop
        raise AssertionError
    return None


def dk_fst(x: str, max_bits: int) -> ComplexityResult:
    """Exact minimum over all transducers of description size <= max_bits
    of the shortest input producing x."""
    check_word(x)
    best = math.inf
    witness = None
    codec = FstCodec()
    for m in _fst_pool(max_bits):
        y = _min_witness(m, x)
        if y is not None and len(y) < best:
            best = len(y)
            witness = (codec.encode(m), y)
            if best == 0:
                break
    return ComplexityResult(best, witness, True)


@lru_cache(maxsize=8)
def _bruteforce_tables(max_target: int, max_bits: int):
    """Per decodable description: map from every producible word of length
    <= max_target to its minimal input length.  Independent of dk_fst: it
    decodes raw description strings and runs every input up to the
    |Q|*(max_target+1) closure bound."""
    codec = FstCodec()
    tables = []
    for size in range(1, max_bits + 1):
        for value in range(1 << size):
            bits = format(value, f"0{size}b")
            try:
                m = codec.decode(bits)
            except ValueError:
                continue
            bound = m.n_states * (max_target + 1)
            table = {}
            level = [""]
            for _ in range(bound + 1):
                for y in level:
                    out, _q = fst_run(m, y)
                    if len(out) <= max_target and out not in table:
                        table[out] = len(y)
                level = [y + b for y in level for b in "01"]
            tables.append((size, table))
    return tuple(tables)


def dk_fst_bruteforce(x: str, max_bits: int, max_target: int | None = None) -> float:
    if max_target is None:
        max_target = len(x)
    best = math.inf
    for size, table in _bruteforce_tables(max_target, max_bits):
        if size <= max_bits and x in table:
            best = min(best, table[x])
    return best


@dataclass(frozen=True)
class PbPoolEntry:
    name: str
    machine: PebbleMachine
    size_bits: int
    witness_fn: object = None  # target word -> input word or None


def dk_pb_upper(x: str, pool, search_cap: int = 0) -> ComplexityResult:
    """Upper bound on pebble complexity from a fixed machine pool: best of
    builder-supplied witnesses and (optionally) exhaustive search over
    inputs of length <= search_cap.  Never claimed exact."""
    check_word(x)
    best = math.inf
    witness = None
    for entry in pool:
        if entry.witness_fn is not None:
            y = entry.witness_fn(x)
            if y is not None:
                got = pb_run(entry.machine, y,
                             max_steps=64 * (len(y) + len(x)) + 4096)
                if got != x:
                    raise DomainError(
                        f"pool witness for {entry.name} is wrong"
                    )
                if len(y) < best:
                    best = len(y)
                    witness = (entry.name, y)
        if search_cap:
            level = [""]
            found = None
            for _ in range(search_cap + 1):
                for y in level:
                    try:
                        got = pb_run(entry.machine, y,
                                     max_steps=4096 + 64 * len(x))
                    except DomainError:
                        continue
                    if got == x:
                        found = y
                        break
                if found is not None:
                    break
                level = [y + b for y in level for b in "01"]
            if found is not None and len(found) < best:
                best = len(found)
                witness = (entry.name, found)
    return ComplexityResult(best, witness, False)


def _pref_target_witness(target: str):
    from .words import double, pref

    total = len(target)
    m = int((math.isqrt(8 * total + 1) - 1) // 2)
    if m * (m + 1) != 2 * total:
        return None
    x = target[total - m :] if m else ""
    if pref(x) != target:
        return None
    return double(x) + "01"


def default_pb_pool():
    from .constructions import power_print_machine, pref_machine
    from .pebble import identity_pb

    ident = identity_pb()
    prefm = pref_machine()
    powm = power_print_machine()
    return [
        PbPoolEntry("identity", ident, sigma_size(ident), lambda t: t),
        PbPoolEntry("pref", prefm, sigma_size(prefm), _pref_target_witness),
        PbPoolEntry("power-print", powm, sigma_size(powm), None),
    ]


def density_curves(ratios, tail: int = 3) -> tuple[float, float]:
    """Finite-prefix stand-ins for the lower/upper density: min and max of
    the last `tail` sample ratios."""
    if len(ratios) < 2:
        raise ValueError("need at least two sample points")
    window = list(ratios)[-tail:]
    return (min(window), max(window))
