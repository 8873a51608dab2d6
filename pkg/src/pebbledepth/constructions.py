"""Hand-built transducers/compressors and the witness inputs driving them.

Each pebble machine is totalised with a single absorbing junk state so a
malformed input diverges instead of producing wrong output.  Witness
builders turn a requested prefix length of a constructed sequence into an
input string for the matching machine together with the expected output;
`check_witness` replays the machine to confirm the pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import WitnessError
from .pebble import LEFT_MARK, RIGHT_MARK, PebbleMachine, pb_run
from .pushdown import BOTTOM, LAMBDA_IN, PdcMachine
from .sequences import Remark1Source, Thm4Source, unit_out_len
from .words import check_word, double, pref

__all__ = [
    "WitnessString",
    "pref_machine",
    "print_reverse_machine",
    "power_print_machine",
    "cprime_machine",
    "cprime_for",
    "pref_witness",
    "thm4_witness",
    "remark1_witness",
    "check_witness",
]

_BITS = "01"


@dataclass(frozen=True)
class WitnessString:
    input: str
    expected: str
    machine: str


def _totalise(n_states, finals, pebbles, trans, junk):
    """Route every missing (state, symbol, mask) into the bouncing junk
    state; the resulting run revisits a configuration and is flagged
    divergent."""
    for q in range(n_states):
        if q in finals:
            continue
        for sym in "01" + LEFT_MARK + RIGHT_MARK:
            for mask in range(1 << pebbles):
                key = (q, sym, mask)
                if key not in trans:
                    trans[key] = (junk, "-1" if sym == RIGHT_MARK else "+1")


def pref_machine() -> PebbleMachine:
    """1-pebble machine: on d(x)·01·z it prints pref(x) then copies z.

    The pebble crawls over the doubled pairs of d(x); each left-to-right
    pass prints every second bit up to the pebble, i.e. one more prefix of
    x.  The first unequal pair ends the doubled part and switches to plain
    copying.
    """
    names = ["start", "pair", "saw0", "saw1", "rewind", "walk_odd",
             "walk_even", "resume", "copy", "done", "junk"]
    s = {n: i for i, n in enumerate(names)}
    t = {}
    o = {}
    t[(s["start"], LEFT_MARK, 0)] = (s["pair"], "+1")
    for b in _BITS:
        t[(s["pair"], b, 0)] = (s["saw" + b], "+1")
        for a in _BITS:
            if a == b:
                t[(s["saw" + b], a, 0)] = (s["rewind"], "push")
            else:
                t[(s["saw" + b], a, 0)] = (s["copy"], "+1")
    for b in _BITS:
        for c in (0, 1):
            t[(s["rewind"], b, c)] = (s["rewind"], "-1")
    t[(s["rewind"], LEFT_MARK, 0)] = (s["walk_odd"], "+1")
    for b in _BITS:
        t[(s["walk_odd"], b, 0)] = (s["walk_even"], "+1")
        t[(s["walk_even"], b, 0)] = (s["walk_odd"], "+1")
        o[(s["walk_even"], b, 0)] = b
        t[(s["walk_even"], b, 1)] = (s["resume"], "pop")
        o[(s["walk_even"], b, 1)] = b
        t[(s["resume"], b, 0)] = (s["pair"], "+1")
        t[(s["copy"], b, 0)] = (s["copy"], "+1")
        o[(s["copy"], b, 0)] = b
    for q in ("pair", "saw0", "saw1", "copy"):
        t[(s[q], RIGHT_MARK, 0)] = (s["done"], "-1")
    _totalise(len(names), {s["done"]}, 1, t, s["junk"])
    return PebbleMachine(len(names), 0, {s["done"]}, 1, t, o,
                         state_names=names, label="pref")


def print_reverse_machine(k: int) -> PebbleMachine:
    """1-pebble machine around a 2k-bit shift register.

    It streams its input verbatim until a 1-run of length >= 2k is
    followed by a 0 (the unprinted zone separator); the next bit then picks
    the mode: 1 resumes plain printing, 0 starts a mirrored zone.  In a
    mirrored zone the pebble marks the zone start, the machine prints the
    zone and its flag moving right, walks back over the flag (emitting the
    zone's final 0), prints the zone reversed down to the pebble, then
    skips forward past the flag to the next separator.
    """
    if not 3 <= k <= 5:
        raise ValueError("flag parameter must be in 3..5")
    width = 2 * k
    full = (1 << width) - 1
    n_fixed = 7
    blocks = 1 << width
    start, check, drop, flagback, mirror, junk, done = range(7)

    def reg_print(w):
        return n_fixed + w

    def reg_copy(w):
        return n_fixed + blocks + w

    def reg_skip(w):
        return n_fixed + 2 * blocks + w

    n_states = n_fixed + 3 * blocks
    names = ["start", "check", "drop", "flagback", "mirror", "junk", "done"]
    names += [f"print:{w:0{width}b}" for w in range(blocks)]
    names += [f"copy:{w:0{width}b}" for w in range(blocks)]
    names += [f"skip:{w:0{width}b}" for w in range(blocks)]

    t = {}
    o = {}
    t[(start, LEFT_MARK, 0)] = (reg_print(0), "+1")
    for w in range(blocks):
        for b in _BITS:
            shifted = ((w << 1) | (b == "1")) & full
            # plain printing: leave to the mode check on the 0 after a full
            # 1-run, otherwise keep printing
            if w == full and b == "0":
                t[(reg_print(w), b, 0)] = (check, "+1")
            else:
                t[(reg_print(w), b, 0)] = (reg_print(shifted), "+1")
                o[(reg_print(w), b, 0)] = b
            # mirrored-zone forward printing (pebble may sit underfoot at
            # the zone's first square)
            for c in (0, 1):
                if w == full and b == "0":
                    t[(reg_copy(w), b, c)] = (flagback, "-1")
                else:
                    t[(reg_copy(w), b, c)] = (reg_copy(shifted), "+1")
                    o[(reg_copy(w), b, c)] = b
            # forward skip back to the separator after a mirrored zone
            if w == full and b == "0":
                t[(reg_skip(w), b, 0)] = (check, "+1")
            else:
                t[(reg_skip(w), b, 0)] = (reg_skip(shifted), "+1")
        t[(reg_print(w), RIGHT_MARK, 0)] = (done, "-1")
    t[(check, "1", 0)] = (reg_print(0), "+1")
    t[(check, "0", 0)] = (drop, "+1")
    t[(check, RIGHT_MARK, 0)] = (done, "-1")
    for b in _BITS:
        t[(drop, b, 0)] = (reg_copy(0), "push")
        t[(flagback, "1", 0)] = (flagback, "-1")
        t[(flagback, "0", 0)] = (mirror, "-1")
        o[(flagback, "0", 0)] = "0"
        t[(mirror, b, 0)] = (mirror, "-1")
        o[(mirror, b, 0)] = b
        t[(mirror, b, 1)] = (reg_skip(0), "pop")
        o[(mirror, b, 1)] = b
    _totalise(n_states, {done}, 1, t, junk)
    return PebbleMachine(n_states, 0, {done}, 1, t, o,
                         state_names=names, label=f"print-reverse:{k}")


def power_print_machine() -> PebbleMachine:
    """1-pebble machine reading aligned 2-bit chunks.

    Chunk 10 opens a square zone: for doubled content d(x) the pebble
    steps across the pairs, and each pass prints x once, yielding x^|x|.
    Chunk 01 opens a plain zone printing one bit per equal pair.  The run
    accepts at the right end only from a plain zone.
    """
    names = ["start", "first", "first0", "first1", "plain", "plain0",
             "plain1", "mark", "mark0", "mark1", "back", "back0", "back1",
             "flagl", "emit", "emit0", "emit1", "fetch", "fetch2", "done",
             "junk"]
    s = {n: i for i, n in enumerate(names)}
    t = {}
    o = {}
    t[(s["start"], LEFT_MARK, 0)] = (s["first"], "+1")
    for b in _BITS:
        t[(s["first"], b, 0)] = (s["first" + b], "+1")
        for a in _BITS:
            if a != b:
                nxt = "plain" if b + a == "01" else "mark"
                t[(s["first" + b], a, 0)] = (s[nxt], "+1")
    # plain zone: print one bit per equal chunk, mode switch on an unequal
    # chunk, accept at the right end
    for b in _BITS:
        t[(s["plain"], b, 0)] = (s["plain" + b], "+1")
        for a in _BITS:
            if a == b:
                t[(s["plain" + b], a, 0)] = (s["plain"], "+1")
                o[(s["plain" + b], a, 0)] = b
            else:
                nxt = "plain" if b + a == "01" else "mark"
                t[(s["plain" + b], a, 0)] = (s[nxt], "+1")
        t[(s["plain" + b], RIGHT_MARK, 0)] = (s["done"], "-1")
    t[(s["plain"], RIGHT_MARK, 0)] = (s["done"], "-1")
    # square zone: looking for the next pair to mark with the pebble
    for b in _BITS:
        t[(s["mark"], b, 0)] = (s["mark" + b], "+1")
        for a in _BITS:
            if a == b:
                t[(s["mark" + b], a, 0)] = (s["back"], "push")
            else:
                nxt = "plain" if b + a == "01" else "mark"
                t[(s["mark" + b], a, 0)] = (s[nxt], "+1")
    # walk left in chunks to the opening 10 flag
    for b in _BITS:
        for c in (0, 1):
            t[(s["back"], b, c)] = (s["back" + b], "-1")
        for a in _BITS:
            for c in (0, 1):
                if a == b:
                    t[(s["back" + b], a, c)] = (s["back"], "-1")
                elif a + b == "10":
                    t[(s["back" + b], a, c)] = (s["flagl"], "+1")
                else:
                    t[(s["back" + b], a, c)] = (s["junk"], "+1")
    for b in _BITS:
        for c in (0, 1):
            t[(s["flagl"], b, c)] = (s["emit"], "+1")
    # print pass: one bit per equal chunk until the closing flag
    for b in _BITS:
        for c in (0, 1):
            t[(s["emit"], b, c)] = (s["emit" + b], "+1")
            for a in _BITS:
                if a == b:
                    t[(s["emit" + b], a, c)] = (s["emit"], "+1")
                    o[(s["emit" + b], a, c)] = b
                else:
                    t[(s["emit" + b], a, c)] = (s["fetch"], "-1")
    # retrieve the pebble and advance it one pair
    for b in _BITS:
        t[(s["fetch"], b, 0)] = (s["fetch"], "-1")
        t[(s["fetch"], b, 1)] = (s["fetch2"], "pop")
        t[(s["fetch2"], b, 0)] = (s["mark"], "+1")
    _totalise(len(names), {s["done"]}, 1, t, s["junk"])
    return PebbleMachine(len(names), 0, {s["done"]}, 1, t, o,
                         state_names=names, label="power-print")


def cprime_machine(count_prefix: int, flag_len: int, modulus: int) -> PdcMachine:
    """Pushdown compressor for streams of blocks w^{|w|} 1^f reverse(w)^{|w|}.

    Copies the first `count_prefix` bits verbatim, then reads flag-aligned
    groups of f bits, pushing and echoing, until a group of all ones; that
    flag is popped silently and the mirrored half is checked against the
    stack, emitting one 0 per `modulus` matched bits.  A mismatch emits the
    error flag 1^(3*count_prefix+i) 0 plus the offending bit and falls into
    a copy-everything error state.  Losslessness rests on the output/end
    state pair pinning down how far the last check ran.
    """
    if flag_len < 1 or modulus < 1 or count_prefix < 0:
        raise ValueError("bad compressor parameters")
    m, f, v = count_prefix, flag_len, modulus
    group = m + 1
    f1 = lambda i: m + 1 + i                 # i in 1..f
    f0 = lambda i: m + 1 + f + i             # i in 1..f
    popf = lambda i: m + 2 + 2 * f + i       # i in 0..f
    comp = lambda i: m + 2 + 3 * f + i       # i in 1..v+1
    err = m + 3 * f + v + 4
    n_states = err + 1
    names = [f"count{i}" for i in range(m + 1)] + ["group"]
    names += [f"ones{i}" for i in range(1, f + 1)]
    names += [f"mixed{i}" for i in range(1, f + 1)]
    names += [f"popflag{i}" for i in range(f + 1)]
    names += [f"checked{i}" for i in range(1, v + 2)] + ["error"]

    t = {}
    o = {}
    tops = "01" + BOTTOM
    for i in range(m):
        for a in _BITS:
            for top in tops:
                t[(i, a, top)] = (i + 1, top)
                o[(i, a, top)] = a
    for top in tops:
        t[(m, LAMBDA_IN, top)] = (group, top)
    for a in _BITS:
        for top in tops:
            t[(group, a, top)] = (f1(1) if a == "1" else f0(1), a + top)
            o[(group, a, top)] = a
    for i in range(1, f):
        for a in _BITS:
            for top in tops:
                t[(f0(i), a, top)] = (f0(i + 1), a + top)
                o[(f0(i), a, top)] = a
                t[(f1(i), a, top)] = (f1(i + 1) if a == "1" else f0(i + 1),
                                      a + top)
                o[(f1(i), a, top)] = a
    for top in tops:
        t[(f0(f), LAMBDA_IN, top)] = (group, top)
        t[(f1(f), LAMBDA_IN, top)] = (popf(0), top)
    for i in range(f):
        for top in _BITS:  # the f pushed flag bits are on top, never Z
            t[(popf(i), LAMBDA_IN, top)] = (popf(i + 1), "")
    for top in tops:
        t[(popf(f), LAMBDA_IN, top)] = (comp(1), top)
    for i in range(1, v + 1):
        for a in _BITS:
            for top in _BITS:
                if a == top:
                    t[(comp(i), a, top)] = (comp(i + 1), "")
                    if i == v:
                        o[(comp(i), a, top)] = "0"
                else:
                    t[(comp(i), a, top)] = (err, top)
                    o[(comp(i), a, top)] = "1" * (3 * m + i) + "0" + a
            # stack drained: this bit opens the next block
            t[(comp(i), a, BOTTOM)] = (f1(1) if a == "1" else f0(1),
                                       a + BOTTOM)
            o[(comp(i), a, BOTTOM)] = a
    for top in tops:
        t[(comp(v + 1), LAMBDA_IN, top)] = (comp(1), top)
    for a in _BITS:
        for top in tops:
            t[(err, a, top)] = (err, top)
            o[(err, a, top)] = a
    return PdcMachine(n_states, 0, f + 2, t, o, unary=False,
                      state_names=names, label=f"cprime:m={m},f={f},v={v}")


def cprime_for(source: Remark1Source, modulus: int) -> PdcMachine:
    return cprime_machine(source.count_prefix_len(modulus), source.k, modulus)


# ---------------------------------------------------------------------------
# witnesses

def pref_witness(x: str, z: str) -> WitnessString:
    check_word(x)
    check_word(z)
    return WitnessString(double(x) + "01" + z, pref(x) + z, "pref")


def thm4_witness(source: Thm4Source, n: int) -> WitnessString:
    """Input for the print-reverse machine producing exactly prefix(n).

    Complete mirrored zones are encoded as 0 W flag 0 (half the zone's
    output length); everything else, including any partial trailing unit,
    is streamed in plain-print pieces.  Plain pieces may only end at a
    flag boundary (where the machine expects the unprinted separator 0)
    except for the final piece of the input.
    """
    pieces = []
    consumed = 0
    for start, unit in source.units_covering(n):
        kind = unit[0]
        out_len = unit_out_len(unit)
        take = min(out_len, n - start)
        full = take == out_len
        if kind == "head":
            pieces.append(unit[1][:take] + ("0" if full else ""))
        elif kind == "pal":
            body = unit[1] + "1" * unit[2]
            pieces.append("1" + body[:take] + ("0" if full else ""))
        elif kind == "flagzone":
            pieces.append("1" + "1" * take + ("0" if full else ""))
        elif kind == "zone":
            w, fl = unit[1], unit[2]
            if full:
                pieces.append("0" + w + "1" * fl + "0")
            elif take <= len(w) + fl:
                pieces.append("1" + (w + "1" * fl)[:take])
            else:
                pieces.append("1" + w + "1" * fl + "0"
                              + "1" + w[::-1][: take - len(w) - fl])
        consumed = start + take
    if consumed != n:
        raise WitnessError(f"unit walk covered {consumed} of {n} bits")
    return WitnessString("".join(pieces), source.prefix(n),
                         f"print-reverse:{source.k}")


def remark1_witness(source: Remark1Source, n: int) -> WitnessString:
    """Input for the power-print machine producing exactly prefix(n).

    Complete w^{|w|} blocks cost one doubled copy of w (flag 10); flags and
    any partial trailing block are printed plainly (flag 01) at two input
    bits per output bit.  A trailing 01 closes the input when it would
    otherwise end in a square zone, since the machine only accepts from a
    plain zone.
    """
    pieces = []
    consumed = 0
    for start, unit in source.units_covering(n):
        kind = unit[0]
        out_len = unit_out_len(unit)
        take = min(out_len, n - start)
        if kind == "square":
            w = unit[1]
            if take == out_len:
                pieces.append("10" + double(w))
            else:
                copies, rem = divmod(take, len(w))
                pieces.append("01" + double(w * copies + w[:rem]))
        else:  # printflag
            pieces.append("01" + double("1" * take))
        consumed = start + take
    if consumed != n:
        raise WitnessError(f"unit walk covered {consumed} of {n} bits")
    if not pieces or pieces[-1].startswith("10"):
        pieces.append("01")
    return WitnessString("".join(pieces), source.prefix(n), "power-print")


def check_witness(machine: PebbleMachine, witness: WitnessString,
                  max_steps: int | None = None) -> None:
    """Replay the machine on the witness input; raise unless it reproduces
    the expected output exactly."""
    if max_steps is None:
        max_steps = 64 * (len(witness.input) + len(witness.expected)) + 4096
    got = pb_run(machine, witness.input, max_steps=max_steps)
    if got != witness.expected:
        raise WitnessError(
            f"witness for {witness.machine} produced {len(got)} bits, "
            f"expected {len(witness.expected)}"
        )
