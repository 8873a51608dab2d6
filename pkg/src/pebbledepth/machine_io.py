"""Line-oriented text format for machine descriptions.

All three machine kinds share the layout: a kind line, header lines, then
one `t ...` line per transition.  Empty output / replacement words are
written '-'.  Blank lines and lines starting with '#' are ignored.

    fst                     pb                        pdc | updc
    states N                states N                  states N
    start 0                 start 0                   start 0
    t q b q' out            finals i j ...            lambda-budget c
                            pebbles k                 t q a top q' push out
                            t q s mask q' act out

pb tape symbols are 0 1 L R (end markers), the pebble mask is a k-bit
string ('-' when k = 0); pdc input '~' is the silent move and 'Z' the
bottom-of-stack symbol.
"""

from __future__ import annotations

from .errors import MachineFormatError
from .fst import FstMachine
from .pebble import ACTIONS, PebbleMachine
from .pushdown import PdcMachine

__all__ = ["parse_machine", "serialize_machine", "load_machine", "save_machine"]


def _word(tok: str) -> str:
    if tok == "-":
        return ""
    if tok.strip("01"):
        raise MachineFormatError(f"bad output word {tok!r}")
    return tok


def _unword(w: str) -> str:
    return w if w else "-"


def _lines(text: str):
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield ln, line.split()


def _headers(rows, wanted):
    got = {}
    body = []
    for ln, toks in rows:
        if toks[0] in wanted and toks[0] not in got:
            got[toks[0]] = (ln, toks[1:])
        elif toks[0] == "t":
            body.append((ln, toks[1:]))
        else:
            raise MachineFormatError(f"line {ln}: unexpected {toks[0]!r}")
    for name in wanted:
        if name not in got:
            raise MachineFormatError(f"missing header {name!r}")
    return got, body


def parse_machine(text: str):
    rows = list(_lines(text))
    if not rows:
        raise MachineFormatError("empty machine description")
    _, kind_toks = rows[0]
    kind = kind_toks[0]
    rest = rows[1:]
    try:
        if kind == "fst":
            return _parse_fst(rest)
        if kind == "pb":
            return _parse_pb(rest)
        if kind in ("pdc", "updc"):
            return _parse_pdc(rest, unary=(kind == "updc"))
    except MachineFormatError:
        raise
    except (ValueError, IndexError) as exc:
        raise MachineFormatError(str(exc)) from exc
    raise MachineFormatError(f"unknown machine kind {kind!r}")


def _parse_fst(rows):
    got, body = _headers(rows, ("states", "start"))
    n = int(got["states"][1][0])
    trans, outs = {}, {}
    for ln, toks in body:
        if len(toks) != 4:
            raise MachineFormatError(f"line {ln}: fst transition needs 4 fields")
        q, b, nxt, out = int(toks[0]), toks[1], int(toks[2]), _word(toks[3])
        trans[(q, b)] = nxt
        outs[(q, b)] = out
    return FstMachine(n, trans, outs, start=int(got["start"][1][0]))


def _parse_pb(rows):
    got, body = _headers(rows, ("states", "start", "finals", "pebbles"))
    n = int(got["states"][1][0])
    finals = {int(tok) for tok in got["finals"][1]}
    k = int(got["pebbles"][1][0])
    trans, outs = {}, {}
    for ln, toks in body:
        if len(toks) != 6:
            raise MachineFormatError(f"line {ln}: pb transition needs 6 fields")
        q, sym, masktok, nxt, act, out = toks
        mask = _parse_mask(masktok, k, ln)
        key = (int(q), sym, mask)
        if act not in ACTIONS:
            raise MachineFormatError(f"line {ln}: bad action {act!r}")
        trans[key] = (int(nxt), act)
        outs[key] = _word(out)
    return PebbleMachine(n, int(got["start"][1][0]), finals, k, trans, outs)


def _parse_mask(tok: str, k: int, ln: int) -> int:
    if k == 0:
        if tok != "-":
            raise MachineFormatError(f"line {ln}: mask must be '-' with no pebbles")
        return 0
    if len(tok) != k or tok.strip("01"):
        raise MachineFormatError(f"line {ln}: mask must be {k} bits")
    return sum(1 << j for j, c in enumerate(tok) if c == "1")


def _mask_str(mask: int, k: int) -> str:
    if k == 0:
        return "-"
    return "".join("1" if mask >> j & 1 else "0" for j in range(k))


def _parse_pdc(rows, unary: bool):
    got, body = _headers(rows, ("states", "start", "lambda-budget"))
    n = int(got["states"][1][0])
    trans, outs = {}, {}
    for ln, toks in body:
        if len(toks) != 6:
            raise MachineFormatError(f"line {ln}: pdc transition needs 6 fields")
        q, a, top, nxt, push, out = toks
        key = (int(q), a, top)
        trans[key] = (int(nxt), "" if push == "-" else push)
        outs[key] = _word(out)
    return PdcMachine(n, int(got["start"][1][0]),
                      int(got["lambda-budget"][1][0]), trans, outs, unary=unary)


def serialize_machine(machine) -> str:
    if isinstance(machine, FstMachine):
        lines = ["fst", f"states {machine.n_states}", f"start {machine.start}"]
        for (q, b) in sorted(machine.transitions):
            lines.append(
                f"t {q} {b} {machine.transitions[(q, b)]} "
                f"{_unword(machine.outputs[(q, b)])}"
            )
    elif isinstance(machine, PebbleMachine):
        lines = [
            "pb",
            f"states {machine.n_states}",
            f"start {machine.start}",
            "finals " + " ".join(str(q) for q in sorted(machine.finals)),
            f"pebbles {machine.pebbles}",
        ]
        for key in sorted(machine.transitions):
            q, sym, mask = key
            nxt, act = machine.transitions[key]
            lines.append(
                f"t {q} {sym} {_mask_str(mask, machine.pebbles)} {nxt} {act} "
                f"{_unword(machine.outputs.get(key, ''))}"
            )
    elif isinstance(machine, PdcMachine):
        lines = [
            "updc" if machine.unary else "pdc",
            f"states {machine.n_states}",
            f"start {machine.start}",
            f"lambda-budget {machine.lambda_budget}",
        ]
        for key in sorted(machine.transitions):
            q, a, top = key
            nxt, push = machine.transitions[key]
            lines.append(
                f"t {q} {a} {top} {nxt} {push if push else '-'} "
                f"{_unword(machine.outputs[key])}"
            )
    else:
        raise TypeError(f"cannot serialise {type(machine).__name__}")
    return "\n".join(lines) + "\n"


def load_machine(path):
    with open(path, "r", encoding="ascii") as fh:
        return parse_machine(fh.read())


def save_machine(machine, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize_machine(machine))
