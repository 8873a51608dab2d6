"""Depth-profile harness: all measures over a prefix ladder, CSV in/out,
and the slow-growth experiment pairing a stream with its transduced image.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .complexity import dk_fst
from .constructions import check_witness, power_print_machine, \
    print_reverse_machine, remark1_witness, thm4_witness, cprime_machine
from .errors import DomainError
from .fst import FstMachine, fst_run, il_check
from .lz78 import lz78_encoded_len, lz78_parse
from .pushdown import pdc_run, identity_pdc
from .sequences import Remark1Source, Thm4Source
from .words import BitStreamSource, max_block_deviation

__all__ = [
    "ProfileConfig",
    "DepthProfileRow",
    "CSV_COLUMNS",
    "profile",
    "emit_csv",
    "parse_csv",
    "TransducedSource",
    "SglReport",
    "sgl_experiment",
    "pb_witness_for",
]

CSV_COLUMNS = [
    "n",
    "len_identity",
    "len_lz78_plain",
    "len_lz78_gamma",
    "len_cprime",
    "len_updc_best",
    "dk_fst",
    "pb_ub",
    "gap_fs_pb",
    "normality_dev",
]


@dataclass
class ProfileConfig:
    dk_k: int | None = None          # description-size bound; toy n only
    cprime: tuple | None = None      # (count_prefix, flag_len, modulus)
    updc_pool: list | None = None    # defaults to the identity compressor
    normality_b: int | None = None
    verify_pb: bool = False          # replay machines on every witness
    pb_max_steps: int | None = None


@dataclass
class DepthProfileRow:
    n: int
    len_identity: int
    len_lz78_plain: int
    len_lz78_gamma: int
    len_cprime: int | None = None
    len_updc_best: int | None = None
    dk_fst: int | None = None
    pb_ub: int | None = None
    gap_fs_pb: float | None = None
    normality_dev: float | None = None


def pb_witness_for(source: BitStreamSource, n: int):
    """Witness input (for the family's machine) producing prefix(n), or
    None for sources without a pebble story."""
    if isinstance(source, Thm4Source):
        return thm4_witness(source, n)
    if isinstance(source, Remark1Source):
        return remark1_witness(source, n)
    if isinstance(source, TransducedSource):
        m = source.aligned_input_len(n)
        if m is None:
            return None
        return pb_witness_for(source.inner, m)
    return None


def _machine_for(source: BitStreamSource):
    # the mirrored-zone machine's register width is tied to the flag
    # parameter and is only materialised for small k; larger profiles use
    # witness lengths alone, with machine agreement certified at small k
    if isinstance(source, Thm4Source):
        return print_reverse_machine(source.k) if 3 <= source.k <= 5 else None
    if isinstance(source, Remark1Source):
        return power_print_machine()
    return None


def profile(source: BitStreamSource, n_list, config: ProfileConfig | None = None):
    """One row per requested prefix length, ascending."""
    config = config or ProfileConfig()
    n_list = list(n_list)
    if n_list != sorted(n_list):
        raise ValueError("prefix lengths must be ascending")
    cpr = cprime_machine(*config.cprime) if config.cprime else None
    pool = config.updc_pool if config.updc_pool is not None else [identity_pdc(unary=True)]
    verify_machine = None
    if config.verify_pb:
        verify_machine = _machine_for(source)
        if verify_machine is None:
            raise DomainError(
                f"no replayable machine for {source.label}; witness "
                "verification is unavailable at this parameter"
            )
    rows = []
    for n in n_list:
        bits = source.prefix(n)
        parse = lz78_parse(bits)
        row = DepthProfileRow(
            n=n,
            len_identity=n,
            len_lz78_plain=lz78_encoded_len(parse, "plain"),
            len_lz78_gamma=lz78_encoded_len(parse, "gamma"),
        )
        if cpr is not None:
            row.len_cprime = len(pdc_run(cpr, bits).output)
        if pool:
            row.len_updc_best = min(len(pdc_run(m, bits).output) for m in pool)
        if config.dk_k is not None:
            row.dk_fst = dk_fst(bits, config.dk_k).value
        wit = pb_witness_for(source, n)
        if wit is not None:
            row.pb_ub = len(wit.input)
            if verify_machine is not None:
                check_witness(verify_machine, wit,
                              max_steps=config.pb_max_steps)
        fs_measure = row.dk_fst if row.dk_fst is not None else _fs_measure(source, n)
        if row.pb_ub is not None:
            row.gap_fs_pb = (fs_measure - row.pb_ub) / n
        if config.normality_b is not None:
            row.normality_dev = float(max_block_deviation(bits, config.normality_b))
        rows.append(row)
    return rows


def _fs_measure(source: BitStreamSource, n: int) -> int:
    """Finite-state side of the gap.  Default is the identity observer
    (value n, the conservative stand-in for a nearly incompressible
    stream); a transduced stream whose prefix is exactly the image of an
    inner prefix is charged that inner length instead, realising the
    transducer itself as the decompressing observer."""
    if isinstance(source, TransducedSource):
        m = source.aligned_input_len(n)
        if m is not None:
            return min(n, m)
    return n


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if value == math.inf:
            return "inf"
        return f"{value:.6f}"
    return str(value)


def emit_csv(rows) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in rows:
        lines.append(",".join(_fmt(getattr(r, c)) for c in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def parse_csv(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].split(",") != CSV_COLUMNS:
        raise ValueError("unrecognised profile CSV header")
    rows = []
    for ln in lines[1:]:
        cells = ln.split(",")
        kw = {}
        for name, cell in zip(CSV_COLUMNS, cells):
            if cell == "":
                kw[name] = None
            elif cell == "inf":
                kw[name] = math.inf
            elif name in ("gap_fs_pb", "normality_dev"):
                kw[name] = float(cell)
            else:
                kw[name] = int(cell)
        rows.append(DepthProfileRow(**kw))
    return rows


class TransducedSource(BitStreamSource):
    """Image of a stream under a total transducer, with the input/output
    length correspondence kept for witness accounting."""

    def __init__(self, inner: BitStreamSource, machine: FstMachine):
        self.inner = inner
        self.machine = machine
        self.label = f"{machine.label or 'fst'}({inner.label})"
        self._out = ""
        self._in_len = 0
        self._state = machine.start
        self._out_len_at = [0]  # output length after each consumed bit

    def _extend_to(self, n: int) -> None:
        while len(self._out) < n:
            want = self._in_len + max(1024, n - len(self._out))
            chunk = self.inner.prefix(want)[self._in_len :]
            if not chunk:
                raise DomainError("inner stream dried up")
            q = self._state
            parts = []
            total = len(self._out)
            for b in chunk:
                parts.append(self.machine.outputs[(q, b)])
                total += len(parts[-1])
                q = self.machine.transitions[(q, b)]
                self._out_len_at.append(total)
            self._state = q
            self._in_len += len(chunk)
            self._out += "".join(parts)

    def prefix(self, n: int) -> str:
        self._extend_to(n)
        return self._out[:n]

    def aligned_input_len(self, n: int):
        """Largest m with |image of inner prefix(m)| == n, or None if no
        inner prefix maps to exactly n bits."""
        self._extend_to(n)
        lens = self._out_len_at
        # the list is nondecreasing; binary search the rightmost == n
        lo, hi = 0, len(lens) - 1
        best = None
        while lo <= hi:
            mid = (lo + hi) // 2
            if lens[mid] < n:
                lo = mid + 1
            elif lens[mid] > n:
                hi = mid - 1
            else:
                best = mid
                lo = mid + 1
        return best


@dataclass
class SglReport:
    base_rows: list = field(default_factory=list)
    image_rows: list = field(default_factory=list)
    retention: list = field(default_factory=list)  # gap ratio image/base
    beta: float = 1.0


def _silent_cycle_violation(machine: FstMachine) -> bool:
    """A lossless transducer cannot traverse a state cycle emitting
    nothing; such a machine would stall the gap accounting."""
    silent = {}
    for (q, b), nxt in machine.transitions.items():
        if machine.outputs[(q, b)] == "":
            silent.setdefault(q, []).append(nxt)
    seen = {}

    def walk(q, stack):
        if q in stack:
            return True
        if seen.get(q):
            return False
        stack.add(q)
        for nxt in silent.get(q, []):
            if walk(nxt, stack):
                return True
        stack.discard(q)
        seen[q] = True
        return False

    return any(walk(q, set()) for q in silent)


def sgl_experiment(source: BitStreamSource, machine: FstMachine, n_list,
                   config: ProfileConfig | None = None,
                   il_limit: int = 12) -> SglReport:
    """Paired profiles of a stream and its transduced image.

    The machine must be lossless up to the certification bound and must
    output within every state cycle.  beta is the reciprocal of the
    longest single-transition output, the factor by which a gap can shrink
    under the transformation.
    """
    verdict = il_check(machine, il_limit)
    if not verdict.ok:
        raise DomainError(
            f"transducer is not lossless at bound {il_limit}: "
            f"{verdict.counterexample}"
        )
    if _silent_cycle_violation(machine):
        raise DomainError("transducer has a silent state cycle")
    max_out = max(len(w) for w in machine.outputs.values())
    beta = 1.0 / max_out
    image = TransducedSource(source, machine)
    report = SglReport(beta=beta)
    report.base_rows = profile(source, n_list, config)
    report.image_rows = profile(image, n_list, config)
    for b, i in zip(report.base_rows, report.image_rows):
        if b.gap_fs_pb and i.gap_fs_pb is not None and b.gap_fs_pb > 0:
            report.retention.append(i.gap_fs_pb / b.gap_fs_pb)
        else:
            report.retention.append(None)
    return report
