"""Transducer simulators, compression measures and depth-gap profiling."""

from .words import (
    check_word, double, reverse, pow_k, pref,
    block_frequency_deviation, max_block_deviation,
    BitStreamSource, PeriodicSource, ChampernowneSource,
)
from .lz78 import Lz78Parse, lz78_parse, lz78_encoded_len, lz78_decode
from .fst import (
    FstMachine, IlVerdict, fst_run, il_check, il_decode, fst_compress_len,
    identity_fst, doubler_fst, silent_fst, counting_echo_fst,
)
from .pebble import (
    PebbleMachine, PbConfiguration, initial_configuration, pb_step, pb_run,
    pb_pipeline, identity_pb,
)
from .pushdown import (
    PdcMachine, PdcRun, pdc_validate, pdc_run, pdc_run_from, pdc_il_check,
    pdc_il_decode, updc_height_invariance, identity_pdc,
)
from .complexity import (
    ComplexityResult, FstCodec, PbCodec, sigma_size, enumerate_machines,
    dk_fst, dk_fst_bruteforce, PbPoolEntry, dk_pb_upper, default_pb_pool,
    density_curves,
)
from .sequences import (
    t_set, Thm4Params, Remark1Params, Thm4Source, Remark1Source, PrefSource,
    make_source,
)
from .constructions import (
    WitnessString, pref_machine, print_reverse_machine, power_print_machine,
    cprime_machine, cprime_for, pref_witness, thm4_witness, remark1_witness,
    check_witness,
)
from .machine_io import parse_machine, serialize_machine, load_machine, save_machine
from .profiles import (
    ProfileConfig, DepthProfileRow, profile, emit_csv, parse_csv,
    TransducedSource, sgl_experiment,
)

__version__ = "0.1.0"
