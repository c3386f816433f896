"""Secure two-party comparison toolkit.

Three protocols decide a > b on private inputs: a homomorphic
blinded-difference exchange, a helper-party scheme built on shared
order-preserving functions, and a direct two-party scheme built on per-bit
oblivious transfer.  Everything runs over an in-memory message network with
deterministic seeds and full transcripts, so runs are reproducible and
auditable byte for byte.
"""

from .bits import BitString, complement, from_bits, msb, to_bits, twos_complement_encode, xor
from .opf import (
    GeneralOPF,
    PerBitMap,
    PointOPF,
    SharedParams,
    construct_at_point,
    eval_opf,
    eval_point,
    output_bounds,
    shared_eval,
    shared_output_bits,
    validate_general,
)
from .prg import Seed, expand, int_in_range
from .protocols import (
    Outcome,
    ProtocolConfig,
    Relation,
    oracle,
    run_protocol,
    run_protocol_a,
    run_protocol_b,
    run_protocol_c,
)
from .simnet import Message, PartyId, Transcript

__version__ = "0.1.0"

__all__ = [
    "BitString",
    "GeneralOPF",
    "Message",
    "Outcome",
    "PartyId",
    "PerBitMap",
    "PointOPF",
    "ProtocolConfig",
    "Relation",
    "Seed",
    "SharedParams",
    "Transcript",
    "complement",
    "construct_at_point",
    "eval_opf",
    "eval_point",
    "expand",
    "from_bits",
    "int_in_range",
    "msb",
    "oracle",
    "output_bounds",
    "run_protocol",
    "run_protocol_a",
    "run_protocol_b",
    "run_protocol_c",
    "shared_eval",
    "shared_output_bits",
    "to_bits",
    "twos_complement_encode",
    "validate_general",
    "xor",
]
