"""Computationally relaxed locally decodable codes.

Two constructions built on a hash-and-sign signature layer:

* a Hamming-channel code (sign-each-block over a systematic
  Reed-Solomon inner code, majority public-key recovery), and
* an insertion/deletion code (signed blocks wrapped in zero buffers
  over a self-synchronizing inner code, decoded by marker
  resynchronization and noisy binary search),

together with budget-enforced adversarial channels, exact analysis
oracles (block decomposition, gamma-goodness), and a statistical
harness estimating the local-decoding guarantees.
"""

from .bits import (BitString, DistanceReport, ReceivedWordOracle,
                   edit_distance, hamming_distance, oracle_read,
                   raw_edit_distance, read_codeword, write_codeword)
from .errors import (BoundViolated, BudgetExceeded, ConfigInvalid,
                     CrldcError, EmptyList, IndexOutOfRange,
                     InfeasibleTarget, LengthMismatch, MalformedInput,
                     OutOfRange, ParamMismatch, TTooSmall,
                     UnsupportedLambda)
from .hamming import (DecodeOutcome, HammingParams, SignedBlockPayload,
                      compute_hamming_params, dec_h, dec_h_strawman,
                      enc_h, index_field, majority, min_mu_for)
from .inner_hamming import InnerHammingCode
from .inner_insdel import InnerInsDelCode
from .insdel import (GAMMA, BlockDecomposition, GammaGoodReport,
                     InsDelParams, block_dec, classify_gamma_good,
                     compute_insdel_params, dec_ins, dec_ins_positional,
                     enc_ins, nbs, optimal_block_decomposition)
from .sigscheme import (ForgeryAttempt, HashModulusScheme,
                        SHIPPED_ADVERSARIES, SignatureKeyPair,
                        run_forgery_game)

__version__ = "0.1.0"

__all__ = [
    "BitString", "DistanceReport", "ReceivedWordOracle", "oracle_read",
    "hamming_distance", "edit_distance", "raw_edit_distance",
    "read_codeword", "write_codeword",
    "CrldcError", "LengthMismatch", "OutOfRange", "IndexOutOfRange",
    "ParamMismatch", "UnsupportedLambda", "MalformedInput",
    "InfeasibleTarget", "EmptyList", "TTooSmall", "BudgetExceeded",
    "ConfigInvalid", "BoundViolated",
    "HammingParams", "SignedBlockPayload", "DecodeOutcome",
    "compute_hamming_params", "min_mu_for", "enc_h", "dec_h",
    "dec_h_strawman", "majority", "index_field",
    "InnerHammingCode", "InnerInsDelCode",
    "GAMMA", "InsDelParams", "compute_insdel_params", "enc_ins",
    "dec_ins", "dec_ins_positional", "block_dec", "nbs",
    "BlockDecomposition", "GammaGoodReport",
    "optimal_block_decomposition", "classify_gamma_good",
    "SignatureKeyPair", "ForgeryAttempt", "HashModulusScheme",
    "run_forgery_game", "SHIPPED_ADVERSARIES",
    "__version__",
]
