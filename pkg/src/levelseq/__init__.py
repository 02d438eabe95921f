"""m-sequences over prime fields and their 2-adic level sequences."""

from .fieldcore import (
    FieldOps,
    PrimeDesc,
    PseudoMersenneDesc,
    fe_add,
    fe_mul,
    fe_neg,
    mersenne_add,
    mersenne_mul_pow2,
    reduce_pseudo_mersenne,
)
from .levels import LevelSeq, bit_level, compute_i0, expand_levels, extract_level, recompose
from .lfsr import CharPoly, MSeq, factor_u64, is_primitive, mseq_generate, mseq_shift, seq_period, seq_scale
from .primesearch import is_prime_u64, search_pseudo_mersenne
from .verify import (
    CrossingCounts,
    VerificationReport,
    count_level_crossings,
    verify_crossings,
    verify_lemma1,
    verify_lemma2,
    verify_period_corollary,
    verify_star_identity,
    verify_theorem,
)

__version__ = "0.1.0"
