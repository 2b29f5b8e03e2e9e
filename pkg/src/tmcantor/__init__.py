"""Block frequencies in mirror sequences, critical bases, unique expansions and
dimensions of intersections of Cantor sets with their translates."""
from .reals import PrecisionReal, Undecidable
from .words import EventuallyPeriodicSeq, Word, count_boundary, count_occurrences, reflect
from .mirror import MirrorSeed, THUE_MORSE, kl_digits, kl_signed_prefix, lambda_prefix, mirror_prefix
from .frequency import DensityResult, block_density, empirical_block_density
from .bases import (
    base_of_word, critical_base_qc, generalized_golden_ratio, komornik_loreti_base,
    ladder_base, locate_base, omega_word,
)
from .expansions import UniquenessVerdict, is_unique_expansion, quasi_greedy_prefix
from .dimension import (
    LogLinearValue, dimension_estimate, dimension_of_periodic, dimension_set,
    is_self_similar, pm_zero_sequence, self_similar_family, tm_dimension_formula,
)

__version__ = "0.1.0"
