"""nesieve: a conductor sieve for norm-Euclidean Galois fields of odd prime
degree, with recomputation of the explicit constants behind it.

The hot kernels (character evaluation, cubic residue symbols, the per-
conductor scan) run in a compiled extension when it was built, and in a pure-
Python fallback otherwise; ``nesieve.backend.BACKEND`` names the active one.
"""

from .backend import BACKEND
from .bounds import (
    burgess_C,
    cl_bound,
    check_db_inequality,
    d_constant,
    e_constant,
    eprime_constant,
    special_threshold,
    verify_pisum,
    verify_prime_coprime_lemma,
)
from .character import (
    CharValue,
    CharacterSpec,
    IntervalSumResult,
    build_powmod_engine,
    build_table_engine,
    interval_sum,
    make_spec,
)
from .eisenstein import (
    EisensteinInt,
    CubicSymbol,
    cubic_char_engine,
    cubic_symbol,
    gcd,
    primary_associate,
    prime_over,
)
from .errors import (
    CheckpointError,
    NesieveError,
    NoCharacterError,
    ResourceLimitError,
    UnsupportedEngineError,
)
from .primes import PrimeList, inv_mod, is_prime, pow_mod, primes_in_range, sieve_eratosthenes
from .sieve import (
    SieveOutcome,
    SieveReport,
    Witness,
    build_engine,
    check_aux_condition,
    check_witness_condition,
    heuristic_eval_estimate,
    sieve_conductor,
    sieve_range,
)

__version__ = "0.1.0"
