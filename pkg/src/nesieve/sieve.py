"""The conductor sieve: witness-based elimination of candidate fields.

For each prime conductor f = 1 (mod ell) the scan walks the shared prime
list, finds the two smallest non-residue primes q1 < q2, and then hunts for a
prime r with chi(r) = chi(q2)^-1 whose class mod q1^2 avoids a small excluded
set.  A triple (q1, q2, r) surviving the congruence and size clauses is a
witness that the field of conductor f is not norm-Euclidean; conductors with
no witness are emitted as survivors (candidate norm-Euclidean fields), so
running out of primes is always sound.
"""

import math
import multiprocessing
import os
import re
import time
from dataclasses import dataclass, field

from .backend import kernel, BACKEND
from .character import make_spec, build_table_engine, build_powmod_engine
from .eisenstein import cubic_char_engine
from .errors import CheckpointError, ResourceLimitError, UnsupportedEngineError
from .primes import PrimeList, sieve_eratosthenes, primes_in_range, inv_mod, is_prime

ELIMINATED = "eliminated"
SURVIVOR_RAN_OUT = "survivor:ran_out_of_primes"
SURVIVOR_SIZE = "survivor:size_clause"
SURVIVOR_SPECIAL = "survivor:special_conductor"

ENGINE_CHOICES = ("auto", "table", "powmod", "cubic")

# Conductors must stay below the width the kernels guarantee.
MAX_CONDUCTOR = (1 << 63) - 1

# The r-scan walks a fixed prime list.  Exhausting it is sound (the conductor
# is then kept as a survivor), but a list capped at max(1000, sqrt(B)) is too
# short in practice: for a handful of conductors with q1 = 2 every admissible
# candidate below the cap falls in the excluded class mod 4.  Scanning up to
# min(B, 10**5) removes those spurious survivors; beyond 1e5 the chance of a
# conductor needing a deeper scan is vanishingly small.
DEFAULT_SCAN_LIMIT = 10**5

_WITNESS_RE = re.compile(r"^f=(\d+), q1=(\d+), q2=(\d+), r=(\d+)$")


@dataclass(frozen=True)
class Witness:
    """Certificate (q1, q2, r) eliminating conductor f at degree ell."""

    f: int
    ell: int
    q1: int
    q2: int
    r: int

    def text_line(self):
        return f"f={self.f}, q1={self.q1}, q2={self.q2}, r={self.r}"


def parse_witness_line(line, ell):
    m = _WITNESS_RE.match(line.strip())
    if not m:
        raise ValueError(f"malformed witness line: {line!r}")
    f, q1, q2, r = (int(g) for g in m.groups())
    return Witness(f, ell, q1, q2, r)


@dataclass(frozen=True)
class SieveOutcome:
    """Verdict for one conductor: a witness, or a survivor with its reason."""

    f: int
    ell: int
    verdict: str
    witness: Witness | None
    q1: int
    q2: int
    evals: int

    @property
    def is_survivor(self):
        return self.verdict != ELIMINATED

    def record(self):
        return {
            "f": self.f,
            "verdict": self.verdict,
            "q1": self.q1,
            "q2": self.q2,
            "r": self.witness.r if self.witness else 0,
            "evals": self.evals,
        }


@dataclass
class SieveReport:
    ell: int
    lo: int
    hi: int
    engine: str
    workers: int
    survivors: list[int] = field(default_factory=list)
    witnesses: list[Witness] | None = None
    conductors: int = 0
    eliminated: int = 0
    evals: int = 0
    elapsed: float = 0.0
    backend: str = BACKEND
    resumed_from: int | None = None

    @property
    def avg_evals(self):
        return self.evals / self.conductors if self.conductors else 0.0

    @property
    def heuristic_avg_evals(self):
        return heuristic_eval_estimate(self.ell)

    def summary(self):
        return (
            f"ell={self.ell} range=[{self.lo},{self.hi}] engine={self.engine} "
            f"backend={self.backend} workers={self.workers} "
            f"conductors={self.conductors} eliminated={self.eliminated} "
            f"survivors={len(self.survivors)} evals={self.evals} "
            f"avg_evals={self.avg_evals:.2f} "
            f"heuristic_avg={self.heuristic_avg_evals:.2f} "
            f"elapsed={self.elapsed:.2f}s"
        )


def heuristic_eval_estimate(ell):
    """Expected character evaluations per conductor: ell * (2 + 2/(ell-1))."""
    return ell * (2 + 2 / (ell - 1))


def congruence_set(f, q1, q2):
    """The excluded classes {f * q2^-1 * k^-1 mod q1^2, k = 1..q1-1}.

    r is admissible exactly when r mod q1^2 avoids this set, equivalently
    when r*q2*k != f (mod q1^2) for every k in [1, q1).
    """
    q1sq = q1 * q1
    base = f % q1sq * inv_mod(q2, q1sq) % q1sq
    return {base * inv_mod(k, q1sq) % q1sq for k in range(1, q1)}


def smallest_nonresidues(engine, primes):
    """(q1, q2): the two smallest primes with a nontrivial character value."""
    f = engine.spec.f
    found = []
    for p in primes:
        p = int(p)
        if p >= f:
            break
        if engine.exponent(p) != 0:
            found.append(p)
            if len(found) == 2:
                return found[0], found[1]
    return (found[0], 0) if found else (0, 0)


def check_witness_condition(f, ell, q1, q2, r, engine, primes=None):
    """Full witness validation (the congruence-and-size failure condition).

    Checks that q1 < q2 < r < f are primes, chi(q1) and chi(q2) are
    nontrivial, chi(r) = chi(q2)^-1, gcd(r, q1*q2) = 1, that r*q2*k != f
    (mod q1^2) for all k in [1, q1), and that (q1-1)(q2*r-1) <= f.  When a
    prime list is supplied, also confirms q1 and q2 really are the two
    smallest non-residue primes.
    """
    if not (1 < q1 < q2 < r < f):
        return False
    if math.gcd(r, q1 * q2) != 1:
        return False
    if not (is_prime(q1) and is_prime(q2) and is_prime(r)):
        return False
    e1 = engine.exponent(q1)
    e2 = engine.exponent(q2)
    er = engine.exponent(r)
    if e1 in (0, kernel.ZERO_SENTINEL) or e2 in (0, kernel.ZERO_SENTINEL):
        return False
    if er != (ell - e2) % ell:
        return False
    if primes is not None and smallest_nonresidues(engine, primes) != (q1, q2):
        return False
    q1sq = q1 * q1
    fm = f % q1sq
    for k in range(1, q1):
        if r * q2 * k % q1sq == fm:
            return False
    return (q1 - 1) * (q2 * r - 1) <= f


# Side conditions and coefficients of the four logarithmic failure
# conditions (cross-checks only; the sieve itself uses the congruence one).
_REL_GUARD = 1e-12


def check_aux_condition(cond, f, q1, q2, r):
    """Alternative failure conditions 2-5; True/False, or None if inapplicable.

    2: q1 not in {2,3},    3*q1*q2*r*log(q1) < f
    3: q1 not in {2,3,7},  2.1*q1*q2*r*log(q1) < f
    4: q1 = 2, q2 != 3,    3*q2*r < f
    5: q1 = 3, q2 != 5,    5*q2*r < f

    Integer comparisons are exact; log-bearing ones use doubles with a
    relative guard and report ties as inapplicable.
    """
    if cond == 2:
        if q1 in (2, 3):
            return None
        lhs = 3.0 * q1 * q2 * r * math.log(q1)
    elif cond == 3:
        if q1 in (2, 3, 7):
            return None
        lhs = 2.1 * q1 * q2 * r * math.log(q1)
    elif cond == 4:
        if q1 != 2 or q2 == 3:
            return None
        return 3 * q2 * r < f
    elif cond == 5:
        if q1 != 3 or q2 == 5:
            return None
        return 5 * q2 * r < f
    else:
        raise ValueError(f"condition index must be 2..5, got {cond}")
    if lhs < f * (1 - _REL_GUARD):
        return True
    if lhs > f * (1 + _REL_GUARD):
        return False
    return None  # too close to call in double precision


def build_engine(f, ell, choice="auto", primes=None, limit=None):
    """Engine for one conductor.

    auto picks cubic reciprocity for ell = 3 and modular exponentiation
    otherwise; the lookup table must be requested explicitly (its O(f) build
    cost only pays off for bulk evaluations at a fixed small conductor).
    """
    if choice not in ENGINE_CHOICES:
        raise ValueError(f"unknown engine {choice!r}")
    if choice == "cubic" and ell != 3:
        raise UnsupportedEngineError("engine 'cubic' requires ell = 3")
    spec = make_spec(f, ell)
    if choice == "auto":
        choice = "cubic" if ell == 3 else "powmod"
    if choice == "table":
        return build_table_engine(spec, primes=primes, limit=limit)
    if choice == "cubic":
        return cubic_char_engine(spec)
    return build_powmod_engine(spec)


def sieve_conductor(f, ell, primes, engine):
    """Run the per-conductor scan and classify the outcome.

    Witnesses are re-validated through the full condition checker before
    being emitted, so an eliminated verdict is machine-checked.
    """
    if f % ell != 1:
        raise ValueError(f"conductor {f} is not 1 mod {ell}")
    if engine.spec.f != f or engine.spec.ell != ell:
        raise ValueError("engine was built for a different (f, ell)")
    plist = primes.primes if isinstance(primes, PrimeList) else primes
    mode, w, pi_a, pi_b, table = engine.scan_args()
    q1, q2, r, evals = kernel.scan_conductor(
        int(f), int(ell), plist, mode, w, pi_a, pi_b, table
    )
    if r == 0:
        return SieveOutcome(f, ell, SURVIVOR_RAN_OUT, None, q1, q2, evals)
    if (q1 - 1) * (q2 * r - 1) > f:
        return SieveOutcome(f, ell, SURVIVOR_SIZE, None, q1, q2, evals)
    if not check_witness_condition(f, ell, q1, q2, r, engine, primes=plist):
        raise RuntimeError(f"witness re-validation failed for f={f}")
    return SieveOutcome(f, ell, ELIMINATED, Witness(f, ell, q1, q2, r), q1, q2, evals)


def conductors_in_range(ell, lo, hi, base=None):
    """Ascending conductors in [lo, hi]: primes = 1 (mod ell), plus ell^2."""
    ps = primes_in_range(lo, hi, base)
    out = [int(p) for p in ps[ps % ell == 1]]
    special = ell * ell
    if lo <= special <= hi:
        out.append(special)
        out.sort()
    return out


# ---------------------------------------------------------------------------
# Range driver: chunked, optionally parallel, checkpointable.
# ---------------------------------------------------------------------------

_BASE_CACHE: dict[int, PrimeList] = {}


def _base_primes(limit):
    got = _BASE_CACHE.get(limit)
    if got is None:
        got = _BASE_CACHE[limit] = sieve_eratosthenes(limit)
    return got


def _chunk_task(args):
    ell, lo, hi, choice, base_limit, want_records = args
    base = _base_primes(base_limit)
    records = []
    survivors = []
    witnesses = []
    conductors = eliminated = evals = 0
    for f in conductors_in_range(ell, lo, hi, base):
        if f == ell * ell:
            outcome = SieveOutcome(f, ell, SURVIVOR_SPECIAL, None, 0, 0, 0)
        else:
            engine = build_engine(f, ell, choice, primes=base)
            outcome = sieve_conductor(f, ell, base, engine)
            conductors += 1
            evals += outcome.evals
        if outcome.verdict == ELIMINATED:
            eliminated += 1
            witnesses.append(outcome.witness)
        else:
            survivors.append(f)
        if want_records:
            records.append(outcome.record())
    return survivors, witnesses, records, conductors, eliminated, evals


def _write_checkpoint(path, ell, lo, hi, done, survivors):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write(f"ell={ell} A={lo} B={hi}\n")
        fh.write(f"done={done}\n")
        for s in survivors:
            fh.write(f"{s}\n")
    os.replace(tmp, path)


def read_checkpoint(path):
    """(ell, lo, hi, done, survivors) from a checkpoint file."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    m = re.match(r"^ell=(\d+) A=(\d+) B=(\d+)$", lines[0]) if lines else None
    if not m or len(lines) < 2 or not lines[1].startswith("done="):
        raise CheckpointError(f"{path} is not a checkpoint file")
    ell, lo, hi = (int(g) for g in m.groups())
    done = int(lines[1][5:])
    survivors = [int(ln) for ln in lines[2:] if ln]
    return ell, lo, hi, done, survivors


def scan_prime_limit(hi, cap=DEFAULT_SCAN_LIMIT):
    """Prime-list limit for sieving conductors up to ``hi``."""
    return max(1000, math.isqrt(hi), min(hi, cap))


def sieve_range(
    ell,
    lo,
    hi,
    engine="auto",
    workers=1,
    chunk_width=1_000_000,
    checkpoint=None,
    want_witnesses=False,
    stream=None,
    prime_limit=None,
):
    """Sieve every conductor in [lo, hi] and report survivors in order.

    Work is split into contiguous chunks merged in range order, so the
    survivor list and the streamed records are identical for any worker
    count.  With a checkpoint path, completed chunks are persisted and a
    matching interrupted run resumes past them.
    """
    if not (2 <= lo <= hi):
        raise ValueError("need 2 <= lo <= hi")
    if hi > MAX_CONDUCTOR:
        raise ResourceLimitError(f"upper bound {hi} exceeds the supported 2**63 width")
    if ell < 3 or ell % 2 == 0 or not is_prime(ell):
        raise ValueError(f"ell must be an odd prime, got {ell}")
    if engine not in ENGINE_CHOICES:
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "cubic" and ell != 3:
        raise UnsupportedEngineError("engine 'cubic' requires ell = 3")
    if workers < 1:
        raise ValueError("worker count must be >= 1")

    t0 = time.perf_counter()
    report = SieveReport(ell, lo, hi, engine, workers)
    if want_witnesses:
        report.witnesses = []

    start = lo
    if checkpoint and os.path.exists(checkpoint):
        c_ell, c_lo, c_hi, done, survivors = read_checkpoint(checkpoint)
        if (c_ell, c_lo, c_hi) != (ell, lo, hi):
            raise CheckpointError(
                f"checkpoint {checkpoint} belongs to ell={c_ell} [{c_lo},{c_hi}]"
            )
        report.survivors.extend(survivors)
        report.resumed_from = done
        start = done + 1

    chunks = [
        (a, min(a + chunk_width - 1, hi)) for a in range(start, hi + 1, chunk_width)
    ]
    base_limit = scan_prime_limit(hi) if prime_limit is None else prime_limit
    want_records = stream is not None
    tasks = [
        (ell, a, b, engine, base_limit, want_records) for (a, b) in chunks
    ]

    def consume(chunk, result):
        survivors, witnesses, records, conductors, eliminated, evals = result
        report.survivors.extend(survivors)
        if report.witnesses is not None:
            report.witnesses.extend(witnesses)
        report.conductors += conductors
        report.eliminated += eliminated
        report.evals += evals
        if stream is not None:
            stream(records)
        if checkpoint:
            _write_checkpoint(checkpoint, ell, lo, hi, chunk[1], report.survivors)

    if workers == 1 or len(tasks) <= 1:
        for chunk, task in zip(chunks, tasks):
            consume(chunk, _chunk_task(task))
    else:
        try:
            ctx = multiprocessing.get_context("fork")
        except ValueError:
            ctx = multiprocessing.get_context()
        with ctx.Pool(workers) as pool:
            for chunk, result in zip(chunks, pool.imap(_chunk_task, tasks)):
                consume(chunk, result)

    report.elapsed = time.perf_counter() - t0
    return report
