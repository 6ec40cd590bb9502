"""Built-in consistency suite: engines against each other, outputs against
frozen reference values.  Returns structured results so callers (CLI, tests)
can decide how to render failures.
"""

from dataclasses import dataclass
from decimal import Decimal

import numpy as np

from . import bounds, golden
from .backend import kernel
from .character import make_spec, build_table_engine, build_powmod_engine
from .eisenstein import cubic_char_engine, prime_over
from .primes import sieve_eratosthenes
from .sieve import sieve_range


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _check_constant_table(name, computed, expected):
    for key, value in computed:
        want = Decimal(expected[key])
        if value != want:
            label = "r" if name == "c-burgess" else "k"
            return CheckResult(
                f"table {name}",
                False,
                f"table {name} row {label}={key}: computed {value}, expected {want}",
            )
    return CheckResult(f"table {name}", True)


def _check_cl_table():
    for res in bounds.cl_table():
        published = golden.CL_EXPONENTS[res.ell]
        if abs(res.exponent - published) > 1:
            return CheckResult(
                "table c-ell",
                False,
                f"table c-ell row ell={res.ell}: computed 10^{res.exponent}, "
                f"published 10^{published}",
            )
        if not bounds.check_db_inequality(res.ell, res.k, res.c_ell):
            return CheckResult(
                "table c-ell", False,
                f"failure inequality does not hold at the returned bound for ell={res.ell}",
            )
    return CheckResult("table c-ell", True)


def _exponent_arrays(f, ell, primes, with_cubic):
    spec = make_spec(f, ell)
    tab = build_table_engine(spec, primes=primes).table
    arrays = {
        "table": np.concatenate([tab, tab]),  # n in [0, 2f)
        "powmod": kernel.powmod_exponents(f, ell, spec.w, 0, 2 * f),
    }
    if with_cubic:
        pi = prime_over(spec.f, spec.w)
        arrays["cubic"] = kernel.cubic_exponents(f, pi.a, pi.b, 0, 2 * f)
    return arrays


def _check_engine_agreement(fmax, primes):
    for ell in (3, 5, 7):
        for f in primes:
            f = int(f)
            if f > fmax:
                break
            if f % ell != 1:
                continue
            arrays = _exponent_arrays(f, ell, primes, with_cubic=(ell == 3))
            ref = arrays.pop("powmod")
            for name, arr in arrays.items():
                if not np.array_equal(ref, arr):
                    n = int(np.nonzero(ref != arr)[0][0])
                    return CheckResult(
                        "engine agreement", False,
                        f"{name} engine disagrees with powmod at f={f}, ell={ell}, n={n}",
                    )
    return CheckResult("engine agreement", True)


def _check_candidate_table(bmax, degrees):
    for ell in degrees:
        expected = [c for c in golden.TABLE2[ell] if c <= bmax]
        got = sieve_range(ell, 2, bmax).survivors
        if got != expected:
            return CheckResult(
                "candidate table", False,
                f"survivor list for ell={ell}, f<={bmax} is {got}, expected {expected}",
            )
    return CheckResult("candidate table", True)


def _check_witness_block():
    report = sieve_range(3, 9999999600, 10**10, engine="cubic", want_witnesses=True)
    got = tuple(w.text_line() for w in report.witnesses[-10:])
    if got != golden.WITNESS_BLOCK or report.survivors:
        return CheckResult(
            "witness block", False,
            f"tail of the 1e10 run does not match the reference block: {got}",
        )
    return CheckResult("witness block", True)


def run_selfcheck(quick=False):
    """Run the suite; returns a list of CheckResult."""
    results = [
        _check_constant_table("c-burgess", bounds.burgess_table(), golden.BURGESS_C),
        _check_constant_table("d1", bounds.d1_table(), golden.D1),
        _check_constant_table("d2", bounds.d2_table(), golden.D2),
        _check_constant_table(
            "e", [(k, e) for k, e, _ in bounds.e_table()], golden.E
        ),
        _check_cl_table(),
    ]
    fmax = 300 if quick else 2000
    primes = sieve_eratosthenes(max(2 * fmax, 1000))
    results.append(_check_engine_agreement(fmax, primes.primes))
    if quick:
        results.append(_check_candidate_table(2000, (3, 5)))
    else:
        results.append(_check_candidate_table(10**4, (3, 5)))
        results.append(_check_witness_block())
    return results
