"""Parity between the compiled kernel and the pure-Python reference.

The pure-Python module is the semantic reference; when the extension was
built, every exported function must agree with it exactly.
"""

import os
import random
import subprocess
import sys

import numpy as np
import pytest

from nesieve import _pykernel
from nesieve.backend import available_kernels
from nesieve.character import find_primitive_root, make_spec
from nesieve.eisenstein import prime_over
from nesieve.primes import sieve_eratosthenes

kernels = available_kernels()
needs_c = pytest.mark.skipif("c" not in kernels, reason="compiled kernel not built")


@pytest.fixture(scope="module")
def ck():
    return kernels["c"]


@needs_c
class TestScalarParity:
    def test_pow_mod(self, ck):
        rng = random.Random(1)
        for _ in range(2000):
            m = rng.randrange(2, 1 << 62)
            b = rng.randrange(0, m)
            e = rng.randrange(0, 1 << 62)
            assert _pykernel.pow_mod(b, e, m) == ck.pow_mod(b, e, m)

    def test_is_prime(self, ck):
        rng = random.Random(2)
        values = [rng.randrange(0, 1 << 63) for _ in range(3000)]
        values += list(range(1000)) + [9999999967, 3215031751]
        for n in values:
            assert _pykernel.is_prime(n) == ck.is_prime(n)

    def test_inv_mod(self, ck):
        rng = random.Random(3)
        for _ in range(2000):
            m = rng.randrange(2, 1 << 60)
            a = rng.randrange(1, m)
            try:
                expect = _pykernel.inv_mod(a, m)
            except ValueError:
                expect = ValueError
            try:
                got = ck.inv_mod(a, m)
            except ValueError:
                got = ValueError
            assert expect == got

    def test_eis_gcd_and_symbol(self, ck):
        rng = random.Random(4)
        for _ in range(3000):
            a1, b1, a2, b2 = (rng.randrange(-10**9, 10**9) for _ in range(4))
            assert _pykernel.eis_gcd(a1, b1, a2, b2) == ck.eis_gcd(a1, b1, a2, b2)
            try:
                expect = _pykernel.cubic_symbol(a1, b1, a2, b2)
            except ValueError:
                expect = ValueError
            try:
                got = ck.cubic_symbol(a1, b1, a2, b2)
            except ValueError:
                got = ValueError
            assert expect == got, (a1, b1, a2, b2)

    def test_primary_associate(self, ck):
        rng = random.Random(5)
        for _ in range(2000):
            a, b = rng.randrange(-10**6, 10**6), rng.randrange(-10**6, 10**6)
            if _pykernel._norm(a, b) % 3 == 0:
                continue
            assert _pykernel.primary_associate(a, b) == ck.primary_associate(a, b)

    def test_overflow_falls_back_cleanly(self, ck):
        with pytest.raises(OverflowError):
            ck.cubic_symbol(1 << 62, 0, 5, 1)


@needs_c
class TestBulkParity:
    def test_scan_conductor(self, ck):
        primes = sieve_eratosthenes(10**5).primes
        for f in (7, 103, 1597, 9973, 9999999673, 9999999781):
            spec = make_spec(f, 3)
            pi = prime_over(f, spec.w)
            for mode, args in (
                (_pykernel.MODE_POWMOD, dict(w=spec.w)),
                (_pykernel.MODE_CUBIC, dict(pi_a=pi.a, pi_b=pi.b)),
            ):
                expect = _pykernel.scan_conductor(f, 3, primes, mode, **args)
                got = ck.scan_conductor(f, 3, primes, mode, **args)
                assert expect == got

    def test_scan_conductor_table_mode(self, ck):
        primes = sieve_eratosthenes(10**4).primes
        for f, ell in ((31, 3), (41, 5), (911, 7)):
            spec = make_spec(f, ell)
            g = find_primitive_root(f)
            table = _pykernel.build_exponent_table(f, ell, spec.w, g)
            expect = _pykernel.scan_conductor(f, ell, primes, _pykernel.MODE_TABLE,
                                              table=table)
            got = ck.scan_conductor(f, ell, primes, ck.MODE_TABLE, table=table)
            assert expect == got

    def test_exponent_batches(self, ck):
        for f, ell in ((31, 3), (151, 5), (911, 7), (9973, 3)):
            spec = make_spec(f, ell)
            g = find_primitive_root(f)
            assert np.array_equal(
                _pykernel.build_exponent_table(f, ell, spec.w, g),
                ck.build_exponent_table(f, ell, spec.w, g),
            )
            assert np.array_equal(
                _pykernel.powmod_exponents(f, ell, spec.w, 0, 2 * f),
                ck.powmod_exponents(f, ell, spec.w, 0, 2 * f),
            )
            if ell == 3:
                pi = prime_over(f, spec.w)
                assert np.array_equal(
                    _pykernel.cubic_exponents(f, pi.a, pi.b, 0, 2 * f),
                    ck.cubic_exponents(f, pi.a, pi.b, 0, 2 * f),
                )


def test_pure_python_env_forces_fallback():
    code = (
        "import nesieve.backend as b; print(b.BACKEND)"
    )
    env = dict(os.environ, NESIEVE_PURE_PYTHON="1")
    src = str(__import__("pathlib").Path(__file__).resolve().parent.parent / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True,
                          text=True, env=env)
    assert proc.stdout.strip() == "python"


@needs_c
def test_survivors_identical_across_backends():
    # full pipeline through the pure backend in a subprocess
    script = (
        "from nesieve.sieve import sieve_range;"
        "print(sieve_range(3, 2, 3000).survivors)"
    )
    env = dict(os.environ, NESIEVE_PURE_PYTHON="1")
    src = str(__import__("pathlib").Path(__file__).resolve().parent.parent / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run([sys.executable, "-c", script], capture_output=True,
                          text=True, env=env)
    from nesieve.sieve import sieve_range

    assert proc.stdout.strip() == str(sieve_range(3, 2, 3000).survivors)
