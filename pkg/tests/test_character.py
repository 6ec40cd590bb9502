import cmath
import math

import numpy as np
import pytest

from nesieve import bounds
from nesieve.character import (
    CharValue,
    build_powmod_engine,
    build_table_engine,
    interval_sum,
    make_spec,
)
from nesieve.errors import NoCharacterError, ResourceLimitError
from nesieve.primes import sieve_eratosthenes, primes_in_range


@pytest.fixture(scope="module")
def primes():
    return sieve_eratosthenes(10**4)


class TestMakeSpec:
    def test_f7(self):
        # n0 = 2: 2^((7-1)/3) = 4 != 1
        assert make_spec(7, 3).w == 4

    def test_f13(self):
        # 2^4 = 16 = 3 (mod 13)
        assert make_spec(13, 3).w == 3

    def test_no_character(self):
        with pytest.raises(NoCharacterError):
            make_spec(11, 3)

    def test_w_has_exact_order(self):
        for f in (7, 31, 9999999673):
            spec = make_spec(f, 3)
            assert pow(spec.w, 3, f) == 1 and spec.w != 1

    def test_rejects_composite_conductor(self):
        with pytest.raises(ValueError):
            make_spec(25, 3)


class TestTableEngine:
    def test_cubes_mod_7(self, primes):
        engine = build_table_engine(make_spec(7, 3), primes=primes.primes)
        cubes = {n**3 % 7 for n in range(1, 7)}
        assert cubes == {1, 6}
        for n in range(1, 7):
            assert (engine.exponent(n) == 0) == (n in cubes)

    def test_value_at_one(self, primes):
        engine = build_table_engine(make_spec(7, 3), primes=primes.primes)
        assert engine.eval(1) == CharValue(3, 0)

    def test_zero_at_multiples(self, primes):
        engine = build_table_engine(make_spec(7, 3), primes=primes.primes)
        assert engine.eval(7).is_zero
        assert engine.eval(0).is_zero
        assert engine.eval(14).is_zero

    def test_cap(self):
        spec = make_spec(10009, 3)
        with pytest.raises(ResourceLimitError):
            build_table_engine(spec, limit=10**4)

    def test_cap_env_var(self, monkeypatch):
        monkeypatch.setenv("NESIEVE_TABLE_LIMIT", "100")
        with pytest.raises(ResourceLimitError):
            build_table_engine(make_spec(10009, 3))
        monkeypatch.delenv("NESIEVE_TABLE_LIMIT")
        assert build_table_engine(make_spec(7, 3)) is not None


class TestPowmodEngine:
    def test_f7_values(self):
        engine = build_powmod_engine(make_spec(7, 3))
        # 2^2 = 4 = w^1 mod 7
        assert engine.eval(2) == CharValue(3, 1)
        # 6^2 = 36 = 1 mod 7
        assert engine.eval(6) == CharValue(3, 0)

    def test_f13(self):
        engine = build_powmod_engine(make_spec(13, 3))
        # 5^4 = 625 = 1 mod 13
        assert engine.eval(5) == CharValue(3, 0)

    def test_zero(self):
        engine = build_powmod_engine(make_spec(13, 3))
        assert engine.eval(26).is_zero


class TestCharValue:
    def test_inverse(self):
        v = CharValue(5, 2)
        assert v.inverse() == CharValue(5, 3)
        assert (v * v.inverse()).is_one

    def test_zero_inverse(self):
        with pytest.raises(ZeroDivisionError):
            CharValue(3, None).inverse()

    def test_multiplicative_structure(self):
        assert CharValue(3, 1) * CharValue(3, 2) == CharValue(3, 0)
        assert (CharValue(3, 1) * CharValue(3, None)).is_zero


class TestCharacterLaws:
    def test_multiplicativity_fuzz(self, primes):
        rng = np.random.default_rng(3)
        for f, ell in ((31, 3), (41, 5), (29, 7), (9973, 3)):
            engine = build_powmod_engine(make_spec(f, ell))
            for _ in range(2500):
                m = int(rng.integers(1, f))
                n = int(rng.integers(1, f))
                em, en = engine.exponent(m), engine.exponent(n)
                assert engine.exponent(m * n) == (em + en) % ell

    def test_equidistribution(self, primes):
        # each exponent value is attained exactly (f-1)/ell times on [1, f)
        for f, ell in ((7, 3), (31, 3), (41, 5), (1597, 3), (911, 7)):
            engine = build_table_engine(make_spec(f, ell), primes=primes.primes)
            counts = np.bincount(engine.table[1:], minlength=ell)
            assert list(counts[:ell]) == [(f - 1) // ell] * ell

    def test_exact_order(self, primes):
        # the image generates all ell exponents (primitive of exact order ell)
        for f, ell in ((13, 3), (11, 5), (29, 7)):
            engine = build_table_engine(make_spec(f, ell), primes=primes.primes)
            assert set(int(e) for e in engine.table[1:]) == set(range(ell))


class TestIntervalSum:
    def test_full_period_orthogonality(self, primes):
        engine = build_table_engine(make_spec(7, 3), primes=primes.primes)
        assert interval_sum(engine, 0, 6).magnitude == pytest.approx(0, abs=1e-9)

    def test_extra_zero_term(self, primes):
        engine = build_table_engine(make_spec(7, 3), primes=primes.primes)
        res = interval_sum(engine, 0, 7)
        assert res.magnitude == pytest.approx(0, abs=1e-9)
        assert res.total == 6

    def test_against_complex_oracle(self, primes):
        engine = build_table_engine(make_spec(31, 3), primes=primes.primes)
        # independent oracle: term-by-term complex accumulation
        direct = sum(engine.eval(n).as_complex() for n in range(1, 11))
        res = interval_sum(engine, 0, 10)
        assert res.magnitude == pytest.approx(abs(direct), rel=1e-12)

    def test_powmod_path_matches_table_path(self, primes):
        spec = make_spec(163, 3)
        te = build_table_engine(spec, primes=primes.primes)
        pe = build_powmod_engine(spec)
        for N, H in ((0, 10), (50, 200), (160, 400)):
            a = interval_sum(te, N, H)
            b = interval_sum(pe, N, H)
            assert np.array_equal(a.counts, b.counts)
            assert a.magnitude == pytest.approx(b.magnitude)

    def test_counts_bound_total(self, primes):
        engine = build_table_engine(make_spec(61, 3), primes=primes.primes)
        res = interval_sum(engine, 5, 100)
        assert res.total == sum(1 for n in range(6, 106) if n % 61 != 0)
        assert res.magnitude <= res.total + 1e-12

    def test_rejects_empty(self, primes):
        engine = build_powmod_engine(make_spec(7, 3))
        with pytest.raises(ValueError):
            interval_sum(engine, 0, 0)


class TestBurgessEnvelopeSample:
    """Trimmed version of the short-sum envelope check (the acceptance suite
    runs the full 1e4-case sweep)."""

    def test_envelope(self):
        c_of_r = {r: float(bounds.burgess_C(r)) for r in (2, 3)}
        fs = [int(f) for f in primes_in_range(20011, 22000) if f % 3 == 1]
        rng = np.random.default_rng(11)
        base = sieve_eratosthenes(300)
        for f in fs[:20]:
            engine = build_table_engine(make_spec(f, 3), primes=base.primes)
            for r in (2, 3):
                hmax = int(4 * f ** (0.5 + 1 / (4 * r)))
                bound_coef = (
                    c_of_r[r] * f ** ((r + 1) / (4 * r * r)) * math.log(f) ** (1 / (2 * r))
                )
                for _ in range(20):
                    N = int(rng.integers(0, f))
                    H = int(rng.integers(1, hmax + 1))
                    res = interval_sum(engine, N, H)
                    assert res.magnitude < bound_coef * H ** (1 - 1 / r)
