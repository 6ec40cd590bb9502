"""Benchmark the compiled kernel against the pure-Python fallback.

Times the hot paths in isolation (modular exponentiation, primality, cubic
residue symbols, the per-conductor scan, table builds) and one end-to-end
range sieve per backend.

Usage:  python benchmarks/bench_backends.py [--quick]
"""

import argparse
import pathlib
import subprocess
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from nesieve.backend import available_kernels  # noqa: E402
from nesieve.character import find_primitive_root, make_spec  # noqa: E402
from nesieve.eisenstein import prime_over  # noqa: E402
from nesieve.primes import sieve_eratosthenes  # noqa: E402


def timed(fn, *args, repeat=1):
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def bench_kernel(kern, quick):
    results = {}
    f = 9999999673
    spec = make_spec(f, 3)
    pi = prime_over(f, spec.w)
    primes = sieve_eratosthenes(10**5).primes

    n = 2_000 if quick else 20_000
    results[f"pow_mod x{n}"] = timed(
        lambda: [kern.pow_mod(i + 2, (f - 1) // 3, f) for i in range(n)]
    )
    results[f"is_prime x{n}"] = timed(
        lambda: [kern.is_prime(f - i) for i in range(n)]
    )
    results[f"cubic_symbol x{n}"] = timed(
        lambda: [kern.cubic_symbol(i + 2, 0, pi.a, pi.b) for i in range(n)]
    )
    reps = 100 if quick else 1000
    results[f"conductor scan x{reps}"] = timed(
        lambda: kern.scan_conductor(f, 3, primes, kern.MODE_CUBIC,
                                    spec.w, pi.a, pi.b, None),
        repeat=reps,
    ) * reps
    tf = 99991
    tspec = make_spec(tf, 3)
    g = find_primitive_root(tf)
    results["exponent table (f=99991)"] = timed(
        kern.build_exponent_table, tf, 3, tspec.w, g
    )
    return results


def bench_range_sieve(backend_env, hi):
    script = (
        "import time; from nesieve.sieve import sieve_range; "
        f"t0 = time.perf_counter(); r = sieve_range(3, 2, {hi}, engine='cubic'); "
        "print(time.perf_counter() - t0)"
    )
    import os

    env = dict(os.environ)
    src = str(pathlib.Path(__file__).resolve().parent.parent / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    if backend_env:
        env["NESIEVE_PURE_PYTHON"] = "1"
    else:
        env.pop("NESIEVE_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", script], capture_output=True,
                         text=True, env=env, check=True)
    return float(out.stdout.strip())


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args()

    kernels = available_kernels()
    print(f"available backends: {', '.join(kernels)}")
    rows = {}
    for name, kern in kernels.items():
        print(f"\ntiming {name} kernel ...")
        rows[name] = bench_kernel(kern, args.quick)

    hi = 10**5 if args.quick else 10**6
    print(f"\ntiming end-to-end range sieve (degree 3, f <= {hi}) ...")
    sieve_rows = {}
    for name in kernels:
        sieve_rows[name] = bench_range_sieve(name == "python", hi)

    print(f"\n{'benchmark':<28} " + " ".join(f"{n:>12}" for n in rows))
    for label in next(iter(rows.values())):
        cells = [rows[n][label] for n in rows]
        line = f"{label:<28} " + " ".join(f"{c * 1e3:>10.1f}ms" for c in cells)
        if len(cells) == 2 and cells[1]:
            line += f"   ({cells[0] / cells[1]:.1f}x)" if "c" in rows else ""
        print(line)
    label = f"range sieve to {hi}"
    cells = [sieve_rows[n] for n in sieve_rows]
    line = f"{label:<28} " + " ".join(f"{c * 1e3:>10.1f}ms" for c in cells)
    print(line)
    if "c" in sieve_rows and "python" in sieve_rows:
        print(f"\nend-to-end speedup: {sieve_rows['python'] / sieve_rows['c']:.1f}x")


if __name__ == "__main__":
    main()
