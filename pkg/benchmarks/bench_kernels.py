"""Compiled vs pure-Python sign kernels.

Micro-benchmarks call both kernel modules directly on identical inputs (and
check they agree); the end-to-end timing runs one Jacobi certificate in a
subprocess per backend, selected with ``DIRAC_LINFTY_PURE``.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from dirac_linfty import _kernels_py

try:
    from dirac_linfty import _kernels
except ImportError:
    _kernels = None

END_TO_END = ("from dirac_linfty import catalog; from dirac_linfty.derived import structure_of; "
              "from dirac_linfty.coalgebra import verify_jacobi; import time; "
              "s = catalog.builtin('sl2_double_diag'); t0 = time.perf_counter(); "
              "verify_jacobi(structure_of(s.splitting('anti', 'diag'), 4).m, 4); "
              "print(time.perf_counter() - t0)")


def workloads(rng: random.Random):
    n = 10
    odd = (1 << n) - 1
    masks = [rng.getrandbits(n) for _ in range(400)]
    pairs = [(a, b & ~a) for a, b in zip(masks, reversed(masks))]
    dicts = [({m: rng.randint(-3, 3) or 1 for m in rng.sample(range(1 << 6), 12)},
              {m: rng.randint(-3, 3) or 1 for m in rng.sample(range(1 << 6), 12)}) for _ in range(40)]
    parity = [1, 0] * 8
    seqs = [[rng.randrange(16) for _ in range(6)] for _ in range(400)]
    perms = [rng.sample(range(6), 6) for _ in range(400)]
    return {
        "merge_sign": lambda k: [k.merge_sign(a, b, odd) for a, b in pairs],
        "contract_sign": lambda k: [k.contract_sign(i % n, m, odd) for i, m in enumerate(masks)],
        "wedge_dicts": lambda k: [k.wedge_dicts(a, b, (1 << 6) - 1) for a, b in dicts],
        "sort_sign": lambda k: [k.sort_sign(s, parity) for s in seqs],
        "perm_sign": lambda k: [k.perm_sign(parity[:6], p) for p in perms],
    }


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("DIRAC_LINFTY_PURE", None)
    if pure:
        env["DIRAC_LINFTY_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True,
                         text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; only the pure-Python kernels are available")
    print(f"{'kernel':<15}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, fn in workloads(random.Random(args.seed)).items():
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=20, repeat=args.repeat)) * 50
        if _kernels is None:
            print(f"{name:<15}{py:>14.3f}{'-':>14}{'-':>10}")
            continue
        if fn(_kernels) != fn(_kernels_py):
            raise SystemExit(f"{name}: backends disagree")
        cy = min(timeit.repeat(lambda: fn(_kernels), number=20, repeat=args.repeat)) * 50
        print(f"{name:<15}{py:>14.3f}{cy:>14.3f}{py / cy:>9.1f}x")
    py = end_to_end(True)
    line = f"{'jacobi sl2 N=4':<15}{py * 1e3:>14.1f}"
    if _kernels is not None:
        cy = end_to_end(False)
        line += f"{cy * 1e3:>14.1f}{py / cy:>9.1f}x"
    print(line)


if __name__ == "__main__":
    main()
