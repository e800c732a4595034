"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Times raw GF(2) / F_p reductions on random matrices and one end-to-end
workload (degree-3 Orlik-Solomon relations of the 16-plane arrangement,
reduced by elimination over F_2).
"""

from __future__ import annotations

import argparse
import random
import time

from arrcover import _purekernels, kernels
from arrcover.fields import F2
from arrcover.os_algebra import relation_matrix
from arrcover.catalog import catalog_get


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def gf2_case(n: int, seed: int = 0):
    rng = random.Random(seed)
    return [rng.getrandbits(n) for _ in range(n)], n


def fp_case(n: int, p: int, seed: int = 0):
    rng = random.Random(seed)
    return [[rng.randrange(p) for _ in range(n)] for _ in range(n)], n, p


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        from arrcover import _ckernels as compiled
    except ImportError:
        compiled = None
        print("compiled kernels not built; timing the pure-Python path only")

    backends = [("python", _purekernels)] + ([("cython", compiled)] if compiled else [])
    gens, m = relation_matrix(catalog_get("icosidodecahedral"), 3, F2)
    os_rows = [sum(1 << j for j, x in enumerate(r) if x) for r in m.rows]
    workloads = [
        (f"gf2_rref {n}x{n}", "gf2_rref", gf2_case(n)) for n in (256, 512, 1024)
    ] + [
        (f"gf2_rank {n}x{n}", "gf2_rank", gf2_case(n)) for n in (512, 1024)
    ] + [
        (f"fp_rref {n}x{n} p=101", "fp_rref", fp_case(n, 101)) for n in (100, 200)
    ] + [
        (f"OS degree 3 relations {m.nrows}x{m.ncols}", "gf2_rref", (os_rows, m.ncols)),
    ]

    print(f"{'workload':<40}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn_name, case in workloads:
        times = [best_of(lambda mod=mod: getattr(mod, fn_name)(*case), args.repeat) for _, mod in backends]
        speed = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 and times[1] > 0 else ""
        print(f"{label:<40}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times) + speed)
    print(f"active backend: {kernels.BACKEND}")


if __name__ == "__main__":
    main()
