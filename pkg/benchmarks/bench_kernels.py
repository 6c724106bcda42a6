"""Time the compiled integer kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--size 12] [--repeat 5]
"""
import argparse
import random
import timeit

from lvmbkit._kernels import _pykernels

try:
    from lvmbkit._kernels import _ckernels
except ImportError:
    _ckernels = None


def random_matrix(rng, rows, cols, spread):
    return [[rng.randint(-spread, spread) for _ in range(cols)] for _ in range(rows)]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=12)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=0x5EED)
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    square = [random_matrix(rng, args.size, args.size, 50) for _ in range(20)]
    wide = [random_matrix(rng, args.size, 2 * args.size, 9) for _ in range(20)]
    cases = [("int_det", square), ("int_rank", wide), ("int_hnf", wide)]

    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'kernel':<10}" + "".join(f"{name:>12}" for name, _ in backends) + ("   speedup" if _ckernels else ""))
    for kernel, mats in cases:
        times = []
        for _, mod in backends:
            fn = getattr(mod, kernel)
            best = min(timeit.repeat(lambda: [fn(m) for m in mats], number=1, repeat=args.repeat))
            times.append(best)
        row = f"{kernel:<10}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"   {times[0] / times[1]:>6.1f}x"
        print(row)
    if _ckernels is None:
        print("compiled kernels not built; only the pure-Python timings are shown")


if __name__ == "__main__":
    main()
