"""Compare the numba kernels with their numpy fallbacks.

Per-kernel timings call both implementations directly from ``KERNELS``;
the end-to-end rows run ``charprod table`` in a subprocess with
CHARPROD_NUMBA set to 1 and 0.

    python benchmarks/bench_kernels.py [--repeat N] [--groups S4 A6 ...]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from charprod.char_table import character_table
from charprod.kernels import KERNELS
from charprod.zoo import from_label


def best_of(fn, args, repeat):
    fn(*args)  # warm-up, triggers compilation for the njit path
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_cases(G):
    T, inv = G.table, G.inv
    cls = G.classes
    reps = np.array(cls.rep, dtype=np.int64)
    seed = np.zeros(G.order, dtype=np.bool_)
    seed[[1, G.order // 2]] = True
    rng = np.random.default_rng(0)
    p = character_table(G).prime
    M = rng.integers(0, p, size=(cls.count, cls.count)).astype(np.int64)
    V = character_table(G).values
    w = np.array(cls.size, dtype=np.int64)
    return {
        "associativity_violation": (T,),
        "element_orders": (T,),
        "conjugacy_labels": (T, inv),
        "class_constants": (T, inv, cls.class_of, reps, cls.count),
        "closure": (T, seed),
        "rref_mod_p": (M, p),
        "charpoly_mod_p": (M, p),
        "gram_poly": (V, V, w, G.field.e),
    }


def end_to_end(label, flag):
    env = dict(os.environ, CHARPROD_NUMBA=flag)
    t0 = time.perf_counter()
    subprocess.run([sys.executable, "-m", "charprod", "table", "--zoo", label],
                   env=env, check=True, capture_output=True)
    return time.perf_counter() - t0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--groups", nargs="+", default=["S4", "extraspecial:5", "A6", "aE:7,3"])
    args = ap.parse_args(argv)
    labels = args.groups

    print(f"{'group':<16}{'kernel':<26}{'numba ms':>10}{'numpy ms':>10}{'ratio':>8}")
    for label in labels:
        G = from_label(label)
        for name, call_args in kernel_cases(G).items():
            fast, slow = KERNELS[name]
            tf = best_of(fast, call_args, args.repeat)
            ts = best_of(slow, call_args, args.repeat)
            print(f"{label:<16}{name:<26}{tf * 1e3:>10.2f}{ts * 1e3:>10.2f}{ts / tf:>8.1f}")
    print()
    print(f"{'group':<16}{'end-to-end table':<26}{'numba s':>10}{'numpy s':>10}")
    for label in labels:
        print(f"{label:<16}{'':<26}{end_to_end(label, '1'):>10.2f}{end_to_end(label, '0'):>10.2f}")


if __name__ == "__main__":
    main()
