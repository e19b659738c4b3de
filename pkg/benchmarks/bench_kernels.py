"""Time the pure-Python and compiled kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import random
import timeit

from quandlekit import catalog, kernels

CASES = [
    ("box_idempotents R4 B=4", "R4", lambda m, f, n: m.box_idempotents(f, n, 4, False)),
    ("box_idempotents Cs4 B=12", "Cs4", lambda m, f, n: m.box_idempotents(f, n, 12, False)),
    ("box_idempotents T5 B=3", "T5", lambda m, f, n: m.box_idempotents(f, n, 3, True)),
    ("mod_idempotents R6 m=5", "R6", lambda m, f, n: m.mod_idempotents(f, n, 5, True)),
    ("q3_violation Conj(S3) x200", "Conj(S3)", lambda m, f, n: [m.q3_violation(f, n) for _ in range(200)]),
]


def _dense_case(m, f, n, vecs):
    return [list(m.dense_mul(f, n, u, v)) for u, v in vecs]


def _norm(r):
    if isinstance(r, (list, tuple)):
        return [_norm(x) for x in r]
    return r


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    mods = {"python": kernels.backend("python")}
    if kernels.BACKEND == "compiled":
        mods["compiled"] = kernels.backend("compiled")
    else:
        print("compiled kernels not built; timing the Python backend only")

    rng = random.Random(0)
    Q6 = catalog.get("Conj(S3)")
    vecs = [([rng.randint(-9, 9) for _ in range(6)], [rng.randint(-9, 9) for _ in range(6)])
            for _ in range(2000)]
    cases = CASES + [("dense_mul Conj(S3) x2000", "Conj(S3)",
                      lambda m, f, n: _dense_case(m, f, n, vecs))]

    print(f"{'kernel':32s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for label, name, fn in cases:
        Q = Q6 if name == "Conj(S3)" else catalog.get(name)
        f, n = kernels.flatten(Q.table), Q.n
        results = [fn(m, f, n) for m in mods.values()]
        if len(results) == 2:
            assert _norm(results[0]) == _norm(results[1]), label
        t = {k: min(timeit.repeat(lambda: fn(m, f, n), number=1, repeat=args.repeat))
             for k, m in mods.items()}
        if "compiled" in t:
            print(f"{label:32s} {t['python']:10.4f} {t['compiled']:11.4f} {t['python'] / t['compiled']:7.1f}x")
        else:
            print(f"{label:32s} {t['python']:10.4f} {'-':>11s}")


if __name__ == "__main__":
    main()
