"""Compare the pure-Python and compiled enumeration kernels.

Times the hot path (exhaustive candidate enumeration) on three workload
shapes: direct answer-set enumeration of a scaled non-convex program,
enumeration of a compiled rewriting, and a slice of the theorem battery.

    python3 benchmarks/bench_kernels.py [--atoms N] [--seeds N] [--repeat N]
"""

import argparse
import time

from gasp import kernel, lowering
from gasp.compile import rew_sflp
from gasp.core import Atom, CountAggregate, Program, Rule
from gasp.harness import GenConfig, check_theorems, generate
from gasp.parser import parse_program
from gasp.semantics import SemanticsKind, enumerate_interpretations


def coordination_chain(n: int) -> Program:
    """n atoms, each derived when a 3-atom window has an uneven count;
    non-convex bodies keep the subset checks busy."""
    atoms = [Atom(f"x{i}") for i in range(n)]
    rules = []
    for i, atom in enumerate(atoms):
        window = frozenset({atoms[i], atoms[(i + 1) % n], atoms[(i + 2) % n]})
        rules.append(Rule(frozenset({atom}), CountAggregate(window, "!=", 1)))
    return Program(rules)


def timed(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_enumeration(program: Program, mode: int, backend: str, repeat: int) -> float:
    lp = lowering.lower(program)
    return timed(lambda: kernel.enumerate_masks(lp, mode, backend), repeat)


def bench_battery(seeds: int, backend: str) -> float:
    start = time.perf_counter()
    for seed in range(seeds):
        cfg = GenConfig(atom_count=2 + seed % 4, rule_count=seed % 7, seed=seed)
        check_theorems(generate(cfg), compile_limit=16, backend=backend)
    return time.perf_counter() - start


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--atoms", type=int, default=14, help="chain width (default 14)")
    ap.add_argument("--seeds", type=int, default=150, help="battery slice size")
    ap.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    args = ap.parse_args()

    backends = kernel.available_backends()
    if "compiled" not in backends:
        print("compiled kernel not built; timing the pure backend only")

    chain = coordination_chain(args.atoms)
    compiled_p1, _ = rew_sflp(parse_program(
        "a :- count{a, b} != 1. b :- count{a, b} != 1."
    ))

    rows = []
    for label, program, mode in (
        (f"models, {args.atoms}-atom chain", chain, lowering.ENUM_MODELS),
        (f"sflp, {args.atoms}-atom chain", chain, lowering.ENUM_SFLP),
        ("flp, rewritten 2-atom program", compiled_p1, lowering.ENUM_FLP),
    ):
        times = {
            b: bench_enumeration(program, mode, b, args.repeat) for b in backends
        }
        rows.append((label, times))
    battery_times = {b: bench_battery(args.seeds, b) for b in backends}
    rows.append((f"theorem battery, {args.seeds} programs", battery_times))

    width = max(len(label) for label, _ in rows)
    header = f"{'workload':<{width}}  {'pure':>10}"
    if "compiled" in backends:
        header += f"  {'compiled':>10}  {'speedup':>8}"
    print(header)
    for label, times in rows:
        line = f"{label:<{width}}  {times['pure'] * 1e3:>8.1f}ms"
        if "compiled" in times:
            speedup = times["pure"] / times["compiled"] if times["compiled"] else 0.0
            line += f"  {times['compiled'] * 1e3:>8.1f}ms  {speedup:>7.1f}x"
        print(line)

    # sanity: identical answers from both backends on the chain
    if "compiled" in backends:
        for kind in SemanticsKind:
            pure = enumerate_interpretations(chain, kind, backend="pure")
            comp = enumerate_interpretations(chain, kind, backend="compiled")
            assert pure == comp, f"backend mismatch on {kind.value}"
        print("\nbackends agree on all four semantics for the chain workload")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
