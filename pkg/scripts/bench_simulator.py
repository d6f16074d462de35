#!/usr/bin/env python3
"""Statevector throughput sweep: random-circuit runtime per qubit count."""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from gen import random_circuit  # noqa: E402

from qbridge.simulator import RunOptions, simulate  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-qubits", type=int, default=16)
    parser.add_argument("--gates", type=int, default=60)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    print(f"{'qubits':>6}  {'gates':>5}  {'seconds':>9}")
    for n in range(2, args.max_qubits + 1, 2):
        best = float("inf")
        for r in range(args.repeats):
            circuit = random_circuit(
                1000 * n + r, max_qubits=n, max_gates=args.gates, measure="none"
            )
            start = time.perf_counter()
            simulate(circuit, RunOptions(max_qubits=max(24, n)))
            best = min(best, time.perf_counter() - start)
        print(f"{n:>6}  {args.gates:>5}  {best:>9.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
