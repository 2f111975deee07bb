"""Time the pure-Python enumeration kernel against the compiled one.

Both backends implement ``consistent_machine_encodings`` with identical
semantics; this script runs the same instance through each and reports the
speedup.  Instance size is adjustable so the comparison can be pushed into
territory where the pure-Python kernel visibly struggles.

Usage:
    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --states 4 --inputs 2 --outputs 2 --trace 0,1,0 --repeat 5
"""

import argparse
import importlib
import time

from moorelimit import _kernels_py


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--states", type=int, default=4, help="state bound (default 4)")
    parser.add_argument("--inputs", type=int, default=2, help="input alphabet size (default 2)")
    parser.add_argument("--outputs", type=int, default=2, help="output alphabet size (default 2)")
    parser.add_argument(
        "--trace",
        default="0,1,0",
        help="comma-separated output indices of the observed trace (default 0,1,0)",
    )
    parser.add_argument("--repeat", type=int, default=3, help="timed repetitions (default 3)")
    return parser.parse_args()


def best_time(kernel, args, trace_inputs, trace_outputs):
    result = None
    best = float("inf")
    for _ in range(args.repeat):
        start = time.perf_counter()
        result = kernel.consistent_machine_encodings(
            args.states, args.inputs, args.outputs, trace_inputs, trace_outputs
        )
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    args = parse_args()
    trace_outputs = tuple(int(tok) for tok in args.trace.split(","))
    trace_inputs = tuple(0 for _ in range(len(trace_outputs) - 1))

    try:
        kernels_cy = importlib.import_module("moorelimit._kernels_cy")
    except ImportError:
        kernels_cy = None

    print(
        f"instance: states={args.states} inputs={args.inputs} outputs={args.outputs} "
        f"trace={trace_outputs} (best of {args.repeat})"
    )
    py_time, py_result = best_time(_kernels_py, args, trace_inputs, trace_outputs)
    print(f"python   {py_time * 1000:10.2f} ms   {len(py_result)} behaviors")
    if kernels_cy is None:
        print("cython   not built (pip install -e . --no-build-isolation)")
        return
    cy_time, cy_result = best_time(kernels_cy, args, trace_inputs, trace_outputs)
    print(f"cython   {cy_time * 1000:10.2f} ms   {len(cy_result)} behaviors")
    if cy_result != py_result:
        raise SystemExit("backends disagree; run the test suite")
    print(f"speedup  {py_time / cy_time:9.1f}x")


if __name__ == "__main__":
    main()
