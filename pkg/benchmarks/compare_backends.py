#!/usr/bin/env python3
"""Compare the compiled (numba) kernels against the pure-Python fallback.

The backend is fixed at import time by the NUMVC_BACKEND environment
variable, so each measurement runs in its own subprocess. Both backends
execute the identical search trajectory; only wall-clock speed differs.

Usage:
    python benchmarks/compare_backends.py [--steps N] [--variant numvc|pair|noforget|pd]
"""
import argparse
import json
import os
import subprocess
import sys
import tempfile
import textwrap

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

PROBE = textwrap.dedent("""
    import json, sys, time
    from numvc import BACKEND
    from numvc.graph import load_dimacs
    from numvc.solver import SolverConfig, solve
    g = load_dimacs(sys.argv[1])
    steps = int(sys.argv[2])
    variant = sys.argv[3]
    solve(g, SolverConfig(seed=0, max_steps=min(2000, steps), variant=variant))  # warm
    _, rec = solve(g, SolverConfig(seed=1, max_steps=steps, variant=variant))
    print(json.dumps({"backend": BACKEND, "best": rec.best_size,
                      "steps": rec.total_steps, "time": rec.total_time,
                      "steps_to_best": rec.steps_to_best}))
""")


def measure(instance: str, steps: int, variant: str, backend: str) -> dict:
    env = dict(os.environ, NUMVC_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", PROBE, instance, str(steps),
                           variant], capture_output=True, text=True, env=env)
    if proc.returncode != 0:
        sys.exit(f"{backend} probe failed:\n{proc.stderr}")
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=200_000,
                    help="step budget for the compiled backend")
    ap.add_argument("--python-steps", type=int, default=20_000,
                    help="smaller budget for the interpreted backend")
    ap.add_argument("--variant", default="numvc",
                    choices=("numvc", "pair", "noforget", "pd"))
    ap.add_argument("--instance", help="DIMACS file (default: generated)")
    args = ap.parse_args()

    if args.instance:
        instance = args.instance
        cleanup = None
    else:
        import instgen
        from numvc.graph import dimacs_str
        g, _ = instgen.frb30_15_like(0)
        fh = tempfile.NamedTemporaryFile("w", suffix=".mis", delete=False)
        fh.write(dimacs_str(g))
        fh.close()
        instance = cleanup = fh.name
        print(f"generated instance: n={g.n} m={g.m}")

    try:
        fast = measure(instance, args.steps, args.variant, "numba")
        slow = measure(instance, args.python_steps, args.variant, "python")
    finally:
        if cleanup:
            os.unlink(cleanup)

    for name, r in (("numba", fast), ("python", slow)):
        rate = r["steps"] / r["time"] if r["time"] else float("inf")
        print(f"{name:>7}: {r['steps']:>8} steps in {r['time']:.3f} s "
              f"({rate:,.0f} steps/s), best cover {r['best']}")
    fast_rate = fast["steps"] / fast["time"]
    slow_rate = slow["steps"] / slow["time"]
    print(f"speedup: {fast_rate / slow_rate:.1f}x")


if __name__ == "__main__":
    main()
