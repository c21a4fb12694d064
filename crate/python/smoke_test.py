"""Smoke test for the vp_rkhs extension module.

Build and run from the repository root:

    cargo build --release -p vp-rkhs-py --features extension-module
    cp target/release/libvp_rkhs.so python/vp_rkhs.so
    python3 python/smoke_test.py
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import vp_rkhs  # noqa: E402


def main():
    v = vp_rkhs.exact_solution(0.5, 0.5, 0.5)
    assert abs(v - 4.72485) < 5e-6, v
    th = math.tanh(0.5)
    assert abs(vp_rkhs.exact_solution(0.5, 0.0, 0.75) - (6 - 6 * th * th)) < 1e-14

    sol = vp_rkhs.solve(0.5, 6)
    assert sol.converged and sol.iterations >= 1
    assert sol.orthonormality_defect < 1e-10
    assert sol.linf() < 5e-2
    for nu, exact, approx, err in sol.slice_rows():
        assert abs(exact - approx) == err
    assert abs(sol.phi(0.5, 0.5) - v) < 1e-3
    assert len(sol.phi_many([(0.1, 0.2), (0.9, 1.0)])) == 2

    try:
        sol.phi(1.5, 0.5)
    except ValueError:
        pass
    else:
        raise AssertionError("out-of-domain evaluation should raise")

    try:
        vp_rkhs.solve(1.5)
    except ValueError:
        pass
    else:
        raise AssertionError("alpha > 1 should raise")

    csv = vp_rkhs.table1()
    lines = csv.strip().splitlines()
    assert lines[0] == "nu,t,alpha,exact,approx,abs_error"
    assert len(lines) == 16
    assert csv == vp_rkhs.table1()

    ok, text = vp_rkhs.kernel_check()
    assert ok, text

    print(repr(sol))
    print(f"linf = {sol.linf():.3e}")
    print("smoke test passed")


if __name__ == "__main__":
    main()
