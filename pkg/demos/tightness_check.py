"""The fourth-moment tightness criterion on growing MSTs.

For each size the criterion ``E (X(v) - X(u))^2 (X(w) - X(v))^2`` of the
weighted process is computed exactly on a 5-point grid and divided by
``(w - u)^2``; a bound that does not grow with ``n`` is what tightness
needs. One grid point is re-estimated by Monte Carlo, and the leading-order
approximation is compared with the exact value.

Run with ``python3 demos/tightness_check.py``.
"""
import numpy as np

from graphscan.graph import build_knn, build_mst
from graphscan.tightness import (condition_diagnostics, kc_grid, kc_moment, zdiff_leading_terms,
                                 zw_leading_terms)


def main():
    for n in (32, 64, 128):
        g = build_mst(np.random.default_rng([1, n]).normal(size=(n, 2)))
        ratios = [kc_moment(g, "zw", u, v, w).value / (w - u) ** 2 for u, v, w in kc_grid()]
        mc = kc_moment(g, "zw", 0.3, 0.5, 0.7, method="mc", samples=10000, seed=n)
        ex = kc_moment(g, "zw", 0.3, 0.5, 0.7)
        print(f"n={n:4d}: max kc/(w-u)^2 = {max(ratios):6.3f}; at (0.3, 0.5, 0.7) exact "
              f"{ex.value:.4f}, MC {mc.value:.4f} +/- {mc.stderr:.4f}")

    print("\nleading-order approximation on k-NN (k=1)")
    for n in (64, 128, 256):
        g = build_knn(np.random.default_rng([3, n]).normal(size=(n, 2)), 1)
        k = kc_moment(g, "zw", 0.25, 0.5, 0.75).value
        lead = zw_leading_terms(g, 0.25, 0.5, 0.75).ratio
        kd = kc_moment(g, "zdiff", 0.25, 0.5, 0.75).value
        ld = zdiff_leading_terms(g, 0.25, 0.5, 0.75).ratio
        print(f"  n={n:4d}: Z_w exact {k:.4f} vs leading {lead:.4f}; "
              f"Z_diff exact {kd:.4f} vs leading {ld:.4f}")

    diag = condition_diagnostics(
        lambda n: build_mst(np.random.default_rng([2, n]).normal(size=(n, 2))), [50, 100, 200])
    print(f"\nMST growth exponents: alpha = {diag['alpha']:.3f}, beta = {diag['beta']:.3f}")
    print("sum |G_i|^2 / (k n^2) decreasing:", diag["ratio_sum_d2_over_kn2_decreasing"])


if __name__ == "__main__":
    main()
