"""Cell capacity and the PRB quota ceiling, across realistic cells.

Run:  python3 demos/02_quota_math.py
"""

from orion.domain import CellConfig, n_prb_for
from orion.errors import Infeasible
from orion.xapp import cell_capacity, compute_prb_percent


def main() -> None:
    print("== capacity across channel bandwidths (mu=1, 4 layers, 256QAM) ==")
    for mhz in (20, 40, 60, 80, 100):
        bw = mhz * 1_000_000
        n_prb = n_prb_for(bw, 1)
        cfg = CellConfig("demo", bw, 1, 4, 8, n_prb, 0.14)
        cap = cell_capacity(cfg, "dl")
        print(f"  {mhz:>3} MHz  {n_prb:>3} PRB  ->  {cap / 1e9:6.2f} Gbps")

    cell = CellConfig("demo", 100_000_000, 1, 4, 8, 273, 0.14)
    capacity = cell_capacity(cell, "dl")
    print(f"\nreference cell capacity: {capacity:,} bps")

    print("\n== required PRB percentage for requested throughputs ==")
    for label, requested in (
        ("reference policy aggregate (300 Mbps)", 300_000_000),
        ("one 4K stream (25 Mbps)", 25_000_000),
        ("heavy venue (1.2 Gbps)", 1_200_000_000),
        ("the whole cell (capacity)", capacity),
    ):
        pct = compute_prb_percent(requested, capacity)
        print(f"  {label:<40} -> {pct:>3}%")

    print("\n== the guard refuses what cannot fit ==")
    try:
        compute_prb_percent(capacity + 1, capacity)
    except Infeasible as exc:
        print("  infeasible:", exc)


if __name__ == "__main__":
    main()
