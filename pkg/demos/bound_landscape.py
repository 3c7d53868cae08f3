"""Lower and upper bounds side by side, including the cells where they cross.

Run: python demos/bound_landscape.py
"""

from gridcast.bounds import best_lower_bound, upper_bound
from gridcast.cli import TableRequest, emit_table
from gridcast.grid import Family, make_grid


def main():
    print("C_m x C_n: the bounds meet when both sides are multiples of 13")
    print(emit_table(TableRequest(Family.CxC, (13, 14, 26), (13, 20, 26, 39), ("lower", "upper", "gap"), "markdown")))

    print("P_4 x C_n, small cycles")
    print(emit_table(TableRequest(Family.PxC, (4,), tuple(range(3, 13)), ("lower", "upper", "gap"), "markdown")))

    print("cells where a tabulated upper bound sits below a certified lower bound:")
    for m in range(2, 40):
        for n in range(3, 61):
            g = make_grid("pxc", m, n)
            lo, up = best_lower_bound(g)[0], upper_bound(g)
            if lo.value > up.value:
                print(f"  P_{m} x C_{n}: lower {lo.value} > upper {up.value}  ({up.provenance})")


if __name__ == "__main__":
    main()
