"""P_4 x P_6 from both sides: a tiling on top, a multipacking underneath.

Run: python demos/p4_sandwich.py
"""

from gridcast import is_dominating, is_feasible_multipacking, lower_bound_from_multipacking, make_grid, mp_cost
from gridcast.constructions import boundary_multipacking, p4_formula, p4_sequence, p4_tiling
from gridcast.exact import exact_bnb


def main():
    g = make_grid("pxp", 4, 6)

    seq = p4_sequence(6)
    b = p4_tiling(6)
    print(f"tile sequence for n=6: {seq}")
    print(b.render())
    print(f"cost {b.cost}, dominating: {is_dominating(b).dominating}\n")

    w = boundary_multipacking(g)
    print("weight 1/3 on each boundary vertex:")
    print(f"  cost {mp_cost(w)}, feasible: {is_feasible_multipacking(w).feasible}")
    print(f"  certified lower bound: ceil(16/3) = {lower_bound_from_multipacking(w)}\n")

    res = exact_bnb(g)
    print(f"branch and bound agrees: gamma_b2 = {res.value} ({res.nodes} nodes)\n")

    print("the tiling keeps pace with the closed form 8 floor(n/10) + d(n mod 10):")
    for n in (7, 13, 24, 58, 99):
        t = p4_tiling(n)
        print(f"  n={n:3d}  tiling cost {t.cost:3d}  formula {p4_formula(n):3d}  sequence {p4_sequence(n)}")


if __name__ == "__main__":
    main()
