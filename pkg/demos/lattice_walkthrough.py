"""The mod-13 lattice on P_13 x P_13: why the class matters.

Run: python demos/lattice_walkthrough.py
"""

from gridcast import is_dominating
from gridcast.bounds import lattice_formula, lower_bound
from gridcast.constructions import (
    best_lattice_ell, corner_sum, lattice_broadcast, lattice_class_counts, lattice_hearing_counts,
)
from gridcast.grid import make_grid


def main():
    m = n = 13
    print("class  inside  padded  corner  cost")
    for ell in range(13):
        inside, padded = lattice_class_counts(m, n, ell)
        b = lattice_broadcast(m, n, ell)
        assert is_dominating(b).dominating
        print(f"{ell:5d}  {inside:6d}  {padded:6d}  {corner_sum(m, n, ell):6d}  {b.cost:4d}")

    choice = best_lattice_ell(m, n)
    print(f"\nbest class {choice.ell} (corner sum {choice.corner_sum})")
    print(f"class 8 costs {lattice_broadcast(m, n, 8).cost}; the closed form gives {lattice_formula(m, n)}")

    counts = lattice_hearing_counts(m, n, choice.ell)
    print(f"every vertex hears exactly one padded lattice point: {set(counts.values()) == {1}}")

    print(f"\nlower bound {lower_bound(make_grid('pxp', m, n)).value}; "
          "the exact value is 32 (run tests/test_acceptance.py for the search)")
    print("\nbest broadcast, '2' in the grid, '1' for pulled-in exterior points:")
    print(lattice_broadcast(m, n, choice.ell).render())


if __name__ == "__main__":
    main()
