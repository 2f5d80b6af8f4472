#!/usr/bin/env python3
"""Search the two minimal non-distributive lattices for equivalence failures.

On the pentagon and the diamond, each composite condition is probed in two
directions: a polynomial function that violates it, or an order-preserving
non-polynomial function that satisfies it.
"""

from latpoly import find_nondistributive_witness, format_witness, m3, n5
from latpoly.terms import table_to_text


def main():
    for lat in (n5(), m3()):
        print(f"== {lat.name} (distributive={lat.distributive})")
        for cond in ("iii", "iv", "v", "vi"):
            found = find_nondistributive_witness(lat, 1, cond)
            if found is None:
                print(f"{cond}: no witness among unary functions")
                continue
            print(f"{cond}: {found.direction}")
            print("    " + " ".join(table_to_text(found.table).splitlines()[1:]))
            if found.detail is not None:
                print(f"    FAIL at {format_witness(lat, found.detail)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
