"""Classify a spread of abelian groups by the genus of their subgroup
lattice graph, from planar chains up past the reach of exact methods.

Run:  python3 demos/classify_census.py
"""

from latticegenus import classify_abelian, lattice_for, parse_group_spec

GROUPS = [
    # cyclic: genus is a function of the exponent multiset alone
    "Z8",
    "Z72",
    "Z360",
    "Z2310",
    "Z30030",
    # two-factor p-groups around the planarity frontier
    "Z4xZ2",
    "Z4xZ4",
    "Z8xZ4",
    "Z25xZ25",
    "Z16xZ4",
    "Z8xZ8",
    # three factors: the grid side lengths grow fast
    "Z2xZ2xZ3",
    "Z4xZ2xZ5",
    "Z3xZ3xZ4",
    "Z2xZ2xZ3xZ3",
]


def main() -> None:
    print(f"{'group':14} {'class':11} {'genus':8} lattice")
    for text in GROUPS:
        spec = parse_group_spec(text, order_cap=None)
        cls = classify_abelian(spec)
        if cls.upper is None:
            genus = f">={cls.lower}"
        elif cls.lower == cls.upper:
            genus = str(cls.lower)
        else:
            genus = f"{cls.lower}..{cls.upper}"
        # lattice shapes only for orders small enough to enumerate
        if spec.order <= 4096:
            lattice = lattice_for(spec)
            shape = f"{lattice.vertex_count} vertices, {lattice.edge_count} edges"
        else:
            shape = f"order {spec.order} (not enumerated)"
        print(f"{text:14} {cls.label:11} {genus:8} {shape}")


if __name__ == "__main__":
    main()
