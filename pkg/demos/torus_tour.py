"""Walk the certificate machinery: verify the three closed-form
certificate families, then grow the 6-vertex-rim gadget into the full
subgroup lattice of Z25 x Z25 by fan surgery, staying on the torus the
whole way.

Run:  python3 demos/torus_tour.py
"""

from latticegenus import (
    fan_expansion,
    gn_certificate,
    hn_certificate,
    is_isomorphic,
    lattice_for,
    lift_certificate_to_lattice,
    verify_certificate,
    zppq_certificate,
)


def show(name, cert):
    vg = verify_certificate(cert.graph, cert)
    g = cert.graph
    print(
        f"  {name:12} {g.vertex_count:3} vertices {g.edge_count:3} edges"
        f" {vg.faces:3} faces  genus {vg.genus}"
    )
    return vg


def main() -> None:
    print("certificate families:")
    for n in (2, 6, 10, 14):
        show(f"gn(n={n})", gn_certificate(n))
    for n in (5, 9, 13):
        show(f"hn(n={n})", hn_certificate(n))
    for p in (3, 5, 7):
        show(f"zppq(p={p})", zppq_certificate(p))

    print("\nfan surgery, 6-gadget to the Z25xZ25 lattice:")
    cert = gn_certificate(6)
    g = cert.graph
    show("start", cert)
    # each rim edge becomes five parallel length-2 paths; genus is
    # preserved while vertices, edges, and faces grow in step
    for i in range(1, 7):
        labels = [f"fan{i}_{j}" for j in range(1, 6)]
        g, cert = fan_expansion(g, cert, (f"alpha_{i}", f"beta_{i}"), 5, labels)
        show(f"fan edge {i}", cert)

    lattice = lattice_for("Z25xZ25")
    assert is_isomorphic(g, lattice) is not None
    lifted = lift_certificate_to_lattice(cert, lattice)
    vg = show("lifted", lifted)
    print(f"\nthe subgroup lattice of Z25xZ25 embeds on the torus: genus {vg.genus}")


if __name__ == "__main__":
    main()
