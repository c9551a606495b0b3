"""Smoke test for the pycilattice extension module.

Build first with ``maturin develop -m crates/python/Cargo.toml --features extension-module``.
"""

import json

import pycilattice as cl


def main() -> None:
    assert cl.hodge_row([3], 4) == [0, 1, 20, 1, 0]
    assert cl.euler_oracle([4], 2) == (24, 22)
    b_plus, b_minus, s, t, u, eps = cl.signature_data([3], 4)
    assert (b_plus, b_minus, s, t, u, eps) == (21, 2, 19, 2, 2, 0)

    r = cl.decompose([3], 4)
    assert r.decomposition == "A2 + 2*E8 + 2*U", r
    assert r.branch == "odd"
    assert all(ok for _, ok, _ in r.audit())
    doc = json.loads(r.to_json())
    assert doc["dim"] == 4

    g = r.gram()
    assert g.rank == 22
    assert g.signature() == (20, 2, 0)
    assert abs(g.determinant()) == 3
    assert g.is_even()
    assert g.discriminant_group() == [3]

    assert cl.decompose([2, 2], 4).decomposition == "D7"
    try:
        cl.decompose([3], 2, exceptional_cases=False)
    except cl.OutsideTheoremError:
        pass
    else:
        raise AssertionError("expected OutsideTheoremError")

    e6 = cl.decompose([3], 2).gram()
    diag = cl.GramLattice([[1 if i == j == 0 else (-1 if i == j else 0) for j in range(7)] for i in range(7)])
    comp = diag.orthogonal_complement([3, -1, -1, -1, -1, -1, -1])
    assert cl.definite_isometry(comp, e6) is not None
    assert cl.definite_isometry(cl.GramLattice.standard("A2"), cl.GramLattice([[2, 0], [0, 2]])) is None

    e8 = cl.GramLattice.standard("E8")
    assert e8.is_even() and e8.determinant() == 1
    assert cl.GramLattice.from_json(e8.to_json()) == e8
    assert cl.lucas_parity(2, 4) == 1

    big = cl.signature_data([29], 20)[0]
    assert big > 2**64

    print("smoke test passed")


if __name__ == "__main__":
    main()
