"""Regenerate the shipped rational fixtures for the splitting field of x^3 - 2.

The closure is Q[c, w]/(c^3 - 2, w^2 + w + 1) on the basis
1, w, c, cw, c^2, c^2 w (index 2i + j for c^i w^j).  Its six automorphisms
send c -> w^a c and w -> w^b.  Run from the repository root:

    python3 scripts/build_q_fixtures.py
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from hopfgalois.fixtures import dump_fixture, make_header
from hopfgalois.linalg import QQ

OUT = Path(__file__).resolve().parent.parent / "src" / "hopfgalois" / "data"


def reduce_monomial(i: int, j: int) -> dict:
    """c^i w^j as coordinates {(i', j'): coeff} with i' < 3, j' < 2."""
    coeff = Fraction(2) ** (i // 3)
    i %= 3
    j %= 3
    if j < 2:
        return {(i, j): coeff}
    # w^2 = -1 - w
    return {(i, 0): -coeff, (i, 1): -coeff}


def vec(poly: dict) -> list:
    out = [Fraction(0)] * 6
    for (i, j), c in poly.items():
        out[2 * i + j] += c
    return out


def fmt(v) -> list:
    return [QQ.fmt(QQ.reduce(x)) for x in v]


def mul_table() -> list:
    table = []
    for a in range(6):
        row = []
        for b in range(6):
            i1, j1 = divmod(a, 2)
            i2, j2 = divmod(b, 2)
            row.append(fmt(vec(reduce_monomial(i1 + i2, j1 + j2))))
        table.append(row)
    return table


def aut_matrix(a: int, b: int) -> list:
    cols = []
    for k in range(6):
        i, j = divmod(k, 2)
        # (w^a c)^i (w^b)^j = c^i w^(a i + b j)
        cols.append(vec(reduce_monomial(i, a * i + b * j)))
    return [[cols[c][r] for c in range(6)] for r in range(6)]


def matmul(x, y):
    return [[sum(x[r][k] * y[k][c] for k in range(6)) for c in range(6)] for r in range(6)]


def label(a: int, b: int) -> str:
    return f"c->{['c', 'wc', 'w^2c'][a]},w->{['w', 'w^2'][b - 1]}"


def build(g_prime: list[str], name: str, description: str) -> dict:
    auts = [(a, b) for b in (1, 2) for a in range(3)]
    mats = {label(a, b): aut_matrix(a, b) for a, b in auts}
    labels = list(mats)
    table = []
    for x in labels:
        row = []
        for y in labels:
            prod = matmul(mats[x], mats[y])
            row.append(next(z for z in labels if mats[z] == prod))
        table.append(row)
    return {
        "header": make_header(QQ),
        "metadata": {"name": name, "description": description},
        "splitting_datum": {
            "closure_algebra": {"dim": 6, "mul": mul_table(), "unit": fmt(vec({(0, 0): 1}))},
            "automorphisms": [{"label": lab, "matrix": [fmt(r) for r in mats[lab]]} for lab in labels],
            "group_table": table,
            "g_prime": g_prime,
        },
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    full = build(
        [label(0, 1)],
        "q-x3m2-closure",
        "splitting field of x^3 - 2 over Q, Q[c,w]/(c^3-2, w^2+w+1), G = S3, G' = 1",
    )
    cbrt = build(
        [label(0, 1), label(0, 2)],
        "q-cbrt2",
        "Q(2^(1/3)) inside Q[c,w]/(c^3-2, w^2+w+1), G = S3, G' = <w -> w^2>",
    )
    (OUT / "q_x3m2_closure.json").write_text(dump_fixture(full))
    (OUT / "q_cbrt2.json").write_text(dump_fixture(cbrt))


if __name__ == "__main__":
    main()
