"""Small groups shared by the test modules."""

from hopfgalois.perm import closure, cyclic_group, from_cycles, symmetric_group


def c4():
    return cyclic_group(4)


def s3():
    return symmetric_group(3)


def v4():
    return closure(4, [from_cycles(4, (0, 1), (2, 3)), from_cycles(4, (0, 2), (1, 3))])


SMALL_GROUPS = {"C4": c4, "S3": s3, "V4": v4}


def biquadratic_datum():
    """Q(sqrt 2, sqrt 3) on the basis 1, a, b, ab with a^2 = 2, b^2 = 3; G = C2 x C2."""
    from hopfgalois.greither_pareigis import SplittingDatum
    from hopfgalois.hopf import FinAlgebra
    from hopfgalois.linalg import QQ, Matrix

    table = []
    for i in range(4):
        row = []
        for j in range(4):
            # a^s b^t * a^u b^v = 2^(s u) 3^(t v) a^(s xor u) b^(t xor v)
            s, t, u, v = i & 1, i >> 1, j & 1, j >> 1
            c = 2 ** (s & u) * 3 ** (t & v)
            vec = [0] * 4
            vec[i ^ j] = c
            row.append(vec)
        table.append(row)
    lt = FinAlgebra.from_table(QQ, table, [1, 0, 0, 0])
    labels, mats = [], []
    for k in range(4):
        # sigma_k negates a when bit 0 is set and b when bit 1 is set
        sign = [(-1) ** (((k & 1) & (m & 1)) + ((k >> 1) & (m >> 1))) for m in range(4)]
        mats.append(Matrix(QQ, [[sign[r] if r == c else 0 for c in range(4)] for r in range(4)], 4))
        labels.append(f"s{k}")
    group_table = [[i ^ j for j in range(4)] for i in range(4)]
    return SplittingDatum(lt, labels, mats, group_table, [0])
