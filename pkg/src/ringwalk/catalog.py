"""Curated generator matrices, parameter rows, and search targets.

Everything here is plain data.  The matrices are exemplar generator
matrices for three-weight codes over Z4 and F2+uF2; the parameter rows
record (n, |C|, weights, frequencies) together with the shapes that are
actually realizable over each ring.  Tests use these as enumeration
oracles, and the classifier uses them as DECIDE/EXHAUST targets.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Exemplar:
    """A concrete generator matrix with its expected invariants."""

    ring_spec: str
    name: str
    n: int
    weights: tuple[int, int, int]
    counts: tuple[int, int, int]
    shape: tuple[int, int]
    rows: tuple[tuple[int, ...], ...]


Z4_EXEMPLARS: tuple[Exemplar, ...] = (
    Exemplar("z4", "g_6_1", 6, (4, 6, 8), (6, 16, 9), (2, 1), (
        (1, 0, 1, 1, 1, 2),
        (0, 1, 0, 3, 3, 1),
        (0, 0, 2, 2, 0, 0),
    )),
    Exemplar("z4", "g_6_2", 6, (4, 6, 8), (18, 24, 21), (3, 0), (
        (1, 0, 0, 1, 2, 2),
        (0, 1, 0, 2, 1, 2),
        (0, 0, 1, 3, 3, 1),
    )),
    Exemplar("z4", "g_6_3", 6, (4, 6, 8), (18, 24, 21), (2, 2), (
        (1, 0, 1, 1, 1, 2),
        (0, 1, 1, 1, 2, 1),
        (0, 0, 2, 0, 0, 2),
        (0, 0, 0, 2, 2, 0),
    )),
    Exemplar("z4", "g_8_1", 8, (4, 8, 12), (1, 27, 3), (2, 1), (
        (1, 0, 1, 0, 1, 1, 2, 2),
        (0, 1, 1, 1, 2, 3, 1, 1),
        (0, 0, 2, 2, 0, 2, 0, 2),
    )),
    Exemplar("z4", "g_8_2", 8, (4, 8, 12), (5, 51, 7), (3, 0), (
        (1, 0, 0, 0, 1, 2, 2, 2),
        (0, 1, 0, 2, 2, 1, 1, 1),
        (0, 0, 1, 1, 0, 0, 1, 3),
    )),
    Exemplar("z4", "g_8_3", 8, (4, 8, 12), (5, 51, 7), (2, 2), (
        (1, 0, 1, 1, 1, 1, 1, 2),
        (0, 1, 1, 1, 2, 3, 3, 1),
        (0, 0, 2, 0, 0, 0, 2, 0),
        (0, 0, 0, 2, 0, 0, 2, 0),
    )),
    Exemplar("z4", "g_3_1", 3, (2, 4, 6), (15, 15, 1), (2, 1), (
        (1, 0, 1),
        (0, 1, 1),
        (0, 0, 2),
    )),
    Exemplar("z4", "g_5_1", 5, (4, 6, 8), (16, 12, 3), (2, 1), (
        (1, 0, 1, 2, 2),
        (0, 1, 1, 1, 1),
        (0, 0, 2, 0, 2),
    )),
    Exemplar("z4", "g_7_1", 7, (6, 8, 10), (42, 7, 14), (3, 0), (
        (1, 0, 0, 1, 1, 1, 2),
        (0, 1, 0, 1, 2, 3, 1),
        (0, 0, 1, 2, 1, 3, 3),
    )),
    Exemplar("z4", "g_9_1", 9, (8, 10, 12), (15, 12, 4), (2, 1), (
        (1, 0, 1, 1, 1, 1, 1, 2, 2),
        (0, 1, 1, 2, 2, 3, 3, 1, 1),
        (0, 0, 2, 0, 2, 0, 2, 0, 2),
    )),
    Exemplar("z4", "g_10_1", 10, (8, 12, 16), (62, 64, 1), (3, 1), (
        (1, 0, 0, 0, 2, 1, 1, 1, 1, 1),
        (0, 1, 0, 1, 2, 2, 3, 0, 1, 0),
        (0, 0, 1, 0, 1, 1, 1, 2, 3, 3),
        (0, 0, 0, 2, 2, 2, 0, 2, 2, 2),
    )),
    Exemplar("z4", "g_10_2", 10, (8, 12, 16), (130, 120, 5), (4, 0), (
        (1, 0, 0, 0, 2, 1, 2, 1, 1, 0),
        (0, 1, 0, 0, 0, 3, 1, 2, 3, 2),
        (0, 0, 1, 0, 1, 3, 2, 0, 1, 2),
        (0, 0, 0, 1, 2, 1, 0, 2, 3, 1),
    )),
)

# F2+uF2 matrices use the dense encoding a+2b for a+ub, i.e. 2 = X and
# 3 = X+1 in the text syntax.
F2U_EXEMPLARS: tuple[Exemplar, ...] = (
    Exemplar("f2u", "gu_3_1", 3, (2, 4, 6), (15, 15, 1), (2, 1), (
        (1, 0, 1),
        (0, 1, 1),
        (0, 0, 2),
    )),
    Exemplar("f2u", "gu_5_1", 5, (4, 6, 8), (16, 12, 3), (2, 1), (
        (1, 0, 1, 0, 2),
        (0, 1, 1, 1, 1),
        (0, 0, 0, 2, 2),
    )),
    Exemplar("f2u", "gu_6_1", 6, (4, 6, 8), (6, 16, 9), (2, 1), (
        (1, 0, 2, 3, 1, 1),
        (0, 1, 1, 1, 1, 2),
        (0, 0, 0, 0, 2, 2),
    )),
    Exemplar("f2u", "gu_6_2", 6, (4, 6, 8), (18, 24, 21), (3, 0), (
        (1, 0, 0, 1, 1, 3),
        (0, 1, 0, 1, 2, 0),
        (0, 0, 1, 1, 1, 1),
    )),
    Exemplar("f2u", "gu_6_3", 6, (4, 6, 8), (18, 24, 21), (2, 2), (
        (1, 0, 1, 1, 0, 1),
        (0, 1, 1, 2, 1, 3),
        (0, 0, 2, 2, 0, 0),
        (0, 0, 0, 0, 2, 2),
    )),
    Exemplar("f2u", "gu_8_1", 8, (4, 8, 12), (1, 27, 3), (2, 1), (
        (1, 0, 2, 1, 0, 1, 2, 1),
        (0, 1, 1, 2, 1, 1, 1, 3),
        (0, 0, 0, 0, 2, 2, 2, 2),
    )),
    Exemplar("f2u", "gu_8_2", 8, (4, 8, 12), (5, 51, 7), (3, 0), (
        (1, 0, 0, 2, 2, 0, 1, 2),
        (0, 1, 0, 0, 1, 1, 0, 1),
        (0, 0, 1, 1, 1, 2, 2, 3),
    )),
    Exemplar("f2u", "gu_8_3", 8, (4, 8, 12), (5, 51, 7), (2, 2), (
        (1, 0, 2, 1, 1, 1, 1, 3),
        (0, 1, 1, 1, 0, 0, 0, 1),
        (0, 0, 0, 2, 2, 0, 2, 2),
        (0, 0, 0, 0, 0, 2, 2, 0),
    )),
    Exemplar("f2u", "gu_9_1", 9, (8, 10, 12), (15, 12, 4), (2, 1), (
        (1, 0, 1, 2, 0, 1, 1, 1, 3),
        (0, 1, 1, 1, 1, 2, 1, 0, 1),
        (0, 0, 0, 0, 2, 2, 2, 2, 0),
    )),
    Exemplar("f2u", "gu_10_1", 10, (8, 12, 16), (62, 64, 1), (3, 1), (
        (1, 0, 0, 1, 2, 1, 2, 0, 1, 0),
        (0, 1, 0, 1, 2, 0, 1, 1, 3, 3),
        (0, 0, 1, 1, 1, 0, 1, 2, 1, 1),
        (0, 0, 0, 2, 2, 2, 2, 2, 0, 2),
    )),
    Exemplar("f2u", "gu_10_2", 10, (8, 12, 16), (130, 120, 5), (4, 0), (
        (1, 0, 0, 0, 1, 0, 2, 2, 3, 1),
        (0, 1, 0, 0, 2, 2, 0, 1, 3, 1),
        (0, 0, 1, 0, 0, 2, 1, 2, 1, 1),
        (0, 0, 0, 1, 2, 1, 2, 0, 1, 1),
    )),
)

EXEMPLARS: tuple[Exemplar, ...] = Z4_EXEMPLARS + F2U_EXEMPLARS


@dataclass(frozen=True)
class ParamRow:
    """Admissible (n, |C|=2^k, w, A) with realizable shapes per ring.

    ``z4_shapes`` / ``f2u_shapes`` list the (k1,k2) with 2k1+k2=k that
    are attained by some code over that ring; shapes in
    ``candidate_shapes(n,k)`` but not listed here admit no code.
    """

    n: int
    k: int
    weights: tuple[int, int, int]
    counts: tuple[int, int, int]
    z4_shapes: tuple[tuple[int, int], ...]
    f2u_shapes: tuple[tuple[int, int], ...]


PARAM_ROWS: tuple[ParamRow, ...] = (
    ParamRow(2, 3, (1, 2, 3), (1, 3, 3), (), ()),
    ParamRow(4, 4, (2, 4, 6), (1, 11, 3), (), ()),
    ParamRow(4, 5, (2, 4, 6), (5, 19, 7), (), ()),
    ParamRow(4, 6, (2, 4, 6), (13, 35, 15), (), ()),
    ParamRow(6, 5, (4, 6, 8), (6, 16, 9), ((2, 1),), ((2, 1),)),
    ParamRow(6, 6, (4, 6, 8), (18, 24, 21), ((3, 0), (2, 2)), ((3, 0), (2, 2))),
    ParamRow(8, 5, (6, 8, 10), (6, 15, 10), (), ()),
    ParamRow(8, 6, (6, 8, 10), (22, 15, 26), (), ()),
    ParamRow(8, 7, (6, 8, 10), (54, 15, 58), (), ()),
    ParamRow(8, 5, (4, 8, 12), (1, 27, 3), ((2, 1),), ((2, 1),)),
    ParamRow(8, 6, (4, 8, 12), (5, 51, 7), ((3, 0), (2, 2)), ((3, 0), (2, 2))),
    ParamRow(8, 7, (4, 8, 12), (13, 99, 15), (), ()),
    ParamRow(10, 5, (8, 10, 12), (5, 16, 10), (), ()),
    ParamRow(10, 6, (8, 10, 12), (25, 8, 30), (), ()),
    ParamRow(3, 5, (2, 4, 6), (15, 15, 1), ((2, 1),), ((2, 1),)),
    ParamRow(5, 5, (4, 6, 8), (16, 12, 3), ((2, 1),), ((2, 1),)),
    ParamRow(7, 5, (6, 8, 10), (16, 11, 4), (), ()),
    ParamRow(7, 6, (6, 8, 10), (42, 7, 14), ((3, 0),), ()),
    ParamRow(7, 7, (4, 8, 12), (31, 95, 1), (), ()),
    ParamRow(7, 8, (4, 8, 12), (65, 187, 3), (), ()),
    ParamRow(9, 5, (8, 10, 12), (15, 12, 4), ((2, 1),), ((2, 1),)),
    ParamRow(9, 6, (8, 11, 14), (43, 16, 4), (), ()),
    ParamRow(10, 7, (8, 12, 16), (62, 64, 1), ((3, 1),), ((3, 1),)),
    ParamRow(10, 8, (8, 12, 16), (130, 120, 5), ((4, 0),), ((4, 0),)),
)


def candidate_shapes(n: int, k: int) -> tuple[tuple[int, int], ...]:
    """All (k1,k2) with 2*k1+k2 = k, k1 >= 1, k1+k2 <= n."""
    out = []
    for k1 in range(k // 2, 0, -1):
        k2 = k - 2 * k1
        if k1 + k2 <= n:
            out.append((k1, k2))
    return tuple(out)


@dataclass(frozen=True)
class ExceptionalTuple:
    """Sporadic parameter solution with weight sum 3n and w2 != n."""

    n: int
    weights: tuple[int, int, int]
    y: int
    counts: tuple[int, int, int]
    b3: int


EXCEPTIONAL: tuple[ExceptionalTuple, ...] = (
    ExceptionalTuple(29, (24, 31, 32), 128, (76, 128, 51), 164),
    ExceptionalTuple(33, (29, 32, 38), 128, (64, 111, 80), 157),
    ExceptionalTuple(34, (30, 32, 40), 256, (64, 299, 148), 36),
    ExceptionalTuple(50, (46, 48, 56), 128, (32, 145, 78), 580),
)

# Larger parameter sets known to be attainable over Z4; used as DECIDE
# targets for the classifier (stop at first witness, no exhaustion).
# Shapes are not recorded: DECIDE tries every candidate shape.
EXTRA_ATTAINABLE: tuple[tuple[int, int, tuple[int, int, int], tuple[int, int, int]], ...] = (
    (15, 9, (12, 16, 20), (190, 255, 66)),
    (18, 8, (16, 20, 24), (153, 72, 30)),
    (22, 7, (20, 24, 28), (71, 43, 13)),
)


# One verified witness per extra parameter set (found by the DECIDE
# search's MILP phase; the shapes (4,1), (3,2), (3,1) are realizable
# while e.g. 18 points in shape (2,4) is provably infeasible).
EXTRA_EXEMPLARS: tuple[Exemplar, ...] = (
    Exemplar("z4", "x_15_1", 15, (12, 16, 20), (190, 255, 66), (4, 1), (
        (1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 2, 2),
        (0, 1, 1, 1, 1, 2, 0, 0, 1, 1, 1, 2, 3, 0, 0),
        (0, 0, 1, 2, 3, 1, 1, 2, 0, 1, 2, 3, 1, 1, 2),
        (0, 1, 3, 2, 2, 1, 0, 3, 0, 2, 3, 1, 1, 2, 1),
        (0, 2, 0, 0, 0, 0, 2, 2, 0, 0, 0, 2, 2, 2, 0),
    )),
    Exemplar("z4", "x_18_1", 18, (16, 20, 24), (153, 72, 30), (3, 2), (
        (1, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2),
        (0, 0, 1, 1, 2, 0, 0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 1, 1),
        (0, 1, 0, 2, 1, 1, 1, 1, 3, 0, 0, 1, 1, 2, 3, 3, 3, 3),
        (0, 0, 0, 2, 0, 0, 2, 2, 2, 0, 2, 0, 2, 0, 0, 2, 0, 2),
        (0, 2, 2, 0, 0, 0, 0, 2, 2, 0, 0, 0, 2, 2, 2, 2, 0, 0),
    )),
    Exemplar("z4", "x_22_1", 22, (20, 24, 28), (71, 43, 13), (3, 1), (
        (1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2),
        (0, 0, 0, 1, 1, 1, 1, 2, 0, 1, 1, 1, 1, 2, 2, 3, 3, 0, 1, 1, 1, 1),
        (0, 1, 1, 0, 1, 2, 2, 1, 2, 1, 1, 2, 3, 1, 1, 1, 2, 1, 0, 1, 1, 3),
        (0, 0, 2, 0, 0, 0, 2, 2, 2, 0, 2, 0, 0, 0, 2, 0, 2, 0, 2, 0, 2, 2),
    )),
)


# Further projective three-weight codes over F2+uF2 with S >= 3n beyond
# the classified range, as (n, k, weights, counts).
FURTHER_F2U: tuple[tuple[int, int, tuple[int, int, int], tuple[int, int, int]], ...] = (
    (11, 9, (8, 12, 16), (162, 312, 37)),
    (11, 10, (8, 12, 16), (330, 616, 77)),
    (13, 6, (12, 16, 20), (45, 17, 1)),
    (15, 9, (12, 16, 20), (190, 255, 66)),
    (18, 8, (16, 20, 24), (153, 72, 30)),
    (26, 8, (24, 28, 32), (172, 32, 51)),
    (42, 8, (40, 48, 56), (189, 63, 3)),
    (49, 7, (48, 52, 56), (91, 28, 8)),
    (54, 11, (48, 56, 64), (724, 1104, 219)),
    (61, 11, (56, 64, 72), (980, 847, 220)),
    (63, 13, (56, 64, 72), (2556, 4095, 1540)),
)


def exemplar(name: str) -> Exemplar:
    for ex in EXEMPLARS:
        if ex.name == name:
            return ex
    raise KeyError(name)
