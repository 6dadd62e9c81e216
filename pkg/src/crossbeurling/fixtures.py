"""Built-in fixture systems used by the verification suites and tests.

F1  trivial scalars over Z2
F2  diag(2) with the coordinate flip over Z2, weight 1 (isometric)
F3  M_2(C) over S3 with a non-unitary conjugation action and a nontrivial
    weight with w(e) = 1 (non-isometric, C_alpha > 1)
F4  the column algebra over Z2 (right identity only), weight (1, 2)
F5  scalars over Z4 with the character chi(g) = i
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebras import column_algebra, diagonal_algebra, matrix_algebra, scalars
from .dynamics import (
    DynamicalSystem,
    conjugation_action,
    coordinate_permutation_action,
    sign_flip_action,
    trivial_action,
)
from .groups import Character, FiniteGroup, Weight, cyclic_group, symmetric_group, validate_character, validate_weight, trivial_weight

__all__ = ["Fixture", "fixture", "FIXTURE_IDS", "standard_rep_s3"]

FIXTURE_IDS = ("F1", "F2", "F3", "F4", "F5")


@dataclass(frozen=True, eq=False)
class Fixture:
    fixture_id: str
    system: DynamicalSystem
    weight: Weight
    character: Character | None = None

    @property
    def group(self) -> FiniteGroup:
        return self.system.group

    @property
    def algebra(self):
        return self.system.algebra


def standard_rep_s3(skew: float = 2.0) -> np.ndarray:
    """The 2-dim standard representation of S3, conjugated by diag(skew, 1).

    The plain standard representation is orthogonal; the diagonal conjugation
    makes the induced conjugation action non-isometric when skew != 1.
    """
    import itertools

    perms = list(itertools.permutations(range(3)))
    # orthonormal basis of the sum-zero plane in R^3
    b = np.array([[1, -1, 0], [1, 1, -2]], dtype=float)
    b[0] /= np.linalg.norm(b[0])
    b[1] /= np.linalg.norm(b[1])
    s = np.diag([skew, 1.0])
    s_inv = np.linalg.inv(s)
    mats = []
    for p in perms:
        pm = np.zeros((3, 3))
        for x in range(3):
            pm[p[x], x] = 1
        mats.append(s @ (b @ pm @ b.T) @ s_inv)
    return np.asarray(mats, dtype=complex)


def _weight_s3(group: FiniteGroup) -> Weight:
    """w(e) = 1, 2 on transpositions, 3 on 3-cycles; submultiplicative."""
    values = np.empty(group.order)
    for g in group.elements():
        if g == group.identity:
            values[g] = 1.0
        elif group.inv(g) == g:
            values[g] = 2.0
        else:
            values[g] = 3.0
    return validate_weight(group, values)


def fixture(fixture_id: str) -> Fixture:
    fixture_id = fixture_id.upper()
    if fixture_id == "F1":
        z2 = cyclic_group(2)
        return Fixture("F1", trivial_action(scalars(), z2), trivial_weight(z2))
    if fixture_id == "F2":
        z2 = cyclic_group(2)
        system = coordinate_permutation_action(diagonal_algebra(2), z2, perms=[[0, 1], [1, 0]])
        return Fixture("F2", system, trivial_weight(z2))
    if fixture_id == "F3":
        s3 = symmetric_group(3)
        system = conjugation_action(matrix_algebra(2), s3, standard_rep_s3())
        return Fixture("F3", system, _weight_s3(s3))
    if fixture_id == "F4":
        z2 = cyclic_group(2)
        system = sign_flip_action(column_algebra(), z2, signs=[[1, 1], [1, -1]])
        return Fixture("F4", system, validate_weight(z2, [1.0, 2.0]))
    if fixture_id == "F5":
        z4 = cyclic_group(4)
        system = trivial_action(scalars(), z4)
        chi = validate_character(z4, [1, 1j, -1, -1j])
        return Fixture("F5", system, trivial_weight(z4), chi)
    raise ValueError(f"unknown fixture {fixture_id!r}")
