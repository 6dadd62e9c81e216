"""Finite groups with counting measure, weights and characters.

Elements are the indices 0..order-1 and all structure lives in index tables.
The left Haar measure is counting measure (weight 1 per element), which is
also right invariant: finite groups are unimodular, so the modular function
is carried as an explicit per-element field pinned to 1.  Integrals over the
group are therefore plain sums, and every formula in the package is exact
finite linear algebra.

For a discrete group the neighbourhood filter of the identity collapses to
{{e}}, so any expression of the form  inf over neighbourhoods W of
sup_{r in W} w(r)  evaluates to w(e).  That evaluation is centralized in
:func:`weight_unit_bound`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import NoIdentity, NoInverse, NotAssociative, NotMultiplicative, NotSubmultiplicative, ValidationError

__all__ = [
    "FiniteGroup",
    "Weight",
    "Character",
    "make_group",
    "opposite_group",
    "validate_weight",
    "validate_character",
    "cyclic_group",
    "symmetric_group",
    "dihedral_group",
    "group_from_name",
    "trivial_weight",
    "trivial_character",
    "weight_unit_bound",
]

_REL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mult[s, t]`` is the index of the product s·t, ``inverse[s]`` the index
    of s^-1 and ``modular`` is the constant-1 modular function.
    """

    mult: np.ndarray
    identity: int
    inverse: np.ndarray
    modular: np.ndarray
    name: str = ""

    @property
    def order(self) -> int:
        return self.mult.shape[0]

    def elements(self) -> range:
        return range(self.order)

    def mul(self, s: int, t: int) -> int:
        return int(self.mult[s, t])

    def inv(self, s: int) -> int:
        return int(self.inverse[s])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    def opposite(self) -> "FiniteGroup":
        return opposite_group(self)

    def same_table(self, other: "FiniteGroup") -> bool:
        return bool(np.array_equal(self.mult, other.mult))


def make_group(mult_table, name: str = "") -> FiniteGroup:
    """Validate a multiplication table and return the group it defines.

    Checks entry ranges, associativity over all |G|^3 triples, existence of a
    two-sided identity and of inverses.
    """
    mult = np.asarray(mult_table, dtype=np.int64)
    if mult.ndim != 2 or mult.shape[0] != mult.shape[1]:
        raise ValidationError(f"multiplication table must be square, got shape {mult.shape}")
    n = mult.shape[0]
    if n == 0:
        raise ValidationError("group must have at least one element")
    if mult.min() < 0 or mult.max() >= n:
        raise ValidationError("multiplication table entries out of range")

    # (st)u vs s(tu), vectorized over all triples; report the first offender.
    left = mult[mult, :]               # left[s, t, u] = (st)u
    right = mult[:, mult]              # right[s, t, u] = s(tu)
    if not np.array_equal(left, right):
        s, t, u = np.argwhere(left != right)[0]
        raise NotAssociative((int(s), int(t), int(u)))

    idx = np.arange(n)
    identity = None
    for e in range(n):
        if np.array_equal(mult[e, :], idx) and np.array_equal(mult[:, e], idx):
            identity = e
            break
    if identity is None:
        raise NoIdentity()

    inverse = np.full(n, -1, dtype=np.int64)
    for s in range(n):
        hits = np.flatnonzero(mult[s, :] == identity)
        if hits.size == 0 or mult[hits[0], s] != identity:
            raise NoInverse(s)
        inverse[s] = hits[0]

    group = FiniteGroup(
        mult=mult,
        identity=int(identity),
        inverse=inverse,
        modular=np.ones(n),
        name=name or f"order-{n} group",
    )
    _freeze(group)
    return group


def _freeze(group: FiniteGroup) -> None:
    group.mult.setflags(write=False)
    group.inverse.setflags(write=False)
    group.modular.setflags(write=False)


def opposite_group(group: FiniteGroup) -> FiniteGroup:
    """The same elements with reversed multiplication; identity and inverses agree."""
    out = FiniteGroup(
        mult=group.mult.T.copy(),
        identity=group.identity,
        inverse=group.inverse.copy(),
        modular=group.modular.copy(),
        name=group.name + "^op" if group.name else "",
    )
    _freeze(out)
    return out


# -- weights and characters ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class Weight:
    """A submultiplicative positive function on a group, stored per element."""

    values: np.ndarray

    def __getitem__(self, s: int) -> float:
        return float(self.values[s])


@dataclass(frozen=True, eq=False)
class Character:
    """A multiplicative map into the nonzero complex numbers, stored per element."""

    values: np.ndarray

    def __getitem__(self, s: int) -> complex:
        return complex(self.values[s])


def validate_weight(group: FiniteGroup, values, rel_tol: float = _REL_TOL) -> Weight:
    """Check positivity and w(st) <= w(s) w(t) over all pairs."""
    vals = np.asarray(values, dtype=float)
    if vals.shape != (group.order,):
        raise ValidationError(f"weight must have length {group.order}, got {vals.shape}")
    if np.any(vals <= 0):
        raise ValidationError("weight values must be positive")
    lhs = vals[group.mult]                     # w(st)
    rhs = np.outer(vals, vals)                 # w(s) w(t)
    bad = lhs > rhs * (1 + rel_tol)
    if np.any(bad):
        s, t = np.argwhere(bad)[0]
        raise NotSubmultiplicative((int(s), int(t)), float(lhs[s, t]), float(rhs[s, t]))
    if vals[group.identity] < 1 - rel_tol:
        # forced: w(e) = w(e*e) <= w(e)^2 and w > 0
        raise NotSubmultiplicative(
            (group.identity, group.identity), float(vals[group.identity]), float(vals[group.identity] ** 2)
        )
    vals.setflags(write=False)
    return Weight(vals)


def validate_character(group: FiniteGroup, values, rel_tol: float = _REL_TOL) -> Character:
    """Check chi(st) = chi(s) chi(t) over all pairs and chi(e) = 1."""
    vals = np.asarray(values, dtype=complex)
    if vals.shape != (group.order,):
        raise ValidationError(f"character must have length {group.order}, got {vals.shape}")
    if np.any(vals == 0):
        raise ValidationError("character values must be nonzero")
    lhs = vals[group.mult]
    rhs = np.outer(vals, vals)
    scale = np.abs(rhs) + 1.0
    bad = np.abs(lhs - rhs) > rel_tol * scale
    if np.any(bad):
        s, t = np.argwhere(bad)[0]
        raise NotMultiplicative((int(s), int(t)), f"chi(st)={lhs[s, t]:.6g}, chi(s)chi(t)={rhs[s, t]:.6g}")
    if abs(vals[group.identity] - 1) > rel_tol:
        raise NotMultiplicative(group.identity, "chi(e) != 1")
    vals.setflags(write=False)
    return Character(vals)


def trivial_weight(group: FiniteGroup) -> Weight:
    return validate_weight(group, np.ones(group.order))


def trivial_character(group: FiniteGroup) -> Character:
    return validate_character(group, np.ones(group.order, dtype=complex))


def weight_unit_bound(group: FiniteGroup, weight: Weight) -> float:
    """Smallest sup of the weight over neighbourhoods of the identity.

    Discrete groups admit the neighbourhood {e}, so this is w(e).
    """
    return float(weight.values[group.identity])


# -- named constructions -------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError("cyclic group order must be >= 1")
    idx = np.arange(n)
    mult = (idx[:, None] + idx[None, :]) % n
    return make_group(mult, name=f"Z_{n}")


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on 0..n-1, elements in lexicographic permutation order."""
    if not 1 <= n <= 6:
        raise ValidationError("symmetric group supported for 1 <= n <= 6")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    order = len(perms)
    mult = np.empty((order, order), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            mult[i, j] = index[tuple(p[q[x]] for x in range(n))]
    return make_group(mult, name=f"S_{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """D_n of order 2n, realized as symmetries x -> +-x + k of Z/n."""
    if n < 1:
        raise ValidationError("dihedral group parameter must be >= 1")
    # element (sign, shift) acts by x -> sign*x + shift mod n
    elems = [(1, k) for k in range(n)] + [(-1, k) for k in range(n)]
    index = {el: i for i, el in enumerate(elems)}
    order = 2 * n
    mult = np.empty((order, order), dtype=np.int64)
    for i, (s1, k1) in enumerate(elems):
        for j, (s2, k2) in enumerate(elems):
            # (s1,k1) after (s2,k2): x -> s1*(s2*x + k2) + k1
            mult[i, j] = index[(s1 * s2, (s1 * k2 + k1) % n)]
    return make_group(mult, name=f"D_{n}")


def group_from_name(name: str) -> FiniteGroup:
    """Parse names like "Z_4", "S_3", "D_5" (case-insensitive, "Z4" accepted)."""
    cleaned = name.strip().upper().replace("_", "")
    if len(cleaned) < 2 or cleaned[0] not in "ZSD" or not cleaned[1:].isdigit():
        raise ValidationError(f"unknown group name {name!r}; expected Z_n, S_n or D_n")
    kind, n = cleaned[0], int(cleaned[1:])
    if kind == "Z":
        return cyclic_group(n)
    if kind == "S":
        return symmetric_group(n)
    return dihedral_group(n)
