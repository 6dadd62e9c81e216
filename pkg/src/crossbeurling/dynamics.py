"""Dynamical systems: a group acting on a normed algebra by automorphisms.

The action is stored as one invertible coefficient matrix per group element.
Construction verifies the homomorphism law over all pairs, multiplicativity
of each automorphism on basis pairs (enough, by bilinearity), and
invertibility.  The uniform bound ``c_alpha`` is kept as a certified upper
bound for max_g |alpha_g| in the algebra's operator norm; for conjugation
actions on matrix algebras the exact value max_g |rho_g| |rho_g^{-1}| is
attained at rank-one elements, so the dedicated constructor records it
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebras import NormedAlgebra, opposite_algebra
from .errors import NotHomomorphism, NotInvertible, NotMultiplicative, ValidationError
from .groups import FiniteGroup, opposite_group
from .spaces import inner_ball_sup

__all__ = [
    "DynamicalSystem",
    "make_system",
    "opposite_system",
    "trivial_action",
    "coordinate_permutation_action",
    "sign_flip_action",
    "conjugation_action",
]

_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DynamicalSystem:
    algebra: NormedAlgebra
    group: FiniteGroup
    alpha: np.ndarray            # (|G|, d, d), alpha[g] acts on coefficients
    c_alpha: float               # certified upper bound for max_g |alpha_g|
    c_alpha_lower: float
    isometric: bool
    name: str = ""

    def apply(self, g: int, a) -> np.ndarray:
        return self.alpha[g] @ np.asarray(a, dtype=complex)

    def apply_inv(self, g: int, a) -> np.ndarray:
        return self.alpha[self.group.inv(g)] @ np.asarray(a, dtype=complex)

    def opposite(self) -> "DynamicalSystem":
        return opposite_system(self)

    def partial_opposites(self) -> tuple["DynamicalSystem", "DynamicalSystem"]:
        """The companions (A, G^o, alpha^o) and (A^o, G, alpha).

        Both reuse the same set of action matrices (alpha over inverses, or
        alpha itself) and the same coefficient norm, so the uniform bound
        carries over verbatim.
        """
        inv_alpha = self.alpha[self.group.inverse].copy()
        group_op = _carry_over(self, self.algebra, opposite_group(self.group), inv_alpha, self.name + " (group-op)")
        alg_op = _carry_over(self, opposite_algebra(self.algebra), self.group, self.alpha.copy(), self.name + " (algebra-op)")
        return group_op, alg_op


def make_system(algebra: NormedAlgebra, group: FiniteGroup, alpha, name: str = "") -> DynamicalSystem:
    alpha = np.asarray(alpha, dtype=complex)
    d, n = algebra.dim, group.order
    if alpha.shape != (n, d, d):
        raise ValidationError(f"action must have shape {(n, d, d)}, got {alpha.shape}")

    if np.max(np.abs(alpha[group.identity] - np.eye(d))) > _TOL:
        raise NotHomomorphism((group.identity, group.identity))
    scale = max(1.0, float(np.max(np.abs(alpha))) ** 2)
    for g in group.elements():
        for h in group.elements():
            if np.max(np.abs(alpha[g] @ alpha[h] - alpha[group.mul(g, h)])) > _TOL * scale:
                raise NotHomomorphism((g, h))
    for g in group.elements():
        # multiplicative on basis pairs: alpha_g(e_i e_j) = alpha_g(e_i) alpha_g(e_j)
        lhs = np.einsum("ijk,lk->ijl", algebra.structure, alpha[g])
        rhs = np.einsum("ri,sj,rsl->ijl", alpha[g], alpha[g], algebra.structure)
        if np.max(np.abs(lhs - rhs)) > _TOL * scale * max(1.0, float(np.max(np.abs(algebra.structure)))):
            raise NotMultiplicative(g, "automorphism is not multiplicative on basis pairs")
        if abs(np.linalg.det(alpha[g])) < 1e-12:
            raise NotInvertible(g)

    return _assemble(algebra, group, alpha, name)


def _assemble(algebra, group, alpha, name) -> DynamicalSystem:
    lower, upper = _uniform_bound(algebra, alpha)
    isometric = _detect_isometric(algebra, alpha)
    if isometric:
        lower = upper = 1.0
    alpha.setflags(write=False)
    return DynamicalSystem(
        algebra=algebra,
        group=group,
        alpha=alpha,
        c_alpha=upper,
        c_alpha_lower=lower,
        isometric=isometric,
        name=name,
    )


def _carry_over(source: DynamicalSystem, algebra, group, alpha, name) -> DynamicalSystem:
    alpha.setflags(write=False)
    return DynamicalSystem(
        algebra=algebra,
        group=group,
        alpha=alpha,
        c_alpha=source.c_alpha,
        c_alpha_lower=source.c_alpha_lower,
        isometric=source.isometric,
        name=name,
    )


def _uniform_bound(algebra: NormedAlgebra, alpha: np.ndarray) -> tuple[float, float]:
    lower = upper = 0.0
    for mat in alpha:
        bounds = inner_ball_sup(lambda a, mat=mat: algebra.norm(mat @ a), algebra)
        lower = max(lower, bounds.lower)
        upper = max(upper, bounds.upper)
    return lower, upper


def _detect_isometric(algebra: NormedAlgebra, alpha: np.ndarray) -> bool:
    """Exact detection for sup/one tags: permutation matrices with unimodular phases."""
    if algebra.norm_tag not in ("sup", "one"):
        return _sampled_isometric(algebra, alpha)
    for mat in alpha:
        absmat = np.abs(mat)
        if np.max(np.abs(absmat @ absmat.T - np.eye(algebra.dim))) > 1e-12:
            return False
        if not np.allclose(absmat[absmat > 1e-14], 1.0, atol=1e-12):
            return False
    return True


def _sampled_isometric(algebra: NormedAlgebra, alpha: np.ndarray, samples: int = 32) -> bool:
    rng = np.random.default_rng(11)
    d = algebra.dim
    for mat in alpha:
        for _ in range(samples):
            a = rng.normal(size=d) + 1j * rng.normal(size=d)
            na = algebra.norm(a)
            if na < 1e-12:
                continue
            if abs(algebra.norm(mat @ a) - na) > 1e-9 * na:
                return False
    return True


def opposite_system(system: DynamicalSystem) -> DynamicalSystem:
    """The companion system on the opposite algebra and group, alpha^o_r = alpha_{r^-1}."""
    inv_alpha = system.alpha[system.group.inverse].copy()
    return _carry_over(
        system,
        opposite_algebra(system.algebra),
        opposite_group(system.group),
        inv_alpha,
        system.name + "^op" if system.name else "",
    )


# -- named actions ---------------------------------------------------------------


def trivial_action(algebra: NormedAlgebra, group: FiniteGroup) -> DynamicalSystem:
    alpha = np.broadcast_to(np.eye(algebra.dim, dtype=complex), (group.order, algebra.dim, algebra.dim)).copy()
    return make_system(algebra, group, alpha, name=f"({algebra.name}, {group.name}, triv)")


def coordinate_permutation_action(algebra: NormedAlgebra, group: FiniteGroup, perms) -> DynamicalSystem:
    """alpha_g permutes coordinates by perms[g]; requires a coordinatewise product."""
    d = algebra.dim
    alpha = np.zeros((group.order, d, d), dtype=complex)
    for g in group.elements():
        perm = perms[g]
        for i in range(d):
            alpha[g, perm[i], i] = 1
    return make_system(algebra, group, alpha, name=f"({algebra.name}, {group.name}, perm)")


def sign_flip_action(algebra: NormedAlgebra, group: FiniteGroup, signs) -> DynamicalSystem:
    """alpha_g = diag(signs[g]); signs[g][i] in {1, -1}."""
    alpha = np.stack([np.diag(np.asarray(s, dtype=complex)) for s in signs])
    return make_system(algebra, group, alpha, name=f"({algebra.name}, {group.name}, signs)")


def conjugation_action(algebra: NormedAlgebra, group: FiniteGroup, rho) -> DynamicalSystem:
    """alpha_g(a) = rho_g a rho_g^{-1} on a matrix algebra (operator tag).

    The uniform bound max_g |rho_g| |rho_g^{-1}| is attained at rank-one
    matrices, so it is recorded as an exact value.
    """
    if algebra.norm_tag != "operator":
        raise ValidationError("conjugation action needs a matrix algebra")
    n = algebra.matrix_size
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (group.order, n, n):
        raise ValidationError(f"representation must have shape {(group.order, n, n)}")
    alpha = np.empty((group.order, n * n, n * n), dtype=complex)
    kappa = 0.0
    for g in group.elements():
        rinv = np.linalg.inv(rho[g])
        # vec(r a r^-1) = kron(r, (r^-1)^T) vec(a), row-major vec
        alpha[g] = np.kron(rho[g], rinv.T)
        kappa = max(kappa, float(np.linalg.norm(rho[g], 2) * np.linalg.norm(rinv, 2)))
    system = make_system(algebra, group, alpha, name=f"({algebra.name}, {group.name}, conj)")
    object.__setattr__(system, "c_alpha", kappa)
    object.__setattr__(system, "c_alpha_lower", kappa)
    object.__setattr__(system, "isometric", bool(abs(kappa - 1) < 1e-12))
    return system
