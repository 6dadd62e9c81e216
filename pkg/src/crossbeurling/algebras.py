"""Finite-dimensional normed associative algebras via structure constants.

An algebra of dimension d is the coefficient space C^d with product
``e_i e_j = sum_k structure[i, j, k] e_k``.  Norms are restricted to three
exactly computable tags:

* ``"sup"``      -- max of coordinate moduli,
* ``"one"``      -- sum of coordinate moduli,
* ``"operator"`` -- largest singular value of the coefficient vector
  reshaped (row-major) to an n x n matrix; requires d = n^2.

Bounded approximate one-sided identities degenerate at finite dimension to a
single exact one-sided identity element u; the bound M is |u|.  Identities
are found by linear solves at construction, so fixtures with only a right
identity (the column algebra) carry exactly that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoApproximateIdentity, ValidationError

__all__ = [
    "NormedAlgebra",
    "make_algebra",
    "opposite_algebra",
    "left_regular",
    "scalars",
    "diagonal_algebra",
    "matrix_algebra",
    "column_algebra",
    "algebra_from_name",
]

NORM_TAGS = ("sup", "one", "operator")

_ASSOC_TOL = 1e-12
_SOLVE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class NormedAlgebra:
    structure: np.ndarray          # (d, d, d) complex
    norm_tag: str
    identity: np.ndarray | None
    left_identity: np.ndarray | None
    right_identity: np.ndarray | None
    approx_identity_bound: float | None   # M >= |u| for the declared one-sided identity
    name: str = ""

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    @property
    def matrix_size(self) -> int | None:
        """n with dim = n^2 for the operator tag, else None."""
        if self.norm_tag != "operator":
            return None
        return math.isqrt(self.dim)

    def multiply(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        if a.shape != (self.dim,) or b.shape != (self.dim,):
            raise DimensionMismatch((self.dim,), (a.shape, b.shape))
        return np.einsum("i,j,ijk->k", a, b, self.structure)

    def norm(self, a) -> float:
        a = np.asarray(a, dtype=complex)
        if a.shape != (self.dim,):
            raise DimensionMismatch((self.dim,), a.shape)
        if self.norm_tag == "sup":
            return float(np.max(np.abs(a)))
        if self.norm_tag == "one":
            return float(np.sum(np.abs(a)))
        n = self.matrix_size
        return float(np.linalg.norm(a.reshape(n, n), 2))

    def left_mult_matrix(self, a) -> np.ndarray:
        """Matrix of b -> a b on coefficient space."""
        a = np.asarray(a, dtype=complex)
        return np.einsum("i,ijk->kj", a, self.structure)

    def right_mult_matrix(self, a) -> np.ndarray:
        """Matrix of b -> b a on coefficient space."""
        a = np.asarray(a, dtype=complex)
        return np.einsum("j,ijk->ki", a, self.structure)

    def basis_left_mults(self) -> np.ndarray:
        """(d, d, d) stack with slice i the matrix of left multiplication by e_i."""
        return np.einsum("ijk->ikj", self.structure)

    def basis_right_mults(self) -> np.ndarray:
        return np.einsum("ijk->jki", self.structure)

    def one_sided_identity(self, side: str) -> np.ndarray:
        """Return the stored identity for ``side`` in {"left", "right"}; raise if absent."""
        u = self.identity
        if u is None:
            u = self.left_identity if side == "left" else self.right_identity
        if u is None:
            raise NoApproximateIdentity(side)
        return u

    def opposite(self) -> "NormedAlgebra":
        return opposite_algebra(self)


def make_algebra(structure, norm_tag: str, name: str = "", identity=None) -> NormedAlgebra:
    """Validate structure constants and assemble the algebra.

    Associativity is checked on all basis triples.  One- and two-sided
    identities are found by least squares (min-coefficient-norm solution when
    the identity is not unique); an explicitly passed ``identity`` overrides
    the search for the two-sided slot after verification.
    """
    c = np.asarray(structure, dtype=complex)
    if c.ndim != 3 or len(set(c.shape)) != 1:
        raise ValidationError(f"structure constants must be (d, d, d), got {c.shape}")
    d = c.shape[0]
    if norm_tag not in NORM_TAGS:
        raise ValidationError(f"norm tag must be one of {NORM_TAGS}, got {norm_tag!r}")
    if norm_tag == "operator" and math.isqrt(d) ** 2 != d:
        raise ValidationError("operator norm tag requires dim to be a perfect square")

    lhs = np.einsum("ijm,mkl->ijkl", c, c)   # (e_i e_j) e_k
    rhs = np.einsum("jkm,iml->ijkl", c, c)   # e_i (e_j e_k)
    err = np.max(np.abs(lhs - rhs))
    if err > _ASSOC_TOL * max(1.0, np.max(np.abs(c)) ** 2):
        i, j, k = np.unravel_index(np.argmax(np.sum(np.abs(lhs - rhs), axis=-1)), (d, d, d))
        raise ValidationError(f"structure constants not associative at basis triple ({i}, {j}, {k})")

    left = _solve_identity(c, side="left")
    right = _solve_identity(c, side="right")
    two_sided = None
    if identity is not None:
        u = np.asarray(identity, dtype=complex)
        if not (_is_identity(c, u, "left") and _is_identity(c, u, "right")):
            raise ValidationError("declared identity does not satisfy its defining equations")
        two_sided = u
    elif left is not None and right is not None:
        # a left and a right identity coincide, so reuse either
        two_sided = left

    alg = NormedAlgebra(
        structure=c,
        norm_tag=norm_tag,
        identity=two_sided,
        left_identity=left,
        right_identity=right,
        approx_identity_bound=None,
        name=name or f"dim-{d} algebra",
    )
    u = two_sided if two_sided is not None else (left if left is not None else right)
    bound = alg.norm(u) if u is not None else None
    object.__setattr__(alg, "approx_identity_bound", bound)
    c.setflags(write=False)
    return alg


def _solve_identity(c: np.ndarray, side: str) -> np.ndarray | None:
    d = c.shape[0]
    if side == "left":
        # u e_j = e_j: sum_i u_i c[i, j, k] = delta_{jk}
        a = c.transpose(1, 2, 0).reshape(d * d, d)
    else:
        # e_i u = e_i: sum_j c[i, j, k] u_j = delta_{ik}
        a = c.transpose(0, 2, 1).reshape(d * d, d)
    b = np.eye(d, dtype=complex).reshape(d * d)
    u, *_ = np.linalg.lstsq(a, b, rcond=None)
    if np.linalg.norm(a @ u - b) > _SOLVE_TOL * max(1.0, np.linalg.norm(b)):
        return None
    u.setflags(write=False)
    return u


def _is_identity(c: np.ndarray, u: np.ndarray, side: str) -> bool:
    d = c.shape[0]
    eye = np.eye(d, dtype=complex)
    if side == "left":
        prod = np.einsum("i,ijk->jk", u, c).T
    else:
        prod = np.einsum("j,ijk->ik", u, c)
    return bool(np.max(np.abs(prod - eye)) <= _SOLVE_TOL)


def opposite_algebra(algebra: NormedAlgebra) -> NormedAlgebra:
    """Reverse the product; the norm is unchanged and one-sided identities swap roles."""
    out = NormedAlgebra(
        structure=algebra.structure.transpose(1, 0, 2).copy(),
        norm_tag=algebra.norm_tag,
        identity=algebra.identity,
        left_identity=algebra.right_identity,
        right_identity=algebra.left_identity,
        approx_identity_bound=algebra.approx_identity_bound,
        name=algebra.name + "^op" if algebra.name else "",
    )
    out.structure.setflags(write=False)
    return out


def left_regular(algebra: NormedAlgebra) -> np.ndarray:
    """The images of the basis under a -> (b -> ab), as a (d, d, d) stack.

    Multiplicative: the matrix for e_i e_j equals the product of the matrices
    for e_i and e_j, which the crossed-product machinery relies on.
    """
    return algebra.basis_left_mults()


# -- named fixtures ------------------------------------------------------------


def scalars() -> NormedAlgebra:
    return make_algebra(np.ones((1, 1, 1), dtype=complex), "sup", name="scalars")


def diagonal_algebra(n: int) -> NormedAlgebra:
    """C^n with pointwise product and the sup norm."""
    c = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        c[i, i, i] = 1
    return make_algebra(c, "sup", name=f"diag({n})")


def matrix_algebra(n: int) -> NormedAlgebra:
    """Full matrix algebra M_n with the spectral norm; basis E_ij in row-major order."""
    d = n * n
    c = np.zeros((d, d, d), dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        c[i * n + j, k * n + l, i * n + l] = 1
    return make_algebra(c, "operator", name=f"matrix({n})")


def column_algebra() -> NormedAlgebra:
    """The 2-dim algebra (x, y)·(x', y') = (x x', y x'); right identities only.

    This is the column matrix algebra {[[x, 0], [y, 0]]} with the sup norm on
    (x, y).  It has the right identity (1, 0) and provably no left identity,
    exercising one-sided hypotheses.
    """
    c = np.zeros((2, 2, 2), dtype=complex)
    c[0, 0, 0] = 1   # x x'
    c[1, 0, 1] = 1   # y x'
    return make_algebra(c, "sup", name="column(2)")


def algebra_from_name(name: str) -> NormedAlgebra:
    """Parse "scalars", "diag(n)", "matrix(n)" or "column(2)"."""
    cleaned = name.strip().lower()
    if cleaned == "scalars":
        return scalars()
    for prefix, builder in (("diag", diagonal_algebra), ("matrix", matrix_algebra)):
        if cleaned.startswith(prefix + "(") and cleaned.endswith(")"):
            return builder(int(cleaned[len(prefix) + 1 : -1]))
    if cleaned in ("column(2)", "column"):
        return column_algebra()
    raise ValidationError(f"unknown algebra name {name!r}")
