"""Projective tensor products of finite-dimensional normed algebras and the
product of commuting representations.

The projective norm of a tensor t is  inf sum_k |x_k| |y_k|  over
decompositions t = sum_k x_k (x) y_k.  It is estimated, not computed: upper
bounds come from SVD-seeded decompositions mixed by random unitaries, lower
bounds from norm-one bilinear forms (products of dual functionals).  The two
meet on elementary tensors, which is what the verification fixtures use.

Commuting representations pi_1, pi_2 combine to
(pi_1 . pi_2)(b_1 (x) b_2) = pi_1(b_1) pi_2(b_2); for unital factors the
decomposition pi_i = pi(... (x) 1 (x) ...) inverts it uniquely.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .algebras import NormedAlgebra
from .crossed import CrossedProduct
from .errors import NotCommuting, NotNonDegenerate, ValidationError
from .spaces import NormBounds, as_bounds

__all__ = [
    "TensorAlgebra",
    "TensorRep",
    "projective_norm_bounds",
    "odot",
    "decompose_rep",
    "n_fold_correspondence",
    "recover_factor_rep",
    "tensor_to_json",
    "tensor_from_json",
]

_TOL = 1e-9


def _factor_data(factor):
    """structure constants, identity coordinates (or None), norm callable (or None)."""
    if isinstance(factor, NormedAlgebra):
        return factor.structure, factor.identity, factor.norm
    if isinstance(factor, CrossedProduct):
        one = None
        if factor.system.algebra.identity is not None:
            one = factor.identity_coords()
        return factor.structure, one, factor.norm_bounds
    if isinstance(factor, TensorAlgebra):
        try:
            one = factor.identity()
        except ValidationError:
            one = None
        return factor.structure, one, None
    raise ValidationError(f"unsupported tensor factor {type(factor).__name__}")


@dataclass(frozen=True, eq=False)
class TensorAlgebra:
    """Iterated Kronecker product of algebra structures, row-major index order."""

    factors: tuple
    structure: np.ndarray
    factor_dims: tuple

    @classmethod
    def of(cls, *factors) -> "TensorAlgebra":
        if not factors:
            raise ValidationError("tensor product needs at least one factor")
        datas = [_factor_data(f) for f in factors]
        structure = reduce(_kron_structure, (d[0] for d in datas))
        return cls(
            factors=tuple(factors),
            structure=structure,
            factor_dims=tuple(d[0].shape[0] for d in datas),
        )

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def multiply(self, a, b) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(a, complex), np.asarray(b, complex), self.structure)

    def identity(self) -> np.ndarray:
        parts = []
        for factor in self.factors:
            _, one, _ = _factor_data(factor)
            if one is None:
                raise ValidationError("tensor identity needs unital factors")
            parts.append(np.asarray(one, dtype=complex))
        return reduce(np.kron, parts)

    def elementary(self, *parts) -> np.ndarray:
        if len(parts) != len(self.factors):
            raise ValidationError("one coefficient vector per factor required")
        return reduce(np.kron, [np.asarray(p, dtype=complex) for p in parts])

    def factor_norm(self, index: int, v) -> NormBounds:
        _, _, norm = _factor_data(self.factors[index])
        if norm is None:
            raise ValidationError("factor has no norm oracle")
        return as_bounds(norm(v))


def _kron_structure(c1: np.ndarray, c2: np.ndarray) -> np.ndarray:
    d1, d2 = c1.shape[0], c2.shape[0]
    out = np.einsum("ijk,abc->iajbkc", c1, c2)
    d = d1 * d2
    return out.reshape(d, d, d)


# -- projective norm estimation ----------------------------------------------------


def _dual_norm(algebra: NormedAlgebra, phi: np.ndarray) -> float:
    if algebra.norm_tag == "sup":
        return float(np.sum(np.abs(phi)))
    if algebra.norm_tag == "one":
        return float(np.max(np.abs(phi)))
    n = algebra.matrix_size
    return float(np.sum(np.linalg.svd(phi.reshape(n, n), compute_uv=False)))


def _norming_functional(algebra: NormedAlgebra, v: np.ndarray) -> np.ndarray:
    """phi with dual norm 1 and phi(v) = |v| (exact for the three tags)."""
    v = np.asarray(v, dtype=complex)
    if algebra.norm_tag == "sup":
        m = int(np.argmax(np.abs(v)))
        phi = np.zeros(algebra.dim, dtype=complex)
        phi[m] = np.conj(v[m]) / abs(v[m]) if abs(v[m]) > 0 else 1.0
        return phi
    if algebra.norm_tag == "one":
        phi = np.where(np.abs(v) > 0, np.conj(v) / np.maximum(np.abs(v), 1e-300), 1.0)
        return phi.astype(complex)
    n = algebra.matrix_size
    u, _, wh = np.linalg.svd(v.reshape(n, n))
    # phi(X) = u_1^H X w_1 has nuclear norm 1 and phi(v) = sigma_1 = |v|
    return np.outer(np.conj(u[:, 0]), np.conj(wh[0])).reshape(algebra.dim)


def projective_norm_bounds(
    t,
    algebra1: NormedAlgebra,
    algebra2: NormedAlgebra,
    iterations: int = 24,
    rng: np.random.Generator | None = None,
) -> NormBounds:
    """Certified [lower, upper] for the projective norm of t in A1 (x) A2."""
    rng = rng if rng is not None else np.random.default_rng(13)
    d1, d2 = algebra1.dim, algebra2.dim
    mat = np.asarray(t, dtype=complex).reshape(d1, d2)
    if np.max(np.abs(mat)) == 0:
        return NormBounds.exact(0.0)

    u, svals, vh = np.linalg.svd(mat)
    r = int(np.sum(svals > 1e-14 * svals[0]))
    x = u[:, :r] * svals[:r]
    y = vh[:r].T

    def decomposition_cost(xm, ym):
        return float(
            sum(algebra1.norm(xm[:, k]) * algebra2.norm(ym[:, k]) for k in range(xm.shape[1]))
        )

    upper = decomposition_cost(x, y)
    # plain coordinate decomposition
    basis_cost = 0.0
    e1 = np.eye(d1, dtype=complex)
    e2 = np.eye(d2, dtype=complex)
    for i in range(d1):
        for j in range(d2):
            if abs(mat[i, j]) > 0:
                basis_cost += abs(mat[i, j]) * algebra1.norm(e1[i]) * algebra2.norm(e2[j])
    upper = min(upper, basis_cost)
    for _ in range(iterations):
        z = rng.normal(size=(r, r)) + 1j * rng.normal(size=(r, r))
        w, _ = np.linalg.qr(z)
        upper = min(upper, decomposition_cost(x @ w, y @ np.conj(w)))

    duals1 = [_norming_functional(algebra1, x[:, k]) for k in range(r)]
    duals2 = [_norming_functional(algebra2, y[:, k]) for k in range(r)]
    for i in range(d1):
        duals1.append(_norming_functional(algebra1, e1[i]))
    for j in range(d2):
        duals2.append(_norming_functional(algebra2, e2[j]))
    for _ in range(iterations):
        duals1.append(rng.normal(size=d1) + 1j * rng.normal(size=d1))
        duals2.append(rng.normal(size=d2) + 1j * rng.normal(size=d2))
    lower = 0.0
    for phi in duals1:
        np1 = _dual_norm(algebra1, phi)
        if np1 <= 1e-14:
            continue
        for psi in duals2:
            np2 = _dual_norm(algebra2, psi)
            if np2 <= 1e-14:
                continue
            lower = max(lower, abs(phi @ mat @ psi) / (np1 * np2))
    return NormBounds(min(lower, upper), upper)


# -- representations of tensor products ---------------------------------------------


@dataclass(frozen=True, eq=False)
class TensorRep:
    """A representation of a tensor-product algebra by its basis images."""

    algebra: TensorAlgebra
    space: object
    tensor: np.ndarray    # (m, m, dim)
    non_degenerate: bool

    @property
    def m(self) -> int:
        return self.tensor.shape[0]

    def apply(self, v) -> np.ndarray:
        return np.einsum("mnq,q->mn", self.tensor, np.asarray(v, dtype=complex))

    def verify_multiplicative(self, tol: float = _TOL) -> None:
        dim = self.algebra.dim
        scale = max(1.0, float(np.max(np.abs(self.tensor))) ** 2)
        basis = np.eye(dim, dtype=complex)
        for i in range(dim):
            ti = self.apply(basis[i])
            for j in range(dim):
                prod = self.apply(self.algebra.multiply(basis[i], basis[j]))
                if np.max(np.abs(prod - ti @ self.apply(basis[j]))) > tol * scale:
                    raise ValidationError(f"tensor representation not multiplicative at ({i}, {j})")


def _rank_non_degenerate(tensor: np.ndarray) -> bool:
    # span of the image acting on the space: columns of the side-by-side images
    m = tensor.shape[0]
    stacked = tensor.transpose(0, 2, 1).reshape(m, -1)
    return bool(np.linalg.matrix_rank(stacked, tol=1e-10 * max(1.0, float(np.max(np.abs(tensor))))) == m)


def odot(rep1, rep2, tol: float = _TOL) -> TensorRep:
    """The product representation of commuting representations on one space.

    ``rep1``/``rep2`` expose ``tensor`` (m, m, d_i) basis images and a shared
    ``space``; raises :class:`NotCommuting` when images fail to commute.
    """
    t1, t2 = np.asarray(rep1.tensor), np.asarray(rep2.tensor)
    if t1.shape[0] != t2.shape[0]:
        raise ValidationError("representations must share the target space")
    scale = max(1.0, float(np.max(np.abs(t1))) * float(np.max(np.abs(t2))))
    for i in range(t1.shape[2]):
        a = t1[:, :, i]
        for j in range(t2.shape[2]):
            b = t2[:, :, j]
            if np.max(np.abs(a @ b - b @ a)) > tol * scale:
                raise NotCommuting(f"factor-1 basis {i}", f"factor-2 basis {j}")
    factor1 = getattr(rep1, "domain", None) or rep1.algebra
    factor2 = getattr(rep2, "domain", None) or rep2.algebra
    algebra = TensorAlgebra.of(factor1, factor2)
    d1, d2 = t1.shape[2], t2.shape[2]
    m = t1.shape[0]
    images = np.empty((m, m, d1 * d2), dtype=complex)
    for i in range(d1):
        for j in range(d2):
            images[:, :, i * d2 + j] = t1[:, :, i] @ t2[:, :, j]
    rep = TensorRep(
        algebra=algebra,
        space=rep1.space,
        tensor=images,
        non_degenerate=_rank_non_degenerate(images),
    )
    rep.verify_multiplicative(tol)
    return rep


def decompose_rep(rep: TensorRep, tol: float = _TOL):
    """Recover the unique commuting factor representations of a two-factor rep.

    pi_1(b) = pi(b (x) 1) and pi_2(b) = pi(1 (x) b); requires non-degeneracy
    and unital factors.
    """
    if not rep.non_degenerate:
        raise NotNonDegenerate("decomposition needs a non-degenerate representation")
    if len(rep.algebra.factors) != 2:
        raise ValidationError("decompose_rep expects exactly two factors")
    d1, d2 = rep.algebra.factor_dims
    _, one1, _ = _factor_data(rep.algebra.factors[0])
    _, one2, _ = _factor_data(rep.algebra.factors[1])
    if one1 is None or one2 is None:
        raise ValidationError("decomposition needs unital factors")
    basis1 = np.eye(d1, dtype=complex)
    basis2 = np.eye(d2, dtype=complex)
    t1 = np.stack([rep.apply(np.kron(basis1[i], one2)) for i in range(d1)], axis=-1)
    t2 = np.stack([rep.apply(np.kron(one1, basis2[j])) for j in range(d2)], axis=-1)
    return t1, t2


def n_fold_correspondence(crossed_products, pairs, tol: float = _TOL) -> TensorRep:
    """Combine commuting pairs over several systems into one representation of
    the tensor product of their crossed products."""
    from .correspondence import pair_to_rep

    if len(crossed_products) != len(pairs):
        raise ValidationError("one pair per crossed product required")
    mats = []
    for idx, pair in enumerate(pairs):
        mats.append((idx, list(pair.pi) + list(pair.u)))
    scale = max(1.0, max(float(np.max(np.abs(m))) for _, ms in mats for m in ms) ** 2)
    for i, (idx_i, ms_i) in enumerate(mats):
        for idx_j, ms_j in mats[i + 1 :]:
            for a in ms_i:
                for b in ms_j:
                    if np.max(np.abs(a @ b - b @ a)) > tol * scale:
                        raise NotCommuting(f"pair {idx_i}", f"pair {idx_j}")

    reps = [pair_to_rep(cp, pair, tol) for cp, pair in zip(crossed_products, pairs)]
    combined = reps[0]
    for rep in reps[1:]:
        combined = odot(combined, rep, tol)
    return combined


def tensor_to_json(t, factor_dims) -> dict:
    """Flat coefficient array as [re, im] pairs, with factor-dimension metadata."""
    t = np.asarray(t, dtype=complex).reshape(-1)
    return {
        "factor_dims": [int(d) for d in factor_dims],
        "coefficients": [[float(z.real), float(z.imag)] for z in t],
    }


def tensor_from_json(data: dict) -> tuple[np.ndarray, tuple]:
    dims = tuple(int(d) for d in data["factor_dims"])
    coeffs = np.array([complex(re, im) for re, im in data["coefficients"]])
    expected = int(np.prod(dims))
    if coeffs.size != expected:
        raise ValidationError(f"expected {expected} coefficients for factor dims {dims}, got {coeffs.size}")
    return coeffs, dims


def recover_factor_rep(rep: TensorRep, index: int) -> np.ndarray:
    """Images of factor ``index`` inside an n-fold product: slot b, identities elsewhere."""
    datas = [_factor_data(f) for f in rep.algebra.factors]
    dims = rep.algebra.factor_dims
    d = dims[index]
    basis = np.eye(d, dtype=complex)
    images = []
    for k in range(d):
        parts = []
        for i, (_, one, _) in enumerate(datas):
            if i == index:
                parts.append(basis[k])
            else:
                if one is None:
                    raise ValidationError("factor recovery needs unital factors")
                parts.append(np.asarray(one, dtype=complex))
        images.append(rep.apply(reduce(np.kron, parts)))
    return np.stack(images, axis=-1)
