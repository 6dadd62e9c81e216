"""Normed coefficient spaces and certified operator-norm computation.

Two kinds of spaces appear:

* :class:`PNormSpace` -- C^m with the p-norm, p in {1, 2, inf}.  Induced
  matrix norms have exact closed forms (max column sum, spectral norm, max
  row sum).
* :class:`WeightedL1Space` -- algebra-valued functions on a group with the
  norm  |h| = sum_s |h(s)|_A  w(s).  Its unit ball is the convex hull of the
  elements  delta_s (x) a / w(s)  with |a|_A <= 1, so an operator norm out of
  it reduces to a maximum over group elements of a supremum over the algebra
  unit ball.

The inner supremum over the algebra ball is exact in four structural cases
(dimension one; the one-norm tag, whose ball has finitely many extreme rays;
blocks that are scalar multiples of the identity; blocks that are algebra
multiplication operators while the algebra has a one-sided identity of norm
one, where the supremum is attained at that identity).  Everything else is
reported as a certified interval: a lower bound from extreme-point
candidates (signs and a fixed grid of 64 unimodular phase vectors, plus
unitaries for the operator tag) and a triangle-inequality upper bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebras import NormedAlgebra
from .errors import DimensionMismatch, NormCertificationError
from .groups import FiniteGroup, Weight

__all__ = [
    "NormBounds",
    "as_bounds",
    "PNormSpace",
    "WeightedL1Space",
    "LpSumSpace",
    "ball_candidates",
    "inner_ball_sup",
    "op_norm_weighted",
    "rep_norm_weighted",
    "rep_norm_on_algebra",
    "IneqCheck",
    "check_leq",
]

_DETECT_TOL = 1e-9
_PHASE_SAMPLES = 64


# -- certified bounds ----------------------------------------------------------


@dataclass(frozen=True)
class NormBounds:
    """A certified interval lower <= true value <= upper."""

    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper + 1e-12 * max(1.0, abs(self.upper)):
            raise NormCertificationError(f"invalid bounds [{self.lower}, {self.upper}]")

    @classmethod
    def exact(cls, value: float) -> "NormBounds":
        v = float(value)
        return cls(v, v)

    def is_exact(self, rel_tol: float = 1e-9) -> bool:
        return self.upper - self.lower <= rel_tol * max(1.0, abs(self.upper))

    def expect_exact(self, rel_tol: float = 1e-9) -> float:
        if not self.is_exact(rel_tol):
            raise NormCertificationError(f"norm not certified exact: [{self.lower}, {self.upper}]")
        return 0.5 * (self.lower + self.upper)

    def scaled(self, factor: float) -> "NormBounds":
        return NormBounds(self.lower * factor, self.upper * factor)

    def __mul__(self, other: "NormBounds") -> "NormBounds":
        return NormBounds(self.lower * other.lower, self.upper * other.upper)

    @staticmethod
    def max_of(items) -> "NormBounds":
        items = list(items)
        return NormBounds(max(b.lower for b in items), max(b.upper for b in items))


def as_bounds(value) -> NormBounds:
    if isinstance(value, NormBounds):
        return value
    return NormBounds.exact(float(value))


# -- plain p-normed spaces -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class PNormSpace:
    dim: int
    p: float   # 1, 2 or inf

    def vector_norm(self, v) -> float:
        v = np.asarray(v, dtype=complex)
        if np.isinf(self.p):
            return float(np.max(np.abs(v))) if v.size else 0.0
        if self.p == 1:
            return float(np.sum(np.abs(v)))
        return float(np.linalg.norm(v))

    def op_norm(self, m) -> float:
        m = np.asarray(m, dtype=complex)
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch((self.dim, self.dim), m.shape)
        if self.p == 1:
            return float(np.max(np.sum(np.abs(m), axis=0))) if m.size else 0.0
        if np.isinf(self.p):
            return float(np.max(np.sum(np.abs(m), axis=1))) if m.size else 0.0
        return float(np.linalg.norm(m, 2))

    def op_norm_bounds(self, m) -> NormBounds:
        return NormBounds.exact(self.op_norm(m))


# -- weighted L1 of algebra-valued functions -----------------------------------


@dataclass(frozen=True, eq=False)
class WeightedL1Space:
    """Functions group -> algebra with |h| = sum_s |h(s)|_A w(s).

    Coefficients are flattened group-major: index s*d + i.
    """

    group: FiniteGroup
    algebra: NormedAlgebra
    weight: Weight

    @property
    def dim(self) -> int:
        return self.group.order * self.algebra.dim

    def unflatten(self, v) -> np.ndarray:
        return np.asarray(v, dtype=complex).reshape(self.group.order, self.algebra.dim)

    def vector_norm(self, v) -> float:
        h = self.unflatten(v)
        return float(sum(self.algebra.norm(h[s]) * self.weight.values[s] for s in self.group.elements()))

    def embed_delta(self, s: int, a) -> np.ndarray:
        out = np.zeros(self.dim, dtype=complex)
        out[s * self.algebra.dim : (s + 1) * self.algebra.dim] = a
        return out

    def blocks(self, m) -> np.ndarray:
        """Reshape an operator matrix to blocks[t, s] of shape (d, d)."""
        n, d = self.group.order, self.algebra.dim
        m = np.asarray(m, dtype=complex)
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch((self.dim, self.dim), m.shape)
        return m.reshape(n, d, n, d).transpose(0, 2, 1, 3)

    def op_norm_bounds(self, m) -> NormBounds:
        return op_norm_weighted(m, self, self)

    def same_norm_as(self, other: "WeightedL1Space") -> bool:
        return (
            self.algebra.dim == other.algebra.dim
            and self.algebra.norm_tag == other.algebra.norm_tag
            and self.group.order == other.group.order
        )


@dataclass(frozen=True, eq=False)
class LpSumSpace:
    """l^p direct sum of component spaces; used by direct-sum realizations."""

    parts: tuple
    p: float

    @property
    def dim(self) -> int:
        return sum(part.dim for part in self.parts)

    def _slices(self):
        offsets = np.cumsum([0] + [part.dim for part in self.parts])
        return [slice(int(offsets[i]), int(offsets[i + 1])) for i in range(len(self.parts))]

    def vector_norm(self, v) -> float:
        v = np.asarray(v, dtype=complex)
        norms = np.array([part.vector_norm(v[sl]) for part, sl in zip(self.parts, self._slices())])
        if np.isinf(self.p):
            return float(np.max(norms))
        return float(np.sum(norms**self.p) ** (1.0 / self.p))

    def op_norm_bounds(self, m) -> NormBounds:
        m = np.asarray(m, dtype=complex)
        slices = self._slices()
        off_diag = 0.0
        for i, si in enumerate(slices):
            for j, sj in enumerate(slices):
                if i != j:
                    off_diag = max(off_diag, float(np.max(np.abs(m[si, sj]))) if m[si, sj].size else 0.0)
        if off_diag <= 1e-14 * max(1.0, float(np.max(np.abs(m)))):
            # block-diagonal: the operator norm on an l^p sum is the max block norm
            return NormBounds.max_of(
                part.op_norm_bounds(m[sl, sl]) for part, sl in zip(self.parts, slices)
            )
        same_p = all(isinstance(part, PNormSpace) and part.p == self.p for part in self.parts)
        if same_p:
            return NormBounds.exact(PNormSpace(self.dim, self.p).op_norm(m))
        raise NormCertificationError("operator norm on a mixed l^p sum needs block-diagonal structure")


# -- algebra unit-ball machinery -------------------------------------------------


def ball_candidates(algebra: NormedAlgebra, extra=()) -> list[np.ndarray]:
    """Deterministic finite subset of the algebra's closed unit ball.

    Includes normalized basis vectors, identities, sign patterns, a fixed
    64-sample grid of unimodular phase vectors, and (operator tag) unitaries.
    """
    d = algebra.dim
    out: list[np.ndarray] = []

    def push(vec):
        vec = np.asarray(vec, dtype=complex)
        nrm = algebra.norm(vec)
        if nrm > 1e-14:
            out.append(vec / max(nrm, 1.0))

    for i in range(d):
        e = np.zeros(d, dtype=complex)
        e[i] = 1
        push(e)
    for u in (algebra.identity, algebra.left_identity, algebra.right_identity):
        if u is not None:
            push(u)
    push(np.ones(d, dtype=complex))
    if d <= 8:
        for signs in itertools.product((1.0, -1.0), repeat=d):
            push(np.array(signs, dtype=complex))
    rng = np.random.default_rng(7)
    for _ in range(_PHASE_SAMPLES):
        push(np.exp(2j * np.pi * rng.random(d)))
        push(rng.normal(size=d) + 1j * rng.normal(size=d))
    if algebra.norm_tag == "operator":
        n = algebra.matrix_size
        for _ in range(_PHASE_SAMPLES // 2):
            z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            q, _ = np.linalg.qr(z)
            push(q.reshape(d))
            x = rng.normal(size=n) + 1j * rng.normal(size=n)
            y = rng.normal(size=n) + 1j * rng.normal(size=n)
            push(np.outer(x / np.linalg.norm(x), y.conj() / np.linalg.norm(y)).reshape(d))
    for vec in extra:
        push(vec)
    return out


def inner_ball_sup(evaluate, algebra: NormedAlgebra, extra_candidates=()) -> NormBounds:
    """Bounds for sup of a norm-like function of a over the algebra unit ball.

    ``evaluate(a)`` must be absolutely homogeneous and subadditive in a and
    may return a float or :class:`NormBounds`.
    """
    d = algebra.dim
    basis_vals = []
    for i in range(d):
        e = np.zeros(d, dtype=complex)
        e[i] = 1
        basis_vals.append(as_bounds(evaluate(e)))

    if d == 1:
        return basis_vals[0]
    if algebra.norm_tag == "one":
        # extreme rays are the phase multiples of basis vectors
        return NormBounds.max_of(basis_vals)

    lower = max(b.lower for b in basis_vals)
    for cand in ball_candidates(algebra, extra=extra_candidates):
        lower = max(lower, as_bounds(evaluate(cand)).lower)
    # sup tag: a = sum a_i e_i with |a_i| <= 1; operator tag: |a_ij| <= |a| <= 1
    upper = sum(b.upper for b in basis_vals)
    return NormBounds(lower, max(lower, upper))


def _detect_combination(block: np.ndarray, generators: np.ndarray, tol: float):
    """Least-squares fit of block as sum_k c_k generators[k]; None if residual large."""
    d = block.shape[0]
    design = generators.reshape(generators.shape[0], d * d).T
    target = block.reshape(d * d)
    c, *_ = np.linalg.lstsq(design, target, rcond=None)
    residual = np.linalg.norm(design @ c - target)
    if residual > tol * max(1.0, np.linalg.norm(target)):
        return None
    return c


def _mult_operator_profile(blocks, algebra: NormedAlgebra):
    """Classify each block as a left or right multiplication by some element.

    Returns (kinds, elements) with kinds[t] in {"l", "r"}, or None when some
    block is neither.
    """
    lefts = algebra.basis_left_mults()
    rights = algebra.basis_right_mults()
    kinds, elems = [], []
    for block in blocks:
        c = _detect_combination(block, lefts, _DETECT_TOL)
        if c is not None:
            kinds.append("l")
            elems.append(c)
            continue
        c = _detect_combination(block, rights, _DETECT_TOL)
        if c is not None:
            kinds.append("r")
            elems.append(c)
            continue
        return None
    return kinds, elems


def _scalar_profile(blocks, tol: float):
    d = blocks.shape[1]
    eye = np.eye(d)
    zs = []
    for block in blocks:
        z = np.trace(block) / d
        if np.max(np.abs(block - z * eye)) > tol * max(1.0, float(np.max(np.abs(block)))):
            return None
        zs.append(z)
    return np.asarray(zs)


def _norm_one_identity(algebra: NormedAlgebra, kinds) -> np.ndarray | None:
    """An identity element of norm 1 that attains |c a| = |c| for the block kinds present."""
    need_right = "l" in kinds
    need_left = "r" in kinds
    if need_right and need_left:
        u = algebra.identity
    elif need_right:
        u = algebra.identity if algebra.identity is not None else algebra.right_identity
    else:
        u = algebra.identity if algebra.identity is not None else algebra.left_identity
    if u is None or abs(algebra.norm(u) - 1.0) > _DETECT_TOL:
        return None
    return u


def op_norm_weighted(m, dom: WeightedL1Space, cod: WeightedL1Space) -> NormBounds:
    """Operator norm of a matrix from one weighted-L1 function space to another."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (cod.dim, dom.dim):
        raise DimensionMismatch((cod.dim, dom.dim), m.shape)
    n_in, d_in = dom.group.order, dom.algebra.dim
    n_out, d_out = cod.group.order, cod.algebra.dim
    blocks = m.reshape(n_out, d_out, n_in, d_in).transpose(0, 2, 1, 3)
    w_in = dom.weight.values
    w_out = cod.weight.values
    same_norm = d_in == d_out and dom.algebra.norm_tag == cod.algebra.norm_tag

    column_bounds = []
    for s in range(n_in):
        col = blocks[:, s]
        bounds = None
        if same_norm:
            zs = _scalar_profile(col, _DETECT_TOL)
            if zs is not None:
                bounds = NormBounds.exact(float(np.sum(w_out * np.abs(zs))))
        if bounds is None and same_norm and d_in > 1 and dom.algebra.norm_tag != "one":
            profile = _mult_operator_profile(col, cod.algebra)
            if profile is not None:
                kinds, elems = profile
                u = _norm_one_identity(cod.algebra, kinds)
                if u is not None and dom.algebra.norm(u) <= 1 + _DETECT_TOL:
                    value = float(sum(w_out[t] * cod.algebra.norm(c) for t, c in enumerate(elems)))
                    bounds = NormBounds.exact(value)
        if bounds is None:
            def evaluate(a, col=col):
                return float(sum(w_out[t] * cod.algebra.norm(col[t] @ a) for t in range(n_out)))

            bounds = inner_ball_sup(evaluate, dom.algebra)
        column_bounds.append(bounds.scaled(1.0 / float(w_in[s])))
    return NormBounds.max_of(column_bounds)


def rep_norm_weighted(tensor, dom: WeightedL1Space, value_norm, extra_candidates=()) -> NormBounds:
    """Norm of a linear map from a weighted-L1 space into operators.

    ``tensor`` has shape (m, m, dom.dim); ``value_norm`` measures the output
    matrix (returning float or NormBounds).
    """
    tensor = np.asarray(tensor, dtype=complex)
    n, d = dom.group.order, dom.algebra.dim
    per_element = []
    for s in range(n):
        sub = tensor[:, :, s * d : (s + 1) * d]

        def evaluate(a, sub=sub):
            return value_norm(np.einsum("mni,i->mn", sub, a))

        bounds = inner_ball_sup(evaluate, dom.algebra, extra_candidates=extra_candidates)
        per_element.append(bounds.scaled(1.0 / float(dom.weight.values[s])))
    return NormBounds.max_of(per_element)


def rep_norm_on_algebra(tensor, algebra: NormedAlgebra, value_norm, extra_candidates=()) -> NormBounds:
    """Norm of a ->  matrix, over the algebra unit ball."""
    tensor = np.asarray(tensor, dtype=complex)

    def evaluate(a):
        return value_norm(np.einsum("mni,i->mn", tensor, a))

    return inner_ball_sup(evaluate, algebra, extra_candidates=extra_candidates)


# -- inequality checking ---------------------------------------------------------


@dataclass(frozen=True)
class IneqCheck:
    """Result of checking lhs <= rhs with interval-valued sides.

    ``ok``: no certified violation (lower(lhs) <= upper(rhs) + tol).
    ``conclusive``: verified against the worst case (upper(lhs) <= lower(rhs) + tol).
    ``slack``: rhs.lower - lhs.upper (nonnegative when conclusive).
    """

    ok: bool
    conclusive: bool
    slack: float
    lhs: NormBounds
    rhs: NormBounds


def check_leq(lhs, rhs, rel_tol: float = 1e-9, abs_tol: float = 1e-12) -> IneqCheck:
    lhs = as_bounds(lhs)
    rhs = as_bounds(rhs)
    tol = rel_tol * max(1.0, rhs.upper) + abs_tol
    return IneqCheck(
        ok=lhs.lower <= rhs.upper + tol,
        conclusive=lhs.upper <= rhs.lower + tol,
        slack=rhs.lower - lhs.upper,
        lhs=lhs,
        rhs=rhs,
    )
