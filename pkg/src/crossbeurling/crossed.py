"""Covariant pairs, integrated forms, the representation seminorm, and the
crossed product as an exact normed quotient.

A covariant pair (pi, U) on a normed space X satisfies, per flavor,

    (m,m), (a,m):  U_r pi(a) U_r^-1 = pi(alpha_r(a))
    (m,a), (a,a):  U_r pi(a) U_r^-1 = pi(alpha_{r^-1}(a))

with pi (anti-)multiplicative and U a (anti-)homomorphism as the flavor
letters dictate.  The integrated form of an (m,m) pair is
T(f) = sum_s pi(f(s)) U_s; for (a,a) pairs the order is reversed,
T(f) = sum_s U_s pi(f(s)), and T is anti-multiplicative for the twisted
convolution.  Mixed flavors integrate naturally only over a companion
system, so they are rejected here and handled by retyping.

The seminorm of a class R of pairs is sigma(f) = max over pairs of the
operator norm of the integrated form; its kernel (an ideal) is computed as
a common SVD nullspace, and the crossed product is the quotient with the
induced norm, product, and canonical maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .convolution import delta_function, random_function, twisted_convolve
from .dynamics import DynamicalSystem
from .errors import DimensionMismatch, FlavorMismatch, KernelNotIdeal, ValidationError
from .spaces import LpSumSpace, NormBounds, rep_norm_on_algebra

__all__ = [
    "CovariantPair",
    "RepClass",
    "CrossedProduct",
    "integrated_form",
    "seminorm",
    "build_crossed_product",
    "canonical_maps",
    "direct_sum_realization",
    "compare_classes",
    "ClassComparison",
]

_TOL = 1e-9

FLAVORS = (("m", "m"), ("m", "a"), ("a", "m"), ("a", "a"))
_DEFAULT_COVARIANCE = {("m", "m"): "r", ("a", "m"): "r", ("m", "a"): "rinv", ("a", "a"): "rinv"}


@dataclass(frozen=True, eq=False)
class CovariantPair:
    """A validated pair of an algebra action and a group action on one space.

    ``pi`` holds the images of the algebra basis, ``u`` one matrix per group
    element.  ``pi_properties`` records which of multiplicativity ("m") and
    anti-multiplicativity ("a") actually hold; for commutative algebras both
    can.
    """

    system: DynamicalSystem
    space: object
    pi: np.ndarray        # (d, m, m)
    u: np.ndarray         # (|G|, m, m)
    flavor: tuple
    covariance: str       # "r", "rinv" or "commute"
    non_degenerate: bool
    pi_properties: frozenset

    @property
    def m(self) -> int:
        return self.pi.shape[1]

    def apply_pi(self, a) -> np.ndarray:
        return np.einsum("i,imn->mn", np.asarray(a, dtype=complex), self.pi)

    def apply_u(self, r: int) -> np.ndarray:
        return self.u[r]

    def op_norm_bounds(self, matrix) -> NormBounds:
        return self.space.op_norm_bounds(matrix)

    def pi_norm_bounds(self, extra_candidates=()) -> NormBounds:
        return rep_norm_on_algebra(
            self.pi.transpose(1, 2, 0),
            self.system.algebra,
            self.space.op_norm_bounds,
            extra_candidates=extra_candidates,
        )

    def u_norm_bounds(self, r: int) -> NormBounds:
        return self.space.op_norm_bounds(self.u[r])

    @classmethod
    def build(
        cls,
        system: DynamicalSystem,
        space,
        pi,
        u,
        flavor,
        covariance: str | None = None,
        empirical_flavor: bool = False,
        tol: float = _TOL,
    ) -> "CovariantPair":
        flavor = tuple(flavor)
        if flavor not in FLAVORS:
            raise ValidationError(f"flavor must be one of {FLAVORS}, got {flavor}")
        covariance = covariance or _DEFAULT_COVARIANCE[flavor]
        pi = np.asarray(pi, dtype=complex)
        u = np.asarray(u, dtype=complex)
        d, n = system.algebra.dim, system.group.order
        if pi.ndim != 3 or pi.shape[0] != d or pi.shape[1] != pi.shape[2]:
            raise ValidationError(f"pi must be (dim A, m, m), got {pi.shape}")
        m = pi.shape[1]
        if u.shape != (n, m, m):
            raise DimensionMismatch((n, m, m), u.shape)
        if getattr(space, "dim") != m:
            raise DimensionMismatch(space.dim, m)

        scale = max(1.0, float(np.max(np.abs(pi))) ** 2, float(np.max(np.abs(u))) ** 2)
        eye = np.eye(m)
        if np.max(np.abs(u[system.group.identity] - eye)) > tol * scale:
            raise ValidationError("U at the identity is not the identity matrix")
        for r in system.group.elements():
            if abs(np.linalg.det(u[r])) < 1e-12:
                raise ValidationError(f"U_{r} is not invertible")

        group_prod = u[:, None] @ u[None, :]          # (n, n, m, m): U_r U_s
        if flavor[1] == "m":
            expected = u[system.group.mult]
        else:
            expected = u[system.group.mult.T]
        if np.max(np.abs(group_prod - expected)) > tol * scale:
            raise ValidationError(f"U does not satisfy the {flavor[1]}-law on group pairs")

        c = system.algebra.structure
        pair_prod = np.einsum("imk,jkn->ijmn", pi, pi)
        mult_images = np.einsum("ijk,kmn->ijmn", c, pi)
        anti_images = np.einsum("jik,kmn->ijmn", c, pi)
        observed = set()
        if np.max(np.abs(pair_prod - mult_images)) <= tol * scale:
            observed.add("m")
        if np.max(np.abs(pair_prod - anti_images)) <= tol * scale:
            observed.add("a")
        if flavor[0] not in observed:
            raise ValidationError(
                f"pi does not satisfy the {flavor[0]}-law (observed: {sorted(observed) or 'neither'})"
            )

        basis = np.eye(d, dtype=complex)
        for r in system.group.elements():
            u_inv = np.linalg.inv(u[r])
            for k in range(d):
                lhs = u[r] @ pi[k] @ u_inv
                if covariance == "r":
                    target = system.alpha[r] @ basis[k]
                elif covariance == "rinv":
                    target = system.alpha[system.group.inv(r)] @ basis[k]
                else:
                    target = basis[k]
                rhs = np.einsum("i,imn->mn", target, pi)
                if np.max(np.abs(lhs - rhs)) > tol * scale:
                    raise ValidationError(f"covariance law fails at (basis {k}, group {r})")

        # span of pi(A)X = column space of the side-by-side basis images
        stacked = pi.transpose(1, 0, 2).reshape(m, d * m)
        non_deg = np.linalg.matrix_rank(stacked, tol=1e-10 * max(1.0, scale)) == m

        pi.setflags(write=False)
        u.setflags(write=False)
        return cls(
            system=system,
            space=space,
            pi=pi,
            u=u,
            flavor=flavor,
            covariance=covariance,
            non_degenerate=bool(non_deg),
            pi_properties=frozenset(observed),
        )


def integrated_form(pair: CovariantPair, f) -> np.ndarray:
    """T(f) = sum_s pi(f(s)) U_s, with the factors swapped for (a,a) pairs."""
    f = np.asarray(f, dtype=complex)
    n, d = pair.system.group.order, pair.system.algebra.dim
    if f.shape == (n * d,):
        f = f.reshape(n, d)
    if f.shape != (n, d):
        raise DimensionMismatch((n, d), f.shape)
    out = np.zeros((pair.m, pair.m), dtype=complex)
    if pair.flavor == ("m", "m"):
        for s in range(n):
            out += pair.apply_pi(f[s]) @ pair.u[s]
    elif pair.flavor == ("a", "a"):
        for s in range(n):
            out += pair.u[s] @ pair.apply_pi(f[s])
    else:
        raise FlavorMismatch(
            f"integrated form of a {pair.flavor} pair lives over a companion system; retype it first"
        )
    return out


@dataclass(frozen=True, eq=False)
class RepClass:
    """A nonempty finite class of covariant pairs with its computed bounds."""

    pairs: tuple

    def __post_init__(self):
        if not self.pairs:
            raise ValidationError("representation class must be nonempty")

    @classmethod
    def of(cls, *pairs) -> "RepClass":
        return cls(pairs=tuple(pairs))

    @cached_property
    def c_r(self) -> NormBounds:
        """max over pairs of the norm of the algebra action."""
        return NormBounds.max_of(pair.pi_norm_bounds() for pair in self.pairs)

    def nu_r(self, r: int) -> NormBounds:
        """max over pairs of |U_r|."""
        return NormBounds.max_of(pair.u_norm_bounds(r) for pair in self.pairs)

    def nu_r_all(self) -> list[NormBounds]:
        n = self.pairs[0].system.group.order
        return [self.nu_r(r) for r in range(n)]


def seminorm(rep_class: RepClass, f) -> NormBounds:
    """sigma(f) = max over the class of the operator norm of the integrated form."""
    return NormBounds.max_of(
        pair.op_norm_bounds(integrated_form(pair, f)) for pair in rep_class.pairs
    )


def _integrated_columns(pair: CovariantPair) -> np.ndarray:
    """Matrix (m^2, n*d) whose column (s, i) is vec(T(delta_s (x) e_i))."""
    n, d = pair.system.group.order, pair.system.algebra.dim
    m = pair.m
    cols = np.empty((m * m, n * d), dtype=complex)
    for s in range(n):
        if pair.flavor == ("m", "m"):
            images = np.einsum("imk,kl->iml", pair.pi, pair.u[s])
        else:
            images = np.einsum("mk,ikl->iml", pair.u[s], pair.pi)
        for i in range(d):
            cols[:, s * d + i] = images[i].reshape(m * m)
    return cols


@dataclass(frozen=True, eq=False)
class CrossedProduct:
    """The quotient of the function space by the seminorm kernel.

    ``coords`` (orthonormal rows) is the quotient coordinatization; ``lift``
    is its adjoint section.  The induced norm of a coordinate vector is the
    seminorm of any lift (well defined because the kernel is exactly the
    null space of every integrated form).
    """

    system: DynamicalSystem
    rep_class: RepClass
    kernel: np.ndarray       # (k, n*d), orthonormal rows
    coords: np.ndarray       # (q, n*d), orthonormal rows
    tol: float

    @property
    def ambient_dim(self) -> int:
        return self.system.group.order * self.system.algebra.dim

    @property
    def quotient_dim(self) -> int:
        return self.coords.shape[0]

    @property
    def is_faithful(self) -> bool:
        return self.kernel.shape[0] == 0

    def project(self, f) -> np.ndarray:
        flat = np.asarray(f, dtype=complex).reshape(self.ambient_dim)
        return self.coords @ flat

    def lift(self, v) -> np.ndarray:
        flat = self.coords.conj().T @ np.asarray(v, dtype=complex)
        return flat.reshape(self.system.group.order, self.system.algebra.dim)

    def norm_bounds(self, v) -> NormBounds:
        return seminorm(self.rep_class, self.lift(v))

    def seminorm_bounds(self, f) -> NormBounds:
        return seminorm(self.rep_class, f)

    def product(self, v, w) -> np.ndarray:
        return self.project(twisted_convolve(self.system, self.lift(v), self.lift(w)))

    @cached_property
    def structure(self) -> np.ndarray:
        """Structure constants of the quotient algebra in quotient coordinates."""
        q = self.quotient_dim
        out = np.empty((q, q, q), dtype=complex)
        basis = np.eye(q, dtype=complex)
        for i in range(q):
            for j in range(q):
                out[i, j] = self.product(basis[i], basis[j])
        return out

    def identity_coords(self) -> np.ndarray:
        one = self.system.algebra.identity
        if one is None:
            raise ValidationError("quotient identity needs a unital algebra")
        return self.project(delta_function(self.system, self.system.group.identity, one))

    def left_mult_matrix(self, v) -> np.ndarray:
        """Matrix of w -> v w on quotient coordinates."""
        return np.einsum("i,ijk->kj", np.asarray(v, dtype=complex), self.structure)

    def descend_operator(self, matrix) -> np.ndarray:
        """Push an operator on the function space down to the quotient.

        Requires the operator to map the kernel into itself (checked).
        """
        matrix = np.asarray(matrix, dtype=complex)
        if self.kernel.shape[0]:
            moved = matrix @ self.kernel.T                 # images of kernel basis
            residual = self.coords @ moved                 # component outside the kernel
            scale = max(1.0, float(np.max(np.abs(matrix))))
            if residual.size and np.max(np.abs(residual)) > 1e-8 * scale:
                raise KernelNotIdeal("operator does not preserve the seminorm kernel")
        return self.coords @ matrix @ self.coords.conj().T


def build_crossed_product(system: DynamicalSystem, rep_class: RepClass, tol: float = 1e-10) -> CrossedProduct:
    """Kernel by rank-revealing SVD of the stacked integrated forms, then quotient."""
    for pair in rep_class.pairs:
        if pair.flavor not in (("m", "m"), ("a", "a")):
            raise FlavorMismatch("crossed products are built from (m,m) or (a,a) classes")
    stacked = np.vstack([_integrated_columns(pair) for pair in rep_class.pairs])
    _, svals, vh = np.linalg.svd(stacked, full_matrices=True)
    if svals.size and svals[0] > 0:
        rank = int(np.sum(svals > tol * svals[0]))
    else:
        rank = 0
    coords = vh[:rank]
    # rows of vh beyond the rank are conjugates of null vectors of the stack
    kernel = vh[rank:].conj()
    coords.setflags(write=False)
    kernel.setflags(write=False)
    cp = CrossedProduct(system=system, rep_class=rep_class, kernel=kernel, coords=coords, tol=tol)
    _check_kernel_ideal(cp, stacked)
    return cp


def _check_kernel_ideal(cp: CrossedProduct, stacked: np.ndarray) -> None:
    if not cp.kernel.shape[0]:
        return
    n, d = cp.system.group.order, cp.system.algebra.dim
    scale = max(1.0, float(np.max(np.abs(stacked))))
    basis = np.zeros((n, d), dtype=complex)
    for k in cp.kernel:
        kf = k.reshape(n, d)
        for t in range(n):
            for j in range(d):
                basis[t, j] = 1
                for prod in (
                    twisted_convolve(cp.system, kf, basis),
                    twisted_convolve(cp.system, basis, kf),
                ):
                    if np.max(np.abs(stacked @ prod.reshape(n * d))) > 1e-8 * scale:
                        raise KernelNotIdeal(
                            "seminorm kernel is not closed under convolution at tolerance"
                        )
                basis[t, j] = 0


def canonical_maps(cp: CrossedProduct) -> tuple[np.ndarray, np.ndarray]:
    """Quotient matrices of (i_A(a) f)(s) = a f(s) and (i_G(r) f)(s) = alpha_r(f(r^-1 s)).

    Returns (i_A images per algebra basis element, i_G images per group element).
    """
    system = cp.system
    n, d = system.group.order, system.algebra.dim
    dim = n * d
    basis = np.eye(d, dtype=complex)

    i_a = np.zeros((d, dim, dim), dtype=complex)
    for k in range(d):
        lam = system.algebra.left_mult_matrix(basis[k])
        for s in range(n):
            i_a[k, s * d : (s + 1) * d, s * d : (s + 1) * d] = lam

    i_g = np.zeros((n, dim, dim), dtype=complex)
    for r in range(n):
        for s in range(n):
            t = system.group.mul(system.group.inv(r), s)
            i_g[r, s * d : (s + 1) * d, t * d : (t + 1) * d] = system.alpha[r]

    i_a_q = np.stack([cp.descend_operator(mat) for mat in i_a])
    i_g_q = np.stack([cp.descend_operator(mat) for mat in i_g])
    return i_a_q, i_g_q


def direct_sum_realization(pairs, p: float) -> CovariantPair:
    """Block-diagonal sum of (m,m) pairs on the l^p sum of their spaces.

    The integrated form of the sum is block diagonal, so its operator norm is
    the max of the component norms for every p: the sum realizes the class
    seminorm isometrically.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValidationError("direct sum needs at least one pair")
    system = pairs[0].system
    for pair in pairs:
        if pair.flavor != ("m", "m"):
            raise FlavorMismatch("direct sums are taken over (m,m) pairs")
        if pair.system.group.order != system.group.order or pair.system.algebra.dim != system.algebra.dim:
            raise ValidationError("pairs must share the system")
    d = system.algebra.dim
    n = system.group.order
    total = sum(pair.m for pair in pairs)
    pi = np.zeros((d, total, total), dtype=complex)
    u = np.zeros((n, total, total), dtype=complex)
    offset = 0
    for pair in pairs:
        sl = slice(offset, offset + pair.m)
        pi[:, sl, sl] = pair.pi
        u[:, sl, sl] = pair.u
        offset += pair.m
    space = LpSumSpace(tuple(pair.space for pair in pairs), p)
    return CovariantPair.build(system, space, pi, u, ("m", "m"), covariance=pairs[0].covariance)


@dataclass(frozen=True)
class ClassComparison:
    """Outcome of comparing sigma_1 against sigma_2.

    ``m_lower`` is a certified lower bound for the best constant in
    sigma_1 <= M sigma_2.  ``dominated`` holds when ker sigma_2 is contained
    in ker sigma_1 (the necessary kernel condition); when it fails,
    ``certificate`` is a function with sigma_2 = 0 < sigma_1.  ``m_exact``
    is a refined two-parameter search value, only for quotient dimension
    at most 2.
    """

    m_lower: float
    dominated: bool
    certificate: np.ndarray | None
    m_exact: float | None
    kernels_equal: bool


def compare_classes(
    system: DynamicalSystem,
    r1: RepClass,
    r2: RepClass,
    samples: int = 50,
    rng: np.random.Generator | None = None,
    tol: float = 1e-10,
) -> ClassComparison:
    rng = rng if rng is not None else np.random.default_rng(0)
    cp1 = build_crossed_product(system, r1, tol)
    cp2 = build_crossed_product(system, r2, tol)

    dominated = True
    certificate = None
    for k in cp2.kernel:
        s1 = seminorm(r1, k.reshape(system.group.order, system.algebra.dim))
        if s1.upper > 1e-8:
            dominated = False
            certificate = k.copy()
            break
    kernels_equal = dominated and all(
        seminorm(r2, k.reshape(system.group.order, system.algebra.dim)).upper <= 1e-8
        for k in cp1.kernel
    )

    candidates = [random_function(system, rng) for _ in range(samples)]
    for s in system.group.elements():
        for i in range(system.algebra.dim):
            e = np.zeros(system.algebra.dim, dtype=complex)
            e[i] = 1
            candidates.append(delta_function(system, s, e))
    m_lower = 0.0
    for f in candidates:
        s2 = seminorm(r2, f)
        if s2.upper <= tol:
            # sigma_2(f) = 0: the ratio is undefined; a nonzero sigma_1 on
            # such f certifies non-domination
            if dominated and seminorm(r1, f).lower > 1e-8:
                dominated = False
                certificate = np.asarray(f, dtype=complex).reshape(-1)
            continue
        m_lower = max(m_lower, seminorm(r1, f).lower / s2.upper)

    m_exact = None
    if dominated and cp2.quotient_dim in (1, 2):
        m_exact = _search_best_ratio(system, r1, r2, cp2)
        m_lower = max(m_lower, m_exact)
    return ClassComparison(
        m_lower=float(m_lower),
        dominated=dominated,
        certificate=certificate,
        m_exact=m_exact,
        kernels_equal=bool(kernels_equal),
    )


def _search_best_ratio(system, r1, r2, cp2, grid: int = 48, refinements: int = 3) -> float:
    """Parameterized search for sup sigma_1 / sigma_2 over a <=2-dim quotient."""

    def ratio(v):
        f = cp2.lift(v)
        s2 = seminorm(r2, f)
        if s2.upper <= 1e-13:
            return 0.0
        return seminorm(r1, f).lower / s2.upper

    if cp2.quotient_dim == 1:
        return ratio(np.array([1.0 + 0j]))

    lo_t, hi_t, lo_p, hi_p = 0.0, np.pi / 2, 0.0, 2 * np.pi
    best = 0.0
    best_tp = (0.0, 0.0)
    for _ in range(refinements):
        thetas = np.linspace(lo_t, hi_t, grid)
        phis = np.linspace(lo_p, hi_p, grid)
        for t in thetas:
            for p in phis:
                val = ratio(np.array([np.cos(t), np.sin(t) * np.exp(1j * p)]))
                if val > best:
                    best, best_tp = val, (t, p)
        dt = (hi_t - lo_t) / grid
        dp = (hi_p - lo_p) / grid
        lo_t, hi_t = max(0.0, best_tp[0] - 2 * dt), min(np.pi / 2, best_tp[0] + 2 * dt)
        lo_p, hi_p = best_tp[1] - 2 * dp, best_tp[1] + 2 * dp
    return best
