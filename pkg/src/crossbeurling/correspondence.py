"""Correspondences between covariant pairs and representations of the
crossed product / generalized Beurling algebra, in both multiplicative and
anti-multiplicative flavors, plus bimodules.

The dictionary, at finite scale (nets replaced by exact identities):

* pair -> representation: the integrated form, pushed to the quotient.
* representation -> pair:  pi(a) = T(q(delta_e (x) a u)) with u the left
  identity, U_s = T(q(delta_s (x) u)).  The anti direction uses the right
  identity and the check transform, U_s = T((delta_s (x) alpha_s(u))).
* induced pair: [pi~(a) h](s) = lambda(alpha_s^-1(a)) h(s) and
  (Lambda_r h)(s) = h(r^-1 s) on the weighted-L1 function space; its
  integrated form acts by [T(f) h](s) = sum_r alpha_s^-1(f(r)) h(r^-1 s)
  and is conjugate to left convolution under the hat conjugator.

R-continuity at finite scale is the exact linear condition that the
integrated form vanishes on the seminorm kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .convolution import (
    BeurlingAlgebra,
    check_anti_iso,
    convolution_matrix,
    delta_function,
    twisted_convolve,
)
from .crossed import CovariantPair, CrossedProduct, RepClass, integrated_form, seminorm
from .dynamics import DynamicalSystem, opposite_system
from .errors import (
    CovarianceViolated,
    FlavorMismatch,
    HypothesisViolated,
    KernelNotRespected,
    NoApproximateIdentity,
    NotCentralizer,
    NotCommuting,
    NotNonDegenerate,
    ValidationError,
)
from .groups import Weight, weight_unit_bound
from .spaces import (
    NormBounds,
    WeightedL1Space,
    check_leq,
    rep_norm_weighted,
)

__all__ = [
    "RepOnAlgebra",
    "make_rep_on_algebra",
    "random_nondegenerate_rep",
    "induced_pair",
    "pair_to_rep",
    "rep_to_pair",
    "anti_pair_to_antirep",
    "antirep_to_anti_pair",
    "centralizer_extend",
    "verify_inequality_chain",
    "ChainReport",
    "left_regular_sandwich",
    "bimodule_correspondence",
    "bimodule_pairs_from_reps",
    "retype_pair",
    "natural_retype",
]

_TOL = 1e-9


# -- domain adapters (crossed product or Beurling algebra) -----------------------


def _domain_system(domain) -> DynamicalSystem:
    return domain.system


def _domain_dim(domain) -> int:
    if isinstance(domain, CrossedProduct):
        return domain.quotient_dim
    return domain.dim


def _domain_project(domain, f) -> np.ndarray:
    if isinstance(domain, CrossedProduct):
        return domain.project(f)
    return np.asarray(f, dtype=complex).reshape(domain.dim)


def _domain_lift(domain, v) -> np.ndarray:
    if isinstance(domain, CrossedProduct):
        return domain.lift(v)
    system = domain.system
    return np.asarray(v, dtype=complex).reshape(system.group.order, system.algebra.dim)


def _domain_product(domain, v, w) -> np.ndarray:
    if isinstance(domain, CrossedProduct):
        return domain.product(v, w)
    system = domain.system
    return _domain_project(domain, twisted_convolve(system, _domain_lift(domain, v), _domain_lift(domain, w)))


def _domain_identity(domain) -> np.ndarray:
    if isinstance(domain, CrossedProduct):
        return domain.identity_coords()
    return _domain_project(domain, domain.identity_function())


def _domain_right_mults(domain) -> np.ndarray:
    """Matrices of v -> v b for b over the domain coordinate basis."""
    if isinstance(domain, CrossedProduct):
        c = domain.structure
        return np.einsum("ijk->jki", c)
    system = domain.system
    dim = domain.dim
    out = np.empty((dim, dim, dim), dtype=complex)
    basis = np.zeros(dim, dtype=complex)
    for j in range(dim):
        basis[j] = 1
        out[j] = convolution_matrix(system, _domain_lift(domain, basis), side="right")
        basis[j] = 0
    return out


@dataclass(frozen=True, eq=False)
class RepOnAlgebra:
    """A linear (anti-)representation of a crossed product or Beurling algebra."""

    domain: object
    space: object
    tensor: np.ndarray            # (m, m, domain dim)
    multiplicative_flag: str      # "rep" or "anti_rep"
    non_degenerate: bool

    @property
    def m(self) -> int:
        return self.tensor.shape[0]

    def apply(self, v) -> np.ndarray:
        return np.einsum("mnq,q->mn", self.tensor, np.asarray(v, dtype=complex))

    def apply_function(self, f) -> np.ndarray:
        return self.apply(_domain_project(self.domain, f))

    def norm_bounds(self, extra_candidates=()) -> NormBounds:
        """Operator norm w.r.t. the domain norm; exactly reduced for Beurling domains."""
        if isinstance(self.domain, BeurlingAlgebra):
            return rep_norm_weighted(
                self.tensor,
                self.domain.space(),
                self.space.op_norm_bounds,
                extra_candidates=extra_candidates,
            )
        lower = 0.0
        basis = np.eye(_domain_dim(self.domain), dtype=complex)
        for v in basis:
            nv = self.domain.norm_bounds(v)
            if nv.upper <= 1e-13:
                continue
            lower = max(lower, self.space.op_norm_bounds(self.apply(v)).lower / nv.upper)
        return NormBounds(lower, np.inf)

    def verify_multiplicative(self, tol: float = _TOL) -> None:
        dim = _domain_dim(self.domain)
        basis = np.eye(dim, dtype=complex)
        scale = max(1.0, float(np.max(np.abs(self.tensor))) ** 2)
        for i in range(dim):
            ti = self.apply(basis[i])
            for j in range(dim):
                prod = self.apply(_domain_product(self.domain, basis[i], basis[j]))
                direct = ti @ self.apply(basis[j])
                if self.multiplicative_flag == "anti_rep":
                    direct = self.apply(basis[j]) @ ti
                if np.max(np.abs(prod - direct)) > tol * scale:
                    raise ValidationError(
                        f"{self.multiplicative_flag} law fails on basis pair ({i}, {j})"
                    )


def _non_degenerate_rank(tensor: np.ndarray) -> bool:
    # span of T(B)X = column space of the side-by-side basis images
    m = tensor.shape[0]
    stacked = tensor.transpose(0, 2, 1).reshape(m, -1)
    return bool(np.linalg.matrix_rank(stacked, tol=1e-10 * max(1.0, float(np.max(np.abs(tensor))))) == m)


def make_rep_on_algebra(domain, space, tensor, flag: str = "rep", tol: float = _TOL) -> RepOnAlgebra:
    """Wrap and validate a representation given by its basis images."""
    tensor = np.asarray(tensor, dtype=complex)
    if tensor.shape[2] != _domain_dim(domain):
        raise ValidationError(
            f"tensor last axis must match domain dimension {_domain_dim(domain)}"
        )
    rep = RepOnAlgebra(
        domain=domain,
        space=space,
        tensor=tensor,
        multiplicative_flag=flag,
        non_degenerate=_non_degenerate_rank(tensor),
    )
    rep.verify_multiplicative(tol)
    return rep


def random_nondegenerate_rep(
    domain, rng: np.random.Generator, p: float = 2, flag: str = "rep"
) -> RepOnAlgebra:
    """A random conjugate of the (anti) left regular representation of the domain.

    Always non-degenerate for unital domains; used to generate test pairs.
    """
    from .spaces import PNormSpace

    dim = _domain_dim(domain)
    basis = np.eye(dim, dtype=complex)
    while True:
        s = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        if np.linalg.cond(s) < 50:
            break
    s_inv = np.linalg.inv(s)
    tensor = np.empty((dim, dim, dim), dtype=complex)
    for j in range(dim):
        lam = np.einsum(
            "i,ijk->kj" if flag == "rep" else "i,jik->kj",
            basis[j],
            _domain_structure(domain),
        )
        tensor[:, :, j] = s @ lam @ s_inv
    return make_rep_on_algebra(domain, PNormSpace(dim, p), tensor, flag)


def _domain_structure(domain) -> np.ndarray:
    if isinstance(domain, CrossedProduct):
        return domain.structure
    system = domain.system
    dim = domain.dim
    out = np.empty((dim, dim, dim), dtype=complex)
    basis = np.zeros(dim, dtype=complex)
    for i in range(dim):
        basis[i] = 1
        fi = _domain_lift(domain, basis)
        for j in range(dim):
            ej = np.zeros(dim, dtype=complex)
            ej[j] = 1
            out[i, j] = _domain_project(
                domain, twisted_convolve(system, fi, _domain_lift(domain, ej))
            )
        basis[i] = 0
    return out


# -- induced pair -----------------------------------------------------------------


def induced_pair(system: DynamicalSystem, weight: Weight) -> CovariantPair:
    """The pair (lambda~, Lambda) on the weighted-L1 function space.

    Requires a right (or two-sided) identity, the finite-scale stand-in for a
    bounded approximate right identity; guarantees |pi~| <= C_alpha and
    |Lambda_r| <= w(r), and non-degeneracy.
    """
    algebra, group = system.algebra, system.group
    if algebra.identity is None and algebra.right_identity is None:
        raise NoApproximateIdentity("right")
    n, d = group.order, algebra.dim
    dim = n * d
    basis = np.eye(d, dtype=complex)

    pi = np.zeros((d, dim, dim), dtype=complex)
    for k in range(d):
        for s in range(n):
            block = algebra.left_mult_matrix(system.alpha[group.inv(s)] @ basis[k])
            pi[k, s * d : (s + 1) * d, s * d : (s + 1) * d] = block

    u = np.zeros((n, dim, dim), dtype=complex)
    eye = np.eye(d)
    for r in range(n):
        for s in range(n):
            t = group.mul(group.inv(r), s)
            u[r, s * d : (s + 1) * d, t * d : (t + 1) * d] = eye

    space = WeightedL1Space(group, algebra, weight)
    return CovariantPair.build(system, space, pi, u, ("m", "m"), covariance="r")


# -- pair <-> representation -------------------------------------------------------


def pair_to_rep(domain, pair: CovariantPair, tol: float = _TOL) -> RepOnAlgebra:
    """Integrated form of an (m,m) pair, pushed down to the domain coordinates."""
    if pair.flavor != ("m", "m"):
        raise FlavorMismatch("pair_to_rep expects an (m,m) pair; use the anti route for (a,a)")
    return _integrate_to_domain(domain, pair, flag="rep", tol=tol)


def _integrate_to_domain(domain, pair, flag, tol) -> RepOnAlgebra:
    if isinstance(domain, CrossedProduct):
        system = domain.system
        scale = max(1.0, float(np.max(np.abs(pair.pi))), float(np.max(np.abs(pair.u))))
        for k in domain.kernel:
            image = integrated_form(pair, k.reshape(system.group.order, system.algebra.dim))
            if np.max(np.abs(image)) > 1e-8 * scale:
                raise KernelNotRespected(
                    "pair's integrated form does not vanish on the seminorm kernel"
                )
    dim = _domain_dim(domain)
    tensor = np.empty((pair.m, pair.m, dim), dtype=complex)
    basis = np.eye(dim, dtype=complex)
    for j in range(dim):
        tensor[:, :, j] = integrated_form(pair, _domain_lift(domain, basis[j]))
    rep = RepOnAlgebra(
        domain=domain,
        space=pair.space,
        tensor=tensor,
        multiplicative_flag=flag,
        non_degenerate=_non_degenerate_rank(tensor),
    )
    rep.verify_multiplicative(tol)
    return rep


def rep_to_pair(rep: RepOnAlgebra, tol: float = _TOL) -> CovariantPair:
    """Reconstruct the covariant pair:  pi(a) = T(q(delta_e (x) a u)),
    U_s = T(q(delta_s (x) u)), u the left (or two-sided) identity."""
    if rep.multiplicative_flag != "rep":
        raise FlavorMismatch("rep_to_pair expects a multiplicative representation")
    if not rep.non_degenerate:
        raise NotNonDegenerate("reconstruction needs a non-degenerate representation")
    domain = rep.domain
    system = _domain_system(domain)
    algebra, group = system.algebra, system.group
    u = algebra.identity if algebra.identity is not None else algebra.left_identity
    if u is None:
        raise NoApproximateIdentity("left")

    d = algebra.dim
    basis = np.eye(d, dtype=complex)
    pi = np.stack(
        [
            rep.apply_function(delta_function(system, group.identity, algebra.multiply(basis[k], u)))
            for k in range(d)
        ]
    )
    umats = np.stack(
        [rep.apply_function(delta_function(system, s, u)) for s in group.elements()]
    )
    return CovariantPair.build(system, rep.space, pi, umats, ("m", "m"), tol=tol)


def anti_pair_to_antirep(domain, pair: CovariantPair, tol: float = _TOL) -> RepOnAlgebra:
    """T(f) = sum_r U_r pi(f(r)): a non-degenerate anti-representation."""
    if pair.flavor != ("a", "a"):
        raise FlavorMismatch("anti_pair_to_antirep expects an (a,a) pair")
    return _integrate_to_domain(domain, pair, flag="anti_rep", tol=tol)


def antirep_to_anti_pair(rep: RepOnAlgebra, tol: float = _TOL) -> CovariantPair:
    """Reconstruct the (a,a) pair through the check transform and the right identity."""
    if rep.multiplicative_flag != "anti_rep":
        raise FlavorMismatch("antirep_to_anti_pair expects an anti-representation")
    if not rep.non_degenerate:
        raise NotNonDegenerate("reconstruction needs a non-degenerate anti-representation")
    domain = rep.domain
    system = _domain_system(domain)
    algebra, group = system.algebra, system.group
    u = algebra.identity if algebra.identity is not None else algebra.right_identity
    if u is None:
        raise NoApproximateIdentity("right")

    d = algebra.dim
    basis = np.eye(d, dtype=complex)
    pi = np.stack(
        [
            rep.apply_function(
                check_anti_iso(system, delta_function(system, group.identity, algebra.multiply(u, basis[k])))
            )
            for k in range(d)
        ]
    )
    umats = np.stack(
        [
            rep.apply_function(check_anti_iso(system, delta_function(system, s, u)))
            for s in group.elements()
        ]
    )
    return CovariantPair.build(system, rep.space, pi, umats, ("a", "a"), tol=tol)


# -- centralizer extension ----------------------------------------------------------


def centralizer_extend(rep: RepOnAlgebra, centralizer, tol: float = _TOL) -> np.ndarray:
    """Extend a non-degenerate representation to a left centralizer L by T(L 1).

    Verifies L(ab) = L(a) b on the basis (commutation with right
    multiplications) and that the domain is unital.
    """
    if not rep.non_degenerate:
        raise NotNonDegenerate("centralizer extension needs a non-degenerate representation")
    centralizer = np.asarray(centralizer, dtype=complex)
    dim = _domain_dim(rep.domain)
    if centralizer.shape != (dim, dim):
        raise NotCentralizer(f"expected a {dim}x{dim} matrix")
    rights = _domain_right_mults(rep.domain)
    scale = max(1.0, float(np.max(np.abs(centralizer))) * max(1.0, float(np.max(np.abs(rights)))))
    for j, rb in enumerate(rights):
        if np.max(np.abs(centralizer @ rb - rb @ centralizer)) > tol * scale:
            raise NotCentralizer(f"does not commute with right multiplication by basis element {j}")
    one = _domain_identity(rep.domain)
    return rep.apply(centralizer @ one)


# -- the norm sandwich and the inequality chain --------------------------------------


def left_regular_sandwich(cp: CrossedProduct, f, tol: float = _TOL) -> dict:
    """Certified data for  |lambda(q(f))| <= |q(f)| <= M |lambda(q(f))|.

    The lower bound on the left-multiplication norm maximizes
    sigma(f * g)/sigma(g) over quotient basis vectors and the convolution
    identity (when available), which attains the bound for unital fixtures.
    """
    system = cp.system
    sigma_f = cp.seminorm_bounds(f)
    candidates = [v for v in np.eye(cp.quotient_dim, dtype=complex)]
    m_const = system.algebra.approx_identity_bound
    try:
        candidates.append(cp.identity_coords())
    except ValidationError:
        pass
    lam_lower = 0.0
    for v in candidates:
        g = cp.lift(v)
        sg = cp.seminorm_bounds(g)
        if sg.upper <= 1e-13:
            continue
        prod = twisted_convolve(system, np.asarray(f, dtype=complex).reshape(g.shape), g)
        lam_lower = max(lam_lower, cp.seminorm_bounds(prod).lower / sg.upper)
    lam = NormBounds(lam_lower, max(lam_lower, sigma_f.upper))  # |lambda(b)| <= |b|
    return {
        "lambda_norm": lam,
        "sigma": sigma_f,
        "lower_ok": check_leq(lam, sigma_f, tol),
        "embedding_ok": check_leq(sigma_f, lam.scaled(m_const) if m_const else lam, tol)
        if m_const is not None
        else None,
    }


@dataclass(frozen=True)
class ChainReport:
    """Per-function results for the three-step norm chain

    |f|_{1,w} / (C_alpha M w(e))  <=  |T(f)|  <=  |T| sigma(f)  <=  |T| C^R |f|_{1,w}.
    """

    constants: dict
    steps: list    # list of (IneqCheck, IneqCheck, IneqCheck) per function

    @property
    def all_ok(self) -> bool:
        return all(all(c.ok for c in triple) for triple in self.steps)

    @property
    def all_conclusive(self) -> bool:
        return all(all(c.conclusive for c in triple) for triple in self.steps)


def verify_inequality_chain(
    system: DynamicalSystem,
    weight: Weight,
    rep_class: RepClass,
    functions,
    tol: float = _TOL,
) -> ChainReport:
    algebra, group = system.algebra, system.group
    u = algebra.identity if algebra.identity is not None else algebra.right_identity
    if u is None:
        raise HypothesisViolated("algebra needs a right (or two-sided) identity")
    m_const = algebra.norm(u)
    induced = induced_pair(system, weight)
    member = any(
        pair.m == induced.m
        and np.allclose(pair.pi, induced.pi, atol=1e-12)
        and np.allclose(pair.u, induced.u, atol=1e-12)
        for pair in rep_class.pairs
    )
    if not member:
        raise HypothesisViolated("the induced pair must belong to the class")
    for r in group.elements():
        if rep_class.nu_r(r).upper > weight.values[r] * (1 + tol):
            raise HypothesisViolated(f"nu_R({r}) <= w({r})")

    w_e = weight_unit_bound(group, weight)
    c_alpha = system.c_alpha
    c_r = rep_class.c_r
    space = WeightedL1Space(group, algebra, weight)
    beurling = BeurlingAlgebra(system, weight)

    prepared = []
    t_norm_lower = 0.0
    for f in functions:
        f = np.asarray(f, dtype=complex).reshape(group.order, algebra.dim)
        norm1 = beurling.norm(f)
        tf = space.op_norm_bounds(integrated_form(induced, f))
        sig = seminorm(rep_class, f)
        prepared.append((f, norm1, tf, sig))
        if sig.upper > 1e-13:
            t_norm_lower = max(t_norm_lower, tf.lower / sig.upper)
    t_norm = NormBounds(t_norm_lower, 1.0)   # member of the class, so sigma dominates

    steps = []
    for f, norm1, tf, sig in prepared:
        lhs1 = NormBounds.exact(norm1 / (c_alpha * m_const * w_e))
        step1 = check_leq(lhs1, tf, tol)
        step2 = check_leq(tf, t_norm * sig, tol)
        step3 = check_leq(t_norm * sig, t_norm * c_r * NormBounds.exact(norm1), tol)
        steps.append((step1, step2, step3))
    return ChainReport(
        constants={
            "c_alpha": c_alpha,
            "m": m_const,
            "w_e": w_e,
            "c_r": c_r,
            "t_norm": t_norm,
        },
        steps=steps,
    )


# -- bimodules -----------------------------------------------------------------------


def _check_pairs_commute(pair_m: CovariantPair, pair_a: CovariantPair, tol: float) -> None:
    named = {
        "pi_m": list(pair_m.pi),
        "u_m": list(pair_m.u),
        "pi_a": list(pair_a.pi),
        "u_a": list(pair_a.u),
    }
    scale = max(1.0, max(float(np.max(np.abs(m))) for mats in named.values() for m in mats) ** 2)
    for left in ("pi_m", "u_m"):
        for right in ("pi_a", "u_a"):
            for x in named[left]:
                for y in named[right]:
                    if np.max(np.abs(x @ y - y @ x)) > tol * scale:
                        raise NotCommuting(left, right)


def bimodule_correspondence(
    beurling_m: BeurlingAlgebra,
    pair_m: CovariantPair,
    beurling_a: BeurlingAlgebra,
    pair_a: CovariantPair,
    tol: float = _TOL,
) -> tuple[RepOnAlgebra, RepOnAlgebra]:
    """Build the commuting (representation, anti-representation) of the two
    Beurling algebras from a commuting ((m,m), (a,a)) pair of pairs."""
    if pair_m.flavor != ("m", "m"):
        raise FlavorMismatch("left module pair must be (m,m)")
    if pair_a.flavor != ("a", "a"):
        raise FlavorMismatch("right module pair must be (a,a)")
    if pair_m.m != pair_a.m:
        raise ValidationError("both pairs must act on the same space")
    _check_pairs_commute(pair_m, pair_a, tol)

    rep_m = pair_to_rep(beurling_m, pair_m, tol)
    rep_a = anti_pair_to_antirep(beurling_a, pair_a, tol)

    scale = max(1.0, float(np.max(np.abs(rep_m.tensor))) * float(np.max(np.abs(rep_a.tensor))))
    for i in range(rep_m.tensor.shape[2]):
        x = rep_m.tensor[:, :, i]
        for j in range(rep_a.tensor.shape[2]):
            y = rep_a.tensor[:, :, j]
            if np.max(np.abs(x @ y - y @ x)) > tol * scale:
                raise NotCommuting("T_m", "T_a")
    return rep_m, rep_a


def bimodule_pairs_from_reps(rep_m: RepOnAlgebra, rep_a: RepOnAlgebra, tol: float = _TOL):
    """Inverse direction: recover the unique pair of pairs from (T_m, T_a)."""
    return rep_to_pair(rep_m, tol), antirep_to_anti_pair(rep_a, tol)


# -- retyping through companion systems ------------------------------------------------


def retype_pair(pair: CovariantPair, target: str = "natural") -> CovariantPair:
    """Reinterpret the same matrices as an (m,m) pair over a companion system.

    ``target`` in {"same", "Gop", "Aop", "both", "natural"}; "natural" picks
    the companion matching the pair's flavor.
    """
    if target == "natural":
        target = {("m", "m"): "same", ("m", "a"): "Gop", ("a", "m"): "Aop", ("a", "a"): "both"}[
            pair.flavor
        ]
    system = pair.system
    if target == "same":
        companion = system
    elif target == "Gop":
        companion = system.partial_opposites()[0]
    elif target == "Aop":
        companion = system.partial_opposites()[1]
    elif target == "both":
        companion = opposite_system(system)
    else:
        raise ValidationError(f"unknown retype target {target!r}")

    space = pair.space
    if isinstance(space, WeightedL1Space):
        space = WeightedL1Space(companion.group, companion.algebra, space.weight)
    covariance = "commute" if pair.covariance == "commute" else "r"
    try:
        return CovariantPair.build(
            companion, space, pair.pi.copy(), pair.u.copy(), ("m", "m"), covariance=covariance
        )
    except ValidationError as exc:
        raise CovarianceViolated(f"retype to {target} failed: {exc}") from exc


def natural_retype(pair: CovariantPair) -> CovariantPair:
    return retype_pair(pair, "natural")
