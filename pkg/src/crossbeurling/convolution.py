"""Algebra-valued functions on a group: twisted convolution and its symmetries.

A function f: G -> A is stored as an (|G|, d) complex array.  The product is
the twisted convolution

    [f * g](s) = sum_r f(r) alpha_r(g(r^-1 s)),

which together with |.|_{1,w} makes the function space a generalized Beurling
algebra (submultiplicative up to the uniform action bound).

Two distinct hat transforms appear and deliberately get different names:

* ``hat_conjugator``/``check_conjugator``: h -> alpha_s(h(s)) and its inverse,
  the conjugation linking the induced representation to the left regular one;
* ``hat_anti_iso``/``check_anti_iso``: f -> chi(s^-1) alpha_{s^-1}(f(s)), the
  anti-isomorphism onto the opposite-system convolution algebra (the constant
  character is the finite-group modular function).

The sixteen canonical actions on the function space (and the eight commuting
ones) are materialized as explicit matrices by :func:`table2_action` and
:func:`table3_action`, together with the order-2 intertwiner ``T_chi`` and
the gauge ``S_chi`` that realize the equivalences between them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import DynamicalSystem
from .errors import CovarianceViolated, DimensionMismatch, ValidationError
from .groups import Character, FiniteGroup, Weight, trivial_character, trivial_weight
from .spaces import WeightedL1Space

__all__ = [
    "BeurlingAlgebra",
    "delta_function",
    "random_function",
    "twisted_convolve",
    "weighted_norm",
    "convolution_matrix",
    "hat_conjugator",
    "check_conjugator",
    "hat_anti_iso",
    "check_anti_iso",
    "t_chi_matrix",
    "s_chi_matrix",
    "s_chi_inv_matrix",
    "apply_t_chi",
    "apply_s_chi",
    "table2_action",
    "table3_action",
    "canonical_trivial_pair",
    "afunction_to_json",
    "afunction_from_json",
]


def _as_function(system: DynamicalSystem, f) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    shape = (system.group.order, system.algebra.dim)
    if f.shape == (system.group.order * system.algebra.dim,):
        f = f.reshape(shape)
    if f.shape != shape:
        raise DimensionMismatch(shape, f.shape)
    return f


def delta_function(system: DynamicalSystem, r: int, a) -> np.ndarray:
    """The elementary tensor delta_r (x) a."""
    out = np.zeros((system.group.order, system.algebra.dim), dtype=complex)
    out[r] = np.asarray(a, dtype=complex)
    return out


def random_function(system: DynamicalSystem, rng: np.random.Generator) -> np.ndarray:
    shape = (system.group.order, system.algebra.dim)
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def twisted_convolve(system: DynamicalSystem, f, g) -> np.ndarray:
    """[f * g](s) = sum_r f(r) alpha_r(g(r^-1 s)); exact finite sum."""
    f = _as_function(system, f)
    g = _as_function(system, g)
    group, algebra = system.group, system.algebra
    out = np.zeros_like(f)
    for r in group.elements():
        moved = (system.alpha[r] @ g.T).T            # alpha_r(g(t)) for all t
        shifted = moved[group.mult[group.inv(r)]]    # t = r^-1 s, indexed by s
        out += np.einsum("i,sj,ijk->sk", f[r], shifted, algebra.structure)
    return out


def weighted_norm(algebra, weight: Weight, f, p: float = 1) -> float:
    """|f|_{p,w} = (sum_s |f(s)|_A^p w(s))^(1/p)."""
    f = np.asarray(f, dtype=complex)
    norms = np.array([algebra.norm(f[s]) for s in range(f.shape[0])])
    if np.isinf(p):
        return float(np.max(norms))
    return float(np.sum(norms**p * weight.values) ** (1.0 / p))


def convolution_matrix(system: DynamicalSystem, f, side: str = "left") -> np.ndarray:
    """Matrix of g -> f*g (or g -> g*f for side="right") on flattened coefficients."""
    n, d = system.group.order, system.algebra.dim
    dim = n * d
    out = np.empty((dim, dim), dtype=complex)
    basis = np.zeros((n, d), dtype=complex)
    for t in range(n):
        for j in range(d):
            basis[t, j] = 1
            prod = twisted_convolve(system, f, basis) if side == "left" else twisted_convolve(system, basis, f)
            out[:, t * d + j] = prod.reshape(dim)
            basis[t, j] = 0
    return out


@dataclass(frozen=True, eq=False)
class BeurlingAlgebra:
    """The function space with twisted convolution and the (1, w) norm."""

    system: DynamicalSystem
    weight: Weight

    @property
    def dim(self) -> int:
        return self.system.group.order * self.system.algebra.dim

    def space(self) -> WeightedL1Space:
        return WeightedL1Space(self.system.group, self.system.algebra, self.weight)

    def norm(self, f) -> float:
        return weighted_norm(self.system.algebra, self.weight, _as_function(self.system, f))

    def convolve(self, f, g) -> np.ndarray:
        return twisted_convolve(self.system, f, g)

    def identity_function(self) -> np.ndarray:
        """delta_e (x) 1, the convolution identity when A is unital and alpha fixes 1."""
        one = self.system.algebra.identity
        if one is None:
            raise ValidationError("convolution identity needs a unital algebra")
        return delta_function(self.system, self.system.group.identity, one)


# -- conjugators and anti-isomorphisms ------------------------------------------


def hat_conjugator(system: DynamicalSystem, h) -> np.ndarray:
    """h -> (s -> alpha_s(h(s))); the identity when the action is trivial."""
    h = _as_function(system, h)
    return np.stack([system.alpha[s] @ h[s] for s in system.group.elements()])


def check_conjugator(system: DynamicalSystem, h) -> np.ndarray:
    """Inverse of :func:`hat_conjugator`."""
    h = _as_function(system, h)
    return np.stack([system.alpha[system.group.inv(s)] @ h[s] for s in system.group.elements()])


def hat_anti_iso(system: DynamicalSystem, f, chi: Character | None = None) -> np.ndarray:
    """f -> (s -> chi(s^-1) alpha_{s^-1}(f(s))), into the opposite-system algebra.

    Reverses convolution products: hat(f *_alpha g) = hat(g) *_{alpha^o} hat(f).
    The default character is the constant 1 (the modular function of a finite
    group).
    """
    f = _as_function(system, f)
    chi = chi if chi is not None else trivial_character(system.group)
    group = system.group
    return np.stack(
        [chi[group.inv(s)] * (system.alpha[group.inv(s)] @ f[s]) for s in group.elements()]
    )


def check_anti_iso(system: DynamicalSystem, g, chi: Character | None = None) -> np.ndarray:
    """Inverse of :func:`hat_anti_iso`: g -> (s -> chi(s) alpha_s(g(s)))."""
    g = _as_function(system, g)
    chi = chi if chi is not None else trivial_character(system.group)
    return np.stack([chi[s] * (system.alpha[s] @ g[s]) for s in system.group.elements()])


# -- T_chi and S_chi --------------------------------------------------------------


def apply_t_chi(group: FiniteGroup, chi: Character, f) -> np.ndarray:
    """(T_chi f)(s) = chi_s f(s^-1); an involution."""
    f = np.asarray(f, dtype=complex)
    return np.stack([chi[s] * f[group.inv(s)] for s in group.elements()])


def apply_s_chi(system: DynamicalSystem, chi: Character, f, inverse: bool = False) -> np.ndarray:
    """(S_chi f)(s) = chi_{s^-1} alpha_{s^-1}(f(s)); inverse uses chi_s alpha_s."""
    f = _as_function(system, f)
    group = system.group
    if inverse:
        return np.stack([chi[s] * (system.alpha[s] @ f[s]) for s in group.elements()])
    return np.stack(
        [chi[group.inv(s)] * (system.alpha[group.inv(s)] @ f[s]) for s in group.elements()]
    )


def t_chi_matrix(group: FiniteGroup, chi: Character, block_dim: int) -> np.ndarray:
    n = group.order
    out = np.zeros((n * block_dim, n * block_dim), dtype=complex)
    eye = np.eye(block_dim)
    for s in group.elements():
        t = group.inv(s)
        out[s * block_dim : (s + 1) * block_dim, t * block_dim : (t + 1) * block_dim] = chi[s] * eye
    return out


def s_chi_matrix(system: DynamicalSystem, chi: Character) -> np.ndarray:
    n, d = system.group.order, system.algebra.dim
    out = np.zeros((n * d, n * d), dtype=complex)
    for s in system.group.elements():
        sinv = system.group.inv(s)
        out[s * d : (s + 1) * d, s * d : (s + 1) * d] = chi[sinv] * system.alpha[sinv]
    return out


def s_chi_inv_matrix(system: DynamicalSystem, chi: Character) -> np.ndarray:
    n, d = system.group.order, system.algebra.dim
    out = np.zeros((n * d, n * d), dtype=complex)
    for s in system.group.elements():
        out[s * d : (s + 1) * d, s * d : (s + 1) * d] = chi[s] * system.alpha[s]
    return out


# -- the canonical action tables ---------------------------------------------------

# algebra-action block at point s, for basis element a
_PI_KINDS = {
    "left": lambda sys, s, a: sys.algebra.left_mult_matrix(a),
    "left_alpha_s": lambda sys, s, a: sys.algebra.left_mult_matrix(sys.alpha[s] @ a),
    "left_alpha_sinv": lambda sys, s, a: sys.algebra.left_mult_matrix(sys.alpha[sys.group.inv(s)] @ a),
    "right": lambda sys, s, a: sys.algebra.right_mult_matrix(a),
    "right_alpha_s": lambda sys, s, a: sys.algebra.right_mult_matrix(sys.alpha[s] @ a),
    "right_alpha_sinv": lambda sys, s, a: sys.algebra.right_mult_matrix(sys.alpha[sys.group.inv(s)] @ a),
}

# group-action source point and twist: (U_r f)(s) = chi_r twist(f(source(r, s)))
_U_SOURCES = {
    "rinv_s": lambda G, r, s: G.mul(G.inv(r), s),
    "s_r": lambda G, r, s: G.mul(s, r),
    "r_s": lambda G, r, s: G.mul(r, s),
    "s_rinv": lambda G, r, s: G.mul(s, G.inv(r)),
}

_U_TWISTS = {
    "alpha_r": lambda sys, r: sys.alpha[r],
    "alpha_rinv": lambda sys, r: sys.alpha[sys.group.inv(r)],
    None: lambda sys, r: np.eye(sys.algebra.dim, dtype=complex),
}

# line -> (pi kind, U source, U twist, flavor, covariance)
_TABLE2 = {
    1: ("left", "rinv_s", "alpha_r", ("m", "m"), "r"),
    2: ("left", "s_r", "alpha_r", ("m", "m"), "r"),
    3: ("left_alpha_s", "s_r", None, ("m", "m"), "r"),
    4: ("left_alpha_sinv", "rinv_s", None, ("m", "m"), "r"),
    5: ("left", "s_rinv", "alpha_rinv", ("m", "a"), "rinv"),
    6: ("left", "r_s", "alpha_rinv", ("m", "a"), "rinv"),
    7: ("left_alpha_sinv", "r_s", None, ("m", "a"), "rinv"),
    8: ("left_alpha_s", "s_rinv", None, ("m", "a"), "rinv"),
    9: ("right", "rinv_s", "alpha_r", ("a", "m"), "r"),
    10: ("right", "s_r", "alpha_r", ("a", "m"), "r"),
    11: ("right_alpha_s", "s_r", None, ("a", "m"), "r"),
    12: ("right_alpha_sinv", "rinv_s", None, ("a", "m"), "r"),
    13: ("right", "s_rinv", "alpha_rinv", ("a", "a"), "rinv"),
    14: ("right", "r_s", "alpha_rinv", ("a", "a"), "rinv"),
    15: ("right_alpha_sinv", "r_s", None, ("a", "a"), "rinv"),
    16: ("right_alpha_s", "s_rinv", None, ("a", "a"), "rinv"),
}

_TABLE3 = {
    1: ("left_alpha_s", "rinv_s", "alpha_r", ("m", "m"), "commute"),
    2: ("left_alpha_sinv", "s_r", "alpha_r", ("m", "m"), "commute"),
    3: ("left_alpha_sinv", "s_rinv", "alpha_rinv", ("m", "a"), "commute"),
    4: ("left_alpha_s", "r_s", "alpha_rinv", ("m", "a"), "commute"),
    5: ("right_alpha_s", "rinv_s", "alpha_r", ("a", "m"), "commute"),
    6: ("right_alpha_sinv", "s_r", "alpha_r", ("a", "m"), "commute"),
    7: ("right_alpha_sinv", "s_rinv", "alpha_rinv", ("a", "a"), "commute"),
    8: ("right_alpha_s", "r_s", "alpha_rinv", ("a", "a"), "commute"),
}


def _action_matrices(system: DynamicalSystem, spec, chi: Character):
    pi_kind, u_source, u_twist, flavor, covariance = spec
    group, algebra = system.group, system.algebra
    n, d = group.order, algebra.dim
    dim = n * d

    pi = np.zeros((d, dim, dim), dtype=complex)
    basis = np.eye(d, dtype=complex)
    block = _PI_KINDS[pi_kind]
    for k in range(d):
        for s in group.elements():
            pi[k, s * d : (s + 1) * d, s * d : (s + 1) * d] = block(system, s, basis[k])

    u = np.zeros((n, dim, dim), dtype=complex)
    source = _U_SOURCES[u_source]
    twist = _U_TWISTS[u_twist]
    for r in group.elements():
        mat = twist(system, r)
        for s in group.elements():
            t = source(group, r, s)
            u[r, s * d : (s + 1) * d, t * d : (t + 1) * d] = chi[r] * mat
    return pi, u, flavor, covariance


def _build_table_pair(system, line, chi, table, table_name):
    from .crossed import CovariantPair  # deferred: crossed imports this module

    if line not in table:
        raise ValidationError(f"{table_name} has no line {line}")
    chi = chi if chi is not None else trivial_character(system.group)
    pi, u, flavor, covariance = _action_matrices(system, table[line], chi)
    space = WeightedL1Space(system.group, system.algebra, trivial_weight(system.group))
    try:
        return CovariantPair.build(
            system, space, pi, u, flavor, covariance=covariance, empirical_flavor=True
        )
    except ValidationError as exc:
        raise CovarianceViolated(f"{table_name} line {line}") from exc


def table2_action(system: DynamicalSystem, line: int, chi: Character | None = None):
    """Line 1..16 of the canonical actions on the function space, as a verified pair."""
    return _build_table_pair(system, line, chi, _TABLE2, "action table")


def table3_action(system: DynamicalSystem, line: int, chi: Character | None = None):
    """Line 1..8 of the canonical commuting actions, as a verified pair."""
    return _build_table_pair(system, line, chi, _TABLE3, "commuting action table")


def canonical_trivial_pair(system: DynamicalSystem):
    """(pi(a)f)(s) = a f(s), (U_r f)(s) = f(r^-1 s): the canonical pair for the trivial action."""
    from .crossed import CovariantPair

    group, algebra = system.group, system.algebra
    n, d = group.order, algebra.dim
    dim = n * d
    pi = np.zeros((d, dim, dim), dtype=complex)
    basis = np.eye(d, dtype=complex)
    for k in range(d):
        lam = algebra.left_mult_matrix(basis[k])
        for s in group.elements():
            pi[k, s * d : (s + 1) * d, s * d : (s + 1) * d] = lam
    u = np.zeros((n, dim, dim), dtype=complex)
    eye = np.eye(d)
    for r in group.elements():
        for s in group.elements():
            t = group.mul(group.inv(r), s)
            u[r, s * d : (s + 1) * d, t * d : (t + 1) * d] = eye
    space = WeightedL1Space(group, algebra, trivial_weight(group))
    return CovariantPair.build(system, space, pi, u, ("m", "m"), covariance="commute")


# -- serialization -----------------------------------------------------------------


def afunction_to_json(f) -> dict:
    """Map element-index -> coefficient array of [re, im] pairs."""
    f = np.asarray(f, dtype=complex)
    return {
        str(s): [[float(z.real), float(z.imag)] for z in f[s]]
        for s in range(f.shape[0])
    }


def afunction_from_json(data: dict, order: int, dim: int) -> np.ndarray:
    out = np.zeros((order, dim), dtype=complex)
    for key, coeffs in data.items():
        s = int(key)
        if not 0 <= s < order:
            raise ValidationError(f"element index {s} out of range")
        if len(coeffs) != dim:
            raise DimensionMismatch(dim, len(coeffs))
        out[s] = [complex(re, im) for re, im in coeffs]
    return out
