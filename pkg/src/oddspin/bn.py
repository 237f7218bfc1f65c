"""Top intersection numbers of tautological Chern monomials on the product
of a curve with a Brill-Noether locus inside its Jacobian.

Two independent evaluators are provided.  ``evaluate_taut`` routes every
monomial through the Harris-Tu determinant of reciprocal factorials;
``evaluate_taut_recursion`` first eliminates c_2, c_3, ... through the
h^1 = 1 relation c_{i+1} = theta^i c_1 / i! - i theta^{i+1} / (i+1)! and
then evaluates the remaining c_1 powers.  Their agreement on every
valid-degree monomial is the package's main internal safety net.

The degree-1 kernel class k stands for the first Chern class of the dual
kernel line bundle of the defining bundle morphism of each degeneracy
locus; ``ker_substitute`` eliminates it against the Chern class one degree
past the locus class in the same series (one substitution per side of the
genus-12 pipeline).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import (
    NonSymmetricMonomialWarning,
    PreconditionError,
    PresetMismatchError,
    RingDomainError,
)
from .linalg import RatMatrix
from .numerics import rho
from .ring import (
    JACOBIAN,
    RingElem,
    RingPreset,
    geometric_series,
    preset_jacobian_product,
)
from .scalars import ZERO, recip_factorial

SIDE_X = "X"
SIDE_Y = "Y"


@dataclass(frozen=True)
class BNContext:
    """Fixed (g, r, d) together with the matching ring preset."""

    g: int
    r: int
    d: int
    preset: RingPreset

    @property
    def rho(self) -> int:
        return rho(self.g, self.r, self.d)

    @property
    def dim_locus(self) -> int:
        return self.rho

    @property
    def dim_total(self) -> int:
        # dimension of curve x Brill-Noether locus
        return self.rho + 1


def bn_context(g: int, r: int, d: int) -> BNContext:
    value = rho(g, r, d)
    if value < 0:
        raise PreconditionError(
            f"negative Brill-Noether number rho({g},{r},{d}) = {value}"
        )
    return BNContext(g, r, d, preset_jacobian_product(g, d, r))


@dataclass(frozen=True)
class HTQuery:
    """One Chern-root monomial x_1^{i_1}..x_{r+1}^{i_{r+1}} theta^a (eta?)."""

    exponents: tuple[int, ...]
    theta_power: int
    has_eta: bool

    def __post_init__(self):
        if any(e < 0 for e in self.exponents) or self.theta_power < 0:
            raise PreconditionError("query exponents must be nonnegative")


def ht_matrix(ctx: BNContext, exponents: tuple[int, ...]) -> RatMatrix:
    """The (r+1)x(r+1) matrix of reciprocal factorials attached to a
    Chern-root exponent vector; out-of-range entries are 0 by convention."""
    base = ctx.g + ctx.r - ctx.d
    n = ctx.r + 1
    return RatMatrix.from_rows(
        [
            [recip_factorial(base + exponents[j] - j + l) for l in range(n)]
            for j in range(n)
        ]
    )


@lru_cache(maxsize=None)
def _ht_det(g: int, r: int, d: int, exponents: tuple[int, ...]) -> Fraction:
    ctx = BNContext(g, r, d, preset_jacobian_product(g, d, r))
    return ht_matrix(ctx, exponents).det()


def ht_value(ctx: BNContext, query: HTQuery, *, _in_symmetric_sum: bool = False) -> Fraction:
    """Intersection number of one Chern-root monomial on the product space.

    Every permutation term of the determinant carries the same total theta
    exponent E = (r+1)(g+r-d) + sum(i_j), so the monomial evaluates to
    det(reciprocal factorials) * g! exactly when eta is present and
    E + a = g (the normalization integrates eta * theta^g to g!).  Queries
    without eta are pulled back from the Brill-Noether locus and pair to
    zero on the product; off-degree queries return 0 by design.
    """
    if len(query.exponents) != ctx.r + 1:
        raise PreconditionError(
            f"expected {ctx.r + 1} Chern-root exponents, got {len(query.exponents)}"
        )
    if not _in_symmetric_sum and len(set(query.exponents)) > 1:
        warnings.warn(
            "bare non-symmetric Chern-root monomial evaluated directly; such"
            " values are only meaningful inside symmetric sums",
            NonSymmetricMonomialWarning,
            stacklevel=2,
        )
    if not query.has_eta:
        return ZERO
    theta_total = (
        (ctx.r + 1) * (ctx.g + ctx.r - ctx.d)
        + sum(query.exponents)
        + query.theta_power
    )
    if theta_total != ctx.g:
        return ZERO
    return _ht_det(ctx.g, ctx.r, ctx.d, query.exponents) * math.factorial(ctx.g)


# ---------------------------------------------------------------------------
# Elementary-symmetric expansion of Chern monomials
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _elementary(n: int, k: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    terms = []
    for combo in combinations(range(n), k):
        mono = [0] * n
        for idx in combo:
            mono[idx] = 1
        terms.append((tuple(mono), 1))
    return tuple(terms)


def _poly_mul(a, b):
    out: dict[tuple[int, ...], int] = {}
    for m1, c1 in a:
        for m2, c2 in b:
            key = tuple(x + y for x, y in zip(m1, m2))
            out[key] = out.get(key, 0) + c1 * c2
    return tuple(out.items())


@lru_cache(maxsize=None)
def _expand_cached(n: int, exps: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    poly = (((0,) * n, 1),)
    for k, mult in enumerate(exps, start=1):
        for _ in range(mult):
            poly = _poly_mul(poly, _elementary(n, k))
    return poly


def expand_c_monomial(ctx: BNContext, c_exponents) -> dict[tuple[int, ...], int]:
    """Expand prod_k e_k(x_1..x_{r+1})^{m_k} into Chern-root monomials.

    ``c_exponents`` lists the multiplicity of each elementary symmetric
    class starting from e_1; shorter tuples are padded with zeros.
    """
    n = ctx.r + 1
    exps = tuple(c_exponents)
    if len(exps) > n:
        raise PreconditionError(f"at most {n} Chern classes exist in this context")
    exps = exps + (0,) * (n - len(exps))
    return dict(_expand_cached(n, exps))


# ---------------------------------------------------------------------------
# Kernel-class substitution
# ---------------------------------------------------------------------------

def total_chern_dual(preset: RingPreset) -> RingElem:
    """1 + c_1 + ... + c_{r+1} (the dual tautological total Chern class)."""
    r = preset.param("r")
    total = preset.one()
    for i in range(1, r + 2):
        total = total + preset.gen(f"c{i}")
    return total


def jet_bundle_inverse_chern(preset: RingPreset, curve_genus: int, line_degree: int) -> RingElem:
    """Inverse total Chern class of the dual first-jet bundle of a degree-d
    Poincare bundle: the product of the geometric series of d*eta + gamma
    and (2g-2+d)*eta + gamma."""
    eta = preset.gen("eta")
    gamma = preset.gen("gamma")
    first = geometric_series(line_degree * eta + gamma)
    second = geometric_series((2 * curve_genus - 2 + line_degree) * eta + gamma)
    return first * second


def point_pair_inverse_chern(preset: RingPreset, line_degree: int) -> RingElem:
    """Inverse total Chern class of the dual rank-2 evaluation bundle at a
    moving point plus a fixed point."""
    eta = preset.gen("eta")
    gamma = preset.gen("gamma")
    return geometric_series(line_degree * eta + gamma) * (preset.one() - eta)


def _context_of(preset: RingPreset) -> BNContext:
    if preset.kind != JACOBIAN:
        raise RingDomainError("kernel substitution lives on the jacobian preset")
    return bn_context(preset.param("g"), preset.param("r"), preset.param("d"))


def ker_substitution_class(ctx: BNContext, side: str) -> RingElem:
    """Ambient class standing for k times the degeneracy-locus class.

    Each locus is the first degeneracy locus of a morphism from a rank-2
    bundle to the rank r+1 tautological one.  Resolving it inside the
    projectivized source bundle and pushing down gives, for any class xi,

        (integral over the locus of) c_1(Ker^dual) . xi
            = c_{r+1}(target^dual - source^dual) . xi   on the ambient space,

    one degree past the locus class c_r(target^dual - source^dual) from the
    same Chern series.  The substitution class therefore already carries
    the locus factor: k-linear monomials pair directly against the ambient
    product, with no extra locus multiplication.
    """
    if side == SIDE_X:
        series = jet_bundle_inverse_chern(ctx.preset, ctx.g, ctx.d)
    elif side == SIDE_Y:
        series = point_pair_inverse_chern(ctx.preset, ctx.d)
    else:
        raise PreconditionError(f"unknown side {side!r}; expected 'X' or 'Y'")
    return (total_chern_dual(ctx.preset) * series).homogeneous_part(ctx.r + 1)


def split_kernel_class(e: RingElem) -> tuple[RingElem, RingElem]:
    """Split into (k-free part, k-linear part with k stripped).

    A monomial of k-degree two or more is a hard error: the pipeline's
    integrands are k-linear, so a square signals a caller bug rather than
    an excess-intersection situation this evaluator could silently absorb.
    """
    preset = e.preset
    k_index = preset.index("k")
    free: dict = {}
    linear: dict = {}
    for mono, coeff in e.terms:
        k_exp = mono[k_index]
        if k_exp == 0:
            free[mono] = coeff
        elif k_exp == 1:
            stripped = list(mono)
            stripped[k_index] = 0
            linear[tuple(stripped)] = coeff
        else:
            raise RingDomainError(
                "kernel class appears with exponent >= 2; excess intersection"
                " is outside this evaluator's scope"
            )
    return preset.element(free), preset.element(linear)


def ker_substitute(e: RingElem, side: str) -> RingElem:
    """Replace each k-linear monomial k.xi by its side-specific push-down.

    k-free monomials pass through unchanged.  Mind the grading: the
    substitute of a k-linear monomial is an ambient class that already
    contains the degeneracy-locus factor (see ker_substitution_class), so
    a class restricted to the locus evaluates as

        (k-free part) . [locus]  +  ker_substitute(k-linear part).
    """
    free, linear = split_kernel_class(e)
    if linear.is_zero():
        return e
    ctx = _context_of(e.preset)
    return free + ker_substitution_class(ctx, side) * linear


def evaluate_on_locus(ctx: BNContext, e: RingElem, side: str, locus: RingElem) -> Fraction:
    """Integrate a class restricted to a degeneracy locus.

    The k-free part integrates against the locus class; k-linear monomials
    are pushed down by the kernel-class substitution, which carries the
    locus factor already.
    """
    free, linear = split_kernel_class(e)
    ambient = free * locus + ker_substitution_class(ctx, side) * linear
    return evaluate_taut(ctx, ambient)


def _has_kernel_class(e: RingElem) -> bool:
    k_index = e.preset.index("k")
    return any(mono[k_index] for mono, _ in e.terms)


# ---------------------------------------------------------------------------
# The two evaluators
# ---------------------------------------------------------------------------

def evaluate_taut(ctx: BNContext, e: RingElem, side: str | None = None) -> Fraction:
    """Evaluate a tautological class against curve x Brill-Noether locus.

    Monomials containing gamma or missing eta integrate to zero; the
    c-monomial of each surviving term expands into Chern-root monomials
    that the Harris-Tu determinant evaluates.  If the kernel class is
    present a ``side`` is required for its substitution.
    """
    if e.preset != ctx.preset:
        raise PresetMismatchError("element does not live in the context's preset")
    if _has_kernel_class(e):
        if side is None:
            raise RingDomainError(
                "kernel class present: pass side='X' or side='Y' for substitution"
            )
        e = ker_substitute(e, side)
    k_index = ctx.preset.index("k")
    total = ZERO
    for mono, coeff in e.terms:
        eta_exp, gamma_exp, theta_exp = mono[0], mono[1], mono[2]
        if gamma_exp or eta_exp != 1:
            continue
        c_exps = mono[3:k_index]
        for root_mono, mult in expand_c_monomial(ctx, c_exps).items():
            query = HTQuery(root_mono, theta_exp, True)
            total += coeff * mult * ht_value(ctx, query, _in_symmetric_sum=True)
    return total


@lru_cache(maxsize=None)
def _recursion_images(preset: RingPreset) -> tuple[RingElem, ...]:
    # c_{i+1} = theta^i c_1 / i! - i theta^{i+1} / (i+1)!  for i >= 1
    theta = preset.gen("theta")
    c1 = preset.gen("c1")
    r = preset.param("r")
    images = [c1]
    for i in range(1, r + 1):
        images.append(
            recip_factorial(i) * c1 * theta ** i
            - i * recip_factorial(i + 1) * theta ** (i + 1)
        )
    return tuple(images)


def evaluate_taut_recursion(ctx: BNContext, e: RingElem, side: str | None = None) -> Fraction:
    """Independent evaluator through the h^1 = 1 Chern-class recursion.

    Valid only when the line bundles have h^1 = 1 across the whole locus,
    i.e. g - d + r = 1 and the next Brill-Noether locus is empty; other
    contexts are refused.
    """
    if ctx.g - ctx.d + ctx.r != 1 or rho(ctx.g, ctx.r + 1, ctx.d) >= 0:
        raise PreconditionError(
            "the h^1 = 1 recursion needs g - d + r = 1 and an empty next"
            " Brill-Noether locus"
        )
    if e.preset != ctx.preset:
        raise PresetMismatchError("element does not live in the context's preset")
    if _has_kernel_class(e):
        if side is None:
            raise RingDomainError(
                "kernel class present: pass side='X' or side='Y' for substitution"
            )
        e = ker_substitute(e, side)

    preset = ctx.preset
    images = _recursion_images(preset)
    k_index = preset.index("k")
    size = len(preset.generators)

    rewritten = preset.zero()
    for mono, coeff in e.terms:
        skeleton = [0] * size
        skeleton[0], skeleton[1], skeleton[2] = mono[0], mono[1], mono[2]
        term = preset.element({tuple(skeleton): coeff})
        for i in range(1, ctx.r + 2):
            exp = mono[3 + i - 1]
            if exp:
                term = term * images[i - 1] ** exp
        rewritten = rewritten + term

    c1_index = preset.index("c1")
    total = ZERO
    for mono, coeff in rewritten.terms:
        eta_exp, gamma_exp, theta_exp = mono[0], mono[1], mono[2]
        if gamma_exp or eta_exp != 1:
            continue
        m1 = mono[c1_index]
        for root_mono, mult in expand_c_monomial(ctx, (m1,)).items():
            query = HTQuery(root_mono, theta_exp, True)
            total += coeff * mult * ht_value(ctx, query, _in_symmetric_sum=True)
    return total
