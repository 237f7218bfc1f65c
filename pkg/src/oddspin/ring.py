"""Sparse graded-commutative polynomial engine with monomial rewrite rules.

All cohomology computations in this package happen inside one of three
small ring presets:

* ``jacobian``: the product of a curve with a Jacobian.  Degree-1
  generators eta (point class on the curve factor), gamma (the mixed
  Kuenneth piece of the Poincare bundle) and theta (the polarization),
  the Chern classes c_1..c_{r+1} of the dual tautological bundle (degree i)
  and an inert degree-1 kernel class k that only the Brill-Noether
  evaluator consumes.  Rewrite rules: eta^2 -> 0, eta*gamma -> 0,
  gamma^2 -> -2*eta*theta (so gamma^3 -> 0 follows).  Monomials purely in
  eta, gamma, theta truncate above degree g+1, the dimension of the
  ambient product; c- and k-monomials are never truncated here.
* ``surface``: the self-product of a curve, generated by the two fiber
  classes F1, F2 and the diagonal Delta, with the top-degree pairing
  table F1.F2 = Delta.F1 = Delta.F2 = 1, F1^2 = F2^2 = 0 and
  Delta^2 = 2 - 2g.
* ``universal-curve``: the universal spin curve, generated by the relative
  dualizing class omega and the pulled-back Hodge class lambda; it has no
  rewrite rules and is consumed by ``pushforward_relative``.

Monomials are exponent vectors over the preset's fixed generator order;
elements are sparse maps from normalized monomials to nonzero rationals.
Every rewrite strictly reduces the (eta, gamma)-exponent weight, so
normalization terminates; gamma is an ordinary commuting generator whose
odd character is fully encoded by the rules above.

Integration conventions, fixed once for the whole package: on the
Jacobian-product preset the only monomial with nonzero integral is
eta*theta^g, with value g! (the classical Poincare normalization); on the
surface preset integration reads off the pairing table.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import PreconditionError, PresetMismatchError, RingDomainError
from .scalars import ZERO, as_scalar, format_scalar

JACOBIAN = "jacobian"
SURFACE = "surface"
UNIVERSAL_CURVE = "universal-curve"

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


@dataclass(frozen=True)
class RewriteRule:
    """Replace any monomial divisible by ``lhs`` using the ``rhs`` terms."""

    lhs: Monomial
    rhs: tuple[tuple[Monomial, Fraction], ...]


@dataclass(frozen=True)
class RingPreset:
    label: str
    kind: str
    generators: tuple[Generator, ...]
    rules: tuple[RewriteRule, ...]
    top_degree: int | None
    params: tuple[tuple[str, int], ...] = ()
    pairings: tuple[tuple[Monomial, Fraction], ...] = ()

    # -- bookkeeping -------------------------------------------------
    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def param(self, name: str) -> int:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise RingDomainError(f"no generator {name!r} in preset {self.label}")

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.generators))

    def monomial_text(self, mono: Monomial) -> str:
        parts = []
        for e, g in zip(mono, self.generators):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts)

    # -- element construction ----------------------------------------
    def zero(self) -> "RingElem":
        return RingElem(self, ())

    def one(self) -> "RingElem":
        return self.element({(0,) * len(self.generators): 1})

    def gen(self, name: str) -> "RingElem":
        mono = [0] * len(self.generators)
        mono[self.index(name)] = 1
        return self.element({tuple(mono): 1})

    def element(self, terms: Mapping[Monomial, object]) -> "RingElem":
        acc = _normalize(self, ((m, as_scalar(c)) for m, c in terms.items()))
        return RingElem(self, tuple(sorted(acc.items(), reverse=True)))

    # -- normalization internals --------------------------------------
    def _match_rule(self, mono: Monomial) -> RewriteRule | None:
        for rule in self.rules:
            if all(m >= l for m, l in zip(mono, rule.lhs)):
                return rule
        return None

    def _truncates(self, mono: Monomial) -> bool:
        if self.top_degree is None:
            return False
        if self.kind == JACOBIAN:
            # only monomials living purely on the curve x Jacobian factor
            if any(mono[3:]):
                return False
            return mono[0] + mono[1] + mono[2] > self.top_degree
        return self.monomial_degree(mono) > self.top_degree


def _normalize(preset: RingPreset, raw: Iterable[tuple[Monomial, Fraction]]) -> dict:
    acc: dict[Monomial, Fraction] = {}
    stack = list(raw)
    while stack:
        mono, coeff = stack.pop()
        if coeff == 0:
            continue
        rule = preset._match_rule(mono)
        if rule is not None:
            for rmono, rcoeff in rule.rhs:
                shifted = tuple(m - l + r for m, l, r in zip(mono, rule.lhs, rmono))
                stack.append((shifted, coeff * rcoeff))
            continue
        if preset._truncates(mono):
            continue
        total = acc.get(mono, ZERO) + coeff
        if total == 0:
            acc.pop(mono, None)
        else:
            acc[mono] = total
    return acc


@dataclass(frozen=True)
class RingElem:
    """Sparse normalized element of a ring preset.  Immutable."""

    preset: RingPreset
    terms: tuple[tuple[Monomial, Fraction], ...]

    # -- inspection ---------------------------------------------------
    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        for m, c in self.terms:
            if m == mono:
                return c
        return ZERO

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        if not self.terms:
            return None
        return max(self.preset.monomial_degree(m) for m, _ in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {self.preset.monomial_degree(m) for m, _ in self.terms}
        return len(degrees) <= 1

    def homogeneous_part(self, degree: int) -> "RingElem":
        kept = {m: c for m, c in self.terms if self.preset.monomial_degree(m) == degree}
        return self.preset.element(kept)

    # -- arithmetic ---------------------------------------------------
    def _require_same_preset(self, other: "RingElem") -> None:
        if self.preset != other.preset:
            raise PresetMismatchError(
                f"operands live in different presets: {self.preset.label} vs {other.preset.label}"
            )

    def __add__(self, other):
        if isinstance(other, RingElem):
            self._require_same_preset(other)
            acc = dict(self.terms)
            for m, c in other.terms:
                total = acc.get(m, ZERO) + c
                if total == 0:
                    acc.pop(m, None)
                else:
                    acc[m] = total
            return RingElem(self.preset, tuple(sorted(acc.items(), reverse=True)))
        if isinstance(other, (int, Fraction)):
            return self + as_scalar(other) * self.preset.one()
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.preset, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, (RingElem, int, Fraction)):
            return self + (-other if isinstance(other, RingElem) else -as_scalar(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RingElem):
            self._require_same_preset(other)
            raw = []
            for m1, c1 in self.terms:
                for m2, c2 in other.terms:
                    raw.append((tuple(a + b for a, b in zip(m1, m2)), c1 * c2))
            acc = _normalize(self.preset, raw)
            return RingElem(self.preset, tuple(sorted(acc.items(), reverse=True)))
        if isinstance(other, (int, Fraction)):
            scale = as_scalar(other)
            if scale == 0:
                return self.preset.zero()
            return RingElem(self.preset, tuple((m, c * scale) for m, c in self.terms))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise RingDomainError("ring exponents are nonnegative integers")
        result = self.preset.one()
        for _ in range(n):
            result = result * self
        return result

    # -- rendering ----------------------------------------------------
    def render(self) -> str:
        return _render_terms(
            [(self.preset.monomial_text(m), c) for m, c in self.terms]
        )

    def __str__(self) -> str:
        return self.render()


def _render_terms(pairs: list[tuple[str, Fraction]]) -> str:
    """Deterministic ASCII rendering that re-parses under the CLI grammar."""
    if not pairs:
        return "0"
    out = []
    for idx, (body, coeff) in enumerate(pairs):
        if idx == 0:
            if not body:
                out.append(format_scalar(coeff))
            elif coeff == 1:
                out.append(body)
            elif coeff == -1:
                out.append(f"-1*{body}")
            else:
                out.append(f"{format_scalar(coeff)}*{body}")
            continue
        sep = " + " if coeff > 0 else " - "
        mag = coeff if coeff > 0 else -coeff
        if not body:
            out.append(sep + format_scalar(mag))
        elif mag == 1:
            out.append(sep + body)
        else:
            out.append(sep + f"{format_scalar(mag)}*{body}")
    return "".join(out)


def multiply(a: RingElem, b: RingElem) -> RingElem:
    """Product in normal form; all generators commute."""
    return a * b


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def preset_jacobian_product(g: int, d: int, r: int) -> RingPreset:
    """Cohomology preset for curve x Pic^d with a rank r+1 tautological bundle."""
    if g < 1 or d < 0 or r < 0:
        raise PreconditionError(
            f"jacobian preset needs g >= 1, d >= 0, r >= 0 (got g={g}, d={d}, r={r})"
        )
    gens = [Generator("eta", 1), Generator("gamma", 1), Generator("theta", 1)]
    gens += [Generator(f"c{i}", i) for i in range(1, r + 2)]
    gens.append(Generator("k", 1))
    size = len(gens)

    def mono(**exps: int) -> Monomial:
        vec = [0] * size
        for name, e in exps.items():
            vec[[gn.name for gn in gens].index(name)] = e
        return tuple(vec)

    rules = (
        RewriteRule(mono(eta=2), ()),
        RewriteRule(mono(eta=1, gamma=1), ()),
        RewriteRule(mono(gamma=2), ((mono(eta=1, theta=1), Fraction(-2)),)),
    )
    return RingPreset(
        label=f"jacobian(g={g},d={d},r={r})",
        kind=JACOBIAN,
        generators=tuple(gens),
        rules=rules,
        top_degree=g + 1,
        params=(("d", d), ("g", g), ("r", r)),
    )


def preset_surface_product(g: int) -> RingPreset:
    """Cohomology preset for the self-product of a genus-g curve."""
    if g < 2:
        raise PreconditionError(f"surface preset needs g >= 2 (got g={g})")
    gens = (Generator("F1", 1), Generator("F2", 1), Generator("Delta", 1))
    pairings = (
        ((2, 0, 0), ZERO),
        ((1, 1, 0), as_scalar(1)),
        ((1, 0, 1), as_scalar(1)),
        ((0, 2, 0), ZERO),
        ((0, 1, 1), as_scalar(1)),
        ((0, 0, 2), as_scalar(2 - 2 * g)),
    )
    return RingPreset(
        label=f"surface(g={g})",
        kind=SURFACE,
        generators=gens,
        rules=(),
        top_degree=2,
        params=(("g", g),),
        pairings=pairings,
    )


def preset_universal_curve(g: int) -> RingPreset:
    """Preset for the universal curve: omega over the Hodge class lambda."""
    if g < 2:
        raise PreconditionError(f"universal-curve preset needs g >= 2 (got g={g})")
    gens = (Generator("omega", 1), Generator("lambda", 1))
    return RingPreset(
        label=f"universal-curve(g={g})",
        kind=UNIVERSAL_CURVE,
        generators=gens,
        rules=(),
        top_degree=None,
        params=(("g", g),),
    )


def surface_canonical_class(preset: RingPreset) -> RingElem:
    """Canonical class (2g-2)(F1 + F2) of the self-product surface."""
    if preset.kind != SURFACE:
        raise RingDomainError("canonical class is defined on the surface preset")
    g = preset.param("g")
    return (2 * g - 2) * (preset.gen("F1") + preset.gen("F2"))


# ---------------------------------------------------------------------------
# Integration functionals
# ---------------------------------------------------------------------------

def integrate(e: RingElem, preset: RingPreset | None = None) -> Fraction:
    """Evaluate the top-degree part of ``e`` against the preset's pairing.

    Jacobian preset: only the coefficient of eta*theta^g survives, scaled by
    the normalization g!.  Elements containing c_i or k are refused (they
    take the Brill-Noether evaluator).  Surface preset: degree-2 monomials
    evaluate through the pairing table.
    """
    if preset is not None and e.preset != preset:
        raise PresetMismatchError("element does not belong to the given preset")
    p = e.preset
    if p.kind == JACOBIAN:
        if any(any(m[3:]) for m, _ in e.terms):
            raise RingDomainError(
                "element contains tautological Chern classes or the kernel class;"
                " use the Brill-Noether evaluator (bn.evaluate_taut)"
            )
        g = p.param("g")
        target = [0] * len(p.generators)
        target[0] = 1   # eta
        target[2] = g   # theta^g
        return e.coefficient(tuple(target)) * math.factorial(g)
    if p.kind == SURFACE:
        table = dict(p.pairings)
        total = ZERO
        for m, c in e.terms:
            if p.monomial_degree(m) == 2:
                total += c * table[m]
        return total
    raise RingDomainError(
        "no integration rule on this preset; use pushforward_relative"
    )


def adjunction_genus(t: RingElem) -> int:
    """Arithmetic genus 1 + (t^2 + t.K)/2 of a degree-1 class on the surface."""
    if t.preset.kind != SURFACE:
        raise RingDomainError("adjunction is defined on the surface preset")
    if t.is_zero() or not t.is_homogeneous() or t.degree() != 1:
        raise RingDomainError("adjunction needs a nonzero degree-1 curve class")
    canonical = surface_canonical_class(t.preset)
    value = 1 + (integrate(t * t) + integrate(t * canonical)) / 2
    if value.denominator != 1:
        raise RingDomainError(
            f"non-integral adjunction genus {format_scalar(value)}: invalid curve class"
        )
    return int(value)


def pushforward_relative(e: RingElem, g: int) -> Fraction:
    """Push a fiber-degree-2 class down the universal curve.

    Rules: omega^2 -> 12*lambda, omega*lambda -> (2g-2)*lambda, and
    lambda^2 -> 0 (a pulled-back square has no fiber degree).  The returned
    rational is the lambda-coefficient of the push-forward.
    """
    p = e.preset
    if p.kind != UNIVERSAL_CURVE:
        raise RingDomainError("relative push-forward acts on the universal-curve preset")
    total = ZERO
    for (omega_exp, lambda_exp), coeff in e.terms:
        if omega_exp + lambda_exp != 2:
            raise RingDomainError(
                "relative push-forward needs fiber-degree 2; got a monomial of"
                f" degree {omega_exp + lambda_exp}"
            )
        if omega_exp == 2:
            total += 12 * coeff
        elif omega_exp == 1:
            total += (2 * g - 2) * coeff
        # lambda^2 pushes to zero
    return total


def geometric_series(x: RingElem) -> RingElem:
    """Sum_{j>=0} x^j; terminates because powers vanish by nilpotence."""
    if x.preset.top_degree is None:
        raise RingDomainError("geometric series needs a truncated preset")
    total = x.preset.one()
    power = x.preset.one()
    for _ in range(x.preset.top_degree + 2):
        power = power * x
        if power.is_zero():
            return total
        total = total + power
    raise RingDomainError("geometric series did not terminate: non-nilpotent argument")
