"""Exact sparse multivariate polynomial arithmetic with a weight grading.

A polynomial is a dictionary mapping monomials to rational coefficients
(fractions.Fraction).  A monomial is a tuple of (variable, exponent) pairs,
sorted by a fixed variable order, with all exponents positive:

    Poly     = Dict[Monomial, Fraction]
    Monomial = Tuple[Tuple[str, int], ...]

The zero polynomial is the empty dict; the empty monomial () is the
constant term.  Zero coefficients are never stored, so equality of
polynomials is plain dict equality.  No floating point enters anywhere.

The variable alphabet is fixed.  Eight "reduced" variables carry the
weight grading used throughout the generating-function computations
(weight = codimension of the corresponding intersection class minus one);
the z- and w-variables are bookkeeping slots for gluing insertions and
carry weight zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Mapping, Tuple

Monomial = Tuple[Tuple[str, int], ...]
Poly = Dict[Monomial, Fraction]

REDUCED_VARS = ("y200", "y020", "y210", "y101", "y201", "y011", "y021", "y211")
GLUING_Z_VARS = ("z010", "z110", "z210")
GLUING_W_VARS = ("w001", "w101", "w201", "w011", "w021", "w211")

VAR_ORDER: Tuple[str, ...] = REDUCED_VARS + GLUING_Z_VARS + GLUING_W_VARS
_VAR_INDEX = {v: i for i, v in enumerate(VAR_ORDER)}

# weight(y_k) = |k| - 1 where |k| is the digit sum of the subscript;
# gluing variables are eliminated by differentiation and weigh nothing.
WEIGHT: Dict[str, int] = {v: sum(int(c) for c in v[1:]) - 1 for v in REDUCED_VARS}
WEIGHT.update({v: 0 for v in GLUING_Z_VARS + GLUING_W_VARS})


class PolyError(ValueError):
    """Raised for malformed polynomial inputs."""


def _check_var(name: str) -> str:
    if name not in _VAR_INDEX:
        raise PolyError(f"unknown variable {name!r}")
    return name


def monomial(exps: Mapping[str, int]) -> Monomial:
    """Canonical monomial from a variable -> exponent mapping."""
    items = []
    for name, e in exps.items():
        _check_var(name)
        if e < 0:
            raise PolyError(f"negative exponent for {name}")
        if e > 0:
            items.append((name, e))
    items.sort(key=lambda it: _VAR_INDEX[it[0]])
    return tuple(items)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    merged = dict(a)
    for name, e in b:
        merged[name] = merged.get(name, 0) + e
    return tuple(sorted(merged.items(), key=lambda it: _VAR_INDEX[it[0]]))


def monomial_weight(m: Monomial) -> int:
    return sum(WEIGHT[name] * e for name, e in m)


def monomial_degree_in(m: Monomial, names: Iterable[str]) -> int:
    wanted = set(names)
    return sum(e for name, e in m if name in wanted)


def monomial_factorial(m: Monomial) -> int:
    """Product of the factorials of the exponents (the a! of a monomial y^a)."""
    out = 1
    for _, e in m:
        out *= factorial(e)
    return out


def zero() -> Poly:
    return {}


def const(value: int | Fraction) -> Poly:
    c = Fraction(value)
    return {(): c} if c else {}


def term(exps: Mapping[str, int], value: int | Fraction) -> Poly:
    c = Fraction(value)
    return {monomial(exps): c} if c else {}


def var(name: str, power: int = 1) -> Poly:
    return term({_check_var(name): power}, 1)


def add(a: Poly, b: Poly) -> Poly:
    out: Poly = dict(a)
    for m, c in b.items():
        s = out.get(m, Fraction(0)) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def neg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def scale(a: Poly, value: int | Fraction) -> Poly:
    c = Fraction(value)
    if not c:
        return {}
    return {m: k * c for m, k in a.items()}


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = monomial_mul(ma, mb)
            s = out.get(m, Fraction(0)) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def add_scaled(acc: Poly, p: Poly, value: int | Fraction) -> None:
    """In-place acc += value * p (the one mutating helper, for hot loops)."""
    c = Fraction(value)
    if not c:
        return
    for m, k in p.items():
        s = acc.get(m, Fraction(0)) + k * c
        if s:
            acc[m] = s
        else:
            acc.pop(m, None)


def partial(p: Poly, name: str, order: int = 1) -> Poly:
    """Formal partial derivative, applied `order` times."""
    _check_var(name)
    if order < 0:
        raise PolyError("derivative order must be nonnegative")
    if order == 0:
        return dict(p)
    out: Poly = {}
    for m, c in p.items():
        exps = dict(m)
        e = exps.get(name, 0)
        if e < order:
            continue
        fall = 1
        for i in range(order):
            fall *= e - i
        if e == order:
            exps.pop(name)
        else:
            exps[name] = e - order
        key = tuple(sorted(exps.items(), key=lambda it: _VAR_INDEX[it[0]]))
        s = out.get(key, Fraction(0)) + c * fall
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def coefficient(p: Poly, m: Monomial) -> Fraction:
    return p.get(m, Fraction(0))


def truncate_weight(p: Poly, cap: int) -> Poly:
    """Drop every monomial of weight strictly greater than cap."""
    if cap < 0:
        raise PolyError("weight cap must be nonnegative")
    return {m: c for m, c in p.items() if monomial_weight(m) <= cap}


def weight_part(p: Poly, w: int) -> Poly:
    """The weight-homogeneous component of weight w."""
    return {m: c for m, c in p.items() if monomial_weight(m) == w}


def homogeneous_weight(p: Poly) -> int | None:
    """Weight of a weight-homogeneous polynomial; None for the zero poly.

    Raises PolyError on a non-homogeneous input.
    """
    w: int | None = None
    for m in p:
        mw = monomial_weight(m)
        if w is None:
            w = mw
        elif w != mw:
            raise PolyError("polynomial is not weight-homogeneous")
    return w


def variables(p: Poly) -> set:
    names = set()
    for m in p:
        for name, _ in m:
            names.add(name)
    return names


def exp_truncated(p: Poly, cap: int) -> Poly:
    """exp(p) expanded as a series and truncated at weight cap.

    Every variable occurring in p must have positive weight, otherwise the
    expansion would not terminate under a weight cap.
    """
    for name in variables(p):
        if WEIGHT[name] <= 0:
            raise PolyError(f"exp of weight-0 variable {name} does not truncate")
    result = const(1)
    power = const(1)
    n = 0
    while True:
        n += 1
        power = truncate_weight(mul(power, p), cap)
        if not power:
            break
        result = add(result, scale(power, Fraction(1, factorial(n))))
    return result


def _mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)


def sorted_terms(p: Poly) -> list[tuple[Monomial, Fraction]]:
    """Terms in the canonical order used for all serialization."""

    def key(item: tuple[Monomial, Fraction]):
        dense = [0] * len(VAR_ORDER)
        for name, e in item[0]:
            dense[_VAR_INDEX[name]] = e
        return tuple(-x for x in dense)

    return sorted(p.items(), key=key)


def poly_str(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for m, c in sorted_terms(p):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        body = _mono_str(m) if mag == 1 and m else (
            f"{mag}" if not m else f"{mag}*{_mono_str(m)}")
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
