"""Degree-by-degree recursion for the thirteen second-order invariants.

For each degree d the generating polynomial of invariants specified by at
least 3d-3 point conditions (the "tail" of the degree-d potential) is
weight-homogeneous of weight 3d-1 with y200-exponent at least 3d-3: it
holds exactly thirteen coefficients.  Degree 1 is the closed-form seed;
every higher degree follows from the quadratic identity

    (3d-3 fold y200-derivative of the degree-d potential)
      = 18 * sum over splits d1+d2=d, gluing indices s,t, and
        distributions of the 3d-6 extra y200-derivatives of
        { d1*d2 * D_s(tail_d1') T(s,t) D_t(tail_d2')
          - d1^2 * D_s(tail_d1) T(s,t) D_t(tail_d2'') }

where T is the gluing matrix, ' marks y200-derivatives as dictated by the
product rule, and D_s is the derivative in the reduced variable y_s or,
for a divisor index, multiplication by the pairing of that divisor with
the lifted curve class (d for h, 2d-2 for hd, 3d-6 for z, 0 for the
identity).  The divisor exponentials of the two factors cancel exactly
against the matrix prefactor; the identity below asserts that per split.

Only tails are ever stored.  A term whose derivative order dips below a
stored tail's y200-range is always paired with a factor that vanishes
identically (the partner's order exceeds its maximal y200-exponent); the
code asserts this instead of silently reading truncated data.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Dict, Tuple

from .poly import (
    Poly,
    add_scaled,
    coefficient,
    homogeneous_weight,
    monomial,
    monomial_weight,
    mul,
    partial,
    scale,
    term,
    zero,
)
from .potentials import GLUABLE, GluingMatrix, build_gluing_matrix

#: the thirteen labels in printed-table row order
INVARIANT_LABELS: Tuple[str, ...] = (
    "h2hd", "h2z", "hd2z",
    "h2.h2", "h2.hd2", "h2.hz", "h2.hdz",
    "hd2.hd2", "hd2.hz", "hd2.hdz",
    "hz.hz", "hz.hdz", "hdz.hdz",
)

#: residual monomial (after stripping the 3d-3 forced point conditions)
LABEL_MONOMIAL: Dict[str, Dict[str, int]] = {
    "h2hd": {"y210": 1},
    "h2z": {"y201": 1},
    "hd2z": {"y021": 1},
    "h2.h2": {"y200": 2},
    "h2.hd2": {"y200": 1, "y020": 1},
    "h2.hz": {"y200": 1, "y101": 1},
    "h2.hdz": {"y200": 1, "y011": 1},
    "hd2.hd2": {"y020": 2},
    "hd2.hz": {"y020": 1, "y101": 1},
    "hd2.hdz": {"y020": 1, "y011": 1},
    "hz.hz": {"y101": 2},
    "hz.hdz": {"y101": 1, "y011": 1},
    "hdz.hdz": {"y011": 2},
}

# b! of each residual monomial
_B_FACTORIAL = {
    label: prod(factorial(e) for e in exps.values())
    for label, exps in LABEL_MONOMIAL.items()
}

#: identities between rows: first label is exactly three times the second
RATIO_IDENTITIES: Tuple[Tuple[str, str], ...] = (
    ("h2z", "h2hd"),
    ("h2.hz", "h2.hd2"),
    ("hd2.hz", "hd2.hd2"),
    ("hz.hz", "hd2.hz"),
    ("hz.hdz", "hd2.hdz"),
)

#: divisor insertion multipliers by basis index, as functions of the degree
DIVISOR_RULE = {
    "000": lambda d: 0,
    "100": lambda d: d,
    "010": lambda d: 2 * d - 2,
    "001": lambda d: 3 * d - 6,
}

#: indices that can meet a nonzero gluing-matrix row, identity excluded
_ACTIVE = tuple(k for k in GLUABLE if k != "000")


class CacheError(ValueError):
    """Raised when a persisted invariant table fails validation."""


@dataclass(frozen=True)
class TailPolynomial:
    """The stored part of the degree-d potential: thirteen coefficients."""

    degree: int
    poly: Poly

    def __post_init__(self):
        d = self.degree
        if d < 1:
            raise ValueError("degree must be positive")
        if len(self.poly) > 13:
            raise AssertionError("a tail has at most thirteen terms")
        for m in self.poly:
            exps = dict(m)
            if exps.get("y200", 0) < 3 * d - 3:
                raise AssertionError(f"tail term {m} has fewer than {3*d-3} point slots")
            if monomial_weight(m) != 3 * d - 1:
                raise AssertionError(f"tail term {m} has weight != {3*d-1}")


def seed_degree1() -> TailPolynomial:
    """The closed-form degree-1 generating polynomial (the whole tail)."""
    p = zero()
    for exps, c in (
        ({"y210": 1}, Fraction(1)),
        ({"y201": 1}, Fraction(3)),
        ({"y021": 1}, Fraction(-3)),
        ({"y200": 2}, Fraction(1, 2)),
        ({"y200": 1, "y011": 1}, Fraction(-3)),
        ({"y011": 2}, Fraction(9, 2)),
    ):
        add_scaled(p, term(exps, 1), c)
    return TailPolynomial(1, p)


def _insert(label: str, degree: int, p: Poly) -> Poly:
    """Apply the index-s insertion to a divisor-free polynomial."""
    if label in DIVISOR_RULE:
        return scale(p, DIVISOR_RULE[label](degree))
    return partial(p, "y" + label)


def recursion_rhs(d: int, tails: Dict[int, TailPolynomial],
                  matrix: GluingMatrix) -> Poly:
    """The weight-2 polynomial whose coefficients carry the degree-d invariants.

    Requires tails for every degree below d and a gluing matrix built with
    cap >= 2.  The result equals the (3d-3)-fold y200-derivative of the
    degree-d potential.
    """
    if d < 2:
        raise ValueError("the recursion starts at degree 2")
    if matrix.cap < 2:
        raise ValueError("gluing matrix cap too small for weight-2 extraction")
    for dd in range(1, d):
        if dd not in tails:
            raise ValueError(f"missing tail for degree {dd}")

    # weight slices of the matrix entries, fetched by needed weight
    slices: Dict[Tuple[str, str, int], Poly] = {}
    for (s, t), p in matrix.entries.items():
        for m, c in p.items():
            w = monomial_weight(m)
            slices.setdefault((s, t, w), {})[m] = c

    der_cache: Dict[Tuple[int, int], Poly] = {}

    def dpow(dd: int, order: int) -> Poly:
        key = (dd, order)
        if key not in der_cache:
            der_cache[key] = partial(tails[dd].poly, "y200", order)
        return der_cache[key]

    ins_cache: Dict[Tuple[str, int, int], Poly] = {}

    def inserted(label: str, deg: int, order: int) -> Poly:
        key = (label, deg, order)
        if key not in ins_cache:
            ins_cache[key] = _insert(label, deg, dpow(deg, order))
        return ins_cache[key]

    acc: Poly = zero()

    def accumulate(scalar: int, d1: int, o1: int, d2: int, o2: int) -> None:
        left = dpow(d1, o1)
        right = dpow(d2, o2)
        # a read below the stored tail range must come with a vanishing partner
        if o1 < 3 * d1 - 3 and right:
            raise AssertionError(
                f"recursion would read outside the degree-{d1} tail (order {o1})")
        if o2 < 3 * d2 - 3 and left:
            raise AssertionError(
                f"recursion would read outside the degree-{d2} tail (order {o2})")
        if not left or not right:
            return
        for s in _ACTIVE:
            f = inserted(s, d1, o1)
            if not f:
                continue
            wf = homogeneous_weight(f)
            for t in _ACTIVE:
                g = inserted(t, d2, o2)
                if not g:
                    continue
                needed = 2 - wf - homogeneous_weight(g)
                if needed < 0:
                    continue
                entry = slices.get((s, t, needed))
                if entry:
                    add_scaled(acc, mul(mul(f, entry), g), scalar)

    m = 3 * d - 6
    for d1 in range(1, d):
        d2 = d - d1
        # divisor-exponential cancellation against the matrix prefactor
        assert d1 + d2 == d
        assert (2 * d1 - 2) + (2 * d2 - 2) + matrix.y010_exponent == 2 * d - 2
        assert (3 * d1 - 6) + (3 * d2 - 6) + matrix.y001_exponent == 3 * d - 6
        for a1 in range(m + 1):
            a2 = m - a1
            c = 18 * comb(m, a1)
            accumulate(c * d1 * d2, d1, a1 + 1, d2, a2 + 1)
            accumulate(-c * d1 * d1, d1, a1, d2, a2 + 2)
    return acc


def tail_from_weight2(d: int, w2: Poly) -> TailPolynomial:
    """Reattach the 3d-3 forced point slots to a weight-2 derivative polynomial."""
    shift = 3 * d - 3
    p: Poly = {}
    for m, c in w2.items():
        exps = dict(m)
        b200 = exps.get("y200", 0)
        exps["y200"] = b200 + shift
        p[monomial(exps)] = c * Fraction(factorial(b200), factorial(b200 + shift))
    return TailPolynomial(d, p)


def extract_invariants(tail: TailPolynomial) -> Dict[str, int]:
    """The thirteen labeled integers of a tail, via b! times a coefficient."""
    d = tail.degree
    w2 = partial(tail.poly, "y200", 3 * d - 3)
    known = {monomial(LABEL_MONOMIAL[lbl]): lbl for lbl in INVARIANT_LABELS}
    stray = set(w2) - set(known)
    if stray:
        raise ArithmeticError(f"degree-{d} tail has terms outside the 13 labels: {stray}")
    out: Dict[str, int] = {}
    for label in INVARIANT_LABELS:
        value = coefficient(w2, monomial(LABEL_MONOMIAL[label])) * _B_FACTORIAL[label]
        if value.denominator != 1:
            raise ArithmeticError(
                f"invariant {label} at degree {d} is not an integer: {value}")
        out[label] = int(value)
    return out


def tail_from_invariants(d: int, values: Dict[str, int]) -> TailPolynomial:
    """Rebuild a tail from its thirteen labeled integers (cache resume)."""
    p: Poly = {}
    shift = 3 * d - 3
    for label in INVARIANT_LABELS:
        n = values[label]
        if not n:
            continue
        exps = dict(LABEL_MONOMIAL[label])
        exps["y200"] = exps.get("y200", 0) + shift
        m = monomial(exps)
        fact = 1
        for e in dict(m).values():
            fact *= factorial(e)
        p[m] = Fraction(n, fact)
    return TailPolynomial(d, p)


@dataclass(frozen=True)
class InvariantTable:
    """Per-degree store of the thirteen invariants, exact integers."""

    values: Dict[int, Dict[str, int]]

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(self.values))

    def get(self, d: int, label: str) -> int:
        if d not in self.values:
            raise KeyError(f"degree {d} not computed")
        return self.values[d][label]

    def column(self, d: int) -> Dict[str, int]:
        if d not in self.values:
            raise KeyError(f"degree {d} not computed")
        return dict(self.values[d])


def ratio_failures(column: Dict[str, int]) -> list:
    """Violations of the five three-to-one row identities, empty if none."""
    bad = []
    for big, small in RATIO_IDENTITIES:
        if column[big] != 3 * column[small]:
            bad.append(f"{big} != 3*{small} ({column[big]} vs 3*{column[small]})")
    return bad


def validate_table(values: Dict[int, Dict[str, int]]) -> None:
    seed_values = extract_invariants(seed_degree1())
    for d, column in values.items():
        if set(column) != set(INVARIANT_LABELS):
            raise CacheError(f"degree {d} does not carry exactly the 13 labels")
        if d == 1 and column != seed_values:
            raise CacheError("cached degree-1 column disagrees with the seed")
        bad = ratio_failures(column)
        if bad:
            raise CacheError(f"degree {d} fails ratio identities: {'; '.join(bad)}")


def table_to_json(table: InvariantTable) -> str:
    data = {str(d): {lbl: str(table.values[d][lbl]) for lbl in INVARIANT_LABELS}
            for d in table.degrees()}
    return json.dumps(data, indent=2)


def table_from_json(text: str) -> InvariantTable:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CacheError(f"cache is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise CacheError("cache must be a JSON object keyed by degree")
    values: Dict[int, Dict[str, int]] = {}
    for key, column in raw.items():
        try:
            d = int(key)
        except ValueError as exc:
            raise CacheError(f"bad degree key {key!r}") from exc
        if d < 1 or not isinstance(column, dict):
            raise CacheError(f"bad entry for degree {key!r}")
        parsed = {}
        for label, text_value in column.items():
            if label not in INVARIANT_LABELS:
                raise CacheError(f"unknown invariant label {label!r}")
            try:
                parsed[label] = int(text_value)
            except (TypeError, ValueError) as exc:
                raise CacheError(f"bad integer for {label} at degree {d}") from exc
        values[d] = parsed
    validate_table(values)
    return InvariantTable(values)


def load_table(path: str) -> InvariantTable:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise CacheError(f"cannot read cache {path}: {exc}") from exc
    return table_from_json(text)


def save_table(table: InvariantTable, path: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(table_to_json(table) + "\n")
    os.replace(tmp, path)


def compute_up_to(dmax: int, cache_path: str | None = None,
                  matrix: GluingMatrix | None = None) -> InvariantTable:
    """Invariants for degrees 1..dmax, resuming from a cache when given."""
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    known: Dict[int, Dict[str, int]] = {}
    if cache_path and os.path.exists(cache_path):
        known = dict(load_table(cache_path).values)

    tails: Dict[int, TailPolynomial] = {1: seed_degree1()}
    values: Dict[int, Dict[str, int]] = {1: extract_invariants(tails[1])}
    for d in range(2, dmax + 1):
        if d in known:
            values[d] = dict(known[d])
            tails[d] = tail_from_invariants(d, known[d])
            continue
        if matrix is None:
            matrix = build_gluing_matrix(2)
        tails[d] = tail_from_weight2(d, recursion_rhs(d, tails, matrix))
        values[d] = extract_invariants(tails[d])

    if cache_path:
        merged = dict(known)
        merged.update({d: dict(col) for d, col in values.items()})
        save_table(InvariantTable(merged), cache_path)
    return InvariantTable(values)
