"""Independent oracles and the bundled self-test.

Two oracles live here, deliberately sharing no code with the production
pipeline beyond the polynomial substrate:

* the classical count of rational plane curves of degree d through 3d-1
  general points, via the standard quadratic recursion over binomial
  coefficients, cross-checking one full row of the invariant table;

* a brute-force series expander for the two cover potentials, which
  multiplies out truncated exponential factors and then filters monomials
  by the subscript constraints, term-for-term comparable with the
  optimized constructions.

run_selftest wires these and the golden reference tables into a single
machine-readable report list.  The reference integers are test fixtures,
never inputs to any computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Tuple

from . import chow
from .chow import ChowClass, DUAL, I_CLASS, LABELS, integrate, i_basis_class, mul_classes
from .poly import Poly, WEIGHT, add, monomial_degree_in, mul, scale, truncate_weight, var, zero
from .potentials import (
    DOUBLE_FIRST,
    GLUABLE,
    TRIPLE_W,
    TRIPLE_Y,
    build_double_cover_potential,
    build_gluing_matrix,
    build_triple_cover_potential,
)
from .recursion import (
    CacheError,
    INVARIANT_LABELS,
    InvariantTable,
    compute_up_to,
    extract_invariants,
    load_table,
    ratio_failures,
    seed_degree1,
)
from .contact import contact_coefficients

#: reference values of the thirteen invariants, degrees 1..6
TABLE1_REFERENCE: Dict[str, Tuple[int, ...]] = {
    "h2hd":    (1, 1, 10, 428, 51040, 13300176),
    "h2z":     (3, 3, 30, 1284, 153120, 39900528),
    "hd2z":    (-3, 0, 21, 1452, 216180, 64150200),
    "h2.h2":   (1, 1, 12, 620, 87304, 26312976),
    "h2.hd2":  (0, 2, 36, 2184, 335792, 106976160),
    "h2.hz":   (0, 6, 108, 6552, 1007376, 320928480),
    "h2.hdz":  (-3, 0, 54, 4872, 894528, 315755712),
    "hd2.hd2": (0, 4, 100, 7200, 1222192, 415085088),
    "hd2.hz":  (0, 12, 300, 21600, 3666576, 1245255264),
    "hd2.hdz": (0, 0, 150, 15912, 3223944, 1214002800),
    "hz.hz":   (0, 36, 900, 64800, 10999728, 3735765792),
    "hz.hdz":  (0, 0, 450, 47736, 9671832, 3642008400),
    "hdz.hdz": (9, 0, 63, 22860, 6556140, 2948122440),
}

#: reference triple-contact coefficient rows (c, cdual, kappa), degrees 1..6
TABLE2_REFERENCE: Dict[int, Tuple[int, int, int]] = {
    1: (-3, 3, 1),
    2: (0, 3, 1),
    3: (21, 30, 10),
    4: (1452, 1284, 428),
    5: (216180, 153120, 51040),
    6: (64150200, 39900528, 13300176),
}


@lru_cache(maxsize=None)
def kontsevich(d: int) -> int:
    """Rational plane curves of degree d through 3d-1 general points.

    Classical quadratic recursion, independent of the main pipeline.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if d == 1:
        return 1
    total = 0
    for d1 in range(1, d):
        d2 = d - d1
        total += kontsevich(d1) * kontsevich(d2) * (
            d1 * d1 * d2 * d2 * comb(3 * d - 4, 3 * d1 - 2)
            - d1 ** 3 * d2 * comb(3 * d - 4, 3 * d1 - 1)
        )
    return total


def _exp_factor(name: str, coeff: int, order: int) -> Poly:
    """exp(coeff * name) expanded through the given order."""
    out = zero()
    for n in range(order + 1):
        out = add(out, scale(var(name, n) if n else {(): Fraction(1)},
                             Fraction(coeff ** n, factorial(n))))
    return out


def _prune(p: Poly, gluing: Tuple[str, ...], budgets, cap: int) -> Poly:
    """Drop monomials that already exceed a monotone constraint bound."""
    out: Poly = {}
    for m, c in p.items():
        if monomial_degree_in(m, gluing) > 2:
            continue
        if any(sum(table.get(v, 0) * e for v, e in m) > limit
               for table, limit in budgets):
            continue
        if sum(WEIGHT[v] * e for v, e in m) > cap:
            continue
        out[m] = c
    return out


def expand_cover_series(kind: str, cap: int) -> Poly:
    """Brute-force expansion of a cover potential: multiply exponential
    series, then keep exactly the constrained terms.

    Must agree term-for-term with the optimized builders.
    """
    if cap < 0:
        raise ValueError("weight cap must be nonnegative")
    if kind == "double_cover":
        gluing = ("z010", "z110", "z210")
        factors = [("y020", 2), ("y210", 2), ("z010", 1), ("z110", 1), ("z210", 1)]
        first = dict(DOUBLE_FIRST)
        budgets = [(first, 2)]
        prefactor = Fraction(1, 2)

        def keep(m) -> bool:
            return (monomial_degree_in(m, gluing) == 2
                    and sum(first.get(v, 0) * e for v, e in m) == 2)
    elif kind == "triple_cover":
        gluing = tuple(sorted(TRIPLE_W))
        factors = [(y, 3) for y in sorted(TRIPLE_Y)] + [(w, 1) for w in gluing]
        first = {v: e[0] for v, e in {**TRIPLE_Y, **TRIPLE_W}.items()}
        second = {v: e[1] for v, e in {**TRIPLE_Y, **TRIPLE_W}.items()}
        budgets = [(first, 2), (second, 2)]
        prefactor = Fraction(1, 3)

        def keep(m) -> bool:
            sums = (sum(first[v] * e for v, e in m),
                    sum(second[v] * e for v, e in m))
            return monomial_degree_in(m, gluing) == 2 and sums in ((2, 1), (1, 2))
    else:
        raise ValueError(f"unknown cover kind {kind!r}")

    series: Poly = {(): prefactor}
    for name, coeff in factors:
        series = _prune(mul(series, _exp_factor(name, coeff, 4)), gluing, budgets, cap)
    return {m: c for m, c in series.items() if keep(m)}


@dataclass(frozen=True)
class OracleReport:
    """One self-test outcome with both sides of any disagreement."""

    name: str
    passed: bool
    expected: str
    actual: str
    degrees: str

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "expected": self.expected,
            "actual": self.actual,
            "degrees": self.degrees,
        }


def _report(name: str, mismatches: List[str], degrees: str,
            expected: str = "no mismatches") -> OracleReport:
    if mismatches:
        return OracleReport(name, False, expected,
                            "; ".join(mismatches[:8]), degrees)
    return OracleReport(name, True, expected, "no mismatches", degrees)


def _check_pairing() -> OracleReport:
    bad = []
    for k in LABELS:
        for l in LABELS:
            value = integrate(mul_classes(ChowClass.basis(k), i_basis_class(l)))
            expect = Fraction(1 if l == DUAL[k] else 0)
            if value != expect:
                bad.append(f"pair({k},{l})={value} expected {expect}")
    return _report("dual-pairing-matrix", bad, "-", "144 Kronecker pairings")


def _check_relations() -> OracleReport:
    bad = []
    lhs = mul_classes(I_CLASS, I_CLASS)
    rhs = mul_classes((chow.H - chow.HD).scaled(3), I_CLASS)
    if lhs != rhs:
        bad.append("i^2 != 3(h-hd)i")
    if not mul_classes(I_CLASS, chow.Z).is_zero():
        bad.append("i*z != 0")
    return _report("ring-relations", bad, "-", "i^2 = 3(h-hd)i and i*z = 0")


def _check_seed() -> OracleReport:
    values = extract_invariants(seed_degree1())
    bad = [f"{lbl}: {values[lbl]} expected {TABLE1_REFERENCE[lbl][0]}"
           for lbl in INVARIANT_LABELS if values[lbl] != TABLE1_REFERENCE[lbl][0]]
    return _report("degree1-seed", bad, "1", "the 13 printed degree-1 values")


def _check_table1(table: InvariantTable, dmax: int) -> OracleReport:
    top = min(dmax, 6)
    bad = []
    for d in range(1, top + 1):
        for lbl in INVARIANT_LABELS:
            got = table.get(d, lbl)
            want = TABLE1_REFERENCE[lbl][d - 1]
            if got != want:
                bad.append(f"{lbl}(d={d})={got} expected {want}")
    return _report("invariant-table", bad, f"1..{top}",
                   f"{13 * top} reference integers")


def _check_ratios(table: InvariantTable, dmax: int) -> OracleReport:
    bad = []
    for d in range(1, dmax + 1):
        for failure in ratio_failures(table.column(d)):
            bad.append(f"d={d}: {failure}")
    return _report("ratio-identities", bad, f"1..{dmax}",
                   "five 3:1 row identities per degree")


def _check_kontsevich(table: InvariantTable, dmax: int) -> OracleReport:
    bad = []
    for d in range(1, dmax + 1):
        got = table.get(d, "h2.h2")
        want = kontsevich(d)
        if got != want:
            bad.append(f"d={d}: {got} expected {want}")
    return _report("kontsevich-oracle", bad, f"1..{dmax}",
                   "point-condition row equals the classical recursion")


def _check_table2(table: InvariantTable, dmax: int) -> OracleReport:
    top = min(dmax, 6)
    bad = []
    for d in range(1, top + 1):
        got = contact_coefficients(d, table)
        want = TABLE2_REFERENCE[d]
        if got != want:
            bad.append(f"d={d}: {got} expected {want}")
    return _report("contact-coefficients", bad, f"1..{top}",
                   "reference coefficient rows")


def _check_cap_independence() -> OracleReport:
    m2 = build_gluing_matrix(2)
    m3 = build_gluing_matrix(3)
    bad = []
    for s in GLUABLE:
        for t in GLUABLE:
            a = truncate_weight(m2.entry(s, t), 2)
            b = truncate_weight(m3.entry(s, t), 2)
            if a != b:
                bad.append(f"entry({s},{t}) differs at weight <= 2")
    return _report("gluing-cap-independence", bad, "-",
                   "caps 2 and 3 agree at weight <= 2")


def _check_cache(cache_path: str) -> OracleReport:
    try:
        load_table(cache_path)
    except CacheError as exc:
        return OracleReport("cache-validation", False, "a valid cache file",
                            str(exc), "-")
    return OracleReport("cache-validation", True, "a valid cache file",
                        "cache loads and validates", "-")


def run_selftest(dmax: int, cache_path: str | None = None) -> List[OracleReport]:
    """Run every oracle and property check up to the given degree."""
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    table = compute_up_to(dmax)
    reports = [
        _check_pairing(),
        _check_relations(),
        _check_seed(),
        _check_table1(table, dmax),
        _check_ratios(table, dmax),
        _check_kontsevich(table, dmax),
        _check_table2(table, dmax),
        _check_cap_independence(),
    ]
    if cache_path is not None:
        reports.append(_check_cache(cache_path))
    return reports


def builders_match_series(cap: int) -> bool:
    """Term-for-term equality of both builders with the brute-force expander."""
    return (build_double_cover_potential(cap).body
            == expand_cover_series("double_cover", cap)
            and build_triple_cover_potential(cap).body
            == expand_cover_series("triple_cover", cap))
