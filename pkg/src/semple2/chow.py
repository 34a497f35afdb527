"""The intersection ring of the space of second-order curvilinear plane data.

The space is a 4-fold fibered over the incidence variety of points and
lines.  Its rational intersection ring is generated by the two hyperplane
classes h (points) and hd (lines, "h-dual") together with the class i of
the divisor at infinity, subject to

    h^3 = hd^3 = 0,   h*hd = h^2 + hd^2,   i^2 = 3*(h - hd)*i,

and the second infinity divisor z satisfies i - z = 3*(h - hd), i*z = 0.

Everything here is expressed in the 12-element "z-basis"

    1, h, h^2, hd, hd^2, h^2*hd, z, h*z, h^2*z, hd*z, hd^2*z, h^2*hd*z

whose elements are labeled by exponent triples (a,b,c) written as strings
"abc" (e.g. "210" is h^2*hd).  The dual "i-basis" replaces the z-factor
classes by i-factor classes.  The two bases pair to the identity matrix
under the integral normalized so that the top class h^2*hd*z has integral 1
(the unique normalization making the printed bases dual).

The class i is never a stored coordinate: it is always expanded through
i = z + 3*(h - hd), so each ring element has one canonical representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

#: z-basis labels in canonical order (codimension 0,1,1,1,2,2,2,2,3,3,3,4
#: after sorting by degree; the order below mirrors the printed table).
LABELS: Tuple[str, ...] = (
    "000", "100", "200", "010", "020", "210",
    "001", "101", "201", "011", "021", "211",
)
_LABEL_INDEX = {k: i for i, k in enumerate(LABELS)}

#: i-basis order as printed: top class first, fundamental class last.
I_BASIS_ORDER: Tuple[str, ...] = (
    "211", "021", "011", "201", "101", "001",
    "210", "020", "010", "200", "100", "000",
)

Z_BASIS_SYMBOL: Dict[str, str] = {
    "000": "1", "100": "h", "200": "h^2", "010": "hd", "020": "hd^2",
    "210": "h^2*hd", "001": "z", "101": "h*z", "201": "h^2*z",
    "011": "hd*z", "021": "hd^2*z", "211": "h^2*hd*z",
}
I_BASIS_SYMBOL: Dict[str, str] = {
    "211": "h^2*hd*i", "021": "hd^2*i", "011": "hd*i", "201": "h^2*i",
    "101": "h*i", "001": "i", "210": "h^2*hd", "020": "hd^2",
    "010": "hd", "200": "h^2", "100": "h", "000": "1",
}


def codim(label: str) -> int:
    return sum(int(c) for c in label)


def format_coords(coords, order, symbols) -> str:
    """Symbolic form of a coordinate vector over a given ordered basis."""
    parts = []
    for label, c in zip(order, coords):
        if not c:
            continue
        mag = abs(c)
        if label == "000":
            body = str(mag)
        elif mag == 1:
            body = symbols[label]
        else:
            body = f"{mag}*{symbols[label]}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


@lru_cache(maxsize=None)
def _reduce_monomial(a: int, b: int, c: int) -> Tuple[Tuple[str, int], ...]:
    """Normal form of h^a * hd^b * z^c as integer combination of z-basis labels.

    Rewrites: z^2 -> 3*hd*z - 3*h*z, then h*hd -> h^2 + hd^2 on the residual
    mixed powers, with h^3 = hd^3 = 0.
    """
    if c >= 2:
        out: Dict[str, int] = {}
        for lbl, k in _reduce_monomial(a, b + 1, c - 1):
            out[lbl] = out.get(lbl, 0) + 3 * k
        for lbl, k in _reduce_monomial(a + 1, b, c - 1):
            out[lbl] = out.get(lbl, 0) - 3 * k
        return tuple(sorted((l, k) for l, k in out.items() if k))
    if a >= 3 or b >= 3:
        return ()
    if (a, b) == (1, 1):
        out = {}
        for lbl, k in _reduce_monomial(2, 0, c) + _reduce_monomial(0, 2, c):
            out[lbl] = out.get(lbl, 0) + k
        return tuple(sorted((l, k) for l, k in out.items() if k))
    if (a, b) == (1, 2):
        return _reduce_monomial(2, 1, c)
    if (a, b) == (2, 2):
        return ()
    label = f"{a}{b}{c}"
    if label not in _LABEL_INDEX:
        raise AssertionError(f"reduction reached illegal monomial h^{a} hd^{b} z^{c}")
    return ((label, 1),)


def _build_mult_table() -> Dict[Tuple[str, str], Tuple[Fraction, ...]]:
    table = {}
    for k1 in LABELS:
        for k2 in LABELS:
            coords = [Fraction(0)] * 12
            a = int(k1[0]) + int(k2[0])
            b = int(k1[1]) + int(k2[1])
            c = int(k1[2]) + int(k2[2])
            for lbl, coeff in _reduce_monomial(a, b, c):
                coords[_LABEL_INDEX[lbl]] += coeff
            table[(k1, k2)] = tuple(coords)
    return table


_MULT = _build_mult_table()


@dataclass(frozen=True)
class ChowClass:
    """A ring element as 12 exact rational coordinates in the z-basis."""

    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != 12:
            raise ValueError("a class has exactly 12 coordinates")

    @staticmethod
    def zero() -> "ChowClass":
        return ChowClass(tuple(Fraction(0) for _ in range(12)))

    @staticmethod
    def basis(label: str) -> "ChowClass":
        if label not in _LABEL_INDEX:
            raise ValueError(f"unknown basis label {label!r}")
        return ChowClass(tuple(
            Fraction(1 if i == _LABEL_INDEX[label] else 0) for i in range(12)))

    @staticmethod
    def from_dict(values: Dict[str, int | Fraction]) -> "ChowClass":
        coords = [Fraction(0)] * 12
        for label, v in values.items():
            coords[_LABEL_INDEX[label]] = Fraction(v)
        return ChowClass(tuple(coords))

    def coordinate(self, label: str) -> Fraction:
        return self.coords[_LABEL_INDEX[label]]

    def __add__(self, other: "ChowClass") -> "ChowClass":
        return ChowClass(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        return ChowClass(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "ChowClass":
        return ChowClass(tuple(-x for x in self.coords))

    def scaled(self, value: int | Fraction) -> "ChowClass":
        c = Fraction(value)
        return ChowClass(tuple(x * c for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, ChowClass):
            return mul_classes(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def graded_part(self, q: int) -> "ChowClass":
        return ChowClass(tuple(
            x if codim(LABELS[i]) == q else Fraction(0)
            for i, x in enumerate(self.coords)))

    def __str__(self) -> str:
        return format_coords(self.coords, LABELS, Z_BASIS_SYMBOL)


H = ChowClass.basis("100")
HD = ChowClass.basis("010")
Z = ChowClass.basis("001")
ONE = ChowClass.basis("000")
#: the divisor at infinity, expanded through i = z + 3(h - hd)
I_CLASS = Z + H.scaled(3) - HD.scaled(3)


def mul_classes(a: ChowClass, b: ChowClass) -> ChowClass:
    coords = [Fraction(0)] * 12
    for i1, c1 in enumerate(a.coords):
        if not c1:
            continue
        for i2, c2 in enumerate(b.coords):
            if not c2:
                continue
            prod = _MULT[(LABELS[i1], LABELS[i2])]
            f = c1 * c2
            for j, k in enumerate(prod):
                if k:
                    coords[j] += f * k
    return ChowClass(tuple(coords))


def integrate(a: ChowClass) -> Fraction:
    """Integral over the 4-fold: the coordinate of the top class h^2*hd*z."""
    return a.coordinate("211")


def triple_product(a: ChowClass, b: ChowClass, c: ChowClass) -> Fraction:
    return integrate(mul_classes(mul_classes(a, b), c))


def i_basis_class(label: str) -> ChowClass:
    """The i-basis element with the given label, as a z-basis class."""
    if label not in _LABEL_INDEX:
        raise ValueError(f"unknown basis label {label!r}")
    a, b, c = (int(ch) for ch in label)
    base = ChowClass.basis(f"{a}{b}0")
    return mul_classes(base, I_CLASS) if c else base


def _dual_table() -> Dict[str, str]:
    duals = {}
    for k in LABELS:
        matches = []
        for total in ((2, 1, 1), (1, 2, 1)):
            cand = tuple(t - int(ch) for t, ch in zip(total, k))
            lbl = "".join(str(x) for x in cand)
            if all(x >= 0 for x in cand) and lbl in _LABEL_INDEX:
                matches.append(lbl)
        matches = sorted(set(matches))
        if len(matches) != 1:
            raise AssertionError(f"dual of {k} is not unique: {matches}")
        duals[k] = matches[0]
    return duals


DUAL: Dict[str, str] = _dual_table()


def dual_index(k: str) -> str:
    """The unique legal label k* with k + k* = 211 or 121."""
    if k not in DUAL:
        raise ValueError(f"unknown basis label {k!r}")
    return DUAL[k]


def _invert(cols: list) -> list:
    """Invert a 12x12 matrix given column-wise, by exact Gaussian elimination."""
    n = len(cols)
    aug = [[cols[j][i] for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


_I_COLS = [list(i_basis_class(lbl).coords) for lbl in I_BASIS_ORDER]
_I_INV = _invert(_I_COLS)


def to_i_basis(a: ChowClass) -> Tuple[Fraction, ...]:
    """Coordinates in the i-basis, ordered as I_BASIS_ORDER."""
    return tuple(
        sum(_I_INV[r][c] * a.coords[c] for c in range(12)) for r in range(12))


def from_i_basis(coords: Tuple[Fraction, ...]) -> ChowClass:
    if len(coords) != 12:
        raise ValueError("expected 12 i-basis coordinates")
    out = ChowClass.zero()
    for lbl, c in zip(I_BASIS_ORDER, coords):
        if c:
            out = out + i_basis_class(lbl).scaled(c)
    return out


def divisor_pairing(d: int, divisor: ChowClass) -> Fraction:
    """Pairing of a codimension-1 class with the class of a lifted degree-d curve.

    Linear in the divisor, with h -> d, hd -> 2d-2, z -> 3d-6 (hence i -> 0:
    the lift of an immersion misses the divisor at infinity).
    """
    if d < 1:
        raise ValueError("degree must be positive")
    for label in LABELS:
        if codim(label) != 1 and divisor.coordinate(label):
            raise ValueError("divisor_pairing needs a pure codimension-1 class")
    return (divisor.coordinate("100") * d
            + divisor.coordinate("010") * (2 * d - 2)
            + divisor.coordinate("001") * (3 * d - 6))


def _startup_checks() -> None:
    # the derived rewrite z^2 -> 3(hd - h)z must be consistent with the
    # independently printed relations i^2 = 3(h - hd)i and i*z = 0
    lhs = mul_classes(I_CLASS, I_CLASS)
    rhs = mul_classes((H - HD).scaled(3), I_CLASS)
    if lhs != rhs:
        raise AssertionError("relation i^2 = 3(h-hd)i fails under the rewrite system")
    if not mul_classes(I_CLASS, Z).is_zero():
        raise AssertionError("relation i*z = 0 fails under the rewrite system")
    for k in LABELS:
        for l in LABELS:
            val = integrate(mul_classes(ChowClass.basis(k), i_basis_class(l)))
            expect = Fraction(1 if l == DUAL[k] else 0)
            if val != expect:
                raise AssertionError(f"pairing of {k} with dual {l} is {val}")


_startup_checks()


class ChowParseError(ValueError):
    """Raised when a class expression does not parse."""


_SYMBOLS = {"h": H, "hd": HD, "i": I_CLASS, "z": Z}


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-*^()/":
            tokens.append((ch, ch))
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            tokens.append(("num", int(text[start:pos])))
            continue
        if ch.isalpha():
            start = pos
            while pos < len(text) and text[pos].isalpha():
                pos += 1
            run = text[start:pos]
            # greedy split of a letter run into known symbols, so that
            # adjacency like "hz" or "hdz" means a product
            while run:
                for sym in ("hd", "h", "i", "z"):
                    if run.startswith(sym):
                        tokens.append(("sym", sym))
                        run = run[len(sym):]
                        break
                else:
                    raise ChowParseError(f"unknown symbol in {text[start:pos]!r}")
            continue
        raise ChowParseError(f"unexpected character {ch!r}")
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self) -> ChowClass:
        kind, _ = self.peek()
        negate = False
        if kind in ("+", "-"):
            negate = self.take()[0] == "-"
        out = self.term()
        if negate:
            out = -out
        while True:
            kind, _ = self.peek()
            if kind == "+":
                self.take()
                out = out + self.term()
            elif kind == "-":
                self.take()
                out = out - self.term()
            else:
                return out

    def term(self) -> ChowClass:
        out = self.factor()
        while True:
            kind, _ = self.peek()
            if kind == "*":
                self.take()
                out = mul_classes(out, self.factor())
            elif kind in ("sym", "num", "("):
                # implicit product from adjacency
                out = mul_classes(out, self.factor())
            else:
                return out

    def factor(self) -> ChowClass:
        base = self.atom()
        kind, _ = self.peek()
        if kind == "^":
            self.take()
            k2, v = self.take()
            if k2 != "num":
                raise ChowParseError("exponent must be a nonnegative integer")
            out = ONE
            for _ in range(v):
                out = mul_classes(out, base)
            return out
        return base

    def atom(self) -> ChowClass:
        kind, value = self.take()
        if kind == "(":
            inner = self.expr()
            k2, _ = self.take()
            if k2 != ")":
                raise ChowParseError("unbalanced parenthesis")
            return inner
        if kind == "-":
            return -self.atom()
        if kind == "sym":
            return _SYMBOLS[value]
        if kind == "num":
            k2, _ = self.peek()
            if k2 == "/":
                self.take()
                k3, den = self.take()
                if k3 != "num" or den == 0:
                    raise ChowParseError("malformed rational literal")
                return ONE.scaled(Fraction(value, den))
            return ONE.scaled(value)
        raise ChowParseError("unexpected end of expression")


def parse_class_expr(text: str) -> ChowClass:
    """Evaluate an expression in h, hd, i, z with + - * ^ and rationals."""
    parser = _Parser(_tokenize(text))
    out = parser.expr()
    if parser.pos != len(parser.tokens):
        raise ChowParseError("trailing input after expression")
    return out
