"""Exact integer and polynomial arithmetic over Z and Q.

Polynomials are dense, ascending (``coeffs[i]`` is the coefficient of x^i) and
immutable.  Nothing here ever rounds: resultants, discriminants and gcds are
computed with fraction-free integer arithmetic.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegreeZero,
    NonIntegerCoefficient,
    NotEven,
    Overscale,
    PolySyntaxError,
    ZeroInput,
    ZeroPolynomial,
)


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        for a in c:
            if not isinstance(a, int):
                raise NonIntegerCoefficient(f"coefficient {a!r} is not an integer")
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(a) for a in c))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPolynomial":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = IntPolynomial((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * a for i, a in enumerate(self.coeffs) if i > 0))

    def content(self) -> int:
        """gcd of the coefficients, signed like the leading coefficient."""
        if self.is_zero():
            return 0
        c = math.gcd(*self.coeffs)
        return c if self.lc > 0 else -c

    def primitive_part(self) -> "IntPolynomial":
        if self.is_zero():
            return self
        c = self.content()
        return IntPolynomial(tuple(a // c for a in self.coeffs))

    def compose_square(self) -> "IntPolynomial":
        """p(x^2)."""
        out = [0] * (2 * len(self.coeffs) - 1) if self.coeffs else []
        for i, a in enumerate(self.coeffs):
            out[2 * i] = a
        return IntPolynomial(tuple(out))

    def exact_div(self, d: int) -> "IntPolynomial":
        if any(a % d for a in self.coeffs):
            raise ValueError(f"{d} does not divide {self}")
        return IntPolynomial(tuple(a // d for a in self.coeffs))

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(v) -> IntPolynomial:
    if isinstance(v, IntPolynomial):
        return v
    if isinstance(v, int):
        return IntPolynomial((v,))
    raise TypeError(f"cannot coerce {type(v).__name__} to IntPolynomial")


class BaseField(enum.Enum):
    Q = "q"
    Q_SQRT_MINUS_3 = "q-sqrt-minus-3"


@dataclass(frozen=True)
class FactoredInteger:
    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    def __str__(self):
        if not self.factors:
            return str(self.sign)
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return ("-" if self.sign < 0 else "") + body


# ---------------------------------------------------------------------------
# parsing

MAX_EXPONENT = 4096
_TOKEN_RE = re.compile(r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|([A-Za-z_]\w*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        decimal, number, name, sym = m.groups()
        start = m.start(m.lastindex)
        if decimal is not None:
            raise NonIntegerCoefficient(f"decimal literal {decimal!r} at position {start}")
        if number is not None:
            tokens.append(("num", int(number), start))
        elif name is not None:
            if name != "x":
                raise PolySyntaxError(f"unknown identifier {name!r}", start)
            tokens.append(("x", None, start))
        elif sym in "+-*^()/[],":
            tokens.append((sym, None, start))
        else:
            raise PolySyntaxError(f"unexpected character {sym!r}", start)
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over::

        expr   := [sign] term (("+" | "-") term)*
        term   := power (("*" | "/") power)*
        power  := atom ["^" exponent]
        exponent := [sign] atom ["^" exponent]      (constant, non-negative)
        atom   := NUMBER | "x" | "(" expr ")"

    A sign is only accepted at the start of an expression, so ``x - - 1`` is
    rejected.  Values are carried as Fraction coefficient lists so that exact
    division by constants is possible; non-integral results are refused at
    the end.
    """

    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise PolySyntaxError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolySyntaxError(f"unexpected token {tok[0]!r}", tok[2])
        return value

    def expr(self):
        negate = False
        if self.peek()[0] in "+-":
            negate = self.take()[0] == "-"
        value = self.term()
        if negate:
            value = _fneg(value)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            if self.peek()[0] in ("+", "-"):
                tok = self.peek()
                raise PolySyntaxError(f"sign {tok[0]!r} after binary operator", tok[2])
            rhs = self.term()
            value = _fadd(value, rhs if op == "+" else _fneg(rhs))
        return value

    def term(self):
        value = self.power()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.power()
            if op == "*":
                value = _fmul(value, rhs)
            else:
                if len(rhs) != 1:
                    raise PolySyntaxError("division by a non-constant", pos)
                if rhs[0] == 0:
                    raise PolySyntaxError("division by zero", pos)
                value = [a / rhs[0] for a in value]
        return value

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            e = self.exponent(pos)
            return _fpow(base, e)
        return base

    def exponent(self, pos):
        negate = False
        if self.peek()[0] in "+-":
            negate = self.take()[0] == "-"
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, p2 = self.take()
            base = _fpow(base, self.exponent(p2))
        if len(base) > 1 or (base and base[0].denominator != 1):
            raise PolySyntaxError("exponent must be a non-negative integer", pos)
        e = int(base[0]) if base else 0
        if negate:
            e = -e
        if e < 0:
            raise PolySyntaxError("exponent must be a non-negative integer", pos)
        if e > MAX_EXPONENT:
            raise PolySyntaxError(f"exponent {e} exceeds {MAX_EXPONENT}", pos)
        return e

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return _ftrim([Fraction(val)])
        if kind == "x":
            self.take()
            return [Fraction(0), Fraction(1)]
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", pos)
        raise PolySyntaxError(f"unexpected token {kind!r}", pos)


def _ftrim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _fneg(a):
    return [-v for v in a]


def _fadd(a, b):
    n = max(len(a), len(b))
    return _ftrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _fmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return _ftrim(out)


def _fpow(a, e):
    out = [Fraction(1)]
    for _ in range(e):
        out = _fmul(out, a)
    return out


def _parse_list(text: str) -> IntPolynomial:
    body = text.strip()
    inner = body[1:-1]
    if not body.endswith("]"):
        raise PolySyntaxError("unterminated coefficient list", len(text))
    if not inner.strip():
        return IntPolynomial()
    coeffs = []
    offset = text.index("[") + 1
    for item in inner.split(","):
        s = item.strip()
        if not s:
            raise PolySyntaxError("empty coefficient", offset)
        if re.fullmatch(r"[+-]?\d+", s):
            coeffs.append(int(s))
        elif re.fullmatch(r"[+-]?\d+\s*/\s*\d+|[+-]?\d*\.\d+|[+-]?\d+\.\d*", s):
            value = Fraction(s.replace(" ", ""))
            if value.denominator != 1:
                raise NonIntegerCoefficient(f"coefficient {s!r} is not an integer")
            coeffs.append(int(value))
        else:
            raise PolySyntaxError(f"bad coefficient {s!r}", offset)
        offset += len(item) + 1
    return IntPolynomial(tuple(coeffs))


def parse_poly(text: str) -> IntPolynomial:
    """Parse an integer polynomial in ``x`` or a list ``[c0, c1, ..., cn]``."""
    if text.lstrip().startswith("["):
        return _parse_list(text)
    if not text.strip():
        raise PolySyntaxError("empty input", 0)
    coeffs = _Parser(text).parse()
    for a in coeffs:
        if a.denominator != 1:
            raise NonIntegerCoefficient(f"coefficient {a} is not an integer")
    return IntPolynomial(tuple(int(a) for a in coeffs))


# ---------------------------------------------------------------------------
# structural predicates


def is_odd_poly(p: IntPolynomial) -> bool:
    return all(a == 0 for a in p.coeffs[0::2])


def is_even_poly(p: IntPolynomial) -> bool:
    return all(a == 0 for a in p.coeffs[1::2])


def even_part(h: IntPolynomial) -> IntPolynomial:
    """The polynomial g with h(x) = g(x^2)."""
    if not is_even_poly(h):
        raise NotEven(f"{h} has a nonzero odd-degree coefficient")
    return IntPolynomial(h.coeffs[0::2])


def pseudo_rem(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """prem(a, b) = lc(b)^(deg a - deg b + 1) * a  mod  b, over Z."""
    if b.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    db, lb = b.degree, b.lc
    e = a.degree - db + 1
    if e <= 0:
        return a
    r = list(a.coeffs)
    while len(r) - 1 >= db and r:
        t = r[-1]
        shift = len(r) - 1 - db
        r = [lb * v for v in r]
        for j, bj in enumerate(b.coeffs):
            r[shift + j] -= t * bj
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    return IntPolynomial(tuple(v * lb**e for v in r))


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Z (content tracked separately, positive lc)."""
    if a.is_zero():
        return b.primitive_part()
    if b.is_zero():
        return a.primitive_part()
    c = math.gcd(a.content(), b.content())
    a, b = a.primitive_part(), b.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_rem(a, b)
        a, b = b, r.primitive_part() if not r.is_zero() else r
    g = a.primitive_part()
    return IntPolynomial(tuple(c * v for v in g.coeffs))


def is_squarefree(p: IntPolynomial) -> bool:
    if p.is_zero():
        raise ZeroPolynomial("squarefreeness of the zero polynomial")
    if p.degree <= 0:
        return True
    return poly_gcd(p, p.derivative()).degree == 0


# ---------------------------------------------------------------------------
# resultants

def sylvester_matrix(p: IntPolynomial, q: IntPolynomial) -> list[list[int]]:
    """Rows of p first (deg q of them), then rows of q (deg p of them)."""
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant (Bareiss)."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def resultant_bareiss(p: IntPolynomial, q: IntPolynomial) -> int:
    if p.is_zero() or q.is_zero():
        raise ZeroPolynomial("resultant with the zero polynomial")
    return bareiss_det(sylvester_matrix(p, q))


def resultant_prs(p: IntPolynomial, q: IntPolynomial) -> int:
    """Resultant via the subresultant PRS; same sign convention as Sylvester."""
    if p.is_zero() or q.is_zero():
        raise ZeroPolynomial("resultant with the zero polynomial")
    a, b = p, q
    sign = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 == 1 and b.degree % 2 == 1:
            sign = -1
    if b.degree == 0:
        return sign * b.lc ** a.degree
    g = h = 1
    while True:
        da, db = a.degree, b.degree
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        r = pseudo_rem(a, b)
        if r.is_zero():
            return 0
        a = b
        denom = g * h**delta
        b = r.exact_div(denom)
        g = a.lc
        h = _exact_pow_ratio(g, delta, h)
        if b.degree == 0:
            # res(a, c) = c^deg a, rescaled by the subresultant normalization
            dlast = a.degree
            return sign * _exact_pow_ratio(b.lc, dlast, h)


def _exact_pow_ratio(g: int, delta: int, h: int) -> int:
    """g^delta / h^(delta-1), exact in the subresultant algorithm."""
    if delta == 0:
        return h
    num = g**delta
    den = h ** (delta - 1)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("subresultant normalization is not exact")
    return q


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """res(p, q) = det of the Sylvester matrix with the rows of p first."""
    return resultant_bareiss(p, q)


def discriminant(p: IntPolynomial) -> int:
    d = p.degree
    if d < 1:
        raise DegreeZero("discriminant needs degree >= 1")
    r = resultant(p, p.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, p.lc)
    assert rem == 0
    return q


# ---------------------------------------------------------------------------
# integers

MR_BOUND = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % d for d in range(2, math.isqrt(p) + 1))]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24; Overscale beyond."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= MR_BOUND:
        raise Overscale(f"{n} is beyond the certified primality range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, budget: int) -> int:
    """A nontrivial factor of composite n, deterministic seeds."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        steps = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            steps += r
            if steps > budget:
                raise Overscale(f"factorization of {n} exceeded the work budget")
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise Overscale(f"could not split {n}")


def factor_integer(n: int, budget: int = 10**7) -> FactoredInteger:
    if n == 0:
        raise ZeroInput("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    found: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        c = stack.pop()
        if is_prime(c):
            found[c] = found.get(c, 0) + 1
            continue
        r = math.isqrt(c)
        if r * r == c:
            stack += [r, r]
            continue
        d = _pollard_brent(c, budget)
        stack += [d, c // d]
    return FactoredInteger(sign, tuple(sorted(found.items())))


def squarefree_part(n: int) -> int:
    fac = factor_integer(n)
    out = fac.sign
    for p, e in fac.factors:
        if e % 2:
            out *= p
    return out


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    a, b = q.numerator, q.denominator
    return math.isqrt(a) ** 2 == a and math.isqrt(b) ** 2 == b


def is_square_in(q, field: BaseField) -> bool:
    """Is the nonzero rational q a square in Q or in Q(sqrt(-3))?"""
    q = Fraction(q)
    if q == 0:
        raise ZeroInput("square test of 0")
    if field is BaseField.Q:
        return _is_rational_square(q)
    return _is_rational_square(q) or _is_rational_square(q / -3)
