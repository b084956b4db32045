"""Exact ordinal arithmetic in Cantor normal form, for values below epsilon_0.

An ordinal is represented as a descending sum of omega-powers,
``w^e1*c1 + ... + w^ek*ck``, stored as a tuple of (exponent, coefficient)
pairs with the exponents themselves ordinals.  All operations are pure and
return canonical values; the representation is unique, so structural
equality is value equality.

The text grammar (used by every CLI flag and file format):

    ordinal := term ("+" term)*
    term    := "w^(" ordinal ")*" nat | "w^" nat "*" nat | "w*" nat | "w" | nat

The printer always writes coefficients explicitly (``w^2*1``), except that
omega itself with coefficient 1 prints as plain ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass


class OrdinalParseError(ValueError):
    """Raised on malformed or non-canonical ordinal text; carries the offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True, eq=False)
class Ordinal:
    """A Cantor-normal-form ordinal below epsilon_0.

    terms: descending (exponent, coefficient) pairs; the empty tuple is zero.
    Finite n is a single term with exponent zero.  Equality coerces ints, so
    ``nat(3) == 3`` holds and hashes agree.
    """

    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(tuple(t) for t in self.terms))
        prev = None
        for t in self.terms:
            if len(t) != 2:
                raise ValueError("each term must be an (exponent, coefficient) pair")
            e, c = t
            if not isinstance(e, Ordinal):
                raise TypeError("exponent must be an Ordinal")
            if not isinstance(c, int) or c < 1:
                raise ValueError("coefficient must be a positive integer")
            if prev is not None and compare(prev, e) <= 0:
                raise ValueError("exponents must be strictly decreasing")
            prev = e

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    def as_int(self) -> int:
        if not self.terms:
            return 0
        if not self.is_finite():
            raise ValueError(f"{self} is not a finite ordinal")
        return self.terms[0][1]

    def is_limit(self) -> bool:
        """True for nonzero ordinals with no finite summand."""
        return bool(self.terms) and bool(self.terms[-1][0].terms)

    def is_successor(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        if self.is_finite():
            return hash(self.as_int())
        return hash(self.terms)

    def __lt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return compare(self, other) < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return compare(self, other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return compare(self, other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return compare(self, other) >= 0

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    def __radd__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return add(other, self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return mul(other, self)

    def __pow__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return power(self, other)

    def __rpow__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return power(other, self)

    def __str__(self):
        return format_ordinal(self)

    def __repr__(self):
        return format_ordinal(self)


def _coerce(x) -> Ordinal | None:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return nat(x)
    return None


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def nat(n: int) -> Ordinal:
    """The finite ordinal n."""
    if n < 0:
        raise ValueError("ordinals are nonnegative")
    if n == 0:
        return ZERO
    return Ordinal(((ZERO, n),))


def omega_pow(e) -> Ordinal:
    """w raised to the ordinal e, as a single CNF term."""
    e = _req(e)
    return Ordinal(((e, 1),))


def _req(x) -> Ordinal:
    o = _coerce(x)
    if o is None:
        raise TypeError(f"expected an Ordinal or int, got {type(x).__name__}")
    return o


def compare(a: Ordinal, b: Ordinal) -> int:
    """Three-way ordinal comparison: -1 (less), 0 (equal), or 1 (greater)."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    if la == lb:
        return 0
    return -1 if la < lb else 1


def add(a, b) -> Ordinal:
    """Ordinal sum a + b.  Terms of a below b's leading term are absorbed."""
    a, b = _req(a), _req(b)
    if not b.terms:
        return a
    if not a.terms:
        return b
    eb, cb = b.terms[0]
    i = 0
    while i < len(a.terms) and compare(a.terms[i][0], eb) > 0:
        i += 1
    head = a.terms[:i]
    if i < len(a.terms) and compare(a.terms[i][0], eb) == 0:
        return Ordinal(head + ((eb, a.terms[i][1] + cb),) + b.terms[1:])
    return Ordinal(head + b.terms)


def mul(a, b) -> Ordinal:
    """Ordinal product a * b, left-distributive over right addition."""
    a, b = _req(a), _req(b)
    if not a.terms or not b.terms:
        return ZERO
    e1, c1 = a.terms[0]
    out = []
    for f, d in b.terms:
        if f.terms:
            # a * w^f * d with f >= 1: only a's leading exponent survives
            out.append((add(e1, f), d))
        elif e1.terms:
            out.append((e1, c1 * d))
            out.extend(a.terms[1:])
        else:
            out.append((ZERO, c1 * d))
    return Ordinal(tuple(out))


def power(a, b) -> Ordinal:
    """Ordinal exponentiation a ** b, continuous in the exponent (0**0 = 1)."""
    a, b = _req(a), _req(b)
    if not b.terms:
        return ONE
    if not a.terms:
        return ZERO
    if a == ONE:
        return ONE
    split = cnf_split(b)
    if a.is_finite():
        n = a.as_int()
        if b.is_finite():
            return nat(n ** b.as_int())
        # n ** (w*b1 + b0) = w**b1 * n**b0
        return mul(omega_pow(split.limit_part), nat(n ** split.finite_part))
    if b.is_finite():
        return _pow_by_squaring(a, b.as_int())
    e1 = a.terms[0][0]
    limit_exponent = mul(e1, mul(OMEGA, split.limit_part))
    return mul(omega_pow(limit_exponent), _pow_by_squaring(a, split.finite_part))


def _pow_by_squaring(a: Ordinal, m: int) -> Ordinal:
    result = ONE
    for bit in bin(m)[2:]:
        result = mul(result, result)
        if bit == "1":
            result = mul(result, a)
    return result


@dataclass(frozen=True)
class CnfSplit:
    """The decomposition b = w * limit_part + finite_part with finite_part < w."""

    limit_part: Ordinal
    finite_part: int


def cnf_split(b) -> CnfSplit:
    b = _req(b)
    finite = 0
    scaled = []
    for e, c in b.terms:
        if not e.terms:
            finite = c
        elif e.is_finite():
            scaled.append((nat(e.as_int() - 1), c))
        else:
            # 1 + e = e for infinite e, so the exponent is unchanged
            scaled.append((e, c))
    return CnfSplit(Ordinal(tuple(scaled)), finite)


def _left_difference(lo: Ordinal, hi: Ordinal) -> Ordinal:
    """The unique z with lo + z = hi; requires lo <= hi."""
    for i, (el, cl) in enumerate(lo.terms):
        if i >= len(hi.terms):
            raise ValueError(f"no left difference: {lo} > {hi}")
        eh, ch = hi.terms[i]
        c = compare(el, eh)
        if c == 0 and cl == ch:
            continue
        if c == 0 and cl < ch:
            return Ordinal(((el, ch - cl),) + hi.terms[i + 1:])
        if c < 0:
            return Ordinal(hi.terms[i:])
        raise ValueError(f"no left difference: {lo} > {hi}")
    return Ordinal(hi.terms[len(lo.terms):])


# --- pairing -----------------------------------------------------------------
#
# pair(a, b) is the position of (a, b) in the well-order that ranks pairs
# first by max(a, b) and then lexicographically.  The block of pairs whose
# maximum is exactly v has order type v*2 + 1, so the rank function below
# accumulates sum(v*2 + 1 for v < m) in closed form, term by CNF term.

_TWO = Ordinal(((ZERO, 2),))


def _g(m: Ordinal) -> Ordinal:
    """Order type of the set of pairs whose maximum is below m."""
    if not m.terms:
        return ZERO
    if m.is_finite():
        return nat(m.as_int() ** 2)
    acc = ZERO
    prefix = ZERO
    for idx, (e, c) in enumerate(m.terms):
        term = Ordinal(((e, c),))
        if idx == 0:
            acc = _h(e)
            if c >= 2:
                acc = add(acc, mul(omega_pow(mul(e, _TWO)), nat(c - 1)))
        elif e.terms:
            acc = add(acc, mul(prefix, term))
        else:
            acc = add(acc, add(mul(mul(prefix, _TWO), nat(c)), nat(c)))
        prefix = add(prefix, term)
    return acc


def _h(e: Ordinal) -> Ordinal:
    """Order type of the pairs with maximum below w**e, for e >= 1."""
    return omega_pow(_s(e))


def _s(e: Ordinal) -> Ordinal:
    if e.is_successor():
        d = _pred(e)
        return add(mul(d, _TWO), ONE)
    return _u(e)


def _u(e: Ordinal) -> Ordinal:
    # supremum of _s below the limit ordinal e
    g, c = e.terms[-1]
    prefix = Ordinal(e.terms[:-1])
    if not prefix.terms:
        if c == 1:
            return omega_pow(g)
        return mul(omega_pow(g), nat(2 * c - 1))
    return add(mul(prefix, _TWO), Ordinal(((g, c),)))


def _pred(e: Ordinal) -> Ordinal:
    last_e, last_c = e.terms[-1]
    if last_e.terms:
        raise ValueError(f"{e} is not a successor")
    if last_c == 1:
        return Ordinal(e.terms[:-1])
    return Ordinal(e.terms[:-1] + ((ZERO, last_c - 1),))


def pair(a, b) -> Ordinal:
    """Rank of (a, b) under max-then-lexicographic pair ordering.

    Restricted to the naturals this is a bijection onto the naturals:
    (0,0), (0,1), (1,0), (1,1), (0,2), ... enumerate 0, 1, 2, 3, 4, ...
    """
    a, b = _req(a), _req(b)
    m = b if compare(a, b) < 0 else a
    g = _g(m)
    if compare(a, m) < 0:
        return add(g, a)
    return add(g, add(m, b))


def unpair(p) -> tuple[Ordinal, Ordinal]:
    """Exact inverse of pair."""
    p = _req(p)
    m = _greedy_max(lambda q: compare(_g(q), p) <= 0)
    r = _left_difference(_g(m), p)
    if compare(r, m) < 0:
        return (r, m)
    return (m, _left_difference(m, r))


def _greedy_max(pred) -> Ordinal:
    """Largest x with pred(x), for pred true on an initial segment with a max."""
    x = ZERO
    while True:
        if not pred(add(x, ONE)):
            return x
        exp = _greedy_max(lambda q: pred(add(x, omega_pow(q))))
        unit = omega_pow(exp)
        c = 1
        while pred(add(x, mul(unit, nat(c * 2)))):
            c *= 2
        lo, hi = c, c * 2
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if pred(add(x, mul(unit, nat(mid)))):
                lo = mid
            else:
                hi = mid
        x = add(x, mul(unit, nat(lo)))


# --- text grammar ------------------------------------------------------------


def format_ordinal(o: Ordinal) -> str:
    """Canonical text for o; parse_ordinal inverts this exactly."""
    if not o.terms:
        return "0"
    parts = []
    for e, c in o.terms:
        if not e.terms:
            parts.append(str(c))
        elif e == ONE:
            parts.append("w" if c == 1 else f"w*{c}")
        elif e.is_finite():
            parts.append(f"w^{e.as_int()}*{c}")
        else:
            parts.append(f"w^({format_ordinal(e)})*{c}")
    return "+".join(parts)


def parse_ordinal(text: str) -> Ordinal:
    value, pos = _parse_expr(text, 0)
    if pos != len(text):
        raise OrdinalParseError("unexpected trailing input", pos)
    return value


def _parse_expr(text: str, pos: int) -> tuple[Ordinal, int]:
    terms = []
    positions = []
    plain_zero = text[pos : pos + 1] == "0"
    while True:
        positions.append(pos)
        term, pos = _parse_term(text, pos)
        terms.append(term)
        if pos < len(text) and text[pos] == "+":
            pos += 1
        else:
            break
    if len(terms) == 1 and plain_zero:
        return ZERO, pos
    for i, (e, c) in enumerate(terms):
        if c == 0:
            raise OrdinalParseError("zero coefficient", positions[i])
        if i > 0 and compare(terms[i - 1][0], e) <= 0:
            raise OrdinalParseError("exponents must be strictly decreasing", positions[i])
    return Ordinal(tuple(terms)), pos


def _parse_term(text: str, pos: int) -> tuple[tuple[Ordinal, int], int]:
    if pos >= len(text):
        raise OrdinalParseError("expected a term", pos)
    ch = text[pos]
    if ch.isdigit():
        n, pos = _parse_nat(text, pos)
        return (ZERO, n), pos
    if ch != "w":
        raise OrdinalParseError(f"expected 'w' or a number, got {ch!r}", pos)
    pos += 1
    if pos < len(text) and text[pos] == "^":
        pos += 1
        if pos < len(text) and text[pos] == "(":
            exponent, pos = _parse_expr(text, pos + 1)
            if pos >= len(text) or text[pos] != ")":
                raise OrdinalParseError("expected ')'", pos)
            pos += 1
        elif pos < len(text) and text[pos].isdigit():
            n, pos = _parse_nat(text, pos)
            exponent = nat(n)
        else:
            raise OrdinalParseError("expected an exponent", pos)
        if pos >= len(text) or text[pos] != "*":
            raise OrdinalParseError("expected '*' after exponent", pos)
        coeff, pos = _parse_nat(text, pos + 1)
        return (exponent, coeff), pos
    if pos < len(text) and text[pos] == "*":
        coeff, pos = _parse_nat(text, pos + 1)
        return (ONE, coeff), pos
    return (ONE, 1), pos


def _parse_nat(text: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise OrdinalParseError("expected a number", start)
    digits = text[start:pos]
    if len(digits) > 1 and digits[0] == "0":
        raise OrdinalParseError("leading zeros are not canonical", start)
    return int(digits), pos
