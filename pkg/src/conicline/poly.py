"""Exact sparse polynomials in x, y, z over the rationals.

Monomials are exponent triples ``(a, b, c)`` standing for ``x^a y^b z^c``.
Coefficients are exact rationals; plain ``int`` and ``fractions.Fraction``
mix freely through Python's numeric tower, so no wrapper type is needed.
Every operation here is a pure function on immutable values and no floating
point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import NonHomogeneousError, SingularMatrixError, ZeroPolynomialError

Monomial = tuple[int, int, int]

VAR_NAMES = ("x", "y", "z")
VAR_INDEX = {"x": 0, "y": 1, "z": 2, 0: 0, 1: 1, 2: 2}


# ---------------------------------------------------------------------------
# monomial helpers
# ---------------------------------------------------------------------------

def mono_mul(m: Monomial, n: Monomial) -> Monomial:
    return (m[0] + n[0], m[1] + n[1], m[2] + n[2])


def mono_divides(m: Monomial, n: Monomial) -> bool:
    """True when m | n, i.e. the quotient n/m has no negative exponent."""
    return m[0] <= n[0] and m[1] <= n[1] and m[2] <= n[2]


def mono_div(n: Monomial, m: Monomial) -> Monomial | None:
    if mono_divides(m, n):
        return (n[0] - m[0], n[1] - m[1], n[2] - m[2])
    return None


def mono_lcm(m: Monomial, n: Monomial) -> Monomial:
    return (max(m[0], n[0]), max(m[1], n[1]), max(m[2], n[2]))


def mono_degree(m: Monomial) -> int:
    return m[0] + m[1] + m[2]


class MonomialOrder:
    """A total well-order on exponent triples with x > y > z.

    Instances are stateless key providers: ``key(m)`` sorts ascending in the
    order.  ``DEGREVLEX`` (the default everywhere) refines total degree,
    ``LEX`` is kept for elimination-style hand computations, and
    ``block_order(k)`` compares the first k variables before the rest.
    """

    __slots__ = ("name", "key")

    def __init__(self, name, key):
        self.name = name
        self.key = key

    def greater(self, m: Monomial, n: Monomial) -> bool:
        return self.key(m) > self.key(n)

    def sorted_desc(self, monomials):
        return sorted(monomials, key=self.key, reverse=True)

    def __repr__(self):
        return f"MonomialOrder({self.name})"

    def __hash__(self):
        return hash(self.name)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name


def _degrevlex_key(m: Monomial):
    return (m[0] + m[1] + m[2], -m[2], -m[1], -m[0])


def _lex_key(m: Monomial):
    return m


DEGREVLEX = MonomialOrder("degrevlex", _degrevlex_key)
LEX = MonomialOrder("lex", _lex_key)


def block_order(split: int) -> MonomialOrder:
    """Elimination order: degrevlex on the first ``split`` variables, ties
    broken by degrevlex on the remaining ones."""
    if not 1 <= split <= 2:
        raise ValueError("split must be 1 or 2")

    def key(m: Monomial):
        head, tail = m[:split], m[split:]
        return (
            sum(head), tuple(-e for e in reversed(head)),
            sum(tail), tuple(-e for e in reversed(tail)),
        )

    return MonomialOrder(f"block({split})", key)


@lru_cache(maxsize=None)
def monomial_basis(degree: int, order: MonomialOrder = DEGREVLEX) -> tuple[Monomial, ...]:
    """All monomials of the given total degree, descending in ``order``.

    The count is (degree+2)(degree+1)/2.
    """
    if degree < 0:
        return ()
    monos = [
        (a, b, degree - a - b)
        for a in range(degree, -1, -1)
        for b in range(degree - a, -1, -1)
    ]
    return tuple(order.sorted_desc(monos))


@lru_cache(maxsize=None)
def monomial_index(degree: int, order: MonomialOrder = DEGREVLEX) -> dict:
    """Monomial -> position in ``monomial_basis(degree, order)``."""
    return {m: i for i, m in enumerate(monomial_basis(degree, order))}


# ---------------------------------------------------------------------------
# ternary polynomials
# ---------------------------------------------------------------------------

class TernaryPoly:
    """Sparse polynomial in Q[x, y, z], keyed by exponent triples.

    The term map never stores a zero coefficient, so equality of term maps
    is equality of polynomials.  Instances are treated as immutable; all
    arithmetic returns new objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "TernaryPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def variable(cls, var) -> "TernaryPoly":
        i = VAR_INDEX[var]
        m = tuple(1 if j == i else 0 for j in range(3))
        return cls({m: 1})

    # -- basic queries -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {mono_degree(m) for m in self.terms}
        return len(degrees) <= 1

    def coefficient(self, m: Monomial):
        return self.terms.get(m, 0)

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        """Terms as (monomial, coefficient), descending in ``order``."""
        return [(m, self.terms[m]) for m in order.sorted_desc(self.terms)]

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX):
        return self.terms[self.leading_monomial(order)]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TernaryPoly):
            other = TernaryPoly.constant(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        out = TernaryPoly.__new__(TernaryPoly)
        out.terms = res
        return out

    __radd__ = __add__

    def __neg__(self):
        out = TernaryPoly.__new__(TernaryPoly)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, TernaryPoly):
            other = TernaryPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return TernaryPoly.constant(other) - self

    def __mul__(self, other):
        if not isinstance(other, TernaryPoly):
            if not other:
                return TernaryPoly()
            out = TernaryPoly.__new__(TernaryPoly)
            out.terms = {m: c * other for m, c in self.terms.items()}
            return out
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                else:
                    del res[m]
        out = TernaryPoly.__new__(TernaryPoly)
        out.terms = res
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = TernaryPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def mul_monomial(self, m: Monomial, c=1) -> "TernaryPoly":
        out = TernaryPoly.__new__(TernaryPoly)
        out.terms = {mono_mul(m, n): coeff * c for n, coeff in self.terms.items()} if c else {}
        return out

    def scale(self, c) -> "TernaryPoly":
        return self * c

    # -- comparisons -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, TernaryPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == TernaryPoly.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus and substitution ----------------------------------------------

    def partial(self, var) -> "TernaryPoly":
        i = VAR_INDEX[var]
        res = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                n = list(m)
                n[i] = e - 1
                res[tuple(n)] = c * e
        out = TernaryPoly.__new__(TernaryPoly)
        out.terms = res
        return out

    def evaluate(self, point):
        """Exact value at a rational point (px, py, pz)."""
        px, py, pz = point
        total = 0
        for (a, b, c), coeff in self.terms.items():
            total += coeff * px**a * py**b * pz**c
        return total

    def substitute(self, images) -> "TernaryPoly":
        """Replace (x, y, z) by three polynomials and expand."""
        cache = [{0: TernaryPoly.constant(1)} for _ in range(3)]

        def power(i, e):
            store = cache[i]
            if e not in store:
                store[e] = power(i, e - 1) * images[i]
            return store[e]

        result = TernaryPoly()
        for (a, b, c), coeff in self.terms.items():
            term = power(0, a) * power(1, b) * power(2, c)
            result = result + term * coeff
        return result

    # -- normal forms -------------------------------------------------------------

    def content_and_primitive(self):
        """(q, p) with self = q * p, p having coprime integer coefficients
        and positive leading coefficient in degrevlex."""
        if not self.terms:
            return Fraction(0), TernaryPoly()
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, c.numerator * (den // c.denominator))
        scale = Fraction(num, den)
        if self.leading_coefficient(DEGREVLEX) < 0:
            scale = -scale
        prim = TernaryPoly({m: int(c / scale) for m, c in self.terms.items()})
        return scale, prim

    def primitive(self) -> "TernaryPoly":
        """Integer-coefficient scalar multiple with content 1 and positive
        degrevlex leading coefficient (canonical up to the scalar)."""
        return self.content_and_primitive()[1]

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "TernaryPoly":
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        inv = Fraction(1, 1) / lc
        return self * inv

    # -- rendering ----------------------------------------------------------------

    def render(self, order: MonomialOrder = DEGREVLEX) -> str:
        """Conventional text form, e.g. ``x^2+y^2-25z^2`` or ``3x+4y``."""
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms(order):
            mono = "".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(VAR_NAMES, m)
                if e
            )
            if not mono:
                body = str(abs_rational(c))
            elif abs_rational(c) == 1:
                body = mono
            else:
                body = f"{abs_rational(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __repr__(self):
        return f"TernaryPoly({self.render()})"


def abs_rational(c):
    return -c if c < 0 else c


X = TernaryPoly.variable("x")
Y = TernaryPoly.variable("y")
Z = TernaryPoly.variable("z")


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def poly_product(factors) -> TernaryPoly:
    """Exact expanded product; the empty product is 1."""
    result = TernaryPoly.constant(1)
    for f in factors:
        result = result * f
    return result


def partial_derivative(f: TernaryPoly, var) -> TernaryPoly:
    return f.partial(var)


def dehomogenize(f: TernaryPoly, chart) -> TernaryPoly:
    """Substitute 1 for the chart variable: x^a y^b z^c -> the triple with the
    chart exponent set to zero.  Requires homogeneous input."""
    if not f.is_homogeneous():
        raise NonHomogeneousError("dehomogenize needs a homogeneous polynomial")
    i = VAR_INDEX[chart]
    res = {}
    for m, c in f.terms.items():
        n = list(m)
        n[i] = 0
        key = tuple(n)
        s = res.get(key, 0) + c
        if s:
            res[key] = s
        else:
            res.pop(key, None)
    return TernaryPoly(res)


def det3(M) -> Fraction:
    """Determinant of a 3x3 matrix of rationals."""
    (a, b, c), (d, e, f), (g, h, i) = M
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def apply_linear_change(f: TernaryPoly, M) -> TernaryPoly:
    """Compose f with the substitution (x, y, z) -> M . (x, y, z).

    M is a 3x3 matrix of rationals given by rows; it must be invertible.
    Degree and homogeneity are preserved.
    """
    if det3(M) == 0:
        raise SingularMatrixError("coordinate change matrix is singular")
    images = [
        TernaryPoly({
            (1, 0, 0): row[0],
            (0, 1, 0): row[1],
            (0, 0, 1): row[2],
        })
        for row in M
    ]
    return f.substitute(images)


# ---------------------------------------------------------------------------
# dense univariate polynomials (eliminants, minimal polynomials)
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial over Q, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                - (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        res = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                res[i + j] += a * b
        return UniPoly(res)

    __rmul__ = __mul__

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return UniPoly([Fraction(c) / lc for c in self.coeffs])

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quo = [0] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            top = rem[k + len(other.coeffs) - 1]
            if not top:
                continue
            q = Fraction(top) / lead
            quo[k] = q
            for i, b in enumerate(other.coeffs):
                rem[k + i] -= q * b
        return UniPoly(quo), UniPoly(rem)

    def evaluate(self, v):
        total = 0
        for c in reversed(self.coeffs):
            total = total * v + c
        return total

    def primitive(self) -> "UniPoly":
        """Coprime integer coefficients, positive leading coefficient."""
        if not self.coeffs:
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.coeffs:
            num = gcd(num, c.numerator * (den // c.denominator))
        scale = Fraction(num, den)
        if self.coeffs[-1] < 0:
            scale = -scale
        return UniPoly([int(c / scale) for c in self.coeffs])

    def rational_roots(self) -> list:
        """All rational roots (each once), ascending."""
        p = self.primitive()
        if p.is_zero():
            raise ZeroPolynomialError("zero polynomial has every root")
        roots = []
        # strip the root at 0
        coeffs = list(p.coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            if 0 not in roots:
                roots.append(Fraction(0))
        if len(coeffs) > 1:
            a0, an = abs(coeffs[0]), abs(coeffs[-1])
            for num in _divisors(a0):
                for den in _divisors(an):
                    for cand in (Fraction(num, den), Fraction(-num, den)):
                        if cand not in roots and p.evaluate(cand) == 0:
                            roots.append(cand)
        return sorted(roots)

    def render(self, var="u") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            mag = abs_rational(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __repr__(self):
        return f"UniPoly({self.render()})"


def _divisors(n: int):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def uni_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    while q:
        p, q = q, p.divmod(q)[1]
    return p.monic() if p else p


def squarefree_part(p: UniPoly) -> UniPoly:
    """p / gcd(p, p'), primitive with positive leading coefficient.

    Same root set as p, no repeated roots.
    """
    if p.is_zero():
        raise ZeroPolynomialError("squarefree part of the zero polynomial")
    g = uni_gcd(p, p.derivative())
    if g.degree() <= 0:
        return p.primitive()
    quo, rem = p.divmod(g)
    assert rem.is_zero()
    return quo.primitive()
