"""Buchberger's algorithm and zero-dimensional ideal machinery over Q.

Everything needed to count the distinct common zeros of plane curve systems
exactly: normal forms, reduced Groebner bases, staircase bases of
zero-dimensional quotients, minimal polynomials of coordinates, Seidenberg
radicals, and certified projective point counts.  Points at infinity are
handled by moving them into the affine chart with a seeded generic change
of coordinates; every count is recomputed under a second independent change
and the two must agree.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import (
    CommonComponentError,
    NotZeroDimensionalError,
    VerificationMismatchError,
)
from .linalg import QMatrix, solve_exact
from .poly import (
    DEGREVLEX,
    TernaryPoly,
    UniPoly,
    VAR_INDEX,
    apply_linear_change,
    dehomogenize,
    det3,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    squarefree_part,
    uni_gcd,
)

# Default seed of the deterministic coordinate-change stream (CLI-settable).
DEFAULT_SEED = 1729

# Redraw budget for degenerate coordinate changes.
MAX_CHANGE_RETRIES = 32


class Ideal:
    """An ideal of Q[x, y, z] with a chosen monomial order.

    ``groebner()`` computes (and caches) the unique reduced Groebner basis.
    Instances are immutable values.
    """

    __slots__ = ("generators", "order", "_gb")

    def __init__(self, generators, order=DEGREVLEX, _gb=None):
        self.generators = tuple(g for g in generators if not g.is_zero())
        self.order = order
        self._gb = _gb

    def groebner(self):
        if self._gb is None:
            self._gb = _buchberger(self.generators, self.order)
        return self._gb

    def contains(self, f: TernaryPoly) -> bool:
        return normal_form(f, self).is_zero()

    def is_trivial(self) -> bool:
        """True when the ideal is all of the ring (basis contains a unit)."""
        gb = self.groebner()
        return len(gb) == 1 and gb[0].degree() == 0

    def support_variables(self):
        """Indices of the variables that occur in some generator."""
        seen = set()
        for g in self.generators:
            for m in g.terms:
                for i in range(3):
                    if m[i]:
                        seen.add(i)
        return tuple(sorted(seen))

    def __repr__(self):
        gens = ", ".join(g.render() for g in self.generators)
        return f"Ideal(<{gens}>, {self.order.name})"


def s_polynomial(f: TernaryPoly, g: TernaryPoly, order=DEGREVLEX) -> TernaryPoly:
    lmf = f.leading_monomial(order)
    lmg = g.leading_monomial(order)
    l = mono_lcm(lmf, lmg)
    cf = Fraction(1) / f.leading_coefficient(order)
    cg = Fraction(1) / g.leading_coefficient(order)
    return f.mul_monomial(mono_div(l, lmf), cf) - g.mul_monomial(mono_div(l, lmg), cg)


def normal_form(f: TernaryPoly, G, order=None) -> TernaryPoly:
    """Remainder of multivariate division of f by G.

    G may be an Ideal (its Groebner basis is used) or a plain sequence of
    polynomials.  No term of the result is divisible by any leading term of
    the divisors, and f minus the result lies in the ideal they generate.
    """
    if isinstance(G, Ideal):
        basis = G.groebner()
        order = order or G.order
    else:
        basis = tuple(g for g in G if not g.is_zero())
        order = order or DEGREVLEX
    if not basis:
        return f
    key = order.key
    heads = [(g.leading_monomial(order), g.leading_coefficient(order), g) for g in basis]
    work = dict(f.terms)
    remainder = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, lc, g in heads:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                coef = Fraction(c) / lc
                for gm, gc in g.terms.items():
                    mm = mono_mul(q, gm)
                    if mm == m:
                        continue
                    s = work.get(mm, 0) - coef * gc
                    if s:
                        work[mm] = s
                    else:
                        work.pop(mm, None)
                break
        else:
            remainder[m] = c
    return TernaryPoly(remainder)


def _buchberger(generators, order):
    """The unique reduced Groebner basis, as a tuple sorted descending by
    leading monomial.

    Classic Buchberger with normal-pair selection and both of Buchberger's
    criteria (coprime leading terms; chain criterion).  Deterministic.
    """
    key = order.key
    basis = []
    for g in generators:
        if not g.is_zero():
            g = g.monic(order)
            if g not in basis:
                basis.append(g)
    if not basis:
        return ()

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def lcm_of(i, j):
        return mono_lcm(
            basis[i].leading_monomial(order), basis[j].leading_monomial(order)
        )

    while pairs:
        i, j = min(pairs, key=lambda p: (key(lcm_of(*p)), p))
        pairs.discard((i, j))
        lmi = basis[i].leading_monomial(order)
        lmj = basis[j].leading_monomial(order)
        l = mono_lcm(lmi, lmj)
        if mono_mul(lmi, lmj) == l:
            continue  # coprime leading terms reduce to zero
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if mono_divides(basis[k].leading_monomial(order), l):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    skip = True  # chain criterion
                    break
        if skip:
            continue
        h = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if not h.is_zero():
            basis.append(h.monic(order))
            n = len(basis) - 1
            pairs.update((k, n) for k in range(n))

    # minimalize: drop members whose leading term is divisible by another's
    minimal = []
    for i, g in enumerate(basis):
        lm = g.leading_monomial(order)
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            lmh = h.leading_monomial(order)
            if mono_divides(lmh, lm) and (lmh != lm or j < i):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    # tail-reduce to the unique reduced basis
    reduced = []
    for i, g in enumerate(minimal):
        rest = minimal[:i] + minimal[i + 1 :]
        r = normal_form(g, rest, order)
        reduced.append(r.monic(order))
    reduced.sort(key=lambda g: key(g.leading_monomial(order)), reverse=True)
    return tuple(reduced)


def reduced_gb(I: Ideal) -> Ideal:
    """The ideal presented by its unique reduced Groebner basis."""
    gb = I.groebner()
    return Ideal(gb, I.order, _gb=gb)


# ---------------------------------------------------------------------------
# zero-dimensional machinery
# ---------------------------------------------------------------------------

def staircase(I: Ideal):
    """Monomials outside the leading-term ideal, ascending in I's order.

    The count equals dim_Q of the quotient by I within the polynomial ring
    on the variables that actually occur in I (absent variables are not part
    of the chart).  Raises NotZeroDimensionalError when an occurring
    variable has no pure power among the leading terms.
    """
    gb = reduced_gb(I).groebner()
    if not gb:
        raise NotZeroDimensionalError("the zero ideal is not zero-dimensional")
    if len(gb) == 1 and gb[0].degree() == 0:
        return ()
    order = I.order
    lms = [g.leading_monomial(order) for g in gb]
    support = set()
    for g in gb:
        for m in g.terms:
            for i in range(3):
                if m[i]:
                    support.add(i)
    bounds = [1, 1, 1]
    for i in sorted(support):
        pure = [lm[i] for lm in lms if sum(lm) == lm[i]]
        if not pure:
            raise NotZeroDimensionalError(
                f"no pure power of {'xyz'[i]} among the leading terms"
            )
        bounds[i] = min(pure)
    out = []
    for a in range(bounds[0]):
        for b in range(bounds[1]):
            for c in range(bounds[2]):
                m = (a, b, c)
                if not any(mono_divides(lm, m) for lm in lms):
                    out.append(m)
    out.sort(key=order.key)
    return tuple(out)


def quotient_dimension(I: Ideal) -> int:
    return len(staircase(I))


def minimal_polynomial(I: Ideal, var) -> UniPoly:
    """Monic least-degree p over Q with p(var) in I.

    Found by the first exact linear dependency among the normal forms of
    1, var, var^2, ... expressed in staircase coordinates.
    """
    I = reduced_gb(I)
    basis = staircase(I)
    if not basis:
        return UniPoly([1])
    index = {m: i for i, m in enumerate(basis)}
    v = TernaryPoly.variable(var)
    powers = []
    cur = normal_form(TernaryPoly.constant(1), I)
    while True:
        vec = [Fraction(0)] * len(basis)
        for m, c in cur.terms.items():
            vec[index[m]] = Fraction(c)
        if powers:
            cols = QMatrix(list(zip(*powers)), ncols=len(powers))
            sol = solve_exact(cols, vec)
            if sol is not None:
                return UniPoly([-s for s in sol] + [1])
        powers.append(vec)
        if len(powers) > len(basis) + 1:
            raise NotZeroDimensionalError("no linear dependency found")
        cur = normal_form(cur * v, I)


def polynomial_in_variable(p: UniPoly, var) -> TernaryPoly:
    """The ternary polynomial p(var)."""
    i = VAR_INDEX[var]
    terms = {}
    for e, c in enumerate(p.coeffs):
        if c:
            m = [0, 0, 0]
            m[i] = e
            terms[tuple(m)] = c
    return TernaryPoly(terms)


def zero_dim_radical(I: Ideal) -> Ideal:
    """The radical of a zero-dimensional ideal (Seidenberg).

    Adds the square-free part of the minimal polynomial of every occurring
    variable; the staircase count of the result is the number of distinct
    solutions over the algebraic closure.
    """
    I = reduced_gb(I)
    if I.is_trivial():
        return I
    staircase(I)  # raises if not zero-dimensional
    gens = list(I.groebner())
    for var in I.support_variables():
        mp = minimal_polynomial(I, var)
        gens.append(polynomial_in_variable(squarefree_part(mp), var))
    return reduced_gb(Ideal(gens, I.order))


# ---------------------------------------------------------------------------
# certified projective point counts
# ---------------------------------------------------------------------------

def _draw_change(rng):
    return [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]


def _infinity_restriction(f: TernaryPoly):
    """The binary form f(x, y, 0) as {(a, b): coeff}; empty when z | f."""
    return {(m[0], m[1]): c for m, c in f.terms.items() if m[2] == 0}


def _no_common_zero_at_infinity(binary_forms) -> bool:
    """True when the restrictions to z = 0 share no projective root.

    The gcd of binary forms is nonconstant exactly when they share a root in
    the projective line over the closure; powers of x and y are split off so
    the rest reduces to a univariate gcd.
    """
    if any(not bf for bf in binary_forms):
        return False
    if min(min(a for a, _ in bf) for bf in binary_forms) > 0:
        return False  # x divides every restriction: common zero (0:1:0)
    if min(min(b for _, b in bf) for bf in binary_forms) > 0:
        return False  # y divides every restriction: common zero (1:0:0)
    g = None
    for bf in binary_forms:
        shift = min(b for _, b in bf)
        coeffs = [0] * (max(b for _, b in bf) - shift + 1)
        for (_, b), c in bf.items():
            coeffs[b - shift] = c
        p = UniPoly(coeffs)  # f(1, t) with t = y, the y-power split off
        g = p if g is None else uni_gcd(g, p)
        if g.degree() <= 0:
            return True
    return g.degree() <= 0


def _valid_changes(forms, rng, budget):
    """Yield (change, transformed forms) for generic coordinate changes.

    A draw is discarded when the matrix is singular or the transformed
    system still has a common zero on the line at infinity.
    """
    for _ in range(budget):
        M = _draw_change(rng)
        if det3(M) == 0:
            continue
        transformed = [apply_linear_change(f, M) for f in forms]
        if not _no_common_zero_at_infinity(
            [_infinity_restriction(f) for f in transformed]
        ):
            continue
        yield M, transformed


def _distinct_affine_count(transformed) -> int:
    ideal = Ideal([dehomogenize(f, "z") for f in transformed], DEGREVLEX)
    ideal = reduced_gb(ideal)
    if ideal.is_trivial():
        return 0
    return quotient_dimension(zero_dim_radical(ideal))


def count_projective_points(forms, seed=DEFAULT_SEED, max_retries=MAX_CHANGE_RETRIES) -> int:
    """Number of distinct common zeros in P^2 over the algebraic closure.

    The input curves must not share a component (guaranteed upstream by
    arrangement validation).  Two independent coordinate changes are used
    and their counts must agree exactly.
    """
    forms = [f for f in forms]
    if len(forms) < 2:
        raise ValueError("need at least two curves")
    rng = random.Random(seed)
    counts = []
    for _, transformed in _valid_changes(forms, rng, max_retries):
        counts.append(_distinct_affine_count(transformed))
        if len(counts) >= 2:
            if counts[-1] == counts[-2]:
                return counts[-1]
    if len(counts) < 2:
        raise CommonComponentError(
            "no coordinate change separates the system from the line at "
            "infinity; the curves likely share a common component"
        )
    raise VerificationMismatchError(
        f"coordinate changes disagree on the point count: {counts}"
    )


def rational_common_points(forms, seed=DEFAULT_SEED, max_retries=MAX_CHANGE_RETRIES):
    """All common zeros with rational coordinates, as primitive integer
    projective triples with positive last nonzero entry, sorted.

    Complete: every rational common zero is found (the coordinate change is
    rational and no common zero sits at the transformed infinity).
    """
    forms = [f for f in forms]
    if len(forms) < 2:
        raise ValueError("need at least two curves")
    rng = random.Random(seed)
    for M, transformed in _valid_changes(forms, rng, max_retries):
        ideal = reduced_gb(Ideal([dehomogenize(f, "z") for f in transformed]))
        if ideal.is_trivial():
            return []
        rad = zero_dim_radical(ideal)
        points = []
        xvar = TernaryPoly.variable("x")
        for a in minimal_polynomial(rad, "x").rational_roots():
            slice_ideal = reduced_gb(
                Ideal(rad.groebner() + (xvar - TernaryPoly.constant(a),))
            )
            if slice_ideal.is_trivial():
                continue
            for b in minimal_polynomial(slice_ideal, "y").rational_roots():
                if all(f.evaluate((a, b, 1)) == 0 for f in transformed):
                    px = M[0][0] * a + M[0][1] * b + M[0][2]
                    py = M[1][0] * a + M[1][1] * b + M[1][2]
                    pz = M[2][0] * a + M[2][1] * b + M[2][2]
                    points.append(normalize_projective((px, py, pz)))
        return sorted(points)
    raise CommonComponentError(
        "no coordinate change separates the system from the line at infinity"
    )


def normalize_projective(point):
    """Primitive integer representative with positive last nonzero entry."""
    from math import gcd

    fracs = [Fraction(v) for v in point]
    if not any(fracs):
        raise ValueError("(0:0:0) is not a projective point")
    den = 1
    for v in fracs:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    last = next(v for v in reversed(ints) if v)
    if last < 0:
        ints = [-v for v in ints]
    return tuple(ints)
