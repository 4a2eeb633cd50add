"""Conic-line arrangements: validation, incidence combinatorics, ordinarity.

An arrangement is a list of distinct lines and smooth conics in the rational
projective plane.  The weak combinatorics (d, k; t_2, ...) records how many
points have exactly j components through them; the counts are derived purely
from exact point counts of component subsets by inclusion-exclusion, never
from point coordinates, so irrational intersection points cost nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, gcd

from .errors import (
    DegenerateConicError,
    DegenerateLineError,
    DuplicateComponentError,
    EmptyArrangementError,
    ValidationError,
)
from .groebner import (
    DEFAULT_SEED,
    count_projective_points,
    rational_common_points,
)
from .poly import TernaryPoly, poly_product


def _normalize_coeffs(coeffs):
    """Primitive integer tuple with positive first nonzero entry."""
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g == 0:
        return tuple(coeffs)
    first = next(c for c in coeffs if c)
    if first < 0:
        g = -g
    return tuple(c // g for c in coeffs)


class LineForm:
    """A projective line a*x + b*y + c*z = 0 with integer coefficients.

    Stored primitive with positive first nonzero coefficient, so proportional
    inputs collapse to the same value.
    """

    __slots__ = ("coeffs",)
    degree = 1

    def __init__(self, a, b, c):
        if a == b == c == 0:
            raise DegenerateLineError("line 0 0 0 does not define a line")
        self.coeffs = _normalize_coeffs((a, b, c))

    @classmethod
    def from_poly(cls, p: TernaryPoly) -> "LineForm":
        if p.degree() != 1 or not p.is_homogeneous():
            raise ValidationError(f"not a linear form: {p.render()}")
        return cls(
            p.coefficient((1, 0, 0)),
            p.coefficient((0, 1, 0)),
            p.coefficient((0, 0, 1)),
        )

    def poly(self) -> TernaryPoly:
        a, b, c = self.coeffs
        return TernaryPoly({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    def __eq__(self, other):
        return isinstance(other, LineForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("line", self.coeffs))

    def render(self) -> str:
        return self.poly().render()

    def __repr__(self):
        return f"LineForm({self.render()})"


_CONIC_MONOMIALS = (
    (2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1),
)


class ConicForm:
    """A conic a_xx x^2 + a_yy y^2 + a_zz z^2 + a_xy xy + a_xz xz + a_yz yz.

    Stored primitive with positive first nonzero coefficient.  Smoothness is
    determinant-nonzero of the associated symmetric matrix and is checked by
    arrangement validation, not on construction.
    """

    __slots__ = ("coeffs",)
    degree = 2

    def __init__(self, axx, ayy, azz, axy, axz, ayz):
        if not any((axx, ayy, azz, axy, axz, ayz)):
            raise DegenerateConicError("conic with all coefficients zero")
        self.coeffs = _normalize_coeffs((axx, ayy, azz, axy, axz, ayz))

    @classmethod
    def from_poly(cls, p: TernaryPoly) -> "ConicForm":
        if p.degree() != 2 or not p.is_homogeneous():
            raise ValidationError(f"not a quadratic form: {p.render()}")
        return cls(*(p.coefficient(m) for m in _CONIC_MONOMIALS))

    def poly(self) -> TernaryPoly:
        return TernaryPoly(dict(zip(_CONIC_MONOMIALS, self.coeffs)))

    def symmetric_matrix(self):
        axx, ayy, azz, axy, axz, ayz = self.coeffs
        return (
            (2 * axx, axy, axz),
            (axy, 2 * ayy, ayz),
            (axz, ayz, 2 * azz),
        )

    def is_smooth(self) -> bool:
        (a, b, c), (d, e, f), (g, h, i) = self.symmetric_matrix()
        det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
        return det != 0

    def __eq__(self, other):
        return isinstance(other, ConicForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("conic", self.coeffs))

    def render(self) -> str:
        return self.poly().render()

    def __repr__(self):
        return f"ConicForm({self.render()})"


class Arrangement:
    """An ordered list of line and conic components with a label.

    Component order is preserved from the source (it names the components in
    reports); validation checks smoothness and pairwise distinctness.
    """

    __slots__ = ("components", "label", "_validated")

    def __init__(self, components, label=""):
        self.components = tuple(components)
        self.label = label
        self._validated = False

    @property
    def lines(self):
        return tuple(c for c in self.components if isinstance(c, LineForm))

    @property
    def conics(self):
        return tuple(c for c in self.components if isinstance(c, ConicForm))

    @property
    def line_count(self) -> int:
        return len(self.lines)

    @property
    def conic_count(self) -> int:
        return len(self.conics)

    @property
    def degree(self) -> int:
        """Degree of the defining polynomial: d + 2k."""
        return sum(c.degree for c in self.components)

    def is_conic_line(self) -> bool:
        """True when there is at least one line and one conic (the class the
        weak-combinatorics vector (d, k; t_j) was coined for)."""
        return self.line_count >= 1 and self.conic_count >= 1

    @property
    def validated(self) -> bool:
        return self._validated

    def require_validated(self):
        if not self._validated:
            raise ValidationError("arrangement was not validated")

    def __repr__(self):
        return f"Arrangement({self.label or '?'}: {len(self.components)} components)"


def validate(arrangement: Arrangement) -> Arrangement:
    """Check the arrangement and mark it validated.

    Every conic must be smooth and no two components may be proportional
    (so the defining polynomial is reduced).  Pure line arrangements and a
    single smooth conic are accepted; ``is_conic_line`` reports whether the
    arrangement is in the conic-line class proper.
    """
    if not arrangement.components:
        raise EmptyArrangementError("arrangement has no components")
    for c in arrangement.conics:
        if not c.is_smooth():
            raise DegenerateConicError(f"conic {c.render()} is not smooth")
    seen = {}
    for i, c in enumerate(arrangement.components):
        if c in seen:
            raise DuplicateComponentError(
                f"components {seen[c]} and {i} are proportional: {c.render()}"
            )
        seen[c] = i
    arrangement._validated = True
    return arrangement


def defining_polynomial(arrangement: Arrangement) -> TernaryPoly:
    """Expanded product of the component forms (degree d + 2k, reduced)."""
    arrangement.require_validated()
    return poly_product([c.poly() for c in arrangement.components])


# ---------------------------------------------------------------------------
# incidence combinatorics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableEntry:
    """Points through which exactly the listed components pass.

    ``points`` carries the actual projective coordinates when every such
    point is rational, else None (the count is exact either way).
    """

    components: tuple
    count: int
    points: tuple | None

    @property
    def multiplicity(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class SingularPointTable:
    """Exact component-set counts for all multiple points of the union."""

    entries: tuple
    pair_counts: tuple  # ((i, j), count) for every unordered component pair

    def t(self) -> dict:
        out = {}
        for e in self.entries:
            out[e.multiplicity] = out.get(e.multiplicity, 0) + e.count
        return dict(sorted(out.items()))

    def max_multiplicity(self) -> int:
        return max((e.multiplicity for e in self.entries), default=0)

    def total_points(self) -> int:
        return sum(e.count for e in self.entries)

    def pair_count_map(self) -> dict:
        return {pair: n for pair, n in self.pair_counts}


def component_set_table(arrangement: Arrangement, seed=DEFAULT_SEED) -> SingularPointTable:
    """Inclusion-exclusion table of exact-incidence counts.

    For every subset T of components the number N_T of common points is
    computed exactly; supersets of empty intersections are pruned.  The
    exact-set count of S is then sum over T containing S of (-1)^{|T|-|S|} N_T.
    Rational coordinates are attached to an entry whenever they account for
    its full count.
    """
    arrangement.require_validated()
    forms = [c.poly() for c in arrangement.components]
    n = len(forms)

    counts = {}
    pair_counts = []
    level = {}
    for i, j in combinations(range(n), 2):
        nij = count_projective_points((forms[i], forms[j]), seed=seed)
        pair_counts.append(((i, j), nij))
        if nij:
            key = frozenset((i, j))
            counts[key] = nij
            level[key] = nij
    size = 2
    while level and size < n:
        nxt = {}
        survivors = set(level)
        for T in sorted(level, key=sorted):
            top = max(T)
            for i in range(top + 1, n):
                cand = T | {i}
                if len(cand) != size + 1 or cand in nxt:
                    continue
                if any(cand - {j} not in survivors for j in cand):
                    continue
                nc = count_projective_points([forms[j] for j in sorted(cand)], seed=seed)
                if nc:
                    nxt[cand] = nc
        counts.update(nxt)
        level = nxt
        size += 1

    # Moebius inversion over the subset lattice (absent sets have N = 0)
    exact = {}
    for S in counts:
        e = 0
        for T, nt in counts.items():
            if S <= T:
                e += nt if (len(T) - len(S)) % 2 == 0 else -nt
        if e < 0:
            raise ValidationError(
                "inclusion-exclusion produced a negative count; this is a bug"
            )
        if e:
            exact[S] = e

    # rational points, clustered by their full incidence set
    clusters = {}
    for (i, j), nij in pair_counts:
        if not nij:
            continue
        for p in rational_common_points((forms[i], forms[j]), seed=seed):
            incident = frozenset(
                idx for idx, f in enumerate(forms) if f.evaluate(p) == 0
            )
            clusters.setdefault(incident, set()).add(p)

    entries = []
    for S in sorted(exact, key=lambda s: (len(s), sorted(s))):
        pts = clusters.get(S, set())
        attached = tuple(sorted(pts)) if len(pts) == exact[S] else None
        entries.append(TableEntry(tuple(sorted(S)), exact[S], attached))
    return SingularPointTable(tuple(entries), tuple(pair_counts))


@dataclass(frozen=True)
class WeakCombinatorics:
    """The vector (d, k; t_2, ..., t_max): component counts by degree plus
    the number of points where exactly j components meet."""

    d: int
    k: int
    t: tuple  # ((j, t_j), ...) ascending, nonzero entries only

    def t_map(self) -> dict:
        return dict(self.t)

    def max_j(self) -> int:
        return max((j for j, _ in self.t), default=0)

    def as_text(self) -> str:
        tm = self.t_map()
        js = range(2, self.max_j() + 1)
        return f"({self.d},{self.k};{','.join(str(tm.get(j, 0)) for j in js)})"

    def __repr__(self):
        return f"WeakCombinatorics{self.as_text()}"


def weak_combinatorics(
    arrangement: Arrangement, seed=DEFAULT_SEED, table: SingularPointTable | None = None
) -> WeakCombinatorics:
    arrangement.require_validated()
    if table is None:
        table = component_set_table(arrangement, seed=seed)
    return WeakCombinatorics(
        d=arrangement.line_count,
        k=arrangement.conic_count,
        t=tuple(sorted(table.t().items())),
    )


# ---------------------------------------------------------------------------
# ordinarity and quasi-homogeneity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairCheck:
    i: int
    j: int
    count: int
    expected: int  # deg_i * deg_j, the Bezout number

    @property
    def transverse(self) -> bool:
        return self.count == self.expected


@dataclass(frozen=True)
class OrdinarityReport:
    pairs: tuple

    @property
    def ordinary(self) -> bool:
        return all(p.transverse for p in self.pairs)

    def failing_pairs(self):
        return tuple(p for p in self.pairs if not p.transverse)


def ordinarity_check(
    arrangement: Arrangement, seed=DEFAULT_SEED, table: SingularPointTable | None = None
) -> OrdinarityReport:
    """Pairwise transversality via Bezout.

    A pair meets everywhere transversally iff its number of distinct common
    points equals the product of the degrees.  All components being smooth,
    pairwise transversality at a point forces distinct tangents there, so
    the overall flag certifies that every singularity of the union is
    ordinary.
    """
    arrangement.require_validated()
    comps = arrangement.components
    known = table.pair_count_map() if table is not None else {}
    checks = []
    for i, j in combinations(range(len(comps)), 2):
        nij = known.get((i, j))
        if nij is None:
            nij = count_projective_points(
                (comps[i].poly(), comps[j].poly()), seed=seed
            )
        checks.append(PairCheck(i, j, nij, comps[i].degree * comps[j].degree))
    return OrdinarityReport(tuple(checks))


@dataclass(frozen=True)
class QuasiHomogeneityReport:
    certified: bool
    heavy_entries: tuple  # table entries of multiplicity >= 5

    def note(self) -> str:
        if self.certified:
            return "all multiple points have multiplicity < 5"
        heavy = ", ".join(
            f"multiplicity {e.multiplicity} (components {e.components})"
            for e in self.heavy_entries
        )
        return f"not automatically quasi-homogeneous: {heavy}"


def quasi_homogeneity_check(table: SingularPointTable) -> QuasiHomogeneityReport:
    """Ordinary points of multiplicity below five are quasi-homogeneous;
    entries of multiplicity five or more are flagged, not classified."""
    heavy = tuple(e for e in table.entries if e.multiplicity >= 5)
    return QuasiHomogeneityReport(certified=not heavy, heavy_entries=heavy)


def incidence_identity_holds(table: SingularPointTable) -> bool:
    """Sum over j of binom(j, 2) t_j equals the sum of pairwise counts."""
    lhs = sum(comb(e.multiplicity, 2) * e.count for e in table.entries)
    rhs = sum(n for _, n in table.pair_counts)
    return lhs == rhs
