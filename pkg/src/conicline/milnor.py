"""Graded pieces of the Jacobian syzygy module and the resolution engine.

For a reduced homogeneous f of degree d, the syzygies AR(f) are the triples
(a, b, c) with a f_x + b f_y + c f_z = 0.  Every graded computation here is
dense exact linear algebra on monomial-coefficient matrices: kernels give
the graded pieces AR(f)_r, echelon completion picks canonical minimal
generators, and the same machinery one level up yields the relations among
the generators, i.e. the full minimal graded free resolution of the Milnor
algebra S/J_f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    ClassificationInconsistencyError,
    NonHomogeneousError,
    ResolutionNotStabilizedError,
)
from .linalg import EchelonAccumulator, _bareiss_forward, _rref_int, _to_int_row, kernel_from_rref
from .poly import TernaryPoly, mono_mul, monomial_basis, monomial_index


def tri(s: int) -> int:
    """dim of the degree-s graded piece of Q[x,y,z]: (s+2)(s+1)/2 for s >= 0."""
    return (s + 2) * (s + 1) // 2 if s >= 0 else 0


@dataclass(frozen=True)
class JacobianTriple:
    fx: TernaryPoly
    fy: TernaryPoly
    fz: TernaryPoly

    def __iter__(self):
        return iter((self.fx, self.fy, self.fz))


def jacobian(f: TernaryPoly) -> JacobianTriple:
    """The three partial derivatives; Euler's identity x f_x + y f_y + z f_z
    = d f holds exactly for homogeneous f."""
    if f.is_zero() or not f.is_homogeneous() or f.degree() == 0:
        raise NonHomogeneousError("jacobian needs a nonconstant homogeneous form")
    return JacobianTriple(f.partial("x"), f.partial("y"), f.partial("z"))


@dataclass(frozen=True)
class SyzygyVector:
    """A triple (a, b, c) of forms of one common degree with
    a f_x + b f_y + c f_z = 0."""

    a: TernaryPoly
    b: TernaryPoly
    c: TernaryPoly

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def degree(self) -> int:
        return max(p.degree() for p in self)

    def pairs_to_zero(self, jac: JacobianTriple) -> bool:
        total = self.a * jac.fx + self.b * jac.fy + self.c * jac.fz
        return total.is_zero()


# ---------------------------------------------------------------------------
# graded matrices
# ---------------------------------------------------------------------------

def _prepare(f: TernaryPoly) -> TernaryPoly:
    if f.is_zero() or not f.is_homogeneous():
        raise NonHomogeneousError("need a nonzero homogeneous form")
    return f.primitive()


def _syzygy_rows(jac, r: int, d: int):
    """Coefficient matrix of (a,b,c) -> a f_x + b f_y + c f_z on degree-r
    triples: rows indexed by the degree r+d-1 monomials (descending), columns
    slot-major (a block, b block, c block), monomials descending per block."""
    if r < 0:
        return [], 0
    target = monomial_index(r + d - 1)
    basis_r = monomial_basis(r)
    width = len(basis_r)
    ncols = 3 * width
    rows = [[0] * ncols for _ in range(len(target))]
    col = 0
    for part in jac:
        items = list(part.terms.items())
        for mu in basis_r:
            a, b, c = mu
            for (ma, mb, mc), coeff in items:
                rows[target[(ma + a, mb + b, mc + c)]][col] = coeff
            col += 1
    return rows, ncols


def _vector_to_syzygy(vec, r: int) -> SyzygyVector:
    basis_r = monomial_basis(r)
    width = len(basis_r)
    polys = []
    for slot in range(3):
        terms = {}
        for i, mu in enumerate(basis_r):
            v = vec[slot * width + i]
            if v:
                terms[mu] = v
        polys.append(TernaryPoly(terms))
    return SyzygyVector(*polys)


def _syzygy_coords(s: SyzygyVector, r: int):
    index_r = monomial_index(r)
    width = len(index_r)
    vec = [0] * (3 * width)
    for slot, p in enumerate(s):
        for m, c in p.terms.items():
            vec[slot * width + index_r[m]] = c
    return vec


def _primitive_vector(vec):
    """Scale a rational vector to coprime integers, first nonzero positive."""
    den = 1
    for v in vec:
        d = v.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    first = next((v for v in ints if v), 0)
    if first < 0:
        g = -g
    if g not in (0, 1):
        ints = [v // g for v in ints]
    return ints


def ar_dimension(f: TernaryPoly, r: int) -> int:
    """dim AR(f)_r by exact rank (nullity of the syzygy matrix)."""
    f = _prepare(f)
    jac = jacobian(f)
    rows, ncols = _syzygy_rows(jac, r, f.degree())
    return _nullity(rows, ncols)


def _nullity(rows, ncols) -> int:
    work = [row for row in rows if any(row)]
    pivots = _bareiss_forward(work, ncols)
    return ncols - len(pivots)


def ar_graded_basis(f: TernaryPoly, r: int):
    """Canonical basis of AR(f)_r (reduced-echelon kernel of the syzygy
    matrix); every returned triple satisfies a f_x + b f_y + c f_z = 0
    exactly."""
    f = _prepare(f)
    jac = jacobian(f)
    rows, ncols = _syzygy_rows(jac, r, f.degree())
    rref_rows, pivots = _rref_int(rows, ncols)
    vectors = kernel_from_rref(rref_rows, pivots, ncols)
    return [_vector_to_syzygy(v, r) for v in vectors]


def mdr(f: TernaryPoly) -> int:
    """Least r with AR(f)_r nonzero; at most d-1 because (f_y, -f_x, 0) is a
    nonzero syzygy there."""
    f = _prepare(f)
    d = f.degree()
    if d < 2:
        raise NonHomogeneousError("mdr needs degree at least 2")
    jac = jacobian(f)
    for r in range(d):
        rows, ncols = _syzygy_rows(jac, r, d)
        if _nullity(rows, ncols) > 0:
            return r
    raise ResolutionNotStabilizedError("no syzygy found up to degree d-1")


def milnor_dimension(f: TernaryPoly, t: int) -> int:
    """dim (S/J_f)_t by exact rank of the span of the monomial multiples of
    the partial derivatives inside degree t."""
    if t < 0:
        return 0
    f = _prepare(f)
    d = f.degree()
    jac = jacobian(f)
    rows, ncols = _syzygy_rows(jac, t - d + 1, d)
    if ncols == 0:
        return tri(t)
    work = [row for row in rows if any(row)]
    rank = len(_bareiss_forward(work, ncols))
    return tri(t) - rank


def global_tjurina(f: TernaryPoly, resolution: "Resolution | None" = None) -> int:
    """The stabilized value of dim (S/J_f)_t.

    Probed at two consecutive degrees past the stabilization threshold of
    the minimal resolution; the probes must agree with each other and with
    the constant the resolution predicts.
    """
    f = _prepare(f)
    if resolution is None:
        resolution = assemble_resolution(f)
    t0 = max(resolution.stabilization_degree(), 0)
    probes = (milnor_dimension(f, t0), milnor_dimension(f, t0 + 1))
    predicted = resolution.hilbert_value(t0)
    if probes[0] != probes[1] or probes[0] != predicted:
        raise ResolutionNotStabilizedError(
            f"Milnor algebra dimensions {probes} at t={t0},{t0 + 1} do not "
            f"agree with the resolution's stable value {predicted}"
        )
    return probes[0]


# ---------------------------------------------------------------------------
# minimal resolution of the Milnor algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Resolution:
    """Shape of the minimal graded free resolution of S/J_f:

        0 -> (+)_j S(-e_j) -> (+)_i S(1-d-d_i) -> S(1-d)^3 -> S

    ``exponents`` are the d_i (ascending), ``shifts`` the e_j (ascending).
    A free curve has m = 2 generators and no shifts.
    """

    degree: int
    exponents: tuple
    shifts: tuple

    @property
    def m(self) -> int:
        return len(self.exponents)

    def hilbert_value(self, t: int) -> int:
        d = self.degree
        value = tri(t) - 3 * tri(t - d + 1)
        for di in self.exponents:
            value += tri(t + 1 - d - di)
        for e in self.shifts:
            value -= tri(t - e)
        return value

    def stabilization_degree(self) -> int:
        """Least t from which hilbert_value is constant: two less than the
        largest twist in the resolution."""
        d = self.degree
        top = max([d + di - 1 for di in self.exponents] + list(self.shifts))
        return top - 2

    def tjurina_limit(self) -> int:
        return self.hilbert_value(self.stabilization_degree())

    def display(self) -> str:
        d = self.degree
        parts = ["0"]
        if self.shifts:
            parts.append(_sum_of_twists([-e for e in self.shifts]))
        parts.append(_sum_of_twists([1 - d - di for di in self.exponents]))
        parts.append(f"S({1 - d})^3")
        parts.append("S")
        return " -> ".join(parts)

    def __repr__(self):
        return f"Resolution({self.display()})"


def _sum_of_twists(twists) -> str:
    groups = {}
    for v in twists:
        groups[v] = groups.get(v, 0) + 1
    pieces = []
    for v in sorted(groups):  # most negative first = largest magnitude first
        mult = groups[v]
        pieces.append(f"S({v})" + (f"^{mult}" if mult > 1 else ""))
    return " (+) ".join(pieces)


@dataclass(frozen=True)
class ResolutionData:
    """Everything the sweep learns: the resolution, the generator vectors,
    the relation vectors (as coefficient tuples over the generators), and
    the graded dimensions dim AR(f)_r it verified along the way."""

    resolution: Resolution
    generators: tuple          # SyzygyVector, in selection order
    generator_degrees: tuple
    relations: tuple           # tuples of TernaryPoly coefficients
    relation_degrees: tuple
    ar_dims: dict

    @property
    def mdr(self) -> int:
        return self.resolution.exponents[0]


def _products_rows(gens, gen_degrees, r):
    """Coordinate vectors of all monomial multiples mu * g_i of degree r,
    generator-major, monomials descending; each row lives in (S_r)^3."""
    index_r = monomial_index(r)
    width = len(index_r)
    rows = []
    owners = []
    for gi, (g, dg) in enumerate(zip(gens, gen_degrees)):
        for mu in monomial_basis(r - dg):
            vec = [0] * (3 * width)
            for slot, p in enumerate(g):
                base = slot * width
                for m, c in p.terms.items():
                    vec[base + index_r[mono_mul(mu, m)]] = c
            rows.append(vec)
            owners.append((gi, mu))
    return rows, owners


def _relation_multiple_rows(relations, relation_degrees, owners, r):
    """Old relations lifted to degree r, as vectors over the degree-r
    products enumeration."""
    slot = {om: i for i, om in enumerate(owners)}
    rows = []
    for rel, rho in zip(relations, relation_degrees):
        for mu in monomial_basis(r - rho):
            vec = [0] * len(owners)
            for gi, ci in enumerate(rel):
                prod = ci.mul_monomial(mu)
                for m, c in prod.terms.items():
                    vec[slot[(gi, m)]] = c
            rows.append(vec)
    return rows


def _resolve(f: TernaryPoly, max_degree=None, preset_generators=None) -> ResolutionData:
    """Degree-by-degree syzygy sweep.

    At each degree r the kernel dimension of the syzygy matrix is compared
    with the span of the multiples of the generators found so far; echelon
    completion turns any defect into canonical new generators.  Relations
    among the generators are found the same way one level up, and the sweep
    ends two degrees past the last discovery.  The free-module checks along
    the way certify projective dimension <= 3; any inconsistency raises
    ResolutionNotStabilizedError.
    """
    f = _prepare(f)
    d = f.degree()
    if d < 2:
        raise NonHomogeneousError("resolution needs degree at least 2")
    jac = jacobian(f)
    cap = max_degree if max_degree is not None else 3 * d

    gens: list = []
    gen_degrees: list = []
    if preset_generators is not None:
        for g in preset_generators:
            if not g.pairs_to_zero(jac):
                raise ResolutionNotStabilizedError(
                    "preset generator is not a Jacobian syzygy"
                )
            gens.append(g)
            gen_degrees.append(g.degree())
    relations: list = []
    relation_degrees: list = []
    ar_dims: dict = {}

    r = 0
    while True:
        if r > cap:
            raise ResolutionNotStabilizedError(
                f"syzygy search passed degree {cap} without stabilizing"
            )
        width3 = 3 * len(monomial_basis(r))
        prows, owners = _products_rows(gens, gen_degrees, r)

        if preset_generators is None:
            rows, ncols = _syzygy_rows(jac, r, d)
            a_r = _nullity(rows, ncols)
            ar_dims[r] = a_r
            span = EchelonAccumulator(width3, prows)
            defect = a_r - span.rank
            if defect < 0:
                raise ResolutionNotStabilizedError(
                    "generator multiples exceed the syzygy space; this is a bug"
                )
            if defect:
                rref_rows, pivots = _rref_int(rows, ncols)
                kernel = kernel_from_rref(rref_rows, pivots, ncols)
                added = 0
                for vec in kernel:
                    if span.add(vec):
                        g = _vector_to_syzygy(_primitive_vector(vec), r)
                        gens.append(g)
                        gen_degrees.append(r)
                        prows.append(_syzygy_coords(g, r))
                        owners.append((len(gens) - 1, (0, 0, 0)))
                        added += 1
                if added != defect:
                    raise ResolutionNotStabilizedError(
                        "echelon completion did not close the syzygy defect"
                    )

        # relations among the current generators in degree r
        if gens:
            expected_old = sum(tri(r - rho) for rho in relation_degrees)
            old_rows = _relation_multiple_rows(relations, relation_degrees, owners, r)
            rel_span = EchelonAccumulator(len(owners), old_rows)
            if rel_span.rank != expected_old:
                raise ResolutionNotStabilizedError(
                    "the relations are not independent as a free module; "
                    "projective dimension exceeds the supported shape"
                )
            # kernel of the products (columns = products, rows = (S_r)^3)
            kernel_dim = len(owners) - _rank_of_rows(prows, width3)
            new_rels = kernel_dim - expected_old
            if new_rels < 0:
                raise ResolutionNotStabilizedError(
                    "relation count dropped below the free-module span"
                )
            if new_rels:
                cols_matrix = [
                    [prows[j][i] for j in range(len(prows))]
                    for i in range(width3)
                ]
                rref_rows, pivots = _rref_int(cols_matrix, len(owners))
                added = 0
                for vec in kernel_from_rref(rref_rows, pivots, len(owners)):
                    if rel_span.add(vec):
                        rel = _relation_from_vector(vec, owners, gens, jac)
                        relations.append(rel)
                        relation_degrees.append(r)
                        added += 1
                if added != new_rels:
                    raise ResolutionNotStabilizedError(
                        "relation completion did not close the defect"
                    )

        top_candidates = list(gen_degrees) + relation_degrees
        if top_candidates and r >= max(top_candidates) + 2 and len(gens) >= 2:
            break
        r += 1

    m = len(gens)
    if len(relations) != m - 2:
        raise ResolutionNotStabilizedError(
            f"{m} generators came with {len(relations)} relations; a plane "
            f"curve needs exactly m-2"
        )
    if sum(relation_degrees) != sum(gen_degrees) - (d - 1):
        raise ResolutionNotStabilizedError(
            "degree bookkeeping of generators and relations is inconsistent"
        )

    order = sorted(range(m), key=lambda i: (gen_degrees[i], i))
    exponents = tuple(gen_degrees[i] for i in order)
    shifts = tuple(sorted(rho + d - 1 for rho in relation_degrees))
    resolution = Resolution(degree=d, exponents=exponents, shifts=shifts)

    if preset_generators is None:
        for rr, dim in ar_dims.items():
            predicted = sum(tri(rr - di) for di in exponents) - sum(
                tri(rr - rho) for rho in relation_degrees
            )
            if dim != predicted:
                raise ResolutionNotStabilizedError(
                    f"dim AR_{rr} = {dim} but the candidate resolution "
                    f"predicts {predicted}"
                )

    return ResolutionData(
        resolution=resolution,
        generators=tuple(gens[i] for i in order),
        generator_degrees=exponents,
        relations=tuple(relations),
        relation_degrees=tuple(relation_degrees),
        ar_dims=ar_dims,
    )


def _rank_of_rows(rows, ncols) -> int:
    work = []
    for row in rows:
        ir = _to_int_row(row)
        if any(ir):
            work.append(ir)
    return len(_bareiss_forward(work, ncols))


def _relation_from_vector(vec, owners, gens, jac):
    """Turn a kernel vector over the product enumeration into polynomial
    coefficients (c_1, ..., c_m) and verify sum c_i g_i = 0 exactly."""
    coeffs = [dict() for _ in gens]
    for v, (gi, mu) in zip(vec, owners):
        if v:
            coeffs[gi][mu] = v
    rel = tuple(TernaryPoly(c) for c in coeffs)
    total_a = TernaryPoly()
    total_b = TernaryPoly()
    total_c = TernaryPoly()
    for ci, g in zip(rel, gens):
        total_a = total_a + ci * g.a
        total_b = total_b + ci * g.b
        total_c = total_c + ci * g.c
    if not (total_a.is_zero() and total_b.is_zero() and total_c.is_zero()):
        raise ResolutionNotStabilizedError("extracted relation is not a relation")
    return rel


def minimal_generators(f: TernaryPoly, max_degree=None):
    """(m, exponents, generators): a canonical minimal generating set of
    AR(f), exponents ascending."""
    data = _resolve(f, max_degree=max_degree)
    return data.resolution.m, data.resolution.exponents, data.generators


def second_syzygies(f: TernaryPoly, generators, max_degree=None):
    """Shifts e_1 <= ... <= e_{m-2} of the relations among the given
    generators; exactly m-2 must exist."""
    data = _resolve(f, max_degree=max_degree, preset_generators=list(generators))
    return data.resolution.shifts


def assemble_resolution(f: TernaryPoly, max_degree=None) -> Resolution:
    """The minimal graded free resolution of the Milnor algebra of f."""
    return _resolve(f, max_degree=max_degree).resolution


def resolve(f: TernaryPoly, max_degree=None) -> ResolutionData:
    """Full sweep output (resolution plus certified generator/relation data)."""
    return _resolve(f, max_degree=max_degree)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveClass:
    kind: str        # "free", "nearly free", or "m-syzygy"
    m: int
    exponents: tuple

    def label(self) -> str:
        return self.kind

    def __repr__(self):
        return f"CurveClass({self.kind}, exponents={self.exponents})"


def classify(resolution: Resolution) -> CurveClass:
    """Free for m = 2 (exponents must sum to d-1), nearly free for m = 3
    with d_1 + d_2 = d and d_2 = d_3, else plain m-syzygy."""
    ds = resolution.exponents
    d = resolution.degree
    if resolution.m == 2:
        if ds[0] + ds[1] != d - 1:
            raise ClassificationInconsistencyError(
                f"2-syzygy curve with exponents {ds} not summing to {d - 1}"
            )
        return CurveClass("free", 2, ds)
    if resolution.m == 3 and ds[0] + ds[1] == d and ds[1] == ds[2]:
        return CurveClass("nearly free", 3, ds)
    return CurveClass(f"{resolution.m}-syzygy", resolution.m, ds)


@dataclass(frozen=True)
class ZieglerVerdict:
    is_pair: bool
    same_combinatorics: bool
    mdr_a: int
    mdr_b: int
    combinatorics_a: object
    combinatorics_b: object
    reasons: tuple

    def __bool__(self):
        return self.is_pair


def is_weak_ziegler_pair(a, b) -> ZieglerVerdict:
    """Same weak combinatorics but different minimal degree of Jacobian
    relations.  ``a`` and ``b`` are analysis results exposing
    ``combinatorics`` and ``mdr``."""
    same = a.combinatorics == b.combinatorics
    differ = a.mdr != b.mdr
    reasons = []
    if same:
        reasons.append(f"weak combinatorics agree: {a.combinatorics.as_text()}")
    else:
        reasons.append(
            f"weak combinatorics differ: {a.combinatorics.as_text()} vs "
            f"{b.combinatorics.as_text()}"
        )
    if differ:
        reasons.append(f"mdr differs: {a.mdr} vs {b.mdr}")
    else:
        reasons.append(f"mdr agrees: {a.mdr}")
    return ZieglerVerdict(
        is_pair=same and differ,
        same_combinatorics=same,
        mdr_a=a.mdr,
        mdr_b=b.mdr,
        combinatorics_a=a.combinatorics,
        combinatorics_b=b.combinatorics,
        reasons=tuple(reasons),
    )
