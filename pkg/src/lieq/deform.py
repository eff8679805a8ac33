"""Linear and k-deformations of Lie brackets, graded Jacobi checks, rigidity.

A deformed bracket is the base bracket plus perturbation cochains graded by
powers of a formal parameter t.  The graded Jacobi expansion keeps every
cross term mu(x, phi(y,z)) + phi(x, mu(y,z)) and so on; nothing is assumed
to cancel, the polynomial is computed and reported as-is.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .cohomology import Cochain, adjoint_rep, cochain_from_coordinates, cocycle_space
from .exactnum import LaurentPoly, LieqError, gauss
from .liealg import LieAlgebra
from .linalg import Subspace, Vec, vec_add


class SourceMismatch(LieqError):
    """Perturbation cochain does not live on the base algebra."""


class NotLieAtParameter(LieqError):
    """Requested specialization is not a Lie bracket and no override given."""


class DeformationDefect(NamedTuple):
    triple: tuple[int, int, int]
    degree: int
    residual: Vec


@dataclass(frozen=True)
class DeformedBracket:
    """mu_t = mu + t phi_1 + ... + t^k phi_k."""

    base: LieAlgebra
    perturbations: tuple[Cochain, ...]
    parameter: str = "t"

    def __post_init__(self):
        if not self.perturbations:
            raise ValueError("need at least one perturbation cochain")
        for phi in self.perturbations:
            if phi.degree != 2:
                raise SourceMismatch("perturbations must be degree-2 cochains")
            if phi.module_dim != self.base.dim:
                raise SourceMismatch("perturbation values must lie in the algebra")
            if phi.source is not self.base and not phi.source.same_constants(self.base):
                raise SourceMismatch("perturbation attached to a different algebra")

    @property
    def order(self) -> int:
        return len(self.perturbations)

    def level(self, a: int, i: int, j: int) -> Vec:
        """Graded component a of the bracket on basis pair (i, j), signed."""
        if a == 0:
            return self.base.pair(i, j)
        phi = self.perturbations[a - 1]
        if i == j:
            return {}
        if i < j:
            return phi.value((i, j))
        return {k: -v for k, v in phi.value((j, i)).items()}

    def level_vec(self, a: int, i: int, w: Vec) -> Vec:
        """Graded component a of [e_i, w] for a sparse vector w."""
        out: Vec = {}
        for l, coeff in w.items():
            vec_add(out, self.level(a, i, l), coeff)
        return out


def make_linear_deformation(g: LieAlgebra, phi: Cochain) -> DeformedBracket:
    """The k = 1 family mu + t*phi; no Jacobi claim is made here."""
    return DeformedBracket(g, (phi,))


def jacobi_polynomial(d: DeformedBracket) -> dict[tuple[int, int, int], list[LaurentPoly]]:
    """Full graded expansion of the Jacobi sum of mu_t on every basis triple,
    as a length-n vector of polynomials in t per triple.  All cross terms
    between grading levels are retained."""
    g = d.base
    n = g.dim
    k = d.order
    out: dict[tuple[int, int, int], list[LaurentPoly]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(j + 1, n):
                by_degree: dict[int, Vec] = {}
                for a in range(k + 1):
                    for b in range(k + 1):
                        term: Vec = {}
                        vec_add(term, d.level_vec(a, i, d.level(b, j, l)))
                        vec_add(term, d.level_vec(a, j, d.level(b, l, i)))
                        vec_add(term, d.level_vec(a, l, d.level(b, i, j)))
                        if term:
                            slot = by_degree.setdefault(a + b, {})
                            vec_add(slot, term)
                            if not slot:
                                del by_degree[a + b]
                polys = [LaurentPoly.zero(d.parameter) for _ in range(n)]
                touched = False
                for degree, vec in by_degree.items():
                    for coord, value in vec.items():
                        polys[coord] = polys[coord] + LaurentPoly.monomial(
                            degree, value, d.parameter
                        )
                        touched = True
                if touched:
                    out[(i, j, l)] = polys
    return out


def deformation_is_lie(d: DeformedBracket) -> DeformationDefect | None:
    """None when the graded Jacobi polynomial vanishes identically, else the
    first offending triple with its t-degree and residual vector."""
    expansion = jacobi_polynomial(d)
    for triple in sorted(expansion):
        polys = expansion[triple]
        degrees = sorted({e for p in polys for e in p.coeffs})
        for degree in degrees:
            residual = {
                coord: p.coeffs[degree]
                for coord, p in enumerate(polys)
                if degree in p.coeffs
            }
            if residual:
                return DeformationDefect(triple, degree, residual)
    return None


def evaluate_at(d: DeformedBracket, t0, allow_non_lie: bool = False) -> LieAlgebra:
    """Structure constants mu + sum t0^a phi_a.  Unless the override flag is
    set, the graded Jacobi polynomial is evaluated at t0 and a nonzero
    residual raises NotLieAtParameter."""
    t0 = gauss(t0)
    g = d.base
    if not allow_non_lie:
        for triple, polys in jacobi_polynomial(d).items():
            for p in polys:
                if p.eval(t0):
                    raise NotLieAtParameter(
                        f"Jacobi residual at triple {tuple(x + 1 for x in triple)} for t = {t0}"
                    )
    brackets: dict[tuple[int, int], Vec] = {}
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            vec: Vec = dict(g.brackets.get((i, j), {}))
            for a in range(1, d.order + 1):
                vec_add(vec, d.level(a, i, j), t0 ** a)
            if vec:
                brackets[(i, j)] = vec
    return LieAlgebra(g.dim, brackets, g.labels)


@dataclass
class CandidateReport:
    """Z^2(g, g; ad) plus the per-basis-cocycle outcome of the honest full
    Jacobi filter (cocycle membership alone does not make mu + t*phi Lie)."""

    space: Subspace
    basis: list[Cochain]
    survivors: list[bool]

    @property
    def surviving_count(self) -> int:
        return sum(self.survivors)


def linear_deformation_candidates(g: LieAlgebra) -> CandidateReport:
    space = cocycle_space(2, g, adjoint_rep(g))
    basis = [cochain_from_coordinates(g, 2, g.dim, row) for row in space.rows]
    survivors = []
    for phi in basis:
        d = make_linear_deformation(g, phi)
        survivors.append(deformation_is_lie(d) is None)
    return CandidateReport(space, basis, survivors)


@dataclass
class RigidityReport:
    orbit_tangent_dim: int
    dim_b2: int
    dim_h2: int
    nr_rigid: bool
    tangent_equals_b2: bool

    def to_doc(self) -> dict:
        return {
            "orbit_tangent_dim": self.orbit_tangent_dim,
            "dim_b2": self.dim_b2,
            "dim_h2": self.dim_h2,
            "nr_rigid": self.nr_rigid,
            "tangent_equals_b2": self.tangent_equals_b2,
        }


def rigidity_report(g: LieAlgebra) -> RigidityReport:
    """Exact dimension bookkeeping behind the two rigidity detectors:
    orbit-tangent dim n^2 - dim Der versus dim B^2, and triviality of the
    deformation cohomology H^2.  Both numbers are reported; nothing is
    adjudicated when they disagree (abelian algebras do disagree)."""
    from .cohomology import coboundary_space, derivation_dims

    der_dim, _ = derivation_dims(g)
    tangent = g.dim * g.dim - der_dim
    ad = adjoint_rep(g)
    b2 = coboundary_space(2, g, ad).dim
    h2 = cocycle_space(2, g, ad).dim - b2
    return RigidityReport(
        orbit_tangent_dim=tangent,
        dim_b2=b2,
        dim_h2=h2,
        nr_rigid=h2 == 0,
        tangent_equals_b2=tangent == b2,
    )


def characteristically_nilpotent(g: LieAlgebra) -> bool:
    """True when Der(g) is nilpotent as a Lie algebra."""
    from .cohomology import derivation_algebra

    return derivation_algebra(g).algebra.is_nilpotent() is not None
