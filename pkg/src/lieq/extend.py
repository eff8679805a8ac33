"""Central extensions of Lie algebras and their coboundary equivalence.

Only the central case is implemented: the adjoined space V sits inside the
center of the extension, and the new bracket is [x+u, y+v] = [x,y] + theta(x,y)
for a 2-cocycle theta with values in V and trivial action.  Any algebra with
nontrivial center arises this way from its central quotient, and the
construction only moves by a coboundary when the complement section changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .cohomology import Cochain
from .exactnum import GaussRat, LieqError, gauss
from .liealg import LieAlgebra, Quotient
from .linalg import Subspace, Vec, nullspace, vec_add


class CocycleViolation(LieqError):
    """Values fail the cyclic 2-cocycle condition or break the extension."""


class TrivialCenter(LieqError):
    """Reconstruction requested for an algebra with zero center."""


class CentralCocycle:
    """Alternating bilinear map g x g -> V given on basis pairs i < j,
    verified against the cyclic condition at construction."""

    def __init__(self, source: LieAlgebra, target_dim: int, values: Mapping[tuple[int, int], Mapping] | None):
        if target_dim < 1:
            raise ValueError("target dimension must be at least 1")
        self.source = source
        self.target_dim = target_dim
        clean: dict[tuple[int, int], Vec] = {}
        for (i, j), raw in (values or {}).items():
            i, j = int(i), int(j)
            if not 0 <= i < j < source.dim:
                raise ValueError(f"pair ({i}, {j}) must satisfy 0 <= i < j < dim")
            vec: Vec = {}
            for k, scalar in raw.items():
                s = gauss(scalar)
                if s is None:
                    raise TypeError(f"bad scalar {scalar!r}")
                k = int(k)
                if not 0 <= k < target_dim:
                    raise ValueError("target coordinate out of range")
                if s:
                    vec[k] = s
            if vec:
                clean[(i, j)] = vec
        self.values = clean
        self._verify_cyclic()

    def pair(self, i: int, j: int) -> Vec:
        if i == j:
            return {}
        if i < j:
            return dict(self.values.get((i, j), {}))
        flipped = self.values.get((j, i))
        return {k: -v for k, v in flipped.items()} if flipped else {}

    def eval_vec(self, w: Vec, j: int) -> Vec:
        """theta(w, e_j) for a sparse vector w."""
        out: Vec = {}
        for l, coeff in w.items():
            vec_add(out, self.pair(l, j), coeff)
        return out

    def _verify_cyclic(self):
        g = self.source
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                w_ij = g.pair(i, j)
                for k in range(j + 1, g.dim):
                    total: Vec = {}
                    vec_add(total, self.eval_vec(w_ij, k))
                    vec_add(total, self.eval_vec(g.pair(k, i), j))
                    vec_add(total, self.eval_vec(g.pair(j, k), i))
                    if total:
                        raise CocycleViolation(
                            f"cyclic condition fails on triple ({i + 1}, {j + 1}, {k + 1})"
                        )

    def as_cochain(self) -> Cochain:
        return Cochain(self.source, 2, self.target_dim, dict(self.values))

    def to_doc(self) -> dict:
        entries = []
        for (i, j) in sorted(self.values):
            vec = self.values[(i, j)]
            entries.append(
                {"i": i + 1, "j": j + 1, "out": {str(k + 1): str(vec[k]) for k in sorted(vec)}}
            )
        return {"format": "lieq-1", "target_dim": self.target_dim, "values": entries}

    @classmethod
    def from_doc(cls, source: LieAlgebra, doc: Mapping) -> "CentralCocycle":
        values = {}
        for entry in doc.get("values", []):
            pair = (int(entry["i"]) - 1, int(entry["j"]) - 1)
            values[pair] = {int(k) - 1: GaussRat(s) for k, s in entry["out"].items()}
        return cls(source, int(doc["target_dim"]), values)


def central_extension(g: LieAlgebra, theta: CentralCocycle) -> LieAlgebra:
    """The algebra g + V with bracket [x+u, y+v] = [x,y] + theta(x,y).

    The V coordinates are central by construction; the output is Jacobi
    checked, so a theta built around the constructor verification cannot
    slip through."""
    if theta.source is not g and not theta.source.same_constants(g):
        raise CocycleViolation("cocycle attached to a different algebra")
    n, v = g.dim, theta.target_dim
    brackets: dict[tuple[int, int], Vec] = {}
    for i in range(n):
        for j in range(i + 1, n):
            vec: Vec = dict(g.brackets.get((i, j), {}))
            for k, value in theta.pair(i, j).items():
                vec[n + k] = value
            if vec:
                brackets[(i, j)] = vec
    labels = list(g.labels) + [f"w{k + 1}" for k in range(v)]
    out = LieAlgebra(n + v, brackets, labels)
    if out.check_jacobi() is not None:
        raise CocycleViolation("extension failed the Jacobi identity")
    return out


def cocycle_kernel(theta: CentralCocycle) -> Subspace:
    """theta^+ = {x : theta(x, y) = 0 for all y}, the radical of theta."""
    g = theta.source
    rows: list[Vec] = []
    for j in range(g.dim):
        for out_coord in range(theta.target_dim):
            row: Vec = {}
            for i in range(g.dim):
                value = theta.pair(i, j).get(out_coord)
                if value:
                    row[i] = value
            if row:
                rows.append(row)
    return Subspace(g.dim, nullspace(rows, g.dim))


@dataclass
class ShiftIso:
    """Explicit isomorphism g_theta' -> g_theta, theta' = theta - c' o bracket,
    given by (x, v) -> (x, v + c'(x))."""

    source_algebra: LieAlgebra
    target_algebra: LieAlgebra
    shifted: CentralCocycle
    matrix_rows: list[Vec]

    def apply(self, vec: Vec) -> Vec:
        out: Vec = {}
        for r, row in enumerate(self.matrix_rows):
            total = None
            for c, coeff in row.items():
                x = vec.get(c)
                if x is not None:
                    total = coeff * x if total is None else total + coeff * x
            if total:
                out[r] = total
        return out


def coboundary_shift_iso(g: LieAlgebra, theta: CentralCocycle, c_prime: Cochain) -> ShiftIso:
    """Shift theta by the coboundary of a degree-1 cochain with values in V
    and return the linear map identifying the two extensions.

    The map is verified to intertwine the brackets on every basis pair of
    the extended algebras; this is an identity, so failure is a bug."""
    if c_prime.degree != 1 or c_prime.module_dim != theta.target_dim:
        raise ValueError("shift needs a degree-1 cochain with values in V")
    n, v = g.dim, theta.target_dim
    shifted_values: dict[tuple[int, int], Vec] = {}
    for i in range(n):
        for j in range(i + 1, n):
            vec = dict(theta.pair(i, j))
            # theta'(x, y) = theta(x, y) - c'([x, y])
            for l, coeff in g.pair(i, j).items():
                vec_add(vec, c_prime.value((l,)), -coeff)
            if vec:
                shifted_values[(i, j)] = vec
    shifted = CentralCocycle(g, v, shifted_values)
    g_theta = central_extension(g, theta)
    g_shifted = central_extension(g, shifted)

    rows: list[Vec] = [dict() for _ in range(n + v)]
    for i in range(n):
        rows[i][i] = GaussRat(1)
        for k, value in c_prime.value((i,)).items():
            rows[n + k][i] = value
    for k in range(v):
        rows[n + k][n + k] = rows[n + k].get(n + k, GaussRat(0)) + GaussRat(1)
        if not rows[n + k][n + k]:
            del rows[n + k][n + k]

    iso = ShiftIso(g_shifted, g_theta, shifted, rows)
    for i in range(n + v):
        for j in range(i + 1, n + v):
            lhs = iso.apply(g_shifted.pair(i, j))
            rhs = g_theta.bracket(iso.apply({i: GaussRat(1)}), iso.apply({j: GaussRat(1)}))
            if lhs != rhs:
                raise LieqError(f"shift map failed to intertwine on pair ({i + 1}, {j + 1})")
    return iso


def induced_cocycle(g: LieAlgebra) -> tuple[Quotient, CentralCocycle]:
    """Present g as a central extension of g/Z(g): quotient, echelon section s,
    and theta(x, y) = Z-component of [s(x), s(y)] with values in Z(g)."""
    center = g.center()
    if center.dim == 0:
        raise TrivialCenter("algebra has no center to peel off")
    quotient = g.quotient(center)
    q = quotient.algebra
    values: dict[tuple[int, int], Vec] = {}
    for a in range(q.dim):
        for b in range(a + 1, q.dim):
            w = g.pair(quotient.complement[a], quotient.complement[b])
            # split w = s(projection) + central part
            central_part = dict(w)
            vec_add(central_part, quotient.section(quotient.project(w)), GaussRat(-1))
            coords = center.coordinates(central_part)
            if coords is None:
                raise LieqError("central part escaped the center")
            vec = {k: c for k, c in enumerate(coords) if c}
            if vec:
                values[(a, b)] = vec
    theta = CentralCocycle(q, center.dim, values)
    return quotient, theta
