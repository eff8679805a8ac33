"""Chevalley-Eilenberg cochains, the differential, cocycles and coboundaries.

Conventions, fixed once:

* The differential raises degree, d : C^k -> C^{k+1}, with

      (dc)(x_1..x_{k+1}) = sum_i (-1)^{i+1} rho(x_i) c(.. x_i-hat ..)
                         + sum_{i<j} (-1)^{i+j} c([x_i, x_j], .. hats ..)

  which is the only direction under which d*d = 0 and ker/im make sense.
* Cochain coordinates are indexed by strictly increasing basis tuples in
  lexicographic order; inside a tuple slot, module coordinates run 0..m-1.
  That ordering is part of the wire format, so matrices of d are
  reproducible across runs.
"""

from __future__ import annotations

import itertools
from typing import Mapping, Sequence

from .exactnum import GaussRat, LieqError, ZERO, gauss
from .liealg import LieAlgebra
from .linalg import (
    Subspace,
    Vec,
    mat_mul,
    mat_sub,
    mat_vec,
    nullspace,
    nullspace_with_free,
    rank,
    vec_add,
)


class SourceMismatch(LieqError):
    """Cochain and representation disagree on algebra or module."""


class NotARepresentation(LieqError):
    """Matrices fail the bracket-preservation law."""


class Representation:
    """A Lie algebra homomorphism into gl(m), one matrix per basis vector.

    Matrices are rows-of-dicts.  kind is one of "adjoint", "trivial",
    "explicit"; explicit matrices are checked against the bracket law
    rho([x,y]) = rho(x)rho(y) - rho(y)rho(x) at construction.
    """

    def __init__(
        self,
        source: LieAlgebra,
        matrices: Sequence[Sequence[Vec]],
        kind: str = "explicit",
        module_dim: int | None = None,
    ):
        if len(matrices) != source.dim:
            raise SourceMismatch("need one matrix per basis vector")
        self.source = source
        self.matrices = tuple(tuple(dict(row) for row in mat) for mat in matrices)
        if module_dim is None:
            module_dim = len(self.matrices[0]) if self.matrices else 0
        self.module_dim = module_dim
        self.kind = kind
        if kind == "explicit":
            self._check_preserves_bracket()

    def _check_preserves_bracket(self):
        for i in range(self.source.dim):
            for j in range(i + 1, self.source.dim):
                lhs = _apply_to_matrix_combo(self, self.source.pair(i, j))
                rhs = _commutator(self.matrices[i], self.matrices[j])
                if lhs != rhs:
                    raise NotARepresentation(f"bracket law fails on pair ({i + 1}, {j + 1})")

    def apply(self, i: int, v: Vec) -> Vec:
        """rho(e_i) applied to a sparse module vector."""
        return mat_vec(self.matrices[i], v)


def _commutator(a: Sequence[Vec], b: Sequence[Vec]) -> list[Vec]:
    return [dict(r) for r in mat_sub(mat_mul(list(a), list(b)), mat_mul(list(b), list(a)))]


def _apply_to_matrix_combo(rep: Representation, coeffs: Vec) -> list[Vec]:
    out: list[Vec] = [dict() for _ in range(rep.module_dim)]
    for k, c in coeffs.items():
        for r, row in enumerate(rep.matrices[k]):
            vec_add(out[r], row, c)
    return out


def adjoint_rep(g: LieAlgebra) -> Representation:
    """ad(e_i) with columns [e_i, e_j]; a representation exactly when
    Jacobi holds, so unverified algebras are rejected."""
    witness = g.check_jacobi()
    if witness is not None:
        raise NotARepresentation(f"Jacobi fails at triple {witness.triple}")
    matrices = []
    for i in range(g.dim):
        rows: list[Vec] = [dict() for _ in range(g.dim)]
        for j in range(g.dim):
            for r, value in g.pair(i, j).items():
                rows[r][j] = value
        matrices.append(rows)
    return Representation(g, matrices, kind="adjoint", module_dim=g.dim)


def trivial_rep(g: LieAlgebra, module_dim: int = 1) -> Representation:
    matrices = [[{} for _ in range(module_dim)] for _ in range(g.dim)]
    return Representation(g, matrices, kind="trivial", module_dim=module_dim)


class Cochain:
    """Alternating k-linear map in coordinates: strictly increasing index
    tuples to sparse module vectors.  Degree 0 is the single ()-slot."""

    def __init__(self, source: LieAlgebra, degree: int, module_dim: int, coords: Mapping | None = None):
        if not 0 <= degree <= source.dim:
            raise ValueError(f"degree {degree} outside 0..{source.dim}")
        self.source = source
        self.degree = degree
        self.module_dim = module_dim
        clean: dict[tuple[int, ...], Vec] = {}
        for key, value in (coords or {}).items():
            key = tuple(int(x) for x in key)
            if len(key) != degree or any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"tuple {key} is not strictly increasing of length {degree}")
            if key and (key[0] < 0 or key[-1] >= source.dim):
                raise ValueError(f"tuple {key} outside basis range")
            if isinstance(value, dict):
                items = value.items()
            elif isinstance(value, (list, tuple)):
                items = enumerate(value)
            else:
                raise TypeError("coords values must be sparse dicts or sequences")
            vec: Vec = {}
            for i, raw in items:
                scalar = gauss(raw)
                if scalar is None:
                    raise TypeError(f"bad module scalar {raw!r}")
                i = int(i)
                if not 0 <= i < module_dim:
                    raise ValueError("module coordinate out of range")
                if scalar:
                    vec[i] = scalar
            if vec:
                clean[key] = vec
        self.coords = clean

    def value(self, key: tuple[int, ...]) -> Vec:
        return dict(self.coords.get(tuple(key), {}))

    def eval_pair(self, w: Vec, j: int) -> Vec:
        """Bilinear-alternating evaluation c(w, e_j) for degree-2 cochains."""
        if self.degree != 2:
            raise ValueError("eval_pair needs a degree-2 cochain")
        out: Vec = {}
        for l, coeff in w.items():
            if l == j:
                continue
            key = (l, j) if l < j else (j, l)
            stored = self.coords.get(key)
            if stored:
                vec_add(out, stored, coeff if l < j else -coeff)
        return out

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.module_dim == other.module_dim
            and self.coords == other.coords
        )

    __hash__ = None

    def __repr__(self):
        return f"Cochain(k={self.degree}, m={self.module_dim}, nnz={len(self.coords)})"

    def to_doc(self) -> dict:
        coords = {}
        for key in sorted(self.coords):
            vec = self.coords[key]
            coords[",".join(str(i + 1) for i in key)] = [
                str(vec.get(i, ZERO)) for i in range(self.module_dim)
            ]
        return {
            "format": "lieq-1",
            "degree": self.degree,
            "module_dim": self.module_dim,
            "coords": coords,
        }

    @classmethod
    def from_doc(cls, source: LieAlgebra, doc: Mapping) -> "Cochain":
        coords = {}
        for key, values in doc.get("coords", {}).items():
            idx = tuple(int(part) - 1 for part in str(key).split(",")) if str(key) else ()
            coords[idx] = {i: GaussRat(s) for i, s in enumerate(values)}
        return cls(source, int(doc["degree"]), int(doc["module_dim"]), coords)


def _insert_sorted(base: tuple[int, ...], item: int) -> tuple[tuple[int, ...], int]:
    """Insert item into a strictly increasing tuple; returns (tuple, position)."""
    pos = 0
    while pos < len(base) and base[pos] < item:
        pos += 1
    return base[:pos] + (item,) + base[pos:], pos


def differential(c: Cochain, rep: Representation) -> Cochain:
    """The degree-raising differential, computed by pushing every stored
    coordinate forward instead of evaluating over all output tuples, so the
    cost tracks the sparsity of c and of the bracket."""
    if c.source is not rep.source and not c.source.same_constants(rep.source):
        raise SourceMismatch("cochain and representation live on different algebras")
    if c.module_dim != rep.module_dim:
        raise SourceMismatch("module dimensions differ")
    if c.degree >= c.source.dim:
        raise ValueError("top-degree cochains map into the zero space")
    g = c.source
    out: dict[tuple[int, ...], Vec] = {}

    def accumulate(key: tuple[int, ...], vec: Vec, sign: int, scale: GaussRat | None = None):
        slot = out.setdefault(key, {})
        factor = GaussRat(sign) if scale is None else scale * sign
        vec_add(slot, vec, factor)
        if not slot:
            del out[key]

    for key, vec in c.coords.items():
        in_key = set(key)
        # module-action terms: insert a fresh index a
        for a in range(g.dim):
            if a in in_key:
                continue
            moved = rep.apply(a, vec)
            if not moved:
                continue
            target, pos = _insert_sorted(key, a)
            accumulate(target, moved, -1 if pos % 2 else 1)
        # bracket terms: replace one slot l by a bracket pair (a, b)
        for pos_l, l in enumerate(key):
            rest = key[:pos_l] + key[pos_l + 1 :]
            rest_set = set(rest)
            sign_l = -1 if pos_l % 2 else 1
            for (a, b), bvec in g.brackets.items():
                coeff = bvec.get(l)
                if coeff is None or a in rest_set or b in rest_set:
                    continue
                with_a, pa = _insert_sorted(rest, a)
                target, pb = _insert_sorted(with_a, b)
                # 1-based positions of a and b inside the target tuple
                sign_ab = -1 if (pa + 1 + pb + 1) % 2 else 1
                accumulate(target, vec, sign_ab * sign_l, coeff)
    return Cochain(g, c.degree + 1, c.module_dim, out)


# -- coordinate bookkeeping ---------------------------------------------------


def cochain_tuples(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n), k))


def cochain_space_dim(n: int, k: int, m: int) -> int:
    if k < 0 or k > n:
        return 0
    import math

    return math.comb(n, k) * m


def cochain_to_coordinates(c: Cochain) -> Vec:
    index = {key: pos for pos, key in enumerate(cochain_tuples(c.source.dim, c.degree))}
    out: Vec = {}
    for key, vec in c.coords.items():
        base = index[key] * c.module_dim
        for i, value in vec.items():
            out[base + i] = value
    return out


def cochain_from_coordinates(g: LieAlgebra, k: int, m: int, flat: Vec) -> Cochain:
    tuples = cochain_tuples(g.dim, k)
    coords: dict[tuple[int, ...], dict] = {}
    for pos, value in flat.items():
        key = tuples[pos // m]
        coords.setdefault(key, {})[pos % m] = value
    return Cochain(g, k, m, coords)


def differential_matrix(k: int, g: LieAlgebra, rep: Representation) -> list[Vec]:
    """Matrix of d : C^k -> C^{k+1} as a list of sparse columns, one per
    coordinate of C^k in the canonical ordering."""
    m = rep.module_dim
    if k >= g.dim:
        # C^{k+1} vanishes, so d is the zero map
        return [{} for _ in range(cochain_space_dim(g.dim, k, m))]
    columns: list[Vec] = []
    for key in cochain_tuples(g.dim, k):
        for i in range(m):
            delta = Cochain(g, k, m, {key: {i: GaussRat(1)}})
            columns.append(cochain_to_coordinates(differential(delta, rep)))
    return columns


def _columns_to_rows(columns: Sequence[Vec]) -> list[Vec]:
    rows: dict[int, Vec] = {}
    for c, col in enumerate(columns):
        for r, value in col.items():
            rows.setdefault(r, {})[c] = value
    return list(rows.values())


def cocycle_space(k: int, g: LieAlgebra, rep: Representation) -> Subspace:
    """Z^k as a subspace of the coordinate space of k-cochains."""
    dim_ck = cochain_space_dim(g.dim, k, rep.module_dim)
    if k >= g.dim:
        return Subspace.full(dim_ck)
    columns = differential_matrix(k, g, rep)
    return Subspace(dim_ck, nullspace(_columns_to_rows(columns), dim_ck))


def coboundary_space(k: int, g: LieAlgebra, rep: Representation) -> Subspace:
    """B^k = image of d on C^{k-1}; B^0 = 0."""
    dim_ck = cochain_space_dim(g.dim, k, rep.module_dim)
    if k == 0:
        return Subspace.zero(dim_ck)
    columns = differential_matrix(k - 1, g, rep)
    return Subspace(dim_ck, [col for col in columns if col])


def cohomology_dim(k: int, g: LieAlgebra, rep: Representation) -> int:
    dim_ck = cochain_space_dim(g.dim, k, rep.module_dim)
    if k > g.dim:
        return 0
    if k == g.dim:
        z_dim = dim_ck
    else:
        cols = differential_matrix(k, g, rep)
        z_dim = dim_ck - rank(_columns_to_rows(cols), dim_ck)
    if k == 0:
        b_dim = 0
    else:
        dim_prev = cochain_space_dim(g.dim, k - 1, rep.module_dim)
        b_dim = rank(_columns_to_rows(differential_matrix(k - 1, g, rep)), dim_prev)
    return z_dim - b_dim


def d_squared_check(g: LieAlgebra, rep: Representation, k: int) -> bool:
    """Compose d at degrees k and k+1 and test for the zero matrix."""
    if k + 1 > g.dim:
        return True
    first = differential_matrix(k, g, rep)
    second = differential_matrix(k + 1, g, rep)
    for col in first:
        composed: Vec = {}
        for r, value in col.items():
            vec_add(composed, second[r], value)
        if composed:
            return False
    return True


# -- derivations -----------------------------------------------------------------


def _acc(row: Vec, key: int, delta: GaussRat) -> None:
    acc = row.get(key)
    acc = delta if acc is None else acc + delta
    if acc:
        row[key] = acc
    else:
        row.pop(key, None)


def _derivation_rows(g: LieAlgebra) -> list[Vec]:
    """Linear system over the n^2 unknowns D[r][c] (flattened r*n + c) whose
    kernel is Der(g): D[x,y] - [Dx,y] - [x,Dy] = 0 on basis pairs.

    The r-th coordinate of the law on the pair (i, j) reads

        sum_k c_ij^k D[r][k] - sum_s c_sj^r D[s][i] - sum_s c_is^r D[s][j] = 0.
    """
    n = g.dim
    rows: list[Vec] = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = g.pair(i, j)
            for r in range(n):
                row: Vec = {}
                for k, coeff in cij.items():
                    _acc(row, r * n + k, coeff)
                for s in range(n):
                    c_sj = g.pair(s, j).get(r)
                    if c_sj:
                        _acc(row, s * n + i, -c_sj)
                    c_is = g.pair(i, s).get(r)
                    if c_is:
                        _acc(row, s * n + j, -c_is)
                if row:
                    rows.append(row)
    return rows


def derivation_dims(g: LieAlgebra) -> tuple[int, int]:
    """(dim Der(g), dim Inn(g)) without materializing the Lie structure."""
    n = g.dim
    der_dim = n * n - rank(_derivation_rows(g), n * n)
    inn_dim = n - g.center().dim
    return der_dim, inn_dim


class DerivationAlgebra:
    """Der(g) with its commutator structure constants, the matrices of a
    chosen basis, and the inner derivations as a subspace of gl(n)."""

    def __init__(self, algebra: LieAlgebra, matrices: list[list[Vec]], inner: Subspace):
        self.algebra = algebra
        self.matrices = matrices
        self.inner = inner

    @property
    def dim(self) -> int:
        return len(self.matrices)

    @property
    def h1_dim(self) -> int:
        return self.dim - self.inner.dim


def derivation_algebra(g: LieAlgebra) -> DerivationAlgebra:
    """Solve the derivation law over n x n unknowns and equip the solution
    space with its own Lie algebra structure (matrix commutator)."""
    n = g.dim
    basis_flat, free_cols = nullspace_with_free(_derivation_rows(g), n * n)
    matrices: list[list[Vec]] = []
    for flat in basis_flat:
        rows: list[Vec] = [dict() for _ in range(n)]
        for idx, value in flat.items():
            rows[idx // n][idx % n] = value
        matrices.append(rows)

    brackets: dict[tuple[int, int], Vec] = {}
    for a in range(len(matrices)):
        for b in range(a + 1, len(matrices)):
            comm = mat_sub(mat_mul(matrices[a], matrices[b]), mat_mul(matrices[b], matrices[a]))
            flat: Vec = {}
            for r, row in enumerate(comm):
                for c, value in row.items():
                    flat[r * n + c] = value
            coeffs: Vec = {}
            residual = dict(flat)
            for pos, col in enumerate(free_cols):
                value = residual.get(col)
                if value:
                    coeffs[pos] = value
            for pos, value in coeffs.items():
                vec_add(residual, basis_flat[pos], -value)
            if residual:
                raise LieqError("derivation commutator escaped Der(g)")
            if coeffs:
                brackets[(a, b)] = coeffs
    der = LieAlgebra(len(matrices), brackets, [f"D{k + 1}" for k in range(len(matrices))])
    inner_vectors = []
    for i in range(n):
        flat: Vec = {}
        for j in range(n):
            for r, value in g.pair(i, j).items():
                flat[r * n + j] = value
        if flat:
            inner_vectors.append(flat)
    inner = Subspace(n * n, inner_vectors)
    return DerivationAlgebra(der, matrices, inner)


def schur_multiplier_dim(g: LieAlgebra) -> int:
    """dim H^2(g, g; ad), the deformation-controlling cohomology."""
    return cohomology_dim(2, g, adjoint_rep(g))


def is_two_cocycle_trivial_coeffs(theta: Cochain) -> bool:
    """Cyclic condition theta([x,y],z) + theta([z,x],y) + theta([y,z],x) = 0
    on basis triples; this is the 2-cocycle law for trivial coefficients
    only (for a general module action use the full differential)."""
    if theta.degree != 2:
        raise ValueError("needs a degree-2 cochain")
    g = theta.source
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            w_ij = g.pair(i, j)
            for k in range(j + 1, g.dim):
                total: Vec = {}
                vec_add(total, theta.eval_pair(w_ij, k))
                vec_add(total, theta.eval_pair({a: -c for a, c in g.pair(i, k).items()}, j))
                vec_add(total, theta.eval_pair(g.pair(j, k), i))
                if total:
                    return False
    return True
