"""Finite-dimensional Lie algebras as sparse structure constants over Q(i).

Brackets are stored only for ordered basis pairs i < j; antisymmetry and
the vanishing diagonal are structural, not data.  All derived objects
(center, structural series, quotients) are canonical because they are
built from the deterministic RREF of :mod:`lieq.linalg`.
"""

from __future__ import annotations

from typing import Mapping, NamedTuple, Sequence

from .exactnum import GaussRat, LieqError, gauss
from .linalg import Subspace, Vec, nullspace, vec_add, vec_from_seq


class DimensionMismatch(LieqError):
    """Vector length does not match the algebra dimension."""


class NotAnIdeal(LieqError):
    """Quotient requested by a subspace that is not an ideal."""


class JacobiWitness(NamedTuple):
    triple: tuple[int, int, int]
    residual: Vec


class Signature(NamedTuple):
    """Isomorphism-necessary invariant tuple (equal tuples do not prove
    isomorphism, unequal tuples disprove it)."""

    dim: int
    lower_central_dims: tuple[int, ...]
    upper_central_dims: tuple[int, ...]
    derived_series_dims: tuple[int, ...]
    center_dim: int
    derivation_dim: int
    h1_dim: int
    h2_dim: int
    nilpotency_class: int  # -1 if not nilpotent
    solvable_length: int  # -1 if not solvable
    abelian: bool

    def to_doc(self) -> dict:
        doc = self._asdict()
        for key in ("lower_central_dims", "upper_central_dims", "derived_series_dims"):
            doc[key] = list(doc[key])
        return doc


def _coerce_vec(value, dim: int) -> Vec:
    if isinstance(value, dict):
        out = {}
        for idx, scalar in value.items():
            idx = int(idx)
            if not 0 <= idx < dim:
                raise DimensionMismatch(f"coordinate {idx} outside 0..{dim - 1}")
            s = gauss(scalar)
            if s is None:
                raise TypeError(f"bad scalar {scalar!r}")
            if s:
                out[idx] = s
        return out
    if isinstance(value, (list, tuple)):
        if len(value) != dim:
            raise DimensionMismatch(f"vector length {len(value)} != dim {dim}")
        return vec_from_seq(value)
    raise TypeError(f"cannot interpret {value!r} as a vector")


class LieAlgebra:
    """Structure-constant presentation of a finite-dimensional Lie algebra."""

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], object] | None = None,
        labels: Sequence[str] | None = None,
    ):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim
        if labels is None:
            labels = tuple(f"e{k + 1}" for k in range(dim))
        else:
            labels = tuple(labels)
            if len(labels) != dim:
                raise DimensionMismatch("label count != dim")
        self.labels = labels
        clean: dict[tuple[int, int], Vec] = {}
        for (i, j), value in (brackets or {}).items():
            i, j = int(i), int(j)
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket pair ({i}, {j}) must satisfy 0 <= i < j < dim")
            vec = _coerce_vec(value, dim)
            if vec:
                clean[(i, j)] = vec
        self.brackets = clean
        self._jacobi: JacobiWitness | None | str = "unchecked"
        self._signature: Signature | None = None

    # -- bracket evaluation ------------------------------------------------

    def pair(self, i: int, j: int) -> Vec:
        """[e_i, e_j] for basis indices, with the sign handled."""
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        flipped = self.brackets.get((j, i))
        return {k: -v for k, v in flipped.items()} if flipped else {}

    def ad_vec(self, i: int, w: Vec) -> Vec:
        """[e_i, w] for a sparse vector w."""
        out: Vec = {}
        for l, coeff in w.items():
            vec_add(out, self.pair(i, l), coeff)
        return out

    def bracket(self, x, y) -> Vec:
        """Bilinear extension of the structure constants to vectors."""
        xv = _coerce_vec(x, self.dim)
        yv = _coerce_vec(y, self.dim)
        out: Vec = {}
        for i, a in xv.items():
            for j, b in yv.items():
                if i == j:
                    continue
                vec_add(out, self.pair(i, j), a * b)
        return out

    # -- verification --------------------------------------------------------

    def check_jacobi(self) -> JacobiWitness | None:
        """None when the Jacobi identity holds on every basis triple,
        otherwise the first failing (i, j, k) with its residual vector."""
        if self._jacobi != "unchecked":
            return self._jacobi  # type: ignore[return-value]
        witness = None
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                w_ij = self.pair(i, j)
                for k in range(j + 1, self.dim):
                    residual: Vec = {}
                    vec_add(residual, self.ad_vec(i, self.pair(j, k)))
                    vec_add(residual, self.ad_vec(j, self.pair(k, i)))
                    vec_add(residual, self.ad_vec(k, w_ij))
                    if residual:
                        witness = JacobiWitness((i, j, k), residual)
                        break
                if witness:
                    break
            if witness:
                break
        self._jacobi = witness
        return witness

    @property
    def verified(self) -> bool:
        return self.check_jacobi() is None

    # -- canonical subspaces ---------------------------------------------------

    def center(self) -> Subspace:
        """Nullspace of the stacked ad-matrices."""
        rows: list[Vec] = []
        for j in range(self.dim):
            cols = [self.pair(i, j) for i in range(self.dim)]
            coords = set()
            for col in cols:
                coords.update(col)
            for r in sorted(coords):
                row = {i: cols[i][r] for i in range(self.dim) if r in cols[i]}
                if row:
                    rows.append(row)
        return Subspace(self.dim, nullspace(rows, self.dim))

    def derived_subalgebra(self) -> Subspace:
        return Subspace(self.dim, list(self.brackets.values()))

    def _bracket_span(self, left: Subspace, right: Subspace) -> Subspace:
        vectors = []
        for u in left.rows:
            for w in right.rows:
                v = self.bracket(u, w)
                if v:
                    vectors.append(v)
        return Subspace(self.dim, vectors)

    def lower_central_series(self) -> list[Subspace]:
        if self.dim == 0:
            return []
        series = [Subspace.full(self.dim)]
        while True:
            nxt = self._bracket_span(series[-1], Subspace.full(self.dim))
            if nxt == series[-1]:
                break
            series.append(nxt)
        return series

    def upper_central_series(self) -> list[Subspace]:
        """Ascending i-th centers; Z_{i+1} = {x : [x, g] inside Z_i}, which is
        the pullback of the center of g / Z_i."""
        if self.dim == 0:
            return []
        series = [Subspace.zero(self.dim)]
        while True:
            current = series[-1]
            rows: list[Vec] = []
            for j in range(self.dim):
                cols = [current.reduce(self.pair(i, j)) for i in range(self.dim)]
                coords = set()
                for col in cols:
                    coords.update(col)
                for r in sorted(coords):
                    row = {i: cols[i][r] for i in range(self.dim) if r in cols[i]}
                    if row:
                        rows.append(row)
            nxt = Subspace(self.dim, nullspace(rows, self.dim))
            if nxt == current:
                break
            series.append(nxt)
        return series

    def derived_series(self) -> list[Subspace]:
        if self.dim == 0:
            return []
        series = [Subspace.full(self.dim)]
        while True:
            nxt = self._bracket_span(series[-1], series[-1])
            if nxt == series[-1]:
                break
            series.append(nxt)
        return series

    def is_nilpotent(self) -> int | None:
        """Nilpotency class, or None."""
        if self.dim == 0:
            return 0
        series = self.lower_central_series()
        if series[-1].dim != 0:
            return None
        return len(series) - 1

    def is_solvable(self) -> int | None:
        """Solvable length, or None."""
        if self.dim == 0:
            return 0
        series = self.derived_series()
        if series[-1].dim != 0:
            return None
        return len(series) - 1

    def is_abelian(self) -> bool:
        return not self.brackets

    # -- constructions -------------------------------------------------------

    def quotient(self, ideal: Subspace) -> "Quotient":
        """Quotient by a verified ideal, with the projection onto the
        echelon complement (non-pivot coordinates, lowest index first)."""
        if ideal.ambient != self.dim:
            raise DimensionMismatch("ideal lives in a different ambient space")
        for u in ideal.rows:
            for j in range(self.dim):
                w = self.bracket(u, {j: GaussRat(1)})
                if not ideal.contains(w):
                    raise NotAnIdeal(f"[ideal, e{j + 1}] escapes the subspace")
        complement = tuple(c for c in range(self.dim) if c not in set(ideal.pivots))
        qdim = len(complement)
        pos = {c: a for a, c in enumerate(complement)}

        def project(v: Vec) -> Vec:
            residual = ideal.reduce(v)
            return {pos[c]: value for c, value in residual.items()}

        brackets: dict[tuple[int, int], Vec] = {}
        for a in range(qdim):
            for b in range(a + 1, qdim):
                img = project(self.pair(complement[a], complement[b]))
                if img:
                    brackets[(a, b)] = img
        algebra = LieAlgebra(qdim, brackets, [self.labels[c] for c in complement])
        return Quotient(algebra, self, ideal, complement, project)

    def direct_sum(self, other: "LieAlgebra") -> "LieAlgebra":
        labels = list(self.labels)
        seen = set(labels)
        for name in other.labels:
            fresh = name
            while fresh in seen:
                fresh += "'"
            labels.append(fresh)
            seen.add(fresh)
        brackets: dict[tuple[int, int], Vec] = {
            pair: dict(vec) for pair, vec in self.brackets.items()
        }
        shift = self.dim
        for (i, j), vec in other.brackets.items():
            brackets[(i + shift, j + shift)] = {k + shift: v for k, v in vec.items()}
        return LieAlgebra(self.dim + other.dim, brackets, labels)

    # -- invariants ------------------------------------------------------------

    def invariant_signature(self) -> Signature:
        if self._signature is not None:
            return self._signature
        from . import cohomology  # deferred: cohomology builds on liealg

        lcs = tuple(s.dim for s in self.lower_central_series()) or (0,)
        ucs = tuple(s.dim for s in self.upper_central_series()) or (0,)
        der = tuple(s.dim for s in self.derived_series()) or (0,)
        nil = self.is_nilpotent()
        sol = self.is_solvable()
        der_dim, inn_dim = cohomology.derivation_dims(self)
        sig = Signature(
            dim=self.dim,
            lower_central_dims=lcs,
            upper_central_dims=ucs,
            derived_series_dims=der,
            center_dim=self.center().dim,
            derivation_dim=der_dim,
            h1_dim=der_dim - inn_dim,
            h2_dim=cohomology.schur_multiplier_dim(self),
            nilpotency_class=-1 if nil is None else nil,
            solvable_length=-1 if sol is None else sol,
            abelian=self.is_abelian(),
        )
        self._signature = sig
        return sig

    # -- equality and wire format ------------------------------------------------

    def same_constants(self, other: "LieAlgebra") -> bool:
        return self.dim == other.dim and self.brackets == other.brackets

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.same_constants(other) and self.labels == other.labels

    __hash__ = None

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, pairs={len(self.brackets)})"

    def to_doc(self) -> dict:
        entries = []
        for (i, j) in sorted(self.brackets):
            vec = self.brackets[(i, j)]
            out = {str(k + 1): str(vec[k]) for k in sorted(vec)}
            entries.append({"i": i + 1, "j": j + 1, "out": out})
        return {
            "format": "lieq-1",
            "dim": self.dim,
            "labels": list(self.labels),
            "brackets": entries,
        }

    @classmethod
    def from_doc(cls, doc: Mapping) -> "LieAlgebra":
        dim = int(doc["dim"])
        brackets = {}
        for entry in doc.get("brackets", []):
            i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
            vec = {int(k) - 1: GaussRat(s) for k, s in entry["out"].items()}
            if (i, j) in brackets:
                raise ValueError(f"duplicate bracket pair ({i + 1}, {j + 1})")
            brackets[(i, j)] = vec
        return cls(dim, brackets, doc.get("labels"))


class Quotient:
    """Result of LieAlgebra.quotient: the quotient algebra plus the maps
    needed to move vectors both ways."""

    def __init__(self, algebra, parent, ideal, complement, project):
        self.algebra: LieAlgebra = algebra
        self.parent: LieAlgebra = parent
        self.ideal: Subspace = ideal
        self.complement: tuple[int, ...] = complement
        self._project = project

    def project(self, v: Vec) -> Vec:
        """Image of a parent vector in quotient coordinates."""
        return self._project(v)

    def section(self, v: Vec) -> Vec:
        """Echelon-complement section: quotient coordinates back into the parent."""
        return {self.complement[a]: value for a, value in v.items()}

    def __repr__(self):
        return f"Quotient(dim={self.algebra.dim} of {self.parent.dim})"


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, [f"e{k + 1}" for k in range(n)])
