"""Built-in verified algebra library.

Contains the nilpotent classification in dimensions 3-5, the Heisenberg
family, sl2 with the standard (e, f, h) constants, and the shifted-pair
algebra a_sh on basis v1..v4, v whose only nonzero brackets are
[v1,v2] = [v3,v4] = [v1,v4] = [v3,v2] = v.

Every entry is Jacobi-checked, and the ``expected`` dict pins documented
invariants that verify_all() recomputes.  Expected values for the small
entries were frozen from an independent dense-linear-algebra oracle (see
tests/golden)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactnum import LieqError
from .liealg import LieAlgebra, Signature, abelian


class UnknownName(LieqError):
    """Catalog lookup with an unrecognized key."""


def heisenberg(m: int) -> LieAlgebra:
    """h(m) of dimension 2m+1: [v_{2i-1}, v_{2i}] = v, everything else zero."""
    if m < 1:
        raise ValueError("m must be positive")
    dim = 2 * m + 1
    labels = [f"v{k + 1}" for k in range(2 * m)] + ["v"]
    brackets = {(2 * i, 2 * i + 1): {dim - 1: 1} for i in range(m)}
    return LieAlgebra(dim, brackets, labels)


def _alg(dim: int, relations: dict[tuple[int, int], dict[int, int]], labels=None) -> LieAlgebra:
    """Structure constants with 1-based indices as printed in presentations."""
    brackets = {
        (i - 1, j - 1): {k - 1: c for k, c in out.items()} for (i, j), out in relations.items()
    }
    if labels is None:
        labels = [f"v{k + 1}" for k in range(dim)]
    return LieAlgebra(dim, brackets, labels)


@dataclass
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    expected: dict = field(default_factory=dict)
    notes: str = ""

    def signature(self) -> Signature:
        return self.algebra.invariant_signature()


def _build_fixed() -> dict[str, CatalogEntry]:
    sl2 = _alg(
        3,
        {(1, 2): {3: 1}, (1, 3): {1: -2}, (2, 3): {2: 2}},
        labels=["e", "f", "h"],
    )
    n_4_3 = _alg(4, {(1, 2): {3: 1}, (1, 3): {4: 1}})
    n_5_4 = _alg(5, {(1, 2): {5: 1}, (3, 4): {5: 1}})
    n_5_5 = _alg(5, {(1, 2): {3: 1}, (1, 3): {5: 1}, (2, 4): {5: 1}})
    n_5_6 = _alg(5, {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1}})
    n_5_7 = _alg(5, {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}})
    n_5_8 = _alg(5, {(1, 2): {4: 1}, (1, 3): {5: 1}})
    n_5_9 = _alg(5, {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 3): {5: 1}})
    a_sh = _alg(
        5,
        {(1, 2): {5: 1}, (3, 4): {5: 1}, (1, 4): {5: 1}, (2, 3): {5: -1}},
        labels=["v1", "v2", "v3", "v4", "v"],
    )

    n_3_1 = abelian(3)
    n_3_2 = heisenberg(1)
    n_4_1 = n_3_1.direct_sum(abelian(1))
    n_4_2 = n_3_2.direct_sum(abelian(1))
    n_5_1 = n_4_1.direct_sum(abelian(1))
    n_5_2 = n_4_2.direct_sum(abelian(1))
    n_5_3 = n_4_3.direct_sum(abelian(1))

    entries = {
        "n_3_1": CatalogEntry("n_3_1", n_3_1, _EXPECTED["n_3_1"], "abelian of dimension 3"),
        "n_3_2": CatalogEntry("n_3_2", n_3_2, _EXPECTED["n_3_2"], "h(1): [v1,v2] = v"),
        "n_4_1": CatalogEntry("n_4_1", n_4_1, _EXPECTED["n_4_1"], "n_3_1 + i"),
        "n_4_2": CatalogEntry("n_4_2", n_4_2, _EXPECTED["n_4_2"], "n_3_2 + i"),
        "n_4_3": CatalogEntry(
            "n_4_3", n_4_3, _EXPECTED["n_4_3"], "[v1,v2]=v3, [v1,v3]=v4"
        ),
        "n_5_1": CatalogEntry("n_5_1", n_5_1, _EXPECTED["n_5_1"], "n_4_1 + i"),
        "n_5_2": CatalogEntry("n_5_2", n_5_2, _EXPECTED["n_5_2"], "n_4_2 + i = h(1) + i + i"),
        "n_5_3": CatalogEntry("n_5_3", n_5_3, _EXPECTED["n_5_3"], "n_4_3 + i"),
        "n_5_4": CatalogEntry(
            "n_5_4", n_5_4, _EXPECTED["n_5_4"], "[v1,v2]=[v3,v4]=v5; same invariants as h(2)"
        ),
        "n_5_5": CatalogEntry(
            "n_5_5", n_5_5, _EXPECTED["n_5_5"], "[v1,v2]=v3, [v1,v3]=[v2,v4]=v5"
        ),
        "n_5_6": CatalogEntry(
            "n_5_6", n_5_6, _EXPECTED["n_5_6"], "[v1,v2]=v3, [v1,v3]=v4, [v1,v4]=[v2,v3]=v5"
        ),
        "n_5_7": CatalogEntry(
            "n_5_7", n_5_7, _EXPECTED["n_5_7"], "[v1,v2]=v3, [v1,v3]=v4, [v1,v4]=v5"
        ),
        "n_5_8": CatalogEntry("n_5_8", n_5_8, _EXPECTED["n_5_8"], "[v1,v2]=v4, [v1,v3]=v5"),
        "n_5_9": CatalogEntry(
            "n_5_9", n_5_9, _EXPECTED["n_5_9"], "[v1,v2]=v3, [v1,v3]=v4, [v2,v3]=v5"
        ),
        "sl2": CatalogEntry(
            "sl2", sl2, _EXPECTED["sl2"], "standard basis: [h,e]=2e, [h,f]=-2f, [e,f]=h"
        ),
        "a_sh": CatalogEntry(
            "a_sh",
            a_sh,
            _EXPECTED["a_sh"],
            "shifted-pair commutator table; same invariants as n_5_2",
        ),
    }
    return entries


# Invariant values recomputed by verify_all(); numeric ones below were frozen
# from the dense oracle run (tests/golden/dim5_signatures.json).
_EXPECTED: dict[str, dict] = {
    "n_3_1": {"dim": 3, "center_dim": 3, "derivation_dim": 9, "h2_dim": 9,
              "nilpotency_class": 1, "abelian": True},
    "n_3_2": {"dim": 3, "lower_central_dims": (3, 1, 0), "center_dim": 1,
              "derivation_dim": 6, "h1_dim": 4, "h2_dim": 5, "nilpotency_class": 2},
    "n_4_1": {"dim": 4, "center_dim": 4, "derivation_dim": 16, "h2_dim": 24,
              "nilpotency_class": 1, "abelian": True},
    "n_4_2": {"dim": 4, "lower_central_dims": (4, 1, 0), "center_dim": 2,
              "derivation_dim": 10, "h1_dim": 8, "h2_dim": 13, "nilpotency_class": 2},
    "n_4_3": {"dim": 4, "lower_central_dims": (4, 2, 1, 0),
              "upper_central_dims": (0, 1, 2, 4), "center_dim": 1,
              "derivation_dim": 7, "h1_dim": 4, "h2_dim": 6, "nilpotency_class": 3},
    "n_5_1": {"dim": 5, "center_dim": 5, "derivation_dim": 25, "h2_dim": 50,
              "nilpotency_class": 1, "abelian": True},
    "n_5_2": {"dim": 5, "lower_central_dims": (5, 1, 0), "center_dim": 3,
              "derivation_dim": 16, "h1_dim": 14, "h2_dim": 28, "nilpotency_class": 2},
    "n_5_3": {"dim": 5, "lower_central_dims": (5, 2, 1, 0), "center_dim": 2,
              "derivation_dim": 11, "h1_dim": 8, "h2_dim": 14, "nilpotency_class": 3},
    "n_5_4": {"dim": 5, "lower_central_dims": (5, 1, 0), "center_dim": 1,
              "derivation_dim": 15, "h1_dim": 11, "h2_dim": 20, "nilpotency_class": 2},
    "n_5_5": {"dim": 5, "lower_central_dims": (5, 2, 1, 0), "center_dim": 1,
              "derivation_dim": 10, "h1_dim": 6, "h2_dim": 13, "nilpotency_class": 3},
    "n_5_6": {"dim": 5, "lower_central_dims": (5, 3, 2, 1, 0), "center_dim": 1,
              "derivation_dim": 8, "h1_dim": 4, "h2_dim": 7, "nilpotency_class": 4},
    "n_5_7": {"dim": 5, "lower_central_dims": (5, 3, 2, 1, 0), "center_dim": 1,
              "derivation_dim": 9, "h1_dim": 5, "h2_dim": 8, "nilpotency_class": 4},
    "n_5_8": {"dim": 5, "lower_central_dims": (5, 2, 0), "center_dim": 2,
              "derivation_dim": 13, "h1_dim": 10, "h2_dim": 19, "nilpotency_class": 2},
    "n_5_9": {"dim": 5, "lower_central_dims": (5, 3, 2, 0), "center_dim": 2,
              "derivation_dim": 10, "h1_dim": 7, "h2_dim": 9, "nilpotency_class": 3},
    "sl2": {"dim": 3, "center_dim": 0, "derivation_dim": 3, "h1_dim": 0,
            "h2_dim": 0, "nilpotency_class": -1, "solvable_length": -1},
    "a_sh": {"dim": 5, "lower_central_dims": (5, 1, 0), "center_dim": 3,
             "derivation_dim": 16, "h1_dim": 14, "h2_dim": 28, "nilpotency_class": 2},
}


def _expected_tables() -> dict[str, dict]:
    return dict(_EXPECTED)


def get(name: str) -> CatalogEntry:
    """Look up an entry; abelian(n) and h(m) accept any positive parameter."""
    name = name.strip()
    if name.startswith("abelian(") and name.endswith(")"):
        n = int(name[len("abelian(") : -1])
        if n < 0:
            raise UnknownName(f"unknown catalog entry {name!r}")
        entry = CatalogEntry(name, abelian(n), {}, f"abelian of dimension {n}")
        entry.expected = {
            "dim": n,
            "abelian": True,
            "center_dim": n,
            "nilpotency_class": 1 if n else 0,
        }
        return entry
    if name.startswith("h(") and name.endswith(")"):
        m = int(name[len("h(") : -1])
        if m < 1:
            raise UnknownName(f"unknown catalog entry {name!r}")
        entry = CatalogEntry(name, heisenberg(m), {}, f"Heisenberg algebra of dimension {2 * m + 1}")
        entry.expected = {
            "dim": 2 * m + 1,
            "center_dim": 1,
            "nilpotency_class": 2,
            "lower_central_dims": (2 * m + 1, 1, 0),
            "abelian": False,
        }
        return entry
    fixed = _build_fixed()
    if name in fixed:
        return fixed[name]
    raise UnknownName(f"unknown catalog entry {name!r}")


def list_names() -> list[str]:
    """Every concrete entry exercised by the verification suite."""
    names = [f"abelian({n})" for n in range(1, 8)]
    names += [f"h({m})" for m in range(1, 5)]
    names += sorted(_build_fixed())
    return names


_FIELD_ORDER = [
    "dim",
    "lower_central_dims",
    "upper_central_dims",
    "derived_series_dims",
    "center_dim",
    "derivation_dim",
    "h1_dim",
    "h2_dim",
    "nilpotency_class",
    "solvable_length",
    "abelian",
]


def _compute_field(g: LieAlgebra, fieldname: str):
    """Compute a single signature component without paying for the rest."""
    from . import cohomology

    if fieldname == "dim":
        return g.dim
    if fieldname == "lower_central_dims":
        return tuple(s.dim for s in g.lower_central_series()) or (0,)
    if fieldname == "upper_central_dims":
        return tuple(s.dim for s in g.upper_central_series()) or (0,)
    if fieldname == "derived_series_dims":
        return tuple(s.dim for s in g.derived_series()) or (0,)
    if fieldname == "center_dim":
        return g.center().dim
    if fieldname == "derivation_dim":
        return cohomology.derivation_dims(g)[0]
    if fieldname == "h1_dim":
        der, inn = cohomology.derivation_dims(g)
        return der - inn
    if fieldname == "h2_dim":
        return cohomology.schur_multiplier_dim(g)
    if fieldname == "nilpotency_class":
        c = g.is_nilpotent()
        return -1 if c is None else c
    if fieldname == "solvable_length":
        c = g.is_solvable()
        return -1 if c is None else c
    if fieldname == "abelian":
        return g.is_abelian()
    raise KeyError(fieldname)


@dataclass
class VerifyItem:
    entry: str
    check: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class CatalogReport:
    items: list[VerifyItem]

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def failures(self) -> list[VerifyItem]:
        return [item for item in self.items if not item.ok]


def verify_all() -> CatalogReport:
    """Jacobi + expected-field assertions for every entry, the documented
    coincidences, and pairwise distinctness of the nine dim-5 entries."""
    items: list[VerifyItem] = []
    for name in list_names():
        entry = get(name)
        items.append(VerifyItem(name, "jacobi", None, entry.algebra.check_jacobi()))
        for fieldname in _FIELD_ORDER:
            if fieldname in entry.expected:
                items.append(
                    VerifyItem(
                        name,
                        fieldname,
                        entry.expected[fieldname],
                        _compute_field(entry.algebra, fieldname),
                    )
                )
    # documented coincidences hold as signature equalities
    coincidences = [
        ("n_3_2", "h(1)"),
        ("n_5_4", "h(2)"),
        ("n_5_2", "a_sh"),
    ]
    for left, right in coincidences:
        items.append(
            VerifyItem(
                f"{left}~{right}",
                "signature_equal",
                get(left).signature(),
                get(right).signature(),
            )
        )
    h1ii = get("n_3_2").algebra.direct_sum(abelian(1)).direct_sum(abelian(1))
    items.append(
        VerifyItem(
            "n_5_2~h(1)+i+i",
            "signature_equal",
            get("n_5_2").signature(),
            h1ii.invariant_signature(),
        )
    )
    items.append(
        VerifyItem(
            "a_sh!~h(2)",
            "signatures_differ",
            True,
            get("a_sh").signature() != get("h(2)").signature(),
        )
    )
    # direct-sum identities hold with equal constants, not merely equal signatures
    sums = [
        ("n_4_1", "n_3_1"),
        ("n_4_2", "n_3_2"),
        ("n_5_1", "n_4_1"),
        ("n_5_2", "n_4_2"),
        ("n_5_3", "n_4_3"),
    ]
    for name, summand in sums:
        items.append(
            VerifyItem(
                f"{name}={summand}+i",
                "constants_equal",
                True,
                get(name).algebra.same_constants(get(summand).algebra.direct_sum(abelian(1))),
            )
        )
    # the nine dim-5 entries are pairwise distinguished by their signatures
    dim5 = [f"n_5_{k}" for k in range(1, 10)]
    sigs = {name: get(name).signature() for name in dim5}
    for a in range(len(dim5)):
        for b in range(a + 1, len(dim5)):
            items.append(
                VerifyItem(
                    f"{dim5[a]}!={dim5[b]}",
                    "signatures_differ",
                    True,
                    sigs[dim5[a]] != sigs[dim5[b]],
                )
            )
    return CatalogReport(items)
