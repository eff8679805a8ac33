import random

import pytest

from lieq import catalog
from lieq.cohomology import Cochain, is_two_cocycle_trivial_coeffs
from lieq.deform import (
    DeformedBracket,
    NotLieAtParameter,
    SourceMismatch,
    characteristically_nilpotent,
    deformation_is_lie,
    evaluate_at,
    jacobi_polynomial,
    linear_deformation_candidates,
    make_linear_deformation,
    rigidity_report,
)
from lieq.exactnum import GaussRat, ZERO
from lieq.liealg import LieAlgebra, abelian


def get(name):
    return catalog.get(name).algebra


def bracket_cochain(g) -> Cochain:
    """The bracket of g as a degree-2 cochain over an abelian base of the
    same dimension."""
    base = abelian(g.dim)
    return Cochain(base, 2, g.dim, {pair: dict(vec) for pair, vec in g.brackets.items()})


def test_construction_checks():
    base = abelian(3)
    phi = Cochain(base, 2, 3, {(0, 1): {2: 1}})
    d = make_linear_deformation(base, phi)
    assert d.order == 1
    wrong_dim = Cochain(abelian(4), 2, 4, {(0, 1): {2: 1}})
    with pytest.raises(SourceMismatch):
        make_linear_deformation(base, wrong_dim)
    wrong_degree = Cochain(base, 1, 3, {(0,): {2: 1}})
    with pytest.raises(SourceMismatch):
        make_linear_deformation(base, wrong_degree)
    with pytest.raises(ValueError):
        DeformedBracket(base, ())


def test_zero_base_with_lie_phi_is_lie():
    phi = bracket_cochain(get("h(1)"))
    d = make_linear_deformation(abelian(3), phi)
    assert deformation_is_lie(d) is None


def test_identity_deformation():
    g = get("h(1)")
    zero_phi = Cochain(g, 2, 3, {})
    d = make_linear_deformation(g, zero_phi)
    assert deformation_is_lie(d) is None
    assert evaluate_at(d, 5).same_constants(g)


def test_base_jacobi_shows_up_at_degree_zero():
    bad_base = LieAlgebra(3, {(0, 1): {0: 1}, (1, 2): {1: 1}})
    phi = Cochain(bad_base, 2, 3, {})
    d = make_linear_deformation(bad_base, phi)
    defect = deformation_is_lie(d)
    assert defect is not None and defect.degree == 0


def test_phi_violating_own_jacobi():
    base = abelian(3)
    phi = Cochain(base, 2, 3, {(0, 1): {0: 1}, (1, 2): {1: 1}})
    defect = deformation_is_lie(make_linear_deformation(base, phi))
    assert defect is not None
    assert defect.degree == 2
    assert defect.triple == (0, 1, 2)


def test_degree_bound():
    g = get("h(1)")
    phi1 = Cochain(g, 2, 3, {(0, 2): {0: 1}})
    phi2 = Cochain(g, 2, 3, {(1, 2): {1: 1}})
    d = DeformedBracket(g, (phi1, phi2))
    expansion = jacobi_polynomial(d)
    for polys in expansion.values():
        for p in polys:
            assert p.max_exp is None or p.max_exp <= 2 * d.order


def test_t0_component_is_base_jacobi():
    g = get("n_4_3")
    phi = Cochain(g, 2, 4, {(0, 1): {0: 1}})
    expansion = jacobi_polynomial(make_linear_deformation(g, phi))
    for polys in expansion.values():
        for p in polys:
            assert p.coeffs.get(0, ZERO) == ZERO


def _jacobi_residual(g, i, j, k):
    out = dict(g.bracket({i: GaussRat(1)}, g.pair(j, k)))
    for key, value in g.bracket({j: GaussRat(1)}, g.pair(k, i)).items():
        out[key] = out.get(key, ZERO) + value
    for key, value in g.bracket({k: GaussRat(1)}, g.pair(i, j)).items():
        out[key] = out.get(key, ZERO) + value
    return {key: v for key, v in out.items() if v}


@pytest.mark.parametrize("seed", range(6))
def test_graded_consistency_randomized(seed):
    rng = random.Random(seed)
    name = rng.choice(["h(1)", "n_4_3", "n_5_5", "abelian(4)"])
    g = get(name)
    n = g.dim
    coords = {}
    for _ in range(rng.randint(1, 4)):
        i, j = sorted(rng.sample(range(n), 2))
        coords[(i, j)] = {rng.randrange(n): GaussRat(rng.randint(-3, 3))}
    phi = Cochain(g, 2, n, coords)
    d = make_linear_deformation(g, phi)
    t0 = GaussRat(rng.randint(-5, 5), rng.randint(-2, 2))
    evaluated = evaluate_at(d, t0, allow_non_lie=True)
    expansion = jacobi_polynomial(d)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                direct = _jacobi_residual(evaluated, i, j, k)
                polys = expansion.get((i, j, k))
                from_poly = {}
                if polys:
                    from_poly = {
                        pos: value
                        for pos, p in enumerate(polys)
                        if (value := p.eval(t0))
                    }
                assert direct == from_poly, (name, (i, j, k), t0)


@pytest.mark.parametrize("seed", range(3))
def test_graded_consistency_two_level(seed):
    rng = random.Random(1000 + seed)
    g = get(rng.choice(["h(1)", "n_4_3"]))
    n = g.dim

    def random_phi():
        coords = {}
        for _ in range(rng.randint(1, 3)):
            i, j = sorted(rng.sample(range(n), 2))
            coords.setdefault((i, j), {})[rng.randrange(n)] = GaussRat(rng.randint(-3, 3))
        return Cochain(g, 2, n, coords)

    d = DeformedBracket(g, (random_phi(), random_phi()))
    t0 = GaussRat(rng.randint(-3, 3))
    evaluated = evaluate_at(d, t0, allow_non_lie=True)
    expansion = jacobi_polynomial(d)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                direct = _jacobi_residual(evaluated, i, j, k)
                polys = expansion.get((i, j, k))
                from_poly = {}
                if polys:
                    from_poly = {
                        pos: value
                        for pos, p in enumerate(polys)
                        if (value := p.eval(t0))
                    }
                assert direct == from_poly


def test_evaluate_at_zero_is_identity():
    g = get("n_5_6")
    phi = Cochain(g, 2, 5, {(0, 4): {1: 7}})
    d = make_linear_deformation(g, phi)
    assert evaluate_at(d, 0, allow_non_lie=True).same_constants(g)


def test_evaluate_gives_heisenberg():
    d = make_linear_deformation(abelian(3), bracket_cochain(get("h(1)")))
    g1 = evaluate_at(d, 1)
    assert g1.invariant_signature() == get("h(1)").invariant_signature()


def test_not_lie_at_parameter():
    g = get("h(1)")
    phi = Cochain(g, 2, 3, {(0, 2): {0: 1}})
    d = make_linear_deformation(g, phi)
    with pytest.raises(NotLieAtParameter):
        evaluate_at(d, 1)
    forced = evaluate_at(d, 1, allow_non_lie=True)
    assert not forced.verified


def test_documented_counterexample_cycle_vs_full():
    # passes the trivial-coefficient cyclic condition, fails the honest filter
    g = get("h(1)")
    phi = Cochain(g, 2, 3, {(0, 2): {0: 1}})
    assert is_two_cocycle_trivial_coeffs(phi)
    defect = deformation_is_lie(make_linear_deformation(g, phi))
    assert defect is not None
    assert defect.degree == 1
    assert defect.triple == (0, 1, 2)


def test_cocycle_kills_linear_term_only():
    # for phi inside Z^2(g, g; ad) the t^1 Jacobi component vanishes and the
    # t^2 component is exactly the self-Jacobi sum of phi
    g = get("n_5_2")
    report = linear_deformation_candidates(g)
    rng = random.Random(2)
    for _ in range(5):
        coords = {}
        for basis_phi in rng.sample(report.basis, 3):
            weight = GaussRat(rng.randint(-3, 3))
            for key, vec in basis_phi.coords.items():
                slot = coords.setdefault(key, {})
                for pos, value in vec.items():
                    slot[pos] = slot.get(pos, ZERO) + weight * value
        coords = {k: {p: v for p, v in vec.items() if v} for k, vec in coords.items()}
        coords = {k: vec for k, vec in coords.items() if vec}
        phi = Cochain(g, 2, 5, coords)
        expansion = jacobi_polynomial(make_linear_deformation(g, phi))
        phi_alone = jacobi_polynomial(
            make_linear_deformation(abelian(5), Cochain(abelian(5), 2, 5, coords))
        )
        for i in range(5):
            for j in range(i + 1, 5):
                for k in range(j + 1, 5):
                    polys = expansion.get((i, j, k))
                    if polys:
                        for p in polys:
                            assert p.coeffs.get(1, ZERO) == ZERO
                    expected_t2 = phi_alone.get((i, j, k))
                    got = {
                        pos: p.coeffs[2]
                        for pos, p in enumerate(polys or [])
                        if 2 in p.coeffs
                    }
                    want = {
                        pos: p.coeffs[2]
                        for pos, p in enumerate(expected_t2 or [])
                        if 2 in p.coeffs
                    }
                    assert got == want


def test_candidates_sl2():
    report = linear_deformation_candidates(get("sl2"))
    assert report.space.dim == 6  # Z^2 = B^2, trivial multiplier


def test_candidates_abelian():
    report = linear_deformation_candidates(abelian(3))
    # base is zero: candidates survive exactly when phi satisfies Jacobi
    assert report.space.dim == 9
    for phi, ok in zip(report.basis, report.survivors):
        base = abelian(3)
        expected = deformation_is_lie(make_linear_deformation(base, phi)) is None
        assert ok == expected


def test_candidates_golden_counts():
    # frozen from a run of the honest filter; the filter has real teeth on
    # n_4_3, where one basis cocycle fails its own square
    report = linear_deformation_candidates(get("h(1)"))
    assert report.space.dim == 8
    assert report.survivors == [True] * 8
    report43 = linear_deformation_candidates(get("n_4_3"))
    assert report43.space.dim == 15
    assert report43.surviving_count == 14
    assert report43.survivors[4] is False


def test_rigidity_sl2():
    rr = rigidity_report(get("sl2"))
    assert rr.orbit_tangent_dim == 6
    assert rr.dim_b2 == 6
    assert rr.dim_h2 == 0
    assert rr.nr_rigid and rr.tangent_equals_b2


def test_rigidity_abelian():
    rr = rigidity_report(abelian(3))
    assert rr.orbit_tangent_dim == 0 == rr.dim_b2
    assert rr.tangent_equals_b2
    assert rr.dim_h2 == 9 and not rr.nr_rigid


def test_rigidity_h1():
    rr = rigidity_report(get("h(1)"))
    assert rr.orbit_tangent_dim == 3
    assert rr.dim_b2 == 3


def test_characteristically_nilpotent():
    assert not characteristically_nilpotent(abelian(2))
    assert not characteristically_nilpotent(get("h(1)"))
    assert not characteristically_nilpotent(get("sl2"))
