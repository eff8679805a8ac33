"""Command-line entry point.

One binary, subcommand style.  Every machine-readable output carries
"format": "lieq-1"; exit code 0 means every reported item passed, 1 means
at least one failed, 2 is a usage error (argparse's default).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
import time
from dataclasses import dataclass, field

from . import catalog, cohomology, deform, extend, fock, qheis
from .exactnum import GaussRat, LieqError
from .liealg import LieAlgebra
from .linalg import SparseMatrix


@dataclass
class Report:
    command: str
    items: list = field(default_factory=list)  # (name, expected, actual, verdict)
    timing_ms: int = 0

    def add(self, name, expected, actual, ok: bool | None = None):
        if ok is None:
            ok = expected == actual
        self.items.append((str(name), expected, actual, "pass" if ok else "fail"))

    @property
    def status(self) -> str:
        return "pass" if all(v == "pass" for *_, v in self.items) else "fail"

    def to_doc(self) -> dict:
        return {
            "format": "lieq-1",
            "command": self.command,
            "status": self.status,
            "timing_ms": self.timing_ms,
            "items": [
                {"name": n, "expected": _plain(e), "actual": _plain(a), "verdict": v}
                for n, e, a, v in self.items
            ],
        }

    def render_text(self) -> str:
        lines = [f"{self.command}: {self.status} ({len(self.items)} checks, {self.timing_ms} ms)"]
        width = max((len(n) for n, *_ in self.items), default=0)
        for name, expected, actual, verdict in self.items:
            if verdict != "pass":
                lines.append(
                    f"  {name:<{width}}  FAIL  expected={_plain(expected)} actual={_plain(actual)}"
                )
            elif expected is None and actual is not None:
                lines.append(f"  {name:<{width}}  pass  {_plain(actual)}")
            else:
                lines.append(f"  {name:<{width}}  pass")
        return "\n".join(lines)


def _plain(value):
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if hasattr(value, "_asdict"):
        return _plain(value._asdict())
    return str(value)


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _finish(args, report: Report, t0: float) -> int:
    report.timing_ms = int((time.time() - t0) * 1000)
    _emit(args, report.to_doc(), report.render_text())
    return 0 if report.status == "pass" else 1


def _load_algebra(spec: str) -> LieAlgebra:
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as handle:
            return LieAlgebra.from_doc(json.load(handle))
    return catalog.get(spec).algebra


def _size_cap() -> int:
    raw = os.environ.get("LIEQ_SIZE_CAP")
    return int(raw) if raw else fock.DEFAULT_SIZE_CAP


def _matrix_doc(mat: SparseMatrix) -> dict:
    triplets = [[r + 1, c + 1, str(v)] for (r, c), v in sorted(mat.data.items())]
    return {"n": mat.n, "entries": triplets}


# -- subcommands --------------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.action == "list":
        names = catalog.list_names()
        _emit(args, {"format": "lieq-1", "names": names}, "\n".join(names))
        return 0
    entry = catalog.get(args.name)
    doc = entry.algebra.to_doc()
    doc["notes"] = entry.notes
    text_lines = [f"{entry.name}  (dim {entry.algebra.dim})  {entry.notes}"]
    for item in doc["brackets"]:
        out = " + ".join(
            (f"{v}*" if v != "1" else "") + entry.algebra.labels[int(k) - 1]
            for k, v in item["out"].items()
        )
        text_lines.append(
            f"  [{entry.algebra.labels[item['i'] - 1]}, {entry.algebra.labels[item['j'] - 1]}] = {out}"
        )
    _emit(args, doc, "\n".join(text_lines))
    return 0


def cmd_algebra(args) -> int:
    t0 = time.time()
    g = _load_algebra(args.algebra)
    report = Report("algebra")
    report.add("jacobi", None, g.check_jacobi())
    sig = g.invariant_signature()
    for key, value in sig._asdict().items():
        report.add(key, _plain(value), _plain(value), ok=True)
    return _finish(args, report, t0)


def cmd_cohomology(args) -> int:
    t0 = time.time()
    g = _load_algebra(args.algebra)
    if args.coeffs == "ad":
        rep = cohomology.adjoint_rep(g)
    else:
        rep = cohomology.trivial_rep(g, args.module_dim)
    report = Report("cohomology")
    degrees = [args.k] if args.k is not None else list(range(g.dim + 1))
    for k in degrees:
        z = cohomology.cocycle_space(k, g, rep).dim
        b = cohomology.coboundary_space(k, g, rep).dim
        report.add(f"H^{k}", None, {"dim_Z": z, "dim_B": b, "dim_H": z - b}, ok=True)
    return _finish(args, report, t0)


def cmd_deform_check(args) -> int:
    t0 = time.time()
    g = _load_algebra(args.algebra)
    phis = []
    for path in [args.phi] + (args.phi2 or []):
        with open(path, "r", encoding="utf-8") as handle:
            phis.append(cohomology.Cochain.from_doc(g, json.load(handle)))
    d = deform.DeformedBracket(g, tuple(phis))
    expansion = deform.jacobi_polynomial(d)
    report = Report("deform check")
    for degree in range(2 * d.order + 1):
        offenders = sorted(
            tuple(x + 1 for x in triple)
            for triple, polys in expansion.items()
            if any(degree in p.coeffs for p in polys)
        )
        report.add(
            f"t^{degree}",
            "0",
            "0" if not offenders else f"residual on triples {offenders}",
            not offenders,
        )
    defect = deform.deformation_is_lie(d)
    if defect is None:
        report.add("graded_jacobi", None, None, True)
    else:
        shown = {
            "triple": [x + 1 for x in defect.triple],
            "degree": defect.degree,
            "residual": {str(k + 1): str(v) for k, v in defect.residual.items()},
        }
        report.add("graded_jacobi", None, shown, False)
    return _finish(args, report, t0)


def cmd_rigidity(args) -> int:
    t0 = time.time()
    g = _load_algebra(args.algebra)
    rr = deform.rigidity_report(g)
    report = Report("rigidity")
    for key, value in rr.to_doc().items():
        report.add(key, None, value, ok=True)
    return _finish(args, report, t0)


def cmd_extend(args) -> int:
    g = _load_algebra(args.algebra)
    with open(args.cocycle, "r", encoding="utf-8") as handle:
        theta = extend.CentralCocycle.from_doc(g, json.load(handle))
    bigger = extend.central_extension(g, theta)
    doc = bigger.to_doc()
    _emit(args, doc, json.dumps(doc, indent=2))
    return 0


def cmd_reconstruct(args) -> int:
    t0 = time.time()
    g = _load_algebra(args.algebra)
    quot, theta = extend.induced_cocycle(g)
    rebuilt = extend.central_extension(quot.algebra, theta)
    round_trip = rebuilt.invariant_signature() == g.invariant_signature()
    report = Report("reconstruct")
    report.add("round_trip_signature", True, round_trip)
    payload = report.to_doc()
    payload["quotient"] = quot.algebra.to_doc()
    payload["cocycle"] = theta.to_doc()
    report.timing_ms = int((time.time() - t0) * 1000)
    _emit(args, payload, report.render_text())
    return 0 if round_trip else 1


def cmd_qheis_normalize(args) -> int:
    expr = qheis.parse_qexpr(args.expr)
    q_value = GaussRat(args.q) if args.q is not None else None
    nf = qheis.normal_order(expr, q_value)
    doc = {
        "format": "lieq-1",
        "normal_form": {f"{m},{n}": poly.to_doc() for (m, n), poly in sorted(nf.coeffs.items())},
    }
    _emit(args, doc, str(nf))
    return 0


def cmd_qheis_verify(args) -> int:
    t0 = time.time()
    report = Report("qheis verify")
    top = args.max_n
    for n in range(1, min(top, 20) + 1):
        report.add(f"binomial_recursion_vs_closed n={n}", True,
                   all(qheis.q_binomial(n, k) == qheis.q_binomial_closed(n, k) for k in range(n + 1)))
    for n in range(1, top + 1):
        report.add(f"powandprod n={n}", True, qheis.verify_powandprod(n))
    for q0 in ("-1", "-1/2", "1/3", "2"):
        ok = all(qheis.verify_powandprod_reciprocal(n, GaussRat(q0)) for n in range(1, min(top, 8) + 1))
        report.add(f"powandprod_reciprocal q={q0}", True, ok)
    for n in range(1, min(top, 6) + 1):
        report.add(f"bnan n={n}", True, qheis.verify_generalized_jacobi("bnan", n))
        report.add(f"anbn n={n}", True, qheis.verify_generalized_jacobi("anbn", n))
    report.add("bracketBmAn m,n<=6", True,
               all(qheis.verify_generalized_jacobi("bracketBmAn", n, m)
                   for m in range(1, 7) for n in range(1, 7)))
    report.add("q_zero_table n,m<=8", True,
               all(qheis.q_zero_products(n, m) == qheis.q_zero_expected(n, m)
                   for n in range(1, 9) for m in range(1, 9)))
    for which in qheis._FREE_ITEMS:
        report.add(f"free_{which}", True, qheis.free_identity_check(which))
    report.add("subset_sum n<=8", True,
               all(bool(qheis.subset_sum_binomial_check(n, k))
                   for n in range(1, 9) for k in range(n + 1)))
    return _finish(args, report, t0)


def cmd_fock_build(args) -> int:
    n = args.n
    if n * n > _size_cap():
        raise fock.SizeCap(f"{n}x{n} matrix exceeds LIEQ_SIZE_CAP")
    if args.mode == "float":
        c, cdag = fock.orthonormal_rep_float(_as_float(args.q), n)
        doc = {
            "format": "lieq-1",
            "mode": "float",
            "n": n,
            "superdiagonal": [c[m, m + 1] for m in range(n - 1)],
        }
        _emit(args, doc, "\n".join(str(x) for x in doc["superdiagonal"]))
        return 0
    q0 = GaussRat(args.q)
    a, b = fock.monomial_rep(q0, n)
    doc = {
        "format": "lieq-1",
        "mode": "exact",
        "q": args.q,
        "n": n,
        "lowering": _matrix_doc(a),
        "raising": _matrix_doc(b),
    }
    _emit(args, doc, json.dumps(doc, indent=2))
    return 0


def _as_float(text: str) -> float:
    from fractions import Fraction

    return float(Fraction(text))


def cmd_fock_verify(args) -> int:
    t0 = time.time()
    q0 = GaussRat(args.q)
    n = args.n
    if n * n > _size_cap():
        raise fock.SizeCap(f"{n}x{n} matrix exceeds LIEQ_SIZE_CAP")
    a, b = fock.monomial_rep(q0, n)
    report = Report("fock verify")
    defect = fock.qccr_defect(a, b, q0)
    report.add("defect_corner_only", True, fock.defect_is_corner_only(defect, q0))
    spectrum = fock.number_operator_spectrum(a, b)
    report.add("spectrum_closed_form", True, spectrum == fock.spectrum_closed_form(q0, n))
    weights = [GaussRat(k + 1) for k in range(min(n, 12))]
    try:
        system = fock.biorthogonal_pair(weights, q0, len(weights))
        report.add(
            "biorthogonality",
            True,
            system.pairing_matrix() == SparseMatrix.identity(len(weights)),
        )
        report.add(
            "squared_ladder",
            True,
            system.squared_ladder_coefficients()
            == [fock.q_int(m + 1, q0) for m in range(len(weights) - 1)],
        )
    except LieqError as err:
        report.add("biorthogonality", "constructible", str(err), ok=False)
    return _finish(args, report, t0)


def cmd_fock_cuntz(args) -> int:
    t0 = time.time()
    ct = fock.cuntz_toeplitz(args.d, args.depth, _size_cap())
    report = Report("fock cuntz")
    report.add("dim", None, ct.dim, ok=True)
    ok = all(
        ct.defect_supported_on_top_degree(i, j) for i in range(args.d) for j in range(args.d)
    )
    report.add("isometry_defect_top_degree_only", True, ok)
    return _finish(args, report, t0)


def cmd_verify_all(args) -> int:
    t0 = time.time()
    rng = random.Random(args.seed)
    report = Report("verify-all")

    cat_report = catalog.verify_all()
    report.add("catalog", "pass", "pass" if cat_report.ok else "fail")

    sl2 = catalog.get("sl2").algebra
    der, inn = cohomology.derivation_dims(sl2)
    report.add("sl2_der_inn", (3, 3), (der, inn))
    report.add("sl2_h2", 0, cohomology.schur_multiplier_dim(sl2))
    rr = deform.rigidity_report(sl2)
    report.add("sl2_rigidity", (6, 6, True, True),
               (rr.orbit_tangent_dim, rr.dim_b2, rr.nr_rigid, rr.tangent_equals_b2))

    d2_ok = True
    for name in catalog.list_names():
        g = catalog.get(name).algebra
        for rep in (cohomology.adjoint_rep(g), cohomology.trivial_rep(g, 1)):
            for k in range(g.dim + 1):
                d2_ok = d2_ok and cohomology.d_squared_check(g, rep, k)
    report.add("d_squared_zero", True, d2_ok)

    ss_ok = True
    for name in catalog.list_names():
        g = catalog.get(name).algebra
        if g.is_nilpotent() is None or g.center().dim == 0 or g.dim == 0:
            continue
        quot, theta = extend.induced_cocycle(g)
        rebuilt = extend.central_extension(quot.algebra, theta)
        ss_ok = ss_ok and rebuilt.invariant_signature() == g.invariant_signature()
    report.add("skjelbred_sund_round_trip", True, ss_ok)

    from .liealg import abelian

    base = abelian(3)
    phi = cohomology.Cochain(base, 2, 3, {(0, 1): {2: 1}})
    report.add(
        "zero_base_deformation",
        None,
        deform.deformation_is_lie(deform.make_linear_deformation(base, phi)),
    )
    h1 = catalog.get("h(1)").algebra
    counter = cohomology.Cochain(h1, 2, 3, {(0, 2): {0: 1}})
    report.add("cyclic_cocycle_counterexample_passes_cycle", True,
               cohomology.is_two_cocycle_trivial_coeffs(counter))
    defect = deform.deformation_is_lie(deform.make_linear_deformation(h1, counter))
    report.add("cyclic_cocycle_counterexample_fails_full", True, defect is not None)

    q_ok = all(qheis.verify_powandprod(n) for n in range(1, 13))
    q_ok = q_ok and all(
        qheis.verify_powandprod_reciprocal(n, GaussRat(q0))
        for n in range(1, 9)
        for q0 in ("-1", "-1/2", "1/3", "2")
    )
    q_ok = q_ok and all(
        qheis.verify_generalized_jacobi(which, n)
        for which in ("bnan", "anbn")
        for n in range(1, 7)
    )
    q_ok = q_ok and all(
        qheis.verify_generalized_jacobi("bracketBmAn", n, m)
        for m in range(1, 7)
        for n in range(1, 7)
    )
    q_ok = q_ok and all(qheis.free_identity_check(w) for w in qheis._FREE_ITEMS)
    q_ok = q_ok and all(
        qheis.q_zero_products(n, m) == qheis.q_zero_expected(n, m)
        for n in range(1, 9)
        for m in range(1, 9)
    )
    q_ok = q_ok and all(
        qheis.q_binomial(n, k) == qheis.q_binomial_closed(n, k)
        for n in range(1, 21)
        for k in range(n + 1)
    )
    report.add("q_identity_suite", True, q_ok)

    fock_ok = True
    for q_text in ("-1", "-1/2", "0", "1/3", "1"):
        q0 = GaussRat(q_text)
        for n in (8, 32):
            a, b = fock.monomial_rep(q0, n)
            fock_ok = fock_ok and fock.defect_is_corner_only(fock.qccr_defect(a, b, q0), q0)
            fock_ok = fock_ok and fock.number_operator_spectrum(a, b) == fock.spectrum_closed_form(q0, n)
    report.add("fock_interior_exactness", True, fock_ok)

    bio_ok = True
    for q_text in ("1", "1/2"):
        q0 = GaussRat(q_text)
        for _ in range(5):
            weights = [GaussRat(rng.randint(1, 40), 0) / GaussRat(rng.randint(1, 40), 0)
                       for _ in range(rng.randint(2, 16))]
            system = fock.biorthogonal_pair(weights, q0)
            bio_ok = bio_ok and system.pairing_matrix() == SparseMatrix.identity(len(weights))
            bio_ok = bio_ok and system.squared_ladder_coefficients() == [
                fock.q_int(m + 1, q0) for m in range(len(weights) - 1)
            ]
    report.add("biorthogonality", True, bio_ok)

    sp = fock.shifted_pair(GaussRat(1), GaussRat(0, 1), 8)
    ash = catalog.get("a_sh").algebra
    expected_consts = {pair: vec.get(4) for pair, vec in ash.brackets.items()}
    report.add("shifted_pair_matches_a_sh", True, sp.extracted_constants() == expected_consts)

    c, cdag = fock.car_pair_2x2()
    transport_ok = (c @ cdag + cdag @ c) == SparseMatrix.identity(2)
    for _ in range(25):
        t = _random_invertible(rng, 2)
        result = fock.similarity_transport([(c, cdag)], t, GaussRat(-1))
        transport_ok = transport_ok and result.conjugation_exact
        transport_ok = transport_ok and result.defects_transported[(0, 0)].is_zero()
    for q_text in ("0", "1/3", "1"):
        q0 = GaussRat(q_text)
        a, b = fock.monomial_rep(q0, 6)
        t = _random_invertible(rng, 6)
        result = fock.similarity_transport([(a, b)], t, q0)
        transport_ok = transport_ok and result.conjugation_exact
    report.add("similarity_transport", True, transport_ok)

    ct_ok = True
    for d in (2, 3):
        ct = fock.cuntz_toeplitz(d, 3, _size_cap())
        ct_ok = ct_ok and all(
            ct.defect_supported_on_top_degree(i, j) for i in range(d) for j in range(d)
        )
    report.add("cuntz_toeplitz", True, ct_ok)

    return _finish(args, report, t0)


def _random_invertible(rng: random.Random, n: int) -> SparseMatrix:
    while True:
        data = {}
        for r in range(n):
            for c in range(n):
                if rng.random() < 0.7:
                    value = GaussRat(rng.randint(-5, 5))
                    if value:
                        data[(r, c)] = value
        mat = SparseMatrix(n, data)
        if mat.inverse() is not None:
            return mat


# -- wiring --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that treats tokens like -1/2 as values, not flags."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lieq", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="browse the built-in algebra library")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("algebra", parents=[common], help="invariants of an algebra")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("cohomology", parents=[common], help="Betti numbers")
    p.add_argument("--algebra", required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--coeffs", choices=["ad", "trivial"], default="ad")
    p.add_argument("--module-dim", type=int, default=1)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("deform", parents=[common], help="deformation checks")
    p.add_argument("action", choices=["check"])
    p.add_argument("--algebra", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--phi2", action="append")
    p.set_defaults(func=cmd_deform_check)

    p = sub.add_parser("rigidity", parents=[common], help="rigidity report")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("extend", parents=[common], help="central extension by a cocycle")
    p.add_argument("--algebra", required=True)
    p.add_argument("--cocycle", required=True)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("reconstruct", parents=[common], help="quotient + induced cocycle round trip")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("qheis", parents=[common], help="q-deformed Heisenberg algebra")
    qsub = p.add_subparsers(dest="qaction", required=True)
    pn = qsub.add_parser("normalize", parents=[common])
    pn.add_argument("expr")
    pn.add_argument("--q", default=None)
    pn.set_defaults(func=cmd_qheis_normalize)
    pv = qsub.add_parser("verify", parents=[common])
    pv.add_argument("--suite", default="all", choices=["all"])
    pv.add_argument("--max-n", type=int, default=12)
    pv.set_defaults(func=cmd_qheis_verify)

    p = sub.add_parser("fock", parents=[common], help="truncated ladder operators")
    fsub = p.add_subparsers(dest="faction", required=True)
    pb = fsub.add_parser("build", parents=[common])
    pb.add_argument("--q", required=True)
    pb.add_argument("--n", type=int, required=True)
    pb.add_argument("--mode", choices=["exact", "float"], default="exact")
    pb.set_defaults(func=cmd_fock_build)
    pv = fsub.add_parser("verify", parents=[common])
    pv.add_argument("--q", required=True)
    pv.add_argument("--n", type=int, required=True)
    pv.set_defaults(func=cmd_fock_verify)
    pc = fsub.add_parser("cuntz", parents=[common])
    pc.add_argument("--d", type=int, required=True)
    pc.add_argument("--depth", type=int, required=True)
    pc.set_defaults(func=cmd_fock_cuntz)

    p = sub.add_parser("verify-all", parents=[common], help="run the full verification battery")
    p.set_defaults(func=cmd_verify_all)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LieqError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
