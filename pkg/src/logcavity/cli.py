"""Batch command-line surface: parse inputs, dispatch to the library, emit
deterministic machine-readable reports.

Exit codes: 0 success, 1 input/usage error, 2 a theorem-level invariant
failed on the given instance (the signal worth grepping for).
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, is_dataclass
from fractions import Fraction

from . import __version__
from .errors import LogcavityError, UsageError
from .linalg import Graph, QMatrix, laplacian, spanning_tree_count
from .matroids import Matroid
from .polynomials import (
    MPoly,
    basis_generating_poly,
    coefficient_logconcavity,
    lorentzian_check,
)
from .posets import (
    MarkedPoset,
    Poset,
    extension_extremes,
    kahn_saks_extremal_classify,
    kahn_saks_positivity,
    kahn_saks_sequence,
    midway_check,
    region_partition,
    stanley_all_positions,
    stanley_sequence,
)
from .discriminants import (
    alexandrov_check,
    mixed_discriminant_gram,
    mixed_discriminant_perm,
)
from .hodge import (
    annihilator_containment_probe,
    facet_theorem_scan,
    graded_dims,
    hl_check,
    hr_form,
    hrr_check,
    mobius_pairing,
    socle_check,
)
from .stanley import (
    B_count,
    g_polynomial,
    mixed_volume_zonotopes,
    ratio_condition_check,
    stanley_matroid_sequence,
    zonotope_volume,
)
from . import zoo


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: dict
    findings: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    version: str = __version__


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if is_dataclass(x) and not isinstance(x, type):
        return _jsonable(asdict(x))
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((_jsonable(v) for v in x), key=str)
    if isinstance(x, QMatrix):
        return x.to_json()
    return x


def _emit(report: RunReport, args) -> int:
    payload = _jsonable(
        {
            "command": report.command,
            "inputs": report.inputs,
            "results": report.results,
            "findings": report.findings,
            "violations": report.violations,
            "version": report.version,
        }
    )
    if getattr(args, "format", "json") == "csv":
        lines = ["key,value"]
        flat = _flatten(payload)
        for k in sorted(flat):
            lines.append(f"{k},{flat[k]}")
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 2 if report.violations else 0


def _flatten(obj, prefix=""):
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}{k}."))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            out.update(_flatten(v, f"{prefix}{i}."))
    else:
        out[prefix.rstrip(".")] = json.dumps(obj)
    return out


def _load_json(path, what):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"{what} file not found: {path}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{what} file is not valid JSON: {e}")


def _load_matroid(args) -> Matroid:
    if getattr(args, "matroid", None):
        m = Matroid.from_json(_load_json(args.matroid, "matroid"))
    elif getattr(args, "graph", None):
        m = Matroid.graphic(Graph.from_json(_load_json(args.graph, "graph")))
    else:
        raise UsageError("a --matroid or --graph file is required")
    cap = getattr(args, "cap_elements", None)
    if cap is not None and m.n > cap:
        raise UsageError(
            f"matroid has {m.n} elements, over the --cap-elements limit {cap}"
        )
    return m


def _load_marked_poset(args) -> MarkedPoset:
    obj = _load_json(args.poset, "poset")
    x = getattr(args, "x", None) or obj.get("x")
    y = getattr(args, "y", None) or obj.get("y")
    if x is None or y is None:
        raise UsageError("marks x and y are required (flags or poset JSON)")
    return MarkedPoset(Poset.from_json(obj), x, y)


def _parse_labels(m: Matroid, csv):
    if csv is None:
        raise UsageError("an element list like --R '1,4,5' is required")
    raw = [s.strip() for s in csv.split(",") if s.strip()]
    by_str = {str(g): g for g in m.ground}
    out = []
    for item in raw:
        if item not in by_str:
            raise UsageError(f"element {item!r} is not in the ground set")
        out.append(by_str[item])
    return out


def _parse_point(csv, n):
    if csv is None:
        return tuple(Fraction(1) for _ in range(n))
    parts = [s.strip() for s in csv.split(",")]
    if len(parts) != n:
        raise UsageError(f"point needs {n} coordinates, got {len(parts)}")
    try:
        return tuple(Fraction(p) for p in parts)
    except ValueError:
        raise UsageError("point coordinates must be rationals like 0, 1, 3/2")


def cmd_poset(args):
    obj = _load_json(args.poset, "poset")
    p = Poset.from_json(obj)
    cap = args.cap_extensions
    count = p.count_extensions(cap)
    results = {"n": p.n, "extensions": count}
    violations = []
    x = getattr(args, "x", None) or obj.get("x")
    if x is not None:
        seq = stanley_sequence(p, x, cap)
        results["stanley_N"] = seq
        lc = all(
            seq[k] * seq[k] >= seq[k - 1] * seq[k + 1]
            for k in range(1, len(seq) - 1)
        )
        results["stanley_log_concave"] = lc
        if not lc:
            violations.append("stanley poset log-concavity failed")
    else:
        results["position_counts"] = stanley_all_positions(p, cap)
    return RunReport("poset", {"poset": obj}, results, violations=violations)


def cmd_kahnsaks(args):
    mp = _load_marked_poset(args)
    cap = args.cap_extensions
    seq = kahn_saks_sequence(mp, cap)
    results = {"N": seq}
    violations = []
    lc = all(
        seq[k] * seq[k] >= seq[k - 1] * seq[k + 1]
        for k in range(1, len(seq) - 1)
    )
    results["log_concave"] = lc
    if not lc:
        violations.append("kahn-saks log-concavity failed")
    per_k = {}
    for k in range(1, len(seq) + 1):
        zero, reason = kahn_saks_positivity(mp, k)
        if zero != (seq[k - 1] == 0):
            violations.append(f"positivity criterion mismatch at k={k}")
        entry = {"N_k": seq[k - 1], "zero_criterion": zero, "reason": reason}
        entry.update(midway_check(mp, k))
        if seq[k - 1] > 0 and 2 <= k <= len(seq) - 1:
            verdict = kahn_saks_extremal_classify(mp, k, cap)
            entry["equality"] = verdict.equality
            entry["ratio"] = verdict.ratio
            entry["ratio_two_conditions"] = list(verdict.ratio_two_conditions)
            aligned = (verdict.ratio == 1) == (
                entry["midway"] or entry["dual_midway"]
            )
            if not aligned:
                violations.append(f"midway biconditional failed at k={k}")
        per_k[str(k)] = entry
    results["per_k"] = per_k
    results["extremes"] = extension_extremes(mp, cap)
    regions = region_partition(mp)
    results["regions"] = {
        "end_x": regions.end_x,
        "end_y": regions.end_y,
        "mid": regions.mid,
        "mid_x": regions.mid_x,
        "mid_y": regions.mid_y,
        "incomparable_both": regions.incomparable_both,
    }
    return RunReport(
        "kahnsaks", {"poset": mp.to_json()}, results, violations=violations
    )


def cmd_matroid(args):
    m = _load_matroid(args)
    data = m.parallel_data()
    results = {
        "ground": list(m.ground),
        "rank": m.rank,
        "bases": len(m.bases),
        "loops": m.loops(),
        "coloops": m.coloops(),
        "parallel_classes": [sorted(map(str, c)) for c in data.classes],
        "flats_per_rank": m.flats().rank_counts(),
        "graded_dims": graded_dims(m),
    }
    return RunReport("matroid", {"matroid": m.to_json()}, results)


def cmd_stanley(args):
    m = _load_matroid(args)
    r_labels = _parse_labels(m, args.R)
    seq = stanley_matroid_sequence(m, r_labels)
    results = {
        "N": list(seq.counts),
        "normalized": [str(x) for x in seq.normalized],
        "ultra_log_concave": seq.log_concave(),
        "equality_indices": seq.equality_indices(),
    }
    violations = []
    if not seq.log_concave():
        violations.append("ultra-log-concavity failed")
    findings = []
    if not m.loops():
        verdict = ratio_condition_check(m, r_labels)
        results["ratio_condition"] = {
            "holds": verdict.holds,
            "ratio": str(verdict.ratio) if verdict.ratio is not None else None,
        }
        if verdict.holds:
            nt = seq.normalized
            stepped = all(
                nt[k] == verdict.ratio * nt[k - 1] for k in range(1, len(nt))
            )
            results["ratio_step_verified"] = stepped
            if not stepped:
                violations.append("ratio theorem step failed")
        elif seq.equality_indices():
            findings.append(
                {
                    "kind": "equality-without-ratio-condition",
                    "detail": "normalized equality holds at "
                    f"{seq.equality_indices()} but the parallel-class ratio "
                    "condition fails; candidate witness for the open converse",
                }
            )
    deltas = {}
    r = m.rank
    q_labels = [e for e in m.ground if e not in set(r_labels)]
    g = g_polynomial(m, [r_labels, q_labels])
    from math import factorial

    cols = None
    if getattr(args, "graph", None):
        from .linalg import reduced_incidence_matrix

        graph = Graph.from_json(_load_json(args.graph, "graph"))
        if not graph.has_loop:
            ri = reduced_incidence_matrix(graph)
            cols = [tuple(ri.column(j)) for j in range(ri.cols)]
    for k in range(r + 1):
        b_enum = seq.counts[k] * factorial(k) * factorial(r - k)
        b_poly = g.coefficient((k, r - k)) * factorial(k) * factorial(r - k)
        delta = b_enum - b_poly
        if cols is not None:
            t_r = [cols[m._index[e]] for e in r_labels]
            t_q = [cols[m._index[e]] for e in q_labels]
            volume = mixed_volume_zonotopes([t_r] * k + [t_q] * (r - k))
            delta += abs(b_enum - factorial(r) * volume)
        deltas[str(k)] = str(delta)
    results["cross_check_deltas"] = deltas
    if any(v != "0" for v in deltas.values()):
        violations.append("basis counting routes disagree")
    return RunReport(
        "stanley",
        {"matroid": m.to_json(), "R": [str(e) for e in r_labels]},
        results,
        findings=findings,
        violations=violations,
    )


def cmd_lorentzian(args):
    if getattr(args, "poly", None):
        f = MPoly.from_json(_load_json(args.poly, "polynomial"))
        source = {"poly": f.to_json()}
    else:
        m = _load_matroid(args)
        f = basis_generating_poly(m)
        source = {"matroid": m.to_json()}
    report = lorentzian_check(f)
    results = {
        "passed": report.passed,
        "homogeneous": report.homogeneous,
        "m_convex_support": report.m_convex_support,
        "hessian_failures": len(report.failures),
        "coefficient_log_concavity": coefficient_logconcavity(f)
        if report.homogeneous
        else None,
    }
    violations = []
    if "matroid" in source and not report.passed:
        violations.append("basis generating polynomial failed Lorentzian check")
    return RunReport("lorentzian", source, results, violations=violations)


def cmd_discriminant(args):
    obj = _load_json(args.tuple, "matrix tuple")
    mats = []
    for entry in obj["mats"]:
        mat = QMatrix.from_json(entry["matrix"])
        for _ in range(entry.get("mult", 1)):
            mats.append(mat)
    value = mixed_discriminant_perm(mats)
    results = {"value": str(value), "n": mats[0].rows, "count": len(mats)}
    violations = []
    from .linalg import inertia as _inertia

    if all(m.is_symmetric and _inertia(m).n_neg == 0 for m in mats):
        if value < 0:
            violations.append("positivity failed for PSD tuple")
        results["psd_inputs"] = True
    else:
        results["psd_inputs"] = False
    if len(mats) == mats[0].rows and len(mats) >= 2:
        x, y, rest = mats[0], mats[1], mats[2:]
        try:
            rep = alexandrov_check(x, y, rest)
            results["alexandrov"] = {
                "lhs": str(rep.lhs),
                "rhs": str(rep.rhs),
                "equal": rep.equal,
                "lambda": str(rep.lam) if rep.lam is not None else None,
            }
            if rep.lhs < rep.rhs:
                violations.append("alexandrov inequality failed")
        except LogcavityError:
            pass
    return RunReport("discriminant", {"tuple": obj}, results, violations=violations)


def cmd_hodge(args):
    m = _load_matroid(args)
    k = args.k if args.k is not None else 1
    point = _parse_point(getattr(args, "point", None), m.n)
    dims = graded_dims(m)
    results = {"graded_dims": dims, "k": k}
    violations = []
    if dims != dims[::-1]:
        violations.append("graded dimensions are not palindromic")
    if 2 * k <= m.rank:
        count, iner = mobius_pairing(m, k)
        results["mobius_pairing"] = {
            "flats": count,
            "inertia": iner.as_tuple(),
        }
        q = hr_form(m, k, point)
        from .linalg import inertia as _inertia

        results["hr_form_inertia"] = _inertia(q.matrix).as_tuple()
        f = basis_generating_poly(m)
        if f.evaluate(point) > 0:
            results["hl"] = hl_check(m, k, point)
            results["hrr"] = hrr_check(m, k, point)
            if k == 1 and all(x > 0 for x in point) and not results["hrr"]:
                violations.append("HRR_1 failed at a strictly positive point")
        socle_s = []
        if m.rank_of(socle_s) <= m.rank - k - 1:
            results["socle_trivial"] = socle_check(m, k, socle_s)
            if not results["socle_trivial"]:
                violations.append("socle triviality failed")
    return RunReport(
        "hodge",
        {"matroid": m.to_json(), "k": k, "point": [str(x) for x in point]},
        results,
        violations=violations,
    )


def cmd_probe(args):
    m = _load_matroid(args)
    findings = []
    results = {"elements_probed": []}
    coloops = m.coloops()
    elements = (
        _parse_labels(m, args.e) if getattr(args, "e", None) else list(m.ground)
    )
    jobs = max(1, args.jobs)

    def run(e):
        if e in coloops:
            return e, None
        return e, annihilator_containment_probe(m, e)

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        probes = list(pool.map(run, elements))
    for e, probe in probes:
        if probe is None:
            continue
        results["elements_probed"].append(str(e))
        if not probe.contained:
            k, subsets, vec = probe.counterexample
            findings.append(
                {
                    "kind": "annihilator-containment-counterexample",
                    "element": str(e),
                    "degree": k,
                    "vector": [
                        {"subset": sorted(map(str, s)), "coeff": str(c)}
                        for s, c in zip(subsets, vec)
                        if c != 0
                    ],
                }
            )
    results["containment_holds_everywhere"] = not findings
    return RunReport(
        "probe", {"matroid": m.to_json()}, results, findings=findings
    )


def cmd_selftest(args):
    """Pinned acceptance fixtures, kept fast; exit 0 means all green."""
    checks = {}
    violations = []

    def record(name, ok):
        checks[name] = bool(ok)
        if not ok:
            violations.append(f"selftest: {name} failed")

    mk23 = Matroid.graphic(zoo.k23_graph())
    count, iner = mobius_pairing(mk23, 2)
    record("k23_pairing", count == 15 and iner.as_tuple() == (6, 6, 3))

    from .hodge import in_annihilator

    mA = zoo.linear_3x5_matroid()
    record(
        "explicit_annihilator",
        in_annihilator(
            mA,
            {
                frozenset({1, 3}): 1,
                frozenset({4, 5}): 1,
                frozenset({1, 5}): -1,
                frozenset({3, 4}): -1,
            },
        ),
    )

    u23 = Matroid.uniform(2, 3)
    record("u23_dims", graded_dims(u23) == [1, 3, 1])

    seq = kahn_saks_sequence(zoo.ratio_two_witness_poset())
    verdict = kahn_saks_extremal_classify(zoo.ratio_two_witness_poset(), 2)
    record(
        "ratio_two_witness",
        seq[:3] == [1, 2, 4]
        and verdict.ratio == 2
        and all(verdict.ratio_two_conditions),
    )

    from .zoo import random_psd_with_factor
    import random as _random

    rng = _random.Random(1)
    ok = True
    for _ in range(5):
        a1, x1 = random_psd_with_factor(rng, 3)
        a2, x2 = random_psd_with_factor(rng, 3)
        a3, x3 = random_psd_with_factor(rng, 3)
        ok &= mixed_discriminant_perm([a1, a2, a3]) == mixed_discriminant_gram(
            [x1, x2, x3]
        )
    record("mixed_discriminant_routes", ok)

    record(
        "lorentzian_u23",
        lorentzian_check(basis_generating_poly(u23)).passed,
    )
    return RunReport("selftest", {}, {"checks": checks}, violations=violations)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="logcavity",
        description="Exact log-concavity workbench: matroids, posets, mixed "
        "discriminants, Lorentzian polynomials, Hodge-Riemann certification.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, matroid=False, poset=False):
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--cap-extensions", type=int, default=3_628_800)
        p.add_argument("--cap-elements", type=int, default=16)
        if matroid:
            p.add_argument("--matroid", help="matroid JSON file")
            p.add_argument("--graph", help="graph JSON file (graphic matroid)")
        if poset:
            p.add_argument("--poset", required=True, help="poset JSON file")

    p = sub.add_parser("poset", help="linear extension statistics")
    common(p, poset=True)
    p.add_argument("--x", help="distinguished element")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("kahnsaks", help="Kahn-Saks sequence and extremals")
    common(p, poset=True)
    p.add_argument("--x")
    p.add_argument("--y")
    p.set_defaults(func=cmd_kahnsaks)

    p = sub.add_parser("matroid", help="matroid structure summary")
    common(p, matroid=True)
    p.set_defaults(func=cmd_matroid)

    p = sub.add_parser("stanley", help="basis counting sequence for a split")
    common(p, matroid=True)
    p.add_argument("--R", help="comma-separated elements of the R side")
    p.add_argument("--report", dest="out", help="alias of --out")
    p.set_defaults(func=cmd_stanley)

    p = sub.add_parser("lorentzian", help="Lorentzian certificate")
    common(p, matroid=True)
    p.add_argument("--poly", help="polynomial JSON file")
    p.set_defaults(func=cmd_lorentzian)

    p = sub.add_parser("discriminant", help="mixed discriminants")
    common(p)
    p.add_argument("--tuple", required=True, help="matrix tuple JSON file")
    p.set_defaults(func=cmd_discriminant)

    p = sub.add_parser("hodge", help="Gorenstein quotient certification")
    common(p, matroid=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--point", help="comma-separated rational coordinates")
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("probe", help="open-question probes (report only)")
    common(p, matroid=True)
    p.add_argument("--e", help="probe only these elements")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("selftest", help="run the pinned fixtures")
    common(p)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        report = args.func(args)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except LogcavityError as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return 1
    return _emit(report, args)


if __name__ == "__main__":
    sys.exit(main())
