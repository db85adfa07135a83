"""Command-line driver: build planes and V-set models, run checker suites,
emit deterministic JSON/text reports and model exports.

Exit codes: 0 all requested checks hold, 1 some check failed (the report is
still written), 2 configuration errors (bad field, kind/check mismatch, ...).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import axiomlab, projgeom, ringplane, vsets
from .gf import is_prime, make_field
from .quadalg import DUAL, EXTENSION, SPLIT, canonical_params, make_algebra
from .ringplane import build_plane, quadrangle_transitivity_report

CHECKS = ("algebra", "plane", "vaxioms", "saxioms", "haxioms",
          "equivalence", "transitivity", "uniqueness", "census")
CONSTRUCTIONS = ("matrices", "reduction", "juxtaposition", "parametrization")


class ConfigError(Exception):
    pass


def jsonable(x):
    """Recursively convert report payloads to JSON-serializable values."""
    if isinstance(x, axiomlab.AxiomReport):
        return jsonable(x.as_dict())
    if isinstance(x, projgeom.Subspace):
        return {"basis": [list(r) for r in x.basis], "dim": x.dim}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (frozenset, set)):
        return [jsonable(v) for v in sorted(x)]
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


# ---------------------------------------------------------------------------
# configuration

def parse_field(spec, modulus):
    try:
        if "^" in spec:
            ps, es = spec.split("^", 1)
            p, e = int(ps), int(es)
        else:
            p, e = int(spec), 1
    except ValueError:
        raise ConfigError("bad field spec %r (want P or P^E)" % spec)
    if not is_prime(p):
        raise ConfigError("field characteristic %d is not prime" % p)
    if e < 1:
        raise ConfigError("field extension degree must be >= 1")
    mod = "auto"
    if modulus:
        try:
            mod = tuple(int(c) for c in modulus.split(","))
        except ValueError:
            raise ConfigError("bad modulus %r" % modulus)
    try:
        return make_field(p, e, mod)
    except (ValueError, AssertionError) as exc:
        raise ConfigError(str(exc))


def resolve_algebra(args):
    F = parse_field(args.field, args.modulus)
    if F.q > 16:
        raise ConfigError("field order %d exceeds the supported bound 16" % F.q)
    have_kind = args.kind is not None
    have_tn = args.t is not None or args.n is not None
    if have_kind == have_tn:
        raise ConfigError("specify exactly one of --kind or --t/--n")
    if have_kind:
        kind = args.kind.capitalize()
        if kind not in (EXTENSION, DUAL, SPLIT):
            raise ConfigError("unknown kind %r" % args.kind)
        t, n = canonical_params(F, kind)
    else:
        if args.t is None or args.n is None:
            raise ConfigError("--t and --n must be given together")
        t, n = args.t, args.n
        if not (0 <= t < F.q and 0 <= n < F.q):
            raise ConfigError("--t/--n must be field indices in [0, %d)" % F.q)
    return make_algebra(F, t, n)


def parse_list(value, allowed, label):
    items = [v.strip() for v in value.split(",") if v.strip()]
    if not items:
        raise ConfigError("empty %s list" % label)
    for v in items:
        if v not in allowed:
            raise ConfigError("unknown %s %r (choose from %s)"
                              % (label, v, ", ".join(allowed)))
    return items


def validate_checks(alg, checks):
    if "saxioms" in checks and alg.kind != SPLIT:
        raise ConfigError("check 'saxioms' requires the Split kind, got %s" % alg.kind)
    if "haxioms" in checks and alg.kind != DUAL:
        raise ConfigError("check 'haxioms' requires the Dual kind, got %s" % alg.kind)
    if ("transitivity" in checks or "uniqueness" in checks) and alg.field.q > 3:
        raise ConfigError("checks 'transitivity'/'uniqueness' are guarded to q <= 3")


# ---------------------------------------------------------------------------
# individual checks (each returns a dict with a 'holds' key)

def check_algebra(ctx):
    alg = ctx["alg"]
    F = alg.field
    witnesses = []
    for a in range(alg.size):
        if alg.sigma(alg.sigma(a)) != a:
            witnesses.append(("sigma-involution", list(alg.xy(a))))
        if alg.mul(a, alg.sigma(a)) != alg.scalar(alg.norm(a)):
            witnesses.append(("norm", list(alg.xy(a))))
        if alg.add(a, alg.sigma(a)) != alg.scalar(alg.trace(a)):
            witnesses.append(("trace", list(alg.xy(a))))
    if alg.kind == EXTENSION:
        expected_v0 = {0}
    elif alg.kind == DUAL:
        expected_v0 = alg.k_line(alg.r)
    else:
        expected_v0 = alg.k_line(alg.r) | alg.k_line(alg.s)
    if alg.v0() != expected_v0:
        witnesses.append(("zero-divisors", sorted(alg.v0())))
    surjective = alg.product_surjectivity()
    if not surjective:
        witnesses.append(("product-surjectivity", False))
    roots = sum(1 for z in F.elements()
                if F.add(F.mul(z, z), F.sub(alg.n, F.mul(alg.t, z))) == 0)
    if {0: EXTENSION, 1: DUAL, 2: SPLIT}[roots] != alg.kind:
        witnesses.append(("kind-vs-roots", roots, alg.kind))
    return {"holds": not witnesses, "witnesses": witnesses[:10],
            "kind": alg.kind, "t": alg.t, "n": alg.n,
            "units": len(alg.units), "product_surjectivity": surjective}


def check_plane(ctx):
    plane = ctx["plane"]
    alg = ctx["alg"]
    witnesses = []
    m = len(plane.points)
    expected = ringplane.expected_point_count(alg)
    if m != expected:
        witnesses.append(("point-count", m, expected))
    if len(plane.lines) != expected:
        witnesses.append(("line-count", len(plane.lines)))
    size = ringplane.expected_line_size(alg)
    bad = [li for li, row in enumerate(plane.points_on_line) if len(row) != size]
    if bad:
        witnesses.append(("line-size", bad[:5]))
    nbr = plane.neighbor_classes()
    return {"holds": not witnesses, "witnesses": witnesses,
            "points": m, "lines": len(plane.lines), "line_size": size,
            "neighbor_classes": nbr}


def check_vaxioms(ctx):
    model = ctx["model"]
    reports = axiomlab.check_v_axioms(model)
    pi4, _ = axiomlab.reference_tangent_check(model)
    refq = axiomlab.reference_line_quadric_check(model)
    holds = all(r.holds for r in reports.values()) and pi4 and refq
    return {"holds": holds, "reports": reports,
            "reference_tangent_pi4": pi4, "reference_line_quadric": refq}


def check_saxioms(ctx):
    model = ctx["model"]
    F = model.algebra.field
    out = axiomlab.check_s_axioms(model)
    refs = {n: axiomlab.check_s_reference(n, F) for n in (2, 3)}
    holds = (all(out[k].holds for k in ("S1", "S2", "S3*"))
             and out["segre_equivalent"]
             and all(all(r[k].holds for k in ("S1", "S2", "S3*")) and r["all_hypos"]
                     for r in refs.values()))
    return {"holds": holds,
            "reports": {k: out[k] for k in ("S1", "S2", "S3*")},
            "segre_equivalent": out["segre_equivalent"],
            "segre_projectivity": out["segre_projectivity"],
            "singular_plane_census": out["singular_plane_census"]["per_point_counts"],
            "references": {"S_1,%d" % n: {k: r[k] for k in ("S1", "S2", "S3*")}
                           for n, r in refs.items()}}


def _h_report(ctx):
    if "hjelmslev" not in ctx:
        ctx["hjelmslev"] = axiomlab.check_h_axioms(ctx["model"])
    return ctx["hjelmslev"]


H_REPORT_KEYS = ("H1", "H2", "H3*", "Hj1", "Hj2", "Hj3", "Hj4",
                 "chi_well_defined", "line_in_unique_plane",
                 "scroll_cones", "scroll_cross_ratio")


def check_haxioms(ctx):
    h = _h_report(ctx)
    holds = (all(h[k].holds for k in H_REPORT_KEYS)
             and h["Y_is_plane"] and h["radical_bijection"]
             and h["veronese"]["identified"] and h["veronese"]["skew_to_pi_Y"])
    return {"holds": holds,
            "reports": {k: h[k] for k in H_REPORT_KEYS},
            "Y_is_plane": h["Y_is_plane"],
            "radical_bijection": h["radical_bijection"],
            "veronese": {k: v for k, v in h["veronese"].items()},
            "census": h["census"]}


def check_census(ctx):
    alg = ctx["alg"]
    q = alg.field.q
    if alg.kind == DUAL:
        census = dict(_h_report(ctx)["census"])
        holds = (set(census["g_x"]) == {q + 1}
                 and set(census["n_x"]) == {q * q + q}
                 and set(census["X_y_sizes"]) == {q * q * (q + 1)}
                 and census.get("identity_4nx_gx_1", True))
    elif alg.kind == SPLIT:
        counts = axiomlab.singular_plane_census(
            alg.field, ctx["model"].X)["per_point_counts"]
        census = {"n": len(ctx["model"].X), "per_point_singular_planes": counts}
        holds = set(counts) == {2}
    else:
        census = {"n": len(ctx["model"].X),
                  "line_quadric_size": q * q + 1}
        holds = len(ctx["model"].X) == ringplane.expected_point_count(alg)
    return {"holds": holds, "census": census}


def check_equivalence(ctx):
    alg = ctx["alg"]
    plane = ctx["plane"]
    wanted = ctx["constructions"]
    models = {"matrices": ctx["model"]}
    out = {"holds": True}
    for name, builder in (("reduction", vsets.build_vset_reduction),
                          ("juxtaposition", vsets.build_vset_juxtaposition)):
        if name not in wanted:
            continue
        models[name] = builder(alg, plane)
        M = vsets.models_equivalent(models[name], models["matrices"])
        out["%s_to_matrices" % name] = M
        out["holds"] = out["holds"] and M is not None
    if "parametrization" in wanted:
        rep = vsets.build_vset_parametrization(
            alg, plane=plane, matrices_model=ctx["model"])
        out["parametrization"] = {k: rep.get(k) for k in
                                  ("span_dim", "discriminant",
                                   "equivalent_to_matrices",
                                   "equivalent_to_veronese", "squares_plane")}
        disc_nonzero = rep["discriminant"] != 0
        if disc_nonzero:
            out["holds"] = out["holds"] and rep["equivalent_to_matrices"]
        elif alg.field.p != 2:
            out["holds"] = out["holds"] and rep["equivalent_to_veronese"]
        else:
            out["holds"] = out["holds"] and rep["squares_plane"]
    return out


def check_transitivity(ctx):
    rep = quadrangle_transitivity_report(ctx["plane"])
    return {"holds": rep["sharp_projective"], **rep}


def check_uniqueness(ctx):
    rep = axiomlab.containment_uniqueness(ctx["model"])
    return {"holds": rep.holds, "report": rep}


CHECK_RUNNERS = {
    "algebra": check_algebra,
    "plane": check_plane,
    "vaxioms": check_vaxioms,
    "saxioms": check_saxioms,
    "haxioms": check_haxioms,
    "equivalence": check_equivalence,
    "transitivity": check_transitivity,
    "uniqueness": check_uniqueness,
    "census": check_census,
}

NEEDS_MODEL = {"vaxioms", "saxioms", "haxioms", "equivalence",
               "uniqueness", "census"}


# ---------------------------------------------------------------------------
# report assembly

def report_digest(report):
    """Stable hash of the report with the timing block excluded."""
    stripped = {k: v for k, v in report.items() if k not in ("timings", "digest")}
    blob = json.dumps(jsonable(stripped), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def run_checks(alg, checks, constructions, threads):
    ctx = {"alg": alg, "constructions": constructions}
    ctx["plane"] = build_plane(alg)
    if any(c in NEEDS_MODEL for c in checks):
        ctx["model"] = vsets.build_vset_matrices(alg, ctx["plane"])
    report = {
        "config": {
            "field": alg.field.as_dict(),
            "algebra": alg.as_dict(),
            "checks": list(checks),
            "constructions": list(constructions),
            "threads": threads,
        },
        "checks": {},
        "timings": {},
    }
    all_hold = True
    for name in checks:
        t0 = time.perf_counter()
        result = CHECK_RUNNERS[name](ctx)
        report["timings"][name] = round(time.perf_counter() - t0, 6)
        result["anchor"] = "check:%s" % name
        report["checks"][name] = result
        all_hold = all_hold and result["holds"]
    report["holds"] = all_hold
    report["digest"] = report_digest(report)
    return report, all_hold


def format_text(report):
    lines = []
    cfg = report["config"]
    lines.append("field F_%d^%d  algebra (t=%d, n=%d)  kind %s"
                 % (cfg["field"]["p"], cfg["field"]["e"], cfg["algebra"]["t"],
                    cfg["algebra"]["n"], cfg["algebra"]["kind"]))
    lines.append("%-14s %-6s" % ("check", "holds"))
    for name, result in report["checks"].items():
        lines.append("%-14s %-6s" % (name, "PASS" if result["holds"] else "FAIL"))
    lines.append("overall: %s" % ("PASS" if report["holds"] else "FAIL"))
    lines.append("digest: %s" % report["digest"])
    return "\n".join(lines) + "\n"


def emit(report, fmt, out):
    if fmt == "json":
        text = json.dumps(jsonable(report), sort_keys=True, indent=1) + "\n"
    else:
        text = format_text(report)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args):
    alg = resolve_algebra(args)
    checks = parse_list(args.checks, CHECKS, "check")
    constructions = parse_list(args.construction, CONSTRUCTIONS, "construction")
    validate_checks(alg, checks)
    if args.threads < 1:
        raise ConfigError("--threads must be >= 1")
    report, all_hold = run_checks(alg, checks, constructions, args.threads)
    emit(report, args.format, args.out)
    return 0 if all_hold else 1


def cmd_export(args):
    alg = resolve_algebra(args)
    constructions = parse_list(args.construction, CONSTRUCTIONS, "construction")
    outdir = args.out or "."
    import os
    os.makedirs(outdir, exist_ok=True)
    plane = build_plane(alg)
    written = []

    def dump(name, payload):
        path = os.path.join(outdir, name)
        with open(path, "w") as fh:
            json.dump(jsonable(payload), fh, sort_keys=True, indent=1)
            fh.write("\n")
        written.append(path)

    dump("plane.json", plane.as_dict())
    matrices = None
    for name in constructions:
        if name == "parametrization":
            rep = vsets.build_vset_parametrization(
                alg, plane=plane, matrices_model=matrices)
            dump("vset_parametrization.json",
                 {k: rep[k] for k in ("points", "span_dim", "discriminant",
                                      "equivalent_to_matrices",
                                      "equivalent_to_veronese", "squares_plane")
                  if k in rep})
            continue
        builder = {"matrices": vsets.build_vset_matrices,
                   "reduction": vsets.build_vset_reduction,
                   "juxtaposition": vsets.build_vset_juxtaposition}[name]
        model = builder(alg, plane)
        if name == "matrices":
            matrices = model
        dump("vset_%s.json" % name, model.as_dict())
    grid = []
    for row in plane.points_on_line:
        grid.append("".join("1" if pi in row else "0"
                            for pi in range(len(plane.points))))
    path = os.path.join(outdir, "incidence.txt")
    with open(path, "w") as fh:
        fh.write("\n".join(grid) + "\n")
    written.append(path)
    sys.stdout.write("\n".join(written) + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quadplanes",
        description="Projective planes over quadratic 2-dimensional algebras "
                    "and their Veronesean models in PG(8,q).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--field", required=True,
                       help="field order as P or P^E (P prime)")
        p.add_argument("--modulus", default=None,
                       help="irreducible modulus coefficients c0,c1,... (low degree first)")
        p.add_argument("--kind", default=None,
                       help="algebra kind: extension | dual | split")
        p.add_argument("--t", type=int, default=None, help="algebra parameter t")
        p.add_argument("--n", type=int, default=None, help="algebra parameter n")
        p.add_argument("--construction", default="matrices",
                       help="comma list of %s" % ",".join(CONSTRUCTIONS))
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", default=None, help="output path")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads (accepted; execution is single-threaded)")

    pv = sub.add_parser("verify", help="run checker suites and emit a report")
    add_common(pv)
    pv.add_argument("--checks", required=True,
                    help="comma list of %s" % ",".join(CHECKS))

    pe = sub.add_parser("export", help="write plane/model JSON and incidence grid")
    add_common(pe)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_export(args)
    except ConfigError as exc:
        sys.stderr.write("config error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
