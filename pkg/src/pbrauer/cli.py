"""Command-line front end: parse a field/model description and an expression,
run the pipeline for one subcommand, and emit a structured report.

Exit codes: 0 success, 2 mathematical rejection (the input is well-formed but
the requested certificate does not exist), 1 usage error (bad flags, grammar
errors, unsupported prime).
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass

from .errors import AlgebraError, ParseError, UnsupportedPrime
from .fields import FieldDescriptor, p_independence
from .differentials import (nonvanishing_degree_bound, paired_wedge_form,
                            restrict_omega2)
from .milnor import h2p
from .cdvf import CdvfModel, unit_layers
from .brauer import (INFINITE_LEVEL, brdim_report, filtration_level,
                     hilbert_specialize, index_bounds, normal_form,
                     sample_admissible_points, splitting_field)
from .parsing import (parse_brauer_class, parse_cert_sum, parse_symbol_sum,
                      pretty_class, pretty_ratfunc, pretty_symbol_sum)
from .reporting import build_report, serialize, to_json, to_text, write_bundle
from .selftest import SUITES, random_radical_embedding, run_all

COMMANDS = ("k2-vanish", "omega-cert", "normal-form", "split-field",
            "index-bounds", "brdim", "selftest")
CDVF_COMMANDS = ("normal-form", "split-field", "index-bounds", "brdim")
EXPR_COMMANDS = ("k2-vanish", "omega-cert", "normal-form", "split-field",
                 "index-bounds")


@dataclass(frozen=True)
class Request:
    command: str
    p: int
    var_names: tuple
    precision: int | None
    seed: int
    fmt: str
    out: str | None
    expr: str | None


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors exit 1; argparse's default is 2, reserved here for
        # mathematical rejections
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


_HELP = {
    "k2-vanish": "decide vanishing of a mod-p symbol sum over F_p(t1..tn)",
    "omega-cert": "certify a paired wedge form nonzero in all small extensions",
    "normal-form": "rewrite a period-2 class into its filtration normal form",
    "split-field": "emit a radical splitting field for a period-2 class",
    "index-bounds": "bound the index of a period-2 class",
    "brdim": "period-2 Brauer dimension interval for the model",
    "selftest": "run the seeded property suites of every module",
}


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="pbrauer",
                         description="period-p Brauer classes over a "
                                     "2-adic model field with residue "
                                     "field F_p(t1..tn)")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND",
                            parser_class=_ArgumentParser)
    for name in COMMANDS:
        sp = sub.add_parser(name, help=_HELP[name])
        sp.add_argument("--p", type=int, default=2,
                        help="residue characteristic (default 2)")
        sp.add_argument("--vars", default="", metavar="t1,t2,...",
                        help="residue p-basis variable names (default: none)")
        sp.add_argument("--precision", type=int, default=None,
                        help="truncation exponent L override (CDVF commands)")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for sampled certificates and selftest")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const",
                         const="json", help="JSON report on stdout (default)")
        fmt.add_argument("--text", dest="fmt", action="store_const",
                         const="text", help="plain-text report on stdout")
        sp.set_defaults(fmt="json")
        sp.add_argument("--out", default=None, metavar="DIR",
                        help="also write report.json, verdicts.csv and "
                             "figure.png under DIR")
        if name in EXPR_COMMANDS:
            sp.add_argument("expr", metavar="EXPR",
                            help="input expression (see the grammar in the "
                                 "README)")
    return ap


def parse_request(argv) -> Request:
    ns = build_parser().parse_args(argv)
    var_names = tuple(v.strip() for v in ns.vars.split(",") if v.strip())
    if ns.p not in (2, 3, 5):
        raise ParseError("unsupported characteristic %d (choose 2, 3 or 5)"
                         % ns.p)
    if ns.command in CDVF_COMMANDS and ns.p != 2:
        raise UnsupportedPrime("local-field commands are instantiated for "
                               "p = 2 only")
    return Request(ns.command, ns.p, var_names, ns.precision, ns.seed,
                   ns.fmt, ns.out, getattr(ns, "expr", None))


# ---------------------------------------------------------------------------
# dispatch

def _cmd_k2_vanish(req: Request):
    fld = FieldDescriptor(req.p, req.var_names)
    s = parse_symbol_sum(req.expr, fld)
    w = h2p(s)
    names = fld.var_names
    support = [["d%s^d%s" % (names[i], names[j]), pretty_ratfunc(c)]
               for (i, j), c in sorted(w.coords.items())]
    verdicts = {
        "vanishes": not w,
        "symbol_count": len(s),
        "omega2_support": support,
        "input_echo": pretty_symbol_sum(s),
    }
    certs = [{"kind": "differential-symbol-image",
              "note": "the map (a,b) -> da/a ^ db/b is injective on k2, "
                      "so the verdict is exact",
              "omega2": serialize(w)}]
    return verdicts, certs


def _cmd_omega_cert(req: Request):
    fld = FieldDescriptor(req.p, req.var_names)
    lambdas, gens = parse_cert_sum(req.expr, fld)
    bound = nonvanishing_degree_bound(lambdas, gens)
    rank = p_independence(gens)
    form = paired_wedge_form(lambdas, gens)
    verdicts = {
        "bound_exponent": bound,
        "nonvanishing_below_degree": req.p ** bound,
        "pair_count": bound,
        "generator_rank": rank.rank,
    }
    certs = [{"kind": "p-independence",
              "rank": rank.rank, "pivot_columns": list(rank.pivots)}]
    # spot-check: the form survives sampled radical restrictions of degree
    # p^(bound-1), the largest size the certificate covers
    root_vars = min(bound - 1, fld.num_vars)
    if root_vars >= 1:
        rng = random.Random(req.seed)
        samples = 50
        nonzero = sum(bool(restrict_omega2(form, random_radical_embedding(
            fld, rng, root_vars=root_vars))) for _ in range(samples))
        certs.append({"kind": "radical-restriction-sample",
                      "embedding_degree": req.p ** root_vars,
                      "samples": samples, "nonzero": nonzero})
    return verdicts, certs


def _model(req: Request) -> CdvfModel:
    return CdvfModel(FieldDescriptor(req.p, req.var_names),
                     precision=req.precision)


def _layer_grid(nf) -> dict:
    m = nf.model
    names = list(m.residue.var_names) + ["pi"]
    units = list(nf.lambdas) + [nf.pi_coeff]
    grid = [[0] * len(units) for _ in range(m.M)]
    for col, u in enumerate(units):
        for i, coeff in enumerate(unit_layers(u).layer_coeffs, start=1):
            if coeff:
                grid[i - 1][col] = 1
    return {"columns": names, "grid": grid}


def _cmd_normal_form(req: Request):
    m = _model(req)
    c = parse_brauer_class(req.expr, m)
    level = filtration_level(c)
    nf = normal_form(c)
    nfc = nf.as_class()
    diff_level = filtration_level(c + nfc)
    verdicts = {
        "level": serialize(level),
        "normal_form": serialize(nf),
        "normal_form_class": pretty_class(nfc),
        "is_zero": not nfc.entries,
        "layer_support": _layer_grid(nf),
        "sweeps": 1,
    }
    certs = [{"kind": "difference-extraction",
              "note": "input + normal form re-extracts to the zero class",
              "level": serialize(diff_level),
              "exact": diff_level == INFINITE_LEVEL}]
    if m.p == 2:
        rng = random.Random(req.seed)
        try:
            pts = sample_admissible_points([c, nfc], 20, rng)
            agree = sum(hilbert_specialize(c, pt) == hilbert_specialize(nfc, pt)
                        for pt in pts)
            certs.append({"kind": "hilbert-specialization",
                          "points": len(pts), "agreements": agree})
        except AlgebraError as exc:
            certs.append({"kind": "hilbert-specialization",
                          "skipped": str(exc)})
    return verdicts, certs


def _cmd_split_field(req: Request):
    m = _model(req)
    c = parse_brauer_class(req.expr, m)
    sf = splitting_field(c)
    verdicts = {
        "generators": [[name, deg] for name, deg in sf.generators],
        "total_degree": sf.total_degree,
        "symbol_count": len(c.entries),
    }
    certs = [{"kind": "radical-splitting-field",
              "note": "adjoining the listed roots splits every period-p "
                      "class over the model; degree p^2 roots of the first "
                      "n-1 basis lifts, degree p of the last and of pi"}]
    return verdicts, certs


def _cmd_index_bounds(req: Request):
    m = _model(req)
    c = parse_brauer_class(req.expr, m)
    ib = index_bounds(c)
    verdicts = {
        "lower_exp": ib.lower_exp,
        "upper_exp": ib.upper_exp,
        "index_lower": m.p ** ib.lower_exp,
        "index_upper": m.p ** ib.upper_exp,
        "exact": ib.lower_exp == ib.upper_exp,
    }
    certs = [{"kind": "index-bound", "note": note} for note in ib.certificates]
    return verdicts, certs


def _cmd_brdim(req: Request):
    m = _model(req)
    r = brdim_report(m)
    verdicts = {
        "lower": r.lower,
        "upper": r.upper,
        "p_rank": m.residue.num_vars,
        "witness": serialize(r.witness),
    }
    certs = [{"kind": "dimension-interval",
              "note": "interval [ceil(n/2), 2n] for residue p-rank n "
                      "(n = 0: [0, 1]); the witness certifies the even-rank "
                      "lower bound on the paired basis class"}]
    return verdicts, certs


def _cmd_selftest(req: Request):
    results = run_all(req.seed)
    suites = {r.name: r.as_dict() for r in results}
    total_passed = sum(r.passed for r in results)
    total_failed = sum(r.failed for r in results)
    verdicts = {
        "suites": suites,
        "total_passed": total_passed,
        "total_failed": total_failed,
        "seed": req.seed,
    }
    certs = [{"kind": "property-suites", "modules": sorted(SUITES)}]
    return verdicts, certs, total_failed == 0


_DISPATCH = {
    "k2-vanish": _cmd_k2_vanish,
    "omega-cert": _cmd_omega_cert,
    "normal-form": _cmd_normal_form,
    "split-field": _cmd_split_field,
    "index-bounds": _cmd_index_bounds,
    "brdim": _cmd_brdim,
    "selftest": _cmd_selftest,
}


def execute(req: Request):
    """Run one request; returns (report dict, exit code)."""
    t0 = time.perf_counter()
    model_info = {"p": req.p, "vars": list(req.var_names)}
    if req.precision is not None:
        model_info["precision"] = req.precision
    verdicts: dict = {}
    certs: list = []
    ok = True
    try:
        out = _DISPATCH[req.command](req)
        if len(out) == 3:
            verdicts, certs, ok = out
        else:
            verdicts, certs = out
        status, error, code = ("ok", None, 0) if ok else ("failed", None, 2)
    except (ParseError, UnsupportedPrime) as exc:
        status, code = "usage-error", 1
        error = {"type": type(exc).__name__, "message": str(exc)}
    except AlgebraError as exc:
        status, code = "rejected", 2
        error = {"type": type(exc).__name__, "message": str(exc)}
        datum = getattr(exc, "datum", None)
        if datum is not None:
            error["datum"] = serialize(datum)
    except ValueError as exc:
        status, code = "usage-error", 1
        error = {"type": "ValueError", "message": str(exc)}
    timing_ms = int((time.perf_counter() - t0) * 1000)
    report = build_report(req.command, model_info, req.expr, verdicts, certs,
                          status, error, timing_ms)
    return report, code


def main(argv=None) -> int:
    try:
        req = parse_request(argv)
    except (ParseError, UnsupportedPrime) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    report, code = execute(req)
    sys.stdout.write(to_json(report) if req.fmt == "json" else to_text(report))
    if req.out:
        write_bundle(report, req.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
