"""Structured run reports.

One report per invocation: a JSON document (schema_version 1) that is
byte-stable for identical requests except for the timing field, a plain-text
rendering, a flat CSV of the verdicts, and a small figure summarizing the
result.  Figure rendering imports matplotlib lazily and uses the Agg
backend so headless runs work.
"""

from __future__ import annotations

import csv
import io
import json

from .fields import RatFunc
from .differentials import Omega1Form
from .milnor import SymbolSum
from .cdvf import CdvfElement, TruncatedUnit
from .brauer import (INFINITE_LEVEL, BrauerClass, BrDimReport, GradedDatum0,
                     GradedDatumI, IndexBounds, NormalForm, SplittingField)

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# serialization of mathematical values

def serialize(v):
    from .parsing import (pretty_cdvf, pretty_class, pretty_ratfunc,
                          pretty_symbol_sum, pretty_unit)
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if v == INFINITE_LEVEL:
        return "infinity"
    if isinstance(v, float):
        return v
    if isinstance(v, RatFunc):
        return pretty_ratfunc(v)
    if isinstance(v, TruncatedUnit):
        return pretty_unit(v)
    if isinstance(v, CdvfElement):
        return pretty_cdvf(v)
    if isinstance(v, SymbolSum):
        return pretty_symbol_sum(v)
    if isinstance(v, BrauerClass):
        return pretty_class(v)
    if isinstance(v, Omega1Form):
        names = v.fld.var_names
        return {"d" + n: pretty_ratfunc(c) for n, c in zip(names, v.coords) if c}
    if isinstance(v, GradedDatum0):
        return {"k2_part": serialize(v.k2_part),
                "unit_class": serialize(v.unit_class)}
    if isinstance(v, GradedDatumI):
        return {"level": v.level, "form": serialize(v.form),
                "scalar": serialize(v.scalar)}
    if isinstance(v, NormalForm):
        names = v.model.residue.var_names
        return {"lambda[%s]" % n: serialize(l) for n, l in zip(names, v.lambdas)} \
            | {"lambda[pi]": serialize(v.pi_coeff)}
    if isinstance(v, IndexBounds):
        return {"lower_exp": v.lower_exp, "upper_exp": v.upper_exp,
                "certificates": list(v.certificates)}
    if isinstance(v, SplittingField):
        return {"generators": [[n, d] for n, d in v.generators],
                "total_degree": v.total_degree}
    if isinstance(v, BrDimReport):
        return {"lower": v.lower, "upper": v.upper,
                "witness": serialize(v.witness)}
    if isinstance(v, dict):
        return {str(k): serialize(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [serialize(x) for x in v]
    return repr(v)


# ---------------------------------------------------------------------------
# the report document

def build_report(command: str, model_info: dict, input_text, verdicts: dict,
                 certificates=(), status: str = "ok", error=None,
                 timing_ms=None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "model": serialize(model_info),
        "input": input_text,
        "status": status,
        "verdicts": serialize(verdicts),
        "certificates": [serialize(c) for c in certificates],
        "error": serialize(error),
        "timing_ms": timing_ms,
    }


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _flat(prefix, v, rows):
    if isinstance(v, dict):
        for k in sorted(v):
            _flat("%s.%s" % (prefix, k) if prefix else str(k), v[k], rows)
    elif isinstance(v, list):
        for i, x in enumerate(v):
            _flat("%s[%d]" % (prefix, i), x, rows)
    else:
        rows.append((prefix, "" if v is None else str(v)))


def to_text(report: dict) -> str:
    lines = ["command: %s" % report["command"]]
    model = report["model"] or {}
    lines.append("model: " + " ".join("%s=%s" % (k, model[k]) for k in sorted(model)))
    if report["input"] is not None:
        lines.append("input: %s" % report["input"])
    lines.append("status: %s" % report["status"])
    rows = []
    _flat("", report["verdicts"], rows)
    for key, val in rows:
        lines.append("  %s = %s" % (key, val))
    if report["certificates"]:
        lines.append("certificates:")
        crows = []
        _flat("", report["certificates"], crows)
        for key, val in crows:
            lines.append("  %s: %s" % (key, val))
    if report["error"]:
        erows = []
        _flat("", report["error"], erows)
        lines.append("error:")
        for key, val in erows:
            lines.append("  %s: %s" % (key, val))
    if report["timing_ms"] is not None:
        lines.append("timing_ms: %s" % report["timing_ms"])
    return "\n".join(lines) + "\n"


def verdicts_csv(report: dict) -> str:
    rows = []
    _flat("", report["verdicts"], rows)
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["key", "value"])
    for key, val in rows:
        w.writerow([key, val])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# figures

def render_figure(report: dict, path: str):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    cmd = report["command"]
    v = report["verdicts"]
    try:
        _FIGURES.get(cmd, _fig_generic)(ax, v, report)
    except Exception:
        _fig_generic(ax, v, report)
    ax.set_title("%s [%s]" % (cmd, report["status"]))
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def _fig_generic(ax, v, report):
    rows = []
    _flat("", v, rows)
    text = "\n".join("%s = %s" % r for r in rows[:18]) or "(no verdicts)"
    ax.axis("off")
    ax.text(0.02, 0.95, text, va="top", family="monospace", fontsize=8)


def _fig_k2(ax, v, report):
    support = v.get("omega2_support", [])
    labels = [s[0] for s in support]
    ax.bar(range(len(labels)), [1] * len(labels), color="#356a9e")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=7)
    ax.set_ylabel("nonzero wedge coordinates")
    if not labels:
        ax.text(0.5, 0.5, "h2p image = 0: symbol sum vanishes in k2",
                ha="center", va="center", transform=ax.transAxes)
        ax.set_ylim(0, 1)


def _fig_levels(ax, v, report):
    rows = v.get("layer_support", {})
    names = rows.get("columns", [])
    grid = rows.get("grid", [])
    if not grid:
        _fig_generic(ax, v, report)
        return
    im = ax.imshow(grid, cmap="Blues", vmin=0, vmax=1, aspect="auto")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, fontsize=8)
    ax.set_yticks(range(len(grid)))
    ax.set_yticklabels(["level %d" % (i + 1) for i in range(len(grid))],
                       fontsize=8)
    for i, row in enumerate(grid):
        for j, val in enumerate(row):
            if val:
                ax.text(j, i, "1", ha="center", va="center", fontsize=8,
                        color="white")
    ax.set_xlabel("normal-form slots")
    del im


def _fig_split(ax, v, report):
    gens = v.get("generators", [])
    names = [g[0] for g in gens]
    degs = [g[1] for g in gens]
    ax.bar(range(len(names)), degs, color="#6a9e35")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(["%s^(1/%d)" % (n, d) for n, d in zip(names, degs)],
                       fontsize=8)
    ax.set_ylabel("root degree")
    ax.text(0.98, 0.95, "total degree %s" % v.get("total_degree"),
            ha="right", va="top", transform=ax.transAxes)


def _fig_interval(ax, v, report):
    pairs = []
    if "lower_exp" in v:
        pairs.append(("index exponent", v["lower_exp"], v["upper_exp"]))
    if "lower" in v:
        pairs.append(("dimension", v["lower"], v["upper"]))
        w = v.get("witness") or {}
        if w:
            pairs.append(("witness index exponent", w["lower_exp"], w["upper_exp"]))
    for k, (label, lo, hi) in enumerate(pairs):
        ax.plot([lo, hi], [k, k], lw=6, color="#356a9e", solid_capstyle="butt")
        ax.plot([lo, hi], [k, k], "|", ms=18, color="#1d3a57")
        ax.text(hi + 0.08, k, "[%s, %s]" % (lo, hi), va="center", fontsize=9)
    ax.set_yticks(range(len(pairs)))
    ax.set_yticklabels([p[0] for p in pairs], fontsize=9)
    ax.set_ylim(-1, len(pairs))
    ax.set_xlabel("exponent of p")
    ax.grid(axis="x", alpha=0.3)


def _fig_selftest(ax, v, report):
    suites = v.get("suites", {})
    names = sorted(suites)
    passed = [suites[n]["passed"] for n in names]
    failed = [suites[n]["failed"] for n in names]
    ax.bar(range(len(names)), passed, color="#6a9e35", label="passed")
    ax.bar(range(len(names)), failed, bottom=passed, color="#9e3535",
           label="failed")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("property cases")
    ax.legend(fontsize=8)


_FIGURES = {
    "k2-vanish": _fig_k2,
    "omega-cert": _fig_generic,
    "normal-form": _fig_levels,
    "split-field": _fig_split,
    "index-bounds": _fig_interval,
    "brdim": _fig_interval,
    "selftest": _fig_selftest,
}


def write_bundle(report: dict, outdir: str):
    """report.json + verdicts.csv + figure.png under outdir."""
    import os
    os.makedirs(outdir, exist_ok=True)
    paths = {}
    paths["report"] = os.path.join(outdir, "report.json")
    with open(paths["report"], "w") as fh:
        fh.write(to_json(report))
    paths["verdicts"] = os.path.join(outdir, "verdicts.csv")
    with open(paths["verdicts"], "w") as fh:
        fh.write(verdicts_csv(report))
    paths["figure"] = os.path.join(outdir, "figure.png")
    render_figure(report, paths["figure"])
    return paths
