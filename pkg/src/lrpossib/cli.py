"""Command-line entry point.

One binary, one subcommand per analysis: evidence, phi, contour, ratio,
bayes-bound, hwe.  Inputs come from a JSON spec file (--spec) and/or
flags; flags win.  Reports go to stdout (JSON by default, CSV where a
tabular format is defined), diagnostics to stderr.  Exit status: 0 on
success, 2 on any input/validation error, 3 on numerical
non-convergence.  Output is byte-deterministic for a fixed spec + seed:
field order is fixed and floats carry 17 significant digits.
"""
from __future__ import annotations

import argparse
import json
import sys

from .bayes import ContinuousPrior, FinitePrior, lemma2_check
from .builtin import NormalStats, make_model
from .contour import contour
from .emit import csv_lines, dumps
from .errors import ConvergenceError, InputError, SpecError, UnsupportedError
from .evidence import likelihood_ratio_R, nu, phi
from .hwe import HweSample, hwe_report
from .optimize import OptConfig
from .regions import Complement, Region, from_json, to_json
from .space import Interval

_TOP_FIELDS = {
    "model",
    "sample",
    "regions",
    "config",
    "prior",
    "format",
    "alpha",
    "a_star",
    "b_star",
    "philosophy",
    "regime",
}
_CONFIG_FIELDS = {"rel_tol", "grid", "refine_rounds", "multistarts", "seed", "threads"}


def _check_fields(d: dict, path: str, allowed: set, required: set = frozenset()) -> None:
    if not isinstance(d, dict):
        raise SpecError(f"{path}: expected an object, got {type(d).__name__}")
    missing = required - d.keys()
    if missing:
        raise SpecError(f"{path}: missing field(s) {sorted(missing)}")
    unknown = d.keys() - allowed
    if unknown:
        raise SpecError(f"{path}: unknown field(s) {sorted(unknown)}")


def _load_spec(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise SpecError(f"cannot read spec file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise SpecError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}") from e
    _check_fields(doc, "$", _TOP_FIELDS)
    return doc


def _parse_sample(raw, model_name: str):
    if isinstance(raw, str):
        try:
            raw = json.loads(raw)
        except json.JSONDecodeError as e:
            raise SpecError(f"--sample: invalid JSON ({e.msg})") from e
    if model_name == "normal":
        _check_fields(raw, "$.sample", {"mean", "var", "n"}, {"mean", "var", "n"})
        return NormalStats(float(raw["mean"]), float(raw["var"]), int(raw["n"]))
    if model_name == "trinomial":
        if not isinstance(raw, list) or len(raw) != 3:
            raise SpecError("$.sample: trinomial samples are [y1, y2, y3]")
        return tuple(int(v) for v in raw)
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise SpecError(f"$.sample: expected an integer count, got {raw!r}")
    return raw


def _parse_regions(doc_regions, flag_regions) -> list[tuple[str | None, Region]]:
    out: list[tuple[str | None, Region]] = []
    if doc_regions is not None:
        if not isinstance(doc_regions, list):
            raise SpecError("$.regions: expected a list")
        for i, entry in enumerate(doc_regions):
            _check_fields(entry, f"$.regions[{i}]", {"name", "region"}, {"region"})
            name = entry.get("name")
            if name is not None and not isinstance(name, str):
                raise SpecError(f"$.regions[{i}].name: expected a string")
            out.append((name, from_json(entry["region"], f"$.regions[{i}].region")))
    for j, text in enumerate(flag_regions or ()):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecError(f"--region[{j}]: invalid JSON ({e.msg})") from e
        out.append((None, from_json(d, f"--region[{j}]")))
    return out


def _parse_prior(doc):
    if doc is None:
        return None
    _check_fields(doc, "$.prior", {"kind", "weights", "support"}, {"kind"})
    kind = doc["kind"]
    if kind == "finite":
        _check_fields(doc, "$.prior", {"kind", "weights"}, {"kind", "weights"})
        return FinitePrior(doc["weights"])
    if kind == "uniform_box":
        _check_fields(doc, "$.prior", {"kind", "support"}, {"kind", "support"})
        sup = doc["support"]
        if not isinstance(sup, list) or not sup:
            raise SpecError("$.prior.support: expected a non-empty list of [lo, hi]")
        ivs = []
        vol = 1.0
        for pair in sup:
            if not isinstance(pair, list) or len(pair) != 2:
                raise SpecError("$.prior.support: entries must be [lo, hi]")
            lo, hi = float(pair[0]), float(pair[1])
            if not hi > lo:
                raise SpecError("$.prior.support: need hi > lo")
            ivs.append(Interval(lo, hi))
            vol *= hi - lo

        def dens(p, _ivs=tuple(ivs), _v=vol):
            inside = all(iv.lo <= t <= iv.hi for iv, t in zip(_ivs, p))
            return 1.0 / _v if inside else 0.0

        return ContinuousPrior(dens, tuple(ivs))
    raise SpecError(f"$.prior.kind: unknown kind {kind!r}")


def _build_config(doc, args) -> OptConfig:
    vals = {}
    if doc is not None:
        _check_fields(doc, "$.config", _CONFIG_FIELDS)
        vals.update(doc)
    if getattr(args, "tol", None) is not None:
        vals["rel_tol"] = args.tol
    if getattr(args, "grid", None) is not None:
        vals["grid"] = args.grid
    if getattr(args, "multistarts", None) is not None:
        vals["multistarts"] = args.multistarts
    if getattr(args, "seed", None) is not None:
        vals["seed"] = args.seed
    return OptConfig(
        rel_tol=float(vals.get("rel_tol", 1e-8)),
        grid_base=int(vals["grid"]) if vals.get("grid") is not None else None,
        refine_rounds=int(vals.get("refine_rounds", 4)),
        multistarts=int(vals.get("multistarts", 16)),
        seed=int(vals.get("seed", 0)),
        threads=int(vals["threads"]) if vals.get("threads") is not None else None,
    )


class _Inputs:
    """Everything a subcommand needs, merged from spec file and flags."""

    def __init__(self, args) -> None:
        doc = _load_spec(args.spec) if getattr(args, "spec", None) else {}
        model_doc = doc.get("model")
        name = getattr(args, "model", None)
        params = {}
        if model_doc is not None:
            _check_fields(model_doc, "$.model", {"name", "params"}, {"name"})
            name = name or model_doc["name"]
            params = model_doc.get("params") or {}
        flag_params = getattr(args, "params", None)
        if flag_params is not None:
            try:
                params = json.loads(flag_params)
            except json.JSONDecodeError as e:
                raise SpecError(f"--params: invalid JSON ({e.msg})") from e
            if not isinstance(params, dict):
                raise SpecError("--params: expected a JSON object")
        self.model_name = name
        raw_sample = getattr(args, "sample", None)
        if raw_sample is None:
            raw_sample = doc.get("sample")
        self.cfg = _build_config(doc.get("config"), args)
        self.format = getattr(args, "format", None) or doc.get("format") or "json"
        if self.format not in ("json", "csv"):
            raise SpecError(f"format must be json or csv, got {self.format!r}")
        self.prior = _parse_prior(doc.get("prior"))
        self.alpha = getattr(args, "alpha", None)
        if self.alpha is None:
            self.alpha = doc.get("alpha")
        self.a_star = _pick(args, doc, "a_star", 0.01)
        self.b_star = _pick(args, doc, "b_star", 0.01)
        self.philosophy = _norm_enum(_pick(args, doc, "philosophy", "neyman_pearson"))
        self.regime = _pick(args, doc, "regime", None)
        if self.regime is not None:
            self.regime = _norm_enum(self.regime)
        self.regions = _parse_regions(doc.get("regions"), getattr(args, "region", None))
        if name is None:
            raise SpecError("a model is required: pass --model or a spec file")
        if raw_sample is None:
            raise SpecError("a sample is required: pass --sample or a spec file")
        self.sample = _parse_sample(raw_sample, name)
        self.model = make_model(name, params, sample=self.sample)

    def require_regions(self, k: int) -> list[Region]:
        if len(self.regions) < k:
            raise SpecError(f"this subcommand needs {k} region(s), got {len(self.regions)}")
        return [r for _, r in self.regions[:k]]


def _pick(args, doc, key, default):
    v = getattr(args, key, None)
    if v is None:
        v = doc.get(key)
    return default if v is None else v


def _norm_enum(v: str) -> str:
    return v.replace("-", "_") if isinstance(v, str) else v


def _sample_json(sample):
    if isinstance(sample, NormalStats):
        return {"mean": sample.mean, "var": sample.var, "n": sample.n}
    if isinstance(sample, tuple):
        return list(sample)
    return sample


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, tuple):
        return [float(t) for t in w]
    return w


def _region_json(region: Region):
    try:
        return to_json(region)
    except UnsupportedError:
        return None


def _cmd_evidence(args) -> str:
    inp = _Inputs(args)
    region = inp.require_regions(1)[0]
    e0 = nu(inp.model, inp.sample, region, inp.cfg)
    e0c = nu(inp.model, inp.sample, Complement(region), inp.cfg)
    report = {
        "command": "evidence",
        "model": inp.model_name,
        "sample": _sample_json(inp.sample),
        "region": _region_json(region),
        "nu0": e0.nu,
        "annotation0": e0.annotation,
        "witness0": _witness_json(e0.witness),
        "nu0c": e0c.nu,
        "annotation0c": e0c.annotation,
        "witness0c": _witness_json(e0c.witness),
        "method": [e0.sup.method, e0c.sup.method],
        "evaluations": e0.sup.evaluations + e0.glob.evaluations + e0c.sup.evaluations,
        "seed": inp.cfg.seed,
    }
    return dumps(report) + "\n"


def _cmd_phi(args) -> str:
    inp = _Inputs(args)
    region = inp.require_regions(1)[0]
    verdict = phi(
        inp.model,
        inp.sample,
        region,
        a_star=float(inp.a_star),
        b_star=float(inp.b_star),
        philosophy=inp.philosophy,
        regime=inp.regime,
        cfg=inp.cfg,
    )
    report = {
        "command": "phi",
        "model": inp.model_name,
        "sample": _sample_json(inp.sample),
        "region": _region_json(region),
        "nu0": verdict.nu0,
        "nu0c": verdict.nu0c,
        "a_star": verdict.a_star,
        "b_star": verdict.b_star,
        "philosophy": verdict.philosophy,
        "regime": verdict.regime,
        "decision": verdict.decision,
        "seed": inp.cfg.seed,
    }
    return dumps(report) + "\n"


def _cmd_contour(args) -> str:
    inp = _Inputs(args)
    if inp.alpha is None:
        raise SpecError("contour needs --alpha (or an alpha field in the spec)")
    alpha = float(inp.alpha)
    data = contour(inp.model, inp.sample, alpha, grid=getattr(args, "grid", None), cfg=inp.cfg)
    if inp.format == "csv":
        rows = []
        if data.axes and len(data.axes) == 1:
            ts = data.axes[0]
            for i, t in enumerate(ts):
                rows.append((alpha, float(t), None, bool(data.inside[i])))
        elif data.axes:
            xs, ys = data.axes
            for i in range(len(xs)):
                for j in range(len(ys)):
                    rows.append(
                        (alpha, float(xs[i]), float(ys[j]), bool(data.inside[i, j]))
                    )
        else:
            for p in data.mle_points:
                pt = p if isinstance(p, tuple) else (p,)
                rows.append(
                    (alpha, float(pt[0]), float(pt[1]) if len(pt) > 1 else None, True)
                )
        return csv_lines(["alpha", "coord1", "coord2", "inside"], rows)
    report = {
        "command": "contour",
        "model": inp.model_name,
        "sample": _sample_json(inp.sample),
        "alpha": alpha,
        "axes": [[float(t) for t in ax] for ax in data.axes],
        "lam": data.lam.tolist(),
        "inside": data.inside.tolist(),
        "segments": [
            [[a[0], a[1]], [b[0], b[1]]] for a, b in data.segments
        ],
        "mle_points": [_witness_json(p if isinstance(p, tuple) else (p,)) for p in data.mle_points],
        "seed": inp.cfg.seed,
    }
    return dumps(report) + "\n"


def _cmd_ratio(args) -> str:
    inp = _Inputs(args)
    r1, r2 = inp.require_regions(2)
    out = likelihood_ratio_R(inp.model, inp.sample, r1, r2, inp.cfg)
    report = {
        "command": "ratio",
        "model": inp.model_name,
        "sample": _sample_json(inp.sample),
        "nu1": out.nu1,
        "nu2": out.nu2,
        "value": out.value,
        "defined": out.defined,
        "seed": inp.cfg.seed,
    }
    return dumps(report) + "\n"


def _cmd_bayes_bound(args) -> str:
    inp = _Inputs(args)
    if inp.prior is None:
        raise SpecError("bayes-bound needs a prior in the spec file")
    region = inp.require_regions(1)[0]
    chk = lemma2_check(inp.model, inp.sample, inp.prior, region, cfg=inp.cfg)
    report = {
        "command": "bayes-bound",
        "model": inp.model_name,
        "sample": _sample_json(inp.sample),
        "m_x": chk.summary.m_x,
        "c_x": chk.summary.c_x,
        "post_prob": chk.summary.post_prob,
        "prior_prob": chk.summary.prior_prob,
        "bound": chk.bound,
        "nu": chk.nu,
        "holds": chk.holds,
        "seed": inp.cfg.seed,
    }
    return dumps(report) + "\n"


def _parse_counts(text: str) -> HweSample:
    parts = text.split(",")
    if len(parts) != 3:
        raise SpecError("--counts must be y1,y2,y3")
    try:
        y = [int(p) for p in parts]
    except ValueError as e:
        raise SpecError("--counts must be three integers") from e
    return HweSample(*y)


def _cmd_hwe(args) -> str:
    if (args.counts is None) == (args.hwe_grid is None):
        raise SpecError("hwe needs exactly one of --counts or --grid")
    cfg = _build_config(None, args)
    if args.counts is not None:
        rep = hwe_report(_parse_counts(args.counts), cfg)
        report = {
            "command": "hwe",
            "counts": list(rep.sample.counts),
            "m": rep.sample.m,
            "mle": [rep.mle[0], rep.mle[1], rep.mle[2]],
            "tilde_theta": [rep.tilde_theta[0], rep.tilde_theta[1], rep.tilde_theta[2]],
            "nu1": rep.nu1,
            "nu2": rep.nu2,
            "nu3": rep.nu3,
            "case": rep.case,
        }
        return dumps(report) + "\n"
    m = args.hwe_grid
    if m < 1:
        raise SpecError("--grid must be a positive total count")
    rows = []
    for y1 in range(m + 1):
        for y2 in range(m - y1 + 1):
            y3 = m - y1 - y2
            rep = hwe_report(HweSample(y1, y2, y3), cfg)
            rows.append(
                (y1, y2, y3, rep.mle[0], rep.mle[2], rep.nu1, rep.nu2, rep.nu3, rep.case)
            )
    header = ["y1", "y2", "y3", "theta1_hat", "theta3_hat", "nu1", "nu2", "nu3", "case"]
    return csv_lines(header, rows)


def _add_common(p: argparse.ArgumentParser, with_model: bool = True) -> None:
    p.add_argument("--spec", help="JSON analysis spec file")
    if with_model:
        p.add_argument("--model", help="model registry name")
        p.add_argument("--params", help="model parameters as JSON, e.g. '{\"n\": 8}'")
        p.add_argument("--sample", help="sample as JSON (count, [y1,y2,y3], or normal stats)")
        p.add_argument(
            "--region",
            action="append",
            help="region document as JSON; repeat for a second region",
        )
    p.add_argument("--tol", type=float, help="relative tolerance of the optimizer")
    p.add_argument("--multistarts", type=int, help="2-D polish start count")
    p.add_argument("--seed", type=int, help="seed for the optimizer's jittered starts")
    p.add_argument("--format", choices=["json", "csv"], help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrpossib",
        description="Likelihood-ratio possibility measures over parameter regions",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("evidence", help="nu of a region and of its complement")
    _add_common(p)
    p.add_argument("--grid", type=int, help="base grid resolution")
    p.set_defaults(func=_cmd_evidence)

    p = sub.add_parser("phi", help="accept/reject/maintain verdict")
    _add_common(p)
    p.add_argument("--grid", type=int, help="base grid resolution")
    p.add_argument("--a-star", dest="a_star", type=float, help="rejection threshold")
    p.add_argument("--b-star", dest="b_star", type=float, help="acceptance threshold")
    p.add_argument("--philosophy", choices=["fisherian", "neyman_pearson", "neyman-pearson"])
    p.add_argument(
        "--regime",
        choices=["both_nonsharp", "sharp_null", "sharp_alternative",
                 "both-nonsharp", "sharp-null", "sharp-alternative"],
    )
    p.set_defaults(func=_cmd_phi)

    p = sub.add_parser("contour", help="lambda level set at a given alpha")
    _add_common(p)
    p.add_argument("--alpha", type=float, help="level in (0, 1]")
    p.add_argument("--grid", type=int, help="grid resolution per axis")
    p.set_defaults(func=_cmd_contour)

    p = sub.add_parser("ratio", help="nu(R1)/nu(R2)")
    _add_common(p)
    p.add_argument("--grid", type=int, help="base grid resolution")
    p.set_defaults(func=_cmd_ratio)

    p = sub.add_parser("bayes-bound", help="posterior-possibility bound report")
    _add_common(p)
    p.add_argument("--grid", type=int, help="base grid resolution")
    p.set_defaults(func=_cmd_bayes_bound)

    p = sub.add_parser("hwe", help="Hardy-Weinberg evidence report or figure dataset")
    p.add_argument("--counts", help="genotype counts y1,y2,y3")
    p.add_argument(
        "--grid",
        dest="hwe_grid",
        type=int,
        help="emit the figure dataset for all counts with this total",
    )
    p.add_argument("--tol", type=float, help="relative tolerance of the optimizer")
    p.add_argument("--multistarts", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_hwe)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (SpecError, InputError, UnsupportedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ConvergenceError as e:
        print(f"non-convergence: {e}", file=sys.stderr)
        return 3
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
