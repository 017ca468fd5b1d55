"""Command-line front end: certify, solve, analyze, vip and demo tasks.

Each invocation runs one task, prints a summary JSON to stdout and optionally
writes a trace (CSV or JSON), a summary file, a certificate/report and a
static convergence plot.  Identical config and seed reproduce every artifact
byte-for-byte except the ``runtime_ms`` field.

Exit codes: 0 on pass/convergence, 2 on refutation, divergence or a failed
check, 1 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .certify import Certificate, Witness, refute, search
from .config import (ProblemConfig, build_certify_config, build_iteration_config,
                     build_operator, build_space, build_vip_problem, demo_config,
                     load_config)
from .demos import DEMOS, get_demo
from .errors import ConfigError, DivergenceError, EnrichedFPError
from .iteration import FixedPointResult, Trace, solve
from .stability import (StabilityReport, periodic_point_check, ulam_hyers_check,
                        wellposed_check)
from .vip import vi_residual
from .space import WeightedSpace

__all__ = ["RunSummary", "main"]


@dataclass
class RunSummary:
    """Everything one run reports; serialized as sorted-key JSON."""

    task: str
    input_digest: str
    demo: str | None = None
    certificate: dict | None = None
    x_star: list | None = None
    lam: float | None = None
    rule: str | None = None
    iterations: int | None = None
    converged: bool | None = None
    final_bound: float | None = None
    stability: dict | None = None
    vi_residual: float | None = None
    notes: list | None = None
    runtime_ms: float | None = None

    def to_dict(self) -> dict:
        out = {"task": self.task, "input_digest": self.input_digest}
        if self.lam is not None:
            out["lambda"] = self.lam
        for name in ("demo", "certificate", "x_star", "rule", "iterations",
                     "converged", "final_bound", "stability", "vi_residual",
                     "notes", "runtime_ms"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        return out


def _digest(cfg: ProblemConfig) -> str:
    canonical = json.dumps(cfg.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _vector(x) -> list:
    return [float(v) for v in np.asarray(x, dtype=float).ravel()]


def _finite_or_none(v: float):
    return float(v) if np.isfinite(v) else None


def certificate_dict(cert: Certificate, refuting: Witness | None = None) -> dict:
    """JSON form of a certificate; a refuting witness appears only on failure."""
    out = {
        "passing": cert.passing,
        "a_hat": float(cert.a_hat),
        "b": float(cert.b),
        "alpha": float(cert.alpha),
        "valid_pairs": cert.valid_pairs,
        "excluded_pairs": cert.excluded_pairs,
    }
    if not cert.passing:
        witness = refuting if refuting is not None else cert.max_witness
        out["witness"] = {
            "x": _vector(witness.x),
            "y": _vector(witness.y),
            "ratio": float(witness.ratio),
        }
    return out


def trace_json(trace: Trace) -> dict:
    rows = []
    for n, step, res, apri, apost in trace.rows():
        rows.append({"n": n, "step_norm": step, "residual": res,
                     "apriori_bound": _finite_or_none(apri),
                     "aposteriori_bound": _finite_or_none(apost)})
    return {"rows": rows}


def _json_text(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _plot_trace(trace: Trace, path: Path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = np.arange(len(trace))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.semilogy(ns, trace.steps, marker="o", markersize=3, label="step norm")
    if trace.a is not None:
        apri = [trace.apriori_bound(int(n)) for n in ns]
        apost = [trace.aposteriori_bound(int(n)) for n in ns]
        ax.semilogy(ns, apri, linestyle="--", label="a-priori bound")
        ax.semilogy(ns, apost, linestyle=":", label="a-posteriori bound")
    ax.set_xlabel("iteration n")
    ax.set_ylabel("norm (log scale)")
    ax.legend()
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)


@dataclass
class _Paths:
    trace: Path | None
    summary: Path | None
    plot: Path | None
    report: Path | None


def _resolve_paths(args, cfg: ProblemConfig, fmt: str) -> _Paths:
    outdir = Path(args.out) if getattr(args, "out", None) else None

    def pick(explicit, default_name):
        if explicit:
            return Path(explicit)
        if outdir is not None:
            return outdir / default_name
        return None

    trace_name = "trace.json" if fmt == "json" else "trace.csv"
    plot_src = getattr(args, "plot", None) or cfg.output.plot_path
    return _Paths(
        trace=pick(cfg.output.trace_path, trace_name),
        summary=pick(cfg.output.summary_path, "summary.json"),
        plot=Path(plot_src) if plot_src else None,
        report=outdir / "report.json" if outdir is not None else None,
    )


def _emit_solution(result: FixedPointResult, paths: _Paths, fmt: str):
    if paths.trace is not None:
        if fmt == "json":
            _write(paths.trace, _json_text(trace_json(result.trace)))
        else:
            _write(paths.trace, result.trace.to_csv())
    if paths.plot is not None:
        _plot_trace(result.trace, paths.plot)


def _fill_solution(summary: RunSummary, result: FixedPointResult):
    summary.x_star = _vector(result.x_star)
    summary.lam = float(result.lam)
    summary.rule = result.rule.value
    summary.iterations = result.iterations
    summary.converged = result.converged
    summary.final_bound = _finite_or_none(result.final_bound)


def _load_for(args) -> ProblemConfig:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
        cfg.certify.seed = None
    return cfg


def _solve_from_config(cfg: ProblemConfig, T, space: WeightedSpace,
                       a: float | None = None) -> FixedPointResult:
    if cfg.iterate.b is None:
        raise ConfigError("iterate.b is required (enrichment parameter)",
                          field="iterate.b")
    icfg = build_iteration_config(cfg)
    if a is not None and icfg.a is None:
        icfg = dataclasses.replace(icfg, a=a)
    x0 = cfg.iterate.x0 if cfg.iterate.x0 is not None else space.zeros()
    return solve(T, cfg.iterate.b, icfg, np.asarray(x0, dtype=float))


def _analysis_starts(space: WeightedSpace, sec) -> list:
    lo = np.asarray(sec.start_lo if sec.start_lo is not None else [-1.0] * space.dim,
                    dtype=float)
    hi = np.asarray(sec.start_hi if sec.start_hi is not None else [1.0] * space.dim,
                    dtype=float)
    fracs = np.linspace(0.0, 1.0, sec.start_count)
    return [lo + f * (hi - lo) for f in fracs]


def _run_check(cfg: ProblemConfig, T, space: WeightedSpace, check: str,
               x_star) -> StabilityReport:
    sec = cfg.analyze
    b = cfg.iterate.b
    if check == "wellposed":
        e1 = space.zeros()
        e1[0] = 1.0
        perturbed = [x_star + e1 / k for k in range(1, sec.perturbations + 1)]
        return wellposed_check(T, b, x_star, perturbed)
    if check == "periodic":
        starts = _analysis_starts(space, sec)
        return periodic_point_check(T, b, sec.n_list, starts,
                                    cluster_tol=sec.cluster_tol)
    return ulam_hyers_check(T, b, x_star, sec.epsilons,
                            probes_per_eps=sec.probes_per_eps, seed=cfg.seed)


# ---------------------------------------------------------------------------
# task handlers: each returns (exit_code, summary, paths)


def _run_certify(cfg: ProblemConfig, T) -> tuple[Certificate, dict]:
    ccfg = build_certify_config(cfg)
    cert = search(T, ccfg)
    refuting = None
    if not cert.passing:
        refuting = refute(T, cert.b, cert.alpha, ccfg)
    return cert, certificate_dict(cert, refuting)


def _task_certify(args):
    cfg = _load_for(args)
    paths = _resolve_paths(args, cfg, args.format)
    space = build_space(cfg)
    T = build_operator(cfg, space)
    cert, cert_json = _run_certify(cfg, T)
    summary = RunSummary(task="certify", input_digest=_digest(cfg),
                         certificate=cert_json)
    if paths.report is not None:
        _write(paths.report.with_name("certificate.json"),
               _json_text(summary.certificate))
    return (0 if cert.passing else 2), summary, paths


def _task_solve(args):
    cfg = _load_for(args)
    paths = _resolve_paths(args, cfg, args.format)
    space = build_space(cfg)
    T = build_operator(cfg, space)
    result = _solve_from_config(cfg, T, space)
    summary = RunSummary(task="solve", input_digest=_digest(cfg))
    _fill_solution(summary, result)
    _emit_solution(result, paths, args.format)
    return (0 if result.converged else 2), summary, paths


def _task_vip(args):
    cfg = _load_for(args)
    paths = _resolve_paths(args, cfg, args.format)
    space = build_space(cfg)
    problem = build_vip_problem(cfg, space)
    if cfg.iterate.b is None:
        cfg.iterate.b = 0.0
    from .vip import solve_vip
    icfg = build_iteration_config(cfg)
    x0 = cfg.iterate.x0 if cfg.iterate.x0 is not None else space.zeros()
    result = solve_vip(problem, cfg.iterate.b, icfg, np.asarray(x0, dtype=float))
    vr = vi_residual(problem, result.x_star, probes=cfg.vip.probes, seed=cfg.seed)
    summary = RunSummary(task="vip", input_digest=_digest(cfg),
                         vi_residual=float(vr))
    _fill_solution(summary, result)
    _emit_solution(result, paths, args.format)
    return (0 if result.converged else 2), summary, paths


def _task_analyze(args):
    cfg = _load_for(args)
    paths = _resolve_paths(args, cfg, args.format)
    check = args.check or cfg.analyze.check
    if check is None:
        raise ConfigError("analyze needs --check or analyze.check in the config",
                          field="analyze.check")
    space = build_space(cfg)
    T = build_operator(cfg, space)
    x_star = None
    if check in ("wellposed", "ulam"):
        result = _solve_from_config(cfg, T, space)
        x_star = result.x_star
    elif cfg.iterate.b is None:
        raise ConfigError("iterate.b is required (enrichment parameter)",
                          field="iterate.b")
    report = _run_check(cfg, T, space, check, x_star)
    summary = RunSummary(task="analyze", input_digest=_digest(cfg),
                         stability=report.to_dict())
    if paths.report is not None:
        _write(paths.report, _json_text(summary.stability))
    ok = report.passed and not report.inconclusive
    return (0 if ok else 2), summary, paths


def _task_demo(args):
    cfg = demo_config(args.name)
    if args.seed is not None:
        cfg.seed = args.seed
        cfg.certify.seed = None
    paths = _resolve_paths(args, cfg, args.format)
    demo = get_demo(args.name)
    space = build_space(cfg)
    T = build_operator(cfg, space)
    summary = RunSummary(task="demo", demo=args.name, input_digest=_digest(cfg))
    ok = True

    a_hat = None
    if demo.certified:
        cert, summary.certificate = _run_certify(cfg, T)
        ok = ok and cert.passing
        if cert.passing:
            a_hat = cert.a_hat

    if demo.make_vip is not None:
        problem = demo.vip(space)
        from .vip import solve_vip
        icfg = build_iteration_config(cfg)
        x0 = np.asarray(cfg.iterate.x0, dtype=float)
        result = solve_vip(problem, cfg.iterate.b, icfg, x0)
        probes = cfg.vip.probes if cfg.vip is not None else 1000
        summary.vi_residual = float(vi_residual(problem, result.x_star,
                                                probes=probes, seed=cfg.seed))
    else:
        result = _solve_from_config(cfg, T, space, a=a_hat)

    _fill_solution(summary, result)
    ok = ok and result.converged

    if not demo.certified and demo.make_vip is None:
        report = _run_check(cfg, T, space, "periodic", None)
        summary.stability = report.to_dict()
        summary.notes = ["uncertified"]
        ok = ok and report.passed and not report.inconclusive

    _emit_solution(result, paths, args.format)
    return (0 if ok else 2), summary, paths


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enrichedfp",
        description="Certified fixed-point solving for enriched interpolative "
                    "Kannan type operators.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="DIR",
                        help="directory for trace/summary/report artifacts")
    common.add_argument("--seed", type=int, metavar="N",
                        help="override the config seed")
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="trace file format (default csv)")
    common.add_argument("--plot", metavar="PATH.svg",
                        help="write a static convergence plot")

    sub = parser.add_subparsers(dest="command", required=True)
    for name, brief in (("certify", "estimate the contraction constant"),
                        ("solve", "run the Krasnoselskii iteration"),
                        ("analyze", "run a stability check"),
                        ("vip", "solve a variational inequality")):
        p = sub.add_parser(name, parents=[common], help=brief)
        p.add_argument("--config", required=True, metavar="PATH",
                       help="problem config file")
        if name == "analyze":
            p.add_argument("--check", choices=("wellposed", "periodic", "ulam"),
                           help="which stability notion to check")
    p = sub.add_parser("demo", parents=[common], help="run a packaged example")
    p.add_argument("name", choices=sorted(DEMOS))
    return parser


_HANDLERS = {
    "certify": _task_certify,
    "solve": _task_solve,
    "analyze": _task_analyze,
    "vip": _task_vip,
    "demo": _task_demo,
}


def _render_error(exc: Exception):
    payload = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("field", "line", "column", "step"):
        val = getattr(exc, attr, None)
        if val is not None:
            payload[attr] = val
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 1

    start = time.perf_counter()
    try:
        code, summary, paths = _HANDLERS[args.command](args)
    except ConfigError as exc:
        _render_error(exc)
        return 1
    except DivergenceError as exc:
        _render_error(exc)
        return 2
    except EnrichedFPError as exc:
        _render_error(exc)
        return 1

    summary.runtime_ms = (time.perf_counter() - start) * 1000.0
    text = _json_text(summary.to_dict())
    if paths.summary is not None:
        _write(paths.summary, text)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
