"""Batch command-line front end.

Every subcommand reads a JSON experiment config, runs one pipeline and
writes its outputs plus ``manifest.json`` (hashes and versions) and
``timing.json`` (wall-clock fields only) into ``--out``.

Exit codes: 0 success, 1 usage/config error, 2 data validation error,
3 numerical failure.  Failures print one JSON record on stderr.
"""
import argparse
import hashlib
import json
import sys
import time
from importlib import metadata
from pathlib import Path

import numpy as np
from threadpoolctl import threadpool_limits

from . import io
from .anomaly import calibrate_threshold, detect, hpf_statistic, localize
from .clustering import blind_cd, permutation_accuracy, spectral_clustering
from .config import ExperimentConfig, load_schema
from .errors import ConfigError, GspError
from .filters import apply_spectral, frequency_response, low_pass_ratio
from .graph import laplacian
from .interpolation import interpolate_time_vertex
from .processes import sample_lowpass_signals
from .sampling import build_interpolator, greedy_select, sampled_singular_values
from .spectral import eigendecompose
from .topology import edge_f1, edge_support, learn_topology

SUBCOMMANDS = (
    "generate",
    "spectrum",
    "filter",
    "ratio",
    "sample",
    "reconstruct",
    "communities",
    "learn-graph",
    "interpolate",
    "detect",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"usage: {message}")


def _sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _versions():
    import scipy
    import sklearn

    try:
        own = metadata.version("lowpass-gsp")
    except metadata.PackageNotFoundError:
        own = "unknown"
    return {"lowpass-gsp": own, "numpy": np.__version__, "scipy": scipy.__version__, "scikit-learn": sklearn.__version__}


def _input(args, name, required=True):
    value = getattr(args, name, None)
    if value is None:
        if required:
            raise ConfigError(f"--{name.replace('_', '-')} is required for this subcommand")
        return None
    path = Path(value)
    if not path.exists():
        raise ConfigError(f"--{name.replace('_', '-')}: {path} does not exist")
    return path


def _graph_basis(cfg):
    g, membership = cfg.build_graph()
    L = laplacian(g)
    return g, L, eigendecompose(L), membership


# -- subcommands ------------------------------------------------------------


def run_generate(cfg, args, out):
    cfg.require("graph", "filter", "m")
    g, L, basis, membership = _graph_basis(cfg)
    spec = cfg.filter_spec()
    sigma = cfg.sigma or 0.0
    Y = sample_lowpass_signals(basis, spec, cfg.m, sigma, cfg.seed)
    io.write_matrix_csv(out / "signals.csv", Y)
    io.write_adjacency_csv(out / "adjacency.csv", g)
    sidecar = {
        "seed": cfg.seed,
        "graph": cfg.graph,
        "filter": spec.to_dict(),
        "sigma": sigma,
        "m": cfg.m,
        "n": g.n,
    }
    if membership is not None:
        sidecar["membership"] = membership.tolist()
    io.dump_json(out / "signals.json", sidecar)
    return {"n": g.n, "m": cfg.m}


def run_spectrum(cfg, args, out):
    _, _, basis, _ = _graph_basis(cfg)
    io.write_spectrum_csv(out / "spectrum.csv", basis.lambdas)
    summary = {"n": basis.n, "lambda_max": float(basis.lambdas[-1])}
    signals = _input(args, "signals", required=False)
    if signals is not None:
        Y = io.read_matrix_csv(signals)
        mag = np.mean(np.abs(basis.gft(Y)), axis=1)
        rows = np.column_stack([np.arange(basis.n), basis.lambdas, mag])
        np.savetxt(
            out / "gft_profile.csv", rows, fmt=["%d", io.FMT, io.FMT], delimiter=",",
            header="index,lambda,mean_abs_gft", comments="",
        )
    return summary


def run_filter(cfg, args, out):
    _, _, basis, _ = _graph_basis(cfg)
    Y = io.read_matrix_csv(_input(args, "signals"))
    io.write_matrix_csv(out / "filtered.csv", apply_spectral(basis, cfg.filter_spec(), Y))
    return {"n": basis.n, "m": Y.shape[1]}


def run_ratio(cfg, args, out):
    _, _, basis, _ = _graph_basis(cfg)
    h = frequency_response(cfg.filter_spec(), basis.lambdas)
    ks = [cfg.ratio["k"]] if cfg.ratio and "k" in cfg.ratio else range(1, basis.n)
    etas = [(k, low_pass_ratio(h, k)) for k in ks]
    with open(out / "ratio.csv", "w") as fh:
        fh.write("k,eta_k,low_pass\n")
        for k, eta in etas:
            fh.write(f"{k},{io.FMT % eta},{int(eta < 1)}\n")
    if len(etas) == 1:
        k, eta = etas[0]
        return {"k": k, "eta_k": eta, "low_pass": eta < 1}
    best = min(etas, key=lambda t: t[1])
    return {"best_k": best[0], "eta_k": best[1], "low_pass": best[1] < 1}


def run_sample(cfg, args, out):
    cfg.require("sampling")
    _, _, basis, _ = _graph_basis(cfg)
    k, ns = cfg.sampling["k"], cfg.sampling["ns"]
    if k > basis.n or ns > basis.n:
        raise ConfigError(f"/sampling: k and ns must not exceed n={basis.n}")
    Uk = basis.low(k)
    indices = greedy_select(Uk, ns)
    plan = build_interpolator(Uk, indices)
    io.dump_json(out / "plan.json", plan.to_dict())
    io.write_matrix_csv(out / "psi.csv", plan.psi)
    signals = _input(args, "signals", required=False)
    if signals is not None:
        io.write_matrix_csv(out / "samples.csv", plan.sample(io.read_matrix_csv(signals)))
    return {"k": k, "ns": ns, "sigma_min": float(sampled_singular_values(indices, Uk)[k - 1])}


def run_reconstruct(cfg, args, out):
    _, _, basis, _ = _graph_basis(cfg)
    plan_d = io.load_json(_input(args, "plan"))
    plan = build_interpolator(basis.low(int(plan_d["k"])), plan_d["indices"])
    Ys = io.read_matrix_csv(_input(args, "signals"))
    io.write_matrix_csv(out / "reconstructed.csv", plan.reconstruct(Ys))
    return {"k": plan.k, "ns": plan.ns, "m": Ys.shape[1]}


def _membership(args):
    path = _input(args, "membership", required=False)
    if path is None and getattr(args, "signals", None):
        sidecar = Path(args.signals).with_suffix(".json")
        if sidecar.exists():
            path = sidecar
    if path is None:
        return None
    if path.suffix == ".json":
        data = io.load_json(path)
        return np.asarray(data["membership"]) if "membership" in data else None
    return io.read_assignment_csv(path)


def run_communities(cfg, args, out):
    cfg.require("communities")
    c = cfg.communities
    k, restarts = c["k"], c.get("restarts", 10)
    if c.get("method", "blind") == "spectral":
        _, L, _, membership = _graph_basis(cfg)
        result = spectral_clustering(L, k, restarts, cfg.seed)
    else:
        Y = io.read_matrix_csv(_input(args, "signals"))
        result = blind_cd(Y, k, restarts, cfg.seed, center=c.get("center", False))
        membership = None
    io.write_assignment_csv(out / "assignment.csv", result.labels)
    summary = {"k": k, "objective": result.objective}
    truth = _membership(args)
    if truth is None:
        truth = membership
    if truth is not None:
        summary["accuracy"] = permutation_accuracy(truth, result.labels)
    return summary


def run_learn_graph(cfg, args, out):
    cfg.require("learning")
    p = cfg.learning
    Y = io.read_matrix_csv(_input(args, "signals"))
    res = learn_topology(Y, p["sigma"], p.get("beta_reg", 0.5), p.get("max_iter", 50), p.get("tol", 1e-6))
    io.write_matrix_csv(out / "laplacian.csv", res.values)
    with open(out / "history.csv", "w") as fh:
        fh.write("iteration,objective\n")
        for i, v in enumerate(res.history, 1):
            fh.write(f"{i},{io.FMT % v}\n")
    summary = {"n_iter": res.n_iter, "objective": res.history[-1]}
    if cfg.graph is not None:
        g, _ = cfg.build_graph()
        summary["edge_f1"] = edge_f1(edge_support(res.values, p.get("threshold", 0.1)), g.weights)
    return summary


def run_interpolate(cfg, args, out):
    cfg.require("interpolation")
    _, L, _, _ = _graph_basis(cfg)
    Ysamp = io.read_trajectory_csv(_input(args, "signals"))
    mask = io.read_mask_csv(_input(args, "mask"))
    p = cfg.interpolation
    Y = interpolate_time_vertex(Ysamp, mask, L, p["gamma"], p.get("tol", 1e-8))
    io.write_trajectory_csv(out / "interpolated.csv", Y)
    return {"observed_fraction": float(mask.mean())}


def run_detect(cfg, args, out):
    cfg.require("anomaly")
    _, _, basis, _ = _graph_basis(cfg)
    p = cfg.anomaly
    k = p["k"]
    train = io.read_matrix_csv(_input(args, "train"))
    Y = io.read_matrix_csv(_input(args, "signals"))
    delta = calibrate_threshold(basis, k, train, p.get("quantile", 0.95))
    stats = np.atleast_1d(hpf_statistic(basis, k, Y))
    results = [detect(s, delta) for s in stats]
    io.write_detection_csv(out / "detections.csv", results)
    alarms = sum(r.decision.value == "A1" for r in results)
    if "entry_threshold" in p:
        located = [
            localize(basis, k, Y[:, j], p["entry_threshold"]) if r.decision.value == "A1" else []
            for j, r in enumerate(results)
        ]
        io.write_localization_csv(out / "localization.csv", located)
    return {"threshold": delta, "alarms": int(alarms), "m": len(results)}


HANDLERS = {
    "generate": run_generate,
    "spectrum": run_spectrum,
    "filter": run_filter,
    "ratio": run_ratio,
    "sample": run_sample,
    "reconstruct": run_reconstruct,
    "communities": run_communities,
    "learn-graph": run_learn_graph,
    "interpolate": run_interpolate,
    "detect": run_detect,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="experiment config (JSON)")
    common.add_argument("--out", required=True, help="output directory")
    common.add_argument("--seed", type=int, help="override the config seed")
    common.add_argument("--threads", type=int, help="limit BLAS threads")
    parser = _Parser(prog="lowpass-gsp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    inputs = {
        "spectrum": ["signals"],
        "filter": ["signals"],
        "sample": ["signals"],
        "reconstruct": ["plan", "signals"],
        "communities": ["signals", "membership"],
        "learn-graph": ["signals"],
        "interpolate": ["signals", "mask"],
        "detect": ["train", "signals"],
    }
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common])
        for opt in inputs.get(name, []):
            p.add_argument(f"--{opt}")
    sub.add_parser("schema", help="print the config JSON schema")
    return parser


def run(command, cfg, args, out):
    """Run one subcommand, writing outputs, manifest and timing into ``out``."""
    out = Path(out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"--out: cannot create {out}: {exc.strerror}") from exc
    started = time.time()
    summary = HANDLERS[command](cfg, args, out)
    io.dump_json(out / "result.json", summary)
    outputs = sorted(p.name for p in out.iterdir() if p.name not in ("manifest.json", "timing.json"))
    inputs = {}
    for name in ("signals", "plan", "mask", "train", "membership"):
        value = getattr(args, name, None)
        if value is not None:
            inputs[name] = _sha256(value)
    manifest = {
        "subcommand": command,
        "config": cfg.to_dict(),
        "config_sha256": cfg.sha256(),
        "inputs": inputs,
        "outputs": {name: _sha256(out / name) for name in outputs},
        "versions": _versions(),
    }
    io.dump_json(out / "manifest.json", manifest)
    finished = time.time()
    io.dump_json(out / "timing.json", {"started": started, "finished": finished, "elapsed_seconds": finished - started})
    return summary


def _fail(exc, code):
    record = {"status": "error", "exit_code": code, "error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(record), file=sys.stderr)
    return code


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.command == "schema":
            print(json.dumps(load_schema(), indent=2))
            return 0
        cfg = ExperimentConfig.from_json(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        if args.threads is not None:
            with threadpool_limits(limits=args.threads):
                summary = run(args.command, cfg, args, args.out)
        else:
            summary = run(args.command, cfg, args, args.out)
    except GspError as exc:
        return _fail(exc, exc.exit_code)
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        return _fail(exc, 3)
    except OSError as exc:
        return _fail(exc, 1)
    print(json.dumps(summary, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
