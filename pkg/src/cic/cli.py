"""Command-line front end: simulate benchmark systems, infer pairwise
causality, scan whole networks, sweep parameters, and evaluate against
ground truth. Every command writes machine-readable artifacts plus a
provenance echo of its resolved configuration, and is byte-for-byte
reproducible given the same seed (including parallel scans).

Exit codes: 0 ok, 2 usage/config error, 3 simulation instability,
4 training divergence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .baselines import cross_map_skill, granger
from .benchmarks import simulate3, simulate_network, system_coupling, truth_from_coupling
from .embedding import EmbeddingConfig, embed_pair
from .errors import CicError, ConfigError, DivergenceError, UnstableError
from .evaluation import (
    ScoredNetwork,
    canonical_corr,
    classify_at,
    confounder_band_score,
    roc_auc,
)
from .model import (
    CicModel,
    VERDICT_CAUSAL,
    VERDICT_CONFOUNDED,
    VERDICT_NONCAUSAL,
    VERDICT_SELF,
    infer_pair,
)
from .timeseries import TimeSeries, export_csv, load_csv, load_dream4, zscore

# ---------------------------------------------------------------------------
# deterministic per-task seed derivation (documented formula)
# ---------------------------------------------------------------------------

_GOLDEN64 = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


def _splitmix64(value: int) -> int:
    value = (value + _GOLDEN64) & _MASK64
    value ^= value >> 30
    value = (value * 0xBF58476D1CE4E5B9) & _MASK64
    value ^= value >> 27
    value = (value * 0x94D049BB133111EB) & _MASK64
    value ^= value >> 31
    return value


def derive_seed(master: int, *indices: int) -> int:
    """64-bit mix of the master seed with task indices.

    ``seed_0 = master & 2^64-1``, then for each index
    ``seed_{k+1} = splitmix64(seed_k XOR ((index_k + 1) * 0x9E3779B97F4A7C15))``.
    Identical regardless of worker count or completion order.
    """
    h = master & _MASK64
    for ix in indices:
        h = _splitmix64(h ^ (((ix + 1) * _GOLDEN64) & _MASK64))
    return h


# ---------------------------------------------------------------------------
# configuration plumbing
# ---------------------------------------------------------------------------

_MODEL_KEYS = (
    "d_private",
    "d_shared",
    "hidden",
    "alpha",
    "beta1",
    "beta2",
    "lr",
    "epochs",
    "batch_size",
    "m",
    "M",
    "patience",
)
_EMBED_KEYS = ("order", "lag")
_GLOBAL_KEYS = ("method", "seed", "out", "jobs")
_CONFIG_KEYS = set(_MODEL_KEYS) | set(_EMBED_KEYS) | set(_GLOBAL_KEYS)


def _defaults() -> dict:
    cfg = {k: v for k, v in CicModel().get_params().items() if k != "seed"}
    cfg["order"] = EmbeddingConfig().order
    cfg["lag"] = EmbeddingConfig().lag
    cfg.update(method="cic", seed=0, out=".", jobs=1)
    return cfg


def _load_config_file(path) -> dict:
    try:
        with open(path, "r") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config document must be a JSON object")
    unknown = sorted(set(raw) - _CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    if "hidden" in raw:
        raw["hidden"] = tuple(int(h) for h in raw["hidden"])
    return raw


def _parse_hidden(text: str) -> tuple:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ConfigError(f"cannot parse hidden widths {text!r}") from None


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge defaults < config file < explicit CLI flags."""
    cfg = _defaults()
    if getattr(args, "config", None):
        cfg.update(_load_config_file(args.config))
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    if isinstance(cfg["hidden"], str):
        cfg["hidden"] = _parse_hidden(cfg["hidden"])
    cfg["hidden"] = tuple(int(h) for h in cfg["hidden"])
    if cfg["jobs"] < 1:
        raise ConfigError("--jobs must be >= 1")
    return cfg


def _model_params(cfg: dict) -> dict:
    return {k: cfg[k] for k in _MODEL_KEYS}


def _embedding(cfg: dict) -> EmbeddingConfig:
    return EmbeddingConfig(order=int(cfg["order"]), lag=int(cfg["lag"]))


# ---------------------------------------------------------------------------
# file helpers (17 significant digits, LF endings, sorted keys)
# ---------------------------------------------------------------------------


def _f17(value) -> str:
    return format(float(value), ".17g")


def _write_json(path, payload) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_provenance(out_dir, command: str, cfg: dict, extra: dict) -> None:
    payload = {"command": command, **{k: cfg[k] for k in sorted(cfg)}, **extra}
    if isinstance(payload.get("hidden"), tuple):
        payload["hidden"] = list(payload["hidden"])
    _write_json(os.path.join(out_dir, "run_config.json"), payload)


def _write_matrix(path, names, matrix, fmt=_f17) -> None:
    """Matrix CSV in export orientation: rows = effect, columns = cause."""
    with open(path, "w", newline="\n") as fh:
        fh.write("effect\\cause," + ",".join(names) + "\n")
        for j, effect in enumerate(names):
            cells = [fmt(matrix[i][j]) for i in range(len(names))]
            fh.write(effect + "," + ",".join(cells) + "\n")


def _read_matrix(path):
    """Read a matrix CSV written by :func:`_write_matrix`; returns (names, score[i][j])."""
    series_rows = []
    with open(path, "r") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    header = lines[0].split(",")
    names = header[1:]
    for ln in lines[1:]:
        cells = ln.split(",")
        series_rows.append((cells[0], cells[1:]))
    if len(series_rows) != len(names):
        raise ConfigError(f"{path}: matrix is not square")
    matrix = np.zeros((len(names), len(names)))
    for j, (effect, cells) in enumerate(series_rows):
        if effect != names[j]:
            raise ConfigError(f"{path}: row order {effect!r} != column order {names[j]!r}")
        for i, cell in enumerate(cells):
            matrix[i, j] = float(cell)
    return names, matrix


def _load_series(path, fmt: str) -> TimeSeries:
    if fmt == "dream4":
        return load_dream4(path)
    return load_csv(path)


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def cmd_simulate(args) -> int:
    cfg = resolve_config(args)
    out = cfg["out"]
    os.makedirs(out, exist_ok=True)
    if (args.system is None) == (args.adjacency is None):
        print("simulate: pass exactly one of --system or --adjacency", file=sys.stderr)
        return 2
    if args.system is not None:
        series = simulate3(
            args.system,
            args.strength,
            args.noise,
            args.length,
            seed=cfg["seed"],
            burn_in=args.burn_in,
        )
        coupling = system_coupling(args.system, args.strength)
        spec_echo = {
            "kind": "system3",
            "system": args.system,
            "gamma": [3.7, 3.72, 3.78],
        }
    else:
        _, adjacency = _read_matrix(args.adjacency)
        adjacency = (adjacency != 0).astype(int)
        series = simulate_network(
            adjacency,
            args.strength,
            args.noise,
            args.length,
            seed=cfg["seed"],
            burn_in=args.burn_in,
        )
        coupling = args.strength * adjacency
        spec_echo = {"kind": "network", "adjacency": adjacency.tolist()}
    causal, confounded = truth_from_coupling(coupling)
    export_csv(series, os.path.join(out, "data.csv"))
    _write_matrix(os.path.join(out, "truth_causal.csv"), series.names, causal, fmt=str)
    _write_matrix(
        os.path.join(out, "truth_confounder.csv"), series.names, confounded, fmt=str
    )
    spec_echo.update(
        strength=args.strength,
        noise=args.noise,
        length=args.length,
        burn_in=args.burn_in,
        seed=cfg["seed"],
    )
    _write_json(os.path.join(out, "spec.json"), spec_echo)
    _write_provenance(out, "simulate", cfg, {})
    return 0


def cmd_infer(args) -> int:
    cfg = resolve_config(args)
    out = cfg["out"]
    os.makedirs(out, exist_ok=True)
    if args.x == args.y:
        print("infer: --x and --y must differ", file=sys.stderr)
        return 2
    series = _load_series(args.data, args.format)
    pair = TimeSeries(
        (args.x, args.y),
        np.column_stack([series.column(args.x), series.column(args.y)]),
        segments=series.segments,
    )
    pair = zscore(pair)
    result = infer_pair(
        pair, args.x, args.y, embedding=_embedding(cfg), seed=cfg["seed"], **_model_params(cfg)
    )
    report = {
        "x": args.x,
        "y": args.y,
        "seed": cfg["seed"],
        "xy": result.report_xy.to_dict(),
        "yx": result.report_yx.to_dict(),
        "confounder": result.confounder,
    }
    _write_json(os.path.join(out, "report.json"), report)
    d = result.report_xy.shared_series.shape[1]
    with open(os.path.join(out, "shared_series.csv"), "w", newline="\n") as fh:
        cols = [f"shared_xy_{k + 1}" for k in range(d)] + [
            f"shared_yx_{k + 1}" for k in range(result.report_yx.shared_series.shape[1])
        ]
        fh.write(",".join(cols) + "\n")
        both = np.hstack([result.report_xy.shared_series, result.report_yx.shared_series])
        for row in both:
            fh.write(",".join(_f17(v) for v in row) + "\n")
    with open(os.path.join(out, "loss_curves.csv"), "w", newline="\n") as fh:
        fh.write("epoch,loss_xy,loss_yx\n")
        for e, (lx, ly) in enumerate(
            zip(result.report_xy.loss_history, result.report_yx.loss_history)
        ):
            fh.write(f"{e},{_f17(lx)},{_f17(ly)}\n")
    _write_provenance(out, "infer", cfg, {"data": str(args.data), "x": args.x, "y": args.y})
    return 0


def _scan_pair(payload):
    """One ordered pair of a scan; top-level function so pools can pickle it."""
    (i, j, xi, xj, segments, method, params, embed_cfg, seed) = payload
    if method == "cic":
        pair = TimeSeries(("a", "b"), np.column_stack([xi, xj]), segments=segments)
        ds = embed_pair(pair, "a", "b", EmbeddingConfig(**embed_cfg))
        model = CicModel(seed=seed, **params).fit(ds)
        rep = model.report(ds)
        return i, j, rep.score, rep.verdict
    if method == "gc":
        res = granger(xi, xj, order=params["gc_order"])
        verdict = VERDICT_CAUSAL if res.p_value < 0.05 else VERDICT_NONCAUSAL
        return i, j, res.normalized_score, verdict
    if method == "ccm":
        res = cross_map_skill(xi, xj, embed_dim=embed_cfg["order"] + 1, lag=embed_cfg["lag"])
        verdict = VERDICT_CAUSAL if res.converged else VERDICT_NONCAUSAL
        return i, j, res.normalized_score, verdict
    raise ConfigError(f"unknown method {method!r}")


def cmd_scan(args) -> int:
    cfg = resolve_config(args)
    out = cfg["out"]
    os.makedirs(out, exist_ok=True)
    series = zscore(_load_series(args.data, args.format))
    names = series.names
    n = len(names)
    if n < 2:
        print("scan: need at least two columns", file=sys.stderr)
        return 2
    method = cfg["method"]
    if method == "cic":
        params = _model_params(cfg)
    elif method == "gc":
        params = {"gc_order": args.gc_order}
    elif method == "ccm":
        params = {}
    else:
        print(f"scan: unknown method {method!r}", file=sys.stderr)
        return 2
    embed_cfg = {"order": int(cfg["order"]), "lag": int(cfg["lag"])}
    payloads = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            payloads.append(
                (
                    i,
                    j,
                    series.values[:, i],
                    series.values[:, j],
                    series.segments,
                    method,
                    params,
                    embed_cfg,
                    derive_seed(cfg["seed"], i * n + j),
                )
            )
    if cfg["jobs"] > 1:
        with ProcessPoolExecutor(max_workers=cfg["jobs"]) as pool:
            results = list(pool.map(_scan_pair, payloads))
    else:
        results = [_scan_pair(p) for p in payloads]

    scores = np.zeros((n, n))
    verdicts = [[VERDICT_SELF] * n for _ in range(n)]
    for i, j, score, verdict in results:
        scores[i, j] = score
        verdicts[i][j] = verdict
    network = ScoredNetwork(names=names, scores=scores, verdicts=verdicts)
    confounders = np.zeros((n, n), dtype=int)
    if method == "cic":
        for i in range(n):
            for j in range(i + 1, n):
                if (
                    network.verdicts[i][j] == VERDICT_CONFOUNDED
                    and network.verdicts[j][i] == VERDICT_CONFOUNDED
                ):
                    confounders[i, j] = confounders[j, i] = 1

    _write_matrix(os.path.join(out, "scores.csv"), names, network.scores)
    _write_matrix(os.path.join(out, "verdicts.csv"), names, network.verdicts, fmt=str)
    _write_matrix(os.path.join(out, "confounders.csv"), names, confounders, fmt=str)
    with open(os.path.join(out, "flat.csv"), "w", newline="\n") as fh:
        fh.write("cause,effect,score,verdict\n")
        for i in range(n):
            for j in range(n):
                if i != j:
                    fh.write(
                        f"{names[i]},{names[j]},{_f17(network.scores[i, j])},"
                        f"{network.verdicts[i][j]}\n"
                    )
    _write_provenance(out, "scan", cfg, {"data": str(args.data)})
    return 0


def _sweep_grid(args) -> list:
    if args.values:
        try:
            grid = [float(tok) for tok in args.values.split(",") if tok.strip()]
        except ValueError:
            raise ConfigError(f"cannot parse --values {args.values!r}") from None
    elif args.steps is not None:
        if args.steps < 1 or args.from_ is None or args.to is None:
            raise ConfigError("range sweep needs --from, --to and --steps >= 1")
        grid = np.linspace(args.from_, args.to, args.steps).tolist()
    else:
        grid = []
    if not grid:
        raise ConfigError("empty sweep grid: pass --values or --from/--to/--steps")
    return grid


def cmd_sweep(args) -> int:
    cfg = resolve_config(args)
    out = cfg["out"]
    os.makedirs(out, exist_ok=True)
    grid = _sweep_grid(args)
    base = {"noise": args.noise, "strength": args.strength, "length": args.length}
    if args.param not in ("noise", "strength", "length"):
        print(f"sweep: unknown --param {args.param!r}", file=sys.stderr)
        return 2
    rows = []
    for gi, value in enumerate(grid):
        setting = dict(base)
        setting[args.param] = value
        for rep in range(args.repeats):
            run_seed = derive_seed(cfg["seed"], gi, rep)
            series = simulate3(
                args.system,
                setting["strength"],
                setting["noise"],
                int(round(setting["length"])),
                seed=run_seed,
            )
            z_true = series.column("z")
            pair = TimeSeries(
                ("x", "y"),
                np.column_stack([series.column("x"), series.column("y")]),
                segments=series.segments,
            )
            pair = zscore(pair)
            result = infer_pair(
                pair, "x", "y", embedding=_embedding(cfg), seed=run_seed, **_model_params(cfg)
            )
            ds_times = embed_pair(pair, "x", "y", _embedding(cfg)).sample_times
            corr = canonical_corr(
                result.report_xy.shared_series, z_true[ds_times - 1][:, None]
            )
            rows.append(
                (
                    args.param,
                    value,
                    rep,
                    run_seed,
                    result.report_xy.score,
                    result.report_yx.score,
                    result.report_xy.verdict,
                    result.report_yx.verdict,
                    int(result.confounder),
                    corr,
                )
            )
    with open(os.path.join(out, "sweep.csv"), "w", newline="\n") as fh:
        fh.write(
            "param,value,repeat,seed,cic_xy,cic_yx,verdict_xy,verdict_yx,"
            "confounder,corr_confounder\n"
        )
        for row in rows:
            fh.write(
                f"{row[0]},{_f17(row[1])},{row[2]},{row[3]},{_f17(row[4])},"
                f"{_f17(row[5])},{row[6]},{row[7]},{row[8]},{_f17(row[9])}\n"
            )
    _write_provenance(out, "sweep", cfg, {"system": args.system, "param": args.param})
    return 0


def cmd_evaluate(args) -> int:
    cfg = resolve_config(args)
    out = cfg["out"]
    os.makedirs(out, exist_ok=True)
    score_names, scores = _read_matrix(args.scores)
    truth_names, truth = _read_matrix(args.truth)
    if list(score_names) != list(truth_names):
        extra = sorted(set(score_names) ^ set(truth_names)) or ["(ordering differs)"]
        print(
            "evaluate: node sets do not match; offending labels: " + ", ".join(map(str, extra)),
            file=sys.stderr,
        )
        return 2
    n = len(score_names)
    flat_scores, flat_labels = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                flat_scores.append(scores[i, j])
                flat_labels.append(int(truth[i, j] != 0))
    summary = classify_at(flat_scores, flat_labels, args.threshold)
    auc, points = roc_auc(flat_scores, flat_labels)
    metrics = summary.to_dict()
    metrics.update(threshold_spec=str(args.threshold), auroc=auc, n_pairs=len(flat_scores))

    if args.truth_confounder:
        conf_names, conf_truth = _read_matrix(args.truth_confounder)
        if list(conf_names) != list(score_names):
            print("evaluate: confounder truth node set mismatch", file=sys.stderr)
            return 2
        pair_scores, pair_labels = [], []
        for i in range(n):
            for j in range(i + 1, n):
                pair_scores.append(
                    confounder_band_score(scores[i, j], scores[j, i], cfg["m"], cfg["M"])
                )
                pair_labels.append(int(conf_truth[i, j] != 0))
        if 0 < sum(pair_labels) < len(pair_labels):
            conf_auc, _ = roc_auc(pair_scores, pair_labels)
            metrics["confounder_auroc"] = conf_auc
        else:
            metrics["confounder_auroc"] = None

    _write_json(os.path.join(out, "metrics.json"), metrics)
    with open(os.path.join(out, "roc.csv"), "w", newline="\n") as fh:
        fh.write("fpr,tpr,threshold\n")
        for fpr, tpr, thr in points:
            fh.write(f"{_f17(fpr)},{_f17(tpr)},{_f17(thr)}\n")
    _write_provenance(
        out, "evaluate", cfg, {"scores": str(args.scores), "truth": str(args.truth)}
    )
    return 0


def cmd_gradcheck(args) -> int:
    cfg = resolve_config(args)
    from .neural import grad_check

    rng = np.random.default_rng(cfg["seed"])
    X = rng.normal(size=(4, 5))
    Y = rng.normal(size=(4, 5))
    model = CicModel(
        d_private=2, d_shared=2, hidden=(8,), epochs=0, batch_size=4, seed=cfg["seed"]
    ).fit(X, Y)
    noise = model.draw_noise(4, np.random.default_rng(cfg["seed"] + 1))

    def loss_fn():
        terms, grads = model.loss_and_grads(X, Y, noise)
        return terms["total"], grads

    err = grad_check(loss_fn, model._parameters(), h=1e-5)
    print(f"max relative gradient error: {err:.3e} (tolerance 1e-4)")
    return 0 if err < 1e-4 else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    base = argparse.ArgumentParser(add_help=False)
    base.add_argument("--config", help="JSON config file; CLI flags override it")
    base.add_argument("--seed", type=int, default=None, help="master seed")
    base.add_argument("--out", default=None, help="output directory")
    base.add_argument("--jobs", type=int, default=None, help="parallel workers")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--embed-order", dest="order", type=int, default=None)
    model.add_argument("--lag", type=int, default=None)
    model.add_argument("--d-private", dest="d_private", type=int, default=None)
    model.add_argument("--d-shared", dest="d_shared", type=int, default=None)
    model.add_argument("--hidden", default=None, help="comma-separated widths, e.g. 64,64")
    model.add_argument("--alpha", type=float, default=None)
    model.add_argument("--beta1", type=float, default=None)
    model.add_argument("--beta2", type=float, default=None)
    model.add_argument("--lr", type=float, default=None)
    model.add_argument("--epochs", type=int, default=None)
    model.add_argument("--batch-size", dest="batch_size", type=int, default=None)
    model.add_argument("--threshold-low", dest="m", type=float, default=None)
    model.add_argument("--threshold-high", dest="M", type=float, default=None)
    model.add_argument("--patience", type=int, default=None)

    parser = argparse.ArgumentParser(
        prog="cic",
        description="Dynamical causality inference under invisible confounders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[base], help="generate benchmark data")
    p.add_argument("--system", type=int, choices=(1, 2, 3, 4), default=None)
    p.add_argument("--adjacency", default=None, help="0/1 matrix CSV for a network")
    p.add_argument("--strength", type=float, default=0.35)
    p.add_argument("--noise", type=float, default=0.001)
    p.add_argument("--length", type=int, default=1000)
    p.add_argument("--burn-in", dest="burn_in", type=int, default=100)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("infer", parents=[base, model], help="two-direction pair inference")
    p.add_argument("--data", required=True)
    p.add_argument("--format", choices=("csv", "dream4"), default="csv")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("scan", parents=[base, model], help="score all ordered pairs")
    p.add_argument("--data", required=True)
    p.add_argument("--format", choices=("csv", "dream4"), default="csv")
    p.add_argument("--method", choices=("cic", "gc", "ccm"), default=None)
    p.add_argument("--gc-order", dest="gc_order", type=int, default=3)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sweep", parents=[base, model], help="parameter robustness sweep")
    p.add_argument("--system", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--param", required=True, help="noise | strength | length")
    p.add_argument("--from", dest="from_", type=float, default=None)
    p.add_argument("--to", dest="to", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--values", default=None, help="comma-separated grid")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--strength", type=float, default=0.35)
    p.add_argument("--noise", type=float, default=0.001)
    p.add_argument("--length", type=int, default=5000)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("evaluate", parents=[base], help="score a scan against truth")
    p.add_argument("--scores", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--truth-confounder", dest="truth_confounder", default=None)
    p.add_argument("--threshold", default="quantile:0.65")
    p.add_argument("--m", type=float, default=None, help=argparse.SUPPRESS)
    p.add_argument("--M", type=float, default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("gradcheck", parents=[base], help="finite-difference gradient check")
    p.set_defaults(func=cmd_gradcheck)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnstableError as exc:
        print(f"simulation unstable: {exc}", file=sys.stderr)
        return 3
    except DivergenceError as exc:
        print(f"training diverged: {exc}", file=sys.stderr)
        return 4
    except CicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
