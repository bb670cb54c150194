"""Command-line front end.

A thin client over the service layer: by default requests are executed
in-process; with --server they are POSTed to a running instance of the
FastAPI app. `evoclust serve` starts that app.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .service import ops
from .service.schemas import (
    CsvOptions,
    DatasetSource,
    GaSettings,
    ImputeRequest,
    JcRequest,
    KmeansSettings,
    PcaRequest,
    RunRequest,
)


def _config_to_argv(path: str) -> list[str]:
    """Flat key=value lines become flags; booleans include the flag when true."""
    argv: list[str] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        key, value = key.strip(), value.strip()
        if value.lower() in ("true", "false"):
            if value.lower() == "true":
                argv.append(f"--{key}")
        else:
            argv.extend([f"--{key}", value])
    return argv


def _add_source_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", required=True, help="CSV dataset path")
    p.add_argument("--label-col", type=int, default=None, help="label column index")
    p.add_argument("--header", action="store_true", help="skip a header row")
    p.add_argument("--missing-token", default="?", help="cell value marking a missing entry")
    p.add_argument("--server", default=None, help="base URL of a running service; default runs in-process")


def _source(args, inline: bool) -> DatasetSource:
    opts = CsvOptions(
        label_column=args.label_col, header=args.header, missing_token=args.missing_token
    )
    if inline:
        return DatasetSource(csv_text=Path(args.data).read_text(), options=opts)
    return DatasetSource(path=args.data, options=opts)


def _remote(server: str, endpoint: str, payload) -> dict:
    import httpx

    resp = httpx.post(f"{server.rstrip('/')}{endpoint}", json=payload.model_dump(), timeout=600.0)
    if resp.status_code != 200:
        raise RuntimeError(f"server error {resp.status_code}: {resp.text}")
    return resp.json()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evoclust")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a seeded benchmark and write a trial table CSV")
    run.add_argument("--config", default=None, help="key=value config file mirroring the flags")
    _add_source_flags(run)
    run.add_argument("--algo", action="append", default=None,
                     help="algorithm to run (repeatable or comma-separated): "
                          "kmeans, ga, improved_kmeans, igk")
    run.add_argument("--k", type=int, required=True)
    run.add_argument("--kprime", type=int, default=None, help="working cluster count (> k), default 2k")
    run.add_argument("--subsamples", type=int, default=4)
    run.add_argument("--trials", type=int, default=5)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--metric", choices=["unsquared", "squared"], default="unsquared")
    run.add_argument("--generations", type=int, default=100)
    run.add_argument("--pop", type=int, default=15)
    run.add_argument("--pc", type=float, default=0.8)
    run.add_argument("--pm", type=float, default=0.001)
    run.add_argument("--epsilon", type=float, default=1e-6)
    run.add_argument("--max-iters", type=int, default=100)
    run.add_argument("--impute", action="store_true")
    run.add_argument("--pca", type=float, default=None, help="PCA variance threshold, e.g. 0.98")
    run.add_argument("--columns", default=None, help="comma-separated column indices to keep instead of PCA")
    run.add_argument("--out", required=True, help="output CSV path")

    jc = sub.add_parser("jc", help="score a centers file against a dataset")
    _add_source_flags(jc)
    jc.add_argument("--centers", required=True, help="CSV file of k center rows")
    jc.add_argument("--metric", choices=["unsquared", "squared"], default="unsquared")

    pca = sub.add_parser("pca", help="fit PCA and report explained variance")
    _add_source_flags(pca)
    pca.add_argument("--threshold", type=float, default=0.98)
    pca.add_argument("--standardize", action="store_true")
    pca.add_argument("--out", default=None, help="write transformed CSV here")

    imp = sub.add_parser("impute", help="write a CSV with missing values filled in")
    _add_source_flags(imp)
    imp.add_argument("--out", required=True)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _cmd_run(args, parser) -> int:
    if args.kprime is not None and args.kprime <= args.k:
        parser.error(f"--kprime ({args.kprime}) must exceed --k ({args.k})")
    algos = []
    for entry in args.algo or ["kmeans,ga,improved_kmeans,igk"]:
        algos.extend(a.strip() for a in entry.split(",") if a.strip())
    req = RunRequest(
        source=_source(args, inline=args.server is not None),
        algorithms=algos,
        k=args.k,
        k_prime=args.kprime,
        subsamples=args.subsamples,
        trials=args.trials,
        seed=args.seed,
        metric=args.metric,
        impute=args.impute,
        pca_threshold=args.pca,
        select_columns=[int(c) for c in args.columns.split(",")] if args.columns else None,
        ga=GaSettings(
            population=args.pop,
            crossover_prob=args.pc,
            mutation_prob=args.pm,
            generations=args.generations,
        ),
        kmeans=KmeansSettings(epsilon=args.epsilon, max_iterations=args.max_iters),
    )
    if args.server:
        csv_text = _remote(args.server, "/run", req)["csv_text"]
    else:
        csv_text = ops.do_run(req).csv_text
    with open(args.out, "w", newline="\n") as fh:
        fh.write(csv_text)
    print(f"wrote {args.out}")
    return 0


def _cmd_jc(args) -> int:
    centers = [
        [float(v) for v in line.split(",")]
        for line in Path(args.centers).read_text().splitlines()
        if line.strip()
    ]
    req = JcRequest(
        source=_source(args, inline=args.server is not None), centers=centers, metric=args.metric
    )
    result = _remote(args.server, "/jc", req) if args.server else ops.do_jc(req).model_dump()
    print(f"{result['jc']:.6g}")
    return 0


def _cmd_pca(args) -> int:
    req = PcaRequest(
        source=_source(args, inline=args.server is not None),
        variance_threshold=args.threshold,
        standardize=args.standardize,
        transform=args.out is not None,
    )
    result = _remote(args.server, "/pca", req) if args.server else ops.do_pca(req).model_dump()
    print(f"components: {result['n_components']}")
    ratios = ", ".join(f"{v:.4f}" for v in result["explained_variance_ratio"])
    print(f"explained variance ratio: {ratios}")
    print(f"cumulative: {result['cumulative_variance']:.4f}")
    if args.out:
        Path(args.out).write_text(result["transformed_csv"])
        print(f"wrote {args.out}")
    return 0


def _cmd_impute(args) -> int:
    req = ImputeRequest(source=_source(args, inline=args.server is not None))
    result = _remote(args.server, "/impute", req) if args.server else ops.do_impute(req).model_dump()
    Path(args.out).write_text(result["csv_text"])
    print(f"filled {result['n_filled']} cells; wrote {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # expand --config into flags so explicit CLI flags still win (last occurrence)
    if "run" in argv[:1] and "--config" in argv:
        i = argv.index("--config")
        cfg_args = _config_to_argv(argv[i + 1])
        argv = [argv[0]] + cfg_args + argv[1:i] + argv[i + 2 :]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args, parser)
        if args.command == "jc":
            return _cmd_jc(args)
        if args.command == "pca":
            return _cmd_pca(args)
        if args.command == "impute":
            return _cmd_impute(args)
        if args.command == "serve":
            import uvicorn

            from .service import app

            uvicorn.run(app, host=args.host, port=args.port)
            return 0
    except (ValueError, FileNotFoundError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
