"""Command-line interface.

Thin client over the HTTP service: every command except ``serve`` builds a
request, sends it to the service, and deals with files (results CSVs, model
bundles, predictions) on the client side. By default the service runs
in-process, so no server needs to be started; ``--server URL`` points the
same commands at a remote instance instead.

Package imports happen after argument parsing so the worker thread limit
can be raised via the environment before the numeric runtime loads.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time


def _add_transform_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--num-features",
        type=int,
        default=50_000,
        help="feature budget; the actual count is the largest reachable value not above it (default 50000)",
    )
    p.add_argument(
        "--representations",
        default="base,first_diff",
        help="comma list drawn from base,first_diff (default both)",
    )
    p.add_argument(
        "--pooling",
        default="ppv,mpv,mipv,lspv",
        help="comma list drawn from ppv,mpv,mipv,lspv (default all four)",
    )
    p.add_argument("--seed", type=int, default=0, help="bias sampling seed (default 0)")
    p.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")


def _add_client_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; omitted = run the service in-process",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convpool",
        description="Convolutional feature transform and ridge classification "
        "for univariate time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--threads", type=int, default=1, help="worker thread limit")

    p = sub.add_parser("run", help="one train/test run on a dataset, appended to a results CSV")
    p.add_argument("dataset_dir", help="directory <root>/<Name> holding <Name>_TRAIN.tsv and <Name>_TEST.tsv")
    p.add_argument("--resample", type=int, default=0, help="resample id; 0 = original split")
    p.add_argument("--out", default="results.csv", help="results CSV to append to")
    _add_transform_flags(p)
    _add_client_flag(p)

    p = sub.add_parser("benchmark", help="run datasets x resamples with resume")
    p.add_argument("--root", required=True, help="archive root directory")
    p.add_argument(
        "--datasets",
        default=None,
        help="comma list of dataset names (default: every complete pair under the root)",
    )
    p.add_argument(
        "--resamples", type=int, default=1, help="number of resample ids, 0..N-1 (default 1)"
    )
    p.add_argument("--out", default="results.csv", help="results CSV to append to")
    _add_transform_flags(p)
    _add_client_flag(p)

    p = sub.add_parser("fit", help="train on a dataset's TRAIN split and save the model")
    p.add_argument("dataset_dir")
    p.add_argument("--save", required=True, help="where to write the model document")
    _add_transform_flags(p)
    _add_client_flag(p)

    p = sub.add_parser("predict", help="predict with a saved model")
    p.add_argument("dataset_dir", nargs="?", help="dataset directory (used with --split)")
    p.add_argument("--model", required=True, help="model document written by fit --save")
    p.add_argument("--split", default="TEST", choices=("TRAIN", "TEST"))
    p.add_argument("--input", default=None, help="explicit split file instead of dataset_dir")
    p.add_argument("--out", default=None, help="write one predicted label per line here")
    p.add_argument("--threads", type=int, default=1)
    _add_client_flag(p)

    return parser


def _raise_thread_limit(threads: int) -> None:
    # must happen before the numeric runtime is first imported
    if threads > int(os.environ.get("NUMBA_NUM_THREADS", "0") or 0):
        os.environ["NUMBA_NUM_THREADS"] = str(threads)


class _InProcessClient:
    """Synchronous facade over the ASGI app, for serverless one-shot use."""

    def __init__(self, app):
        import asyncio

        import httpx

        self._loop = asyncio.new_event_loop()
        self._client = httpx.AsyncClient(
            transport=httpx.ASGITransport(app=app), base_url="http://convpool"
        )

    def post(self, path, json=None):
        return self._loop.run_until_complete(self._client.post(path, json=json))

    def get(self, path):
        return self._loop.run_until_complete(self._client.get(path))

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self._loop.run_until_complete(self._client.aclose())
        self._loop.close()
        return False


def make_client(server: str | None):
    """An HTTP client: remote when a URL is given, else in-process."""
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=None)
    from .service import app

    return _InProcessClient(app)


def _post(client, path: str, payload: dict):
    """POST and return parsed JSON, or print the error and return None."""
    response = client.post(path, json=payload)
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        print(f"error: {detail}", file=sys.stderr)
        return None
    return response.json()


def _split_dataset_dir(dataset_dir: str) -> tuple[str, str]:
    path = os.path.normpath(dataset_dir)
    return os.path.dirname(path), os.path.basename(path)


def _transform_payload(args) -> dict:
    return {
        "num_features": args.num_features,
        "representations": args.representations.split(","),
        "pooling": args.pooling.split(","),
        "seed": args.seed,
        "threads": args.threads,
    }


def _record_from_payload(payload: dict):
    from .pipeline import RunRecord

    return RunRecord(
        dataset=payload["dataset"],
        resample=payload["resample"],
        num_features=payload["num_features"],
        representations=tuple(payload["representations"]),
        pooling=tuple(payload["pooling"]),
        seed=payload["seed"],
        threads=payload["threads"],
        t_fit=payload["t_fit"],
        t_apply_train=payload["t_apply_train"],
        t_apply_test=payload["t_apply_test"],
        t_clf=payload["t_clf"],
        t_pred=payload["t_pred"],
        acc_train=payload["acc_train"],
        acc_test=payload["acc_test"],
    )


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("convpool.service:app", host=args.host, port=args.port)
    return 0


def cmd_run(args) -> int:
    from .pipeline import append_record

    root, name = _split_dataset_dir(args.dataset_dir)
    payload = _transform_payload(args) | {
        "root": root,
        "dataset": name,
        "resample": args.resample,
    }
    with make_client(args.server) as client:
        response = _post(client, "/run", payload)
    if response is None:
        return 1
    record = _record_from_payload(response)
    append_record(args.out, record)
    print(
        f"{record.dataset} resample {record.resample}: "
        f"acc_train {record.acc_train:.4f} acc_test {record.acc_test:.4f} "
        f"({record.num_features} features, "
        f"{record.t_fit + record.t_apply_train + record.t_apply_test + record.t_clf + record.t_pred:.2f}s)"
    )
    return 0


def cmd_benchmark(args) -> int:
    from .pipeline import append_record, completed_runs, read_records

    started = time.perf_counter()
    with make_client(args.server) as client:
        if args.datasets:
            names = [n for n in args.datasets.split(",") if n]
        else:
            response = _post(client, "/datasets", {"root": args.root})
            if response is None:
                return 1
            names = response["datasets"]
        if not names:
            print("error: no datasets to run", file=sys.stderr)
            return 1
        done = completed_runs(args.out)
        requested = [
            (name, rid) for name in names for rid in range(args.resamples)
        ]
        skipped = failed = completed = 0
        for name, rid in requested:
            if (name, rid) in done:
                skipped += 1
                continue
            payload = _transform_payload(args) | {
                "root": args.root,
                "dataset": name,
                "resample": rid,
            }
            response = _post(client, "/run", payload)
            if response is None:
                print(f"skipping {name} resample {rid}", file=sys.stderr)
                failed += 1
                continue
            record = _record_from_payload(response)
            append_record(args.out, record)
            completed += 1
            print(f"{name} resample {rid}: acc_test {record.acc_test:.4f}")
    wanted = set(requested)
    accuracies = [
        r.acc_test for r in read_records(args.out) if (r.dataset, r.resample) in wanted
    ] if os.path.exists(args.out) else []
    mean = sum(accuracies) / len(accuracies) if accuracies else float("nan")
    print(
        f"benchmark: {completed} run(s), {skipped} resumed, {failed} failed; "
        f"mean test accuracy {mean:.4f}; total {time.perf_counter() - started:.1f}s"
    )
    return 1 if failed else 0


def cmd_fit(args) -> int:
    root, name = _split_dataset_dir(args.dataset_dir)
    payload = _transform_payload(args) | {"root": root, "dataset": name}
    with make_client(args.server) as client:
        response = _post(client, "/fit", payload)
    if response is None:
        return 1
    with open(args.save, "w") as fh:
        json.dump(response["model"], fh, allow_nan=False)
        fh.write("\n")
    print(
        f"{name}: acc_train {response['acc_train']:.4f} "
        f"(fit {response['t_fit']:.2f}s, transform {response['t_apply_train']:.2f}s, "
        f"classifier {response['t_clf']:.2f}s) -> {args.save}"
    )
    return 0


def cmd_predict(args) -> int:
    from .data import load_tsv

    if (args.input is None) == (args.dataset_dir is None):
        print("error: give a dataset directory or --input, not both", file=sys.stderr)
        return 1
    try:
        with open(args.model) as fh:
            document = json.load(fh)
        if args.input is not None:
            split_path = args.input
        else:
            root, name = _split_dataset_dir(args.dataset_dir)
            split_path = os.path.join(root, name, f"{name}_{args.split}.tsv")
        ds = load_tsv(split_path)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    payload = {
        "model": document,
        "values": ds.values.tolist(),
        "threads": args.threads,
    }
    with make_client(args.server) as client:
        response = _post(client, "/predict", payload)
    if response is None:
        return 1
    labels = response["labels"]
    if args.out:
        with open(args.out, "w") as fh:
            fh.writelines(f"{lab}\n" for lab in labels)
    else:
        for lab in labels:
            print(lab)
    model_names = tuple(document.get("label_names", ()))
    if model_names == ds.label_names:
        matches = sum(
            1 for lab, want in zip(labels, ds.labels) if lab == ds.label_names[want]
        )
        print(
            f"accuracy {matches / ds.num_examples:.4f} "
            f"({matches}/{ds.num_examples} on {os.path.basename(split_path)})",
            file=sys.stderr,
        )
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", None):
        _raise_thread_limit(args.threads)
    handlers = {
        "serve": cmd_serve,
        "run": cmd_run,
        "benchmark": cmd_benchmark,
        "fit": cmd_fit,
        "predict": cmd_predict,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
