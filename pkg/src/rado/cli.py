"""Command-line front end.

The CLI is a thin client of the HTTP service: every subcommand builds a
request, sends it over HTTP, and formats the response.  By default the
app runs in-process behind an ASGI transport (no network, no separate
server); pass --server to talk to a running instance instead.

Exit status: 0 on success, 1 on mathematical negatives (NotWitness,
Exhausted, a failed verification), 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from typing import Any

import httpx

from .cache import resolve_cache_path

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _symbol(equation: str) -> str:
    return "R" if equation == "linear-sum" else "f"


class ServiceClient:
    """One-shot HTTP client; in-process ASGI unless a server URL is given."""

    def __init__(self, server: str | None, cache_path: str | None):
        self.server = server
        self.cache_path = cache_path

    def request(self, method: str, path: str, payload: dict | None = None):
        async def go():
            if self.server:
                client = httpx.AsyncClient(base_url=self.server, timeout=None)
            else:
                from .service.app import create_app

                app = create_app(self.cache_path)
                client = httpx.AsyncClient(
                    transport=httpx.ASGITransport(app=app),
                    base_url="http://rado.internal",
                    timeout=None,
                )
            async with client:
                return await client.request(method, path, json=payload)

        return asyncio.run(go())


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--server", help="URL of a running service (default: in-process)")
    parser.add_argument("--cache-path", help="result cache file (RADO_CACHE overrides)")
    parser.add_argument(
        "--output", choices=("text", "json", "tsv"), default="text", help="report format"
    )
    parser.add_argument("--threads", type=int, default=1, help="worker count")
    parser.add_argument("--budget", type=float, help="wall-clock budget in seconds")


def _witness_source_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--set", dest="values", help='explicit witness set, e.g. "1,2,3,4,5"')
    parser.add_argument(
        "--family",
        choices=("lemma31", "lemma33", "chi", "interval"),
        help="named witness family",
    )
    parser.add_argument("--n", type=int, help="right endpoint for --family interval")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rado",
        description="Compute and verify Rado-type numbers for sum and unit-fraction equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="exact Rado number by interval search")
    _common_flags(p)
    p.add_argument("--eq", choices=("linear-sum", "unit-fraction"), required=True)
    p.add_argument("--r", type=int, required=True, help="number of colors")
    p.add_argument("--k", type=int, required=True, help="term count")
    p.add_argument("--max-n", type=int, default=100_000, help="search cap")
    p.add_argument("--no-cache", action="store_true", help="bypass the result cache")

    p = sub.add_parser("verify-witness", help="decide whether a set is a witness")
    _common_flags(p)
    _witness_source_args(p)
    p.add_argument("--eq", choices=("linear-sum", "unit-fraction", "fractional-power"),
                   default="linear-sum")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, help="term count (doubles as the family parameter)")
    p.add_argument("--ell", type=int, default=1, help="root exponent (fractional-power)")
    p.add_argument("--method", choices=("auto", "enumerate", "brute-force"), default="auto")

    p = sub.add_parser("bound", help="mint an upper-bound certificate from a witness")
    _common_flags(p)
    _witness_source_args(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, help="term count (doubles as the family parameter)")
    p.add_argument("--lift", type=int, default=1, help="power-lift exponent")

    p = sub.add_parser("lower-bound", help="block coloring proving f_r(k) >= k^r")
    _common_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="re-check the coloring")
    p.add_argument("--include-coloring", action="store_true")

    p = sub.add_parser("export-cnf", help="DIMACS CNF of the coloring instance")
    _common_flags(p)
    _witness_source_args(p)
    p.add_argument("--eq", choices=("linear-sum", "unit-fraction", "fractional-power"),
                   default="linear-sum")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, help="term count (doubles as the family parameter)")
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("-o", "--out", help="output file (default: stdout)")

    p = sub.add_parser("report", help="tabulate the result cache")
    _common_flags(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    _common_flags(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _witness_payload(args: argparse.Namespace) -> dict:
    """Translate --set/--family/--k/--n into the request's witness source."""
    if bool(args.values) == bool(args.family):
        raise SystemExit(_usage_error("provide exactly one of --set or --family"))
    payload: dict[str, Any] = {}
    if args.values:
        try:
            payload["values"] = [int(x) for x in args.values.replace(",", " ").split()]
        except ValueError:
            raise SystemExit(_usage_error(f"cannot parse --set {args.values!r}"))
        if args.k is None:
            raise SystemExit(_usage_error("--set needs an explicit --k"))
    else:
        payload["family"] = args.family
        if args.family == "interval":
            if args.n is None:
                raise SystemExit(_usage_error("--family interval needs --n"))
            payload["param"] = args.n
        else:
            if args.k is None:
                raise SystemExit(_usage_error(f"--family {args.family} needs --k"))
            payload["param"] = args.k
        if args.k is None:
            raise SystemExit(_usage_error("term count --k is required"))
    payload["k"] = args.k
    return payload


def _usage_error(message: str) -> int:
    print(f"rado: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _emit_json(obj: Any) -> None:
    print(json.dumps(obj, indent=2))


def _emit_kv_tsv(obj: dict) -> None:
    for key, value in obj.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        print(f"{key}\t{value}")


def _http(client: ServiceClient, method: str, path: str, payload: dict | None):
    try:
        resp = client.request(method, path, payload)
    except httpx.HTTPError as exc:
        raise SystemExit(_usage_error(f"service unreachable: {exc}"))
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except json.JSONDecodeError:
            detail = resp.text
        raise SystemExit(_usage_error(str(detail)))
    return resp


def _cmd_compute(args: argparse.Namespace, client: ServiceClient) -> int:
    payload = {
        "equation": args.eq,
        "r": args.r,
        "k": args.k,
        "max_n": args.max_n,
        "threads": args.threads,
        "use_cache": not args.no_cache,
    }
    if args.budget is not None:
        payload["budget_seconds"] = args.budget
    body = _http(client, "POST", "/compute", payload).json()
    for warning in body.get("warnings", []):
        print(f"warning: {warning}", file=sys.stderr)
    if args.output == "json":
        _emit_json(body)
    elif args.output == "tsv":
        _emit_kv_tsv(body)
    else:
        sym = _symbol(args.eq)
        if body["status"] == "exact":
            print(f"{sym}_{args.r}({args.k}) = {body['value']}")
            print(f"certificate: valid {args.r}-coloring of [1, {body['value'] - 1}]")
            if body.get("cached"):
                print("source: cache (re-verified)")
        else:
            undecided = body.get("undecided")
            tail = f"; n = {undecided} undecided" if undecided else ""
            print(
                f"{sym}_{args.r}({args.k}) undecided: [1, {body['best_colorable']}] "
                f"is {args.r}-colorable{tail} (search exhausted)"
            )
    return EXIT_OK if body["status"] == "exact" else EXIT_NEGATIVE


def _cmd_verify_witness(args: argparse.Namespace, client: ServiceClient) -> int:
    payload = _witness_payload(args)
    payload.update(
        {"equation": args.eq, "r": args.r, "ell": args.ell,
         "method": args.method, "threads": args.threads}
    )
    body = _http(client, "POST", "/witness", payload).json()
    if args.output == "json":
        _emit_json(body)
    elif args.output == "tsv":
        _emit_kv_tsv(body)
    else:
        if body["outcome"] == "IsWitness":
            print(f"IsWitness ({body['size']} values, lcm={body['lcm']})")
        else:
            print(f"NotWitness ({body['size']} values)")
            cm = body.get("counterexample")
            if cm:
                pairs = " ".join(
                    f"{v}->{c}" for v, c in zip(cm["domain"], cm["colors"])
                )
                print(f"counterexample: {pairs}")
    return EXIT_OK if body["outcome"] == "IsWitness" else EXIT_NEGATIVE


def _cmd_bound(args: argparse.Namespace, client: ServiceClient) -> int:
    payload = _witness_payload(args)
    payload.update({"r": args.r, "lift": args.lift, "threads": args.threads})
    body = _http(client, "POST", "/bound", payload).json()
    if args.output == "json":
        _emit_json(body)
    elif args.output == "tsv":
        _emit_kv_tsv(body)
    else:
        if body["ok"]:
            cert = body["certificate"]
            print(cert["claim"])
            print(f"witness: {len(cert['witness'])} values, lcm = {cert['lcm']}")
        else:
            print("NotAWitness: the set admits a coloring with no monochromatic solution")
            cm = body.get("counterexample")
            if cm:
                pairs = " ".join(
                    f"{v}->{c}" for v, c in zip(cm["domain"], cm["colors"])
                )
                print(f"counterexample: {pairs}")
    return EXIT_OK if body["ok"] else EXIT_NEGATIVE


def _cmd_lower_bound(args: argparse.Namespace, client: ServiceClient) -> int:
    payload = {
        "k": args.k,
        "r": args.r,
        "verify": args.verify,
        "include_coloring": args.include_coloring,
    }
    body = _http(client, "POST", "/lower-bound", payload).json()
    if args.output == "json":
        _emit_json(body)
    elif args.output == "tsv":
        _emit_kv_tsv(body)
    else:
        top = body["domain_max"]
        if body["valid"] is None:
            print(f"coloring of [1,{top}] constructed; {body['claim']}")
        elif body["valid"]:
            print(f"coloring of [1,{top}] valid; {body['claim']}")
        else:
            print(f"coloring of [1,{top}] INVALID; counterexample {body['counterexample']}")
    return EXIT_NEGATIVE if body["valid"] is False else EXIT_OK


def _cmd_export_cnf(args: argparse.Namespace, client: ServiceClient) -> int:
    payload = _witness_payload(args)
    payload.update({"equation": args.eq, "r": args.r, "ell": args.ell})
    text = _http(client, "POST", "/cnf", payload).text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_report(args: argparse.Namespace, client: ServiceClient) -> int:
    body = _http(client, "GET", "/report", None).json()
    for warning in body.get("warnings", []):
        print(f"warning: {warning}", file=sys.stderr)
    if args.output == "json":
        _emit_json(body)
        return EXIT_OK
    # text and tsv are the same tab-separated table
    print("family\tr\tk\tvalue\tbound_low\tbound_high")
    for row in body["rows"]:
        low = row["bound_low"] if row["bound_low"] is not None else ""
        high = row["bound_high"] if row["bound_high"] is not None else ""
        print(f"{row['family']}\t{row['r']}\t{row['k']}\t{row['value']}\t{low}\t{high}")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    app = create_app(resolve_cache_path(args.cache_path))
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        return _cmd_serve(args)
    client = ServiceClient(args.server, args.cache_path)
    handlers = {
        "compute": _cmd_compute,
        "verify-witness": _cmd_verify_witness,
        "bound": _cmd_bound,
        "lower-bound": _cmd_lower_bound,
        "export-cnf": _cmd_export_cnf,
        "report": _cmd_report,
    }
    return handlers[args.command](args, client)


if __name__ == "__main__":
    sys.exit(main())
