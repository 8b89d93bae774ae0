"""Command-line client for the simulation service.

The CLI is a thin HTTP client: it assembles a request from flags and an
optional JSON config file (precedence: flags > file > server defaults),
posts it to the service, and writes the returned report to
``<out>/report.json`` (plus ``<out>/transcript.csv`` for run-game). By
default the request is served by the in-process application, no running
server required; pass ``--server URL`` to target a remote instance.

Exit status: 0 on success, 1 when a verification mode reports failure,
2 on configuration or transport errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import httpx

from .runspec import MODES

MODE_ENDPOINTS = {
    "verify-theorem1": "/theorem1",
    "run-game": "/game",
    "lhv-search": "/lhv",
    "chsh-game": "/chsh",
    "cval-table": "/cval-table",
}

# request fields accepted per mode; "trials" is fed from --rounds
MODE_FIELDS = {
    "verify-theorem1": ("basis", "xi", "seed", "workers", "trials"),
    "run-game": ("state", "basis", "xi", "angles", "rounds", "seed",
                 "strategy_a", "strategy_b", "sigma_k", "workers"),
    "lhv-search": ("state", "basis", "xi", "angles", "seed", "workers"),
    "chsh-game": ("state", "rounds", "seed", "strategy_a", "strategy_b", "workers"),
    "cval-table": ("state", "basis", "xi", "angles", "seed", "particle", "workers"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spingame",
        description="Run two-qubit spin-correlation simulations and games.",
    )
    parser.add_argument("--mode", required=True, choices=MODES)
    parser.add_argument("--config", help="JSON file with request fields; flags override")
    parser.add_argument("--state", help='"singlet", "product:<8 reals>", or 8 raw reals')
    parser.add_argument("--basis", help='"yx", "computational", or 32 raw reals')
    parser.add_argument("--xi", help='"two-point", "three-point", or raw:<values>:<weights>')
    parser.add_argument("--angles", help="comma-separated polar angles a,a2,b,b2 (radians)")
    parser.add_argument("--rounds", type=int, help="rounds (trials for verify-theorem1)")
    parser.add_argument("--seed", type=int, help="64-bit run seed")
    parser.add_argument("--strategy-a", dest="strategy_a", help="player A strategy name")
    parser.add_argument("--strategy-b", dest="strategy_b", help="player B strategy name")
    parser.add_argument("--sigma-k", dest="sigma_k", type=float,
                        help="verdict width in standard errors (default 3)")
    parser.add_argument("--out", default=".", help="output directory (default: .)")
    parser.add_argument("--workers", help="worker hint recorded in the config (default auto)")
    parser.add_argument("--server", help="remote service URL; default runs in-process")
    return parser


def _load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
        data = json.loads(text)
    except OSError as exc:
        raise SystemExit(f"error: cannot read config file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise SystemExit(f"error: {path}:{exc.lineno}:{exc.colno}: {exc.msg}")
    if not isinstance(data, dict):
        raise SystemExit(f"error: {path}: top level must be a JSON object")
    return data


def _parse_angles_arg(value):
    if isinstance(value, str):
        return [float(piece) for piece in value.split(",") if piece.strip() != ""]
    return value


def build_payload(args: argparse.Namespace, file_config: dict) -> dict:
    merged = dict(file_config)
    for key in ("state", "basis", "xi", "angles", "rounds", "seed",
                "strategy_a", "strategy_b", "sigma_k", "workers"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if args.mode == "verify-theorem1" and "rounds" in merged:
        merged["trials"] = merged.pop("rounds")
    if "angles" in merged and merged["angles"] is not None:
        try:
            merged["angles"] = _parse_angles_arg(merged["angles"])
        except ValueError as exc:
            raise SystemExit(f"error: could not parse angles: {exc}")
    allowed = MODE_FIELDS[args.mode]
    return {k: v for k, v in merged.items() if k in allowed and v is not None}


def _make_client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # in-process transport against the bundled application
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _summarize(mode: str, report: dict) -> str:
    results = report["results"]
    if mode == "verify-theorem1":
        return (f"max correlation deviation {results['max_correlation_deviation']:.3e}, "
                f"max local deviation {results['max_local_average_deviation']:.3e} "
                f"(tolerance {results['tolerance']:.0e}) -> "
                f"{'pass' if results['passed'] else 'FAIL'}")
    if mode == "run-game":
        cons = results["conservation"]
        lines = [
            f"pair {p['pair_index']}: target {p['target']:+.4f} "
            f"estimate {p['estimate']:+.4f} stderr {p['stderr']:.4f} "
            f"-> {'pass' if p['pass'] else 'FAIL'}"
            for p in cons["pairs"]
        ]
        verdict = "pass" if cons["overall_pass"] else "FAIL"
        lines.append(f"conservation verdict: {verdict} "
                     f"({cons['total_rounds']} rounds, "
                     f"{cons['total_violations']} violations)")
        return "\n".join(lines)
    if mode == "lhv-search":
        search = results["conservation_search"]
        chsh = results["chsh"]["quantum"]
        return (f"quantum |CHSH| {chsh['abs_combined']:.6f}, classical max 2; "
                f"minimal worst-pair deviation {search['deviation']:.6f}")
    if mode == "chsh-game":
        game = results["game"]
        return (f"win frequency {game['frequency']:.4f} +- {game['stderr']:.4f} "
                f"(classical bound {results['classical_bound']}, "
                f"quantum value {results['quantum_value']:.4f})")
    return f"{len(results['rows'])} table rows"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    file_config = _load_config_file(args.config) if args.config else {}
    payload = build_payload(args, file_config)
    client = _make_client(args.server)
    try:
        response = client.post(MODE_ENDPOINTS[args.mode], json=payload)
    except httpx.HTTPError as exc:
        print(f"error: request failed: {exc}", file=sys.stderr)
        return 2
    finally:
        client.close()
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        print(f"error: {detail}", file=sys.stderr)
        return 2
    body = response.json()
    if args.mode == "run-game":
        report = body["report"]
        transcript_csv = body["transcript_csv"]
    else:
        report = body
        transcript_csv = None
    os.makedirs(args.out, exist_ok=True)
    report_path = os.path.join(args.out, "report.json")
    with open(report_path, "w") as fh:
        fh.write(_dump_json(report))
    written = [report_path]
    if transcript_csv is not None:
        transcript_path = os.path.join(args.out, "transcript.csv")
        with open(transcript_path, "w") as fh:
            fh.write(transcript_csv)
        written.append(transcript_path)
    print(_summarize(args.mode, report))
    print("wrote " + ", ".join(written))
    if args.mode == "verify-theorem1" and not report["results"]["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
