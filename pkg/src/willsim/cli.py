"""Thin-client CLI for the simulation service.

Every subcommand builds a JSON request and POSTs it to the service; by
default the FastAPI app is mounted in-process (no network, no server
needed), while --server targets a running instance.  CSV payloads are
written to --out byte-for-byte as the service produced them.

Exit codes: 0 success, 2 configuration error, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import httpx


class _InProcessTransport(httpx.BaseTransport):
    """Serve requests from the mounted ASGI app, one event loop per call."""

    def __init__(self, app):
        self._asgi = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        import asyncio

        async def call():
            response = await self._asgi.handle_async_request(request)
            await response.aread()
            return response

        response = asyncio.run(call())
        return httpx.Response(
            status_code=response.status_code,
            headers=response.headers,
            content=response.content,
        )


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    from .service.app import app

    return httpx.Client(
        transport=_InProcessTransport(app),
        base_url="http://willsim.local",
        timeout=None,
    )


class CliError(Exception):
    def __init__(self, message: str, exit_code: int = 1):
        super().__init__(message)
        self.exit_code = exit_code


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    response = client.post(path, json=payload)
    if response.status_code == 400:
        body = response.json()
        raise CliError(f"{body.get('error')}: {body.get('detail')}", exit_code=2)
    if response.status_code == 422:
        raise CliError(f"invalid request: {response.text}", exit_code=2)
    if response.status_code != 200:
        raise CliError(f"service error {response.status_code}: {response.text}")
    return response.json()


def _load_config_arg(path: str | None, seed: int | None, horizon: int | None, theta: int | None) -> dict:
    doc: dict = {}
    if path:
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read config {path}: {exc}", exit_code=2)
        if not isinstance(doc, dict):
            raise CliError("config document must be a JSON object", exit_code=2)
    if seed is not None:
        doc["master_seed"] = seed
    if horizon is not None:
        doc["horizon"] = horizon
    if theta is not None:
        doc["threshold"] = theta
    return doc


def _parse_floats(text: str) -> list:
    return [float(x) for x in text.split(",") if x.strip() != ""]


def _parse_ints(text: str) -> list:
    return [int(x) for x in text.split(",") if x.strip() != ""]


def _agents_payload(args, config: dict) -> list | None:
    if args.agents:
        raw = args.agents
        if raw.startswith("@"):
            raw = Path(raw[1:]).read_text(encoding="utf-8")
        specs = json.loads(raw)
        if not isinstance(specs, list):
            raise CliError("--agents must be a JSON array", exit_code=2)
        return specs
    n = config.get("n_agents", 20)
    if args.alpha is not None:
        return [{"mode": "hybrid", "will_strength": args.alpha}] * n
    if args.strategy is not None:
        spec = {"mode": "endogenous", "strategy": args.strategy}
        if args.ratio is not None:
            spec["ratio"] = args.ratio
        return [spec] * n
    if args.willed_stag or args.willed_hare:
        s, h = args.willed_stag, args.willed_hare
        if s + h > n:
            raise CliError("composition exceeds population", exit_code=2)
        return (
            [{"mode": "willed", "target_kind": "stag"}] * s
            + [{"mode": "willed", "target_kind": "hare"}] * h
            + [{"mode": "rational"}] * (n - s - h)
        )
    return None


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _emit_csv(args, csv_text: str) -> None:
    if args.out:
        _write_text(args.out, csv_text)
        print(f"wrote {args.out} ({len(csv_text.splitlines()) - 1} rows)")
    else:
        sys.stdout.write(csv_text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_simulate(args, client) -> None:
    config = _load_config_arg(args.config, args.seed, args.horizon, args.theta)
    payload = {"config": config, "include_trace": args.trace is not None}
    agents = _agents_payload(args, config)
    if agents is not None:
        payload["agents"] = agents
    result = _post(client, "/simulate", payload)
    print(
        "seed={seed} total_reward={total_reward} normalized={normalized_payoff:.6f} "
        "stags={stags_captured} hares={hares_captured}".format(**result)
    )
    if args.trace:
        lines = "\n".join(
            json.dumps(rec, separators=(",", ":")) for rec in result["trace"]
        )
        _write_text(args.trace, lines + "\n")
        print(f"wrote trace {args.trace}")
    if args.out:
        header = "seed,total_reward,normalized_payoff,stags_captured,hares_captured\n"
        row = "{seed},{total_reward!r},{normalized_payoff!r},{stags_captured},{hares_captured}\n".format(
            **result
        )
        _write_text(args.out, header + row)


def cmd_sweep_composition(args, client) -> None:
    config = _load_config_arg(args.config, args.seed, args.horizon, None)
    if args.ternary:
        payload = {
            "config": config,
            "theta": args.ternary_theta,
            "step": args.ternary_step,
            "episodes": args.episodes,
            "parallelism": args.parallelism,
        }
        result = _post(client, "/sweeps/ternary", payload)
    else:
        payload = {
            "config": config,
            "thetas": _parse_ints(args.thetas),
            "stag_counts": _parse_ints(args.counts),
            "episodes": args.episodes,
            "parallelism": args.parallelism,
        }
        result = _post(client, "/sweeps/composition", payload)
    _emit_csv(args, result["csv"])


def cmd_sweep_strength(args, client) -> None:
    config = _load_config_arg(args.config, args.seed, args.horizon, None)
    payload = {
        "config": config,
        "thetas": _parse_ints(args.thetas),
        "alphas": _parse_floats(args.alphas),
        "episodes": args.episodes,
        "parallelism": args.parallelism,
    }
    result = _post(client, "/sweeps/strength", payload)
    _emit_csv(args, result["csv"])


def cmd_evolve(args, client) -> None:
    config = _load_config_arg(args.config, args.seed, args.horizon, args.theta)
    ga = {
        "pop_size": args.pop_size,
        "generations": args.generations,
        "episodes_per_eval": args.episodes_per_eval,
    }
    payload = {"config": config, "ga": ga, "parallelism": args.parallelism}
    result = _post(client, "/evolve", payload)
    print(
        "best_fitness=%.6f mean_alpha=%.4f best=%s"
        % (result["best_fitness"], result["mean_alpha"], result["best_alphas"])
    )
    if args.out:
        base = Path(args.out)
        _write_text(str(base), result["history_csv"])
        dist = base.with_name(base.stem + "_dist" + base.suffix)
        payoff = base.with_name(base.stem + "_payoff" + base.suffix)
        _write_text(str(dist), result["distribution_csv"])
        _write_text(str(payoff), result["payoff_csv"])
        print(f"wrote {base}, {dist}, {payoff}")
    else:
        sys.stdout.write(result["history_csv"])


def cmd_endogenous(args, client) -> None:
    config = _load_config_arg(args.config, args.seed, args.horizon, args.theta)
    payload = {
        "config": config,
        "rs_bars": _parse_floats(args.rs_bars),
        "ks": _parse_floats(args.ks),
        "episodes": args.episodes,
        "parallelism": args.parallelism,
    }
    result = _post(client, "/endogenous", payload)
    _emit_csv(args, result["csv"])


def cmd_dynamics(args, client) -> None:
    if args.mode == "equilibria":
        payload = {"games": args.games.split(","), "grid_step": args.grid_step}
        result = _post(client, "/dynamics/equilibria", payload)
    else:
        payload = {
            "n1_values": _parse_floats(args.n1),
            "sigma": args.sigma,
            "trials": args.trials,
            "move_rate": args.move_rate,
            "dt": args.dt,
            "t_max": args.t_max,
            "seed": args.seed if args.seed is not None else 0,
        }
        result = _post(client, "/dynamics/escape", payload)
    _emit_csv(args, result["csv"])


def cmd_serve(args, _client) -> None:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="willsim",
        description="Markov Stag Hunt experiments over the willsim service",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def shared(p, episodes_default=300):
        p.add_argument("--config", help="JSON config file (SimConfig fields)")
        p.add_argument("--seed", type=int, help="master seed override")
        p.add_argument("--episodes", type=int, default=episodes_default)
        p.add_argument("--parallelism", type=int, default=1)
        p.add_argument("--out", help="output CSV path")
        p.add_argument("--server", help="remote service URL (default: in-process)")
        p.add_argument("--horizon", type=int, help="episode length override")

    p = sub.add_parser("simulate", help="run one episode")
    shared(p, episodes_default=1)
    p.add_argument("--theta", type=int, help="coordination threshold override")
    p.add_argument("--trace", help="write JSON-lines trace to this path")
    p.add_argument("--agents", help="JSON array of agent specs, or @file")
    p.add_argument("--alpha", type=float, help="homogeneous will strength")
    p.add_argument("--strategy", choices=["pure_rational", "intermittent", "phased", "instant"])
    p.add_argument("--ratio", type=float, help="re-planning ratio k for endogenous strategies")
    p.add_argument("--willed-stag", type=int, default=0)
    p.add_argument("--willed-hare", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep-composition", help="willed/rational mix sweep")
    shared(p)
    p.add_argument("--thetas", default="2,3,4,5,6,7,8")
    p.add_argument("--counts", default="0,5,10,15,20")
    p.add_argument("--ternary", action="store_true", help="full simplex at one theta")
    p.add_argument("--ternary-theta", type=int, default=3)
    p.add_argument("--ternary-step", type=int, default=2)
    p.set_defaults(func=cmd_sweep_composition)

    p = sub.add_parser("sweep-strength", help="homogeneous will strength sweep")
    shared(p)
    p.add_argument("--thetas", default="2,3,4,5,6,7,8")
    p.add_argument(
        "--alphas", default=",".join(str(round(-1.0 + 0.1 * i, 10)) for i in range(21))
    )
    p.set_defaults(func=cmd_sweep_strength)

    p = sub.add_parser("evolve", help="genetic search over will strengths")
    shared(p, episodes_default=30)
    p.add_argument("--theta", type=int, help="coordination threshold override")
    p.add_argument("--pop-size", type=int, default=32)
    p.add_argument("--generations", type=int, default=60)
    p.add_argument("--episodes-per-eval", type=int, default=30)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("endogenous", help="self-selected commitment strategies")
    shared(p)
    p.add_argument("--theta", type=int, help="coordination threshold override")
    p.add_argument("--rs-bars", default="10,50")
    p.add_argument("--ks", default="0.5,0.2,0.1")
    p.set_defaults(func=cmd_endogenous)

    p = sub.add_parser("dynamics", help="infinite-population analysis CSVs")
    shared(p)
    p.add_argument("--mode", choices=["equilibria", "escape"], default="equilibria")
    p.add_argument("--games", default="stag_hunt,snowdrift,prisoners_dilemma")
    p.add_argument("--grid-step", type=float, default=0.1)
    p.add_argument("--n1", default="0,0.1,0.2,0.3,0.4,0.5,0.6,0.7")
    p.add_argument("--sigma", type=float, default=0.15)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--move-rate", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--t-max", type=float, default=1e4)
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            cmd_serve(args, None)
            return 0
        with _client(getattr(args, "server", None)) as client:
            args.func(args, client)
        return 0
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
