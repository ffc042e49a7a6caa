"""``iovauth`` command line: state-directory driven protocol operations.

Exit codes:

    0   success
    1   other protocol error
    2   usage error (argparse)
    3   missing state file
    4   validation or parse failure
    10  Replay (stale timestamp)
    11  BadSignature
    12  Denied (revoked identity)
    13  BadPseudonym
    14  UntraceableEpoch
"""

from __future__ import annotations

import argparse
import os
import random
import secrets
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import bench, clss
from .bilinear import group_by_name, toy_setup
from .errors import (
    BadPseudonym, BadSignature, Denied, EncodingError, IovError, ParameterError, Replay,
    ScenarioError, UntraceableEpoch,
)
from .iov import (
    DEFAULT_DELTA, Evidence, Rsu, Tcc, decode_request, encode_request, enroll_obu, rsu_key_valid,
    sign_report,
)
from .simnet import BUILTIN, Scenario, run_scenario
from .store import MissingState, StateDir, atomic_write

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISSING = 3
EXIT_INVALID = 4
EXIT_REPLAY = 10
EXIT_BAD_SIGNATURE = 11
EXIT_DENIED = 12
EXIT_BAD_PSEUDONYM = 13
EXIT_UNTRACEABLE = 14

CONFIG_ENV = "IOVAUTH_CONFIG"

_EXIT_FOR = [
    (MissingState, EXIT_MISSING),
    (Replay, EXIT_REPLAY),
    (BadSignature, EXIT_BAD_SIGNATURE),
    (Denied, EXIT_DENIED),
    (BadPseudonym, EXIT_BAD_PSEUDONYM),
    (UntraceableEpoch, EXIT_UNTRACEABLE),
    (EncodingError, EXIT_INVALID),
    (ParameterError, EXIT_INVALID),
    (ScenarioError, EXIT_INVALID),
]


@dataclass
class Config:
    state_dir: str = "iov-state"
    backend: str = "toy"
    params: str = "TINY"
    q: int | None = None
    p: int | None = None
    g0: int | None = None
    delta: int = DEFAULT_DELTA
    epoch_length: int = 3600
    regions: list[str] = field(default_factory=list)

    def validate(self) -> None:
        if self.backend not in ("toy", "production"):
            raise ParameterError(f"unknown backend {self.backend!r}")
        if self.delta <= 0:
            raise ParameterError("delta must be positive")
        if self.epoch_length <= 0:
            raise ParameterError("epoch_length must be positive")
        if self.backend == "toy" and self.params.upper() == "CUSTOM":
            if None in (self.q, self.p, self.g0):
                raise ParameterError("custom toy parameters need q, p and g0")
            toy_setup(self.q, self.p, self.g0)

    @classmethod
    def from_text(cls, text: str) -> "Config":
        cfg = cls()
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParameterError(f"config line {n}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key in ("q", "p", "g0", "delta", "epoch_length"):
                try:
                    setattr(cfg, key, int(value))
                except ValueError:
                    raise ParameterError(f"config line {n}: {key} must be an integer") from None
            elif key == "regions":
                cfg.regions = [r.strip() for r in value.split(",") if r.strip()]
            elif key in ("state_dir", "backend", "params"):
                setattr(cfg, key, value)
            else:
                raise ParameterError(f"config line {n}: unknown key {key!r}")
        return cfg


def load_config(path: str | None) -> Config:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    p = Path(path)
    if not p.exists():
        raise MissingState(f"missing config file: {p}")
    return Config.from_text(p.read_text())


def _rng(args):
    return random.Random(args.seed) if args.seed is not None else secrets.SystemRandom()


def _state(args, cfg) -> StateDir:
    return StateDir(args.state or cfg.state_dir)


def _pick_rsu(state: StateDir, wanted: str | None) -> str:
    if wanted:
        return wanted
    ids = state.rsu_ids()
    if len(ids) != 1:
        raise ParameterError(f"--rsu is required when {len(ids)} RSUs are registered")
    return ids[0]


# -- commands ---------------------------------------------------------------

def cmd_setup(args, cfg) -> int:
    backend = args.backend or cfg.backend
    name = (args.params or cfg.params).upper()
    if args.q is not None:
        cfg.q, cfg.p, cfg.g0 = args.q, args.p, args.g0
    if backend == "production":
        group = group_by_name("A160" if name in ("TINY", "A160") else name)
    elif name == "CUSTOM":
        cfg.params = "custom"
        cfg.validate()
        group = toy_setup(cfg.q, cfg.p, cfg.g0)
    elif name in ("TINY", "MEDIUM"):
        group = group_by_name(name)
    else:
        raise ParameterError(f"unknown toy parameter set {name!r}")
    state = _state(args, cfg)
    if state.path("params.json").exists() and not args.force:
        raise ParameterError(f"{state.path('params.json')} exists; pass --force to overwrite")
    master, params = clss.setup(group, _rng(args))
    state.save_params(params)
    state.save_master(params, master)
    tcc = Tcc.restore(params, master, None)
    state.save_legit(group, tcc.legit)
    state.save_revoked(tcc.revoked)
    state.save_epochs(group, tcc.epochs)
    print(f"setup ok: backend={group.backend_id} params={getattr(group, 'name', 'custom')} q={group.q}")
    return EXIT_OK


def _load_tcc(state: StateDir, rng) -> Tcc:
    params = state.load_params()
    G = params.group
    return Tcc.restore(params, state.load_master(params), rng, state.load_legit(G), state.load_revoked(),
                       state.load_epochs(G))


def cmd_register_obu(args, cfg) -> int:
    state = _state(args, cfg)
    rng = _rng(args)
    tcc = _load_tcc(state, rng)
    keys = enroll_obu(tcc, args.id, rng, now=args.time)
    state.save_obu(tcc.group, keys)
    state.save_legit(tcc.group, tcc.legit)
    print(f"registered OBU {args.id}; legitimate users: {len(tcc.legit)}")
    return EXIT_OK


def cmd_register_rsu(args, cfg) -> int:
    state = _state(args, cfg)
    tcc = _load_tcc(state, _rng(args))
    key = tcc.register_rsu(args.id, args.region)
    if not rsu_key_valid(tcc.params, args.id, key):
        raise ParameterError(f"RSU key for {args.id} failed its check")
    state.save_rsu(tcc.group, args.id, args.region, key)
    print(f"registered RSU {args.id} in region {args.region}; revocation list version {tcc.revoked.version}")
    return EXIT_OK


def cmd_issue_epoch(args, cfg) -> int:
    state = _state(args, cfg)
    tcc = _load_tcc(state, _rng(args))
    length = args.length or cfg.epoch_length
    start = args.start
    if start is None:
        history = tcc.epochs.regions.get(args.region, [])
        start = history[-1].valid_to if history else 0
    epoch = tcc.issue_regional_epoch(args.region, start, start + length)
    state.save_epochs(tcc.group, tcc.epochs)
    print(f"issued epoch {epoch.epoch_index} for {args.region}: [{epoch.valid_from}, {epoch.valid_to})")
    return EXIT_OK


def _region_for(state: StateDir, group, args) -> str:
    if args.region:
        return args.region
    if args.rsu:
        return state.load_rsu(group, args.rsu)[0]
    regions = sorted(state.load_epochs(group).regions)
    if len(regions) != 1:
        raise ParameterError("--rsu or --region is required")
    return regions[0]


def cmd_sign(args, cfg) -> int:
    state = _state(args, cfg)
    params = state.load_params()
    G = params.group
    keys = state.load_obu(G, args.id)
    region = _region_for(state, G, args)
    epoch = state.load_epochs(G).lookup(region, args.time)
    if epoch is None:
        raise UntraceableEpoch(f"no epoch key of {region} covers time {args.time}")
    report = Path(args.report)
    if not report.exists():
        raise MissingState(f"missing report file: {report}")
    req = sign_report(params, keys, epoch.enc_pk, report.read_bytes(), args.time, _rng(args))
    out = Path(args.out) if args.out else state.path("request.bin")
    atomic_write(out, encode_request(G, req))
    print(f"signed report for region {region} epoch {epoch.epoch_index} -> {out}")
    return EXIT_OK


def _read_request(state: StateDir, group, path):
    p = Path(path) if path else state.path("request.bin")
    if not p.exists():
        raise MissingState(f"missing request file: {p}")
    return decode_request(group, p.read_bytes())


def cmd_verify(args, cfg) -> int:
    state = _state(args, cfg)
    params = state.load_params()
    G = params.group
    rsu_id = _pick_rsu(state, args.rsu)
    region, key = state.load_rsu(G, rsu_id)
    rsu = Rsu(params, rsu_id, region, key, state.load_revoked(), args.delta or cfg.delta)
    for epoch in state.load_epochs(G).regions.get(region, []):
        rsu.install_epoch(epoch)
    try:
        req = _read_request(state, G, args.request)
    except EncodingError as exc:
        raise BadSignature(f"malformed request: {exc}") from None
    rsu.verify_request(req, args.time)
    resp = rsu.respond(req)
    out = Path(args.mac_out) if args.mac_out else state.path("mac.hex")
    atomic_write(out, resp.mac.hex() + "\n")
    print(f"accept: mac={resp.mac.hex()}")
    return EXIT_OK


def cmd_track(args, cfg) -> int:
    state = _state(args, cfg)
    tcc = _load_tcc(state, _rng(args))
    req = _read_request(state, tcc.group, args.request)
    obu_id = tcc.track_vehicle(req, Evidence(args.region, args.evidence or ""))
    state.save_revoked(tcc.revoked)
    print(f"tracked identity: {obu_id}; revocation list version {tcc.revoked.version}")
    return EXIT_OK


def cmd_simulate(args, cfg) -> int:
    if args.builtin:
        scenario = BUILTIN[args.builtin](args.seed if args.seed is not None else 1)
    elif args.scenario:
        if not Path(args.scenario).exists():
            raise MissingState(f"missing scenario file: {args.scenario}")
        scenario = Scenario.load(args.scenario)
        if args.seed is not None:
            scenario.seed = args.seed
    else:
        raise ParameterError("give --scenario FILE or --builtin NAME")
    transcript = run_scenario(scenario)
    if args.transcript:
        atomic_write(Path(args.transcript), transcript.text())
    else:
        sys.stdout.write(transcript.text())
    summary = transcript.summary_json()
    if args.summary:
        atomic_write(Path(args.summary), summary)
    else:
        sys.stdout.write(summary)
    return EXIT_OK if not transcript.mismatches() else EXIT_ERROR


def cmd_bench(args, cfg) -> int:
    backend = {"toy": "MEDIUM", "production": "A160"}.get(args.backend, args.backend)
    sys.stdout.write(bench.report(ops_only=args.ops_only, repetitions=args.repetitions, backend=backend,
                                  seed=args.seed or 0))
    return EXIT_OK


def cmd_cost_model(args, cfg) -> int:
    table = bench.cost_table_csv()
    ns = [int(n) for n in args.n.split(",")] if args.n else [0, 1, 10, 50, 100]
    scaling = bench.scaling_csv(ns)
    if args.csv:
        atomic_write(Path(args.csv), table)
    if args.scaling_csv:
        atomic_write(Path(args.scaling_csv), scaling)
    sys.stdout.write(table + "\n" + scaling)
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="iovauth", description=__doc__.split("\n")[0])
    ap.add_argument("--config", help=f"key = value config file (default: ${CONFIG_ENV})")
    ap.add_argument("--state", help="state directory (overrides config state_dir)")
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--seed", type=int, help="seed all randomness for reproducible output")
        p.set_defaults(func=fn)
        return p

    p = command("setup", cmd_setup, help="TCC system initialization")
    p.add_argument("--backend", choices=["toy", "production"])
    p.add_argument("--params", help="TINY, MEDIUM, custom (toy) or A160 (production)")
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--g0", type=int)
    p.add_argument("--force", action="store_true")

    p = command("register-obu", cmd_register_obu, help="enroll a vehicle")
    p.add_argument("--id", required=True)
    p.add_argument("--time", type=int, default=0)

    p = command("register-rsu", cmd_register_rsu, help="enroll a road-side unit")
    p.add_argument("--id", required=True)
    p.add_argument("--region", required=True)

    p = command("issue-epoch", cmd_issue_epoch, help="issue the next regional key pair")
    p.add_argument("--region", required=True)
    p.add_argument("--start", type=int)
    p.add_argument("--length", type=int)

    p = command("sign", cmd_sign, help="OBU: sign a report into a service request")
    p.add_argument("--id", required=True)
    p.add_argument("--report", required=True)
    p.add_argument("--time", type=int, required=True)
    p.add_argument("--rsu")
    p.add_argument("--region")
    p.add_argument("--out")

    p = command("verify", cmd_verify, help="RSU: verify a service request and emit the MAC")
    p.add_argument("--request")
    p.add_argument("--time", type=int, required=True)
    p.add_argument("--delta", type=int)
    p.add_argument("--rsu")
    p.add_argument("--mac-out")

    p = command("track", cmd_track, help="TCC: reveal and revoke the sender of a request")
    p.add_argument("--request")
    p.add_argument("--region", required=True)
    p.add_argument("--evidence")

    p = command("simulate", cmd_simulate, help="run a discrete-event scenario")
    p.add_argument("--scenario")
    p.add_argument("--builtin", choices=sorted(BUILTIN))
    p.add_argument("--transcript")
    p.add_argument("--summary")

    p = command("bench", cmd_bench, help="operation counts and timings")
    p.add_argument("--ops-only", action="store_true")
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--backend", default="production", help="toy, production, or a parameter set name")

    p = command("cost-model", cmd_cost_model, help="predicted per-scheme costs")
    p.add_argument("--csv")
    p.add_argument("--scaling-csv")
    p.add_argument("--n", help="comma-separated vehicle counts")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        cfg.validate()
        return args.func(args, cfg)
    except IovError as exc:
        print(f"iovauth {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        for cls, code in _EXIT_FOR:
            if isinstance(exc, cls):
                return code
        return EXIT_ERROR
    except ValueError as exc:
        print(f"iovauth {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
