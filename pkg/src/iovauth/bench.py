"""Operation counting, timing, and the analytic per-scheme cost model.

Only pairings (PP), G1 scalar multiplications (M), map-to-point hashes (H)
and G2 exponentiations (E) are counted; point additions, G2 products,
scalar arithmetic and hashing into Z_q are treated as free.
"""

from __future__ import annotations

import csv
import io
import platform
import random
import statistics
import time
from dataclasses import asdict, dataclass

from . import clss
from .bilinear import group_by_name
from .iov import enroll_obu, rsu_verify_request, sign_report, tcc_init

WORKLOADS = ("clss_sign", "clss_verify", "iov_sign_report", "iov_verify_request")
SCHEMES = ("HHC", "HTH", "THSW", "CCL", "Ours")

# Published per-operation running times, in milliseconds.
OP_TIMES_MS = {"PP": 11.88, "H": 23.34, "M": 10.06, "E": 10.09}

# (sign, verify) operation vectors per scheme.
SCHEME_OPS = {
    "HHC": ({"H": 1, "M": 1}, {"H": 1, "PP": 2, "M": 2}),
    "HTH": ({"H": 2, "M": 2}, {"H": 3, "PP": 4, "M": 1}),
    "THSW": ({"H": 1, "E": 1}, {"H": 1, "PP": 4}),
    "CCL": ({"M": 1}, {"H": 1, "PP": 2, "M": 2}),
    "Ours": ({"M": 2}, {"PP": 1, "M": 3}),
}
USES_MAP_TO_POINT = {name: vecs[0].get("H", 0) + vecs[1].get("H", 0) > 0 for name, vecs in SCHEME_OPS.items()}


@dataclass
class OpCounter:
    pairings: int = 0
    g1_muls: int = 0
    g2_exps: int = 0
    map_to_point: int = 0

    def reset(self) -> None:
        self.pairings = self.g1_muls = self.g2_exps = self.map_to_point = 0

    def as_vector(self) -> dict[str, int]:
        return {"PP": self.pairings, "M": self.g1_muls, "E": self.g2_exps, "H": self.map_to_point}


class CountingGroup:
    """Wraps a group provider and tallies the costed operations."""

    def __init__(self, inner, counter: OpCounter | None = None):
        self._inner = inner
        self.counter = counter if counter is not None else OpCounter()

    def __getattr__(self, name):
        return getattr(self._inner, name)

    def pair(self, a, b):
        self.counter.pairings += 1
        return self._inner.pair(a, b)

    def g1_mul(self, k, a):
        self.counter.g1_muls += 1
        return self._inner.g1_mul(k, a)

    def g2_exp(self, b, k):
        self.counter.g2_exps += 1
        return self._inner.g2_exp(b, k)

    def hash_to_point(self, *args):  # pragma: no cover - nothing in this scheme maps to a point
        self.counter.map_to_point += 1
        return self._inner.hash_to_point(*args)


class _Fixture:
    """Keys, a signed message and a signed request for one workload run."""

    def __init__(self, group, seed: int):
        rng = random.Random(seed)
        self.tcc = tcc_init(group, rng)
        self.params = self.tcc.params
        self.keys = enroll_obu(self.tcc, "OBU-bench", rng)
        self.epoch = self.tcc.issue_regional_epoch("R-bench", 0, 10_000)
        self.message = b"bench message %d" % seed
        self.sig = clss.sign(self.params, self.keys.sk, self.keys.obu_id, self.keys.pk, self.message)
        self.req = sign_report(self.params, self.keys, self.epoch.enc_pk, self.message, 100, rng)
        self.rng = rng

    def runner(self, workload: str, params):
        k = self.keys
        if workload == "clss_sign":
            return lambda: clss.sign(params, k.sk, k.obu_id, k.pk, self.message)
        if workload == "clss_verify":
            def run():
                if not clss.verify(params, k.obu_id, k.pk, self.message, self.sig):
                    raise AssertionError("benchmark signature failed to verify")
            return run
        if workload == "iov_sign_report":
            return lambda: sign_report(params, k, self.epoch.enc_pk, self.message, 100, self.rng)
        if workload == "iov_verify_request":
            return lambda: rsu_verify_request(params, self.req, 100)
        raise ValueError(f"unknown workload {workload!r}; expected one of {WORKLOADS}")


def count_ops(workload: str, group=None, seed: int = 0) -> OpCounter:
    fx = _Fixture(group if group is not None else group_by_name("MEDIUM"), seed)
    counting = CountingGroup(fx.params.group)
    fx.runner(workload, fx.params.with_group(counting))()
    return counting.counter


def predict_cost(scheme: str, times: dict[str, float] | None = None) -> dict[str, float]:
    times = OP_TIMES_MS if times is None else times
    if any(v <= 0 for v in times.values()):
        raise ValueError("operation times must be positive")
    sign_vec, verify_vec = SCHEME_OPS[scheme]
    sign_ms = sum(n * times[op] for op, n in sign_vec.items())
    verify_ms = sum(n * times[op] for op, n in verify_vec.items())
    return {"sign_ms": sign_ms, "verify_ms": verify_ms, "total_ms": sign_ms + verify_ms}


def verify_scaling(n_vehicles, times: dict[str, float] | None = None) -> list[tuple[int, str, float]]:
    rows = []
    for n in n_vehicles:
        if n < 0:
            raise ValueError("vehicle count must be nonnegative")
        for scheme in SCHEMES:
            rows.append((n, scheme, n * predict_cost(scheme, times)["verify_ms"]))
    return rows


def cost_table_csv(times: dict[str, float] | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["scheme", "sign_ms", "verify_ms", "total_ms", "map_to_point"])
    for scheme in SCHEMES:
        c = predict_cost(scheme, times)
        w.writerow([scheme, f"{c['sign_ms']:.2f}", f"{c['verify_ms']:.2f}", f"{c['total_ms']:.2f}",
                    "YES" if USES_MAP_TO_POINT[scheme] else "NO"])
    return buf.getvalue()


def scaling_csv(n_vehicles, times: dict[str, float] | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "scheme", "verify_total_ms"])
    for n, scheme, ms in verify_scaling(n_vehicles, times):
        w.writerow([n, scheme, f"{ms:.2f}"])
    return buf.getvalue()


def measure(workload: str, repetitions: int, backend: str = "A160", seed: int = 0) -> dict:
    """Wall-clock timing of one workload; returns mean/stddev in ms plus op counts."""
    if repetitions < 2:
        raise ValueError("need at least 2 repetitions for a standard deviation")
    group = group_by_name(backend)
    fx = _Fixture(group, seed)
    counts = []
    samples = []
    for _ in range(repetitions):
        counting = CountingGroup(fx.params.group)
        run = fx.runner(workload, fx.params.with_group(counting))
        start = time.perf_counter()
        run()
        samples.append((time.perf_counter() - start) * 1000.0)
        counts.append(counting.counter.as_vector())
    return {
        "workload": workload,
        "backend": group.backend_id,
        "params": getattr(group, "name", "custom"),
        "repetitions": repetitions,
        "mean_ms": statistics.mean(samples),
        "stddev_ms": statistics.stdev(samples),
        "ops": counts[0],
        "ops_stable": all(c == counts[0] for c in counts),
        "comparable_to_published": False,
        "cpu": platform.processor() or platform.machine(),
        "python": platform.python_version(),
        "note": "toy backend timings are meaningless" if group.backend_id == "toy"
                else "pure-Python pairing; not comparable to the published hardware figures",
    }


def report(ops_only: bool = False, repetitions: int = 5, backend: str = "A160", seed: int = 0):
    """Structured-text report: op counts, cost model, optional timings."""
    lines = ["# operation counts (instrumented, MEDIUM toy group)"]
    for w in WORKLOADS:
        c = count_ops(w, seed=seed)
        lines.append(f"{w}: " + " ".join(f"{k}={v}" for k, v in asdict(c).items()))
    lines.append("")
    lines.append("# predicted cost from per-operation times (ms)")
    lines.append(cost_table_csv().rstrip())
    if not ops_only:
        lines.append("")
        lines.append(f"# wall-clock timings, backend={backend}, repetitions={repetitions}")
        for w in WORKLOADS:
            m = measure(w, repetitions, backend, seed)
            lines.append(f"{w}: mean={m['mean_ms']:.3f}ms stddev={m['stddev_ms']:.3f}ms ops={m['ops']}")
        lines.append(f"cpu: {m['cpu']} python {m['python']} ({m['note']})")
    return "\n".join(lines) + "\n"


__all__ = [
    "OpCounter", "CountingGroup", "count_ops", "predict_cost", "verify_scaling", "measure",
    "report", "cost_table_csv", "scaling_csv", "OP_TIMES_MS", "SCHEME_OPS", "SCHEMES", "WORKLOADS",
]
