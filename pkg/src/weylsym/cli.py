"""Command line driver: verification suites, tables and timings.

    weylsym verify --k 3 --suite all --seed 0
    weylsym table --kind u --k 3 --pmax 3 --qmax 2
    weylsym bench --workload pairing --k 5 --reps 3

Reports are JSON; identical (k, suite, seed, version) give identical bytes
unless ``--timings`` is requested.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import __version__
from . import discops as dc
from . import report as rp
from . import w2bridge as wb
from .errors import ContractViolation, UnknownSuite

SCHEMA = "weylsym-report/1"


def _only_k2(fn):
    def run(k, seed):
        return fn(seed) if k == 2 else []
    run.__name__ = fn.__name__
    return run


@dataclass(frozen=True)
class Suite:
    name: str
    tasks: tuple  # names of check functions, in catalog order
    kmax: int
    kmin: int = 2


# task name -> callable(k, seed) -> list of items; module level so worker processes can find them
TASKS: dict[str, Callable] = {
    "newton_commutators": dc.check_newton_commutators,
    "v_relations": dc.check_v_relations,
    "phi_multiplicative": dc.check_phi_multiplicative,
    "phi_negative_weight": dc.check_phi_negative_weight,
    "phi_vector_field": dc.check_phi_vector_field,
    "phi_discriminant": dc.check_phi_discriminant,
    "phi_weight": dc.check_phi_weight,
    "phi_sigma1": dc.check_phi_sigma1,
    "u_agreement": dc.check_u_agreement,
    "u_special_values": dc.check_u_special_values,
    "correction_lemma": dc.check_correction_lemma,
    "symfun_layer": dc.check_symfun_layer,
    "generators_kill": dc.check_generators_kill,
    "remark_recurrences": dc.check_remark_recurrences,
    "order_one_killers": dc.check_order_one_killers,
    "vector_fields": dc.check_vector_fields,
    "import_kernel": dc.check_import_kernel,
    "sigma_on_sigma_k": dc.check_sigma_on_sigma_k,
    "sigma1_powers": dc.check_sigma1_powers,
    "pairing": dc.check_pairing,
    "transport": wb.check_transport,
    "factorization": wb.check_factorization,
    "displays": _only_k2(wb.check_displays),
    "remark": wb.check_remark,
    "example": _only_k2(wb.check_example),
    "lemma_14_8": wb.check_lemma_14_8,
    "twisted": wb.check_twisted,
    "bernstein": wb.check_bernstein,
}

SUITES = {s.name: s for s in [
    Suite("generators", ("newton_commutators", "v_relations"), kmax=6, kmin=1),
    Suite("phi", ("phi_multiplicative", "phi_negative_weight", "phi_vector_field", "phi_discriminant",
                  "phi_weight", "phi_sigma1"), kmax=4),
    Suite("upq", ("u_agreement", "u_special_values", "correction_lemma", "symfun_layer"), kmax=4),
    Suite("annihilator", ("generators_kill", "remark_recurrences", "order_one_killers"), kmax=4),
    Suite("vectorfields", ("vector_fields",), kmax=4),
    Suite("import_kernel", ("import_kernel", "sigma_on_sigma_k", "sigma1_powers"), kmax=4),
    Suite("pairing", ("pairing",), kmax=5),
    Suite("factorization", ("transport", "factorization", "displays", "remark", "example", "lemma_14_8"),
          kmax=3),
    Suite("twisted", ("twisted",), kmax=3),
    Suite("bernstein", ("bernstein",), kmax=3),
]}

SUITE_NAMES = tuple(SUITES) + ("all",)


def _run_task(args):
    name, k, seed, timings = args
    start = time.perf_counter()
    items = TASKS[name](k, seed)
    elapsed = (time.perf_counter() - start) * 1000
    for item in items:
        item["wall_time_ms"] = round(elapsed / len(items), 3) if timings else None
    return items


def _observations(args):
    k, seed = args
    return wb.observations(seed) if k == 2 else []


def run_suite(k: int, suite_name: str, seed: int = 0, jobs: int = 1, timings: bool = False) -> dict:
    """Deterministic report for one suite (or ``all``)."""
    if suite_name not in SUITE_NAMES:
        raise UnknownSuite(suite_name)
    names = list(SUITES) if suite_name == "all" else [suite_name]
    if k < 1:
        raise ContractViolation("k must be >= 1")
    if suite_name != "all" and k < SUITES[suite_name].kmin:
        raise ContractViolation(f"suite {suite_name} needs k >= {SUITES[suite_name].kmin}")
    plan = []
    for name in names:
        suite = SUITES[name]
        if k < suite.kmin or k > suite.kmax:
            continue
        plan.extend((name, (task, k, seed, timings)) for task in suite.tasks)
    if jobs > 1 and len(plan) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, [args for _, args in plan]))
    else:
        results = [_run_task(args) for _, args in plan]
    by_suite: dict = {name: [] for name in names}
    for (name, _), items in zip(plan, results):
        by_suite[name].extend(items)
    suites = []
    for name in names:
        suite = SUITES[name]
        items = by_suite[name]
        if not items:
            reason = f"k={k} outside the supported range [{suite.kmin}, {suite.kmax}]"
            items = [rp.skipped(name, k, name, seed, reason)]
            items[0]["wall_time_ms"] = None
        suites.append({"name": name, "items": items})
    observations = []
    if any(n == "factorization" for n in names) and SUITES["factorization"].kmin <= k <= SUITES["factorization"].kmax:
        observations = _observations((k, seed))
    counts = {s: 0 for s in rp.STATUSES}
    for s in suites:
        for item in s["items"]:
            counts[item["status"]] += 1
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "k": k,
        "seed": seed,
        "suite": suite_name,
        "suites": suites,
        "observations": observations,
        "summary": counts,
    }


def report_failed(report: dict) -> bool:
    return report["summary"][rp.FAIL] > 0


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# tables

def table(kind: str, k: int, pmax: int = 3, qmax: int = 2, dmax: int = 4) -> list[dict]:
    """Rows of the requested family as canonical strings."""
    if min(pmax, qmax, dmax) < 0:
        raise ContractViolation("bounds must be nonnegative")
    if kind == "u":
        if k < 2:
            raise ContractViolation("u table needs k >= 2")
        return [{"p": p, "q": q, "value": str(dc.u_pq(k, p, q))}
                for p in range(pmax + 1) for q in range(qmax + 1)]
    if kind == "M":
        return [{"d": d, "value": str(dc.m_poly(k, d))} for d in range(dmax + 1)]
    if kind == "generators":
        labels = [(p, q) for p in range(k + 1) for q in range(1, k + 1)]
        return [{"p": p, "q": q, "value": str(g)} for (p, q), g in zip(labels, dc.annihilator_generators(k))]
    raise ContractViolation(f"unknown table kind {kind!r}")


def _format_table(kind: str, rows: list[dict]) -> str:
    lines = []
    for row in rows:
        if kind == "M":
            lines.append(f"M[{row['d']}] = {row['value']}")
        elif kind == "u":
            lines.append(f"u[{row['p']},{row['q']}] = {row['value']}")
        else:
            lines.append(f"G[{row['p']},{row['q']}] = {row['value']}")
    return "\n".join(lines) + "\n"


# benchmarks

def bench(workload: str, k: int, size: int = 3, reps: int = 5, seed: int = 0) -> dict:
    """Median and p90 wall time of a workload; no correctness claims."""
    if k < 2:
        raise ContractViolation("benchmarks need k >= 2")
    if reps < 1:
        raise ContractViolation("reps must be >= 1")
    rng = rp.rng_for(seed, "bench", workload, k, size)
    if workload == "weyl_mul":
        A = dc.random_symmetric(rng, k, max_alpha=size, max_beta=size)
        B = dc.random_symmetric(rng, k, max_alpha=size, max_beta=size)

        def work():
            return A * B
    elif workload == "pairing":
        def work():
            return dc.dual_pairing(k)
    elif workload == "pushforward":
        P = dc.random_symmetric(rng, k, max_alpha=2, max_beta=size)

        def work():
            return wb.pushforward(P, seed)
    else:
        raise ContractViolation(f"unknown workload {workload!r}")
    times = []
    result = None
    for _ in range(reps):
        start = time.perf_counter()
        result = work()
        times.append((time.perf_counter() - start) * 1000)
    times.sort()
    out = {
        "workload": workload,
        "k": k,
        "size": size,
        "reps": reps,
        "median_ms": round(statistics.median(times), 3),
        "p90_ms": round(times[min(len(times) - 1, int(0.9 * len(times)))], 3),
    }
    if workload == "pairing":
        out["value"] = result
    else:
        out["result_terms"] = len(result.terms)
    return out


# entry point

def _default_seed() -> int:
    raw = os.environ.get("WEYLSYM_SEED")
    return int(raw) if raw else 0


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weylsym", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--suite", required=True)
    v.add_argument("--seed", type=_nonnegative, default=None)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    v.add_argument("--timings", action="store_true", help="record wall times (breaks byte-identity)")

    t = sub.add_parser("table", help="print a family of polynomials or operators")
    t.add_argument("--kind", choices=["u", "M", "generators"], required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--pmax", type=int, default=3)
    t.add_argument("--qmax", type=int, default=2)
    t.add_argument("--dmax", type=int, default=4)
    t.add_argument("--format", choices=["text", "json"], default="text")

    b = sub.add_parser("bench", help="time a workload")
    b.add_argument("--workload", choices=["weyl_mul", "pairing", "pushforward"], required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--size", type=int, default=3)
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--seed", type=_nonnegative, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            seed = _default_seed() if args.seed is None else args.seed
            report = run_suite(args.k, args.suite, seed, jobs=args.jobs, timings=args.timings)
            text = dumps(report)
            if args.json:
                with open(args.json, "w") as fh:
                    fh.write(text)
                s = report["summary"]
                print(" ".join(f"{key}={s[key]}" for key in rp.STATUSES))
            else:
                sys.stdout.write(text)
            return 1 if report_failed(report) else 0
        if args.command == "table":
            rows = table(args.kind, args.k, args.pmax, args.qmax, args.dmax)
            if args.format == "json":
                sys.stdout.write(json.dumps(rows, indent=2) + "\n")
            else:
                sys.stdout.write(_format_table(args.kind, rows))
            return 0
        seed = _default_seed() if args.seed is None else args.seed
        sys.stdout.write(json.dumps(bench(args.workload, args.k, args.size, args.reps, seed), indent=2) + "\n")
        return 0
    except UnknownSuite as exc:
        print(f"error: unknown suite {exc.args[0]!r}; choose from {', '.join(SUITE_NAMES)}", file=sys.stderr)
        return 2
    except ContractViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
