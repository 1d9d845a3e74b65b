"""``vfive`` command line.

Exit codes: 0 success, 2 bad input, 3 search failure, 4 budget exceeded.
"""
from __future__ import annotations

import csv
import functools
import io
import json
import secrets
import statistics
import sys
import time

import click
import numpy as np

from .approx_direct import direct_search
from .approx_rand import approx_rz, approx_unitary
from .core import UnitVector4, evaluate, parse_circuit, trace_distance
from .errors import BudgetExceeded, SearchFailure, VFiveError
from .exact import ExactUnitary, exact_synthesize, level_of_norm
from .quat import LipschitzQuaternion

REPORT_HEADER = "# vfive-report v1"

EXIT_INPUT = 2
EXIT_SEARCH = 3
EXIT_BUDGET = 4


def _exit_codes(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BudgetExceeded as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_BUDGET)
        except SearchFailure as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_SEARCH)
        except (VFiveError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)

    return wrapper


def _seed_or_entropy(seed: int | None) -> int:
    return secrets.randbits(32) if seed is None else seed


def haar_targets(count: int, seed: int) -> list[UnitVector4]:
    """Haar-random gates: normalized standard Gaussian 4-vectors."""
    rng = np.random.default_rng(seed)
    return [UnitVector4.normalized(rng.standard_normal(4)) for _ in range(count)]


def _write_csv(header: list[str], rows: list[list], comments: tuple[str, ...] = ()) -> None:
    buf = io.StringIO()
    buf.write(REPORT_HEADER + "\n")
    for line in comments:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    click.echo(buf.getvalue(), nl=False)


@click.group()
def main():
    """Single-qubit synthesis over the V basis."""


@main.command("exact-synth")
@click.option("--quaternion", "quat", required=True, help="Integers a,b,c,d with norm 5^L.")
@_exit_codes
def cmd_exact_synth(quat):
    """Exact W circuit for an integer quaternion."""
    u = ExactUnitary.from_quaternion(LipschitzQuaternion.parse(quat))
    circuit = exact_synthesize(u)
    click.echo(str(circuit))
    click.echo(json.dumps({"circuit": str(circuit), "v_count": circuit.v_count, "level": u.reduced().level}))


def _target_from_options(rz, target) -> UnitVector4:
    if (rz is None) == (target is None):
        raise click.UsageError("give exactly one of --rz or --target")
    return UnitVector4.rz(rz) if rz is not None else UnitVector4.parse(target)


@main.command("approx")
@click.option("--rz", type=float, default=None, help="Z rotation angle in radians.")
@click.option("--target", default=None, help="Gate as alpha,beta,gamma,delta.")
@click.option("--eps", type=float, default=1e-3, show_default=True)
@click.option("--method", type=click.Choice(["rand", "direct"]), default="rand", show_default=True)
@click.option("--seed", type=int, default=None, help="Random seed (drawn and printed if omitted).")
@click.option("--general", is_flag=True, help="Full two-squares completion in the randomized search.")
@click.option("--first-only", is_flag=True, help="Keep one (b, c) pair per residue in the direct search.")
@click.option("--max-table-entries", type=int, default=None, help="Residue table cap (env VFIVE_MAX_TABLE).")
@_exit_codes
def cmd_approx(rz, target, eps, method, seed, general, first_only, max_table_entries):
    """Approximate a gate; prints a JSON result."""
    goal = _target_from_options(rz, target)
    seed = _seed_or_entropy(seed)
    start = time.perf_counter()
    if method == "rand":
        if rz is not None:
            res = approx_rz(rz, eps, seed=seed, general=general)
        else:
            res = approx_unitary(goal, eps, seed=seed, general=general)
        circuit, level = res.circuit, res.level
    else:
        res = direct_search(goal, eps, all_collisions=not first_only, max_entries=max_table_entries)
        circuit, level = res.circuit, res.level
    text = str(circuit)
    dist = trace_distance(evaluate(parse_circuit(text)), goal)
    if not dist < eps:
        raise SearchFailure(f"printed circuit misses the target: {dist} >= {eps}")
    out = {
        "circuit": text,
        "v_count": circuit.v_count,
        "distance": dist,
        "level": level,
        "seed": seed,
        "millis": round((time.perf_counter() - start) * 1000, 3),
    }
    click.echo(json.dumps(out))


def _parse_floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def random_generator_word(rng: np.random.Generator, max_len: int = 20):
    """Random product of V generators and Paulis, as a circuit."""
    from .core import Circuit, GateToken

    alphabet = [t for t in GateToken if t.is_v] + [GateToken.X, GateToken.Y, GateToken.Z]
    n = int(rng.integers(0, max_len + 1))
    return Circuit(tuple(alphabet[i] for i in rng.integers(0, len(alphabet), size=n)))


def bench_rows(count: int, eps_list: list[float], methods: list[str], seed: int):
    """Rows ``[eps, method, count, median_vc, mean_vc, worst_vc, mean_dist, failures]``."""
    from .core import circuit_quaternion

    rows = []
    for eps in eps_list:
        for method in methods:
            vcs, dists, failures = [], [], 0
            if method == "exact":
                rng = np.random.default_rng(seed)
                for _ in range(count):
                    word = random_generator_word(rng)
                    q, n = circuit_quaternion(word)
                    u = ExactUnitary(q, level_of_norm(n))
                    out = exact_synthesize(u)
                    q2, n2 = circuit_quaternion(out)
                    if not u.same_gate(ExactUnitary(q2, level_of_norm(n2))):
                        failures += 1
                        continue
                    vcs.append(out.v_count)
                    dists.append(0.0)
            else:
                for i, g in enumerate(haar_targets(count, seed)):
                    try:
                        if method == "RA":
                            res = approx_unitary(g, eps, seed=seed + i)
                        else:
                            res = direct_search(g, eps)
                    except VFiveError:
                        failures += 1
                        continue
                    vcs.append(res.v_count)
                    dists.append(trace_distance(evaluate(res.circuit), g))
            if vcs:
                row = [eps, method, count, statistics.median(vcs), statistics.fmean(vcs), max(vcs),
                       statistics.fmean(dists), failures]
            else:
                row = [eps, method, count, "", "", "", "", failures]
            rows.append(row)
    rows.sort(key=lambda r: (r[0], r[1]))
    return rows


@main.command("bench")
@click.option("--count", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--eps", "eps_list", default="1e-3", show_default=True, help="Comma-separated precisions.")
@click.option("--method", "methods", multiple=True, type=click.Choice(["RA", "DS", "exact"]),
              default=("RA", "DS"), show_default=True)
@click.option("--seed", type=int, default=None)
@_exit_codes
def cmd_bench(count, eps_list, methods, seed):
    """Batch V-count statistics over Haar-random targets (CSV)."""
    seed = _seed_or_entropy(seed)
    rows = bench_rows(count, _parse_floats(eps_list), list(methods), seed)
    _write_csv(["eps", "method", "count", "median_vc", "mean_vc", "worst_vc", "mean_dist", "failures"], rows,
               (f"seed={seed}",))


@main.command("conjecture")
@click.option("--p", "p", type=int, default=5, show_default=True)
@click.option("--L", "levels", type=int, multiple=True, default=(8,), show_default=True)
@click.option("--delta", type=float, default=4.0, show_default=True)
@click.option("--segment-angle", type=float, default=None, help="Restrict to the cap segment at this angle.")
@click.option("--population", type=click.Choice(["ring", "disk"]), default="ring", show_default=True)
@_exit_codes
def cmd_conjecture(p, levels, delta, segment_angle, population):
    """Ring or segment projection counts with angle uniformity (CSV)."""
    from .geomlab import (RingSpec, SegmentSpec, count_ring_projections, count_segment_projections,
                          ks_uniformity, projection_angles)

    rows = []
    for L in sorted(levels):
        ring = RingSpec(p, L, delta)
        if segment_angle is None:
            counts = count_ring_projections(ring)
        else:
            counts = count_segment_projections(SegmentSpec(ring, segment_angle))
        ratio = counts.projection_points / counts.grid_points if counts.grid_points else 0.0
        angles = projection_angles(ring, population)
        ks = ks_uniformity(angles) if len(angles) else None
        rows.append([p, L, delta, counts.grid_points, counts.projection_points, ratio,
                     ks.D if ks else "", ks.p_value if ks else ""])
    _write_csv(["p", "L", "Delta", "grid_points", "projection_points", "ratio", "ks_D", "ks_p"], rows)


@main.command("ladder")
@click.option("--target-level", type=click.IntRange(min=1, max=10), default=1, show_default=True)
@click.option("--trials", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--policy", type=click.Choice(["reuse", "discard", "both"]), default="both", show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@_exit_codes
def cmd_ladder(target_level, trials, seed, policy, workers):
    """Monte Carlo of the resource-state ladder (CSV)."""
    from .ladder import LadderConfig, ReusePolicy, simulate_ladder

    seed = _seed_or_entropy(seed)
    policies = [ReusePolicy.REUSE, ReusePolicy.DISCARD] if policy == "both" else [ReusePolicy(policy)]
    rows = []
    for pol in policies:
        stats = simulate_ladder(LadderConfig(target_level, trials, seed, pol, workers=workers))
        rows.append([target_level, pol.value, trials, stats.mean_h0_cost, stats.median_h0_cost, stats.stderr])
    _write_csv(["target_level", "policy", "trials", "mean", "median", "stderr"], rows, (f"seed={seed}",))


@main.command("cost")
@click.option("--c-h2", type=float, default=4.35, show_default=True)
@click.option("--success-prob", type=float, default=0.5, show_default=True)
@click.option("--attempts", type=click.IntRange(min=1), default=4, show_default=True)
@click.option("--backoff-cost", type=float, default=0.0, show_default=True)
@_exit_codes
def cmd_cost(c_h2, success_prob, attempts, backoff_cost):
    """Resource cost of one exact V gate (JSON)."""
    from dataclasses import asdict

    from .ladder import CostModel, v_gate_cost

    cost = v_gate_cost(CostModel(c_h2=c_h2, success_prob=success_prob, backoff_cost=backoff_cost), attempts)
    click.echo(json.dumps(asdict(cost)))


if __name__ == "__main__":  # pragma: no cover
    main()
