"""Experiment drivers: n-scans, t-scans, solver/gate-count reports, oracle
verification suites, and CSV emission.

Determinism contract: with a fixed config and master seed the emitted CSV is
byte-identical regardless of worker count.  Per-point seeds derive from
(master_seed, point index); grid points are computed by a worker pool but
gathered in submission order; wall-clock timing is only recorded when the
config explicitly enables it (timing breaks byte-reproducibility and is off
by default).
"""

from __future__ import annotations

import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from . import bounds, chains, model, trotter
from .fermions import hilbert_dim
from .linalg import NormEstimate, assemble, exact_evolution, expected_norm, worker_count

__all__ = [
    "ExperimentConfig",
    "ResultRow",
    "rows_to_csv",
    "cmd_scan_n",
    "cmd_scan_t",
    "cmd_solve_r",
    "cmd_gatecount",
    "cmd_bounds",
    "cmd_oracle",
    "cmd_gen",
    "cmd_evolve",
]


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved configuration for one run (defaults are desk scale)."""

    command: str = ""
    model: str = "dense"  # "dense" | "sparse"
    n_list: tuple[int, ...] = (6, 8, 10)
    k: int = 4
    l: int = 1
    p: float = 2.0
    t: float = 1.0
    t_min: float = 10.0
    t_max: float = 1000.0
    t_points: int = 8
    r: int = 10_000
    kappa: float = 4.0
    energy_constant: float = 1.0
    N_disorder: int = 32
    N_bernoulli: int = 32
    master_seed: int = 2024
    prefactor_mode: str = "full"
    overhead: str = "none"
    epsilon: float = 0.1
    delta: float = 0.01
    mode: str = "operator_norm"
    bound_only: bool = False
    timing: bool = False
    output: str = ""
    instance_path: str = ""

    def as_comment_block(self) -> str:
        lines = []
        for f in fields(self):
            if f.name in ("output", "instance_path"):  # I/O plumbing, not physics
                continue
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = ",".join(str(v) for v in value)
            lines.append(f"# {f.name} = {value}")
        return "\n".join(lines)


@dataclass
class ResultRow:
    """One experiment record; field order fixes the CSV schema."""

    model: str
    n: int
    k: int
    l: int
    p: float
    t: float
    r: int
    kappa: float
    seed: int
    N_disorder: int
    N_bernoulli: int
    observed: float
    observed_stderr: float
    bound: float
    ratio: float
    wall_time_s: float
    error: str = ""


def _format_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(config: ExperimentConfig, rows: list[ResultRow], extra_comments: list[str] | None = None) -> str:
    """CSV text: '#'-commented resolved config, header, rows (LF endings,
    shortest round-trip float formatting)."""
    buf = io.StringIO()
    buf.write(config.as_comment_block() + "\n")
    names = [f.name for f in fields(ResultRow)]
    buf.write(",".join(names) + "\n")
    for row in rows:
        buf.write(",".join(_format_value(getattr(row, name)) for name in names) + "\n")
    for line in extra_comments or []:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def _point_seed(master_seed: int, point_index: int) -> int:
    seq = np.random.SeedSequence(entropy=[int(master_seed), 0x5CA0, int(point_index)])
    return int(seq.generate_state(1, np.uint64)[0])


def _dense_bound(config: ExperimentConfig, n: int, t: float, l: int) -> float:
    inp = bounds.BoundInput(
        n=n, k=config.k, l=l, p=config.p, t=t, r=config.r,
        energy_constant=config.energy_constant, prefactor_mode=config.prefactor_mode,
    )
    return bounds.delta1_dense(inp) if l == 1 else bounds.delta_l_dense(inp)


def _sparse_bound(config: ExperimentConfig, n: int, t: float, l: int) -> float:
    inp = bounds.BoundInput(
        n=n, k=config.k, l=l, p=config.p, t=t, r=config.r,
        energy_constant=config.energy_constant, kappa=config.kappa,
        prefactor_mode=config.prefactor_mode,
    )
    return bounds.delta_l_sparse(inp).value


def _observed_dense(config: ExperimentConfig, n: int, t: float, seed: int):
    """Disorder-averaged normalized Trotter error for the dense model."""
    dim = hilbert_dim(n)
    schedule = trotter.build_schedule(config.l, math.comb(n, config.k))

    def sampler(i: int):
        return model.sample_dense(n, config.k, config.energy_constant, seed, i)

    def statistic(instance):
        exact = exact_evolution(assemble(instance), t)
        return exact - trotter.trotterized(instance, schedule, t, config.r)

    est = expected_norm(sampler, statistic, config.p, config.N_disorder, workers=1)
    scale = dim ** (1.0 / config.p)
    est.value /= scale
    est.stderr /= scale
    return est


def _observed_sparse(config: ExperimentConfig, n: int, t: float, seed: int):
    """Bernoulli average (outer) of per-mask disorder-expected norms (inner).

    The inner norm concerns only the Gaussian couplings; the plain mean over
    masks is taken outside, matching the averaged-error definition.
    """
    dim = hilbert_dim(n)
    schedule = trotter.build_schedule(config.l, math.comb(n, config.k))
    scale = dim ** (1.0 / config.p)
    per_mask: list[float] = []
    for b in range(config.N_bernoulli):
        mask, _, _ = model.sample_bernoulli_mask(n, config.k, config.kappa, seed, b)

        def sampler(i: int, _mask=mask, _b=b):
            return model.sample_sparse(
                n, config.k, config.energy_constant, config.kappa, seed,
                coupling_index=_b * config.N_disorder + i, mask=_mask,
            )

        def statistic(instance):
            exact = exact_evolution(assemble(instance), t)
            return exact - trotter.trotterized(instance, schedule, t, config.r)

        est = expected_norm(sampler, statistic, config.p, config.N_disorder, workers=1)
        per_mask.append(est.value / scale)
    values = np.asarray(per_mask)
    mean = float(values.mean())
    sem = float(values.std(ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0
    return NormEstimate(mean, sem, len(values), config.p)


def _run_points(config: ExperimentConfig, points: list, worker) -> list[ResultRow]:
    """Evaluate grid points (in parallel) and gather rows in grid order."""
    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(worker, range(len(points)), points))
    return [worker(i, pt) for i, pt in enumerate(points)]


def _scan_point(config: ExperimentConfig, point_index: int, n: int, t: float) -> ResultRow:
    seed = _point_seed(config.master_seed, point_index)
    start = time.perf_counter()
    row = ResultRow(
        model=config.model, n=n, k=config.k, l=config.l, p=config.p, t=t,
        r=config.r, kappa=config.kappa if config.model == "sparse" else 0.0,
        seed=seed, N_disorder=config.N_disorder,
        N_bernoulli=config.N_bernoulli if config.model == "sparse" else 0,
        observed=0.0, observed_stderr=0.0, bound=0.0, ratio=0.0, wall_time_s=0.0,
    )
    try:
        if config.model == "sparse":
            row.bound = _sparse_bound(config, n, t, config.l)
            if not config.bound_only:
                est = _observed_sparse(config, n, t, seed)
                row.observed, row.observed_stderr = est.value, est.stderr
        else:
            row.bound = _dense_bound(config, n, t, config.l)
            if not config.bound_only:
                est = _observed_dense(config, n, t, seed)
                row.observed, row.observed_stderr = est.value, est.stderr
        if row.bound > 0:
            row.ratio = row.observed / row.bound
    except Exception as exc:  # a row failure must not kill the run
        row.error = f"{type(exc).__name__}: {exc}"
    if config.timing:
        row.wall_time_s = time.perf_counter() - start
    return row


def cmd_scan_n(config: ExperimentConfig) -> tuple[list[ResultRow], str]:
    """Observed error, bound, and ratio for each n (rows sorted by n)."""
    ns = sorted(config.n_list)
    rows = _run_points(
        config, ns, lambda i, n: _scan_point(config, i, n, config.t)
    )
    return rows, rows_to_csv(config, rows)


def cmd_scan_t(config: ExperimentConfig) -> tuple[list[ResultRow], str]:
    """Rows over a log-spaced t grid plus a trailing log-log fit block."""
    if config.t_points < 3:
        raise ValueError("t scan needs at least 3 points for the fit")
    n = config.n_list[0]
    ts = np.logspace(
        math.log10(config.t_min), math.log10(config.t_max), config.t_points
    )
    rows = _run_points(
        config, list(ts), lambda i, t: _scan_point(config, i, n, float(t))
    )
    comments = []
    bound_fit = bounds.loglog_fit([(row.t, row.bound) for row in rows])
    comments.append(
        "fit bound: slope=%r intercept=%r residual=%r" % bound_fit
    )
    if not config.bound_only:
        positive = [(row.t, row.observed) for row in rows if row.observed > 0]
        observed_fit = bounds.loglog_fit(positive)
        comments.append(
            "fit observed: slope=%r intercept=%r residual=%r" % observed_fit
        )
        comments.append(
            "fit slope difference = %r" % abs(observed_fit[0] - bound_fit[0])
        )
    return rows, rows_to_csv(config, rows, comments)


def cmd_solve_r(config: ExperimentConfig) -> str:
    """Minimal Trotter numbers and implied gate counts, both solver modes."""
    n = config.n_list[0]
    family = (
        "sparse" if config.model == "sparse"
        else ("dense_first" if config.l == 1 else "dense_higher")
    )
    base = bounds.BoundInput(
        n=n, k=config.k, l=config.l, p=config.p, t=config.t, r=1,
        energy_constant=config.energy_constant,
        kappa=config.kappa if config.model == "sparse" else None,
        prefactor_mode=config.prefactor_mode,
    )
    gamma = math.comb(n, config.k)
    lines = [
        f"solve-r: n={n} k={config.k} l={config.l} model={config.model} "
        f"epsilon={config.epsilon} delta={config.delta}"
    ]
    for mode in ("operator_norm", "fixed_state"):
        sinp = bounds.SolverInput(config.epsilon, config.delta, mode, family, base)
        r = bounds.solve_trotter_number(sinp)
        p_star = sinp.p_star()
        lam = bounds._lambda_factory(sinp)(p_star, r)
        target = config.epsilon / (math.e * p_star)
        lines.append(
            f"  {mode}: r = {r}  (lambda(p*, r) = {lam:.6e} <= {target:.6e}, "
            f"p* = {p_star:.4f})"
        )
        for overhead in ("none", "log_n", "linear_n"):
            g = bounds.gate_count(config.l, gamma, r, overhead, n)
            lines.append(f"    gate count [{overhead}]: {g:.6e}")
    return "\n".join(lines)


def cmd_gatecount(config: ExperimentConfig) -> str:
    n = config.n_list[0]
    gamma = math.comb(n, config.k)
    ups = trotter.stage_count(config.l)
    lines = [f"gatecount: n={n} k={config.k} l={config.l} Gamma={gamma} "
             f"Upsilon={ups} r={config.r}"]
    for overhead in ("none", "log_n", "linear_n"):
        g = bounds.gate_count(config.l, gamma, config.r, overhead, n)
        lines.append(f"  [{overhead}]: {g:.6e}")
    return "\n".join(lines)


def cmd_bounds(config: ExperimentConfig) -> str:
    """Evaluate the analytical bound for the configured parameters."""
    n = config.n_list[0]
    if config.model == "sparse":
        value = _sparse_bound(config, n, config.t, config.l)
        kind = f"Delta_{config.l}^sparse"
    elif config.l == 1:
        value = _dense_bound(config, n, config.t, 1)
        kind = "Delta_1"
    else:
        value = _dense_bound(config, n, config.t, config.l)
        kind = f"Delta_{config.l}"
    return (
        f"{kind}(n={n}, k={config.k}, p={config.p}, t={config.t}, "
        f"r={config.r}, prefactor={config.prefactor_mode}) = {value!r}"
    )


def cmd_oracle(config: ExperimentConfig) -> tuple[str, bool]:
    """Run the combinatorics verification suites; returns (report, all_ok)."""
    checks: list[tuple[str, bool, str]] = []

    # Anti-commutation sign law at n = 8.
    n = 8
    bad = 0
    for k in (2, 3, 4):
        ts = chains.syk_termset(n, k)
        om = model.ordering_map(n, k)
        for i in range(ts.m):
            for j in range(i + 1, ts.m):
                a, b = ts.terms[i], ts.terms[j]
                m_overlap = len(set(om.edges[i]) & set(om.edges[j]))
                expect_commute = (k + m_overlap) % 2 == 0
                from .pauli import commutes as _commutes

                if _commutes(a, b) != expect_commute:
                    bad += 1
    checks.append(("anti-commutation sign law (n=8, k=2,3,4)", bad == 0,
                   f"{bad} violations"))

    # Q(n,k) against brute force.
    mism = []
    for nn in range(2, 13, 2):
        for k in range(1, min(5, nn) + 1):
            ts = chains.syk_termset(nn, k)
            graph = chains.build_graph(ts)
            degrees = {graph.degree(v) for v in range(graph.num_vertices)}
            if degrees != {bounds.q_of(nn, k)}:
                mism.append((nn, k))
    checks.append(("Q(n,k) = anticommuting-partner count (n<=12)", not mism,
                   f"mismatches: {mism}"))

    # Lemma D / E on a small SYK-drawn termset.
    ts = chains.syk_termset(6, 3, [(1, 2, 3), (1, 2, 4), (3, 4, 5), (1, 5, 6)])
    qm = chains.q_max(ts)
    ok_d = ok_e = True
    for g in (2, 3, 4):
        for w in range(g + 1):
            if (g - w) % 2:
                continue
            gw = chains.gw_bruteforce(ts, g, w)
            if gw > chains.lemma_d_bound(g, ts.m, qm):
                ok_d = False
            for p_b in (0.1, 0.5, 0.9, 1.0):
                if chains.avg_gw_exact(ts, g, w, p_b) > chains.lemma_e_bound(
                    g, w, ts.m, qm, p_b
                ) + 1e-9:
                    ok_e = False
    checks.append(("Lemma D bound on G_w", ok_d, ""))
    checks.append(("Lemma E bound on <G_w>", ok_e, ""))

    # Greedy coloring <= Q + 1.
    ok_color = True
    details = []
    for nn in range(6, 17, 2):
        graph = chains.build_graph(chains.syk_termset(nn, 4))
        colors = chains.greedy_coloring(graph)
        q = bounds.q_of(nn, 4)
        details.append(f"n={nn}: {colors} colors, Q+1={q + 1}")
        if colors > q + 1:
            ok_color = False
    checks.append(("greedy coloring <= Q(n,4)+1 (n=6..16)", ok_color,
                   "; ".join(details)))

    lines = ["oracle verification report"]
    all_ok = True
    for name, ok, detail in checks:
        all_ok &= ok
        status = "PASS" if ok else "FAIL"
        lines.append(f"  [{status}] {name}" + (f" ({detail})" if detail and not ok else ""))
    return "\n".join(lines), all_ok


def cmd_gen(config: ExperimentConfig) -> str:
    """Sample one instance and return its JSON serialization."""
    n = config.n_list[0]
    if config.model == "sparse":
        inst = model.sample_sparse(
            n, config.k, config.energy_constant, config.kappa, config.master_seed
        )
    else:
        inst = model.sample_dense(
            n, config.k, config.energy_constant, config.master_seed
        )
    return model.to_json(inst)


def cmd_evolve(config: ExperimentConfig) -> str:
    """One-off Trotter-error evaluation for a (possibly replayed) instance."""
    if config.instance_path:
        with open(config.instance_path, "r", encoding="utf-8") as fh:
            inst = model.from_json(fh.read())
    else:
        n = config.n_list[0]
        if config.model == "sparse":
            inst = model.sample_sparse(
                n, config.k, config.energy_constant, config.kappa, config.master_seed
            )
        else:
            inst = model.sample_dense(
                n, config.k, config.energy_constant, config.master_seed
            )
    err = trotter.observed_error(inst, config.l, config.t, config.r, config.p)
    return (
        f"observed normalized error (n={inst.n}, k={inst.k}, l={config.l}, "
        f"t={config.t}, r={config.r}, p={config.p}) = {err!r}"
    )
