"""Scenario orchestration: instance generation, canned experiments, reports.

Random likabilities come from numpy's PCG64 generator seeded with the
config seed; the matrix is drawn in one row-major (player-major) call,
so for a fixed seed the honest players' rows do not depend on how many
ring members are appended after them. Do not change the generator or the
draw order: recorded CSV outputs depend on them.

Canned experiments:

* scenario A, "sufficient": 270 honest players, 70 posts, 200000 rounds;
  enough rounds for every player to vote every post at full power, so
  the list ends exactly in ideal order.
* scenario A, "insufficient": 300 honest players, 100 posts, the same
  round budget; players run out of rounds and curation quality stalls.
* scenario B: 100 honest players plus a voting ring of k players that
  only ever vote one universally disliked post placed at the bottom of
  the initial list; swept over ring sizes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .analysis import ConvergencePrediction, Reason, predict
from .config import ScenarioConfig, SelfishConfig, default_sample_every, format_config
from .core import ConfigError, LikabilityMatrix, SystemParams, ideal_order
from .engine import run
from .metrics import MetricsSample, selfish_gain
from .strategies import HonestMode, HonestPolicy, HonestPolicyConfig, Policy, SelfishPolicy

TIMESERIES_HEADER = "round,t_ideal_rank,kendall_tau,spearman_rho"
SWEEP_HEADER = "ring_size,selfish_gain,t_ideal_rank"

_SCENARIO_A_COMMON = dict(
    num_rounds=200_000,
    attention_span=10,
    vote_scale=1 / 50,
    vote_offset=1e-4,
    regen=3 / (5 * 24 * 60 * 60),
)

SCENARIO_A_SUFFICIENT = SystemParams(
    num_players=270, num_posts=70, **_SCENARIO_A_COMMON
)
SCENARIO_A_INSUFFICIENT = SystemParams(
    num_players=300, num_posts=100, **_SCENARIO_A_COMMON
)

SCENARIO_B_HONEST_PLAYERS = 100
SCENARIO_B_POSTS = 100


def scenario_b_params(ring_size: int) -> SystemParams:
    return SystemParams(
        num_players=SCENARIO_B_HONEST_PLAYERS + ring_size,
        num_rounds=5_000,
        num_posts=SCENARIO_B_POSTS,
        attention_span=10,
        vote_scale=1 / 50,
        vote_offset=1e-4,
        regen=3 / (5 * 24 * 60),
    )


@dataclass(frozen=True)
class RunReport:
    """Everything one run produced, sufficient to reproduce it."""

    config: ScenarioConfig
    prediction: ConvergencePrediction
    final_t_ideal_rank: int
    final_kendall_tau: float
    final_spearman_rho: float
    selfish_gain: int | None
    samples: tuple[MetricsSample, ...]


@dataclass(frozen=True)
class SweepRow:
    ring_size: int
    selfish_gain: int
    t_ideal_rank: int


def generate_instance(
    config: ScenarioConfig,
) -> tuple[LikabilityMatrix, list[int], list[float]]:
    """Seeded (likability matrix, initial order, steem powers) for a config.

    Likabilities are i.i.d. uniform on [0, 1]. With a selfish block, the
    target post's likability column is zeroed for every player and the
    target starts at the bottom of the list; all other posts start in
    ascending id order.
    """
    params = config.params
    rng = np.random.default_rng(config.seed)
    values = rng.random((params.num_players, params.num_posts))
    if config.selfish is not None:
        target = config.selfish.target_post
        values[:, target] = 0.0
        initial_order = [p for p in range(params.num_posts) if p != target]
        initial_order.append(target)
    else:
        initial_order = list(range(params.num_posts))
    return LikabilityMatrix(values), initial_order, config.steem_powers()


def build_policies(config: ScenarioConfig, matrix: LikabilityMatrix) -> list[Policy]:
    """One policy per player: honest first, ring members on the highest ids."""
    params = config.params
    ring_size = config.selfish.ring_size if config.selfish is not None else 0
    honest_config = HonestPolicyConfig(mode=config.honest_mode)
    policies: list[Policy] = [
        HonestPolicy(matrix.row(i), honest_config)
        for i in range(params.num_players - ring_size)
    ]
    policies.extend(
        SelfishPolicy(config.selfish.target_post) for _ in range(ring_size)
    )
    return policies


def execute(config: ScenarioConfig) -> RunReport:
    """Run one configured simulation and assemble its report."""
    matrix, initial_order, steem_powers = generate_instance(config)
    policies = build_policies(config, matrix)
    state, samples = run(
        config.params,
        matrix,
        steem_powers,
        initial_order,
        policies,
        sample_every=config.sample_every,
        rng_seed=config.seed,
    )
    prediction = predict(config.params, steem_powers)
    final = samples[-1]
    gain = None
    if config.selfish is not None:
        gain = selfish_gain(
            state.feed.order, ideal_order(matrix), config.selfish.target_post
        )
    return RunReport(
        config=config,
        prediction=prediction,
        final_t_ideal_rank=final.t_ideal_rank,
        final_kendall_tau=final.kendall_tau,
        final_spearman_rho=final.spearman_rho,
        selfish_gain=gain,
        samples=tuple(samples),
    )


def _real(x: float) -> str:
    """Round-trip-exact decimal rendering (17 significant digits)."""
    return format(x, ".17g")


def write_timeseries_csv(samples: Sequence[MetricsSample], path: str) -> None:
    """Time-series CSV: one row per sample, LF line endings."""
    if not samples:
        raise ConfigError("refusing to write an empty sample list")
    rows = [TIMESERIES_HEADER]
    rows.extend(
        f"{s.round},{s.t_ideal_rank},{_real(s.kendall_tau)},{_real(s.spearman_rho)}"
        for s in samples
    )
    _write_text(path, "\n".join(rows) + "\n")


def write_sweep_csv(rows: Sequence[SweepRow], path: str) -> None:
    """Ring-size sweep CSV: one row per ring size, LF line endings."""
    if not rows:
        raise ConfigError("refusing to write an empty sweep")
    lines = [SWEEP_HEADER]
    lines.extend(f"{r.ring_size},{r.selfish_gain},{r.t_ideal_rank}" for r in rows)
    _write_text(path, "\n".join(lines) + "\n")


def write_report(report: RunReport, path: str) -> None:
    """Structured run summary; its [config] section re-parses to the config."""
    samples = report.samples
    if not samples:
        raise ConfigError("report has no samples")
    if samples[0].round != 0 or samples[-1].round != report.config.params.num_rounds:
        raise ConfigError("samples must start at round 0 and end at the final round")
    parts = ["[config]", format_config(report.config).rstrip("\n"), ""]
    parts += [
        "[prediction]",
        f"verdict = {report.prediction.verdict.value}",
        f"reason = {report.prediction.reason.value}",
        f"threshold = {report.prediction.threshold}",
        f"required_rounds = {report.prediction.required_rounds}",
        "",
        "[final]",
        f"round = {samples[-1].round}",
        f"t_ideal_rank = {report.final_t_ideal_rank}",
        f"kendall_tau = {_real(report.final_kendall_tau)}",
        f"spearman_rho = {_real(report.final_spearman_rho)}",
    ]
    if report.selfish_gain is not None:
        parts.append(f"selfish_gain = {report.selfish_gain}")
    _write_text(path, "\n".join(parts) + "\n")


def report_config_section(report_text: str) -> str:
    """Extract the [config] section body from report text."""
    lines = []
    active = False
    for line in report_text.splitlines():
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            active = stripped == "[config]"
            continue
        if active:
            lines.append(line)
    return "\n".join(lines) + "\n"


def _write_text(path: str, content: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def scenario_a_config(
    variant: str, seed: int, out_dir: str = "out", sample_every: int | None = None
) -> ScenarioConfig:
    if variant == "sufficient":
        params = SCENARIO_A_SUFFICIENT
    elif variant == "insufficient":
        params = SCENARIO_A_INSUFFICIENT
    else:
        raise ConfigError(f"unknown scenario A variant {variant!r}")
    return ScenarioConfig(
        params=params,
        seed=seed,
        steem_power=1.0,
        honest_mode=HonestMode.FULL_POWER_ONLY,
        selfish=None,
        sample_every=sample_every or default_sample_every(params.num_rounds),
        output_path=out_dir,
    )


def scenario_b_config(
    ring_size: int, seed: int, out_dir: str = "out", sample_every: int | None = None
) -> ScenarioConfig:
    params = scenario_b_params(ring_size)
    return ScenarioConfig(
        params=params,
        seed=seed,
        steem_power=1.0,
        honest_mode=HonestMode.FULL_POWER_ONLY,
        selfish=SelfishConfig(ring_size=ring_size, target_post=params.num_posts - 1),
        sample_every=sample_every or params.num_rounds,
        output_path=out_dir,
    )


def run_scenario_a(
    variant: str, seed: int, out_dir: str, sample_every: int | None = None
) -> RunReport:
    """Run a scenario A variant and write timeseries.csv + report.txt.

    Self-check: the sufficient variant must be predicted to converge
    fully and the insufficient one must not; a violation would mean the
    canned parameters drifted.
    """
    config = scenario_a_config(variant, seed, out_dir, sample_every)
    prediction = predict(config.params, config.steem_powers())
    expected = (
        Reason.SUFFICIENT_ROUNDS if variant == "sufficient" else Reason.INSUFFICIENT_ROUNDS
    )
    if prediction.reason is not expected:
        raise ConfigError(
            f"scenario A {variant} parameters predict {prediction.reason.value}, "
            f"expected {expected.value}"
        )
    report = execute(config)
    write_timeseries_csv(report.samples, os.path.join(out_dir, "timeseries.csv"))
    write_report(report, os.path.join(out_dir, "report.txt"))
    return report


def run_scenario_b(
    ring_sizes: Iterable[int], seed: int, out_dir: str
) -> list[SweepRow]:
    """Sweep ring sizes and write sweep.csv (rows in ascending ring size)."""
    sizes = sorted(set(int(k) for k in ring_sizes))
    if not sizes:
        raise ConfigError("ring size sweep is empty")
    if sizes[0] < 0:
        raise ConfigError("ring sizes must be >= 0")
    rows = []
    for k in sizes:
        report = execute(scenario_b_config(k, seed, out_dir))
        assert report.selfish_gain is not None
        rows.append(
            SweepRow(
                ring_size=k,
                selfish_gain=report.selfish_gain,
                t_ideal_rank=report.final_t_ideal_rank,
            )
        )
    write_sweep_csv(rows, os.path.join(out_dir, "sweep.csv"))
    return rows


def run_from_config(config: ScenarioConfig) -> RunReport:
    """Run an arbitrary config and write its outputs under output_path."""
    report = execute(config)
    out_dir = config.output_path
    write_timeseries_csv(report.samples, os.path.join(out_dir, "timeseries.csv"))
    write_report(report, os.path.join(out_dir, "report.txt"))
    return report
