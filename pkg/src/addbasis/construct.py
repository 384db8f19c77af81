"""Stage-by-stage construction of sparse additive bases with certificates.

The builder consumes the realizing stream of a target function.  When the
current stream value is not yet represented often enough, the stage adjoins
the pair {-c, (h-1)*c + value} with |c| strictly above 2*h times the
largest magnitude in play.  That spread makes the count of the stream value
rise by exactly one, leaves every other existing count unchanged, gives
every newly reachable sum exactly one representation, and keeps the stage
collision-free at order h-1.  Requiring |c| to also clear a sparsity floor
keeps every stage inside the budget.

``verify`` re-derives every claim from the step records and the final set
using only the counters in ``counting``; it never trusts the builder's
in-flight bookkeeping.  All checks are run and collected, none short-circuit,
so a certificate always names every failure it finds.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .counting import (FiniteSet, RepHistogram, count_unordered, histogram,
                       is_sidon_fast, sidon_collision)
from .streams import RealizationStream, growth_bound, realization_prefix
from .targets import (SparsityBound, TargetFunction, render_count,
                      sparsity_threshold)

SEED, EXTEND, SKIP = "seed", "extend", "skip"
MINIMAL, SEEDED_RANDOM = "minimal", "seeded-random"


class InvariantViolation(RuntimeError):
    """A stage failed a property the construction is supposed to guarantee."""

    def __init__(self, check: str, witness):
        super().__init__(f"{check} violated (witness: {witness})")
        self.check = check
        self.witness = witness


@dataclass(frozen=True)
class SelectionPolicy:
    """How to pick each stage's spread above its mandatory minimum.

    ``minimal`` always takes the least admissible magnitude and is fully
    deterministic.  ``seeded-random`` adds a surplus drawn uniformly from
    [0, slack_bound] per extension; a fixed seed makes the whole build
    reproducible.
    """

    mode: str = MINIMAL
    seed: int | None = None
    slack_bound: int = 50

    def __post_init__(self):
        if self.mode not in (MINIMAL, SEEDED_RANDOM):
            raise ValueError(f"unknown policy mode {self.mode!r}")
        if self.mode == SEEDED_RANDOM:
            if self.seed is None:
                raise ValueError("seeded-random policy needs a seed")
            if self.slack_bound < 1:
                raise ValueError("slack_bound must be >= 1")


@dataclass(frozen=True)
class BuildConfig:
    target: TargetFunction
    order: int
    sparsity: SparsityBound
    policy: SelectionPolicy = SelectionPolicy()
    max_steps: int = 10

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("order must be >= 2")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


@dataclass(frozen=True)
class StepRecord:
    """One stage transition, replayable without builder state."""

    k: int
    value: int                # stream value due at this stage
    decision: str             # seed | extend | skip
    spread: int | None        # extension constant c, None on skip
    radius: int | None        # max magnitude the spread had to clear, None on skip
    floor: int                # sparsity floor on |c| at this stage index
    added: tuple[int, ...]    # adjoined elements in formula order, () on skip


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class Certificate:
    """Replayable record of a build and its independent verification."""

    config: BuildConfig
    final_set: FiniteSet
    history: tuple[StepRecord, ...]
    checks: tuple[CheckResult, ...]

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_checks(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


class BuildState:
    """Mutable in-flight construction state; single owner, not shareable."""

    def __init__(self, config: BuildConfig):
        self.config = config
        self.k = 0
        self.stage = FiniteSet()
        self.history: list[StepRecord] = []
        self.stream = RealizationStream(config.target)
        self.value_counts: Counter[int] = Counter()
        self.rng = (random.Random(config.policy.seed)
                    if config.policy.mode == SEEDED_RANDOM else None)
        self._stage_hist: RepHistogram | None = None


def adjoined_pair(order: int, spread: int, value: int) -> tuple[int, int]:
    """Elements an extension adds: {-spread, (order-1)*spread + value}."""
    return (-spread, (order - 1) * spread + value)


def choose_spread(order: int, value: int, radius: int, floor: int,
                  policy: SelectionPolicy, rng: random.Random | None = None) -> int:
    """Extension constant for one stage.

    The sign follows the value (nonnegative takes the positive branch); the
    magnitude is the least admissible one plus any policy surplus.
    Admissible means strictly above 2 * order * radius, at least the
    sparsity floor, and never below 1 (covering the radius-0 seed case).
    """
    if radius < 0 or floor < 0:
        raise ValueError("radius and floor must be >= 0")
    magnitude = max(2 * order * radius + 1, floor, 1)
    if policy.mode == SEEDED_RANDOM:
        if rng is None:
            raise ValueError("seeded-random policy needs its RNG")
        magnitude += rng.randint(0, policy.slack_bound)
    return magnitude if value >= 0 else -magnitude


def seed_stage(config: BuildConfig) -> BuildState:
    """First stage: one pair whose order-h sums are all distinct and include
    the stream's first value exactly once.

    The spread must clear the target's zero-free radius, which pushes every
    sum except the stream value out to where the target is positive.
    """
    state = BuildState(config)
    value = state.stream.take().value
    radius = config.target.zero_free_radius()
    floor = sparsity_threshold(config.sparsity, 1)
    spread = choose_spread(config.order, value, radius, floor, config.policy, state.rng)
    added = adjoined_pair(config.order, spread, value)
    stage = FiniteSet.of(added)
    if len(stage) != 2:
        raise InvariantViolation("separation", spread)
    hist = histogram(stage, config.order)
    for n, c in hist.counts.items():
        if c != 1:
            raise InvariantViolation("seed_sums_unique", n)
        if config.target.eval(n) < 1:
            raise InvariantViolation("counts_within_target", n)
    state.k = 1
    state.stage = stage
    state._stage_hist = hist
    state.value_counts[value] += 1
    state.history.append(StepRecord(1, value, SEED, spread, radius, floor, added))
    return state


def step(state: BuildState) -> BuildState:
    """Advance one stage.

    Skip when the stream value is already represented as often as it has
    now occurred; otherwise extend by a fresh pair and re-check all stage
    invariants from scratch.  Raises InvariantViolation on any post-check
    failure, which indicates a bug, not bad input: admissible spreads make
    the checks provably pass.
    """
    config = state.config
    if state.k < 1:
        raise ValueError("seed_stage must run first")
    h = config.order
    k = state.k + 1
    value = state.stream.take().value
    state.value_counts[value] += 1
    need = state.value_counts[value]
    have = count_unordered(state.stage, h, value)
    floor = sparsity_threshold(config.sparsity, k)
    if have >= need:
        state.k = k
        state.history.append(StepRecord(k, value, SKIP, None, None, floor, ()))
        return state
    if have != need - 1:
        raise InvariantViolation("counts_cover_stream", value)
    radius = max(state.stage.max_abs(), abs(value))
    spread = choose_spread(h, value, radius, floor, config.policy, state.rng)
    added = adjoined_pair(h, spread, value)
    stage = state.stage.union(added)
    if len(stage) != len(state.stage) + 2:
        raise InvariantViolation("separation", spread)
    prev_hist = state._stage_hist if state._stage_hist is not None else histogram(state.stage, h)
    hist = histogram(stage, h)
    problem = _increment_failure(prev_hist, hist, value)
    if problem is not None:
        raise InvariantViolation("increment_replay", problem)
    _check_stage(config, stage, hist, state.value_counts, k)
    state.k = k
    state.stage = stage
    state._stage_hist = hist
    state.history.append(StepRecord(k, value, EXTEND, spread, radius, floor, added))
    return state


def build(config: BuildConfig) -> tuple[FiniteSet, Certificate]:
    """Run the construction for max_steps stages, then verify independently."""
    state = seed_stage(config)
    while state.k < config.max_steps:
        step(state)
    certificate = verify(state.stage, tuple(state.history), config)
    return state.stage, certificate


def _increment_failure(prev: RepHistogram, new: RepHistogram, value: int) -> str | None:
    """Check the single-increment contract between consecutive stages:
    +1 at the stream value, identical elsewhere on the old sumset, count 1
    on every newly reachable sum."""
    if new.count(value) != prev.count(value) + 1:
        return f"count at {value}: {prev.count(value)} -> {new.count(value)}"
    for n, c in prev.counts.items():
        if n != value and new.count(n) != c:
            return f"count at {n} changed: {c} -> {new.count(n)}"
    for n, c in new.counts.items():
        if n != value and c != 1 and n not in prev.counts:
            return f"new sum {n} has count {c}"
    return None


def _check_stage(config: BuildConfig, stage: FiniteSet, hist: RepHistogram,
                 value_counts: Counter, k: int) -> None:
    for n, c in hist.counts.items():
        if c > config.target.eval(n):
            raise InvariantViolation("counts_within_target", n)
    for value, needed in value_counts.items():
        if hist.count(value) < needed:
            raise InvariantViolation("counts_cover_stream", value)
    if len(stage) > 2 * k:
        raise InvariantViolation("stage_size_bound", k)
    if not is_sidon_fast(stage, config.order - 1):
        raise InvariantViolation("sidon_suborder", k)


def verify(final_set: FiniteSet, history, config: BuildConfig) -> Certificate:
    """Replay a build from its step records and final set.

    Uses only the brute-force counters; collects every failure instead of
    raising.  The step records alone determine every stage, so a textual
    certificate can be re-verified with no access to the builder.
    """
    records: tuple[StepRecord, ...] = tuple(history)
    target, h, phi = config.target, config.order, config.sparsity
    checks: list[CheckResult] = []

    def report(name: str, failure: str | None) -> None:
        checks.append(CheckResult(name, failure is None, failure or ""))

    report("history_shape", _shape_failure(records, h))

    # Recorded values must be exactly the canonical stream prefix.
    failure = None
    expected = realization_prefix(target, len(records))
    for rec, want in zip(records, expected):
        if rec.value != want:
            failure = f"k={rec.k} value={rec.value} expected={want}"
            break
    report("stream_match", failure)

    failure = None
    zeros = target.zero_count()
    for pos, rec in enumerate(records, 1):
        if abs(rec.value) > growth_bound(pos, zeros):
            failure = f"k={pos} value={rec.value}"
            break
    report("growth_bound", failure)

    stages = _replay_stages(records)
    replayed = stages[-1] if stages else FiniteSet()
    report("set_match",
           None if replayed == final_set
           else f"replayed {list(replayed.elements)} vs recorded {list(final_set.elements)}")

    failure = "no first stage"
    if stages and len(stages[0]):
        failure = None
        for n, c in histogram(stages[0], h).counts.items():
            if c != 1:
                failure = f"n={n} count={c}"
                break
    report("seed_sums_unique", failure)

    failure = None
    prev_hist: RepHistogram | None = None
    for rec, stage in zip(records, stages):
        if rec.decision == SEED:
            prev_hist = histogram(stage, h) if len(stage) else None
        elif rec.decision == EXTEND:
            if prev_hist is None:
                failure = f"k={rec.k} extend before seed"
                break
            new_hist = histogram(stage, h)
            problem = _increment_failure(prev_hist, new_hist, rec.value)
            if problem is not None:
                failure = f"k={rec.k} {problem}"
                break
            prev_hist = new_hist
    report("increment_replay", failure)

    failure = None
    previous = FiniteSet()
    for rec, stage in zip(records, stages):
        if rec.decision == SKIP:
            previous = stage
            continue
        if rec.spread is None or rec.radius is None:
            failure = f"k={rec.k} missing spread or radius"
            break
        if rec.decision == EXTEND and not len(previous):
            failure = f"k={rec.k} extend before seed"
            break
        expected_radius = (target.zero_free_radius() if rec.decision == SEED
                           else max(previous.max_abs(), abs(rec.value)))
        magnitude = abs(rec.spread)
        if rec.radius != expected_radius:
            failure = f"k={rec.k} radius {rec.radius} expected {expected_radius}"
        elif rec.floor != sparsity_threshold(phi, rec.k):
            failure = f"k={rec.k} floor {rec.floor} expected {sparsity_threshold(phi, rec.k)}"
        elif (rec.spread > 0) != (rec.value >= 0):
            failure = f"k={rec.k} spread sign does not follow value"
        elif magnitude <= 2 * h * rec.radius or magnitude < max(rec.floor, 1):
            failure = f"k={rec.k} spread {rec.spread} below bound"
        elif min(abs(a) for a in rec.added) <= rec.radius:
            failure = f"k={rec.k} added pair inside radius {rec.radius}"
        if failure is not None:
            break
        previous = stage
    report("separation", failure)

    failure = None
    if len(final_set):
        for n, c in histogram(final_set, h).counts.items():
            if c > target.eval(n):
                failure = f"n={n} count={c} target={render_count(target.eval(n))}"
                break
    report("counts_within_target", failure)

    failure = None
    multiplicity = Counter(rec.value for rec in records)
    for value in sorted(multiplicity):
        got = count_unordered(final_set, h, value) if len(final_set) else 0
        if got < multiplicity[value]:
            failure = f"n={value} count={got} needed={multiplicity[value]}"
            break
    report("counts_cover_stream", failure)

    failure = None
    for rec, stage in zip(records, stages):
        if len(stage) > 2 * rec.k:
            failure = f"k={rec.k} size={len(stage)}"
            break
    if failure is None and records and len(final_set) > 2 * records[-1].k:
        failure = f"final size={len(final_set)}"
    report("stage_size_bound", failure)

    collision = sidon_collision(final_set, h - 1) if len(final_set) else None
    report("sidon_suborder", None if collision is None else f"n={collision}")

    probes = {0}
    for rec in records:
        if rec.spread is not None:
            m = abs(rec.spread)
            probes.update((m - 1, m, m + 1))
    if len(final_set):
        probes.add(final_set.max_abs())
    failure = None
    for rec, stage in zip(records, stages):
        for x in sorted(p for p in probes if p >= 0):
            inside = stage.count_between(-x, x)
            if not phi.at_least(x, inside):
                failure = f"k={rec.k} x={x} count={inside}"
                break
        if failure is not None:
            break
    report("sparsity", failure)

    return Certificate(config, final_set, records, tuple(checks))


def _shape_failure(records: tuple[StepRecord, ...], h: int) -> str | None:
    if not records:
        return "no step records"
    for pos, rec in enumerate(records, 1):
        if rec.k != pos:
            return f"k={rec.k} at position {pos}"
        if pos == 1 and rec.decision != SEED:
            return "first record must be seed"
        if pos > 1 and rec.decision not in (EXTEND, SKIP):
            return f"k={rec.k} decision={rec.decision!r}"
        if rec.decision == SKIP:
            if rec.added or rec.spread is not None or rec.radius is not None:
                return f"k={rec.k} skip with extension data"
        else:
            if rec.spread is None or rec.radius is None:
                return f"k={rec.k} missing spread or radius"
            if rec.added != adjoined_pair(h, rec.spread, rec.value):
                return f"k={rec.k} added pair mismatch"
    return None


def _replay_stages(records: tuple[StepRecord, ...]) -> list[FiniteSet]:
    stages = []
    current = FiniteSet()
    for rec in records:
        if rec.added:
            current = current.union(rec.added)
        stages.append(current)
    return stages
