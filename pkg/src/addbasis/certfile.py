"""Text round trip for build certificates.

Layout: ``key = value`` header lines carrying the full build config, one
tab-separated ``step`` line per stage (k, value, decision, spread, radius,
floor), a ``set`` line with the final elements space-separated, and one
``check`` line per verification result.  Integers are decimal with no width
limit; the infinity literal is ``inf``; encoding is ASCII with LF endings.

A verifier reconstructs every stage from the step lines alone and re-runs
all checks; stored check lines are informational and ignored on re-read.
"""

from __future__ import annotations

from .construct import (EXTEND, SEED, SKIP, BuildConfig, Certificate,
                        SelectionPolicy, StepRecord, adjoined_pair)
from .counting import FiniteSet
from .targets import (ConfigError, ConfigDoc, parse_config, parse_int,
                      render_phi_lines, render_target_lines)


def render_certificate(cert: Certificate) -> str:
    cfg = cert.config
    lines = [
        f"h = {cfg.order}",
        f"steps = {cfg.max_steps}",
        f"policy = {cfg.policy.mode}",
    ]
    if cfg.policy.mode == "seeded-random":
        lines.append(f"seed = {cfg.policy.seed}")
        lines.append(f"slack = {cfg.policy.slack_bound}")
    lines.extend(render_target_lines(cfg.target))
    lines.extend(render_phi_lines(cfg.sparsity))
    for rec in cert.history:
        lines.append("\t".join((
            "step", str(rec.k), str(rec.value), rec.decision,
            "-" if rec.spread is None else str(rec.spread),
            "-" if rec.radius is None else str(rec.radius),
            str(rec.floor),
        )))
    lines.append("set\t" + " ".join(str(a) for a in cert.final_set))
    for check in cert.checks:
        lines.append("\t".join((
            "check", check.name, "pass" if check.passed else "fail",
            check.witness or "-",
        )))
    return "\n".join(lines) + "\n"


def build_config_from_doc(doc: ConfigDoc) -> BuildConfig:
    """Assemble a BuildConfig from parsed config text."""
    extra = doc.extra
    if "h" not in extra:
        raise ConfigError("missing h")
    order = parse_int(extra["h"], "h")
    if order < 2:
        raise ConfigError("h must be >= 2")
    if doc.sparsity is None:
        raise ConfigError("missing phi_family/phi_params")
    steps = parse_int(extra.get("steps", "10"), "steps")
    mode = extra.get("policy", "minimal")
    seed = parse_int(extra["seed"], "seed") if "seed" in extra else None
    slack = parse_int(extra["slack"], "slack") if "slack" in extra else 50
    try:
        policy = SelectionPolicy(mode, seed, slack)
        return BuildConfig(doc.target, order, doc.sparsity, policy, steps)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def parse_certificate(text: str) -> tuple[BuildConfig, tuple[StepRecord, ...], FiniteSet]:
    """Rebuild (config, history, final set) from certificate text.

    Structural problems raise ConfigError; mathematical mismatches are the
    verifier's business, not the parser's.
    """
    header: list[str] = []
    step_rows: list[list[str]] = []
    set_row: list[str] | None = None
    for raw in text.splitlines():
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = line.split("\t")
        tag = fields[0]
        if tag == "step":
            step_rows.append(fields)
        elif tag == "set":
            if set_row is not None:
                raise ConfigError("duplicate set line")
            set_row = fields
        elif tag == "check":
            continue
        else:
            header.append(line)
    config = build_config_from_doc(parse_config("\n".join(header)))
    history = tuple(_parse_step(fields, config.order) for fields in step_rows)
    if set_row is None:
        raise ConfigError("certificate lacks a set line")
    if len(set_row) != 2:
        raise ConfigError("malformed set line")
    tokens = set_row[1].split()
    final_set = FiniteSet.of(parse_int(tok, "set element") for tok in tokens)
    return config, history, final_set


def _parse_step(fields: list[str], order: int) -> StepRecord:
    if len(fields) != 7:
        raise ConfigError(f"malformed step line: {fields!r}")
    _, k_s, value_s, decision, spread_s, radius_s, floor_s = fields
    k = parse_int(k_s, "step k")
    value = parse_int(value_s, "step value")
    floor = parse_int(floor_s, "step floor")
    if decision not in (SEED, EXTEND, SKIP):
        raise ConfigError(f"unknown decision {decision!r}")
    spread = None if spread_s == "-" else parse_int(spread_s, "step spread")
    radius = None if radius_s == "-" else parse_int(radius_s, "step radius")
    if decision == SKIP:
        added: tuple[int, ...] = ()
    else:
        if spread is None:
            raise ConfigError(f"step {k}: {decision} needs a spread")
        added = adjoined_pair(order, spread, value)
    return StepRecord(k, value, decision, spread, radius, floor, added)
