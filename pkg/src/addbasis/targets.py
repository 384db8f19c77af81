"""Finitely-described target functions and sparsity budgets.

A target assigns to every integer a required representation count: explicit
values on a finite window of integers, one shared default everywhere else.
The default must be positive, so only finitely many integers may be assigned
count zero.  A count is a nonnegative int or INFINITE; INFINITE is a genuine
infinity under comparison, never a large stand-in integer.

A sparsity budget is a monotone nondecreasing, unbounded function on the
nonnegative integers, restricted to four parametric families so that "first
x where the budget reaches b" is decidable by search.  Every budget
comparison is carried out in exact rational arithmetic.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

INFINITE = math.inf

# A required count: a nonnegative int, or INFINITE.
Count = int | float

PHI_FAMILIES = ("affine", "power", "log", "table")

# Keys a build config may carry beyond the target/budget description.
BUILDER_KEYS = ("h", "steps", "policy", "seed", "slack")


class ConfigError(ValueError):
    """Malformed config text or an invalid parameter combination."""


def is_infinite(count: Count) -> bool:
    return count == INFINITE


def parse_count(text: str) -> Count:
    if text == "inf":
        return INFINITE
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"not a count: {text!r}") from None


def render_count(count: Count) -> str:
    return "inf" if is_infinite(count) else str(count)


def parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{what} must be an integer, got {text!r}") from None


def _validate_count(count: Count, minimum: int, what: str) -> None:
    if is_infinite(count):
        return
    if not isinstance(count, int) or isinstance(count, bool) or count < minimum:
        raise ConfigError(f"{what} must be an integer >= {minimum} or inf, got {count!r}")


@dataclass(frozen=True)
class TargetFunction:
    """Required representation count for every integer.

    ``window_values`` covers exactly the integers in ``[window_lo,
    window_hi]`` (the window is empty when ``window_lo > window_hi``);
    everything outside the window gets ``default``.  Window entries missing
    from the supplied mapping are filled with the default.  All instances
    are immutable and safe to share.
    """

    window_lo: int = 0
    window_hi: int = -1
    window_values: Mapping[int, Count] = field(default_factory=dict)
    default: Count = 1

    def __post_init__(self):
        _validate_count(self.default, 1, "default")
        if self.window_lo > self.window_hi:
            if self.window_values:
                raise ConfigError("window values supplied without a window")
            object.__setattr__(self, "window_lo", 0)
            object.__setattr__(self, "window_hi", -1)
            object.__setattr__(self, "window_values", {})
            return
        stray = [n for n in self.window_values
                 if not self.window_lo <= n <= self.window_hi]
        if stray:
            raise ConfigError(
                f"window values outside [{self.window_lo}, {self.window_hi}]: {sorted(stray)}")
        values: dict[int, Count] = {}
        for n in range(self.window_lo, self.window_hi + 1):
            v = self.window_values.get(n, self.default)
            _validate_count(v, 0, f"value at {n}")
            values[n] = v
        object.__setattr__(self, "window_values", values)

    @classmethod
    def constant(cls, count: Count) -> "TargetFunction":
        return cls(default=count)

    @classmethod
    def from_values(cls, values: Mapping[int, Count], default: Count = 1) -> "TargetFunction":
        """Window spanning the given keys, default elsewhere."""
        if not values:
            return cls(default=default)
        return cls(min(values), max(values), dict(values), default)

    def eval(self, n: int) -> Count:
        if self.window_lo <= n <= self.window_hi:
            return self.window_values[n]
        return self.default

    def zero_count(self) -> int:
        """Number of integers whose required count is zero."""
        return sum(1 for v in self.window_values.values() if v == 0)

    def zero_free_radius(self) -> int:
        """Smallest d >= 0 with a positive required count at every |n| >= d."""
        zeros = [n for n, v in self.window_values.items() if v == 0]
        if not zeros:
            return 0
        return 1 + max(abs(n) for n in zeros)


@dataclass(frozen=True)
class SparsityBound:
    """Monotone nondecreasing budget phi with phi(x) -> infinity.

    Families (parameters are exact rationals):

      affine  [a] or [a, b]     phi(x) = a*x + b            a > 0, b >= 0
      power   [a, p]            phi(x) = a * x**p           a > 0, p > 0
      log     [a] or [a, b]     phi(x) = a*log2(1+x) + b    a > 0, b >= 0
      table   [x1,v1,...,xm,vm] step function, phi(x) = vi on [xi, x(i+1));
              beyond xm the last value grows linearly: phi(x) = vm + (x - xm).
              Requires x1 = 0, xi strictly increasing, vi nondecreasing >= 0.

    Each family is unbounded by construction, so thresholds always exist.
    """

    family: str
    params: tuple[Fraction, ...]

    def __post_init__(self):
        family = "log" if self.family == "log-scaled" else self.family
        params = tuple(Fraction(p) for p in self.params)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", params)
        if family == "affine":
            if len(params) not in (1, 2):
                raise ConfigError("affine budget takes [slope] or [slope, intercept]")
            slope, intercept = self._affine()
            if slope <= 0 or intercept < 0:
                raise ConfigError("affine budget needs slope > 0 and intercept >= 0")
        elif family == "power":
            if len(params) != 2:
                raise ConfigError("power budget takes [scale, exponent]")
            scale, exponent = params
            if scale <= 0 or exponent <= 0:
                raise ConfigError("power budget needs scale > 0 and exponent > 0")
        elif family == "log":
            if len(params) not in (1, 2):
                raise ConfigError("log budget takes [scale] or [scale, shift]")
            scale, shift = self._log()
            if scale <= 0 or shift < 0:
                raise ConfigError("log budget needs scale > 0 and shift >= 0")
        elif family == "table":
            if len(params) < 2 or len(params) % 2:
                raise ConfigError("table budget takes cut/value pairs")
            cuts, values = params[0::2], params[1::2]
            if cuts[0] != 0:
                raise ConfigError("table budget must start at x = 0")
            if any(cuts[i] >= cuts[i + 1] for i in range(len(cuts) - 1)):
                raise ConfigError("table cuts must be strictly increasing")
            if values[0] < 0 or any(values[i] > values[i + 1] for i in range(len(values) - 1)):
                raise ConfigError("table values must be nonnegative and nondecreasing")
        else:
            raise ConfigError(f"unknown budget family {self.family!r}")

    def _affine(self) -> tuple[Fraction, Fraction]:
        return self.params[0], (self.params[1] if len(self.params) == 2 else Fraction(0))

    def _log(self) -> tuple[Fraction, Fraction]:
        return self.params[0], (self.params[1] if len(self.params) == 2 else Fraction(0))

    def at_least(self, x: int, bound: int | Fraction) -> bool:
        """Exact test of phi(x) >= bound for integer x >= 0."""
        if x < 0:
            raise ValueError("budget domain is x >= 0")
        b = Fraction(bound)
        if self.family == "affine":
            slope, intercept = self._affine()
            return slope * x + intercept >= b
        if self.family == "power":
            scale, exponent = self.params
            rest = b / scale
            if rest <= 0:
                return True
            if x == 0:
                return False
            # x**p >= rest with p = pn/pd > 0, both sides positive
            return Fraction(x) ** exponent.numerator >= rest ** exponent.denominator
        if self.family == "log":
            scale, shift = self._log()
            rest = (b - shift) / scale
            if rest <= 0:
                return True
            # log2(1+x) >= rest  <=>  (1+x)**rd >= 2**rn
            return (1 + x) ** rest.denominator >= 2 ** rest.numerator
        cuts, values = self.params[0::2], self.params[1::2]
        if x >= cuts[-1]:
            return values[-1] + (x - cuts[-1]) >= b
        i = bisect_right(cuts, x) - 1
        return values[i] >= b

    def min_x_at_least(self, bound: int | Fraction) -> int:
        """Smallest integer x >= 0 with phi(x) >= bound."""
        if self.at_least(0, bound):
            return 0
        hi = 1
        while not self.at_least(hi, bound):
            hi *= 2
        lo = hi // 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.at_least(mid, bound):
                hi = mid
            else:
                lo = mid
        return hi


def sparsity_threshold(phi: SparsityBound, k: int) -> int:
    """Smallest x at which the budget admits 2*k elements within [-x, x]."""
    if k < 1:
        raise ValueError("stage index must be >= 1")
    return phi.min_x_at_least(2 * k)


@dataclass(frozen=True)
class ConfigDoc:
    """Parsed config text: target, optional budget, and leftover keys."""

    target: TargetFunction
    sparsity: SparsityBound | None
    extra: dict[str, str]


def parse_config(text: str, extra_keys: Iterable[str] = BUILDER_KEYS) -> ConfigDoc:
    """Parse ``key = value`` config text.

    Blank lines and ``#`` comments are skipped.  ``value`` lines carry two
    fields (``value = <n> <count|inf>``) and may repeat, one per window
    entry.  Keys in ``extra_keys`` are collected verbatim for the caller;
    anything else is rejected.
    """
    allowed_extra = set(extra_keys)
    window_lo: int | None = None
    window_hi: int | None = None
    default: Count = 1
    values: dict[int, Count] = {}
    phi_family: str | None = None
    phi_params: tuple[Fraction, ...] | None = None
    extra: dict[str, str] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition("=")
        if not sep:
            raise ConfigError(f"line {ln}: expected 'key = value', got {raw!r}")
        key, rest = key.strip(), rest.strip()
        if key == "window_lo":
            window_lo = parse_int(rest, "window_lo")
        elif key == "window_hi":
            window_hi = parse_int(rest, "window_hi")
        elif key == "value":
            parts = rest.split()
            if len(parts) != 2:
                raise ConfigError(f"line {ln}: value takes '<n> <count|inf>'")
            n = parse_int(parts[0], "value position")
            if n in values:
                raise ConfigError(f"line {ln}: duplicate value for {n}")
            values[n] = parse_count(parts[1])
        elif key == "default":
            default = parse_count(rest)
        elif key == "phi_family":
            phi_family = rest
        elif key == "phi_params":
            try:
                phi_params = tuple(Fraction(tok.strip()) for tok in rest.split(",") if tok.strip())
            except (ValueError, ZeroDivisionError):
                raise ConfigError(f"line {ln}: phi_params must be comma-separated rationals") from None
        elif key in allowed_extra:
            extra[key] = rest
        else:
            raise ConfigError(f"line {ln}: unknown key {key!r}")
    if (window_lo is None) != (window_hi is None):
        raise ConfigError("window_lo and window_hi must be given together")
    if window_lo is None:
        if values:
            raise ConfigError("value lines require window_lo/window_hi")
        target = TargetFunction(default=default)
    else:
        if window_lo > window_hi:
            raise ConfigError("window_lo must be <= window_hi")
        target = TargetFunction(window_lo, window_hi, values, default)
    sparsity = None
    if phi_family is not None or phi_params is not None:
        if phi_family is None or phi_params is None:
            raise ConfigError("phi_family and phi_params must be given together")
        sparsity = SparsityBound(phi_family, phi_params)
    return ConfigDoc(target, sparsity, extra)


def render_target_lines(target: TargetFunction) -> list[str]:
    """Canonical config lines for a target; parse_config inverts them."""
    lines = []
    if target.window_lo <= target.window_hi:
        lines.append(f"window_lo = {target.window_lo}")
        lines.append(f"window_hi = {target.window_hi}")
        for n in sorted(target.window_values):
            lines.append(f"value = {n} {render_count(target.window_values[n])}")
    lines.append(f"default = {render_count(target.default)}")
    return lines


def render_phi_lines(phi: SparsityBound) -> list[str]:
    params = ",".join(
        str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"
        for p in phi.params)
    return [f"phi_family = {phi.family}", f"phi_params = {params}"]
