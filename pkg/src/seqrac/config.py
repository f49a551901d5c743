"""
Experiment configuration files (YAML).

Schema (every key optional except ``schedule``; unknown keys are errors)::

    initial_state: [-1, -1, -1]        # (t11, t22, t33); default singlet
    schedule:                          # explicit list, one entry per pair ...
      - {p: 1, lambda: 0.34, eta: 0.34}
      - {p: 1, lambda: 1, eta: 1}
    # ... or a broadcast shorthand:
    # schedule: {pairs: 13, p: 1, lambda: 0.34, eta: 0.34}
    significance_threshold: 0.52
    output_format: csv                 # csv | json-lines
    precision: 3                       # decimals for reported P_min
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

import yaml

from .engine import PairConfig
from .errors import ConfigError, RacError
from .states import BellDiagonalState
from .tolerances import DEFAULT_PRECISION, DEFAULT_SIGNIFICANCE

OUTPUT_FORMATS = ("csv", "json-lines")
TOP_LEVEL_KEYS = {"initial_state", "schedule", "significance_threshold", "output_format", "precision"}
PAIR_KEYS = {"p", "lambda", "eta"}
BROADCAST_KEYS = PAIR_KEYS | {"pairs"}


@dataclass(frozen=True)
class ExperimentConfig:
    schedule: tuple[PairConfig, ...]
    initial_state: BellDiagonalState = field(default_factory=BellDiagonalState.singlet)
    significance_threshold: float = DEFAULT_SIGNIFICANCE
    output_format: str = "csv"
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if not self.schedule:
            raise ConfigError("schedule must contain at least one pair")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output_format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if not isinstance(self.precision, int) or isinstance(self.precision, bool) or self.precision < 0:
            raise ConfigError(f"precision must be a non-negative integer, got {self.precision!r}")

    def with_schedule(self, schedule) -> "ExperimentConfig":
        return replace(self, schedule=tuple(schedule))


def _line_map(node, path=(), out=None) -> dict:
    """Map key paths to 1-based source lines for diagnostics."""
    if out is None:
        out = {}
    if node is None:
        return out
    out[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            key = k.value
            out[path + (key,)] = k.start_mark.line + 1
            _line_map(v, path + (key,), out)
    elif isinstance(node, yaml.SequenceNode):
        for i, v in enumerate(node.value):
            _line_map(v, path + (i,), out)
    return out


class _Context:
    def __init__(self, source: str, lines: dict):
        self.source = source
        self.lines = lines

    def error(self, path, message) -> ConfigError:
        where = ".".join(f"[{p}]" if isinstance(p, int) else str(p) for p in path).replace(".[", "[")
        line = None
        for cut in range(len(path), -1, -1):
            line = self.lines.get(tuple(path[:cut]))
            if line is not None:
                break
        loc = f"{self.source}:{line}" if line is not None else self.source
        return ConfigError(f"{loc}: {where or '<root>'}: {message}")

    def number(self, value, path) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.error(path, f"expected a number, got {value!r}")
        return float(value)


def _pair(ctx: _Context, entry, path, allowed) -> dict:
    if not isinstance(entry, dict):
        raise ctx.error(path, f"expected a mapping with keys {sorted(allowed)}, got {entry!r}")
    unknown = set(entry) - allowed
    if unknown:
        raise ctx.error(path + (sorted(unknown)[0],), f"unknown key; allowed keys are {sorted(allowed)}")
    missing = {"lambda", "eta"} - set(entry)
    if missing:
        raise ctx.error(path, f"missing required key(s) {sorted(missing)}")
    return entry


def _pair_config(ctx: _Context, entry, path) -> PairConfig:
    try:
        return PairConfig(
            task_mix_p=ctx.number(entry.get("p", 1.0), path + ("p",)),
            lam=ctx.number(entry["lambda"], path + ("lambda",)),
            eta=ctx.number(entry["eta"], path + ("eta",)),
        )
    except ConfigError:
        raise
    except RacError as exc:
        raise ctx.error(path, str(exc)) from None


def parse_config(text: str, source: str = "<config>") -> ExperimentConfig:
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        line = f":{mark.line + 1}" if mark is not None else ""
        raise ConfigError(f"{source}{line}: {exc.problem}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"{source}: {exc}") from None

    ctx = _Context(source, _line_map(node))
    if not isinstance(data, dict):
        raise ctx.error((), "top level must be a mapping")
    unknown = set(data) - TOP_LEVEL_KEYS
    if unknown:
        key = sorted(unknown)[0]
        raise ctx.error((key,), f"unknown key; allowed keys are {sorted(TOP_LEVEL_KEYS)}")
    if "schedule" not in data:
        raise ctx.error((), "missing required key 'schedule'")

    kwargs = {}
    if "initial_state" in data:
        raw = data["initial_state"]
        if isinstance(raw, dict):
            if set(raw) != {"t11", "t22", "t33"}:
                raise ctx.error(("initial_state",), "mapping form needs exactly t11, t22, t33")
            raw = [raw["t11"], raw["t22"], raw["t33"]]
        if not isinstance(raw, list) or len(raw) != 3:
            raise ctx.error(("initial_state",), "expected [t11, t22, t33]")
        t = [ctx.number(v, ("initial_state", i)) for i, v in enumerate(raw)]
        try:
            kwargs["initial_state"] = BellDiagonalState(*t)
        except RacError as exc:
            raise ctx.error(("initial_state",), str(exc)) from None

    sched = data["schedule"]
    if isinstance(sched, dict):
        _pair(ctx, sched, ("schedule",), BROADCAST_KEYS)
        pairs = sched.get("pairs")
        if isinstance(pairs, bool) or not isinstance(pairs, int) or pairs < 1:
            raise ctx.error(("schedule", "pairs"), f"expected a positive integer, got {pairs!r}")
        kwargs["schedule"] = (_pair_config(ctx, sched, ("schedule",)),) * pairs
    elif isinstance(sched, list):
        if not sched:
            raise ctx.error(("schedule",), "schedule must contain at least one pair")
        kwargs["schedule"] = tuple(
            _pair_config(ctx, _pair(ctx, e, ("schedule", i), PAIR_KEYS), ("schedule", i))
            for i, e in enumerate(sched)
        )
    else:
        raise ctx.error(("schedule",), "expected a list of pairs or a broadcast mapping")

    if "significance_threshold" in data:
        kwargs["significance_threshold"] = ctx.number(
            data["significance_threshold"], ("significance_threshold",)
        )
    if "output_format" in data:
        kwargs["output_format"] = data["output_format"]
    if "precision" in data:
        kwargs["precision"] = data["precision"]
    try:
        return ExperimentConfig(**kwargs)
    except ConfigError as exc:
        key = next((k for k in ("output_format", "precision") if k in str(exc)), None)
        raise ctx.error((key,) if key else (), str(exc)) from None


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from None
    return parse_config(text, source=str(path))
