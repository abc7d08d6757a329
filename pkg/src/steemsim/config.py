"""Scenario configuration: a flat key = value text format.

Real-valued keys accept plain decimals, scientific notation, or exact
fractions like ``3/432000`` (handy for parameters that are not round
decimals). ``steem_power`` takes either a single value applied to every
player or a comma-separated list of one value per player. Lines starting
with ``#`` and blank lines are ignored.

Recognized keys::

    num_players num_rounds num_posts attention_span   (integers)
    vote_scale vote_offset regen                      (reals)
    seed                                              (uint64)
    steem_power                                       (real or list)
    honest_mode                                       (full_power_only | eager)
    ring_size target_post                             (optional selfish block)
    sample_every                                      (optional int)
    output_path                                       (optional string)

A selfish block exists exactly when ``ring_size`` is present; ``target_post``
then defaults to the last post id. ``sample_every`` defaults to
max(1, num_rounds // 500).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ConfigError, SystemParams
from .strategies import HonestMode

_PARAM_INT_KEYS = ("num_players", "num_rounds", "num_posts", "attention_span")
_PARAM_REAL_KEYS = ("vote_scale", "vote_offset", "regen")
_KNOWN_KEYS = frozenset(
    _PARAM_INT_KEYS
    + _PARAM_REAL_KEYS
    + (
        "seed",
        "steem_power",
        "honest_mode",
        "ring_size",
        "target_post",
        "sample_every",
        "output_path",
    )
)


@dataclass(frozen=True)
class SelfishConfig:
    ring_size: int
    target_post: int


@dataclass(frozen=True)
class ScenarioConfig:
    params: SystemParams
    seed: int
    steem_power: "float | tuple[float, ...]" = 1.0
    honest_mode: HonestMode = HonestMode.FULL_POWER_ONLY
    selfish: SelfishConfig | None = None
    sample_every: int = 1
    output_path: str = "out"

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in an unsigned 64-bit integer")
        if isinstance(self.steem_power, tuple):
            if len(self.steem_power) != self.params.num_players:
                raise ConfigError("steem_power list must have one value per player")
            if any(sp < 0 for sp in self.steem_power):
                raise ConfigError("steem powers must be >= 0")
        elif self.steem_power < 0:
            raise ConfigError("steem_power must be >= 0")
        if self.selfish is not None:
            if not 0 <= self.selfish.ring_size <= self.params.num_players:
                raise ConfigError("ring_size must be in [0, num_players]")
            if not 0 <= self.selfish.target_post < self.params.num_posts:
                raise ConfigError("target_post must be a valid post id")
        if self.sample_every < 1:
            raise ConfigError("sample_every must be >= 1")

    def steem_powers(self) -> list[float]:
        """Materialized per-player Steem Power list."""
        if isinstance(self.steem_power, tuple):
            return list(self.steem_power)
        return [float(self.steem_power)] * self.params.num_players


def default_sample_every(num_rounds: int) -> int:
    return max(1, num_rounds // 500)


def _parse_real(token: str, key: str) -> float:
    token = token.strip()
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return int(num.strip()) / int(den.strip())
        return float(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad real value for {key}: {token!r}") from exc


def _parse_int(token: str, key: str) -> int:
    try:
        return int(token.strip())
    except ValueError as exc:
        raise ConfigError(f"bad integer value for {key}: {token!r}") from exc


def parse_config(text: str) -> ScenarioConfig:
    """Parse configuration text into a validated ScenarioConfig."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = stripped.split("=", 1)
        key = key.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value.split("#", 1)[0].strip()

    missing = [k for k in _PARAM_INT_KEYS + _PARAM_REAL_KEYS + ("seed",) if k not in raw]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")

    params = SystemParams(
        num_players=_parse_int(raw["num_players"], "num_players"),
        num_rounds=_parse_int(raw["num_rounds"], "num_rounds"),
        num_posts=_parse_int(raw["num_posts"], "num_posts"),
        attention_span=_parse_int(raw["attention_span"], "attention_span"),
        vote_scale=_parse_real(raw["vote_scale"], "vote_scale"),
        vote_offset=_parse_real(raw["vote_offset"], "vote_offset"),
        regen=_parse_real(raw["regen"], "regen"),
    )

    steem_power: float | tuple[float, ...] = 1.0
    if "steem_power" in raw:
        if "," in raw["steem_power"]:
            steem_power = tuple(
                _parse_real(part, "steem_power")
                for part in raw["steem_power"].split(",")
                if part.strip()
            )
        else:
            steem_power = _parse_real(raw["steem_power"], "steem_power")

    honest_mode = HonestMode.FULL_POWER_ONLY
    if "honest_mode" in raw:
        try:
            honest_mode = HonestMode(raw["honest_mode"])
        except ValueError as exc:
            raise ConfigError(f"bad honest_mode: {raw['honest_mode']!r}") from exc

    selfish = None
    if "ring_size" in raw:
        target = (
            _parse_int(raw["target_post"], "target_post")
            if "target_post" in raw
            else params.num_posts - 1
        )
        selfish = SelfishConfig(_parse_int(raw["ring_size"], "ring_size"), target)
    elif "target_post" in raw:
        raise ConfigError("target_post requires ring_size")

    sample_every = (
        _parse_int(raw["sample_every"], "sample_every")
        if "sample_every" in raw
        else default_sample_every(params.num_rounds)
    )

    return ScenarioConfig(
        params=params,
        seed=_parse_int(raw["seed"], "seed"),
        steem_power=steem_power,
        honest_mode=honest_mode,
        selfish=selfish,
        sample_every=sample_every,
        output_path=raw.get("output_path", "out"),
    )


def format_config(config: ScenarioConfig) -> str:
    """Render a config as text that parses back to an equal ScenarioConfig."""
    p = config.params
    lines = [
        f"num_players = {p.num_players}",
        f"num_rounds = {p.num_rounds}",
        f"num_posts = {p.num_posts}",
        f"attention_span = {p.attention_span}",
        f"vote_scale = {p.vote_scale!r}",
        f"vote_offset = {p.vote_offset!r}",
        f"regen = {p.regen!r}",
        f"seed = {config.seed}",
    ]
    if isinstance(config.steem_power, tuple):
        rendered = ", ".join(repr(sp) for sp in config.steem_power)
        if len(config.steem_power) == 1:
            rendered += ","  # keep a 1-element list distinguishable from a scalar
        lines.append("steem_power = " + rendered)
    else:
        lines.append(f"steem_power = {config.steem_power!r}")
    lines.append(f"honest_mode = {config.honest_mode.value}")
    if config.selfish is not None:
        lines.append(f"ring_size = {config.selfish.ring_size}")
        lines.append(f"target_post = {config.selfish.target_post}")
    lines.append(f"sample_every = {config.sample_every}")
    lines.append(f"output_path = {config.output_path}")
    return "\n".join(lines) + "\n"
