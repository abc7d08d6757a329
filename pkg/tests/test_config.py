import pytest

from steemsim.config import (
    ScenarioConfig,
    SelfishConfig,
    default_sample_every,
    format_config,
    parse_config,
)
from steemsim.core import ConfigError, SystemParams
from steemsim.strategies import HonestMode

MINIMAL = """
# comment line
num_players = 4
num_rounds = 100
num_posts = 6
attention_span = 3
vote_scale = 1/50
vote_offset = 1e-4
regen = 3/7200
seed = 42
"""


def test_parse_minimal_config():
    config = parse_config(MINIMAL)
    assert config.params == SystemParams(4, 100, 6, 3, 1 / 50, 1e-4, 3 / 7200)
    assert config.seed == 42
    assert config.steem_power == 1.0
    assert config.honest_mode is HonestMode.FULL_POWER_ONLY
    assert config.selfish is None
    assert config.sample_every == default_sample_every(100)
    assert config.output_path == "out"


def test_fractions_match_float_division():
    config = parse_config(MINIMAL)
    assert config.params.vote_scale == 1 / 50
    assert config.params.regen == 3 / 7200


def test_parse_full_config():
    text = MINIMAL + (
        "steem_power = 1.0, 2.0, 1.0, 1.0\n"
        "honest_mode = eager\n"
        "ring_size = 2\n"
        "target_post = 5\n"
        "sample_every = 10\n"
        "output_path = results/runs\n"
    )
    config = parse_config(text)
    assert config.steem_power == (1.0, 2.0, 1.0, 1.0)
    assert config.honest_mode is HonestMode.EAGER
    assert config.selfish == SelfishConfig(ring_size=2, target_post=5)
    assert config.sample_every == 10
    assert config.output_path == "results/runs"


def test_target_post_defaults_to_last_post():
    config = parse_config(MINIMAL + "ring_size = 1\n")
    assert config.selfish == SelfishConfig(ring_size=1, target_post=5)


def test_round_trip_through_format(tmp_path):
    for extra in (
        "",
        "ring_size = 2\n",
        "steem_power = 2.5\n",
        "steem_power = 1.0, 2.0, 0.5, 1.25\nhonest_mode = eager\n",
    ):
        config = parse_config(MINIMAL + extra)
        assert parse_config(format_config(config)) == config


def test_inline_comments_are_stripped():
    config = parse_config(MINIMAL.replace("seed = 42", "seed = 42   # the seed"))
    assert config.seed == 42


@pytest.mark.parametrize(
    "mutation",
    [
        lambda t: t.replace("seed = 42\n", ""),  # missing required key
        lambda t: t + "unknown_key = 1\n",
        lambda t: t + "seed = 43\n",  # duplicate
        lambda t: t.replace("vote_scale = 1/50", "vote_scale = abc"),
        lambda t: t.replace("vote_scale = 1/50", "vote_scale = 1/0"),
        lambda t: t + "target_post = 3\n",  # target without ring
        lambda t: t + "ring_size = 9\n",  # ring larger than player count
        lambda t: t + "ring_size = 1\ntarget_post = 6\n",  # target out of range
        lambda t: t + "honest_mode = sometimes\n",
        lambda t: t + "sample_every = 0\n",
        lambda t: t.replace("seed = 42", "seed = -1"),
        lambda t: t + "steem_power = 1.0, 2.0\n",  # wrong list length
        lambda t: t.replace("num_players = 4\n", "num_players 4\n"),
    ],
)
def test_invalid_configs_raise(mutation):
    with pytest.raises(ConfigError):
        parse_config(mutation(MINIMAL))


def test_default_sample_every_floor():
    assert default_sample_every(200_000) == 400
    assert default_sample_every(100) == 1
    assert default_sample_every(0) == 1


def test_single_element_steem_power_list_round_trips():
    params = SystemParams(1, 10, 2, 1, 0.02, 1e-4, 0.01)
    config = ScenarioConfig(params=params, seed=1, steem_power=(2.0,), sample_every=1)
    assert parse_config(format_config(config)) == config
