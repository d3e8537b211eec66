"""
실행 설정 파일 로더 테스트
"""
import pytest

from dsmlab.core.exceptions import ConfigError
from dsmlab.protocol.state import Mutant, Protocol
from dsmlab.services.config_loader import load_run_config, parse_config_text
from dsmlab.simnet.config import AdversarialDelay, PerLinkDelay, UniformDelay


def test_parse_config_text():
    values = parse_config_text("# 주석\n\nn = 5\nprotocol=mw_abd\n")
    assert values == {"n": "5", "protocol": "mw_abd"}


@pytest.mark.parametrize("text", ["n = 3\nn = 4\n", "just a line\n", "= 3\n"])
def test_parse_config_text_errors(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_load_full_config(write_config_file):
    path = write_config_file(
        "n = 5\n"
        "seed = 17\n"
        "protocol = MW-ABD\n"
        "crashes = 4@100, 5@0\n"
        "delay = uniform\n"
        "delay_min = 2\n"
        "delay_max = 9\n"
        "ops_per_process = 4\n"
        "read_fraction = 0.25\n"
        "register_count = 3\n"
        "max_ticks = 5000\n"
    )
    cfg = load_run_config(path)
    assert cfg.n == 5 and cfg.seed == 17
    assert cfg.protocol is Protocol.MW_ABD
    assert cfg.crash_set == {4, 5}
    assert isinstance(cfg.delay, UniformDelay) and cfg.delay.max_ticks == 9
    assert cfg.workload.ops_per_process == 4
    assert cfg.max_ticks == 5000


def test_seed_override_and_defaults(write_config_file):
    cfg = load_run_config(write_config_file("n = 3\nseed = 1\n"), seed=99)
    assert cfg.seed == 99
    assert cfg.mutant is Mutant.NONE
    assert cfg.max_ticks == 1_000_000


def test_link_and_schedule_delays(write_config_file):
    cfg = load_run_config(write_config_file(
        "n = 3\ndelay = per_link\nlink_delays = 1->2:5, 2->1:7\ndefault_delay = 3\n"
    ))
    assert isinstance(cfg.delay, PerLinkDelay)
    assert [(l.sender, l.receiver, l.delay) for l in cfg.delay.links] == [(1, 2, 5), (2, 1, 7)]

    cfg = load_run_config(write_config_file(
        "n = 3\nmutant = small-quorum\ndelay = adversarial\nself_delay = 1\n"
        "schedule = update:1->*:2; *:*->3:400\n",
        name="adv.conf",
    ))
    assert cfg.mutant is Mutant.SMALL_QUORUM
    assert isinstance(cfg.delay, AdversarialDelay)
    first, second = cfg.delay.rules
    assert (first.message, first.sender, first.receiver, first.delay) == ("update", 1, None, 2)
    assert (second.message, second.sender, second.receiver, second.delay) == (None, None, 3, 400)


@pytest.mark.parametrize("text", [
    "n = 5\ncrashes = 1@0, 2@0, 3@0\n",   # f = 2
    "n = 3\nunknown_key = 1\n",
    "n = 0\n",
    "n = 3\nprotocol = paxos\n",
    "n = 3\ndelay = per_link\nlink_delays = 1-2:5\n",
    "n = 3\ndelay_min = 5\ndelay_max = 2\n",
])
def test_invalid_configs(write_config_file, text):
    with pytest.raises(ConfigError) as exc:
        load_run_config(write_config_file(text))
    assert exc.value.exit_code == 5


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_run_config(str(tmp_path / "nope.conf"))
