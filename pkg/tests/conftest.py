"""
공용 테스트 픽스처
"""
import os

# 테스트 중 파일 로그 비활성화
os.environ["LOG_DIR"] = ""

import pytest

from dsmlab.core.config import get_settings
from dsmlab.core.history import HistoryBuilder
from dsmlab.core.types import INITIAL_TIMESTAMP, Timestamp
from dsmlab.protocol.state import Mutant
from dsmlab.simnet.config import AdversarialDelay, ScheduleRule, ScriptedOp, SimConfig, WorkloadConfig

get_settings.cache_clear()


def rule(kind, sender, receiver, delay=1):
    return ScheduleRule(message=kind, sender=sender, receiver=receiver, delay=delay)


@pytest.fixture
def illegal_history():
    """같은 프로세스: w(x,1) 다음 r(x)->0"""
    b = HistoryBuilder()
    b.write(1, "x", 1, lt=(1, 2), ts=Timestamp(1, 1))
    b.read(1, "x", 0, lt=(3, 4), ts=INITIAL_TIMESTAMP)
    return b.build()


@pytest.fixture
def stale_read_history():
    """
    SC이지만 실시간 선형성은 아닌 히스토리

    p2의 읽기는 p1 쓰기 완료 후(rt) 호출되지만 논리 시간으로는 쓰기와 겹친다.
    """
    b = HistoryBuilder()
    w = b.invoke(1, "write", "x", 1, rt=0, lt=1, ts=Timestamp(1, 1))
    b.respond(w, "OK", rt=1, lt=3)
    r = b.invoke(2, "read", "x", rt=5, lt=1, ts=INITIAL_TIMESTAMP)
    b.respond(r, 0, rt=6, lt=2)
    return b.build()


@pytest.fixture
def cross_register_history():
    """p1: w(x,1) w(y,1) / p2: r(y)->1 r(x)->0 (SC 아님)"""
    b = HistoryBuilder()
    wx = b.invoke(1, "write", "x", 1)
    ry = b.invoke(2, "read", "y")
    b.respond(wx, "OK")
    wy = b.invoke(1, "write", "y", 1)
    b.respond(wy, "OK")
    b.respond(ry, 1)
    rx = b.invoke(2, "read", "x")
    b.respond(rx, 0)
    return b.build()


@pytest.fixture
def small_quorum_config():
    """
    floor(n/2) quorum 변이 + 자기 자신만 빠른 스케줄 (n=3, quorum=1)

    p1: w(x,1) r(y) / p2: w(y,2) r(x) - 두 읽기 모두 0을 반환 (Dekker 패턴)
    """
    return SimConfig(
        n=3,
        mutant=Mutant.SMALL_QUORUM,
        delay=AdversarialDelay(default=1000, self_delay=1),
        workload=WorkloadConfig(script={
            1: [ScriptedOp(kind="write", reg="x", value=1, at=0), ScriptedOp(kind="read", reg="y", at=20)],
            2: [ScriptedOp(kind="write", reg="y", value=2, at=0), ScriptedOp(kind="read", reg="x", at=20)],
        }),
    )


def read_read_inversion_config(mutant: Mutant) -> SimConfig:
    """
    n=5 스케줄: p2의 읽기는 새 값을 보고, 논리 시간상 뒤인 p3의 읽기는 p1/p2를 거치지 않음

    p1: w(x,1)@0 / p2: r(x)@10 / p3: r(y)@20, r(x)@50
    """
    rules = [
        rule("update", 1, 2),
        rule("query", 2, 3), rule("query", 2, 4),
        rule("response", 3, 2), rule("response", 4, 2),
        rule("query", 3, 4), rule("query", 3, 5),
        rule("response", 4, 3), rule("response", 5, 3),
    ]
    return SimConfig(
        n=5,
        mutant=mutant,
        delay=AdversarialDelay(rules=rules, default=1000, self_delay=1),
        workload=WorkloadConfig(script={
            1: [ScriptedOp(kind="write", reg="x", value=1, at=0)],
            2: [ScriptedOp(kind="read", reg="x", at=10)],
            3: [ScriptedOp(kind="read", reg="y", at=20), ScriptedOp(kind="read", reg="x", at=50)],
        }),
    )


@pytest.fixture
def no_writeback_config():
    return read_read_inversion_config(Mutant.NO_WRITEBACK)


@pytest.fixture
def inversion_schedule_config():
    """같은 스케줄, 변이 없음"""
    return read_read_inversion_config(Mutant.NONE)


@pytest.fixture
def write_config_file(tmp_path):
    """key = value 설정 파일 작성 도우미"""
    def _write(text: str, name: str = "run.conf") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write
