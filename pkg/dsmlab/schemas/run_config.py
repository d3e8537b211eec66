"""
실행 설정 파일 스키마 (flat key = value)

파일 형식은 configs/README.md 참고.
"""
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

from dsmlab.core.config import get_settings
from dsmlab.protocol.state import Mutant, Protocol
from dsmlab.simnet.config import (
    AdversarialDelay, CrashSpec, LinkDelay, PerLinkDelay, ScheduleRule, SimConfig,
    UniformDelay, WorkloadConfig,
)

WILDCARD = "*"


def _split(raw: str, sep: str) -> list[str]:
    return [item.strip() for item in raw.split(sep) if item.strip()]


def _link(raw: str) -> tuple[str, str]:
    """'s->r' 분리"""
    if "->" not in raw:
        raise ValueError(f"link '{raw}' must look like sender->receiver")
    sender, receiver = raw.split("->", 1)
    return sender.strip(), receiver.strip()


def _optional_pid(raw: str) -> Optional[int]:
    return None if raw == WILDCARD else int(raw)


class RunConfigFile(BaseModel):
    """실행 설정 파일 (알 수 없는 키는 거부)"""
    n: int = Field(3, ge=1)
    seed: int = Field(0, ge=0)
    protocol: Protocol = Protocol.SC_ABD
    mutant: Mutant = Mutant.NONE
    crashes: list[CrashSpec] = Field(default_factory=list)
    mid_op_crash: bool = False

    delay: Literal["uniform", "per_link", "adversarial"] = "uniform"
    delay_min: int = Field(1, ge=1)
    delay_max: int = Field(10, ge=1)
    link_delays: list[LinkDelay] = Field(default_factory=list)
    default_delay: int = Field(1, ge=1)
    self_delay: Optional[int] = Field(None, ge=1)
    schedule: list[ScheduleRule] = Field(default_factory=list)

    ops_per_process: int = Field(2, ge=0)
    read_fraction: float = Field(0.5, ge=0.0, le=1.0)
    register_count: int = Field(1, ge=1)
    think_time: int = Field(0, ge=0)
    max_ticks: Optional[int] = Field(None, ge=1)

    class Config:
        extra = "forbid"

    @field_validator("protocol", "mutant", mode="before")
    @classmethod
    def normalize_enum(cls, v):
        if isinstance(v, str):
            return v.strip().lower().replace("-", "_")
        return v

    @field_validator("crashes", mode="before")
    @classmethod
    def parse_crashes(cls, v):
        """'2@100, 3@0' -> [CrashSpec]"""
        if not isinstance(v, str):
            return v
        crashes = []
        for item in _split(v, ","):
            pid, _, at = item.partition("@")
            crashes.append({"pid": int(pid), "at": int(at or 0)})
        return crashes

    @field_validator("link_delays", mode="before")
    @classmethod
    def parse_links(cls, v):
        """'1->2:5, 2->1:7' -> [LinkDelay]"""
        if not isinstance(v, str):
            return v
        links = []
        for item in _split(v, ","):
            link, _, delay = item.rpartition(":")
            sender, receiver = _link(link)
            links.append({"sender": int(sender), "receiver": int(receiver), "delay": int(delay)})
        return links

    @field_validator("schedule", mode="before")
    @classmethod
    def parse_schedule(cls, v):
        """'update:1->*:1; *:*->*:500' -> [ScheduleRule] (첫 일치 규칙 우선)"""
        if not isinstance(v, str):
            return v
        rules = []
        for item in _split(v, ";"):
            parts = [p.strip() for p in item.split(":")]
            if len(parts) != 3:
                raise ValueError(f"schedule rule '{item}' must look like kind:sender->receiver:ticks")
            kind, link, delay = parts
            sender, receiver = _link(link)
            rules.append({
                "message": None if kind == WILDCARD else kind,
                "sender": _optional_pid(sender),
                "receiver": _optional_pid(receiver),
                "delay": int(delay),
            })
        return rules

    def to_sim_config(self, seed: Optional[int] = None) -> SimConfig:
        """
        SimConfig로 변환

        Args:
            seed: 지정하면 파일의 seed 대신 사용

        Returns:
            SimConfig: 검증된 시뮬레이션 설정
        """
        if self.delay == "uniform":
            delay = UniformDelay(min_ticks=self.delay_min, max_ticks=self.delay_max)
        elif self.delay == "per_link":
            delay = PerLinkDelay(links=self.link_delays, default=self.default_delay)
        else:
            delay = AdversarialDelay(rules=self.schedule, default=self.default_delay, self_delay=self.self_delay)

        return SimConfig(
            n=self.n,
            seed=self.seed if seed is None else seed,
            protocol=self.protocol,
            mutant=self.mutant,
            crashes=self.crashes,
            mid_op_crash=self.mid_op_crash,
            delay=delay,
            workload=WorkloadConfig(
                ops_per_process=self.ops_per_process,
                read_fraction=self.read_fraction,
                register_count=self.register_count,
                think_time=self.think_time,
            ),
            max_ticks=self.max_ticks or get_settings().DEFAULT_MAX_TICKS,
        )
