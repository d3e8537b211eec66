"""
시뮬레이션 설정 스키마 (pydantic)
"""
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from dsmlab.core.clock import max_faulty
from dsmlab.core.types import VALUE_MAX, VALUE_MIN
from dsmlab.protocol.state import Mutant, Protocol


class CrashSpec(BaseModel):
    """크래시 예약 (프로세스, 시각)"""
    model_config = ConfigDict(frozen=True)

    pid: int = Field(..., ge=1)
    at: int = Field(0, ge=0)


class UniformDelay(BaseModel):
    """min..max 균등 분포 지연"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["uniform"] = "uniform"
    min_ticks: int = Field(1, ge=1)
    max_ticks: int = Field(10, ge=1)

    @model_validator(mode="after")
    def check_range(self):
        if self.max_ticks < self.min_ticks:
            raise ValueError("delay max_ticks must be >= min_ticks")
        return self


class LinkDelay(BaseModel):
    """링크 하나의 고정 지연"""
    model_config = ConfigDict(frozen=True)

    sender: int = Field(..., ge=1)
    receiver: int = Field(..., ge=1)
    delay: int = Field(..., ge=1)


class PerLinkDelay(BaseModel):
    """링크별 고정 지연 (미지정 링크는 default)"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["per_link"] = "per_link"
    links: list[LinkDelay] = Field(default_factory=list)
    default: int = Field(1, ge=1)


class ScheduleRule(BaseModel):
    """적대적 스케줄 규칙 (None = 와일드카드)"""
    model_config = ConfigDict(frozen=True)

    message: Optional[Literal["query", "response", "update", "ack"]] = None
    sender: Optional[int] = Field(None, ge=1)
    receiver: Optional[int] = Field(None, ge=1)
    delay: int = Field(..., ge=1)


class AdversarialDelay(BaseModel):
    """명시적 전달 순서 스크립트 - 첫 번째로 일치하는 규칙의 지연 사용"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["adversarial"] = "adversarial"
    rules: list[ScheduleRule] = Field(default_factory=list)
    default: int = Field(1, ge=1)
    self_delay: Optional[int] = Field(None, ge=1)


DelayModel = Annotated[Union[UniformDelay, PerLinkDelay, AdversarialDelay], Field(discriminator="kind")]


class ScriptedOp(BaseModel):
    """스크립트 워크로드의 연산 하나"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["read", "write"]
    reg: str = Field(..., min_length=1)
    value: Optional[int] = Field(None, ge=VALUE_MIN, le=VALUE_MAX)
    at: int = Field(0, ge=0)  # 가장 이른 호출 시각

    @model_validator(mode="after")
    def check_value(self):
        if self.kind == "write" and self.value is None:
            raise ValueError("scripted write needs a value")
        return self


class WorkloadConfig(BaseModel):
    """closed-loop 워크로드 설정"""
    model_config = ConfigDict(frozen=True)

    ops_per_process: int = Field(2, ge=0)
    read_fraction: float = Field(0.5, ge=0.0, le=1.0)
    register_count: int = Field(1, ge=1)
    think_time: int = Field(0, ge=0)
    script: Optional[dict[int, list[ScriptedOp]]] = None


class SimConfig(BaseModel):
    """시뮬레이션 설정"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(3, ge=1)
    crashes: list[CrashSpec] = Field(default_factory=list)
    seed: int = Field(0, ge=0, le=2 ** 64 - 1)
    delay: DelayModel = Field(default_factory=UniformDelay)
    workload: WorkloadConfig = Field(default_factory=WorkloadConfig)
    max_ticks: int = Field(1_000_000, ge=1)
    protocol: Protocol = Protocol.SC_ABD
    mid_op_crash: bool = False
    mutant: Mutant = Mutant.NONE

    @field_validator("crashes")
    @classmethod
    def unique_crashes(cls, crashes: list[CrashSpec]) -> list[CrashSpec]:
        pids = [c.pid for c in crashes]
        if len(pids) != len(set(pids)):
            raise ValueError("a process can crash at most once")
        return crashes

    @model_validator(mode="after")
    def check_model(self):
        f = max_faulty(self.n)
        if len(self.crashes) > f:
            raise ValueError(f"{len(self.crashes)} crashes exceed f={f} for n={self.n} (need f < n/2)")
        for c in self.crashes:
            if c.pid > self.n:
                raise ValueError(f"crash pid {c.pid} outside 1..{self.n}")
        script = self.workload.script or {}
        for pid in script:
            if not 1 <= pid <= self.n:
                raise ValueError(f"scripted pid {pid} outside 1..{self.n}")
        if isinstance(self.delay, (PerLinkDelay,)):
            for link in self.delay.links:
                if link.sender > self.n or link.receiver > self.n:
                    raise ValueError(f"link {link.sender}->{link.receiver} outside 1..{self.n}")
        if self.mutant is Mutant.SMALL_QUORUM and self.n < 2:
            raise ValueError("small_quorum mutant needs n >= 2")
        return self

    @property
    def crash_set(self) -> set[int]:
        return {c.pid for c in self.crashes}

    @property
    def f(self) -> int:
        return max_faulty(self.n)
