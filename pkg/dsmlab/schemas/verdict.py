"""검사 결과 출력 스키마 (--json)"""
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from dsmlab.checker.verdict import Verdict


class ViolationRecord(BaseModel):
    """위반 정보"""
    reg: Optional[str] = Field(default=None, alias="register")
    condition: str
    conflicting_ops: list[int] = Field(default_factory=list)

    model_config = ConfigDict(populate_by_name=True)


class VerdictRecord(BaseModel):
    """레지스터별 또는 전체 판정"""
    scope: Literal["register", "overall"]
    reg: Optional[str] = Field(default=None, alias="register")
    outcome: Literal["accepted", "rejected", "undecided"]
    accepted: bool
    method: str = ""
    witness: Optional[list[int]] = None  # 증인의 연산 ID 순서
    violation: Optional[ViolationRecord] = None
    explored_states: int = 0

    model_config = ConfigDict(populate_by_name=True)

    def to_json(self) -> str:
        """JSON 한 줄 (필드 이름은 register)"""
        return self.model_dump_json(by_alias=True)

    @classmethod
    def from_verdict(cls, verdict: Verdict, scope: str) -> "VerdictRecord":
        witness = None
        if verdict.witness is not None:
            witness = [e.opid for e in verdict.witness.events if e.is_invocation]
        violation = None
        if verdict.violation is not None:
            violation = ViolationRecord(
                reg=verdict.violation.register,
                condition=verdict.violation.condition,
                conflicting_ops=list(verdict.violation.conflicting_ops),
            )
        return cls(
            scope=scope,
            reg=verdict.register,
            outcome=verdict.outcome.value,
            accepted=verdict.accepted,
            method=verdict.method,
            witness=witness,
            violation=violation,
            explored_states=verdict.explored_states,
        )
