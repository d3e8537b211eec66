"""
검사 결과 (Verdict) 모델
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from dsmlab.core.history import History


class Outcome(Enum):
    """판정"""
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class Violation:
    """거부 사유"""
    register: Optional[str]
    condition: str
    conflicting_ops: tuple[int, ...] = ()


@dataclass(frozen=True)
class Verdict:
    """검사기 출력"""
    outcome: Outcome
    witness: Optional[History] = None
    violation: Optional[Violation] = None
    register: Optional[str] = None
    explored_states: int = 0
    method: str = ""
    parts: tuple["Verdict", ...] = field(default_factory=tuple)

    @property
    def accepted(self) -> bool:
        return self.outcome is Outcome.ACCEPTED

    @property
    def undecided(self) -> bool:
        return self.outcome is Outcome.UNDECIDED

    @classmethod
    def accept(cls, witness: History, **kwargs) -> "Verdict":
        return cls(outcome=Outcome.ACCEPTED, witness=witness, **kwargs)

    @classmethod
    def reject(cls, violation: Violation, **kwargs) -> "Verdict":
        return cls(outcome=Outcome.REJECTED, violation=violation, **kwargs)


def combine(parts: list[Verdict]) -> Outcome:
    """레지스터별 판정 합성: 하나라도 거부면 거부, 아니면 하나라도 미정이면 미정"""
    if any(v.outcome is Outcome.REJECTED for v in parts):
        return Outcome.REJECTED
    if any(v.outcome is Outcome.UNDECIDED for v in parts):
        return Outcome.UNDECIDED
    return Outcome.ACCEPTED
