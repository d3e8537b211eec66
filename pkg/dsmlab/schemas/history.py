"""
히스토리 / 메시지 로그 / 실행 메타 파일 스키마
"""
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator


class HistoryFileRecord(BaseModel):
    """히스토리 파일 한 줄 (이벤트 하나)"""
    kind: Literal["inv", "res"]
    opid: int = Field(..., ge=0)
    proc: int = Field(..., ge=1)
    op: Literal["read", "write"]
    reg: str = Field(..., min_length=1)
    val: Optional[int] = None
    ret: Optional[int | Literal["OK"]] = None
    rt: int = Field(..., ge=0)
    lt: Optional[int] = Field(None, ge=0)
    ts: Optional[tuple[int, int]] = None

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def check_operands(self):
        if self.op == "write" and self.val is None:
            raise ValueError(f"write opid={self.opid} has no val")
        if self.op == "read" and self.val is not None:
            raise ValueError(f"read opid={self.opid} carries a val")
        if self.kind == "inv" and self.ret is not None:
            raise ValueError(f"invocation opid={self.opid} carries a ret")
        return self


class MessageLogRecord(BaseModel):
    """메시지 로그 사이드카 한 줄"""
    kind: Literal["query", "response", "update", "ack"]
    sender: int = Field(..., ge=1)
    receiver: int = Field(..., ge=1)
    lt: int = Field(..., ge=0)
    rid: int = Field(..., ge=0)
    reg: Optional[str] = None
    ts: Optional[tuple[int, int]] = None
    val: Optional[int] = None
    send_rt: int = Field(..., ge=0)
    send_lt: int = Field(..., ge=0)
    recv_rt: Optional[int] = None
    recv_lt: Optional[int] = None
    status: Literal["delivered", "discarded", "dropped", "in_flight"]

    class Config:
        extra = "forbid"


class RunMeta(BaseModel):
    """실행 메타데이터"""
    protocol: Literal["sc_abd", "mw_abd"]
    n: int = Field(..., ge=1)
    seed: int
    mutant: Literal["none", "small_quorum", "no_writeback"] = "none"
    outcome: Literal["quiescent", "horizon_exhausted", "stalled"]
    final_tick: int = 0
    crashed: list[int] = Field(default_factory=list)

    class Config:
        extra = "forbid"
