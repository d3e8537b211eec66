"""
공유 도메인 타입 (식별자, 타임스탬프, 타임스탬프-값 쌍)
"""
from dataclasses import dataclass
from typing import Literal

# 식별자/값 별칭
ProcessId = int       # 1..n
RegisterId = str      # 비어있지 않은 레지스터 이름
Value = int           # 64비트 부호 있는 정수, 기본값 0
LogicalTime = int     # >= 0
RequestId = int       # >= 0

VALUE_MIN = -(2 ** 63)
VALUE_MAX = 2 ** 63 - 1

# 쓰기 연산의 반환값
OK: Literal["OK"] = "OK"
OpResult = int | Literal["OK"]


@dataclass(frozen=True, order=True)
class Timestamp:
    """(논리 시간, 프로세스 ID) 쌍 - 사전식 전순서"""
    lt: LogicalTime
    pid: ProcessId

    def as_list(self) -> list[int]:
        return [self.lt, self.pid]

    def __str__(self) -> str:
        return f"({self.lt},{self.pid})"


@dataclass(frozen=True)
class TimestampValuePair:
    """타임스탬프가 붙은 레지스터 값 (복제 단위)"""
    ts: Timestamp
    val: Value

    def __str__(self) -> str:
        return f"({self.ts},{self.val})"


INITIAL_TIMESTAMP = Timestamp(0, 0)
INITIAL_PAIR = TimestampValuePair(INITIAL_TIMESTAMP, 0)

