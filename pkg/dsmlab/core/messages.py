"""
프로토콜 메시지 정의 (query / response / update / ack)
"""
from dataclasses import dataclass
from enum import Enum

from dsmlab.core.types import LogicalTime, ProcessId, RegisterId, RequestId, TimestampValuePair


class MessageKind(Enum):
    """메시지 종류"""
    QUERY = "query"
    RESPONSE = "response"
    UPDATE = "update"
    ACK = "ack"


@dataclass(frozen=True)
class Query:
    """읽기 질의 요청"""
    sender: ProcessId
    receiver: ProcessId
    lt: LogicalTime
    rid: RequestId
    reg: RegisterId

    kind = MessageKind.QUERY


@dataclass(frozen=True)
class Response:
    """질의 응답 (저장된 타임스탬프-값 쌍)"""
    sender: ProcessId
    receiver: ProcessId
    lt: LogicalTime
    rid: RequestId
    tsv: TimestampValuePair

    kind = MessageKind.RESPONSE


@dataclass(frozen=True)
class Update:
    """갱신 요청"""
    sender: ProcessId
    receiver: ProcessId
    lt: LogicalTime
    rid: RequestId
    reg: RegisterId
    tsv: TimestampValuePair

    kind = MessageKind.UPDATE


@dataclass(frozen=True)
class Ack:
    """갱신 확인"""
    sender: ProcessId
    receiver: ProcessId
    lt: LogicalTime
    rid: RequestId

    kind = MessageKind.ACK


Message = Query | Response | Update | Ack


def broadcast(factory, n: int) -> tuple[Message, ...]:
    """
    전체 프로세스(자기 자신 포함)에 보낼 메시지 생성

    Args:
        factory: 수신자 ID를 받아 메시지를 만드는 함수
        n: 프로세스 수

    Returns:
        tuple: 수신자 1..n 순서의 메시지
    """
    return tuple(factory(j) for j in range(1, n + 1))
