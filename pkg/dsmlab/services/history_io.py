"""
히스토리 / 메시지 로그 / 실행 메타 파일 입출력

히스토리 파일은 JSON Lines, 한 줄에 이벤트 하나 (rt 순).
"""
import logging
import os
from typing import Iterable, Optional

from pydantic import ValidationError

from dsmlab.core.exceptions import HistoryFormatError
from dsmlab.core.history import Event, History, HistoryBuilder
from dsmlab.core.types import Timestamp
from dsmlab.schemas.history import HistoryFileRecord, MessageLogRecord, RunMeta
from dsmlab.simnet.trace import MessageRecord, Trace

logger = logging.getLogger(__name__)

SIDECAR_SUFFIX = ".messages.jsonl"
META_SUFFIX = ".meta.json"


def _stem(history_path: str) -> str:
    root, _ = os.path.splitext(history_path)
    return root


def sidecar_path(history_path: str) -> str:
    """run.jsonl -> run.messages.jsonl"""
    return _stem(history_path) + SIDECAR_SUFFIX


def meta_path(history_path: str) -> str:
    """run.jsonl -> run.meta.json"""
    return _stem(history_path) + META_SUFFIX


def _ts(ts: Optional[Timestamp]) -> Optional[tuple[int, int]]:
    return (ts.lt, ts.pid) if ts is not None else None


# ===== 히스토리 =====
def event_to_record(e: Event) -> HistoryFileRecord:
    """이벤트 -> 파일 레코드"""
    return HistoryFileRecord(
        kind=e.kind.value,
        opid=e.opid,
        proc=e.proc,
        op=e.op.kind.value,
        reg=e.op.reg,
        val=e.op.arg,
        ret=None if e.is_invocation else e.op.ret,
        rt=e.rt,
        lt=e.lt,
        ts=_ts(e.op.ts),
    )


def dump_history(h: History) -> str:
    """
    히스토리를 JSON Lines 문자열로 직렬화

    Raises:
        HistoryFormatError: 이벤트가 rt 순이 아닌 경우
    """
    lines = []
    last_rt = None
    for e in h.events:
        if last_rt is not None and e.rt < last_rt:
            raise HistoryFormatError(f"event for opid={e.opid} at rt={e.rt} comes after rt={last_rt}")
        last_rt = e.rt
        lines.append(event_to_record(e).model_dump_json())
    return "".join(line + "\n" for line in lines)


def write_history(h: History, path: str) -> None:
    """히스토리 파일 저장"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fp:
        fp.write(dump_history(h))


def parse_history(lines: Iterable[str]) -> History:
    """
    JSON Lines 파싱

    Args:
        lines: 파일의 각 줄 (빈 줄 무시)

    Returns:
        History: 파싱된 히스토리

    Raises:
        HistoryFormatError: 형식 오류, rt 역순, 짝이 맞지 않는 opid
    """
    builder = HistoryBuilder()
    invoked: dict[int, HistoryFileRecord] = {}
    last_rt = None
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = HistoryFileRecord.model_validate_json(line)
        except ValidationError as e:
            raise HistoryFormatError(f"line {lineno}: {e.errors()[0]['msg']}") from e
        if last_rt is not None and record.rt < last_rt:
            raise HistoryFormatError(f"line {lineno}: rt {record.rt} is smaller than the previous rt {last_rt}")
        last_rt = record.rt

        ts = Timestamp(*record.ts) if record.ts is not None else None
        if record.kind == "inv":
            builder.invoke(record.proc, record.op, record.reg, record.val,
                           opid=record.opid, rt=record.rt, lt=record.lt, ts=ts)
            invoked[record.opid] = record
            continue

        inv = invoked.get(record.opid)
        if inv is None:
            raise HistoryFormatError(f"line {lineno}: response for opid {record.opid} without invocation")
        if (inv.proc, inv.op, inv.reg, inv.val) != (record.proc, record.op, record.reg, record.val):
            raise HistoryFormatError(f"line {lineno}: response for opid {record.opid} does not match its invocation")
        if record.op == "write" and record.ret != "OK":
            raise HistoryFormatError(f"line {lineno}: write opid={record.opid} must return OK")
        if record.op == "read" and not isinstance(record.ret, int):
            raise HistoryFormatError(f"line {lineno}: read opid={record.opid} must return an integer")
        builder.respond(record.opid, record.ret, rt=record.rt, lt=record.lt, ts=ts)
    return builder.build()


def read_history(path: str) -> History:
    """히스토리 파일 읽기"""
    try:
        with open(path, "r", encoding="utf-8") as fp:
            return parse_history(fp.readlines())
    except UnicodeDecodeError as e:
        raise HistoryFormatError(f"{path} is not valid UTF-8") from e
    except OSError as e:
        raise HistoryFormatError(f"cannot read {path}: {e}") from e


# ===== 메시지 로그 =====
def message_to_record(record: MessageRecord) -> MessageLogRecord:
    """메시지 기록 -> 사이드카 레코드"""
    msg = record.msg
    tsv = getattr(msg, "tsv", None)
    return MessageLogRecord(
        kind=msg.kind.value,
        sender=msg.sender,
        receiver=msg.receiver,
        lt=msg.lt,
        rid=msg.rid,
        reg=getattr(msg, "reg", None),
        ts=_ts(tsv.ts) if tsv is not None else None,
        val=tsv.val if tsv is not None else None,
        send_rt=record.send_rt,
        send_lt=record.send_lt,
        recv_rt=record.recv_rt,
        recv_lt=record.recv_lt,
        status=record.status.value,
    )


def write_message_log(records: list[MessageRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fp:
        for record in records:
            fp.write(message_to_record(record).model_dump_json() + "\n")


def read_message_log(path: str) -> list[MessageLogRecord]:
    """사이드카 읽기"""
    records = []
    try:
        with open(path, "r", encoding="utf-8") as fp:
            for lineno, line in enumerate(fp, start=1):
                if not line.strip():
                    continue
                try:
                    records.append(MessageLogRecord.model_validate_json(line))
                except ValidationError as e:
                    raise HistoryFormatError(f"{path} line {lineno}: {e.errors()[0]['msg']}") from e
    except OSError as e:
        raise HistoryFormatError(f"cannot read {path}: {e}") from e
    return records


# ===== 실행 메타 =====
def trace_meta(trace: Trace) -> RunMeta:
    return RunMeta(
        protocol=trace.protocol.value,
        n=trace.n,
        seed=trace.seed,
        mutant=trace.mutant.value,
        outcome=trace.outcome.value,
        final_tick=trace.final_tick,
        crashed=sorted(trace.crashed),
    )


def read_meta(path: str) -> RunMeta:
    try:
        with open(path, "r", encoding="utf-8") as fp:
            return RunMeta.model_validate_json(fp.read())
    except ValidationError as e:
        raise HistoryFormatError(f"{path}: {e.errors()[0]['msg']}") from e
    except OSError as e:
        raise HistoryFormatError(f"cannot read {path}: {e}") from e


def save_trace(trace: Trace, out: str) -> tuple[str, str, str]:
    """
    실행 결과를 세 파일로 저장

    Args:
        trace: 시뮬레이션 결과
        out: 히스토리 파일 경로

    Returns:
        tuple[str, str, str]: (히스토리, 메시지 로그, 메타) 경로
    """
    write_history(trace.history, out)
    sidecar = sidecar_path(out)
    write_message_log(trace.message_log, sidecar)
    meta = meta_path(out)
    with open(meta, "w", encoding="utf-8", newline="\n") as fp:
        fp.write(trace_meta(trace).model_dump_json() + "\n")
    logger.info(f"Saved history ({len(trace.history)} events) to {out}")
    return out, sidecar, meta
