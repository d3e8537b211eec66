"""
결정적 이산 사건 네트워크 시뮬레이터

- 신뢰성 있는 비동기 링크 (순서 보장 없음, 시드 기반 지연)
- crash-stop 장애 주입 (f < n/2)
- closed-loop 워크로드, 히스토리/메시지/스텝 기록
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from dsmlab.core.clock import max_faulty
from dsmlab.core.exceptions import ConfigError
from dsmlab.core.history import Event, EventKind, History, OperationDescriptor, OpKind
from dsmlab.core.messages import Update
from dsmlab.core.types import Timestamp
from dsmlab.protocol import initial_state, step_function
from dsmlab.protocol.state import Completion, Invoke, ReplicaState, StepOutput
from dsmlab.simnet.config import SimConfig
from dsmlab.simnet.delays import DelaySampler
from dsmlab.simnet.events import EventQueue, SimEvent, SimEventKind
from dsmlab.simnet.trace import (
    CrashRecord, DeliveryStatus, MessageRecord, RunOutcome, StepRecord, StoreRecord, Trace,
)
from dsmlab.simnet.workload import PlannedOp, generate_workload

logger = logging.getLogger(__name__)


@dataclass
class _OpRecord:
    """진행/완료된 연산 기록"""
    opid: int
    pid: int
    kind: OpKind
    reg: str
    arg: Optional[int]
    ret: object = None
    ts: Optional[Timestamp] = None
    rounds: int = 0


@dataclass
class _Process:
    """시뮬레이터가 관리하는 프로세스"""
    pid: int
    state: ReplicaState
    plan: deque = field(default_factory=deque)
    current: Optional[_OpRecord] = None
    crashed: bool = False
    crash_pending: Optional[int] = None  # 연산 종료까지 미뤄진 크래시의 예약 시각
    last_tick: int = -1


class NetworkSimulator:
    """SimConfig 하나를 실행하는 단일 스레드 이벤트 루프"""

    def __init__(self, cfg: SimConfig):
        if len(cfg.crashes) > max_faulty(cfg.n):
            raise ConfigError(f"{len(cfg.crashes)} crashes exceed f={max_faulty(cfg.n)} for n={cfg.n}")
        self.cfg = cfg
        self.rng = np.random.default_rng(cfg.seed)
        self.delays = DelaySampler(cfg.delay, self.rng)
        self.queue = EventQueue()
        self.step_fn = step_function(cfg.protocol)
        self.procs = {
            pid: _Process(pid=pid, state=initial_state(cfg.protocol, pid, cfg.n, cfg.mutant))
            for pid in range(1, cfg.n + 1)
        }
        self.ops: dict[int, _OpRecord] = {}
        self.now = 0
        self._next_opid = 1
        self._raw_events: list[tuple[EventKind, int, int, int]] = []
        self.message_log: list[MessageRecord] = []
        self.steps: list[StepRecord] = []
        self.store_log: list[StoreRecord] = []
        self.crash_log: list[CrashRecord] = []

    # ===== 실행 =====
    def run(self) -> Trace:
        """
        정지 상태(또는 max_ticks)까지 실행

        Returns:
            Trace: 히스토리, 메시지 로그, 스텝/저장/크래시 기록
        """
        plan = generate_workload(self.cfg, self.rng)
        for crash in sorted(self.cfg.crashes, key=lambda c: (c.at, c.pid)):
            self.queue.push(crash.at, SimEventKind.CRASH, crash.pid, crash.at)
        for op in plan:
            self.procs[op.pid].plan.append(op)
        for proc in self.procs.values():
            if proc.plan:
                first = proc.plan.popleft()
                self.queue.push(first.at, SimEventKind.INVOKE, proc.pid, first)

        outcome = RunOutcome.QUIESCENT
        while self.queue:
            if self.queue.peek_due() > self.cfg.max_ticks:
                outcome = RunOutcome.HORIZON_EXHAUSTED
                break
            event = self.queue.pop()
            self.now = event.due
            self._dispatch(event)

        if outcome is RunOutcome.QUIESCENT and any(
            p.current is not None for p in self.procs.values() if not p.crashed
        ):
            outcome = RunOutcome.STALLED

        if outcome is not RunOutcome.QUIESCENT:
            logger.warning(f"Simulation seed={self.cfg.seed} ended {outcome.value} at tick {self.now}")
        else:
            logger.debug(f"Simulation seed={self.cfg.seed} quiescent at tick {self.now}: "
                         f"{len(self.ops)} ops, {len(self.message_log)} messages")
        return self._build_trace(outcome)

    def _dispatch(self, event: SimEvent) -> None:
        if event.kind is SimEventKind.CRASH:
            self.inject_crash(event.pid, event.payload)
        elif event.kind is SimEventKind.INVOKE:
            self._invoke(event)
        else:
            self.deliver(event.payload, event.due)

    def _busy(self, proc: _Process, event_kind: SimEventKind, payload) -> bool:
        """이번 tick에 이미 핸들러를 실행했으면 다음 tick으로 미룸"""
        if proc.last_tick != self.now:
            return False
        self.queue.push(self.now + 1, event_kind, proc.pid, payload)
        return True

    # ===== 자극 처리 =====
    def _invoke(self, event: SimEvent) -> None:
        proc = self.procs[event.pid]
        planned: PlannedOp = event.payload
        if proc.crashed or self._busy(proc, SimEventKind.INVOKE, planned):
            return

        opid = self._next_opid
        self._next_opid += 1
        record = _OpRecord(opid=opid, pid=proc.pid, kind=planned.kind, reg=planned.reg,
                           arg=planned.value if planned.kind is OpKind.WRITE else None)
        self.ops[opid] = record
        proc.current = record

        out = self.step_fn(proc.state, Invoke(planned.kind, planned.reg, planned.value, opid))
        self._raw_events.append((EventKind.INVOCATION, opid, self.now, out.state.lt))
        self._apply(proc, out, "invoke")

    def deliver(self, record: MessageRecord, at: int) -> None:
        """
        메시지 전달: 수신자의 핸들러 실행 후 송신 메시지를 새 지연으로 예약

        Args:
            record: 메시지 기록 (상태가 갱신됨)
            at: 전달 시각
        """
        msg = record.msg
        proc = self.procs[msg.receiver]
        if proc.crashed:
            record.status = DeliveryStatus.DROPPED
            logger.debug(f"Dropped {msg.kind.value} p{msg.sender}->p{msg.receiver} at tick {at} (receiver crashed)")
            return
        if self._busy(proc, SimEventKind.DELIVER, record):
            return

        before = proc.state
        out = self.step_fn(before, msg)
        if out.state is before:
            # rid 가드에 걸린 오래된 응답/ack - 핸들러 미실행
            record.status = DeliveryStatus.DISCARDED
            record.recv_rt = at
            return

        record.status = DeliveryStatus.DELIVERED
        record.recv_rt = at
        record.recv_lt = out.state.lt
        if isinstance(msg, Update):
            self.store_log.append(StoreRecord(proc.pid, at, msg.reg, out.state.stored(msg.reg).ts))
        self._apply(proc, out, msg.kind.value)

    def _apply(self, proc: _Process, out: StepOutput, label: str) -> None:
        proc.state = out.state
        proc.last_tick = self.now
        self.steps.append(StepRecord(proc.pid, self.now, out.state.lt, label))

        current = proc.current
        if current is not None and out.state.opid == current.opid:
            if out.new_round:
                current.rounds += 1
            if out.state.op_ts is not None:
                current.ts = out.state.op_ts

        for msg in out.outbox:
            self._send(msg)
        if out.completion is not None:
            self._complete(proc, out.completion)

    def _send(self, msg) -> None:
        delay = self.delays.sample(msg)
        record = MessageRecord(msg=msg, send_rt=self.now, send_lt=msg.lt)
        self.message_log.append(record)
        self.queue.push(self.now + delay, SimEventKind.DELIVER, msg.receiver, record)

    def _complete(self, proc: _Process, completion: Completion) -> None:
        record = proc.current
        record.ret = completion.ret
        record.ts = completion.ts
        self._raw_events.append((EventKind.RESPONSE, record.opid, self.now, proc.state.lt))
        proc.current = None

        if proc.crash_pending is not None:
            self._crash(proc, proc.crash_pending)
            return
        if proc.plan:
            nxt = proc.plan.popleft()
            due = max(self.now + self.cfg.workload.think_time, nxt.at)
            self.queue.push(due, SimEventKind.INVOKE, proc.pid, nxt)

    # ===== 장애 주입 =====
    def inject_crash(self, pid: int, at: int) -> None:
        """
        크래시 적용

        mid_op_crash가 꺼져 있으면 진행 중인 연산이 끝날 때까지 미룬다.

        Args:
            pid: 크래시할 프로세스
            at: 예약된 크래시 시각
        """
        proc = self.procs[pid]
        if proc.crashed:
            return
        if proc.current is not None and not self.cfg.mid_op_crash:
            proc.crash_pending = at
            logger.debug(f"Crash of p{pid} deferred until opid={proc.current.opid} completes")
            return
        self._crash(proc, at)

    def _crash(self, proc: _Process, scheduled_at: int) -> None:
        proc.crashed = True
        proc.crash_pending = None
        proc.plan.clear()
        self.crash_log.append(CrashRecord(proc.pid, scheduled_at, self.now))
        logger.debug(f"p{proc.pid} crashed at tick {self.now}")

    # ===== 결과 =====
    def _build_trace(self, outcome: RunOutcome) -> Trace:
        descriptors = {
            opid: OperationDescriptor(
                opid=opid, proc=rec.pid, kind=rec.kind, reg=rec.reg,
                arg=rec.arg, ret=rec.ret, ts=rec.ts,
            )
            for opid, rec in self.ops.items()
        }
        events = tuple(
            Event(kind=kind, op=descriptors[opid], rt=rt, lt=lt, proc=descriptors[opid].proc)
            for kind, opid, rt, lt in self._raw_events
        )
        return Trace(
            protocol=self.cfg.protocol,
            n=self.cfg.n,
            seed=self.cfg.seed,
            mutant=self.cfg.mutant,
            outcome=outcome,
            history=History(events=events),
            message_log=self.message_log,
            steps=self.steps,
            store_log=self.store_log,
            rounds={opid: rec.rounds for opid, rec in self.ops.items()},
            crash_log=self.crash_log,
            final_tick=self.now,
        )


def run_simulation(cfg: SimConfig) -> Trace:
    """
    설정 하나로 시뮬레이션 실행

    Args:
        cfg: 시뮬레이션 설정 (같은 설정이면 같은 Trace)

    Returns:
        Trace: 실행 기록
    """
    return NetworkSimulator(cfg).run()
