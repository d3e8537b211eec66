"""SC-ABD / MW-ABD 프로세스 상태 기계"""
from dsmlab.protocol.state import (
    Completion, Invoke, Mutant, MwAbdState, Phase, Protocol, ReplicaState, StepOutput,
)
from dsmlab.protocol import mw_abd, sc_abd


def initial_state(protocol: Protocol, pid: int, n: int, mutant: Mutant = Mutant.NONE) -> ReplicaState:
    """프로토콜별 초기 상태"""
    if protocol is Protocol.MW_ABD:
        return MwAbdState.initial(pid, n, mutant)
    return ReplicaState.initial(pid, n, mutant)


def step_function(protocol: Protocol):
    """프로토콜별 스텝 함수"""
    return mw_abd.mwabd_step if protocol is Protocol.MW_ABD else sc_abd.step
