"""결정적 이산 사건 네트워크 시뮬레이터"""
from dsmlab.simnet.config import (
    AdversarialDelay, CrashSpec, LinkDelay, PerLinkDelay, ScheduleRule, ScriptedOp,
    SimConfig, UniformDelay, WorkloadConfig,
)
from dsmlab.simnet.simulator import NetworkSimulator, run_simulation
from dsmlab.simnet.trace import DeliveryStatus, MessageRecord, RunOutcome, Trace
from dsmlab.simnet.workload import PlannedOp, generate_workload
