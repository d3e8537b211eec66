"""히스토리 검사기 (SC, 선형성, Trace 감사)"""
from dsmlab.checker.audit import *
from dsmlab.checker.completion import complete_history
from dsmlab.checker.compositional import check_linearizable_realtime, check_sc_compositional, compose_witness
from dsmlab.checker.legality import is_legal_sequential, to_sequential
from dsmlab.checker.linearizability import check_linearizable
from dsmlab.checker.logical_time import build_logical_time_history
from dsmlab.checker.oracle import check_sc_bruteforce
from dsmlab.checker.verdict import Outcome, Verdict, Violation
from dsmlab.checker.witness import construct_timestamp_witness, validate_witness
