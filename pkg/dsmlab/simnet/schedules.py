"""
변이 검출용 적대적 스케줄 생성기
"""
import numpy as np

from dsmlab.simnet.config import AdversarialDelay, ScheduleRule

FAST = (1, 3)
SLOW = (400, 800)
MESSAGE_KINDS = ("query", "response", "update", "ack")


def _draw(rng: np.random.Generator, bounds: tuple[int, int]) -> int:
    return int(rng.integers(bounds[0], bounds[1] + 1))


def partition_schedule(n: int, rng: np.random.Generator) -> AdversarialDelay:
    """
    두 그룹 분할 스케줄

    프로세스를 크기가 floor(n/2) 이상인 두 그룹으로 나눠 그룹 안은 빠르게, 그룹 사이는
    느리게 전달한다. floor(n/2) 크기 quorum 두 개가 서로 겹치지 않을 수 있다.

    Args:
        n: 프로세스 수 (>= 2)
        rng: 시드 고정 난수 생성기

    Returns:
        AdversarialDelay: 링크별 규칙
    """
    order = [int(p) for p in rng.permutation(np.arange(1, n + 1))]
    group_a = set(order[: n // 2])
    rules = []
    for s in range(1, n + 1):
        for r in range(1, n + 1):
            if s == r:
                continue
            same = (s in group_a) == (r in group_a)
            rules.append(ScheduleRule(sender=s, receiver=r, delay=_draw(rng, FAST if same else SLOW)))
    return AdversarialDelay(rules=rules, default=SLOW[1], self_delay=1)


def random_schedule(n: int, rng: np.random.Generator, fast_probability: float = 0.5) -> AdversarialDelay:
    """(메시지 종류, 링크)마다 빠름/느림을 무작위로 고른 스케줄"""
    rules = []
    for kind in MESSAGE_KINDS:
        for s in range(1, n + 1):
            for r in range(1, n + 1):
                if s == r:
                    continue
                bounds = FAST if rng.random() < fast_probability else SLOW
                rules.append(ScheduleRule(message=kind, sender=s, receiver=r, delay=_draw(rng, bounds)))
    return AdversarialDelay(rules=rules, default=SLOW[1], self_delay=1)
