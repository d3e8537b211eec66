"""
메시지 지연 샘플링
"""
import numpy as np

from dsmlab.core.messages import Message
from dsmlab.simnet.config import AdversarialDelay, PerLinkDelay, UniformDelay


class DelaySampler:
    """지연 모델별 메시지 지연 계산 (균등 분포만 난수 사용)"""

    def __init__(self, model, rng: np.random.Generator):
        self.model = model
        self.rng = rng
        self._links: dict[tuple[int, int], int] = {}
        if isinstance(model, PerLinkDelay):
            self._links = {(link.sender, link.receiver): link.delay for link in model.links}

    def sample(self, msg: Message) -> int:
        """
        메시지 하나의 지연 (양의 정수 tick)

        Args:
            msg: 보낼 메시지

        Returns:
            int: 지연 tick 수
        """
        model = self.model
        if isinstance(model, UniformDelay):
            return int(self.rng.integers(model.min_ticks, model.max_ticks + 1))
        if isinstance(model, PerLinkDelay):
            return self._links.get((msg.sender, msg.receiver), model.default)
        if isinstance(model, AdversarialDelay):
            return self._scripted(model, msg)
        raise TypeError(f"unknown delay model {model!r}")

    @staticmethod
    def _scripted(model: AdversarialDelay, msg: Message) -> int:
        if model.self_delay is not None and msg.sender == msg.receiver:
            return model.self_delay
        for rule in model.rules:
            if rule.message is not None and rule.message != msg.kind.value:
                continue
            if rule.sender is not None and rule.sender != msg.sender:
                continue
            if rule.receiver is not None and rule.receiver != msg.receiver:
                continue
            return rule.delay
        return model.default
