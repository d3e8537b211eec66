"""DSM Lab - SC-ABD 분산 공유 메모리 시뮬레이션 및 일관성 검사 도구"""

__version__ = "1.0.0"
