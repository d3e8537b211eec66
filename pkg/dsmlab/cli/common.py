"""서브커맨드 공통 출력 도우미"""
from dsmlab.checker.verdict import Outcome

BANNER = "=" * 50
MARKS = {
    Outcome.ACCEPTED: "✅",
    Outcome.REJECTED: "❌",
    Outcome.UNDECIDED: "⚠️",
}


def banner(title: str) -> None:
    """보고서 구분선"""
    print(f"\n{BANNER}")
    print(title)
    print(BANNER)


def mark(outcome: Outcome) -> str:
    return MARKS[outcome]
