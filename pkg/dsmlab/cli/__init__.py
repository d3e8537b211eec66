"""
CLI 서브커맨드 (run / check / fuzz / stats)

종료 코드:
    0  정상 / accepted
    1  rejected (또는 변이 없는 퍼징에서 위반 발견)
    2  사용법 오류 (argparse)
    3  undecided (탐색 상한, 오라클 상한)
    4  히스토리/사이드카 파싱 오류
    5  설정 오류
    6  정지 상태 미도달 (horizon 소진, stall)
    7  lt 누락
    8  검사기 내부 오류 (증인 합성 실패)
"""
from dsmlab.cli import check, fuzz, run, stats

COMMANDS = (run, check, fuzz, stats)
